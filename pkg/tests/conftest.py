from pathlib import Path

import pytest
from hypothesis import strategies as st

from uthomog.group import CayleyTableGroup, CyclicGroup, DirectProduct, InfiniteCyclicGroup

DATA = Path(__file__).parent / "data"


@pytest.fixture
def s3():
    return CayleyTableGroup.from_file(DATA / "s3.json")


def finite_groups():
    s3 = CayleyTableGroup.from_file(DATA / "s3.json")
    return st.sampled_from([
        CyclicGroup(1), CyclicGroup(2), CyclicGroup(3), CyclicGroup(4), CyclicGroup(6),
        DirectProduct([CyclicGroup(2), CyclicGroup(2)]),
        DirectProduct([CyclicGroup(2), CyclicGroup(4)]),
        s3,
    ])


@st.composite
def gradings(draw, max_n=6, groups=None):
    """(group, n, tuple) over a finite group or the integers."""
    from uthomog.grading import ElementaryGrading

    group = draw(groups or st.one_of(finite_groups(), st.just(InfiniteCyclicGroup())))
    n = draw(st.integers(1, max_n))
    if group.is_finite:
        elems = list(group.elements())
        elem = st.sampled_from(elems)
    else:
        elem = st.integers(-3, 3)
    tup = draw(st.lists(elem, min_size=n - 1, max_size=n - 1))
    return ElementaryGrading(group, n, tuple(tup))
