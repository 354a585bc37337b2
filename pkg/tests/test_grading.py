import pytest
from hypothesis import given

from conftest import gradings
from uthomog.grading import (
    ElementaryGrading,
    component_product_nonzero,
    positions,
    support_closed_form,
)
from uthomog.group import CyclicGroup, InfiniteCyclicGroup


def brute_degree(group, tup, i, j):
    acc = group.identity
    for t in range(i, j):
        acc = group.op(acc, tup[t - 1])
    return acc


def test_degree_examples():
    z = InfiniteCyclicGroup()
    g = ElementaryGrading(z, 3, (5, 7))
    assert g.degree(1, 3) == 12
    assert g.degree(2, 2) == 0
    assert ElementaryGrading(CyclicGroup(2), 3, (1, 1)).degree(1, 3) == 0


def test_degree_errors():
    g = ElementaryGrading(CyclicGroup(2), 3, (0, 1))
    with pytest.raises(IndexError):
        g.degree(2, 1)
    with pytest.raises(IndexError):
        g.degree(1, 4)


def test_tuple_length_checked():
    with pytest.raises(ValueError):
        ElementaryGrading(CyclicGroup(2), 3, (0,))
    with pytest.raises(ValueError):
        ElementaryGrading(CyclicGroup(2), 2, (5,))


def test_support_trivial():
    g = ElementaryGrading(CyclicGroup(3), 4, (0, 0, 0))
    sup = g.support()
    assert sup.support == {0}
    assert sorted(sup[0]) == positions(4)


def test_support_n1():
    g = ElementaryGrading(CyclicGroup(5), 1, ())
    assert g.support().support == {0}


def test_support_integers():
    g = ElementaryGrading(InfiniteCyclicGroup(), 3, (1, 1))
    assert g.support().support == {0, 1, 2}


def test_support_z2():
    g = ElementaryGrading(CyclicGroup(2), 3, (0, 1))
    sup = g.support()
    assert sup.support == {0, 1}
    assert sorted(sup[1]) == [(1, 3), (2, 3)]


def test_component_product_examples():
    g = ElementaryGrading(CyclicGroup(2), 3, (0, 1))
    assert component_product_nonzero(g, 0, 0)
    assert not component_product_nonzero(g, 1, 1)
    assert component_product_nonzero(g, 0, 1)


def test_component_product_outside_support():
    g = ElementaryGrading(CyclicGroup(3), 2, (1,))
    with pytest.raises(ValueError):
        component_product_nonzero(g, 2, 0)


@given(gradings())
def test_degree_matches_brute_force(gr):
    for i, j in positions(gr.n):
        assert gr.degree(i, j) == brute_degree(gr.group, gr.tuple, i, j)


@given(gradings())
def test_degree_multiplicative(gr):
    op = gr.group.op
    n = gr.n
    for i in range(1, n + 1):
        assert gr.degree(i, i) == gr.group.identity
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                assert op(gr.degree(i, j), gr.degree(j, k)) == gr.degree(i, k)


@given(gradings())
def test_support_closed_form_agrees(gr):
    assert gr.support().support == support_closed_form(gr.group, gr.tuple, gr.n)


@given(gradings())
def test_components_partition_positions(gr):
    comps = gr.support().components
    placed = [p for ps in comps.values() for p in ps]
    assert len(placed) == gr.n * (gr.n + 1) // 2
    assert sorted(placed) == positions(gr.n)
    assert gr.group.identity in gr.support()


@given(gradings(max_n=5))
def test_nonzero_product_lands_in_support(gr):
    sup = gr.support()
    for g in sup.support:
        for h in sup.support:
            if component_product_nonzero(gr, g, h):
                assert gr.group.op(g, h) in sup
