"""Elementary gradings on UT_n given by the degrees of the superdiagonal units."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .group import Group, GroupError, segment_product


def positions(n: int) -> list[tuple[int, int]]:
    """All matrix-unit positions ``(i, j)``, ``1 <= i <= j <= n``, row-major."""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


@dataclass(frozen=True)
class ElementaryGrading:
    """Grading of UT_n with ``deg E_{i,i+1} = tuple[i-1]`` (positions are 1-based)."""

    group: Group
    n: int
    tuple: tuple
    _degrees: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "tuple", tuple(self.tuple))
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if len(self.tuple) != self.n - 1:
            raise ValueError(f"UT_{self.n} needs a tuple of length {self.n - 1}, got {len(self.tuple)}")
        for g in self.tuple:
            if not self.group.contains(g):
                raise GroupError(f"{g!r} is not an element of {self.group.spec}")
        # deg(i, j) = deg(i, j-1) g_{j-1}
        op = self.group.op
        degs = {}
        for i in range(1, self.n + 1):
            acc = self.group.identity
            degs[i, i] = acc
            for j in range(i + 1, self.n + 1):
                acc = op(acc, self.tuple[j - 2])
                degs[i, j] = acc
        object.__setattr__(self, "_degrees", degs)

    def degree(self, i: int, j: int):
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"position ({i}, {j}) outside UT_{self.n}")
        if i > j:
            raise IndexError(f"position ({i}, {j}) is strictly lower triangular")
        return self._degrees[i, j]

    def support(self) -> "SupportMap":
        return self._support

    @cached_property
    def _support(self) -> "SupportMap":
        components: dict = {}
        for pos in positions(self.n):
            components.setdefault(self._degrees[pos], []).append(pos)
        return SupportMap(components)

    def reversed(self) -> "ElementaryGrading":
        return ElementaryGrading(self.group, self.n, self.tuple[::-1])

    def format_tuple(self) -> str:
        return ",".join(self.group.format_element(g) for g in self.tuple)


@dataclass(frozen=True)
class SupportMap:
    """Homogeneous components: degree -> list of unit positions of that degree."""

    components: dict

    @property
    def support(self) -> frozenset:
        return frozenset(self.components)

    def __contains__(self, g) -> bool:
        return g in self.components

    def __getitem__(self, g) -> list:
        return self.components[g]


def degree(grading: ElementaryGrading, i: int, j: int):
    return grading.degree(i, j)


def support(grading: ElementaryGrading) -> SupportMap:
    return grading.support()


def support_closed_form(group: Group, elems: Sequence, n: int) -> frozenset:
    """``{g_i ... g_{i+k-1}} U {e}``, computed from segment products alone."""
    out = {group.identity}
    for i in range(1, n):
        for k in range(1, n - i + 1):
            out.add(segment_product(group, elems, i, k))
    return frozenset(out)


def component_product_nonzero(grading: ElementaryGrading, g, h) -> bool:
    """True iff ``A_g A_h != 0``: some ``E_{i,j}`` of degree g meets ``E_{j,k}`` of degree h."""
    sup = grading.support()
    if g not in sup or h not in sup:
        raise ValueError("both degrees must lie in the support")
    starts = {j for (_, j) in sup[g]}
    return any(j in starts for (j, _) in sup[h])
