"""Deciding whether the reflection involution of a graded UT_n is homogeneous.

A *segment* ``(i, k)`` stands for the product ``s(i, k) = g_i ... g_{i+k-1}``,
the degree of ``E_{i,i+k}``.  Reflection sends ``E_{i,i+k}`` to
``E_{n-i-k+1, n-i+1}``, whose degree is the *mirror* ``s(n-i-k+1, k)``.  The
reflection is homogeneous exactly when ``segment value -> mirror value`` is a
well defined map on the support; that map is theta.

Two checks are provided.  ``check_segment_condition`` compares proper segments
(``k >= 1``) only.  ``build_theta`` also includes the diagonal units as
length-0 segments, which pins ``theta(e) = e``.  Segments are ordered by
length, then start.  Witnesses are the least violating pair in that order;
pairs involving a diagonal pseudo-segment are only considered when no pair
of proper segments violates the condition.
"""
from __future__ import annotations

from dataclasses import dataclass

from .grading import ElementaryGrading, component_product_nonzero
from .group import Group

GRADED = "graded"
DEGREE_INVERTING = "degree-inverting"
OTHER = "other"
TAG_ORDER = (GRADED, DEGREE_INVERTING, OTHER)


@dataclass(frozen=True)
class ConditionWitness:
    """Two segments with equal value whose mirrors differ.

    A segment of length 0 denotes a diagonal unit (value e, mirror e).
    """

    left: tuple[int, int]
    right: tuple[int, int]
    value: object
    mirrors: tuple

    def describe(self, group: Group) -> str:
        fmt = group.format_element
        return (
            f"s{self.left} = s{self.right} = {fmt(self.value)} but mirrors "
            f"{fmt(self.mirrors[0])} != {fmt(self.mirrors[1])}"
        )


@dataclass(frozen=True)
class ThetaMap:
    mapping: dict
    tags: frozenset

    def __call__(self, g):
        return self.mapping[g]


def segments(n: int, diagonal: bool = False) -> list[tuple[int, int]]:
    out = [(i, k) for k in range(1, n) for i in range(1, n - k + 1)]
    if diagonal:
        out += [(i, 0) for i in range(1, n + 1)]
    return out


def mirror(n: int, seg: tuple[int, int]) -> tuple[int, int]:
    i, k = seg
    return (n - i - k + 1, k)


def _segment_values(grading: ElementaryGrading, segs):
    # s(i, k) = deg E_{i, i+k}
    deg = grading.degree
    n = grading.n
    return [(seg, deg(seg[0], seg[0] + seg[1]), deg(*_unit(mirror(n, seg)))) for seg in segs]


def _unit(seg):
    i, k = seg
    return (i, i + k)


def _least_violation(grading, segs) -> ConditionWitness | None:
    vals = _segment_values(grading, segs)
    for a, (sa, va, ma) in enumerate(vals):
        for sb, vb, mb in vals[a + 1:]:
            if va == vb and ma != mb:
                return ConditionWitness(sa, sb, va, (ma, mb))
    return None


def check_segment_condition(grading: ElementaryGrading) -> tuple[bool, ConditionWitness | None]:
    """Equal segment products must have equal mirror products (proper segments only)."""
    w = _least_violation(grading, segments(grading.n))
    return w is None, w


def build_theta(grading: ElementaryGrading) -> ThetaMap | ConditionWitness:
    """Return theta if the reflection involution is homogeneous, else a witness."""
    segs = segments(grading.n, diagonal=True)
    w = _least_violation(grading, segments(grading.n)) or _least_violation(grading, segs)
    if w is not None:
        return w
    mapping = {v: m for _, v, m in _segment_values(grading, segs)}
    return ThetaMap(mapping, classify_theta(mapping, grading.group))


def classify_theta(theta, group: Group) -> frozenset:
    mapping = theta.mapping if isinstance(theta, ThetaMap) else theta
    tags = set()
    if all(mapping[g] == g for g in mapping):
        tags.add(GRADED)
    if all(mapping[g] == group.inverse(g) for g in mapping):
        tags.add(DEGREE_INVERTING)
    if not tags:
        tags.add(OTHER)
    return frozenset(tags)


def format_tags(tags) -> str:
    return "+".join(t for t in TAG_ORDER if t in tags)


def theta_properties_check(theta: ThetaMap, grading: ElementaryGrading) -> bool:
    """theta is an involution and reverses every nonzero component product."""
    mp = theta.mapping
    sup = grading.support().support
    if set(mp) != set(sup) or set(mp.values()) != set(sup):
        return False
    if any(mp[mp[g]] != g for g in sup):
        return False
    op = grading.group.op
    for g in sup:
        for h in sup:
            if component_product_nonzero(grading, g, h) and mp[op(g, h)] != op(mp[h], mp[g]):
                return False
    return True
