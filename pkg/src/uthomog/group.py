"""Exact arithmetic for grading groups.

Four kinds of group are supported, all immutable:

* ``CyclicGroup(m)``      elements are residues ``0 .. m-1`` (additive notation)
* ``InfiniteCyclicGroup`` elements are Python ints
* ``DirectProduct``       elements are tuples of component elements
* ``CayleyTableGroup``    elements are indices into the element-name list

Group specs are parsed from strings such as ``Z``, ``Z4``, ``Z2xZ4`` or
``table:path/to/group.json``.
"""
from __future__ import annotations

import itertools
import json
import re
from pathlib import Path
from typing import Any, Iterator, Sequence

MAX_TABLE_ORDER = 64


class GroupError(ValueError):
    """Raised for malformed group specs, bad tables and foreign elements."""


class Group:
    """Base class.  Subclasses implement the primitive operations."""

    identity: Any

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def order(self) -> int:
        raise NotImplementedError

    def elements(self) -> Iterator[Any]:
        raise NotImplementedError

    def contains(self, g) -> bool:
        raise NotImplementedError

    def _op(self, g, h):
        raise NotImplementedError

    def _inverse(self, g):
        raise NotImplementedError

    def op(self, g, h):
        """Return the product ``gh``."""
        if not (self.contains(g) and self.contains(h)):
            raise GroupError(f"elements {g!r}, {h!r} do not both belong to {self.spec}")
        return self._op(g, h)

    def inverse(self, g):
        if not self.contains(g):
            raise GroupError(f"element {g!r} does not belong to {self.spec}")
        return self._inverse(g)

    def product(self, elems: Sequence) -> Any:
        """Ordered product of ``elems``; the identity for an empty sequence."""
        acc = self.identity
        for g in elems:
            acc = self.op(acc, g)
        return acc

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    def format_element(self, g) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec}>"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._key()))

    def _key(self):
        raise NotImplementedError


def _parse_int(text: str) -> int:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+", text):
        raise GroupError(f"not an integer literal: {text!r}")
    return int(text)


class CyclicGroup(Group):
    def __init__(self, m: int):
        if m < 1:
            raise GroupError(f"cyclic group order must be >= 1, got {m}")
        self.m = m
        self.identity = 0

    @property
    def order(self) -> int:
        return self.m

    def elements(self):
        return iter(range(self.m))

    def contains(self, g) -> bool:
        return type(g) is int and 0 <= g < self.m

    def _op(self, g, h):
        return (g + h) % self.m

    def _inverse(self, g):
        return -g % self.m

    @property
    def spec(self) -> str:
        return f"Z{self.m}"

    def parse_element(self, text):
        return _parse_int(text) % self.m

    def format_element(self, g) -> str:
        return str(g)

    def _key(self):
        return self.m


class InfiniteCyclicGroup(Group):
    identity = 0

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def order(self) -> int:
        raise GroupError("the infinite cyclic group has no finite order")

    def elements(self):
        raise GroupError("cannot enumerate the infinite cyclic group")

    def contains(self, g) -> bool:
        return type(g) is int

    def _op(self, g, h):
        return g + h

    def _inverse(self, g):
        return -g

    @property
    def spec(self) -> str:
        return "Z"

    def parse_element(self, text):
        return _parse_int(text)

    def format_element(self, g) -> str:
        return str(g)

    def _key(self):
        return ()


class DirectProduct(Group):
    def __init__(self, factors: Sequence[Group]):
        if len(factors) < 2:
            raise GroupError("a direct product needs at least two factors")
        for f in factors:
            if isinstance(f, (DirectProduct, CayleyTableGroup)):
                raise GroupError("direct product factors must be cyclic groups")
        self.factors = tuple(factors)
        self.identity = tuple(f.identity for f in self.factors)

    @property
    def is_finite(self) -> bool:
        return all(f.is_finite for f in self.factors)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.order
        return out

    def elements(self):
        return itertools.product(*(list(f.elements()) for f in self.factors))

    def contains(self, g) -> bool:
        return (
            type(g) is tuple
            and len(g) == len(self.factors)
            and all(f.contains(x) for f, x in zip(self.factors, g))
        )

    def _op(self, g, h):
        return tuple(f._op(x, y) for f, x, y in zip(self.factors, g, h))

    def _inverse(self, g):
        return tuple(f._inverse(x) for f, x in zip(self.factors, g))

    @property
    def spec(self) -> str:
        return "x".join(f.spec for f in self.factors)

    def parse_element(self, text):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise GroupError(f"product element must look like (a,b,...): {text!r}")
        parts = text[1:-1].split(",")
        if len(parts) != len(self.factors):
            raise GroupError(f"expected {len(self.factors)} components in {text!r}")
        return tuple(f.parse_element(p) for f, p in zip(self.factors, parts))

    def format_element(self, g) -> str:
        return "(" + ",".join(f.format_element(x) for f, x in zip(self.factors, g)) + ")"

    def _key(self):
        return self.factors


class CayleyTableGroup(Group):
    """Finite group given by a multiplication table on indices.

    The axioms are checked on construction (associativity is O(m^3), so the
    order is capped at ``MAX_TABLE_ORDER``).
    """

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]], identity: int,
                 source: str | None = None):
        m = len(names)
        if m < 1:
            raise GroupError("group table must have at least one element")
        if m > MAX_TABLE_ORDER:
            raise GroupError(f"group table order {m} exceeds cap {MAX_TABLE_ORDER}")
        if len(set(names)) != m:
            raise GroupError("element names must be distinct")
        if len(table) != m or any(len(row) != m for row in table):
            raise GroupError(f"table must be {m}x{m}")
        for row in table:
            for v in row:
                if type(v) is not int or not 0 <= v < m:
                    raise GroupError(f"table entry {v!r} is not an element index")
        if type(identity) is not int or not 0 <= identity < m:
            raise GroupError(f"identity index {identity!r} out of range")
        self.names = tuple(str(x) for x in names)
        self.table = tuple(tuple(row) for row in table)
        self.identity = identity
        self.source = source
        self._check_axioms()
        self._inv = tuple(
            next(h for h in range(m) if self.table[g][h] == identity) for g in range(m)
        )

    def _check_axioms(self):
        m, t, e = len(self.names), self.table, self.identity
        for g in range(m):
            if t[e][g] != g or t[g][e] != g:
                raise GroupError(f"index {e} is not a two-sided identity")
        for g in range(m):
            if not any(t[g][h] == e and t[h][g] == e for h in range(m)):
                raise GroupError(f"element {self.names[g]!r} has no two-sided inverse")
        for a in range(m):
            ta = t[a]
            for b in range(m):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(m):
                    if tab[c] != ta[tb[c]]:
                        raise GroupError(
                            f"table is not associative at "
                            f"({self.names[a]}, {self.names[b]}, {self.names[c]})"
                        )

    @classmethod
    def from_file(cls, path: str | Path) -> "CayleyTableGroup":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GroupError(f"cannot read group table {path}: {exc}") from exc
        try:
            return cls(data["elements"], data["table"], data["identity"], source=str(path))
        except (KeyError, TypeError) as exc:
            raise GroupError(f"table file {path} needs keys elements, table, identity") from exc

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self):
        return iter(range(len(self.names)))

    def contains(self, g) -> bool:
        return type(g) is int and 0 <= g < len(self.names)

    def _op(self, g, h):
        return self.table[g][h]

    def _inverse(self, g):
        return self._inv[g]

    @property
    def spec(self) -> str:
        return f"table:{self.source}" if self.source else "table:<inline>"

    def parse_element(self, text):
        text = text.strip()
        try:
            return self.names.index(text)
        except ValueError:
            raise GroupError(f"unknown element name {text!r}") from None

    def format_element(self, g) -> str:
        return self.names[g]

    def _key(self):
        return (self.names, self.table, self.identity)


_CYCLIC_RE = re.compile(r"Z(\d*)")


def _parse_factor(text: str) -> Group:
    m = _CYCLIC_RE.fullmatch(text.strip())
    if not m:
        raise GroupError(f"bad group spec component: {text!r}")
    if m.group(1) == "":
        return InfiniteCyclicGroup()
    return CyclicGroup(int(m.group(1)))


def parse_group_spec(text: str) -> Group:
    """Parse ``Z``, ``Z<m>``, ``Z<m>xZ<k>...`` or ``table:<path>``."""
    text = text.strip()
    if text.startswith("table:"):
        return CayleyTableGroup.from_file(text[len("table:"):])
    parts = text.split("x")
    if len(parts) == 1:
        return _parse_factor(parts[0])
    return DirectProduct([_parse_factor(p) for p in parts])


def split_literals(text: str) -> list[str]:
    """Split a comma-separated list, ignoring commas nested in parentheses."""
    if not text.strip():
        return []
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GroupError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise GroupError(f"unbalanced parentheses in {text!r}")
    out.append("".join(cur))
    return [s.strip() for s in out]


def parse_tuple(group: Group, text: str) -> tuple:
    return tuple(group.parse_element(s) for s in split_literals(text))


def segment_product(group: Group, elems: Sequence, i: int, k: int):
    """Ordered product ``g_i ... g_{i+k-1}`` of ``k`` consecutive entries (1-based ``i``).

    ``k = 0`` gives the identity (the degree of a diagonal matrix unit).
    """
    if k < 0 or i < 1 or i + k - 1 > len(elems):
        raise IndexError(f"segment ({i}, {k}) out of range for a tuple of length {len(elems)}")
    return group.product(elems[i - 1:i - 1 + k])
