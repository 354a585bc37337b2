"""Exact matrix algebra on UT_n and the brute-force homogeneity oracle.

Matrices are stored densely (lower triangle zero) with entries in a
``FieldSpec``.  Positions are 1-based in the public API.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .fields import FieldSpec
from .grading import ElementaryGrading, positions
from .homogeneity import ThetaMap, classify_theta


class SingularMatrixError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class UTMatrix:
    n: int
    field: FieldSpec
    rows: tuple

    def __post_init__(self):
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        for i, r in enumerate(self.rows):
            if any(r[j] for j in range(i)):
                raise ValueError("matrix is not upper triangular")

    @classmethod
    def from_rows(cls, rows, field: FieldSpec) -> "UTMatrix":
        return cls(len(rows), field, tuple(tuple(field(x) for x in r) for r in rows))

    @classmethod
    def from_upper(cls, n: int, values: Sequence, field: FieldSpec) -> "UTMatrix":
        """Build from the row-major upper triangle (``n(n+1)/2`` values)."""
        if len(values) != n * (n + 1) // 2:
            raise ValueError(f"UT_{n} needs {n * (n + 1) // 2} entries, got {len(values)}")
        rows = [[field.zero] * n for _ in range(n)]
        for (i, j), v in zip(positions(n), values):
            rows[i - 1][j - 1] = field(v)
        return cls(n, field, tuple(map(tuple, rows)))

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "UTMatrix":
        return cls(n, field, tuple(
            tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int, field: FieldSpec) -> "UTMatrix":
        return cls(n, field, tuple((field.zero,) * n for _ in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: FieldSpec) -> "UTMatrix":
        rows = [[field.zero] * n for _ in range(n)]
        rows[i - 1][j - 1] = field.one
        return cls(n, field, tuple(map(tuple, rows)))

    def entry(self, i: int, j: int):
        return self.rows[i - 1][j - 1]

    def upper(self) -> list:
        return [self.entry(i, j) for i, j in positions(self.n)]

    def is_invertible(self) -> bool:
        return all(self.rows[i][i] for i in range(self.n))

    def _check(self, other):
        if not isinstance(other, UTMatrix) or other.n != self.n or other.field != self.field:
            raise ValueError("matrix dimensions or fields do not match")

    def __matmul__(self, other: "UTMatrix") -> "UTMatrix":
        self._check(other)
        return UTMatrix(self.n, self.field, _matmul(self.rows, other.rows, self.field))

    def __add__(self, other):
        self._check(other)
        F = self.field
        return UTMatrix(self.n, F, tuple(
            tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        F = self.field
        return UTMatrix(self.n, F, tuple(tuple(F.neg(a) for a in r) for r in self.rows))

    def scale(self, c) -> "UTMatrix":
        F = self.field
        return UTMatrix(self.n, F, tuple(tuple(F.mul(c, a) for a in r) for r in self.rows))

    def format(self) -> str:
        return "[" + ",".join(
            "[" + ",".join(self.field.format(a) for a in r) + "]" for r in self.rows) + "]"


def _matmul(a, b, F):
    n, m, q = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(q):
            acc = F.zero
            for t in range(m):
                if ai[t]:
                    acc = F.add(acc, F.mul(ai[t], b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def canonical_involution(M: UTMatrix) -> UTMatrix:
    """Reflection across the secondary diagonal: entry (i,j) moves to (n-j+1, n-i+1)."""
    n = M.n
    return UTMatrix(n, M.field, tuple(
        tuple(M.rows[n - 1 - j][n - 1 - i] for j in range(n)) for i in range(n)))


# ---------------------------------------------------------------------------
# Inverses

def _sub(rows, r0, r1, c0, c1):
    return tuple(tuple(r[c0:c1]) for r in rows[r0:r1])


def _neg(rows, F):
    return tuple(tuple(F.neg(a) for a in r) for r in rows)


def _scale(rows, c, F):
    return tuple(tuple(F.mul(c, a) for a in r) for r in rows)


def _block_inv(rows, F, k=None):
    n = len(rows)
    if any(not rows[i][i] for i in range(n)):
        raise SingularMatrixError("upper triangular matrix with a zero diagonal entry")
    if n == 1:
        return ((F.inv(rows[0][0]),),)
    if n == 2:
        (a, b), (_, c) = rows
        return ((F.inv(a), F.neg(F.div(b, F.mul(a, c)))), (F.zero, F.inv(c)))
    if k is None:
        k = (n + 1) // 2
    if not 1 < k < n:
        raise ValueError(f"pivot index must satisfy 1 < k < {n}, got {k}")
    # blocks [[A, u, B], [0, x, v], [0, 0, C]] with x at (k, k)
    A = _sub(rows, 0, k - 1, 0, k - 1)
    u = _sub(rows, 0, k - 1, k - 1, k)
    B = _sub(rows, 0, k - 1, k, n)
    x = rows[k - 1][k - 1]
    v = _sub(rows, k - 1, k, k, n)
    C = _sub(rows, k, n, k, n)
    Ai, Ci, xi = _block_inv(A, F), _block_inv(C, F), F.inv(x)
    top_mid = _neg(_scale(_matmul(Ai, u, F), xi, F), F)
    mid_right = _neg(_scale(_matmul(v, Ci, F), xi, F), F)
    uxv = _scale(_matmul(u, v, F), xi, F)
    diff = tuple(tuple(F.sub(p, q) for p, q in zip(r, s)) for r, s in zip(uxv, B))
    top_right = _matmul(_matmul(Ai, diff, F), Ci, F)
    out = []
    for i in range(k - 1):
        out.append(Ai[i] + top_mid[i] + top_right[i])
    out.append((F.zero,) * (k - 1) + (xi,) + mid_right[0])
    for i in range(n - k):
        out.append((F.zero,) * k + Ci[i])
    return tuple(out)


def block_inverse(P: UTMatrix, k: int | None = None) -> UTMatrix:
    """Inverse via the 3x3 block formula split at pivot ``k`` (default ``ceil(n/2)``).

    Both diagonal blocks are inverted recursively; sizes 1 and 2 use closed forms.
    """
    return UTMatrix(P.n, P.field, _block_inv(P.rows, P.field, k))


def back_substitution_inverse(P: UTMatrix) -> UTMatrix:
    """Column-by-column solve of ``P X = I``; used as an independent check."""
    F, n, p = P.field, P.n, P.rows
    if not P.is_invertible():
        raise SingularMatrixError("upper triangular matrix with a zero diagonal entry")
    cols = []
    for c in range(n):
        x = [F.zero] * n
        for i in range(n - 1, -1, -1):
            acc = F.one if i == c else F.zero
            for j in range(i + 1, n):
                acc = F.sub(acc, F.mul(p[i][j], x[j]))
            x[i] = F.div(acc, p[i][i])
        cols.append(x)
    return UTMatrix(n, F, tuple(tuple(cols[c][r] for c in range(n)) for r in range(n)))


def conjugate(P: UTMatrix, X: UTMatrix) -> UTMatrix:
    """``P^-1 X P``."""
    return block_inverse(P) @ X @ P


def antiauto_apply(P: UTMatrix, X: UTMatrix) -> UTMatrix:
    """``P^-1 X° P`` where ``°`` is the reflection involution."""
    return block_inverse(P) @ canonical_involution(X) @ P


# ---------------------------------------------------------------------------
# Linear maps given on the matrix-unit basis

@dataclass(frozen=True)
class LinearMapOnUnits:
    n: int
    field: FieldSpec
    images: dict  # (i, j) -> UTMatrix

    @classmethod
    def from_function(cls, n: int, field: FieldSpec, f: Callable[[UTMatrix], UTMatrix]):
        return cls(n, field, {pos: f(UTMatrix.unit(n, *pos, field)) for pos in positions(n)})

    def __call__(self, X: UTMatrix) -> UTMatrix:
        F = self.field
        out = UTMatrix.zero(self.n, F)
        for (i, j), img in self.images.items():
            c = X.entry(i, j)
            if c:
                out = out + img.scale(c)
        return out

    def compose(self, other: "LinearMapOnUnits") -> "LinearMapOnUnits":
        """``self after other``."""
        return LinearMapOnUnits(self.n, self.field, {p: self(m) for p, m in other.images.items()})

    def coordinate_rows(self) -> list[list]:
        """One coordinate vector (over the unit basis) per basis image."""
        return [self.images[pos].upper() for pos in positions(self.n)]

    def is_bijective(self) -> bool:
        return rank(self.coordinate_rows(), self.field) == len(self.images)

    def is_identity(self) -> bool:
        return all(m == UTMatrix.unit(self.n, *pos, self.field) for pos, m in self.images.items())


def reflection_map(n: int, field: FieldSpec) -> LinearMapOnUnits:
    return LinearMapOnUnits.from_function(n, field, canonical_involution)


def conjugation_map(P: UTMatrix) -> LinearMapOnUnits:
    Pi = block_inverse(P)
    return LinearMapOnUnits.from_function(P.n, P.field, lambda X: Pi @ X @ P)


def antiauto_map(P: UTMatrix) -> LinearMapOnUnits:
    Pi = block_inverse(P)
    return LinearMapOnUnits.from_function(P.n, P.field, lambda X: Pi @ canonical_involution(X) @ P)


def rank(vectors: Sequence[Sequence], F: FieldSpec) -> int:
    """Rank of a list of row vectors by Gaussian elimination."""
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        pr = [F.mul(inv, a) for a in rows[r]]
        rows[r] = pr
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return r


# ---------------------------------------------------------------------------
# Homogeneity, signs, antiautomorphisms

def is_homogeneous_matrix(grading: ElementaryGrading, P: UTMatrix):
    """Common degree of the nonzero entries of ``P``, or ``None`` if they mix degrees.

    The zero matrix is reported as degree e.
    """
    if P.n != grading.n:
        raise ValueError("matrix and grading dimensions differ")
    degs = {grading.degree(i, j) for i, j in positions(P.n) if P.entry(i, j)}
    if not degs:
        return grading.group.identity
    if len(degs) == 1:
        return degs.pop()
    return None


def oracle_homogeneity(grading: ElementaryGrading, lmap: LinearMapOnUnits) -> ThetaMap | None:
    """Decide ``lmap(A_g) = A_theta(g)`` for all support degrees by exact rank comparisons.

    Uses nothing but the support decomposition and the images of the units.
    """
    if lmap.n != grading.n:
        raise ValueError("map and grading dimensions differ")
    F = lmap.field
    pos = positions(grading.n)
    d = len(pos)
    if not lmap.is_bijective():
        raise ValueError("map is not bijective")
    sup = grading.support()

    def unit_vec(p):
        v = [F.zero] * d
        v[pos.index(p)] = F.one
        return v

    comp_basis = {h: [unit_vec(p) for p in sup[h]] for h in sup.components}
    mapping = {}
    for g in sup.components:
        imgs = [lmap.images[p].upper() for p in sup[g]]
        r = rank(imgs, F)
        hits = [
            h for h, basis in comp_basis.items()
            if len(basis) == r and rank(imgs + basis, F) == r
        ]
        if len(hits) != 1:
            return None
        mapping[g] = hits[0]
    if len(set(mapping.values())) != len(mapping):
        return None
    return ThetaMap(mapping, classify_theta(mapping, grading.group))


def involution_sign(P: UTMatrix) -> int | None:
    """+1 if ``P° = P``, -1 if ``P° = -P``, otherwise ``None``."""
    Pc = canonical_involution(P)
    if Pc == P:
        return 1
    if Pc == -P:
        return -1
    return None


def _unit_product(n, a, b, F):
    (i, j), (k, l) = a, b
    return UTMatrix.unit(n, i, l, F) if j == k else UTMatrix.zero(n, F)


def is_antiautomorphism(lmap: LinearMapOnUnits) -> bool:
    n, F = lmap.n, lmap.field
    if not lmap.is_bijective():
        return False
    if lmap(UTMatrix.identity(n, F)) != UTMatrix.identity(n, F):
        return False
    for a in positions(n):
        for b in positions(n):
            if lmap(_unit_product(n, a, b, F)) != lmap.images[b] @ lmap.images[a]:
                return False
    return True


def is_automorphism(lmap: LinearMapOnUnits) -> bool:
    n, F = lmap.n, lmap.field
    if not lmap.is_bijective():
        return False
    if lmap(UTMatrix.identity(n, F)) != UTMatrix.identity(n, F):
        return False
    for a in positions(n):
        for b in positions(n):
            if lmap(_unit_product(n, a, b, F)) != lmap.images[a] @ lmap.images[b]:
                return False
    return True


def center_dimension(n: int, F: FieldSpec) -> int:
    """Dimension of ``{X : XE = EX for every unit E}``."""
    pos = positions(n)
    units = [UTMatrix.unit(n, *p, F) for p in pos]
    rows = []
    for X in units:
        vec = []
        for E in units:
            vec += (X @ E - E @ X).upper()
        rows.append(vec)
    return len(pos) - rank(rows, F)


def enumerate_invertible_ut(n: int, F: FieldSpec) -> Iterator[UTMatrix]:
    """All invertible upper triangular matrices over a finite field, in a fixed order."""
    pos = positions(n)
    choices = [list(F.nonzero()) if i == j else list(F.elements()) for i, j in pos]
    for vals in itertools.product(*choices):
        yield UTMatrix.from_upper(n, vals, F)


def random_invertible_ut(n: int, F: FieldSpec, rng) -> UTMatrix:
    vals = [F.random(rng, nonzero=(i == j)) for i, j in positions(n)]
    return UTMatrix.from_upper(n, vals, F)


def random_ut(n: int, F: FieldSpec, rng) -> UTMatrix:
    return UTMatrix.from_upper(n, [F.random(rng) for _ in positions(n)], F)
