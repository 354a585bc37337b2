import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uthomog.fields import FieldError, FieldSpec, parse_field_spec
from uthomog.grading import ElementaryGrading, positions
from uthomog.group import CyclicGroup, InfiniteCyclicGroup
from uthomog.homogeneity import GRADED
from uthomog.matrixalg import (
    LinearMapOnUnits,
    SingularMatrixError,
    UTMatrix,
    antiauto_apply,
    antiauto_map,
    back_substitution_inverse,
    block_inverse,
    canonical_involution,
    center_dimension,
    conjugate,
    conjugation_map,
    enumerate_invertible_ut,
    involution_sign,
    is_antiautomorphism,
    is_automorphism,
    is_homogeneous_matrix,
    oracle_homogeneity,
    random_invertible_ut,
    random_ut,
    rank,
    reflection_map,
)

Q, F3, F5, F7 = FieldSpec(0), FieldSpec(3), FieldSpec(5), FieldSpec(7)
Z2 = CyclicGroup(2)


def M(rows, F=Q):
    return UTMatrix.from_rows(rows, F)


def E(n, i, j, F=Q):
    return UTMatrix.unit(n, i, j, F)


# -- fields

def test_field_specs():
    assert parse_field_spec("Q") == Q
    assert parse_field_spec("F7") == F7
    for bad in ("F2", "F9", "F1", "R", "F"):
        with pytest.raises(FieldError):
            parse_field_spec(bad)


def test_field_literals():
    assert Q.parse("-2/3") == Fraction(-2, 3)
    assert F7.parse("1/3") == 5
    assert F7.parse("-1") == 6
    with pytest.raises(FieldError):
        F7.parse("1/7")
    with pytest.raises(FieldError):
        Q.parse("1.5")


# -- reflection

def test_reflect_unit():
    assert canonical_involution(E(3, 1, 2)) == E(3, 2, 3)


def test_reflect_identity():
    assert canonical_involution(UTMatrix.identity(4, Q)) == UTMatrix.identity(4, Q)


def test_reflect_2x2():
    assert canonical_involution(M([[1, 2], [0, 3]])) == M([[3, 2], [0, 1]])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_reflect_units_rule(n):
    for i, j in positions(n):
        assert canonical_involution(E(n, i, j)) == E(n, n - j + 1, n - i + 1)


@settings(deadline=None)
@given(st.integers(1, 5), st.integers(0, 10**6))
def test_reflect_is_an_involutive_antiautomorphism(n, seed):
    rng = random.Random(seed)
    X, Y = random_ut(n, Q, rng), random_ut(n, Q, rng)
    assert canonical_involution(canonical_involution(X)) == X
    assert canonical_involution(X @ Y) == canonical_involution(Y) @ canonical_involution(X)
    assert canonical_involution(X + Y) == canonical_involution(X) + canonical_involution(Y)


# -- inverses

def test_block_inverse_identity():
    for n in range(1, 7):
        I = UTMatrix.identity(n, Q)
        assert block_inverse(I) == I


def test_block_inverse_2x2_closed_form():
    a, b, c = Fraction(2), Fraction(5), Fraction(-3)
    assert block_inverse(M([[a, b], [0, c]])) == M([[1 / a, -b / (a * c)], [0, 1 / c]])


def test_block_inverse_singular():
    with pytest.raises(SingularMatrixError):
        block_inverse(M([[1, 2, 3], [0, 0, 1], [0, 0, 4]]))


def test_block_inverse_rejects_bad_pivot():
    P = random_invertible_ut(4, Q, random.Random(1))
    with pytest.raises(ValueError):
        block_inverse(P, k=1)
    with pytest.raises(ValueError):
        block_inverse(P, k=4)


@pytest.mark.parametrize("F", [Q, F7])
def test_block_inverse_n6_matches_back_substitution(F):
    rng = random.Random(6)
    for _ in range(20):
        P = random_invertible_ut(6, F, rng)
        assert block_inverse(P) == back_substitution_inverse(P)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_block_inverse_every_pivot(n):
    rng = random.Random(n)
    P = random_invertible_ut(n, Q, rng)
    I = UTMatrix.identity(n, Q)
    for k in range(2, n):
        assert P @ block_inverse(P, k) == I


@settings(deadline=None)
@given(st.integers(1, 8), st.sampled_from([Q, F3, F7]), st.integers(0, 10**6))
def test_block_inverse_two_sided(n, F, seed):
    P = random_invertible_ut(n, F, random.Random(seed))
    inv = block_inverse(P)
    I = UTMatrix.identity(n, F)
    assert P @ inv == I == inv @ P


# -- conjugation and antiautomorphisms

def test_conjugate_identity():
    X = random_ut(3, Q, random.Random(0))
    assert conjugate(UTMatrix.identity(3, Q), X) == X


def test_conjugate_diagonal():
    assert conjugate(M([[1, 0], [0, 2]]), E(2, 1, 2)) == E(2, 1, 2).scale(Fraction(2))


def test_antiauto_identity_is_reflection():
    X = random_ut(4, Q, random.Random(3))
    assert antiauto_apply(UTMatrix.identity(4, Q), X) == canonical_involution(X)


@settings(deadline=None)
@given(st.integers(1, 5), st.integers(0, 10**6))
def test_antiauto_reverses_products(n, seed):
    rng = random.Random(seed)
    P = random_invertible_ut(n, Q, rng)
    X, Y = random_ut(n, Q, rng), random_ut(n, Q, rng)
    assert antiauto_apply(P, X @ Y) == antiauto_apply(P, Y) @ antiauto_apply(P, X)
    assert conjugate(P, X @ Y) == conjugate(P, X) @ conjugate(P, Y)


def test_diag_sign_flip_squares_to_identity():
    lm = antiauto_map(M([[1, 0], [0, -1]]))
    assert lm.compose(lm).is_identity()


@settings(deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_entry_lemmas(n, seed):
    P = random_invertible_ut(n, Q, random.Random(seed))
    for k in range(1, n + 1):
        auto = conjugate(P, E(n, k, k))
        anti = antiauto_apply(P, E(n, n - k + 1, n - k + 1))
        for l in range(k, n + 1):
            want = P.entry(k, l) / P.entry(k, k)
            assert auto.entry(k, l) == want
            assert anti.entry(k, l) == want


def test_is_antiautomorphism_examples():
    assert is_antiautomorphism(reflection_map(3, Q))
    ident = LinearMapOnUnits.from_function(3, Q, lambda X: X)
    assert not is_antiautomorphism(ident)
    assert is_automorphism(ident)
    rng = random.Random(11)
    for n in (2, 3, 4):
        P = random_invertible_ut(n, Q, rng)
        assert is_antiautomorphism(antiauto_map(P))
        assert not is_automorphism(antiauto_map(P)) or n == 1


def test_is_antiautomorphism_rejects_singular_map():
    zero = LinearMapOnUnits.from_function(2, Q, lambda X: UTMatrix.zero(2, Q))
    assert not is_antiautomorphism(zero)


# -- homogeneity of matrices

def test_diagonal_is_degree_e():
    gr = ElementaryGrading(CyclicGroup(3), 3, (1, 2))
    assert is_homogeneous_matrix(gr, M([[2, 0, 0], [0, 5, 0], [0, 0, 1]])) == 0


def test_homogeneous_corner():
    gr = ElementaryGrading(Z2, 3, (1, 1))
    P = UTMatrix.identity(3, Q) + E(3, 1, 3)
    assert gr.degree(1, 3) == 0
    assert is_homogeneous_matrix(gr, P) == 0


def test_mixed_degrees():
    gr = ElementaryGrading(Z2, 3, (0, 1))
    P = UTMatrix.identity(3, Q) + E(3, 2, 3)
    assert is_homogeneous_matrix(gr, P) is None


def test_single_unit_degree():
    gr = ElementaryGrading(Z2, 3, (0, 1))
    assert is_homogeneous_matrix(gr, E(3, 2, 3)) == 1


# -- oracle

def test_oracle_trivial_grading():
    gr = ElementaryGrading(CyclicGroup(3), 4, (0, 0, 0))
    th = oracle_homogeneity(gr, reflection_map(4, F5))
    assert th.mapping == {0: 0} and GRADED in th.tags


def test_oracle_rejects():
    gr = ElementaryGrading(Z2, 3, (0, 1))
    assert oracle_homogeneity(gr, reflection_map(3, F5)) is None


def test_oracle_inversion():
    gr = ElementaryGrading(InfiniteCyclicGroup(), 3, (1, -1))
    th = oracle_homogeneity(gr, reflection_map(3, F5))
    assert th.mapping == {0: 0, 1: -1, -1: 1}


def test_oracle_non_monomial_map():
    # conjugation by a degree-e but non-diagonal P sends units to non-units
    gr = ElementaryGrading(Z2, 3, (1, 1))
    P = UTMatrix.identity(3, Q) + E(3, 1, 3)
    lm = conjugation_map(P)
    assert lm.images[1, 1] != E(3, 1, 1)
    assert oracle_homogeneity(gr, lm).mapping == {0: 0, 1: 1}


def test_oracle_non_bijective():
    gr = ElementaryGrading(Z2, 2, (1,))
    zero = LinearMapOnUnits.from_function(2, Q, lambda X: UTMatrix.zero(2, Q))
    with pytest.raises(ValueError):
        oracle_homogeneity(gr, zero)


def _neutral_span_preserved(gr, lm, F):
    pos = positions(gr.n)
    comp = gr.support()[gr.group.identity]
    imgs = [lm.images[p].upper() for p in comp]
    basis = [[F.one if q == p else F.zero for q in pos] for p in comp]
    return rank(imgs, F) == len(comp) == rank(imgs + basis, F)


@pytest.mark.parametrize("tup", [(0, 1), (1, 1), (1, 0), (0, 0)])
def test_hom_aut_exhaustive_f3(tup):
    gr = ElementaryGrading(Z2, 3, tup)
    refl = oracle_homogeneity(gr, reflection_map(3, F3))
    mats = list(enumerate_invertible_ut(3, F3))
    assert len(mats) == 216
    for P in mats:
        deg_e = is_homogeneous_matrix(gr, P) == 0
        th = oracle_homogeneity(gr, conjugation_map(P))
        assert (th is not None) == deg_e
        if th is not None:
            assert all(th(g) == g for g in th.mapping)
            assert _neutral_span_preserved(gr, conjugation_map(P), F3)
        anti = oracle_homogeneity(gr, antiauto_map(P))
        assert (anti is not None) == (deg_e and refl is not None)
        if anti is not None:
            assert anti.mapping == refl.mapping


# -- signs and the center

def test_sign_examples():
    assert involution_sign(UTMatrix.identity(3, Q)) == 1
    assert involution_sign(M([[1, 0], [0, -1]])) == -1
    assert involution_sign(M([[1, 1], [0, 2]])) is None


@pytest.mark.parametrize("n", [2, 3])
def test_sign_exhaustive_f3(n):
    minus = 0
    for P in enumerate_invertible_ut(n, F3):
        lm = antiauto_map(P)
        inv = lm.compose(lm).is_identity()
        s = involution_sign(P)
        assert inv == (s is not None)
        minus += s == -1
    if n == 3:
        assert minus == 0
    else:
        assert minus > 0


@pytest.mark.parametrize("F", [Q, F3, F5])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_center_is_scalars(F, n):
    assert center_dimension(n, F) == 1
    I = UTMatrix.identity(n, F)
    for i, j in positions(n):
        assert I @ E(n, i, j, F) == E(n, i, j, F) @ I


def test_rank():
    assert rank([[1, 2], [2, 4]], F5) == 1
    assert rank([[1, 2], [2, 4]], F3) == 1
    assert rank([[1, 2], [3, 4]], Q) == 2
    assert rank([], Q) == 0


def test_ut_shape_enforced():
    with pytest.raises(ValueError):
        UTMatrix.from_rows([[1, 0], [1, 1]], Q)
    with pytest.raises(ValueError):
        UTMatrix.from_upper(2, [1, 2], Q)
