"""Property suites run by ``uthomog verify``.

Each suite returns a ``SuiteReport``; a suite passes when ``failures`` is empty.
Suites that take random samples use size ``min(3, n) .. n``; exhaustive
suites use exactly ``n``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .classify import classify_space, enumerate_tuples
from .fields import FieldSpec
from .grading import ElementaryGrading, positions
from .group import CyclicGroup, Group
from .homogeneity import ThetaMap, build_theta, theta_properties_check
from .matrixalg import (
    UTMatrix,
    antiauto_apply,
    antiauto_map,
    back_substitution_inverse,
    block_inverse,
    conjugate,
    conjugation_map,
    enumerate_invertible_ut,
    involution_sign,
    is_homogeneous_matrix,
    oracle_homogeneity,
    random_invertible_ut,
    rank,
    reflection_map,
)

MAX_FAILURES_KEPT = 20
KEZLAN_CAP = 10**6


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(msg)
        else:
            self.stats["failures_dropped"] = self.stats.get("failures_dropped", 0) + 1


def _sizes(n: int) -> list[int]:
    return list(range(min(3, n), n + 1))


def _matrices(F: FieldSpec, n: int, samples: int, rng, exhaustive_limit=5000):
    """Every invertible UT matrix if the field is finite and there are few; else a sample."""
    if F.is_finite:
        count = (F.p - 1) ** n * F.p ** (n * (n - 1) // 2)
        if count <= exhaustive_limit:
            return list(enumerate_invertible_ut(n, F))
    return [random_invertible_ut(n, F, rng) for _ in range(samples)]


def suite_block_inverse(F: FieldSpec, n: int = 8, samples: int = 200, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("block-inverse")
    rng = random.Random(seed)
    sizes = _sizes(n)
    for s in range(samples):
        m = sizes[s % len(sizes)]
        P = random_invertible_ut(m, F, rng)
        inv = block_inverse(P)
        I = UTMatrix.identity(m, F)
        rep.checked += 1
        if P @ inv != I or inv @ P != I:
            rep.fail(f"P @ block_inverse(P) != I for P={P.format()}")
        elif inv != back_substitution_inverse(P):
            rep.fail(f"block and back-substitution inverses differ for P={P.format()}")
    return rep


def suite_entry_lemma(F: FieldSpec, n: int = 6, samples: int = 100, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("entry-lemma")
    rng = random.Random(seed)
    sizes = _sizes(n)
    for s in range(samples):
        m = sizes[s % len(sizes)]
        P = random_invertible_ut(m, F, rng)
        for k in range(1, m + 1):
            auto = conjugate(P, UTMatrix.unit(m, k, k, F))
            anti = antiauto_apply(P, UTMatrix.unit(m, m - k + 1, m - k + 1, F))
            for l in range(k, m + 1):
                want = F.div(P.entry(k, l), P.entry(k, k))
                rep.checked += 1
                if auto.entry(k, l) != want:
                    rep.fail(f"conjugate entry ({k},{l}) for P={P.format()}")
                if anti.entry(k, l) != want:
                    rep.fail(f"antiautomorphism entry ({k},{l}) for P={P.format()}")
    return rep


def _neutral_preserved(grading: ElementaryGrading, lmap, F: FieldSpec) -> bool:
    pos = positions(grading.n)
    comp = grading.support()[grading.group.identity]
    imgs = [lmap.images[p].upper() for p in comp]
    basis = []
    for p in comp:
        v = [F.zero] * len(pos)
        v[pos.index(p)] = F.one
        basis.append(v)
    r = rank(imgs, F)
    return r == len(comp) and rank(imgs + basis, F) == r


def suite_hom_aut(F: FieldSpec, n: int = 3, group: Group | None = None, samples: int = 200,
                  seed: int = 0, tuples=None) -> SuiteReport:
    """Conjugations and antiautomorphisms against the oracle, for every tuple and matrix."""
    rep = SuiteReport("hom-aut")
    group = group or CyclicGroup(2)
    rng = random.Random(seed)
    mats = _matrices(F, n, samples, rng)
    tuples = list(enumerate_tuples(group, n)) if tuples is None else tuples
    rep.stats.update(matrices=len(mats), gradings=len(tuples), homogeneous_auto=0,
                     homogeneous_anti=0)
    for t in tuples:
        gr = ElementaryGrading(group, n, t)
        e = group.identity
        refl_theta = oracle_homogeneity(gr, reflection_map(n, F))
        for P in mats:
            rep.checked += 1
            deg_e = is_homogeneous_matrix(gr, P) == e
            theta = oracle_homogeneity(gr, conjugation_map(P))
            if (theta is not None) != deg_e:
                rep.fail(f"tuple {t}: conjugation oracle={theta is not None}, degree-e={deg_e}, P={P.format()}")
            elif theta is not None:
                rep.stats["homogeneous_auto"] += 1
                if any(theta(g) != g for g in theta.mapping):
                    rep.fail(f"tuple {t}: homogeneous conjugation is not graded, P={P.format()}")
                if not _neutral_preserved(gr, conjugation_map(P), F):
                    rep.fail(f"tuple {t}: neutral component not preserved, P={P.format()}")
            anti = oracle_homogeneity(gr, antiauto_map(P))
            expect = deg_e and refl_theta is not None
            if (anti is not None) != expect:
                rep.fail(f"tuple {t}: antiautomorphism oracle={anti is not None}, expected {expect}, P={P.format()}")
            elif anti is not None:
                rep.stats["homogeneous_anti"] += 1
                if anti.mapping != refl_theta.mapping:
                    rep.fail(f"tuple {t}: antiautomorphism theta differs from reflection theta")
    return rep


def _squares_to_identity(P: UTMatrix) -> bool:
    lm = antiauto_map(P)
    return lm.compose(lm).is_identity()


def suite_sign(F: FieldSpec, n: int = 3, samples: int = 200, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("sign")
    rng = random.Random(seed)
    mats = _matrices(F, n, samples, rng)
    rep.stats.update(matrices=len(mats), involutions=0, sign_plus=0, sign_minus=0)
    for P in mats:
        rep.checked += 1
        inv = _squares_to_identity(P)
        sign = involution_sign(P)
        if inv != (sign is not None):
            rep.fail(f"involution={inv} but sign={sign} for P={P.format()}")
        if inv:
            rep.stats["involutions"] += 1
        if sign == 1:
            rep.stats["sign_plus"] += 1
        elif sign == -1:
            rep.stats["sign_minus"] += 1
            if n % 2:
                rep.fail(f"sign -1 for odd n, P={P.format()}")
    return rep


def suite_theta_props(group: Group, n: int) -> SuiteReport:
    rep = SuiteReport("theta-props")
    rep.stats["admitting"] = 0
    for t in enumerate_tuples(group, n):
        gr = ElementaryGrading(group, n, t)
        theta = build_theta(gr)
        if isinstance(theta, ThetaMap):
            rep.checked += 1
            rep.stats["admitting"] += 1
            if not theta_properties_check(theta, gr):
                rep.fail(f"theta properties fail for tuple {gr.format_tuple()}")
    return rep


def gl_order(d: int, p: int) -> int:
    out = 1
    for i in range(d):
        out *= p**d - p**i
    return out


def suite_kezlan_small(F: FieldSpec, n: int = 2) -> SuiteReport:
    """Every unital multiplicative bijection of UT_n(F_p) is a conjugation (exhaustive)."""
    rep = SuiteReport("kezlan-small")
    if not F.is_finite:
        raise ValueError("kezlan-small needs a finite field")
    pos = positions(n)
    d = len(pos)
    if F.p ** (d * d) > KEZLAN_CAP:
        raise ValueError(f"{F.p}^{d * d} linear maps exceeds cap {KEZLAN_CAP}")
    p = F.p
    idx = {q: a for a, q in enumerate(pos)}
    # unit products: E_a E_b = E_c or 0
    table = [[idx.get((a[0], b[1])) if a[1] == b[0] else None for b in pos] for a in pos]
    ident = tuple(1 if i == j else 0 for i, j in pos)

    def mul(x, y):
        z = [0] * d
        for a in range(d):
            if x[a]:
                for b in range(d):
                    c = table[a][b]
                    if c is not None and y[b]:
                        z[c] = (z[c] + x[a] * y[b]) % p
        return tuple(z)

    inner = set()
    for P in enumerate_invertible_ut(n, F):
        lm = conjugation_map(P)
        inner.add(tuple(tuple(lm.images[q].upper()) for q in pos))

    invertible = automorphisms = 0
    for flat in itertools.product(range(p), repeat=d * d):
        cols = tuple(flat[a * d:(a + 1) * d] for a in range(d))  # image of unit a
        if rank(cols, F) < d:
            continue
        invertible += 1
        if tuple(sum(c) % p for c in zip(*(cols[idx[i, i]] for i in range(1, n + 1)))) != ident:
            continue
        if any(mul(cols[a], cols[b]) != (cols[table[a][b]] if table[a][b] is not None else (0,) * d)
               for a in range(d) for b in range(d)):
            continue
        automorphisms += 1
        rep.checked += 1
        if cols not in inner:
            rep.fail(f"automorphism {cols} is not inner")
    rep.stats.update(invertible_maps=invertible, expected_invertible=gl_order(d, p),
                     automorphisms=automorphisms, inner_automorphisms=len(inner))
    if invertible != gl_order(d, p):
        rep.fail(f"enumerated {invertible} invertible maps, expected {gl_order(d, p)}")
    return rep


def suite_oracle_agreement(group: Group, n: int, F: FieldSpec) -> SuiteReport:
    rep = SuiteReport("oracle-agreement")
    summary, records = classify_space(group, n, F, validate=True)
    rep.checked = summary.total
    rep.stats.update(admits=summary.admits, literal_disagreements=summary.literal_disagreements)
    for r in records:
        if r.oracle_agrees is False:
            rep.fail(f"oracle disagrees on tuple {[group.format_element(g) for g in r.tuple]}")
        if r.literal_condition != r.admits:
            rep.fail(f"literal/strengthened disagree on tuple {[group.format_element(g) for g in r.tuple]}")
    return rep


SUITES = ("block-inverse", "entry-lemma", "hom-aut", "sign", "theta-props", "kezlan-small",
          "oracle-agreement")


def run_suite(name: str, F: FieldSpec, n: int, group: Group, samples: int, seed: int) -> SuiteReport:
    if name == "block-inverse":
        return suite_block_inverse(F, n, samples, seed)
    if name == "entry-lemma":
        return suite_entry_lemma(F, n, samples, seed)
    if name == "hom-aut":
        return suite_hom_aut(F, n, group, samples, seed)
    if name == "sign":
        return suite_sign(F, n, samples, seed)
    if name == "theta-props":
        return suite_theta_props(group, n)
    if name == "kezlan-small":
        return suite_kezlan_small(F, n)
    if name == "oracle-agreement":
        return suite_oracle_agreement(group, n, F)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
