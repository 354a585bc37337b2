"""Exhaustive sweeps over grading tuples with theorem/oracle cross-validation."""
from __future__ import annotations

import csv
import io
import itertools
import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .fields import FieldSpec
from .grading import ElementaryGrading
from .group import Group, GroupError
from .homogeneity import (
    ConditionWitness,
    ThetaMap,
    build_theta,
    check_segment_condition,
    format_tags,
)
from .matrixalg import oracle_homogeneity, reflection_map

DEFAULT_CAP = 10**7
DEFAULT_FIELD = FieldSpec(5)
JOBS_ENV = "UTHOMOG_JOBS"
CSV_COLUMNS = ("tuple", "admits", "tags", "witness", "literal", "oracle_agrees")


class CapExceeded(ValueError):
    pass


def enumerate_tuples(group: Group, n: int, cap: int = DEFAULT_CAP):
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if not group.is_finite:
        raise GroupError(f"cannot enumerate tuples over the infinite group {group.spec}")
    total = group.order ** (n - 1)
    if total > cap:
        raise CapExceeded(f"{group.spec}, n={n}: {total} tuples exceeds cap {cap}")
    return itertools.product(list(group.elements()), repeat=n - 1)


@dataclass
class CrossValidation:
    strengthened: bool
    literal: bool
    oracle: bool | None
    theta: ThetaMap | None
    oracle_theta: ThetaMap | None
    witness: ConditionWitness | None
    literal_witness: ConditionWitness | None

    @property
    def literal_agrees(self) -> bool:
        return self.literal == self.strengthened

    @property
    def oracle_agrees(self) -> bool | None:
        if self.oracle is None:
            return None
        if self.oracle != self.strengthened:
            return False
        return self.theta is None or self.theta.mapping == self.oracle_theta.mapping

    @property
    def all_agree(self) -> bool:
        return self.literal_agrees and self.oracle_agrees is not False


def cross_validate(grading: ElementaryGrading, field: FieldSpec | None = DEFAULT_FIELD) -> CrossValidation:
    """Run the theta construction, the literal condition and (unless ``field`` is None) the oracle."""
    res = build_theta(grading)
    literal, lw = check_segment_condition(grading)
    theta = res if isinstance(res, ThetaMap) else None
    oracle = oracle_theta = None
    if field is not None:
        oracle_theta = oracle_homogeneity(grading, reflection_map(grading.n, field))
        oracle = oracle_theta is not None
    return CrossValidation(
        strengthened=theta is not None,
        literal=literal,
        oracle=oracle,
        theta=theta,
        oracle_theta=oracle_theta,
        witness=None if theta else res,
        literal_witness=lw,
    )


@dataclass
class ClassificationRecord:
    tuple: tuple
    admits: bool
    theta_tags: frozenset = frozenset()
    theta: dict | None = None
    witness: ConditionWitness | None = None
    literal_condition: bool = True
    oracle_agrees: bool | None = None

    def to_json(self, group: Group) -> dict:
        fmt = group.format_element
        w = self.witness
        return {
            "tuple": [fmt(g) for g in self.tuple],
            "admits": self.admits,
            "tags": sorted(self.theta_tags),
            "theta": None if self.theta is None else {fmt(k): fmt(v) for k, v in self.theta.items()},
            "witness": None if w is None else {
                "left": list(w.left), "right": list(w.right),
                "value": fmt(w.value), "mirrors": [fmt(m) for m in w.mirrors],
            },
            "literal": self.literal_condition,
            "oracle_agrees": self.oracle_agrees,
        }

    @classmethod
    def from_json(cls, data: dict, group: Group) -> "ClassificationRecord":
        parse = group.parse_element
        w = data["witness"]
        return cls(
            tuple=tuple(parse(s) for s in data["tuple"]),
            admits=data["admits"],
            theta_tags=frozenset(data["tags"]),
            theta=None if data["theta"] is None else {parse(k): parse(v) for k, v in data["theta"].items()},
            witness=None if w is None else ConditionWitness(
                tuple(w["left"]), tuple(w["right"]), parse(w["value"]),
                tuple(parse(m) for m in w["mirrors"])),
            literal_condition=data["literal"],
            oracle_agrees=data["oracle_agrees"],
        )

    def csv_row(self, group: Group) -> dict:
        w = self.witness
        return {
            "tuple": ",".join(group.format_element(g) for g in self.tuple),
            "admits": str(self.admits).lower(),
            "tags": format_tags(self.theta_tags),
            "witness": "" if w is None else f"{w.left[0]}:{w.left[1]}|{w.right[0]}:{w.right[1]}",
            "literal": str(self.literal_condition).lower(),
            "oracle_agrees": "" if self.oracle_agrees is None else str(self.oracle_agrees).lower(),
        }


def classify_grading(grading: ElementaryGrading, field: FieldSpec | None) -> ClassificationRecord:
    cv = cross_validate(grading, field)
    return ClassificationRecord(
        tuple=grading.tuple,
        admits=cv.strengthened,
        theta_tags=cv.theta.tags if cv.theta else frozenset(),
        theta=dict(cv.theta.mapping) if cv.theta else None,
        witness=cv.witness,
        literal_condition=cv.literal,
        oracle_agrees=cv.oracle_agrees,
    )


@dataclass
class ClassificationSummary:
    group: str
    n: int
    total: int = 0
    admits: int = 0
    rejects: int = 0
    tag_counts: dict = field(default_factory=dict)
    literal_disagreements: int = 0
    oracle_disagreements: int = 0
    validated: bool = False
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {
            "group": self.group, "n": self.n, "total": self.total,
            "admits": self.admits, "rejects": self.rejects,
            "tag_counts": dict(sorted(self.tag_counts.items())),
            "literal_disagreements": self.literal_disagreements,
            "oracle_disagreements": self.oracle_disagreements,
            "validated": self.validated,
            "elapsed_seconds": round(self.elapsed, 6),
        }


def _classify_chunk(group, n, field, start, stop):
    tuples = itertools.islice(enumerate_tuples(group, n, cap=float("inf")), start, stop)
    return [classify_grading(ElementaryGrading(group, n, t), field) for t in tuples]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def classify_space(group: Group, n: int, field: FieldSpec = DEFAULT_FIELD, validate: bool = True,
                   jobs: int | None = None, cap: int = DEFAULT_CAP):
    """Classify every tuple of ``group`` for ``UT_n``; returns ``(summary, records)``.

    With ``jobs > 1`` the tuple index range is split into contiguous chunks and
    the results are concatenated in chunk order, so output does not depend on
    the worker count.
    """
    t0 = time.perf_counter()
    enumerate_tuples(group, n, cap)  # validates finiteness and cap
    total = group.order ** (n - 1)
    vfield = field if validate else None
    jobs = default_jobs() if jobs is None else max(1, jobs)
    if jobs == 1 or total < 2 * jobs:
        records = _classify_chunk(group, n, vfield, 0, total)
    else:
        step = -(-total // (4 * jobs))
        bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = [ex.submit(_classify_chunk, group, n, vfield, a, b) for a, b in bounds]
            records = [r for f in futs for r in f.result()]
    summary = summarize(group, n, records, validate)
    summary.elapsed = time.perf_counter() - t0
    return summary, records


def summarize(group: Group, n: int, records, validated: bool) -> ClassificationSummary:
    tags = Counter(format_tags(r.theta_tags) for r in records if r.admits)
    admits = sum(r.admits for r in records)
    return ClassificationSummary(
        group=group.spec, n=n, total=len(records), admits=admits,
        rejects=len(records) - admits, tag_counts=dict(tags),
        literal_disagreements=sum(r.literal_condition != r.admits for r in records),
        oracle_disagreements=sum(r.oracle_agrees is False for r in records),
        validated=validated,
    )


def records_to_jsonl(records, group: Group) -> str:
    return "".join(json.dumps(r.to_json(group), sort_keys=True) + "\n" for r in records)


def records_to_csv(records, group: Group) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.csv_row(group))
    return buf.getvalue()
