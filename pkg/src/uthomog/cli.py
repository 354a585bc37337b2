"""Command-line interface.

Exit status: 0 when the run completed and every check passed (a rejected
grading counts as a completed run), 1 on a verification failure or a
theorem/oracle disagreement, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify as cl
from .fields import FieldError, parse_field_spec
from .grading import ElementaryGrading
from .group import GroupError, parse_group_spec, parse_tuple, split_literals
from .homogeneity import format_tags
from .matrixalg import (
    SingularMatrixError,
    UTMatrix,
    antiauto_apply,
    block_inverse,
    canonical_involution,
    conjugate,
    involution_sign,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _theta_json(theta, group):
    fmt = group.format_element
    return {fmt(k): fmt(v) for k, v in sorted(theta.mapping.items(), key=lambda kv: fmt(kv[0]))}


def _theta_text(theta, group):
    fmt = group.format_element
    return ", ".join(f"{fmt(k)} -> {fmt(v)}" for k, v in sorted(theta.mapping.items(), key=lambda kv: fmt(kv[0])))


def _witness_json(w, group):
    if w is None:
        return None
    fmt = group.format_element
    return {"left": list(w.left), "right": list(w.right), "value": fmt(w.value),
            "mirrors": [fmt(m) for m in w.mirrors]}


def cmd_check(args, out) -> int:
    group = parse_group_spec(args.group)
    tup = parse_tuple(group, args.tuple)
    try:
        grading = ElementaryGrading(group, args.n, tup)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    field = parse_field_spec(args.field)
    cv = cl.cross_validate(grading, field if args.validate else None)
    report = {
        "group": group.spec, "n": args.n, "tuple": [group.format_element(g) for g in tup],
        "admits": cv.strengthened,
        "theta": _theta_json(cv.theta, group) if cv.theta else None,
        "tags": format_tags(cv.theta.tags) if cv.theta else "",
        "witness": _witness_json(cv.witness, group),
        "literal": cv.literal,
        "literal_witness": _witness_json(cv.literal_witness, group),
        "oracle": cv.oracle,
        "oracle_agrees": cv.oracle_agrees,
        "literal_agrees": cv.literal_agrees,
    }
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        out.write(f"grading: {group.spec}, n={args.n}, tuple=({grading.format_tuple()})\n")
        if cv.theta:
            out.write("decision: admits a homogeneous antiautomorphism\n")
            out.write(f"theta: {_theta_text(cv.theta, group)}\n")
            out.write(f"tags: {report['tags']}\n")
        else:
            out.write("decision: rejected (no homogeneous antiautomorphism)\n")
            out.write(f"witness: {cv.witness.describe(group)}\n")
        out.write(f"literal condition: {'holds' if cv.literal else 'fails'}"
                  f"{'' if cv.literal_agrees else '  [DISAGREES with theta construction]'}\n")
        if cv.oracle is not None:
            out.write(f"oracle ({field.spec}): {'homogeneous' if cv.oracle else 'not homogeneous'}, "
                      f"{'agrees' if cv.oracle_agrees else 'DISAGREES'}\n")
    return EXIT_OK if cv.oracle_agrees is not False else EXIT_FAIL


def cmd_classify(args, out) -> int:
    group = parse_group_spec(args.group)
    field = parse_field_spec(args.field)
    try:
        summary, records = cl.classify_space(group, args.n, field, args.validate, args.jobs, args.cap)
    except (cl.CapExceeded, GroupError) as exc:
        raise UsageError(str(exc)) from exc
    summary_doc = summary.to_json()
    if args.output_dir:
        d = Path(args.output_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "records.jsonl").write_text(cl.records_to_jsonl(records, group))
        (d / "records.csv").write_text(cl.records_to_csv(records, group))
        (d / "summary.json").write_text(json.dumps(summary_doc, indent=2, sort_keys=True) + "\n")
    if args.format == "json":
        out.write(cl.records_to_jsonl(records, group))
        out.write(json.dumps({"summary": summary_doc}, sort_keys=True) + "\n")
    elif args.format == "csv":
        out.write(cl.records_to_csv(records, group))
        sys.stderr.write(json.dumps(summary_doc, sort_keys=True) + "\n")
    else:
        out.write(f"group {group.spec}, n={args.n}: {summary.total} tuples, "
                  f"{summary.admits} admit, {summary.rejects} rejected\n")
        for tags, c in sorted(summary.tag_counts.items()):
            out.write(f"  {tags}: {c}\n")
        out.write(f"literal/strengthened disagreements: {summary.literal_disagreements}\n")
        if args.validate:
            out.write(f"oracle ({field.spec}) disagreements: {summary.oracle_disagreements}\n")
        for r in records:
            row = r.csv_row(group)
            status = f"admits {row['tags']}" if r.admits else f"rejected {row['witness']}"
            out.write(f"  ({row['tuple']}): {status}\n")
    bad = summary.oracle_disagreements or summary.literal_disagreements
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(args, out) -> int:
    group = parse_group_spec(args.group)
    field = parse_field_spec(args.field)
    try:
        rep = run_suite(args.suite, field, args.n, group, args.samples, args.seed)
    except (ValueError, GroupError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        out.write(json.dumps({"suite": rep.name, "passed": rep.passed, "checked": rep.checked,
                              "failures": rep.failures, "stats": rep.stats}, sort_keys=True) + "\n")
    else:
        out.write(f"{rep.name}: {'PASS' if rep.passed else 'FAIL'} ({rep.checked} checks)\n")
        for k, v in sorted(rep.stats.items()):
            out.write(f"  {k}: {v}\n")
        for f in rep.failures:
            out.write(f"  failure: {f}\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _read_matrix(text, n, field, what):
    if text is None:
        raise UsageError(f"missing {what}")
    vals = [field.parse(s) for s in split_literals(text)]
    try:
        return UTMatrix.from_upper(n, vals, field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_matrix(args, out) -> int:
    field = parse_field_spec(args.field)
    M = _read_matrix(args.entries, args.n, field, "--entries")
    if args.op == "reflect":
        result = canonical_involution(M)
    elif args.op == "inverse":
        result = block_inverse(M)
    elif args.op == "conjugate":
        result = conjugate(M, _read_matrix(args.x_entries, args.n, field, "--x-entries"))
    elif args.op == "antiauto":
        result = antiauto_apply(M, _read_matrix(args.x_entries, args.n, field, "--x-entries"))
    else:
        if not M.is_invertible():
            raise SingularMatrixError("sign needs an invertible matrix")
        s = involution_sign(M)
        text = "none" if s is None else str(s)
        out.write((json.dumps({"sign": s}) if args.format == "json" else text) + "\n")
        return EXIT_OK
    if args.format == "json":
        out.write(json.dumps({"n": result.n, "field": field.spec,
                              "rows": [[field.format(a) for a in r] for r in result.rows]}) + "\n")
    else:
        out.write(result.format() + "\n")
    return EXIT_OK


def _bool_flag(p, name, default, help):
    p.add_argument(f"--{name}", dest=name, action=argparse.BooleanOptionalAction, default=default, help=help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uthomog",
        description="Homogeneous antiautomorphisms of graded upper triangular matrix algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmts=("human", "json")):
        p.add_argument("--format", choices=fmts, default="human")

    p = sub.add_parser("check", help="decide one grading")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tuple", default="")
    p.add_argument("--field", default="F5", help="field for the oracle (Q or F<p>)")
    _bool_flag(p, "validate", True, "cross-check against the matrix oracle")
    common(p)

    p = sub.add_parser("classify", help="classify every tuple of a finite group")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="F5")
    _bool_flag(p, "validate", True, "cross-check every tuple against the matrix oracle")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${cl.JOBS_ENV} or 1)")
    p.add_argument("--cap", type=int, default=cl.DEFAULT_CAP)
    p.add_argument("--output-dir", help="also write records.jsonl, records.csv, summary.json here")
    common(p, ("human", "json", "csv"))

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--field", default="Q")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--group", default="Z2")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    common(p)

    p = sub.add_parser("matrix", help="exact matrix utilities on UT_n")
    p.add_argument("op", choices=("inverse", "reflect", "conjugate", "antiauto", "sign"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--entries", required=True, help="row-major upper triangle, comma separated")
    p.add_argument("--x-entries", help="second matrix for conjugate/antiauto")
    p.add_argument("--field", default="Q")
    common(p)
    return parser


COMMANDS = {"check": cmd_check, "classify": cmd_classify, "verify": cmd_verify, "matrix": cmd_matrix}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, GroupError, FieldError, SingularMatrixError, IndexError) as exc:
        sys.stderr.write(f"uthomog: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
