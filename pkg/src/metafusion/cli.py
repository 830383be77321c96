"""Command-line front end.

Exit codes: 0 success, 1 a verification failure was found, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .automorphisms import aut_summary
from .blocks import FUSION_CASES, DefectGroupDescriptor, admissible_cases, invariants_row
from .errors import InputError, MetafusionError, VerificationFailure
from .fusion import candidates_only, essential_candidates, nilpotency_verdict
from .groups import SWEEP_CAP
from .metacyclic import FAMILY_TAGS, MetacyclicParams, build, check_params, classify
from .witness import PermGroup, corpus_report, witness_check

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
CHECKS = ("lemma1", "lemma2", "theorem3", "degrees")
DEFAULT_MAX_ORDER = {"lemma1": 256, "lemma2": 128, "theorem3": 128, "degrees": 256}


def _params(text: str) -> MetacyclicParams:
    return check_params(MetacyclicParams.parse(text))


def _env_cap() -> int | None:
    raw = os.environ.get("METAFUSION_MAX_ORDER")
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"METAFUSION_MAX_ORDER must be an integer, got {raw!r}") from None
    if not 2 <= value <= SWEEP_CAP:
        raise InputError(f"METAFUSION_MAX_ORDER must lie in [2, {SWEEP_CAP}], got {value}")
    return value


def _emit(doc: dict, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_classify(args) -> int:
    p = _params(args.params)
    fam = classify(build(p))
    doc = {"params": str(p), "order": fam.order, "family": fam.tag, "name": fam.name}
    _emit(doc, args.json, [f"{fam.name}  order {fam.order}  family {fam.tag}"])
    return EXIT_OK


def cmd_aut(args) -> int:
    p = _params(args.params)
    s = aut_summary(p)
    doc = {"params": str(p), "aut_order": s.order, "is_2_group": s.is_2_group,
           "odd_part": s.odd_part}
    _emit(doc, args.json, [f"|Aut| = {s.order}  odd part {s.odd_part}  "
                           f"2-group: {'yes' if s.is_2_group else 'no'}"])
    return EXIT_OK


def cmd_essential(args) -> int:
    p = _params(args.params)
    reports = essential_candidates(build(p))
    rows = []
    for r in reports:
        row = r.row()
        row["members"] = list(r.subgroup.members)
        row["centric"] = r.centric_in_P
        if "out_strongly_2_embedded" in r.notes:
            row["out_strongly_2_embedded"] = r.notes["out_strongly_2_embedded"]
        rows.append(row)
    survivors = candidates_only(reports)
    doc = {"params": str(p), "subgroups": rows, "candidates": len(survivors)}
    lines = [f"{len(reports)} proper subgroups, {len(survivors)} candidates"]
    for row in rows:
        lines.append(f"  |Q|={row['q_order']:<4} {row['q_shape']:<10} {row['verdict']:<10} "
                     f"{row['reason']}".rstrip())
    _emit(doc, args.json, lines)
    return EXIT_OK


def cmd_verdict(args) -> int:
    p = _params(args.params)
    v = nilpotency_verdict(build(p))
    doc = {"params": str(p), "verdict": v.tag}
    if v.reason:
        doc["reason"] = v.reason
    _emit(doc, args.json, [v.tag + (f" ({v.reason})" if v.reason else "")])
    return EXIT_OK


def _descriptor(args) -> DefectGroupDescriptor:
    if args.params is not None:
        if args.family is not None or args.order is not None:
            raise InputError("give either --params or --family/--order, not both")
        return DefectGroupDescriptor(params=_params(args.params))
    if args.family is None or args.order is None:
        raise InputError("a defect group needs --params or both --family and --order")
    return DefectGroupDescriptor(family=args.family, order=args.order)


def cmd_block(args) -> int:
    row = invariants_row(_descriptor(args), args.case)
    doc = {key: row[key] for key in ("k", "k0", "k1", "l")}
    doc["heights"] = row["heights"]
    heights = " ".join(f"k{i}={c}" for i, c in row["heights"].items())
    _emit(doc, args.json, [f"{row['family']} order {row['order']} case {row['case']}: "
                           f"k={row['k']} l={row['l']}  {heights}"])
    return EXIT_OK


def cmd_cases(args) -> int:
    d = _descriptor(args)
    cases = admissible_cases(d)
    _emit({"family": d.classified.tag, "order": d.classified.order, "cases": cases},
          args.json, cases)
    return EXIT_OK


def _run_sweep(check: str, max_order: int):
    if check == "lemma1":
        from .automorphisms import lemma1_sweep as sweep
    elif check == "lemma2":
        from .fusion import lemma2_sweep as sweep
    elif check == "theorem3":
        from .fusion import theorem3_sweep as sweep
    else:
        from .blocks import degrees_sweep as sweep
    return sweep(max_order)


def _finish(report, args) -> int:
    if getattr(args, "out", None):
        Path(args.out).write_text(report.to_tsv())
    if args.json:
        print(report.dumps())
    else:
        sys.stdout.write(report.to_tsv())
        for key, value in report.extra.items():
            print(f"# {key}: {json.dumps(value, sort_keys=True)}")
        print(f"# {report.check}: {report.passed} passed, {report.failed} failed")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    max_order = args.max_order
    if max_order is None:
        max_order = _env_cap() or DEFAULT_MAX_ORDER[args.check]
    if not 2 <= max_order <= SWEEP_CAP:
        raise InputError(f"--max-order must lie in [2, {SWEEP_CAP}], got {max_order}")
    return _finish(_run_sweep(args.check, max_order), args)


def cmd_witness(args) -> int:
    if args.file is not None:
        w = witness_check(PermGroup.load(args.file))
        row = w.row()
        _emit(row, args.json, ["\t".join(f"{k}={v}" for k, v in row.items())])
        return EXIT_OK if w.consistent else EXIT_FAIL
    return _finish(corpus_report(args.corpus or None), args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metafusion",
                                     description="Fusion and block invariants of metacyclic 2-groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    for name, func, text in (("classify", cmd_classify, "family of build(params)"),
                             ("aut", cmd_aut, "automorphism group order"),
                             ("essential", cmd_essential, "essential-candidate filter"),
                             ("verdict", cmd_verdict, "forced-nilpotent verdict")):
        add(name, func, text).add_argument("--params", required=True, metavar="m,n,r,s")

    for name, func, text in (("block", cmd_block, "block invariants for a fusion case"),
                             ("cases", cmd_cases, "admissible fusion cases")):
        p = add(name, func, text)
        p.add_argument("--params", metavar="m,n,r,s")
        p.add_argument("--family", choices=FAMILY_TAGS)
        p.add_argument("--order", type=int)
        if name == "block":
            p.add_argument("--case", required=True, choices=FUSION_CASES)

    p = add("sweep", cmd_sweep, "exhaustive verification sweep")
    p.add_argument("--check", required=True, choices=CHECKS)
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--out", metavar="FILE", help="also write the TSV report here")

    p = add("witness", cmd_witness, "2-nilpotency of permutation groups")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--file", metavar="GROUP.json")
    group.add_argument("--corpus", nargs="?", const="", metavar="DIR",
                       help="corpus directory (default: the bundled corpus)")
    p.add_argument("--out", metavar="FILE", help="also write the TSV report here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except MetafusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
