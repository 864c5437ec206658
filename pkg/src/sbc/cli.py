"""Command-line surface: classification, counting, oracle, and verification.

Subcommands
    classify  one record per representative plus the count report
    count     closed-form counts against the orbit-derived counts
    oracle    brute-force enumeration totals (budget-gated by prime)
    verify    the invariant suite as a pass/fail matrix
    brace     structure report for one representative id
    ybe       Yang-Baxter verification for one representative id

Reports are byte-identical for a fixed configuration: ordering is canonical
everywhere, no timestamps, and --jobs only changes the schedule, never the
output.  The environment variable SBC_SEED is accepted and ignored; it is
reserved so that callers scripting several tools can export it uniformly
(nothing here is randomized).

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .classify import (
    classification_records,
    closed_form_count_report,
    count_report,
    expected_stabilizer_order,
    record_to_dict,
    verify_pairwise_nonconjugate,
)
from .group_core import validate_prime
from .oracle import DEFAULT_ORACLE_BUDGET, bucket_by_theta, enumerate_regular_subgroups
from .skewbrace import (
    brace_from_subgroup,
    is_involutive,
    lambda_matches_automorphism_action,
    socle_indices,
    annihilator_indices,
    verify_brace_axiom,
    verify_braid,
    verify_nondegenerate,
    ybe_tables,
)

__all__ = ["main"]

CSV_COLUMNS = ["id", "theta", "structure", "autbr_order", "orbit_size", "socle_order", "ann_order"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbc",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_id in [
        ("classify", False),
        ("count", False),
        ("oracle", False),
        ("verify", False),
        ("brace", True),
        ("ybe", True),
    ]:
        cmd = sub.add_parser(name)
        cmd.add_argument("--prime", type=int, required=True)
        cmd.add_argument("--theta", choices=["1", "p", "p2", "p3"], default=None)
        cmd.add_argument("--format", choices=["json", "csv", "table"], default="table")
        cmd.add_argument("--out", default=None)
        cmd.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
        cmd.add_argument("--jobs", type=int, default=1)
        cmd.add_argument("--full-ybe", action="store_true")
        if needs_id:
            cmd.add_argument("--id", required=True, dest="rep_id")
    return parser


def _theta_value(p: int, theta: str | None) -> int | None:
    if theta is None:
        return None
    return {"1": 1, "p": p, "p2": p * p, "p3": p**3}[theta]


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _table_text(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _record_rows(records, theta_value: int | None) -> list[dict]:
    rows = []
    for rec in records:
        if theta_value is not None and rec.theta_order != theta_value:
            continue
        rows.append(
            {
                "id": rec.rep_id,
                "theta": rec.theta_order,
                "structure": rec.structure,
                "autbr_order": rec.autbr_order,
                "orbit_size": rec.orbit_size,
                "socle_order": rec.socle_order,
                "ann_order": rec.ann_order,
            }
        )
    return rows


def _count_summary_lines(report) -> list[str]:
    lines = []
    for tag in sorted(report.regular_by_structure):
        by = report.regular_by_structure[tag]
        hgs = report.hgs_by_structure[tag]
        lines.append(f"structure {tag}: {report.class_counts[tag]} braces")
        for theta in sorted(by):
            lines.append(
                f"  theta={theta}: regular subgroups {by[theta]}, HGS count {hgs[theta]}"
            )
        lines.append(f"  HGS total {report.hgs_totals[tag]}")
    lines.append(f"regular subgroups total {report.total_regular}")
    return lines


def cmd_classify(args) -> int:
    p = args.prime
    records = classification_records(p)
    report = count_report(p)
    ok = report == closed_form_count_report(p) and all(
        rec.autbr_order == expected_stabilizer_order(rec.rep_id, p) for rec in records
    )
    rows = _record_rows(records, _theta_value(p, args.theta))
    if args.format == "json":
        payload = {
            "p": p,
            "records": [record_to_dict(r) for r in records if _theta_value(p, args.theta) in (None, r.theta_order)],
            "counts": {
                "regular_by_structure": report.regular_by_structure,
                "hgs_by_structure": report.hgs_by_structure,
                "class_counts": report.class_counts,
                "hgs_totals": report.hgs_totals,
                "total_regular": report.total_regular,
            },
            "identities_hold": ok,
        }
        text = _json_text(payload)
    elif args.format == "csv":
        text = _csv_text(rows, CSV_COLUMNS)
    else:
        text = _table_text(rows, CSV_COLUMNS) + "\n" + "\n".join(_count_summary_lines(report)) + "\n"
    _emit(text, args.out)
    return 0 if ok else 1


def cmd_count(args) -> int:
    p = args.prime
    computed = count_report(p)
    closed = closed_form_count_report(p)
    ok = computed == closed
    if args.format == "json":
        payload = {
            "p": p,
            "computed": {
                "regular_by_structure": computed.regular_by_structure,
                "hgs_by_structure": computed.hgs_by_structure,
                "class_counts": computed.class_counts,
                "hgs_totals": computed.hgs_totals,
            },
            "closed_form": {
                "regular_by_structure": closed.regular_by_structure,
                "hgs_by_structure": closed.hgs_by_structure,
                "class_counts": closed.class_counts,
                "hgs_totals": closed.hgs_totals,
            },
            "match": ok,
        }
        text = _json_text(payload)
    elif args.format == "csv":
        rows = []
        for source, rep in (("computed", computed), ("closed_form", closed)):
            for tag in sorted(rep.regular_by_structure):
                for theta in sorted(rep.regular_by_structure[tag]):
                    rows.append(
                        {
                            "source": source,
                            "structure": tag,
                            "theta": theta,
                            "regular": rep.regular_by_structure[tag][theta],
                            "hgs": rep.hgs_by_structure[tag][theta],
                        }
                    )
        text = _csv_text(rows, ["source", "structure", "theta", "regular", "hgs"])
    else:
        lines = ["computed:"] + _count_summary_lines(computed)
        lines += ["closed form:"] + _count_summary_lines(closed)
        lines.append(f"match: {ok}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if ok else 1


def cmd_oracle(args) -> int:
    p = args.prime
    result = enumerate_regular_subgroups(p, budget=args.oracle_budget, jobs=args.jobs)
    by_type = result.count_by_type()
    known = sum(by_type.values())
    counts = {
        "by_type": {**by_type, "other": len(result.records) - known},
        "by_theta": {str(t): len(v) for t, v in sorted(bucket_by_theta(result).items())},
        "by_type_and_theta": {
            tag: {str(t): n for t, n in sorted(by.items())}
            for tag, by in sorted(result.count_by_type_and_theta().items())
        },
        "per_ambient_regular": result.per_ambient_regular,
        "total": len(result.records),
    }
    if args.out:
        dump = {
            "p": p,
            "counts": counts,
            "subgroups": [
                {
                    "codes": list(rec.codes),
                    "type": rec.group_type.value,
                    "theta": rec.theta_order,
                }
                for rec in result.records
            ],
        }
        _emit(_json_text(dump), args.out)
    if args.format == "csv":
        rows = [
            {"type": tag, "count": n} for tag, n in sorted(counts["by_type"].items())
        ]
        text = _csv_text(rows, ["type", "count"])
    elif args.format == "table":
        lines = [f"oracle p={p}: {counts['total']} regular subgroups"]
        for tag, n in sorted(counts["by_type"].items()):
            lines.append(f"  {tag}: {n}")
        for t, n in counts["by_theta"].items():
            lines.append(f"  theta={t}: {n}")
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text({"p": p, "counts": counts})
    sys.stdout.write(text)
    return 0


def _verify_checks(p: int, oracle_budget: int, jobs: int):
    """(name, callable) pairs; callables raise on failure."""

    def algebra_identities():
        import random

        from . import automorphisms as am
        from . import holomorph as hm
        from .group_core import M1Elt

        a2 = am.alpha2(p)
        a3 = am.alpha3(p)
        lhs = am.aut_compose(a3, a2)
        rhs = am.aut_compose(am.alpha1(p), am.aut_compose(a2, a3))
        if lhs != rhs:
            raise AssertionError("generator relation failed")
        rng = random.Random(7)
        for _ in range(200):
            x, y = _random_aut(rng, p), _random_aut(rng, p)
            if am.aut_compose_triangular(x, y) != am.aut_compose(x, y):
                raise AssertionError("composition routes disagree")
        for a in range(0, p, 2):
            for b in range(p):
                g = hm.HolElt(M1Elt(p, a, b, 1), am.sylow_aut_from_coords(p, b, 1, a))
                acc = hm.hol_identity(p)
                for r in range(p + 1):
                    if hm.hol_pow_closed(g, r) != acc:
                        raise AssertionError("closed power failed")
                    acc = hm.hol_mul(acc, g)

    def family_regularity():
        from .families import all_representatives
        from .subgroups import is_regular

        reps = all_representatives(p)
        expected = 1 + 2 * p + ((2 * p - 3) * p + 2 * p - 1) + 4
        if len(reps) != expected:
            raise AssertionError("representative count off")
        for rep in reps:
            if not is_regular(rep.subgroup):
                raise AssertionError(f"{rep.rep_id} not regular")

    def non_conjugacy():
        verify_pairwise_nonconjugate(p)

    def stabilizer_shapes():
        for rec in classification_records(p):
            if rec.autbr_order != expected_stabilizer_order(rec.rep_id, p):
                raise AssertionError(f"{rec.rep_id} stabilizer {rec.autbr_order}")

    def count_identities():
        if count_report(p) != closed_form_count_report(p):
            raise AssertionError("counts disagree")

    def brace_axiom():
        from .families import all_representatives

        for rep in all_representatives(p):
            brace = brace_from_subgroup(rep.subgroup)
            bad = verify_brace_axiom(brace)
            if bad is not None:
                raise AssertionError(f"{rep.rep_id} axiom fails at {bad}")
            if not lambda_matches_automorphism_action(brace):
                raise AssertionError(f"{rep.rep_id} lambda mismatch")

    def braid_sample():
        from .families import all_representatives

        reps = all_representatives(p)
        for rep in reps[::5] + [r for r in reps if r.theta_order == p**3]:
            brace = brace_from_subgroup(rep.subgroup)
            if verify_braid(brace) is not None:
                raise AssertionError(f"{rep.rep_id} braid fails")
            if not verify_nondegenerate(brace):
                raise AssertionError(f"{rep.rep_id} degenerate")

    checks = [
        ("algebra-identities", algebra_identities),
        ("family-regularity", family_regularity),
        ("non-conjugacy", non_conjugacy),
        ("stabilizer-shapes", stabilizer_shapes),
        ("count-identities", count_identities),
        ("brace-axiom", brace_axiom),
        ("braid-sample", braid_sample),
    ]

    if p <= oracle_budget:

        def oracle_equivalence():
            result = enumerate_regular_subgroups(p, budget=oracle_budget, jobs=jobs)
            split = result.count_by_type_and_theta()
            report = closed_form_count_report(p)
            want_m1 = report.regular_by_structure["HeisenbergM1"]
            want_ab = report.regular_by_structure["ElemAbelian_p3"]
            if split.get("HeisenbergM1") != want_m1 or split.get("ElemAbelian_p3") != want_ab:
                raise AssertionError("oracle counts disagree with closed forms")
            if sum(len(v) for v in bucket_by_theta(result).values()) != report.total_regular:
                raise AssertionError("oracle total off")

        checks.append(("oracle-equivalence", oracle_equivalence))
    return checks


def _random_aut(rng, p: int):
    from .automorphisms import GL2Mat, AutM1Elt

    while True:
        a1, a2, a3, a4 = (rng.randrange(p) for _ in range(4))
        if (a1 * a4 - a2 * a3) % p:
            break
    return AutM1Elt(p, rng.randrange(p), rng.randrange(p), GL2Mat(p, a1, a2, a3, a4))


def cmd_verify(args) -> int:
    p = args.prime
    results = []
    for name, check in _verify_checks(p, args.oracle_budget, args.jobs):
        try:
            check()
            results.append((name, True, ""))
        except Exception as exc:  # noqa: BLE001 - report any failure in the matrix
            results.append((name, False, str(exc)))
    all_pass = all(ok for _, ok, _ in results)
    if args.format == "json":
        payload = {
            "p": p,
            "checks": [
                {"name": n, "status": "pass" if ok else "fail", "detail": msg}
                for n, ok, msg in results
            ],
            "all_pass": all_pass,
        }
        text = _json_text(payload)
    else:
        width = max(len(n) for n, _, _ in results)
        lines = [
            f"{'PASS' if ok else 'FAIL'}  {n.ljust(width)}  {msg}".rstrip()
            for n, ok, msg in results
        ]
        lines.append(f"all checks passed: {all_pass}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if all_pass else 1


def _find_rep(p: int, rep_id: str):
    from .families import all_representatives

    for rep in all_representatives(p):
        if rep.rep_id == rep_id:
            return rep
    raise ValueError(f"no representative with id {rep_id!r} at p={p}")


def cmd_brace(args) -> int:
    p = args.prime
    rep = _find_rep(p, args.rep_id)
    brace = brace_from_subgroup(rep.subgroup)
    axiom_ok = verify_brace_axiom(brace) is None
    lam_ok = lambda_matches_automorphism_action(brace)
    payload = {
        "p": p,
        "id": rep.rep_id,
        "theta": rep.theta_order,
        "structure": rep.group_type.value,
        "order": brace.order,
        "socle_order": int(len(socle_indices(brace))),
        "ann_order": int(len(annihilator_indices(brace))),
        "mul_abelian": brace.mul_abelian(),
        "add_abelian": brace.add_abelian(),
        "axiom_verified": axiom_ok,
        "lambda_matches_action": lam_ok,
    }
    if args.format == "csv":
        text = _csv_text([payload], list(payload.keys()))
    elif args.format == "table":
        text = "\n".join(f"{k}: {v}" for k, v in payload.items()) + "\n"
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return 0 if axiom_ok and lam_ok else 1


def cmd_ybe(args) -> int:
    p = args.prime
    rep = _find_rep(p, args.rep_id)
    brace = brace_from_subgroup(rep.subgroup)
    braid_bad = verify_braid(brace)
    payload = {
        "p": p,
        "id": rep.rep_id,
        "carrier_order": brace.order,
        "braid_verified": braid_bad is None,
        "nondegenerate": verify_nondegenerate(brace),
        "involutive": is_involutive(brace),
    }
    if braid_bad is not None:
        payload["braid_counterexample"] = list(braid_bad)
    if args.full_ybe:
        R1, R2 = ybe_tables(brace)
        payload["r1"] = R1.tolist()
        payload["r2"] = R2.tolist()
    if args.format == "csv":
        cols = [k for k in payload if k not in ("r1", "r2")]
        text = _csv_text([{k: payload[k] for k in cols}], cols)
    elif args.format == "table":
        lines = [f"{k}: {v}" for k, v in payload.items() if k not in ("r1", "r2")]
        if args.full_ybe:
            lines.append("r1/r2 tables included in json format only")
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return 0 if payload["braid_verified"] and payload["nondegenerate"] else 1


_COMMANDS = {
    "classify": cmd_classify,
    "count": cmd_count,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "brace": cmd_brace,
    "ybe": cmd_ybe,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        validate_prime(args.prime)
        if args.jobs < 1:
            raise ValueError("--jobs must be at least 1")
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
