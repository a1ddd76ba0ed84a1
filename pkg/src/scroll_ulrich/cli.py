"""Command-line surface: classification, cohomology, ext and tower reports.

Reports are built once as (meta, tables) and rendered to JSON, Markdown or
CSV with identical numeric content.  JSON output is canonical: sorted keys,
two-space indent, no floats; exact rationals are reduced fraction strings.
Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .chow import DivisorClass, ScrollParams, mul_div_c2, mul_div_div, numerical_invariants
from .cohomology import chi_closed_form, h_scroll, serre_dual
from .extensions import InapplicableCaseError, enumerate_cases, instanton_admissible, moduli_prediction
from .tower import (
    chi_endo_tower,
    in_tower_hypothesis,
    moduli_dim_gap,
    moduli_dim_tower,
    tower_chern,
    tower_h1_recursion,
)
from .ulrich import DUAL_TAG, classify_ulrich_line_bundles, slope
from . import verify as verify_mod

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class ConfigError(Exception):
    """Bad ranges or malformed values; maps to exit code 2."""


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)


@dataclass
class Report:
    command: str
    meta: dict
    tables: list[Table]


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def render_json(report: Report) -> str:
    payload = {
        "command": report.command,
        "meta": report.meta,
        "tables": [
            {"name": t.name, "columns": t.columns, "rows": t.rows} for t in report.tables
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_markdown(report: Report) -> str:
    out = [f"# {report.command}", ""]
    for key in sorted(report.meta):
        out.append(f"- {key}: {_fmt_cell(report.meta[key])}")
    for t in report.tables:
        out.append("")
        out.append(f"## {t.name}")
        out.append("")
        out.append("| " + " | ".join(t.columns) + " |")
        out.append("|" + "|".join(" --- " for _ in t.columns) + "|")
        for row in t.rows:
            out.append("| " + " | ".join(_fmt_cell(v) for v in row) + " |")
    out.append("")
    return "\n".join(out)


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for t in report.tables:
        writer.writerow(["table"] + t.columns)
        for row in t.rows:
            writer.writerow([t.name] + [_fmt_cell(v) for v in row])
    return buf.getvalue()


RENDERERS = {"json": render_json, "markdown": render_markdown, "csv": render_csv}


def parse_range(text: str) -> range:
    """'k' or 'lo..hi' (inclusive) to a range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            r = range(int(lo), int(hi) + 1)
        else:
            v = int(text)
            r = range(v, v + 1)
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}: expected 'k' or 'lo..hi'") from exc
    if len(r) == 0:
        raise ConfigError(f"empty range {text!r}")
    return r


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"bad triple {text!r}: expected 'x,y,z'")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError as exc:
        raise ConfigError(f"bad triple {text!r}: entries must be integers") from exc


def _div(text: str) -> DivisorClass:
    return DivisorClass(*parse_triple(text))


def _cells(args) -> list[dict]:
    """Grid cells with validity and optional a <= b normalization applied."""
    a_range = parse_range(args.a)
    b_range = parse_range(args.b)
    cells = []
    for a in a_range:
        for b in b_range:
            c_range = parse_range(args.c) if args.c else range(a + b + 1, a + b + 7)
            for c in c_range:
                aa, bb, normalized = a, b, False
                if getattr(args, "normalize", False) and a > b:
                    aa, bb, normalized = b, a, True
                valid = aa >= 0 and bb >= 0 and c >= aa + bb + 1
                cells.append(
                    {"a": aa, "b": bb, "c": c, "normalized": normalized, "valid": valid}
                )
    if not cells:
        raise ConfigError("empty grid")
    return cells


def _div_str(d: DivisorClass) -> str:
    return f"{d.x},{d.y},{d.z}"


def cmd_classify(args) -> tuple[Report, int]:
    table = Table(
        "ulrich-line-bundles",
        ["a", "b", "c", "status", "tag", "divisor", "dual_tag", "dual", "h0", "slope"],
    )
    counted = skipped = 0
    for cell in _cells(args):
        a, b, c = cell["a"], cell["b"], cell["c"]
        if not cell["valid"]:
            table.rows.append([a, b, c, "skipped", "", "", "", "", "", ""])
            skipped += 1
            continue
        params = ScrollParams(a, b, c)
        status = "normalized" if cell["normalized"] else "ok"
        for rec in classify_ulrich_line_bundles(params):
            table.rows.append(
                [
                    a, b, c, status,
                    rec.tag,
                    _div_str(rec.divisor),
                    DUAL_TAG[rec.tag],
                    _div_str(rec.special_pairing),
                    h_scroll(params, rec.divisor).h0,
                    str(slope(params, rec.divisor, 1)),
                ]
            )
            counted += 1
    meta = {"bundles": counted, "cells": len(_cells(args)), "skipped_cells": skipped}
    return Report("classify", meta, [table]), EXIT_OK


def cmd_cohom(args) -> tuple[Report, int]:
    a, b, c = parse_triple(args.params)
    try:
        params = ScrollParams(a, b, c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    div = _div(args.div)
    vec = h_scroll(params, div)
    dual = serre_dual(params, div)
    dual_vec = h_scroll(params, dual)
    table = Table(
        "cohomology",
        ["divisor", "h0", "h1", "h2", "h3", "chi", "chi_closed_form"],
        [
            [_div_str(div), *vec.as_tuple(), vec.chi, chi_closed_form(params, div)],
            [_div_str(dual), *dual_vec.as_tuple(), dual_vec.chi, chi_closed_form(params, dual)],
        ],
    )
    meta = {
        "a": a, "b": b, "c": c,
        "serre_dual": _div_str(dual),
        "serre_reversal_ok": vec.reversed() == dual_vec,
    }
    return Report("cohom", meta, [table]), EXIT_OK


def cmd_chow(args) -> tuple[Report, int]:
    a, b, c = parse_triple(args.params)
    try:
        params = ScrollParams(a, b, c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    d1, d2 = _div(args.d1), _div(args.d2)
    prod = mul_div_div(d1, d2, params)
    table = Table("products", ["expression", "value"])
    table.rows.append(["d1.d2 (xiC0,xiF,C0F)", f"{prod.p},{prod.q},{prod.r}"])
    if args.d3:
        d3 = _div(args.d3)
        table.rows.append(["d1.d2.d3", mul_div_c2(d3, prod, params)])
    n, d, g = numerical_invariants(params)
    meta = {"a": a, "b": b, "c": c, "n": n, "degree": d, "genus": g}
    return Report("chow", meta, [table]), EXIT_OK


def cmd_ext_table(args) -> tuple[Report, int]:
    records = Table(
        "rank2-extensions",
        [
            "a", "b", "c", "case", "sub_tag", "quot_tag", "sub", "quot", "ext_dim",
            "c1", "c2", "chi_endo", "h2_endo", "special",
            "c1_twisted", "c2_twisted", "obstructed_base_a", "obstructed_base_b",
            "pullback_obstructed",
        ],
    )
    predictions = Table(
        "moduli-predictions",
        ["a", "b", "c", "case", "kind", "dimension", "generically_smooth", "special", "note"],
    )
    skipped = 0
    for cell in _cells(args):
        a, b, c = cell["a"], cell["b"], cell["c"]
        if not cell["valid"]:
            skipped += 1
            continue
        params = ScrollParams(a, b, c)
        recs = enumerate_cases(params)
        for r in recs:
            records.rows.append(
                [
                    a, b, c, r.case_id, r.sub_tag, r.quot_tag,
                    _div_str(r.sub), _div_str(r.quotient), r.ext_dim,
                    _div_str(r.c1), f"{r.c2.p},{r.c2.q},{r.c2.r}",
                    r.chi_endo, r.h2_endo, r.special,
                    _div_str(r.c1_twisted),
                    f"{r.c2_twisted.p},{r.c2_twisted.q},{r.c2_twisted.r}",
                    r.obstruction.from_base_a, r.obstruction.from_base_b,
                    r.pullback_obstructed,
                ]
            )
        for case_id in sorted({r.case_id for r in recs}):
            try:
                p = moduli_prediction(params, case_id)
            except InapplicableCaseError:
                continue
            predictions.rows.append(
                [
                    a, b, c, case_id, p.dimension_kind, p.dimension,
                    p.generically_smooth, p.special, p.branch_note,
                ]
            )
    meta = {"records": len(records.rows), "skipped_cells": skipped}
    return Report("ext-table", meta, [records, predictions]), EXIT_OK


def cmd_tower_report(args) -> tuple[Report, int]:
    chern = Table(
        "tower-chern",
        ["a", "b", "c", "r", "c1", "c2", "c3", "slope", "chi_endo",
         "moduli_dim", "gap", "outside_hypothesis"],
    )
    h1_table = Table("tower-h1", ["a", "b", "c", "r", "h1"])
    skipped = 0
    for cell in _cells(args):
        a, b, c = cell["a"], cell["b"], cell["c"]
        if not cell["valid"]:
            skipped += 1
            continue
        params = ScrollParams(a, b, c)
        for r in range(1, args.rmax + 1):
            tw = tower_chern(params, r)
            chern.rows.append(
                [
                    a, b, c, r,
                    _div_str(tw.c1), f"{tw.c2.p},{tw.c2.q},{tw.c2.r}", tw.c3,
                    str(slope(params, tw.c1, r)),
                    chi_endo_tower(params, r) if in_tower_hypothesis(params) else "",
                    moduli_dim_tower(r),
                    moduli_dim_gap(r) if r >= 2 else "",
                    tw.outside_hypothesis,
                ]
            )
        if in_tower_hypothesis(params):
            for r, h1 in enumerate(tower_h1_recursion(params, args.rmax), start=1):
                h1_table.rows.append([a, b, c, r, h1])
    meta = {"rmax": args.rmax, "skipped_cells": skipped}
    return Report("tower-report", meta, [chern, h1_table]), EXIT_OK


def cmd_instanton(args) -> tuple[Report, int]:
    table = Table(
        "instanton-triples",
        ["c", "case", "k1", "k2", "k3", "charge", "c2_after_twist", "predicted_dim"],
    )
    for c in parse_range(args.c_range):
        if c < 1:
            raise ConfigError(f"instanton requires c >= 1, got {c}")
        for t in instanton_admissible(c):
            table.rows.append(
                [c, t.case, t.k1, t.k2, t.k3, t.charge,
                 ",".join(str(v) for v in t.c2_after_twist), t.predicted_dim]
            )
    return Report("instanton", {"rows": len(table.rows)}, [table]), EXIT_OK


def _worker_count() -> int:
    raw = os.environ.get("SCROLL_ULRICH_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_verify(args) -> tuple[Report, int]:
    cells = [
        (cell["a"], cell["b"], cell["c"])
        for cell in _cells(args)
        if cell["valid"]
    ]
    if not cells:
        raise ConfigError("no valid cells in the grid")
    cells = sorted(set(cells))

    results = []
    jobs = min(_worker_count(), len(cells))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(verify_mod.run_cell_checks, cells):
                results.extend(chunk)
    else:
        for cell in cells:
            results.extend(verify_mod.run_cell_checks(cell))
    results.extend(verify_mod.run_cohomology_box_checks())
    results.extend(verify_mod.run_tower_checks())
    results.extend(verify_mod.run_instanton_checks())
    if args.self_test:
        results.append(
            verify_mod.CheckResult(
                0, 0, 0, "self-test-negative-control", False,
                "deliberately perturbed closed form",
            )
        )

    results.sort(key=lambda r: (r.a, r.b, r.c, r.check))
    failed = [r for r in results if not r.ok]

    # one ledger row per replayed claim, aggregated over the grid
    by_claim: dict[str, list[int]] = {}
    for r in results:
        runs = by_claim.setdefault(r.check, [0, 0])
        runs[0] += 1
        runs[1] += 0 if r.ok else 1
    ledger = Table("ledger", ["check", "runs", "failures", "status"])
    ledger.rows = [
        [name, runs, bad, "pass" if bad == 0 else "FAIL"]
        for name, (runs, bad) in sorted(by_claim.items())
    ]

    table = Table("checks", ["a", "b", "c", "check", "status", "detail"])
    if args.all or failed:
        table.rows = [r.row() for r in (results if args.all else failed)]
    summary = Table("summary", ["checks", "passed", "failed"])
    summary.rows.append([len(results), len(results) - len(failed), len(failed)])
    meta = {"cells": len(cells), "failed": len(failed)}
    code = EXIT_OK if not failed else EXIT_VERIFY_FAILED
    return Report("verify", meta, [summary, ledger, table]), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scroll-ulrich",
        description="Exact Ulrich-bundle invariants on threefold scrolls over Hirzebruch surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_grid(p, c_default=None):
        p.add_argument("--a", required=True, help="value or lo..hi")
        p.add_argument("--b", required=True, help="value or lo..hi")
        p.add_argument("--c", default=c_default,
                       help="value or lo..hi (default: a+b+1..a+b+6 per cell)")
        p.add_argument("--normalize", action="store_true",
                       help="apply the a <= b convention by swapping")
        p.add_argument("--format", choices=sorted(RENDERERS), default="json")

    p = sub.add_parser("classify", help="Ulrich line bundles per grid cell")
    add_grid(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cohom", help="cohomology of one line bundle")
    p.add_argument("--params", required=True, help="a,b,c")
    p.add_argument("--div", required=True, help="x,y,z")
    p.add_argument("--format", choices=sorted(RENDERERS), default="json")
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("chow", help="intersection products")
    p.add_argument("--params", required=True, help="a,b,c")
    p.add_argument("--d1", required=True, help="x,y,z")
    p.add_argument("--d2", required=True, help="x,y,z")
    p.add_argument("--d3", help="x,y,z (optional: triple product)")
    p.add_argument("--format", choices=sorted(RENDERERS), default="json")
    p.set_defaults(func=cmd_chow)

    p = sub.add_parser("ext-table", help="rank-two extension records and moduli predictions")
    add_grid(p)
    p.set_defaults(func=cmd_ext_table)

    p = sub.add_parser("tower-report", help="iterated extension tower invariants")
    add_grid(p)
    p.add_argument("--rmax", type=int, default=8)
    p.set_defaults(func=cmd_tower_report)

    p = sub.add_parser("instanton", help="admissible instanton c2 triples")
    p.add_argument("--c", dest="c_range", required=True, help="value or lo..hi")
    p.add_argument("--format", choices=sorted(RENDERERS), default="json")
    p.set_defaults(func=cmd_instanton)

    p = sub.add_parser("verify", help="replay the verification grid; exit 1 on any failure")
    add_grid(p)
    p.add_argument("--all", action="store_true", help="list passing checks too")
    p.add_argument("--self-test", action="store_true",
                   help="inject a perturbed check; must exit 1")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fmt = getattr(args, "format", "json")
    sys.stdout.write(RENDERERS[fmt](report))
    if code != EXIT_OK:
        print(f"verification failed: {report.meta.get('failed')} checks", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
