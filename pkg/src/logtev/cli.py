"""Command-line interface: single and batch reports, invariant sweeps, specialization tables.

Exit codes: 0 success, 2 bad input (validation, configuration, ranges, or
n < 3 in certified mode), 3 internal failure (integral and closed formula
disagree, a sweep found violations, or an unexpected error).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable

from .blowup import Blp2Report, Blp2Status, excess_corrected_logtev, status_blp2
from .errors import ConfigurationError, CrossCheckError, ValidationError
from .gamma import (
    GammaBlp2,
    GammaXrsa,
    gamma_from_document,
    gamma_to_document,
    symmetry_factor,
    validate_xrsa,
)
from .sweep import enumerate_xrsa, run_sweep
from .tevelev import (
    TevReport,
    bl_linear_gamma,
    logtev_projective,
    logtev_xrsa,
    tev_blowup_linear,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class UsageError(Exception):
    """Bad ranges or a request the selected mode forbids (exit 2)."""


# serialization


def _stringify(obj: Any, key: str | None = None) -> Any:
    # computed integers become decimal strings; echoed tangency data stays canonical
    if key in ("gamma", "mu"):
        return obj
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v, k) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def _symmetrize(value: int | None, factor: int) -> int | None:
    if value is None:
        return None
    if value % factor:
        raise CrossCheckError(f"{value} is not divisible by the symmetry factor {factor}")
    return value // factor


def xrsa_document(g: GammaXrsa, report: TevReport, symmetrized: bool = False) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "target": "xrsa",
        "gamma": gamma_to_document(g),
        "status": report.status.value,
        "integral": report.integral,
        "closed_value": report.closed_value,
        "logtev": report.logtev,
    }
    if symmetrized:
        factor = symmetry_factor(g.mu)
        doc["symmetry_factor"] = factor
        doc["symmetrized_logtev"] = _symmetrize(report.logtev, factor)
    doc["diagnostics"] = report.diagnostics
    return doc


def blp2_document(g: GammaBlp2, report: Blp2Report, symmetrized: bool = False) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "target": "blp2",
        "gamma": gamma_to_document(g),
        "status": report.status.value,
        "integral": report.integral,
        "closed_value": report.closed_value,
        "logtev": report.logtev,
    }
    if report.excess is not None:
        doc["component_count"] = report.excess.component_count
        doc["per_component"] = report.excess.per_component
    if report.status is Blp2Status.UNCERTIFIED:
        doc["warning"] = report.diagnostics["warning"]
    if symmetrized:
        factor = symmetry_factor(g.mu)
        doc["symmetry_factor"] = factor
        doc["symmetrized_logtev"] = _symmetrize(report.logtev, factor)
    doc["diagnostics"] = report.diagnostics
    return doc


def _tsv(rows: list[dict[str, Any]], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        out = []
        for col in columns:
            value = row.get(col)
            if isinstance(value, (dict, list)):
                value = json.dumps(value, separators=(",", ":"))
            out.append("" if value is None else value)
        writer.writerow(out)
    return buf.getvalue()


def _fmt_gamma(doc: dict[str, Any]) -> str:
    fields = ("r", "s", "a", "b", "c") if doc["target"] == "xrsa" else ("d",)
    head = " ".join(f"{k}={doc[k]}" for k in fields)
    return f"{doc['target']} {head} mu={json.dumps(doc['mu'], separators=(',', ':'))}"


def _human_report(doc: dict[str, Any]) -> str:
    diag = doc["diagnostics"]
    lines = [_fmt_gamma(doc["gamma"])]
    derived = f"  m={diag['m']} n={diag['n']} m_j={diag['m_parts']}"
    if "k0" in diag:
        derived += f" k0={diag['k0']}"
    lines.append(derived)
    ineqs = diag["inequalities"]
    if isinstance(ineqs, dict):
        groups = [(name, rows) for name, rows in ineqs.items()]
    else:
        groups = [(f"group {q['group']}", [q]) for q in ineqs]
    for name, rows in groups:
        for q in rows:
            mark = "pass" if q["holds"] else "FAIL"
            lines.append(f"  [{mark}] {name:<13} {q['label']:<32} ({q['lhs']} vs {q['rhs']})")
    relation = "=" if doc["integral"] == doc["closed_value"] else "!="
    lines.append(f"  integral {doc['integral']} {relation} closed formula {doc['closed_value']}")
    if "component_count" in doc:
        lines.append(
            f"  excess: {doc['component_count']} components x {doc['per_component']} each"
        )
    logtev = "withheld" if doc["logtev"] is None else doc["logtev"]
    lines.append(f"  status {doc['status']}  logTev = {logtev}")
    if "symmetrized_logtev" in doc:
        lines.append(f"  symmetrized = {doc['symmetrized_logtev']} (factor {doc['symmetry_factor']})")
    for key in ("note", "warning", "cross_check"):
        if key in diag:
            lines.append(f"  {key}: {diag[key]}")
    return "\n".join(lines)


_REPORT_COLUMNS = ["target", "gamma", "status", "integral", "closed_value", "logtev"]


def _emit_reports(docs: list[dict[str, Any]], fmt: str, batch: bool) -> str:
    if fmt == "json":
        payload = [_stringify(d) for d in docs] if batch else _stringify(docs[0])
        return json.dumps(payload, indent=2)
    if fmt == "tsv":
        columns = list(_REPORT_COLUMNS)
        for extra in ("component_count", "per_component", "symmetrized_logtev"):
            if any(extra in d for d in docs):
                columns.append(extra)
        return _tsv(docs, columns).rstrip("\n")
    return "\n\n".join(_human_report(d) for d in docs)


# input


def _load_documents(path: str) -> tuple[list[dict[str, Any]], bool]:
    try:
        if path == "-":
            payload = json.load(sys.stdin)
        else:
            with Path(path).open("r", encoding="utf-8") as handle:
                payload = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc
    batch = isinstance(payload, list)
    docs = payload if batch else [payload]
    # an emitted report can be fed back in; its gamma field is the canonical document
    docs = [d["gamma"] if isinstance(d, dict) and "gamma" in d else d for d in docs]
    return docs, batch


def _parse(docs: list[Any], target: str) -> list[Any]:
    out = []
    for i, doc in enumerate(docs):
        try:
            g = gamma_from_document(doc)
        except ValidationError as exc:
            raise ValidationError(f"document {i}: {exc}") from exc
        got = "xrsa" if isinstance(g, GammaXrsa) else "blp2"
        if got != target:
            raise ValidationError(f"document {i}: target is {got!r}, this command needs {target!r}")
        out.append(g)
    return out


def _require_certifiable(n: int, index: int, mode: str) -> None:
    if mode == "certified" and n < 3:
        raise UsageError(
            f"document {index}: n = {n} < 3 has no enumerative meaning; "
            "use --mode diagnostic to see the intersection number"
        )


# commands


def cmd_xrsa(args: argparse.Namespace) -> int:
    docs, batch = _load_documents(args.file)
    gammas = _parse(docs, "xrsa")
    reports = []
    for i, g in enumerate(gammas):
        _require_certifiable(validate_xrsa(g).n, i, args.mode)
        reports.append(xrsa_document(g, logtev_xrsa(g), args.symmetrized))
    print(_emit_reports(reports, args.format, batch))
    return EXIT_OK


def cmd_blp2(args: argparse.Namespace) -> int:
    docs, batch = _load_documents(args.file)
    gammas = _parse(docs, "blp2")
    reports = []
    code = EXIT_OK
    for i, g in enumerate(gammas):
        report = excess_corrected_logtev(g) if args.excess else status_blp2(g)
        _require_certifiable(report.diagnostics["n"], i, args.mode)
        if report.status is Blp2Status.UNCERTIFIED:
            print(f"warning: document {i}: {report.diagnostics['warning']}", file=sys.stderr)
        if report.integral != report.closed_value:
            print(f"error: document {i}: {report.diagnostics['cross_check']}", file=sys.stderr)
            code = EXIT_INTERNAL
        reports.append(blp2_document(g, report, args.symmetrized))
    print(_emit_reports(reports, args.format, batch))
    return code


def cmd_sweep(args: argparse.Namespace) -> int:
    bounds = {"r": args.r, "s": args.s, "a": args.a, "max_m": args.max_m, "max_part": args.max_part}
    bad = [k for k, v in bounds.items() if v < 0]
    if bad:
        raise UsageError(f"sweep bounds must be nonnegative: {', '.join(bad)}")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    targets = ("xrsa", "blp2") if args.target == "both" else (args.target,)
    summary = run_sweep(
        args.r, args.s, args.a, args.max_m, args.max_part, targets=targets, workers=args.workers
    )
    doc = {"bounds": bounds, "targets": list(targets), **summary.to_dict(), "ok": summary.ok}
    if args.format == "json":
        print(json.dumps(_stringify(doc), indent=2))
    elif args.format == "tsv":
        rows = [{"family": k, "count": v} for k, v in summary.counts.items()]
        rows.append({"family": "violations", "count": len(summary.violations)})
        print(_tsv(rows, ["family", "count"]).rstrip("\n"))
    else:
        lines = [f"{k}: {v} checked" for k, v in summary.counts.items()]
        lines.append(f"total: {doc['total']}, violations: {len(summary.violations)}")
        for v in summary.violations:
            lines.append(f"  {_fmt_gamma(v['gamma'])}: {'; '.join(v['problems'])}")
        print("\n".join(lines))
    return EXIT_OK if summary.ok else EXIT_INTERNAL


def _check_range(**values: int) -> None:
    for name, (value, low) in values.items():
        if value < low:
            raise UsageError(f"--{name.replace('_', '-')} must be at least {low}, got {value}")


def _table_hirzebruch(args: argparse.Namespace) -> list[dict[str, Any]]:
    _check_range(a_max=(args.a_max, 0), max_m=(args.max_m, 0), max_part=(args.max_part, 1))
    rows = []
    for a in range(args.a_max + 1):
        for g in enumerate_xrsa(1, 1, a, args.max_m, args.max_part):
            derived = validate_xrsa(g)
            if args.mode == "certified" and derived.degenerate:
                continue
            report = logtev_xrsa(g)
            row = {"a": a, "b": g.b, "c": g.c, "mu": [list(p) for p in g.mu],
                   "n": derived.n, "status": report.status.value, "logtev": report.logtev}
            if args.symmetrized:
                row["symmetrized"] = _symmetrize(report.logtev, symmetry_factor(g.mu))
            rows.append(row)
    return rows


def _table_bl_linear(args: argparse.Namespace) -> list[dict[str, Any]]:
    _check_range(r_max=(args.r_max, 1), s_max=(args.s_max, 1), d_max=(args.d_max, 0))
    rows = []
    for r in range(1, args.r_max + 1):
        for s in range(1, args.s_max + 1):
            for d in range(args.d_max + 1):
                for k in range(d + 1):
                    try:
                        g = bl_linear_gamma(r, s, d, k)
                    except ValidationError:
                        continue  # r + s does not divide m
                    derived = validate_xrsa(g)
                    n = derived.n
                    if n < 3 and args.mode == "certified":
                        continue
                    report = logtev_xrsa(g)
                    row = {"r": r, "s": s, "d": d, "k": k, "n": n, "status": report.status.value,
                           "logtev": report.logtev,
                           "tev": tev_blowup_linear(r, s, n, d, k) if n >= 3 else None}
                    if args.symmetrized:
                        row["symmetrized"] = _symmetrize(report.logtev, symmetry_factor(g.mu))
                    rows.append(row)
    return rows


def _table_projective(args: argparse.Namespace) -> list[dict[str, Any]]:
    # X_{r,s,1} with b = c = d and no contact with D_0: degree-d curves in P^{r+s}
    _check_range(r_max=(args.r_max, 1), s_max=(args.s_max, 1), d_max=(args.d_max, 1))
    rows = []
    for r in range(1, args.r_max + 1):
        for s in range(1, args.s_max + 1):
            for d in range(1, args.d_max + 1):
                mu = [()] + [(1,) * d] * (r + s + 1)
                g = GammaXrsa(r=r, s=s, a=1, b=d, c=d, mu=mu)
                try:
                    derived = validate_xrsa(g)
                except ValidationError:
                    continue
                if derived.degenerate and args.mode == "certified":
                    continue
                report = logtev_xrsa(g)
                expected = logtev_projective(mu[1:])
                if report.logtev is not None and report.logtev != expected:
                    raise CrossCheckError(f"P^{r + s}, d={d}: {report.logtev} != {expected}")
                row = {"dim": r + s, "r": r, "s": s, "d": d, "n": derived.n,
                       "status": report.status.value, "logtev": report.logtev}
                if args.symmetrized:
                    row["symmetrized"] = _symmetrize(report.logtev, symmetry_factor(g.mu))
                rows.append(row)
    return rows


_TABLES: dict[str, Callable[[argparse.Namespace], list[dict[str, Any]]]] = {
    "hirzebruch": _table_hirzebruch,
    "bl-linear": _table_bl_linear,
    "projective": _table_projective,
}


def cmd_table(args: argparse.Namespace) -> int:
    rows = _TABLES[args.family](args)
    if args.format == "json":
        print(json.dumps(_stringify({"family": args.family, "rows": rows}), indent=2))
    else:
        columns = list(rows[0]) if rows else ["logtev"]
        print(_tsv(rows, columns).rstrip("\n"))
    return EXIT_OK


# parser


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=["json", "tsv", "human"], default=default("json"))
    parser.add_argument(
        "--mode",
        choices=["certified", "diagnostic"],
        default=default("certified"),
        help="certified rejects n < 3; diagnostic reports it as DEGENERATE",
    )
    parser.add_argument(
        "--symmetrized",
        action="store_true",
        default=default(False),
        help="also divide by the factorials of repeated contact orders",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logtev", description="Logarithmic Tevelev degrees of X_{r,s,a} and Bl P^2."
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xrsa", help="report for tangency data on X_{r,s,a}")
    p.add_argument("file", help="JSON document or list of documents ('-' for stdin)")
    p.set_defaults(handler=cmd_xrsa)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("blp2", help="report for tangency data on the blow-up of P^2")
    p.add_argument("file", help="JSON document or list of documents ('-' for stdin)")
    p.add_argument("--excess", action="store_true", help="apply the excess-locus correction")
    p.set_defaults(handler=cmd_blp2)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("sweep", help="enumerate all tangency data in bounds and check invariants")
    p.add_argument("--r", type=int, default=2, help="largest r for X_{r,s,a}")
    p.add_argument("--s", type=int, default=2, help="largest s for X_{r,s,a}")
    p.add_argument("--a", type=int, default=2, help="largest a for X_{r,s,a}")
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max-part", type=int, default=3)
    p.add_argument("--target", choices=["xrsa", "blp2", "both"], default="both")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(handler=cmd_sweep)
    _add_global_flags(p, suppress=True)

    p = sub.add_parser("table", help="tables of the specialized formulas")
    p.add_argument("--family", choices=sorted(_TABLES), required=True)
    p.add_argument("--r-max", type=int, default=2)
    p.add_argument("--s-max", type=int, default=2)
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--a-max", type=int, default=2)
    p.add_argument("--max-m", type=int, default=6)
    p.add_argument("--max-part", type=int, default=2)
    p.set_defaults(handler=cmd_table)
    _add_global_flags(p, suppress=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.handler(args)
    except (ValidationError, ConfigurationError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CrossCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # the exit-code contract is total
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
