"""Command-line front end emitting machine-readable records and CSV tables.

Commands: ``radius`` (solve one family), ``table`` (named reproduction
tables), ``verify`` / ``sharpness`` (run the hold-below and sharpness-above
suites), ``expand`` (coefficient dumps), ``limits`` (convergence sweeps).

Every command writes a single structured record (JSON, LF line endings) with
``schema_version``, an echo of the arguments, and a family-specific payload;
tables stream CSV with ``--format csv``.  Floats are serialized with 17
significant digits so binary64 values round-trip exactly.  Exit status: 0 on
success, 1 when a verification suite fails or a solver finds no root, 2 on
usage errors.  ``POLYBOHR_THREADS`` caps suite parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .families import ExtremalSpec, extremal_series, sample_bounded_function
from .radii import (
    AN,
    AreaT,
    Classical,
    ConvexMNT,
    ConvexT,
    EulerLambda,
    NoSignChangeError,
    RadiusFamily,
    RmN,
    RmnN,
    RogosinskiUni,
    limit_sweep_m,
    limit_sweep_N,
    solve,
)
from .series import CapacityError, DivergentTailError
from .verify import SuiteConfig, SuiteReport, check_holds_below, check_sharpness_above

SCHEMA_VERSION = 1

TABLE_NAMES = ("thmC-limits", "thm2.2-sweepN", "thm2.2-sweepM",
               "thmF-piecewise", "thm2.3-grid")


def _fmt_float(x: float) -> str:
    return f"{x:.17g}"


def _to_json(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{json.dumps(str(k))}: {_to_json(v, indent + 1)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{_to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _emit_record(command: str, args_echo: dict, payload: dict) -> None:
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "args": args_echo,
        "payload": payload,
    }
    sys.stdout.write(_to_json(record) + "\n")


def _csv_cell(v: Any) -> str:
    if isinstance(v, float):
        s = _fmt_float(v)
    else:
        s = str(v)
    if any(c in s for c in ",\"\n"):
        s = '"' + s.replace('"', '""') + '"'
    return s


def _emit_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    out = [",".join(columns)]
    for row in rows:
        out.append(",".join(_csv_cell(v) for v in row))
    sys.stdout.write("\n".join(out) + "\n")


FAMILY_CHOICES = ("classical", "rogosinski", "rmn", "rmnn", "an", "convext",
                  "convexmnt", "euler", "area")


def _build_family(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RadiusFamily:
    name = args.family.lower()
    try:
        if name == "classical":
            return Classical(n=args.n)
        if name == "rogosinski":
            _need(parser, args, "N")
            return RogosinskiUni(N=args.N, p=args.p)
        if name == "rmn":
            _need(parser, args, "m", "N")
            return RmN(m=args.m, N=args.N)
        if name == "rmnn":
            _need(parser, args, "m", "N")
            return RmnN(m=args.m, n=args.n, N=args.N)
        if name == "an":
            _need(parser, args, "N")
            return AN(n=args.n, N=args.N)
        if name == "convext":
            _need(parser, args, "t")
            return ConvexT(t=args.t)
        if name == "convexmnt":
            _need(parser, args, "m", "t")
            return ConvexMNT(m=args.m, n=args.n, t=args.t)
        if name == "euler":
            _need(parser, args, "lam")
            return EulerLambda(n=args.n, lam=args.lam)
        if name == "area":
            _need(parser, args, "t")
            return AreaT(n=args.n, t=args.t)
    except ValueError as exc:
        parser.error(str(exc))
    parser.error(f"unknown family {args.family!r}")
    raise AssertionError  # parser.error never returns


def _need(parser: argparse.ArgumentParser, args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            flag = "--lambda" if name == "lam" else f"--{name}"
            parser.error(f"family {args.family!r} requires {flag}")


def _family_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--family", required=True,
                     type=lambda s: s.lower(),
                     choices=FAMILY_CHOICES,
                     help="radius family (case-insensitive)")
    sub.add_argument("--n", type=int, default=1, help="polydisc dimension")
    sub.add_argument("--m", type=int, default=None, help="composition order")
    sub.add_argument("--N", type=int, default=None, help="tail start degree")
    sub.add_argument("--p", type=int, default=1, choices=(1, 2),
                     help="modulus power for the rogosinski family")
    sub.add_argument("--t", type=float, default=None, help="convex weight")
    sub.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="tail weight for the euler family")


def _echo_family_args(args: argparse.Namespace) -> dict:
    echo: dict[str, Any] = {"family": args.family, "n": args.n}
    for key in ("m", "N", "t", "lam"):
        val = getattr(args, key)
        if val is not None:
            echo["lambda" if key == "lam" else key] = val
    if args.family == "rogosinski":
        echo["p"] = args.p
    return echo


def _result_payload(res) -> dict:
    return {
        "family": repr(res.family),
        "radius_r": res.radius_r,
        "radius_x": res.radius_x,
        "residual": res.residual,
        "bracket_lo": res.bracket[0],
        "bracket_hi": res.bracket[1],
        "multiplicity_note": res.multiplicity_note,
    }


def cmd_radius(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    family = _build_family(parser, args)
    res = solve(family)
    _emit_record("radius", _echo_family_args(args), _result_payload(res))
    return 0


def _parse_int_list(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok.strip()]


def _table_rows(parser: argparse.ArgumentParser,
                args: argparse.Namespace) -> tuple[list[str], list[list[Any]]]:
    name = args.name
    if name == "thmC-limits":
        columns = ["N", "limit_x", "residual"]
        rows = []
        for N in range(1, args.N_max + 1):
            res = solve(AN(n=1, N=N))
            rows.append([N, res.radius_x, res.residual])
        return columns, rows
    if name == "thm2.2-sweepN":
        columns = ["N", "radius_r", "radius_x", "residual"]
        sweep = limit_sweep_N(args.m or 1, args.n, list(range(1, args.N_max + 1)))
        return columns, [[res.family.N, res.radius_r, res.radius_x, res.residual]
                         for res in sweep]
    if name == "thm2.2-sweepM":
        columns = ["m", "radius_r", "radius_x", "limit_x", "gap_x"]
        target = solve(AN(n=args.n, N=args.N or 1)).radius_x
        m_list = _parse_int_list(args.m_list)
        sweep = limit_sweep_m(args.n, args.N or 1, m_list)
        return columns, [[res.family.m, res.radius_r, res.radius_x, target,
                          target - res.radius_x] for res in sweep]
    if name == "thmF-piecewise":
        columns = ["t", "radius_r", "radius_x", "branch"]
        rows = []
        steps = args.t_steps
        for i in range(1, steps + 1):
            t = i / steps
            res = solve(AreaT(n=args.n, t=t))
            branch = "cubic" if t < 9.0 / 17.0 else "clamped"
            rows.append([t, res.radius_r, res.radius_x, branch])
        return columns, rows
    if name == "thm2.3-grid":
        columns = ["t", "radius_r", "radius_x", "note"]
        rows = []
        steps = args.t_steps
        for i in range(steps + 1):
            t = i / steps
            try:
                res = solve(ConvexMNT(m=args.m or 1, n=args.n, t=t))
                rows.append([t, res.radius_r, res.radius_x, res.multiplicity_note])
            except NoSignChangeError as exc:
                rows.append([t, "", "", f"no root: {exc}"])
        return columns, rows
    parser.error(f"unknown table {name!r}")
    raise AssertionError


def cmd_table(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    columns, rows = _table_rows(parser, args)
    if args.format == "csv":
        _emit_csv(columns, rows)
    else:
        echo: dict[str, Any] = {"name": args.name, "n": args.n}
        for key in ("m", "N"):
            if getattr(args, key) is not None:
                echo[key] = getattr(args, key)
        echo.update({"N_max": args.N_max, "m_list": args.m_list,
                     "t_steps": args.t_steps})
        _emit_record("table", echo,
                     {"columns": list(columns), "rows": [list(r) for r in rows]})
    return 0


def _suite_payload(report: SuiteReport) -> dict:
    return {
        "suite": report.suite,
        "family": report.family_label,
        "radius_r": report.radius_r,
        "eval_radius": report.eval_radius,
        "total_cases": report.total,
        "counts": dict(report.counts),
        "worst_slack": report.worst_slack,
        "passed": report.passed,
        "witness_a": report.witness_a,
        "notes": report.notes,
        "failures": [
            {"index": c.index, "seed": c.seed, "verdict": c.verdict,
             "value": c.value, "tail_bound": c.tail_bound, "detail": c.detail}
            for c in report.failures
        ],
    }


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace,
               force_sharpness: bool = False) -> int:
    family = _build_family(parser, args)
    if args.family == "an":
        parser.error("the large-m limit family has no functional to verify; "
                     "use radius or limits")
    config = SuiteConfig(
        family=family,
        samples=args.samples,
        margin_below=args.margin_below,
        margin_above=args.margin_above,
        seed=args.seed,
        factors_per_coordinate=args.factors,
        k_cap=args.k_cap,
    )
    sharpness = force_sharpness or getattr(args, "sharpness", False)
    reports = []
    if sharpness:
        reports.append(check_sharpness_above(config))
    else:
        reports.append(check_holds_below(config))
        reports.append(check_sharpness_above(config))
    echo = _echo_family_args(args)
    echo.update({"samples": args.samples, "seed": args.seed,
                 "factors": args.factors, "k_cap": args.k_cap,
                 "margin_below": args.margin_below,
                 "margin_above": args.margin_above,
                 "sharpness_only": sharpness})
    payload = {"suites": [_suite_payload(rep) for rep in reports],
               "passed": all(rep.passed for rep in reports)}
    _emit_record("verify", echo, payload)
    return 0 if payload["passed"] else 1


def cmd_expand(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.source == "extremal":
        series = extremal_series(ExtremalSpec(a=args.a, n=args.n), args.K)
        echo: dict[str, Any] = {"source": "extremal", "a": args.a,
                                "n": args.n, "K": args.K}
    else:
        series = sample_bounded_function(args.seed, args.n, args.factors, args.K)
        echo = {"source": "blaschke-sample", "seed": args.seed, "n": args.n,
                "factors": args.factors, "K": args.K}
    by_degree = series.degrees()
    rows = []
    for k in sorted(by_degree):
        for alpha in by_degree[k]:
            c = series.coeffs[alpha]
            rows.append([" ".join(str(a) for a in alpha), c.real, c.imag])
    payload: dict[str, Any] = {
        "dim": series.dim,
        "max_degree": series.max_degree,
        "count": len(rows),
        "coefficients": rows,
    }
    if series.tail is not None:
        payload["tail"] = {"C": series.tail.C, "q": series.tail.q,
                           "valid_from_degree": series.tail.valid_from_degree,
                           "weight": series.tail.weight}
    if args.format == "csv":
        _emit_csv(["alpha", "re", "im"], rows)
    else:
        _emit_record("expand", echo, payload)
    return 0


def cmd_limits(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if (args.N_list is None) == (args.m_list is None):
        parser.error("limits needs exactly one of --N-list or --m-list")
    if args.N_list is not None:
        values = _parse_int_list(args.N_list)
        sweep = limit_sweep_N(args.m, args.n, values)
        axis = "N"
        target = None
    else:
        values = _parse_int_list(args.m_list)
        sweep = limit_sweep_m(args.n, args.N, values)
        axis = "m"
        target = solve(AN(n=args.n, N=args.N)).radius_x
    rows = [{axis: v, "radius_r": res.radius_r, "radius_x": res.radius_x,
             "residual": res.residual}
            for v, res in zip(values, sweep)]
    payload: dict[str, Any] = {
        "axis": axis,
        "rows": rows,
        "strictly_increasing": all(
            sweep[i].radius_x < sweep[i + 1].radius_x for i in range(len(sweep) - 1)),
        "last_radius_x": sweep[-1].radius_x if sweep else None,
    }
    if target is not None:
        payload["limit_x"] = target
        payload["final_gap_x"] = target - sweep[-1].radius_x if sweep else None
    echo = {"m": args.m, "n": args.n, "N": args.N,
            "N_list": args.N_list, "m_list": args.m_list}
    _emit_record("limits", echo, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polybohr",
        description="Sharp Bohr-type radii on the unit polydisc: solvers, "
                    "reproduction tables, and verification suites.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_radius = subs.add_parser("radius", help="solve one radius family")
    _family_flags(p_radius)

    p_table = subs.add_parser("table", help="emit a named reproduction table")
    p_table.add_argument("--name", required=True, choices=TABLE_NAMES,
                         help="which table to reproduce")
    p_table.add_argument("--n", type=int, default=1)
    p_table.add_argument("--m", type=int, default=None)
    p_table.add_argument("--N", type=int, default=None)
    p_table.add_argument("--N-max", dest="N_max", type=int, default=10)
    p_table.add_argument("--m-list", dest="m_list", default="1,2,5,20,100")
    p_table.add_argument("--t-steps", dest="t_steps", type=int, default=20)
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")

    for cmd, sharp in (("verify", False), ("sharpness", True)):
        p = subs.add_parser(cmd, help="run verification suites"
                            + (" (sharpness only)" if sharp else ""))
        _family_flags(p)
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--factors", type=int, default=3)
        p.add_argument("--k-cap", dest="k_cap", type=int, default=512)
        p.add_argument("--margin-below", dest="margin_below", type=float, default=0.99)
        p.add_argument("--margin-above", dest="margin_above", type=float, default=0.02)
        if not sharp:
            p.add_argument("--sharpness", action="store_true",
                           help="run only the sharpness-above suite")
        p.set_defaults(force_sharpness=sharp)

    p_expand = subs.add_parser("expand", help="dump series coefficients")
    p_expand.add_argument("--family", dest="source", required=True,
                          choices=("extremal", "blaschke-sample"))
    p_expand.add_argument("--a", type=float, default=0.5)
    p_expand.add_argument("--n", type=int, default=1)
    p_expand.add_argument("--K", type=int, default=8)
    p_expand.add_argument("--seed", type=int, default=0)
    p_expand.add_argument("--factors", type=int, default=2)
    p_expand.add_argument("--format", choices=("csv", "json"), default="json")

    p_limits = subs.add_parser("limits", help="convergence sweeps in N or m")
    p_limits.add_argument("--m", type=int, default=1)
    p_limits.add_argument("--n", type=int, default=1)
    p_limits.add_argument("--N", type=int, default=1)
    p_limits.add_argument("--N-list", dest="N_list", default=None)
    p_limits.add_argument("--m-list", dest="m_list", default=None)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "radius":
            return cmd_radius(parser, args)
        if args.command == "table":
            return cmd_table(parser, args)
        if args.command in ("verify", "sharpness"):
            return cmd_verify(parser, args, force_sharpness=args.force_sharpness)
        if args.command == "expand":
            return cmd_expand(parser, args)
        if args.command == "limits":
            return cmd_limits(parser, args)
    except (NoSignChangeError, CapacityError, DivergentTailError) as exc:
        _emit_record("error", {"command": args.command},
                     {"error": type(exc).__name__, "message": str(exc)})
        return 1
    except ValueError as exc:
        # domain validation (parameter ranges) surfaces as a usage error
        parser.error(str(exc))
    parser.error(f"unknown command {args.command!r}")
    raise AssertionError


if __name__ == "__main__":
    sys.exit(main())
