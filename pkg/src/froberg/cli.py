"""Command-line front end: one JSON report per invocation.

Exit codes: 0 when the outcome is verified/holds, 1 for
fails/inconclusive, 2 for usage or runtime errors.  Heavy imports happen
inside the handlers so FROBERG_THREADS can cap BLAS pools before numpy
loads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import FrobergError

_EXIT_OK = {"verified", "holds"}
_EXIT_NEGATIVE = {"fails", "inconclusive"}


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _parse_degree_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(tok) for tok in text.split(",")]


def _cmd_series(args) -> tuple[str, dict]:
    from .ring import conjectured_series

    coeffs = conjectured_series(args.n, _parse_degree_list(args.degrees), args.max_deg)
    return "holds", {"coefficients": coeffs}


def _cmd_g_analyze(args) -> tuple[str, dict]:
    from .gpoly import build_g, certify_bound, equiv_triple

    g = build_g(args.d, args.dprime)
    cert = certify_bound(args.d, args.dprime, args.n)
    triple = equiv_triple(args.n, args.d, args.dprime)
    details = {
        "coeffs": [_frac_str(c) for c in g.poly.coeffs],
        "sign_changes": cert.sign_changes,
        "g_at_nminus1": _frac_str(cert.g_at_nminus1),
        "method": cert.method,
        "holds": cert.holds,
        "equiv": {
            "g_nonneg": triple.g_nonneg,
            "dim_sq": triple.dim_sq,
            "r_cond": triple.r_cond,
        },
    }
    return ("holds" if cert.holds else "fails"), details


def _cmd_scan(args) -> tuple[str, dict]:
    from .gpoly import scan_dprime

    if args.dprime is None and args.dprime_max is None:
        raise ValueError("provide --dprime or --dprime-max")
    values = (
        [args.dprime]
        if args.dprime is not None
        else list(range(1, args.dprime_max + 1))
    )
    rows = []
    for dp in values:
        res = scan_dprime(dp, mode=args.mode, d_max=args.d_max)
        rows.append(
            {
                "dprime": res.dprime,
                "mode": res.mode,
                "max_d_checked": res.max_d_checked,
                "all_at_most_one": res.all_at_most_one,
                "failures": list(res.failures),
                "terminated": res.terminated,
            }
        )
    ok = all(row["all_at_most_one"] for row in rows)
    return ("holds" if ok else "fails"), {"scans": rows}


def _cmd_audit(args) -> tuple[str, dict]:
    from .bounds import audit_chain

    res = audit_chain(args.n, args.d, args.dprime)
    rows = [
        {
            "t": row.t,
            "satisfied": row.satisfied,
            "lhs_lo": _frac_str(row.lhs.lo),
            "lhs_hi": _frac_str(row.lhs.hi),
        }
        for row in res.rows
    ]
    details = {
        "concludes": res.concludes,
        "premise_ok": res.premise_ok,
        "r": res.params.r,
        "s": res.params.s,
        "dim_dprime": res.params.dim_dprime,
        "dim_ddprime": res.params.dim_ddprime,
        "rows": rows,
    }
    return ("holds" if res.concludes else "fails"), details


def _verify_details(report) -> dict:
    return {
        "prime": report.prime,
        "trials": report.trials,
        "rank": report.rank,
        "rows": report.matrix_dims[0],
        "cols": report.matrix_dims[1],
        "r": report.params.r,
        "s": report.params.s,
        "failed_trials": report.failed_trials,
    }


def _cmd_verify(args) -> tuple[str, dict]:
    from .verify import check_gcase

    report = check_gcase(args.n, args.d, args.dprime, args.p, args.seed, args.trials)
    return report.outcome, _verify_details(report)


def _cmd_verify_split(args) -> tuple[str, dict]:
    from .verify import check_split, split_plan

    plan = split_plan(args.n, args.d, args.dprime, args.nprime, args.p)
    report = check_split(plan, args.seed, args.trials)
    details = _verify_details(report)
    details.update(
        {
            "nprime": plan.nprime,
            "l": plan.l,
            "quotient_dim": plan.quotient_dim,
            "stage1_rank": report.stage1_rank,
            "stage1_rows": report.stage1_dims[0],
        }
    )
    return report.outcome, details


def _cmd_table1(args) -> tuple[str, dict]:
    from .verify import TABLE1_L, TABLE1_PARAMS, reproduce_table1

    report = reproduce_table1(args.row, args.seed, args.trials)
    details = _verify_details(report)
    nprime, p = TABLE1_PARAMS[args.row]
    details.update(
        {
            "row_n": args.row,
            "nprime": nprime,
            "l": report.plan.l,
            "expected_l": TABLE1_L[args.row],
            "quotient_dim": report.plan.quotient_dim,
            "stage1_rank": report.stage1_rank,
            "stage1_rows": report.stage1_dims[0],
        }
    )
    return report.outcome, details


def _cmd_selftest(args) -> tuple[str, dict]:
    from .gflinalg import PrimeField
    from .gpoly import build_g, coeff_via_symmetric, equiv_triple
    from .exactpoly import RatPoly
    from .ring import conjectured_series
    from .verify import TABLE1_L, TABLE1_PARAMS, check_gcase, split_plan

    checks: list[tuple[str, bool]] = []

    for d, dp, x, expect in ((3, 2, 21, 7), (4, 2, 5, 1), (5, 2, 2, 0)):
        g = build_g(d, dp)
        direct = g.poly.eval(x)
        rebuilt = RatPoly([coeff_via_symmetric(d, dp, j) for j in range(d + 1)])
        checks.append(
            (
                f"g_{d}_{dp}({x}) = {expect} (two routes)",
                direct == expect and rebuilt.eval(x) == expect,
            )
        )

    for n, expect_l in TABLE1_L.items():
        nprime, p = TABLE1_PARAMS[n]
        plan = split_plan(n, 3, 2, nprime, p)
        checks.append((f"split plan n={n} gives l={expect_l}", plan.l == expect_l))

    checks.append(
        (
            "series (2, [2,2,2]) truncates to [1, 2, 0, 0, 0]",
            conjectured_series(2, [2, 2, 2], 4) == [1, 2, 0, 0, 0],
        )
    )
    checks.append(
        ("equivalence at the boundary n=3, d=5", all(equiv_triple(3, 5, 2))),
    )
    checks.append(
        ("equivalence fails at n=3, d=4", not any(equiv_triple(3, 4, 2))),
    )
    PrimeField(5)
    report = check_gcase(2, 3, 2, 5, seed=1, trials=3)
    checks.append(("gcase n=2, d=3, d'=2 over F_5", report.outcome == "verified"))

    ok = all(flag for _, flag in checks)
    details = {"checks": [{"name": name, "ok": flag} for name, flag in checks]}
    return ("holds" if ok else "fails"), details


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="froberg",
        description="Degree-wise verification for Hilbert series of generic forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("series", help="truncated Hilbert series for generic forms")
    sp.add_argument("-n", type=int, required=True, help="variable count")
    sp.add_argument(
        "-d", "--degrees", required=True, help="comma-separated generator degrees"
    )
    sp.add_argument("--max-deg", type=int, required=True)
    sp.set_defaults(handler=_cmd_series)

    sp = sub.add_parser("g-analyze", help="coefficients and bound certificate")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--dprime", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(handler=_cmd_g_analyze)

    sp = sub.add_parser("scan", help="sign-change scan over generator degrees")
    sp.add_argument("--dprime", type=int)
    sp.add_argument("--dprime-max", type=int)
    sp.add_argument("--mode", choices=("exact", "interval-fast"), default="exact")
    sp.add_argument("--d-max", type=int, default=None)
    sp.add_argument("--csv", action="store_true", help="emit flat CSV rows")
    sp.set_defaults(handler=_cmd_scan)

    sp = sub.add_parser("audit", help="dimension-count audit rows")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--dprime", type=int, required=True)
    sp.set_defaults(handler=_cmd_audit)

    sp = sub.add_parser("verify", help="randomized full-rank check")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--dprime", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=3)
    sp.set_defaults(handler=_cmd_verify)

    sp = sub.add_parser("verify-split", help="two-stage subring-split check")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--dprime", type=int, required=True)
    sp.add_argument("--nprime", type=int, required=True)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=3)
    sp.set_defaults(handler=_cmd_verify_split)

    sp = sub.add_parser("table1", help="tabulated split runs for d=3, d'=2")
    sp.add_argument("--row", type=int, required=True, help="variable count n (16..21)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=3)
    sp.set_defaults(handler=_cmd_table1)

    sp = sub.add_parser("selftest", help="fast known-value checks")
    sp.set_defaults(handler=_cmd_selftest)

    return parser


def _scan_csv(details: dict) -> str:
    lines = ["dprime,mode,max_d_checked,all_at_most_one,failures,terminated"]
    for row in details["scans"]:
        failures = "|".join(str(d) for d in row["failures"])
        lines.append(
            f"{row['dprime']},{row['mode']},{row['max_d_checked']},"
            f"{row['all_at_most_one']},{failures},{row['terminated']}"
        )
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    """Execute one verb, emit its report on stdout, return (report, exit code)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("handler", "command", "csv") and v is not None
    }
    seed = getattr(args, "seed", 0)
    started = time.monotonic()
    try:
        outcome, details = args.handler(args)
    except (FrobergError, ValueError, KeyError) as exc:
        outcome, details = "error", {"error": str(exc)}
    elapsed_ms = int((time.monotonic() - started) * 1000)
    report = {
        "command": args.command,
        "params": params,
        "seed": seed,
        "outcome": outcome,
        "details": details,
        "elapsed_ms": elapsed_ms,
        "version": __version__,
    }
    if getattr(args, "csv", False) and outcome != "error":
        sys.stdout.write(_scan_csv(details) + "\n")
    else:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if outcome in _EXIT_OK:
        code = 0
    elif outcome in _EXIT_NEGATIVE:
        code = 1
    else:
        code = 2
        sys.stderr.write(f"error: {details.get('error', outcome)}\n")
    return report, code


def main(argv: list[str] | None = None) -> int:
    limit = os.environ.get("FROBERG_THREADS")
    if limit and limit.isdigit() and int(limit) > 0:
        for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, limit)
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
