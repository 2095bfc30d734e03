"""Command-line interface.

Output is one record per line of space-separated ``key=value`` pairs.  Exit
status: 0 when everything agrees, 1 when a mathematical disagreement was
found, 2 for invalid invocations or inputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import CDKernelError, CoincidentPoints
from .kernels import ROUTES, SqrtChoice, ZetaChoice, km_eval, km_pfaffian, schur_expansion
from .measure import parse_measure, parse_rational
from .ortho import build_system
from .poly import format_partition
from .suites import SUITES, run_suites

PFAFFIAN_ROUTES = ("pfaffian_sqrt", "pfaffian_zeta")
ALL_ROUTES = ROUTES + PFAFFIAN_ROUTES

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational_list(text: str) -> List[Fraction]:
    if text.strip() == "":
        return []
    return [parse_rational(part) for part in text.split(",")]


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    p, q = value.numerator, value.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def sqrt_choice_for(z: Sequence[Fraction]) -> Optional[SqrtChoice]:
    roots = [rational_sqrt(v) for v in z]
    if any(r is None for r in roots):
        return None
    return SqrtChoice(tuple(roots))


def zeta_choice_for(z: Sequence[Fraction]) -> Optional[ZetaChoice]:
    """zeta with zeta + 1/zeta = z + 2, taking the larger root, when rational."""
    zeta = []
    for v in z:
        disc = rational_sqrt(v * (v + 4))
        if disc is None:
            return None
        zeta.append((v + 2 + disc) / 2)
    return ZetaChoice(tuple(zeta))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdkernel",
        description="Exact multivariable Christoffel-Darboux kernels of discrete measures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ortho", help="monic orthogonal polynomials and their norms")
    p.add_argument("--measure", required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("kernel", help="evaluate K_m(x, y) through every route")
    p.add_argument("--measure", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", required=True, help="comma-separated rationals")
    p.add_argument("--y", required=True, help="comma-separated rationals")
    p.add_argument("--routes", default=",".join(ALL_ROUTES),
                   help=f"comma-separated subset of {','.join(ALL_ROUTES)}")

    p = sub.add_parser("schur", help="Schur expansion coefficients of K_m")
    p.add_argument("--measure", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("verify", help="seeded randomized identity suites")
    p.add_argument("--suite", default="all", help=f"'all' or one of {','.join(SUITES)}")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-m", type=int, default=2)
    return parser


def cmd_ortho(args, out) -> int:
    system = build_system(parse_measure(args.measure), args.n)
    for k in range(system.n + 1):
        fields = [f"k={k}"]
        if k < system.n:
            fields.append(f"norm={system.norms[k]}")
        fields.append("coeffs=" + ",".join(str(c) for c in system.coeffs[k]))
        out.write(" ".join(fields) + "\n")
    return EXIT_OK


def kernel_report(system, m: int, x, y, routes: Sequence[str]) -> List[str]:
    """Report lines for each requested route followed by an agreement line."""
    lines = []
    values = []
    z = tuple(x) + tuple(y)
    for route in routes:
        try:
            if route in ROUTES:
                value = km_eval(system, x, y, route)
            else:
                choice = sqrt_choice_for(z) if route == "pfaffian_sqrt" else zeta_choice_for(z)
                if choice is None:
                    lines.append(f"route={route} skipped=irrational")
                    continue
                value = km_pfaffian(system, choice)
        except CoincidentPoints:
            lines.append(f"route={route} skipped=coincident")
            continue
        values.append(value)
        lines.append(f"route={route} value={value}")
    agree = bool(values) and len(set(values)) == 1
    lines.append(f"agreement={'true' if agree else 'false'}")
    return lines


def cmd_kernel(args, out) -> int:
    routes = [r.strip() for r in args.routes.split(",") if r.strip()]
    unknown = [r for r in routes if r not in ALL_ROUTES]
    if unknown or not routes:
        raise UsageError(f"unknown routes {unknown}; choose from {','.join(ALL_ROUTES)}")
    x, y = _rational_list(args.x), _rational_list(args.y)
    if len(x) != args.m or len(y) != args.m:
        raise UsageError(f"--x and --y need exactly m={args.m} coordinates")
    if not 0 <= args.m <= args.n:
        raise UsageError(f"need 0 <= m <= n; got m={args.m}, n={args.n}")
    system = build_system(parse_measure(args.measure), args.n)
    lines = kernel_report(system, args.m, x, y, routes)
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if lines[-1] == "agreement=true" else EXIT_DISAGREE


def cmd_schur(args, out) -> int:
    if not 0 <= args.m <= args.n:
        raise UsageError(f"need 0 <= m <= n; got m={args.m}, n={args.n}")
    system = build_system(parse_measure(args.measure), args.n)
    expansion = schur_expansion(system, args.m)
    for (lam, mu), c in expansion.coefficients.items():
        out.write(f"lambda={format_partition(lam)} mu={format_partition(mu)} coeff={c}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.suite == "all":
        names = list(SUITES)
    elif args.suite in SUITES:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose 'all' or one of {','.join(SUITES)}")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    reports = run_suites(names, args.trials, args.seed, args.max_n, args.max_m)
    for report in reports:
        out.write(report.line() + "\n")
        extra = report.counterexample_line()
        if extra:
            out.write(extra + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_DISAGREE


COMMANDS = {"ortho": cmd_ortho, "kernel": cmd_kernel, "schur": cmd_schur, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, sys.stdout)
    except (UsageError, CDKernelError) as exc:
        print(f"cdkernel {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
