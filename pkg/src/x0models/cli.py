"""Command line interface: ``x0models <subcommand> ...``.

Exit codes: 0 success, 1 failed verification, 2 invalid flags,
3 unsupported level, 4 genus too small for the finite part.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict

from . import arith
from .checks import verify_level
from .divisors import INF, KERNEL, ZERO, closed_form_vm, solve_vm, verify_closed_form
from .errors import GenusTooSmall, InvalidInput, UnsupportedLevel
from .fiber import EDIXHOVEN, MINIMAL, build_edixhoven, dual_graph_dot
from .minimal import fiber_for_level
from .selfint import finite_part
from .serialize import divisor_to_dict, dumps, fiber_to_csv, fiber_to_dict, frac_str

OUTPUT_DIR_ENV = "X0MODELS_OUTPUT_DIR"

EXIT_VERIFY_FAILED = 1
EXIT_BAD_FLAGS = 2
EXIT_UNSUPPORTED = 3
EXIT_GENUS = 4

FORMATS = {
    "invariants": ("text", "json"),
    "fiber": ("text", "json", "csv", "dot"),
    "divisors": ("text", "json"),
    "finite-part": ("text", "json"),
    "verify": ("text", "json"),
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    # -o is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=argparse.SUPPRESS,
                        help=f"write to this file (relative paths resolve "
                             f"against ${OUTPUT_DIR_ENV} when set)")
    parser = argparse.ArgumentParser(prog="x0models", description=__doc__.splitlines()[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def level_cmd(name, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.add_argument("N", type=int)
        p.add_argument("--format", default="text")
        return p

    level_cmd("invariants", "d, eps2, eps3, eps_inf and genus of X_0(N)")
    fp = level_cmd("fiber", "special fibre at p: matrix, multiplicities, genera")
    fp.add_argument("--p", type=int, required=True)
    fp.add_argument("--model", choices=(EDIXHOVEN, MINIMAL), default=MINIMAL)
    dp = level_cmd("divisors", "w, u, v at p and their verification")
    dp.add_argument("--p", type=int, required=True)
    level_cmd("finite-part", "exact per-prime coefficients of term (b)")
    level_cmd("verify", "run every consistency check for N")

    sp = sub.add_parser("sweep", help="JSON lines of finite parts over a range of levels",
                        parents=[common])
    sp.add_argument("--min", type=int, required=True, dest="lo")
    sp.add_argument("--max", type=int, required=True, dest="hi")
    sp.add_argument("--filter", choices=("prime", "prime-power", "all"), default="all")
    sp.add_argument("--min-exponent", type=int, default=1, dest="min_exp",
                    help="with --filter prime-power, keep only p^n with n >= this")
    sp.add_argument("--jobs", type=int, default=1)
    return parser


def _validate(args) -> None:
    allowed = FORMATS.get(args.command)
    if allowed is not None and args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available for {args.command}; "
                         f"choose from {', '.join(allowed)}")
    if args.command == "sweep":
        if args.lo < 1 or args.hi < args.lo:
            raise UsageError("need 1 <= --min <= --max")
        if args.min_exp < 1:
            raise UsageError("--min-exponent must be positive")
        if args.min_exp > 1 and args.filter != "prime-power":
            raise UsageError("--min-exponent only applies to --filter prime-power")
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return
    if args.N < 1:
        raise UsageError("N must be positive")
    if args.command == "invariants":
        return
    level = arith.factor_level(args.N)
    if args.N == 1 or not level.coprime_to_6:
        raise UnsupportedLevel("level not coprime to 6" if args.N > 1 else "level must be > 1")
    if level.excluded:
        raise UnsupportedLevel(f"level {args.N} is excluded")
    p = getattr(args, "p", None)
    if p is not None:
        if p in (2, 3):
            raise UnsupportedLevel("no regular model is available at p = 2 or 3")
        if p < 2 or args.N % p or not arith.is_prime(p):
            raise UsageError(f"--p {p} is not a prime divisor of {args.N}")


def _fiber(args):
    if args.model == EDIXHOVEN:
        b = arith.factor_level(args.N).block(args.p)
        return build_edixhoven(b.p, b.n, b.M)
    return fiber_for_level(args.N, args.p)


def cmd_invariants(args, out) -> int:
    inv = arith.invariants(args.N)
    if args.format == "json":
        out.write(dumps({"N": args.N, **asdict(inv)}) + "\n")
    else:
        out.write(f"N={args.N} d={inv.d} eps2={inv.eps2} eps3={inv.eps3} "
                  f"epsinf={inv.epsinf} g={inv.g}\n")
    return 0


def cmd_fiber(args, out) -> int:
    fiber = _fiber(args)
    if args.format == "json":
        out.write(dumps(fiber_to_dict(fiber)) + "\n")
    elif args.format == "csv":
        out.write(fiber_to_csv(fiber))
    elif args.format == "dot":
        out.write(dual_graph_dot(fiber))
    else:
        out.write(f"X_0({fiber.N}) at p={fiber.p}: n={fiber.n} M={fiber.M} "
                  f"model={fiber.model_tag}\n")
        width = max(len(x) for x in fiber.labels)
        for lab, c in zip(fiber.labels, fiber.components):
            out.write(f"  {lab:<{width}}  mult={c.multiplicity} genus={c.genus}\n")
        out.write("matrix:\n")
        for lab, row in zip(fiber.labels, fiber.matrix.rows):
            out.write(f"  {lab:<{width}} " + " ".join(f"{str(x):>5}" for x in row) + "\n")
    return 0


def cmd_divisors(args, out) -> int:
    fiber = fiber_for_level(args.N, args.p)
    g = arith.genus(args.N)
    u = solve_vm(fiber, g, ZERO)
    v = solve_vm(fiber, g, INF)
    cu = closed_form_vm(fiber, ZERO)
    cv = closed_form_vm(fiber, INF)
    w = closed_form_vm(fiber, KERNEL)
    checks = {
        "closed_form_solves_systems": verify_closed_form(fiber, g),
        "u_matches_closed_form": u == cu,
        "v_matches_closed_form": v == cv,
        "w_is_multiplicity_vector": w.coefficients == tuple(fiber.multiplicities),
    }
    if args.format == "json":
        out.write(dumps({
            "N": args.N, "g": g, "model": fiber.model_tag,
            "w": divisor_to_dict(w, fiber.n),
            "u": divisor_to_dict(u, fiber.n),
            "v": divisor_to_dict(v, fiber.n),
            "checks": checks,
        }) + "\n")
    else:
        out.write(f"X_0({args.N}) at p={args.p}, g={g}, model={fiber.model_tag}\n")
        width = max(len(x) for x in fiber.labels)
        out.write(f"  {'':<{width}}  {'w':>8} {'u':>14} {'v':>14}\n")
        for lab, a, b, c in zip(fiber.labels, w.coefficients, u.coefficients, v.coefficients):
            out.write(f"  {lab:<{width}}  {str(a):>8} {str(b):>14} {str(c):>14}\n")
        for name, ok in checks.items():
            out.write(f"  {name}: {ok}\n")
    return 0 if all(checks.values()) else EXIT_VERIFY_FAILED


def _sweep_row(N: int) -> dict:
    res = finite_part(N)
    return {
        "N": res.N,
        "g": res.g,
        "primes": [{"p": c.p, "n": c.n, "M": c.M, "coeff": frac_str(c.coeff)} for c in res.primes],
        "b_float": res.float_value,
        "ratio": res.ratio_to_g_logN,
    }


def cmd_finite_part(args, out) -> int:
    row = _sweep_row(args.N)
    if args.format == "json":
        out.write(dumps(row) + "\n")
    else:
        out.write(f"X_0({row['N']}): g={row['g']}\n")
        for c in row["primes"]:
            out.write(f"  p={c['p']} n={c['n']} M={c['M']}: coeff of log p = {c['coeff']}\n")
        out.write(f"  (b) = {row['b_float']!r}\n  (b)/(g log N) = {row['ratio']!r}\n")
    return 0


def _candidates(lo: int, hi: int, kind: str, min_exp: int):
    if kind == "all":
        return range(max(lo, 2), hi + 1)
    out = []
    for p in arith.primes_up_to(hi):
        q, e = p, 1
        while q <= hi:
            if q >= lo and e >= min_exp:
                out.append(q)
            if kind == "prime":
                break
            q *= p
            e += 1
    return sorted(out)


def sweep_levels(lo: int, hi: int, kind: str = "all", min_exp: int = 1) -> list[int]:
    """Admissible levels in ``[lo, hi]``: coprime to 6, not excluded, g >= 2.

    ``kind`` restricts to primes (``prime``) or prime powers ``p^n`` with
    ``n >= min_exp`` (``prime-power``).
    """
    return [N for N in _candidates(lo, hi, kind, min_exp)
            if N % 2 and N % 3 and N not in arith.EXCLUDED_LEVELS and arith.genus(N) >= 2]


def cmd_sweep(args, out) -> int:
    levels = sweep_levels(args.lo, args.hi, args.filter, args.min_exp)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = pool.map(_sweep_row, levels, chunksize=64)
            for row in rows:
                out.write(dumps(row) + "\n")
    else:
        for N in levels:
            out.write(dumps(_sweep_row(N)) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    checks = verify_level(args.N)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        out.write(dumps({"N": args.N, "passed": ok,
                         "checks": [asdict(c) for c in checks]}) + "\n")
    else:
        for c in checks:
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
            if c.detail and (not c.passed or c.detail.startswith("skipped")):
                line += f"  ({c.detail})"
            out.write(line + "\n")
        out.write(f"{'all checks passed' if ok else 'verification FAILED'} for N={args.N}\n")
    return 0 if ok else EXIT_VERIFY_FAILED


COMMANDS = {
    "invariants": cmd_invariants,
    "fiber": cmd_fiber,
    "divisors": cmd_divisors,
    "finite-part": cmd_finite_part,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
        return
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    with open(path, "w") as fh:
        yield fh


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        with _sink(getattr(args, "output", None)) as out:
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"x0models: error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS
    except UnsupportedLevel as exc:
        print(f"x0models: unsupported level: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except GenusTooSmall as exc:
        print(f"x0models: genus too small: {exc}", file=sys.stderr)
        return EXIT_GENUS
    except InvalidInput as exc:
        print(f"x0models: error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS


if __name__ == "__main__":
    sys.exit(main())
