"""Pairings of vertical divisors and the finite part of <omega, omega>.

Every pairing of divisors supported over ``p`` is ``(D . D') log p``; the
rational factor is the source of truth and ``log p`` only enters reports as
a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .divisors import INF, ZERO, VerticalDivisor, multiplicity_divisor, solve_vm
from .errors import GenusTooSmall, InvalidInput, UnsupportedLevel
from .fiber import FiberModel
from .linalg import quadratic_form
from .minimal import minimal_fiber


@dataclass(frozen=True)
class LogWeightedRational:
    """``coeff * log(p)``."""

    p: int
    coeff: Fraction

    def __add__(self, other: "LogWeightedRational") -> "LogWeightedRational":
        if other.p != self.p:
            raise InvalidInput(f"cannot add multiples of log {self.p} and log {other.p}")
        return LogWeightedRational(self.p, self.coeff + other.coeff)

    def __float__(self) -> float:
        return float(self.coeff) * math.log(self.p)


@dataclass(frozen=True)
class PrimeContribution:
    p: int
    n: int
    M: int
    coeff: Fraction


@dataclass(frozen=True)
class FinitePartResult:
    N: int
    g: int
    primes: tuple[PrimeContribution, ...]
    float_value: float = field(compare=False)
    ratio_to_g_logN: float = field(compare=False)

    @property
    def terms(self) -> list[LogWeightedRational]:
        return [LogWeightedRational(c.p, c.coeff) for c in self.primes]


def pair_vertical(V: VerticalDivisor, W: VerticalDivisor, fiber: FiberModel) -> LogWeightedRational:
    if V.p != fiber.p or W.p != fiber.p:
        raise InvalidInput("divisors and fibre live over different primes")
    if V.kinds != fiber.kinds or W.kinds != fiber.kinds:
        raise InvalidInput("divisors are not indexed by this fibre's components")
    return LogWeightedRational(fiber.p, quadratic_form(fiber.matrix, V.coefficients, W.coefficients))


def finite_part_coefficient(fiber: FiberModel, g: int, V0: VerticalDivisor,
                            Vinf: VerticalDivisor) -> Fraction:
    """``g/(g-1) <V0,Vinf> - (<V0,V0> + <Vinf,Vinf>)/(2g-2)`` as a multiple of log p."""
    if g <= 1:
        raise GenusTooSmall(f"genus {g} < 2")
    p00 = pair_vertical(V0, V0, fiber).coeff
    p0i = pair_vertical(V0, Vinf, fiber).coeff
    pii = pair_vertical(Vinf, Vinf, fiber).coeff
    return Fraction(g, g - 1) * p0i - (p00 + pii) / (2 * g - 2)


def check_level(N: int) -> arith.FactoredLevel:
    level = arith.factor_level(N)
    if N <= 1:
        raise UnsupportedLevel("level must be > 1")
    if not level.coprime_to_6:
        raise UnsupportedLevel("level not coprime to 6")
    if level.excluded:
        raise UnsupportedLevel(f"level {N} is excluded")
    return level


def finite_part(N: int, shift=None) -> FinitePartResult:
    """Term (b) of the self-intersection, computed prime by prime.

    ``shift`` is an optional rational ``t``: each V_m is replaced by
    ``V_m + t w`` before pairing, which must not change anything.
    """
    level = check_level(N)
    g = arith.genus(N)
    if g <= 1:
        raise GenusTooSmall(f"X_0({N}) has genus {g}; the finite part needs g >= 2")
    contribs = []
    for b in level.blocks:
        fiber = minimal_fiber(b.p, b.n, b.M)
        V0 = solve_vm(fiber, g, ZERO)
        Vi = solve_vm(fiber, g, INF)
        if shift is not None:
            w = multiplicity_divisor(fiber)
            V0, Vi = V0.shifted(shift, w), Vi.shifted(shift, w)
        contribs.append(PrimeContribution(b.p, b.n, b.M, finite_part_coefficient(fiber, g, V0, Vi)))
    value = sum(float(c.coeff) * math.log(c.p) for c in contribs)
    return FinitePartResult(N, g, tuple(contribs), value, value / (g * math.log(N)))


def f_polynomial(p: int, n: int, M: int) -> int:
    """Integer ``f(p, n, M)`` with per-prime coefficient
    ``n g + f / (12 d(N) (p - 1))``."""
    N = p**n * M
    iN = arith.invariants(N)
    iM = arith.invariants(M)
    dN, e2N, e3N, eiN = iN.d, iN.eps2, iN.eps3, iN.epsinf
    dM, e2M, e3M, eiM = iM.d, iM.eps2, iM.eps3, iM.epsinf
    d_pn = arith.invariants(p**n).d
    x3 = arith.xi(-3, p)
    delta = 1 if M == 1 else 0
    q = n * (p - 1)
    return (2 * dN**2
            - 8 * dN * dM * (p ** (n - 1) - 1)
            - 6 * (q - 4) * dN * eiN
            - 96 * dN * eiM
            - ((3 * (e2N + 2 * e3N - 4) * n - 2 * e3N
                + 2 * (1 + (-1) ** n) * (x3 * e3M - 9 * delta)) * dN * (p - 1))
            + 4 * (12 - 3 * e2N - 4 * e3N) * dN
            + 144 * d_pn * eiM**2
            + 12 * (q + 2) * (3 * e2N + 4 * e3N - 12) * eiN
            + 2 * (q + 2) * (9 * e2N * (e2M - 4) + 16 * e3N * (e3M - 3) + 12 * e2N * e3N))


def closed_form_coefficient(p: int, n: int, M: int) -> Fraction:
    N = p**n * M
    inv = arith.invariants(N)
    return n * inv.g + Fraction(f_polynomial(p, n, M), 12 * inv.d * (p - 1))


REPORT_NOTE = ("(a) = -4g(g-1)<H0,Hinf> is cited as 2g log N + o(g log N), not computed; "
               "(c) = (h0+hinf)/2 is cited as o(g log N), not computed")


def asymptotic_report(levels) -> list[dict]:
    """One row per level with term (b) against ``g log N``.

    Inadmissible levels give a row with ``skipped`` set to the reason.
    """
    rows = []
    for N in levels:
        try:
            res = finite_part(N)
        except (UnsupportedLevel, GenusTooSmall, InvalidInput) as exc:
            rows.append({"N": N, "skipped": str(exc)})
            continue
        glog = res.g * math.log(N)
        rows.append({
            "N": N,
            "g": res.g,
            "primes": [{"p": c.p, "n": c.n, "M": c.M, "coeff": c.coeff} for c in res.primes],
            "b_float": res.float_value,
            "g_logN_float": glog,
            "ratio": res.ratio_to_g_logN,
            "reference_total_float": 3 * glog,
            "note": REPORT_NOTE,
        })
    return rows
