"""Vertical divisors V_0 and V_inf on one special fibre.

For each component ``Gamma`` the coefficients ``x`` of ``V_m`` solve

    sum_j (Gamma_i . Gamma_j) x_j = (2g - 2) [H_m meets Gamma_i] - K . Gamma_i

where ``H_0`` meets ``C_0`` and ``H_inf`` meets ``C_n``.  The solution is
unique up to adding multiples of the multiplicity vector ``w``; the gauge
used throughout fixes the coefficient of ``C_0`` to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .errors import InvalidInput, NoSolution
from .fiber import ComponentKind, FiberData, FiberModel, igusa
from .linalg import RationalVector, add, dot, mat_vec, scale, solve_singular, sub
from .minimal import canonical_intersections

ZERO = "0"
INF = "inf"
KERNEL = "kernel"


@dataclass(frozen=True)
class VerticalDivisor:
    p: int
    kinds: tuple[ComponentKind, ...]
    coefficients: RationalVector

    def __post_init__(self):
        if len(self.kinds) != len(self.coefficients):
            raise InvalidInput("one coefficient per component is required")

    def coefficient(self, kind: ComponentKind) -> Fraction:
        return self.coefficients[self.kinds.index(kind)]

    def shifted(self, t, w: "VerticalDivisor") -> "VerticalDivisor":
        return VerticalDivisor(self.p, self.kinds, add(self.coefficients, scale(t, w.coefficients)))


def _side(m: str) -> str:
    if m in (0, "0", "zero"):
        return ZERO
    if m in ("inf", "infinity", "∞"):
        return INF
    raise InvalidInput(f"cusp side must be '0' or 'inf', got {m!r}")


def rhs_vector(fiber: FiberModel, g: int, m: str) -> RationalVector:
    """Right-hand side ``(2g-2) H_m . Gamma - K . Gamma`` of the system for V_m."""
    side = _side(m)
    target = igusa(0) if side == ZERO else igusa(fiber.n)
    kdot = canonical_intersections(fiber)
    return tuple((2 * g - 2) * int(kind == target) - kd for kind, kd in zip(fiber.kinds, kdot))


def gauge_fix(fiber: FiberModel, x: RationalVector) -> RationalVector:
    """Shift ``x`` along the multiplicities so that its ``C_0`` entry is 0."""
    i0 = fiber.index_of(igusa(0))
    t = x[i0] / fiber.multiplicities[i0]
    return sub(x, scale(t, fiber.multiplicities))


def solve_vm(fiber: FiberModel, g: int, m: str) -> VerticalDivisor:
    """Exact particular solution for V_m at this prime, gauge-fixed at C_0."""
    rhs = rhs_vector(fiber, g, m)
    try:
        x = solve_singular(fiber.matrix, rhs)
    except NoSolution as exc:
        raise NoSolution(f"system for V_{_side(m)} at p={fiber.p} is inconsistent") from exc
    return VerticalDivisor(fiber.p, fiber.kinds, gauge_fix(fiber, x))


def multiplicity_divisor(fiber: FiberModel) -> VerticalDivisor:
    return VerticalDivisor(fiber.p, fiber.kinds, tuple(Fraction(x) for x in fiber.multiplicities))


@dataclass(frozen=True)
class _Level:
    """Invariants of N and M needed by the closed-form solutions."""

    g: int
    dN: int
    e2N: int
    e3N: int
    einfN: int
    dM: int
    einfM: int
    einf_pn: int

    @classmethod
    def of(cls, p: int, n: int, M: int) -> "_Level":
        N = p**n * M
        iN = arith.invariants(N)
        iM = arith.invariants(M)
        return cls(iN.g, iN.d, iN.eps2, iN.eps3, iN.epsinf, iM.d, iM.epsinf,
                   arith.invariants(p**n).epsinf)


def closed_form_coefficient(p: int, n: int, M: int, kind: ComponentKind, m: str) -> Fraction:
    """One entry of the closed-form solutions ``w``, ``u`` (m='0'), ``v`` (m='inf').

    The factor ``(g - 1)`` in front of each bracket is distributed, so the
    expressions stay finite at genus 1.
    """
    data = FiberData.of(p, n, M)
    if not data.has(kind):
        raise InvalidInput(f"{kind.label(n)} is not a component for (p, n, M) = ({p}, {n}, {M})")
    if m == KERNEL:
        return Fraction(data.multiplicity(kind))
    side = _side(m)
    s = 1 if side == ZERO else -1
    L = _Level.of(p, n, M)
    g1 = L.g - 1
    pm1 = p - 1
    base = Fraction(1, L.dN * pm1)
    tail = -Fraction(2, pm1) + Fraction(6 * L.einfM, L.dM * pm1)
    a = kind.index

    def interior(a: int) -> Fraction:
        # (g-1) * (+-(6a(p-1)+6)) + d(N) - 3(min(a,n-a)(p-1)+1) eps_inf(N)
        mn = min(a, n - a)
        return s * g1 * (6 * a * pm1 + 6) + L.dN - 3 * (mn * pm1 + 1) * L.einfN

    if kind.family == "C":
        if a == 0:
            return Fraction(0)
        if a == n:
            return 2 * base * s * g1 * (6 * n * pm1 + 12)
        return 2 * data.phi(a) * base * interior(a)

    if kind.family == "E":
        if a is not None:
            return data.phi(a) * base * interior(a)
        lead = 6 * n * pm1 + 36 if side == ZERO else -6 * n * pm1 + 12
        bracket = g1 * lead - 3 * (n * pm1 - 2) * L.einfN + 8 * L.e3N
        return L.einf_pn * base / 2 * bracket + tail

    # F components
    if a is None:
        lead = 2 * n * pm1 + 12 if side == ZERO else -2 * n * pm1 + 4
        bracket = g1 * lead - (n * pm1 - 2) * L.einfN + 2 * L.e2N
        return (Fraction(1, 3) + L.einf_pn * base * bracket
                - Fraction(4, 3 * pm1) + Fraction(4 * L.einfM, L.dM * pm1))
    if a in (0, n):
        edge = 2 * (p + 1) if a == n else -2 * (p + 1)
        if side == ZERO:
            lead = 6 * n * pm1 + edge + 36
        else:
            lead = -6 * n * pm1 - edge + 12
        bracket = g1 * lead - 3 * (n * pm1 - 2) * L.einfN + 6 * L.e2N
        return L.einf_pn * base / 2 * bracket + tail
    return Fraction(1, 3) + Fraction(2, 3) * data.phi(a) * base * interior(a)


def closed_form_vm(fiber: FiberModel, m: str) -> VerticalDivisor:
    """Closed-form ``u``, ``v`` or ``w`` over the components of ``fiber``.

    On a blown-down fibre the same formulas are used with the contracted
    components simply left out.
    """
    coeffs = tuple(closed_form_coefficient(fiber.p, fiber.n, fiber.M, k, m) for k in fiber.kinds)
    return VerticalDivisor(fiber.p, fiber.kinds, coeffs)


def verify_closed_form(fiber: FiberModel, g: int | None = None) -> bool:
    """True iff the closed forms solve the fibre's systems exactly.

    Checks ``A u = rhs_0``, ``A v = rhs_inf`` and ``A w = 0``.  ``g`` defaults
    to the genus of X_0(N).
    """
    if g is None:
        g = arith.genus(fiber.N)
    A = fiber.matrix
    u = closed_form_vm(fiber, ZERO).coefficients
    v = closed_form_vm(fiber, INF).coefficients
    w = closed_form_vm(fiber, KERNEL).coefficients
    return (mat_vec(A, u) == rhs_vector(fiber, g, ZERO)
            and mat_vec(A, v) == rhs_vector(fiber, g, INF)
            and all(x == 0 for x in mat_vec(A, w)))


def degree_on_fiber(fiber: FiberModel, rhs: RationalVector) -> Fraction:
    """``sum_i m_i rhs_i``; zero for every right-hand side built here."""
    return dot(fiber.multiplicities, rhs)
