"""Brute-force counterparts of the closed formulas in :mod:`x0models.arith`.

These never touch the multiplicative prime-power formulas:

* the invariants of X_0(N) come from the permutation action of
  PSL_2(Z) on the cosets Gamma_0(N)\\SL_2(Z) = P^1(Z/N), and
* the supersingular j-invariants come from enumerating F_{p^2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd

import numpy as np

from .arith import Invariants, is_prime
from .errors import InvalidInput


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


class ProjectiveLine:
    """The points of P^1(Z/N) with a normalisation map to point ids.

    A point is stored as ``(g, d)`` with ``g = gcd(c, N)``: every class has a
    representative whose first coordinate is exactly ``g``, and the units
    congruent to 1 mod ``N/g`` then act on the second coordinate.
    """

    def __init__(self, N: int):
        if N < 1:
            raise InvalidInput(f"N must be positive, got {N}")
        self.N = N
        self._ids: dict[int, list[int]] = {}
        self.points: list[tuple[int, int]] = []
        for g in _divisors(N):
            h = N // g
            units = [u for u in range(1, N + 1, h) if gcd(u, N) == 1] if N > 1 else [0]
            table = [-1] * N
            for d in range(N):
                if table[d] >= 0 or gcd(d, g) != 1:
                    continue
                pid = len(self.points)
                orbit = {(u * d) % N for u in units}
                for e in orbit:
                    table[e] = pid
                self.points.append((g, min(orbit)))
            self._ids[g] = table

    def __len__(self) -> int:
        return len(self.points)

    def index(self, c: int, d: int) -> int:
        N = self.N
        c %= N
        d %= N
        g = gcd(c, N)
        h = N // g
        u = pow(c // g, -1, h) if h > 1 else 0
        while gcd(u, N) != 1:
            u += h
        pid = self._ids[g][(u * d) % N]
        if pid < 0:
            raise InvalidInput(f"({c}:{d}) is not a point of P^1(Z/{N})")
        return pid

    def permutation(self, a: int, b: int, c: int, d: int) -> list[int]:
        """Right action of the matrix ((a, b), (c, d)) on row vectors."""
        out = []
        for x, y in self.points:
            out.append(self.index(x * a + y * c, x * b + y * d))
        return out


def _cycle_count(perm: list[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
    return cycles


def brute_force_invariants(N: int) -> Invariants:
    """Invariants of X_0(N) from the coset permutation representation.

    ``S`` fixes the elliptic points of order 2, ``ST`` those of order 3, the
    cycles of ``T`` are the cusps, and the genus follows from Riemann-Hurwitz
    for the cover X_0(N) -> X(1) branched over three points.
    """
    line = ProjectiveLine(N)
    s = line.permutation(0, -1, 1, 0)
    st = line.permutation(0, -1, 1, 1)
    t = line.permutation(1, 1, 0, 1)
    d = len(line)
    eps2 = sum(1 for i, j in enumerate(s) if i == j)
    eps3 = sum(1 for i, j in enumerate(st) if i == j)
    cusps = _cycle_count(t)
    # 2 - 2g = c(S) + c(ST) + c(T) - d
    g2 = 2 + d - _cycle_count(s) - _cycle_count(st) - cusps
    if g2 % 2:
        raise AssertionError(f"odd Riemann-Hurwitz count for N={N}")
    return Invariants(d=d, eps2=eps2, eps3=eps3, epsinf=cusps, g=g2 // 2)


# -- supersingular j-invariants ------------------------------------------------


@dataclass(frozen=True)
class _Fp2:
    """F_{p^2} = F_p[t]/(t^2 - r) with ``r`` a quadratic non-residue."""

    p: int
    r: int

    @classmethod
    def of(cls, p: int) -> "_Fp2":
        r = next(x for x in range(2, p) if pow(x, (p - 1) // 2, p) == p - 1)
        return cls(p, r)

    def mul(self, x, y):
        p, r = self.p, self.r
        return ((x[0] * y[0] + r * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def inv(self, x):
        p = self.p
        norm = (x[0] * x[0] - self.r * x[1] * x[1]) % p
        ni = pow(norm, -1, p)
        return ((x[0] * ni) % p, (-x[1] * ni) % p)


def supersingular_j_invariants(p: int) -> set[tuple[int, int]]:
    """All supersingular j-invariants in characteristic ``p``, as F_{p^2} pairs.

    Enumerates every lambda in F_{p^2}, keeps the roots of the Hasse invariant
    of the Legendre curve y^2 = x(x-1)(x-lambda) and maps them to j.
    """
    if not is_prime(p) or p < 5:
        raise InvalidInput(f"p must be a prime >= 5, got {p}")
    field = _Fp2.of(p)
    m = (p - 1) // 2
    coeffs = [comb(m, i) ** 2 % p for i in range(m + 1)]
    a = np.repeat(np.arange(p, dtype=np.int64), p)
    b = np.tile(np.arange(p, dtype=np.int64), p)
    acc_a = np.zeros_like(a)
    acc_b = np.zeros_like(b)
    for c in reversed(coeffs):
        acc_a, acc_b = (acc_a * a + field.r * acc_b * b + c) % p, (acc_a * b + acc_b * a) % p
    roots = [(int(x), int(y)) for x, y in zip(a[(acc_a == 0) & (acc_b == 0)],
                                              b[(acc_a == 0) & (acc_b == 0)])]
    js = set()
    for lam in roots:
        lam2 = field.mul(lam, lam)
        q = ((lam2[0] - lam[0] + 1) % p, (lam2[1] - lam[1]) % p)
        num = field.mul(field.mul(q, q), q)
        num = ((256 * num[0]) % p, (256 * num[1]) % p)
        lm1 = ((lam[0] - 1) % p, lam[1])
        den = field.mul(lam2, field.mul(lm1, lm1))
        js.add(field.mul(num, field.inv(den)))
    return js


def supersingular_count_excluding_0_1728(p: int) -> int:
    js = supersingular_j_invariants(p)
    return len(js - {(0, 0), (1728 % p, 0)})


def rational_supersingular_j_by_point_count(p: int) -> set[int]:
    """j in F_p whose curves have exactly p + 1 points over F_p."""
    if not is_prime(p) or p < 5:
        raise InvalidInput(f"p must be a prime >= 5, got {p}")
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    out = set()
    for j in range(p):
        if j == 0:
            a4, a6 = 0, 1
        elif j == 1728 % p:
            a4, a6 = 1, 0
        else:
            a4 = 3 * j * (1728 - j) % p
            a6 = 2 * j * (1728 - j) ** 2 % p
        rhs = (x * x % p * x + a4 * x + a6) % p
        if int(chi[rhs].sum()) == 0:
            out.add(j)
    return out
