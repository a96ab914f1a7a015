"""Multiplicative invariants of levels and counting constants of the fibres.

Everything is computed in exact integers or :class:`fractions.Fraction`;
values that must be integers after cancellation are checked, never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import ConsistencyError, InvalidInput

EXCLUDED_LEVELS = frozenset({5, 7, 13, 25})


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, int(n**0.5) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytes(len(range(q * q, n + 1, q)))
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ascending ``(p, e)`` pairs."""
    if n < 1:
        raise InvalidInput(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e:
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


@dataclass(frozen=True)
class Block:
    """One prime of the level: ``N = p**n * M`` with ``p`` not dividing ``M``."""

    p: int
    n: int
    M: int


@dataclass(frozen=True)
class FactoredLevel:
    N: int
    blocks: tuple[Block, ...]
    coprime_to_6: bool
    excluded: bool
    genus_ge_2: bool = field(default=False)

    def block(self, p: int) -> Block:
        for b in self.blocks:
            if b.p == p:
                return b
        raise InvalidInput(f"{p} does not divide {self.N}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(b.p for b in self.blocks)


@dataclass(frozen=True)
class Invariants:
    """Index, elliptic point counts, cusp count and genus of X_0(N)."""

    d: int
    eps2: int
    eps3: int
    epsinf: int
    g: int


def factor_level(N: int) -> FactoredLevel:
    if N < 1:
        raise InvalidInput(f"level must be positive, got {N}")
    blocks = tuple(Block(p, e, N // p**e) for p, e in factorize(N))
    return FactoredLevel(
        N=N,
        blocks=blocks,
        coprime_to_6=gcd(N, 6) == 1,
        excluded=N in EXCLUDED_LEVELS,
        genus_ge_2=genus(N) >= 2,
    )


def kronecker_symbol(a: int, p: int) -> int:
    """Legendre symbol ``(a | p)`` for an odd prime ``p``, via Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise InvalidInput(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def xi(m: int, p: int) -> int:
    """``(1 - (m | p)) / 2`` for ``m`` in {-1, -3}.

    Zero exactly when ``p`` splits in Q(sqrt(m)): ``p = 1 mod 4`` for
    ``m = -1`` and ``p = 1 mod 3`` for ``m = -3``.
    """
    if m not in (-1, -3):
        raise InvalidInput(f"xi is only defined for m in (-1, -3), got {m}")
    if not is_prime(p) or (6 * m) % p == 0:
        raise InvalidInput(f"xi({m}) needs a prime not dividing {6 * m}, got {p}")
    return (1 - kronecker_symbol(m, p)) // 2


def _prime_power_invariants(p: int, n: int) -> tuple[int, int, int, int]:
    d = p ** (n - 1) * (p + 1)
    if p == 2:
        eps2 = 1 if n == 1 else 0
        eps3 = 0
    elif p == 3:
        eps2 = 0
        eps3 = 1 if n == 1 else 0
    else:
        eps2 = 1 + kronecker_symbol(-1, p)
        eps3 = 1 + kronecker_symbol(-3, p)
    if n % 2 == 0:
        epsinf = p ** (n // 2 - 1) * (p + 1)
    else:
        epsinf = 2 * p ** ((n - 1) // 2)
    return d, eps2, eps3, epsinf


def _genus_from(N: int, d: int, eps2: int, eps3: int, epsinf: int) -> int:
    if N <= 2:
        return 0
    g = 1 + Fraction(d, 12) - Fraction(eps2, 4) - Fraction(eps3, 3) - Fraction(epsinf, 2)
    if g.denominator != 1 or g < 0:
        raise ConsistencyError(f"genus of X_0({N}) evaluated to {g}")
    return int(g)


@lru_cache(maxsize=65536)
def _invariants_of(N: int) -> Invariants:
    d = eps2 = eps3 = epsinf = 1
    for p, e in factorize(N):
        dp, e2, e3, ei = _prime_power_invariants(p, e)
        d *= dp
        eps2 *= e2
        eps3 *= e3
        epsinf *= ei
    return Invariants(d, eps2, eps3, epsinf, _genus_from(N, d, eps2, eps3, epsinf))


def invariants(level: FactoredLevel | int) -> Invariants:
    """Invariants of X_0(N), assembled multiplicatively from prime powers.

    Accepts either a :class:`FactoredLevel` or the bare integer ``N``.
    """
    N = level.N if isinstance(level, FactoredLevel) else int(level)
    if N < 1:
        raise InvalidInput(f"level must be positive, got {N}")
    return _invariants_of(N)


def genus(N: int) -> int:
    return invariants(N).g


def k_count(p: int, M: int) -> int:
    """Number of points where every Igusa component meets all the others.

    Equals the number of supersingular j-invariants different from 0 and 1728
    when ``M = 1``; in general it also counts ramification over 0 and 1728.
    """
    if not is_prime(p) or p < 5:
        raise InvalidInput(f"p must be a prime >= 5, got {p}")
    if M < 1 or gcd(M, 6 * p) != 1:
        raise InvalidInput(f"M must be positive and coprime to {6 * p}, got {M}")
    inv = invariants(M)
    k = (Fraction(p - 1, 12) * inv.d
         - Fraction(xi(-1, p) * inv.eps2, 2)
         - Fraction(xi(-3, p) * inv.eps3, 3))
    if k.denominator != 1 or k < 0:
        raise ConsistencyError(f"k({p}, {M}) evaluated to {k}")
    return int(k)


def mu(a: int, a2: int, n: int) -> int:
    if not (0 <= a <= n and 0 <= a2 <= n):
        raise InvalidInput(f"indices {a}, {a2} outside 0..{n}")
    return min(abs(n - 2 * a), abs(n - 2 * a2))
