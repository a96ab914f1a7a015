"""Special fibres of Edixhoven's regular model of X_0(N) at a prime p | N.

Write ``N = p**n * M`` with ``p`` not dividing ``M``.  The fibre at ``p`` has
``n + 1`` Igusa components ``C_a`` (each a copy of X_0(M) over F_p) plus
rational components ``E`` and ``F`` sitting over the elliptic points of
X_0(M) with j = 1728 and j = 0.  Which of those appear depends only on
``xi(-1)``, ``xi(-3)`` and the parity of ``n``:

=========  =========================  ===========================================
           xi = 0                     xi = 1
=========  =========================  ===========================================
E          E_{a,i}, 0 < a < n         E_{inf,i}
F          F_{a,i}, 0 < a < n         F_{inf,i} (n even) / F_{0,i}, F_{n,i} (n odd)
=========  =========================  ===========================================
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import arith
from .errors import ConsistencyError, InvalidInput
from .linalg import RationalMatrix, kernel_basis, mat_vec

EDIXHOVEN = "edixhoven"
MINIMAL = "minimal"

_FAMILY_RANK = {"C": 0, "E": 1, "F": 2}


@dataclass(frozen=True)
class ComponentKind:
    """``family`` is "C", "E" or "F"; ``index`` None stands for infinity.

    Igusa components carry ``copy = 0``.
    """

    family: str
    index: int | None
    copy: int = 0

    @property
    def is_igusa(self) -> bool:
        return self.family == "C"

    def sort_key(self, n: int) -> tuple[int, int, int]:
        idx = n + 1 if self.index is None else self.index
        return (_FAMILY_RANK[self.family], idx, self.copy)

    def label(self, n: int) -> str:
        if self.family == "C":
            return f"C{self.index}"
        if self.index is None:
            return f"{self.family}inf_{self.copy}"
        if self.family == "F" and self.index in (0, n):
            return f"F{self.index}_{self.copy}"
        return f"{self.family}_{self.index}_{self.copy}"

    @classmethod
    def from_label(cls, text: str) -> "ComponentKind":
        family, rest = text[0], text[1:]
        if family == "C":
            return cls("C", int(rest))
        if rest.startswith("inf_"):
            return cls(family, None, int(rest[4:]))
        if rest.startswith("_"):
            a, i = rest[1:].split("_")
            return cls(family, int(a), int(i))
        a, i = rest.split("_")
        return cls(family, int(a), int(i))


def igusa(a: int) -> ComponentKind:
    return ComponentKind("C", a)


@dataclass(frozen=True)
class FiberComponent:
    kind: ComponentKind
    multiplicity: int
    genus: int


@dataclass(frozen=True)
class FiberModel:
    p: int
    n: int
    M: int
    model_tag: str
    components: tuple[FiberComponent, ...]
    matrix: RationalMatrix

    @property
    def N(self) -> int:
        return self.p**self.n * self.M

    @property
    def kinds(self) -> tuple[ComponentKind, ...]:
        return tuple(c.kind for c in self.components)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.multiplicity for c in self.components)

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(c.genus for c in self.components)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(k.label(self.n) for k in self.kinds)

    @property
    def self_intersections(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.matrix.diagonal())

    def __len__(self) -> int:
        return len(self.components)

    def index_of(self, kind: ComponentKind) -> int:
        try:
            return self.kinds.index(kind)
        except ValueError:
            raise InvalidInput(f"{kind.label(self.n)} is not a component of this fibre") from None

    def intersection(self, k1: ComponentKind, k2: ComponentKind) -> int:
        return int(self.matrix[self.index_of(k1), self.index_of(k2)])


def validate_block(p: int, n: int, M: int) -> None:
    if p in (2, 3):
        raise InvalidInput("no regular model is available at p = 2 or 3")
    if not arith.is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if n < 1 or M < 1:
        raise InvalidInput(f"need n >= 1 and M >= 1, got n={n}, M={M}")
    if gcd(M, 6 * p) != 1:
        raise InvalidInput(f"M={M} must be coprime to 6p={6 * p}")


@dataclass(frozen=True)
class FiberData:
    """Numerical constants shared by every intersection number of one fibre."""

    p: int
    n: int
    M: int
    xi1: int
    xi3: int
    k: int
    dM: int
    eps2M: int
    eps3M: int
    epsinf_pn: int
    genus_M: int

    @classmethod
    @lru_cache(maxsize=4096)
    def of(cls, p: int, n: int, M: int) -> "FiberData":
        validate_block(p, n, M)
        inv_m = arith.invariants(M)
        return cls(
            p=p, n=n, M=M,
            xi1=arith.xi(-1, p), xi3=arith.xi(-3, p),
            k=arith.k_count(p, M),
            dM=inv_m.d, eps2M=inv_m.eps2, eps3M=inv_m.eps3,
            epsinf_pn=arith.invariants(p**n).epsinf,
            genus_M=inv_m.g,
        )

    def phi(self, a: int) -> int:
        m = min(a, self.n - a)
        return 1 if m == 0 else self.p ** (m - 1) * (self.p - 1)

    def kinds(self) -> list[ComponentKind]:
        n = self.n
        out = [igusa(a) for a in range(n + 1)]
        if self.xi1 == 0:
            e_idx = list(range(1, n))
        else:
            e_idx = [None]
        out += [ComponentKind("E", a, i) for a in e_idx for i in range(1, self.eps2M + 1)]
        if self.xi3 == 0:
            f_idx = list(range(1, n))
        elif n % 2:
            f_idx = [0, n]
        else:
            f_idx = [None]
        out += [ComponentKind("F", a, i) for a in f_idx for i in range(1, self.eps3M + 1)]
        return out

    def has(self, kind: ComponentKind) -> bool:
        n = self.n
        if kind.family == "C":
            return kind.index is not None and 0 <= kind.index <= n and kind.copy == 0
        if kind.family == "E":
            if not 1 <= kind.copy <= self.eps2M:
                return False
            if kind.index is None:
                return self.xi1 == 1
            return self.xi1 == 0 and 1 <= kind.index <= n - 1
        if kind.family == "F":
            if not 1 <= kind.copy <= self.eps3M:
                return False
            if kind.index is None:
                return self.xi3 == 1 and n % 2 == 0
            if kind.index in (0, n):
                return self.xi3 == 1 and n % 2 == 1
            return self.xi3 == 0 and 1 <= kind.index <= n - 1
        return False

    def multiplicity(self, kind: ComponentKind) -> int:
        if kind.family == "C":
            return self.phi(kind.index)
        if kind.family == "E":
            m = Fraction(self.epsinf_pn if kind.index is None else self.phi(kind.index), 2)
        elif kind.index is None:
            m = Fraction(self.epsinf_pn, 3)
        elif kind.index in (0, self.n):
            m = Fraction(self.epsinf_pn, 2)
        else:
            m = Fraction(self.phi(kind.index), 3)
        if m.denominator != 1 or m <= 0:
            raise ConsistencyError(f"multiplicity of {kind.label(self.n)} is {m}")
        return int(m)

    def genus(self, kind: ComponentKind) -> int:
        return self.genus_M if kind.family == "C" else 0

    def igusa_pair(self, a: int, b: int) -> int:
        n, p = self.n, self.p
        if (n - 2 * a) * (n - 2 * b) <= 0:
            return self.k
        m = arith.mu(a, b, n)
        q = p**m
        val = (self.k * q
               + Fraction(self.xi1 * self.eps2M * (q - 1), 2)
               + Fraction(self.xi3 * self.eps3M, 3) * (q - Fraction(3 - (-1) ** n, 2)))
        if val.denominator != 1:
            raise ConsistencyError(f"C{a}.C{b} evaluated to {val}")
        return int(val)

    def self_intersection(self, kind: ComponentKind) -> int:
        n = self.n
        sign = (-1) ** n
        if kind.family == "C":
            a = kind.index
            if a in (0, n):
                val = (-Fraction(self.dM * self.p ** (n - 1) * (self.p - 1), 12)
                       - Fraction(self.xi1 * self.eps2M, 2)
                       - Fraction((3 - sign) * self.xi3 * self.eps3M, 6))
            else:
                val = (-Fraction(self.dM * self.p ** abs(n - 2 * a), 6)
                       - Fraction(self.eps2M, 2) - Fraction(self.eps3M, 3)
                       - Fraction((1 - sign) * self.xi3 * self.eps3M, 6))
            if val.denominator != 1:
                raise ConsistencyError(f"C{a}^2 evaluated to {val}")
            return int(val)
        if kind.family == "E":
            return -2
        return -2 if kind.index in (0, n) else -3

    def intersection(self, k1: ComponentKind, k2: ComponentKind) -> int:
        for k in (k1, k2):
            if not self.has(k):
                raise InvalidInput(f"{k.label(self.n)} is not a component of the "
                                   f"fibre (p, n, M) = ({self.p}, {self.n}, {self.M})")
        if k1 == k2:
            return self.self_intersection(k1)
        if _FAMILY_RANK[k1.family] > _FAMILY_RANK[k2.family]:
            k1, k2 = k2, k1
        n = self.n
        if k1.family == "C":
            a = k1.index
            if k2.family == "C":
                return self.igusa_pair(a, k2.index)
            b = k2.index
            if k2.family == "E":
                return int(b is None or b == a)
            return int(b is None or b == a
                       or (b == 0 and n - 2 * a > 0)
                       or (b == n and n - 2 * a < 0))
        if k1.family == "E":
            return 0
        # F-F
        return int(k1.copy == k2.copy and {k1.index, k2.index} == {0, n} and n % 2 == 1)


def intersection_number(p: int, n: int, M: int, kind1: ComponentKind, kind2: ComponentKind) -> int:
    """Intersection number of two components of the fibre at ``p``."""
    return FiberData.of(p, n, M).intersection(kind1, kind2)


def build_edixhoven(p: int, n: int, M: int) -> FiberModel:
    """Fibre at ``p`` of Edixhoven's model of X_0(p**n * M).

    Off-diagonal entries come from the closed intersection formulas; each
    diagonal entry is computed twice, from its closed form and from
    ``C . X_p = 0``, and the two must agree exactly.
    """
    data = FiberData.of(p, n, M)
    kinds = data.kinds()
    mults = [data.multiplicity(k) for k in kinds]
    size = len(kinds)
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            v = data.intersection(kinds[i], kinds[j])
            rows[i][j] = rows[j][i] = v
    for i, kind in enumerate(kinds):
        off = sum(mults[j] * rows[i][j] for j in range(size) if j != i)
        forced = Fraction(-off, mults[i])
        closed = data.self_intersection(kind)
        if forced != closed:
            raise ConsistencyError(
                f"({p},{n},{M}) {kind.label(n)}: closed-form self-intersection {closed}"
                f" but row sum forces {forced}")
        rows[i][i] = closed
    comps = tuple(FiberComponent(k, m, data.genus(k)) for k, m in zip(kinds, mults))
    return FiberModel(p, n, M, EDIXHOVEN, comps, RationalMatrix(rows))


def fiber_canonical_degree_check(fiber: FiberModel, g: int | None = None) -> Fraction:
    """``sum_i m_i (2 g_i - 2 - Gamma_i^2)``, which must equal ``2g - 2``.

    ``g`` is accepted for call-site symmetry and is not used in the sum.
    """
    total = Fraction(0)
    for comp, self_int in zip(fiber.components, fiber.matrix.diagonal()):
        total += comp.multiplicity * (2 * comp.genus - 2 - self_int)
    return total


def structural_problems(fiber: FiberModel) -> list[str]:
    """Everything that is wrong with ``fiber`` as an intersection matrix.

    Empty for a valid fibre: symmetric, nonpositive diagonal, nonnegative
    off-diagonal, connected dual graph, kernel spanned by the multiplicities.
    """
    m = fiber.matrix
    size = m.dim
    problems = []
    if not m.is_symmetric():
        problems.append("matrix is not symmetric")
    if size >= 2 and any(x >= 0 for x in m.diagonal()):
        problems.append("nonnegative diagonal entry")
    if any(m[i, j] < 0 for i in range(size) for j in range(size) if i != j):
        problems.append("negative off-diagonal entry")
    if any(x != 0 for x in mat_vec(m, fiber.multiplicities)):
        problems.append("matrix * multiplicities != 0")
    basis = kernel_basis(m)
    if len(basis) != 1:
        problems.append(f"kernel has dimension {len(basis)}")
    elif basis[0] != tuple(Fraction(x) for x in fiber.multiplicities):
        problems.append("kernel generator is not the multiplicity vector")
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(size):
            if j not in seen and m[i, j] > 0:
                seen.add(j)
                stack.append(j)
    if len(seen) != size:
        problems.append("dual graph is disconnected")
    return problems


def dual_graph_dot(fiber: FiberModel) -> str:
    """Graphviz text for the dual graph: components as nodes, positive
    intersections as labelled edges."""
    labels = fiber.labels
    name = f"X0_{fiber.N}_p{fiber.p}_{fiber.model_tag}"
    lines = [f'graph "{name}" {{', "  node [shape=box];"]
    for lab, comp, s in zip(labels, fiber.components, fiber.self_intersections):
        lines.append(f'  "{lab}" [label="{lab}\\nm={comp.multiplicity} g={comp.genus} '
                     f'self={s}"];')
    size = len(fiber)
    for i in range(size):
        for j in range(i + 1, size):
            v = fiber.matrix[i, j]
            if v > 0:
                lines.append(f'  "{labels[i]}" -- "{labels[j]}" [label="{v}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
