"""Minimal regular models: exceptional components and blow-downs.

Edixhoven's model is already minimal unless ``M = 1`` and ``n`` is even
(the levels 5, 7, 13 are rejected).  In that case three components are
contracted: ``C_{n/2}``, then the E component and the F component that
become exceptional once ``C_{n/2}`` is gone.  Two independent routes are
provided: the explicit pullback formulas (:func:`blow_down_composite`) and a
generic one-curve-at-a-time contraction (:func:`blow_down_iterative`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .errors import ConsistencyError, InvalidInput, UnsupportedLevel
from .fiber import (
    MINIMAL,
    ComponentKind,
    FiberComponent,
    FiberData,
    FiberModel,
    build_edixhoven,
    igusa,
)
from .linalg import RationalMatrix, RationalVector


def find_exceptional(fiber: FiberModel) -> list[ComponentKind]:
    """Components of genus 0 with self-intersection -1."""
    return [c.kind for c, s in zip(fiber.components, fiber.self_intersections)
            if c.genus == 0 and s == -1]


def needs_blow_down(n: int, M: int) -> bool:
    return M == 1 and n % 2 == 0


@dataclass(frozen=True)
class BlowdownRecord:
    """Contracted components and the pullbacks of the survivors.

    ``pullback_coeffs[kind]`` lists the coefficients of the contracted
    components (in ``contracted`` order) in the pullback of ``kind``.
    """

    contracted: tuple[ComponentKind, ...]
    pullback_coeffs: dict[ComponentKind, tuple[int, ...]]


def _contracted_kinds(data: FiberData) -> tuple[ComponentKind, ...]:
    h = data.n // 2
    e = ComponentKind("E", None if data.xi1 else h, 1)
    f = ComponentKind("F", None if data.xi3 else h, 1)
    return (igusa(h), e, f)


def _check_composite_args(fiber: FiberModel) -> FiberData:
    if fiber.model_tag != "edixhoven":
        raise InvalidInput("blow-downs start from Edixhoven's model")
    if not needs_blow_down(fiber.n, fiber.M):
        raise InvalidInput(f"Edixhoven's model is already minimal for n={fiber.n}, M={fiber.M}")
    return FiberData.of(fiber.p, fiber.n, fiber.M)


def pullback_record(fiber: FiberModel) -> BlowdownRecord:
    """Pullback coefficients of the survivors under the triple contraction.

    Igusa survivors pull back to ``C'_a + c C'_{n/2} + e E' + f F'`` with
    ``(c, e, f)`` depending on ``p mod 12``; E and F survivors pull back to
    themselves.  Each contracted ``D`` satisfies ``D . pi^*(C) = 0``, which is
    checked against the matrix.
    """
    data = _check_composite_args(fiber)
    k, x1, x3 = data.k, data.xi1, data.xi3
    igusa_coeffs = {
        (0, 0): (6 * k, 3 * k, 2 * k),
        (0, 1): (6 * k + 2, 3 * k + 1, 2 * k + 1),
        (1, 0): (6 * k + 3, 3 * k + 2, 2 * k + 1),
        (1, 1): (6 * k + 5, 3 * k + 3, 2 * k + 2),
    }[(x1, x3)]
    contracted = _contracted_kinds(data)
    dropped = {fiber.index_of(k_) for k_ in contracted}
    coeffs = {}
    for i, kind in enumerate(fiber.kinds):
        if i in dropped:
            continue
        coeffs[kind] = igusa_coeffs if kind.is_igusa else (0, 0, 0)
        for d in contracted:
            di = fiber.index_of(d)
            val = fiber.matrix[di, i] + sum(
                c * fiber.matrix[di, fiber.index_of(dd)] for c, dd in zip(coeffs[kind], contracted))
            if val != 0:
                raise ConsistencyError(f"{d.label(fiber.n)} . pi^*({kind.label(fiber.n)}) = {val}")
    return BlowdownRecord(contracted, coeffs)


def blow_down_composite(fiber: FiberModel, g: int | None = None) -> FiberModel:
    """Minimal model fibre from the explicit blow-down formulas.

    Distinct surviving Igusa components gain
    ``6k^2 + (6k+2) xi(-1) + (4k+1) xi(-3) + 2 xi(-1) xi(-3)``; all other
    off-diagonal entries are unchanged and the diagonal is re-derived from
    row sums.  Igusa genera become
    ``g(X_0(M)) + 3k^2 + (3 xi(-1) + 2 xi(-3) - 2) k + xi(-1) xi(-3)``.
    ``g`` is accepted for call-site symmetry and is not used.
    """
    data = _check_composite_args(fiber)
    record = pullback_record(fiber)
    k, x1, x3 = data.k, data.xi1, data.xi3
    bump = 6 * k * k + (6 * k + 2) * x1 + (4 * k + 1) * x3 + 2 * x1 * x3
    genus_bump = 3 * k * k + (3 * x1 + 2 * x3 - 2) * k + x1 * x3
    keep = [i for i, kind in enumerate(fiber.kinds) if kind not in record.contracted]
    old = fiber.matrix
    size = len(keep)
    rows = [[0] * size for _ in range(size)]
    for r, i in enumerate(keep):
        for c, j in enumerate(keep):
            if r == c:
                continue
            v = int(old[i, j])
            if fiber.kinds[i].is_igusa and fiber.kinds[j].is_igusa:
                v += bump
            rows[r][c] = v
    mults = [fiber.components[i].multiplicity for i in keep]
    for r in range(size):
        off = sum(mults[c] * rows[r][c] for c in range(size) if c != r)
        diag = Fraction(-off, mults[r])
        if diag.denominator != 1:
            raise ConsistencyError(f"non-integral self-intersection {diag}")
        rows[r][r] = int(diag)
    comps = []
    for i in keep:
        comp = fiber.components[i]
        genus = comp.genus + genus_bump if comp.kind.is_igusa else comp.genus
        comps.append(FiberComponent(comp.kind, comp.multiplicity, genus))
    out = FiberModel(fiber.p, fiber.n, fiber.M, MINIMAL, tuple(comps), RationalMatrix(rows))
    closed = kcap_closed_form(fiber)
    if canonical_intersections(out) != closed:
        raise ConsistencyError("adjunction disagrees with the closed-form K . C after blow-down")
    return out


def kcap_closed_form(edixhoven: FiberModel) -> RationalVector:
    """``K . Gamma`` on the minimal model, read off the Edixhoven fibre.

    ``C_a . K = -(C'_a)^2 - 4k - 2 - 2 xi(-1) - xi(-3)``, ``E . K = 0`` and
    ``F . K = 1`` for the survivors, listed in the minimal model's order.
    """
    data = _check_composite_args(edixhoven)
    contracted = _contracted_kinds(data)
    out = []
    for comp, s in zip(edixhoven.components, edixhoven.self_intersections):
        if comp.kind in contracted:
            continue
        if comp.kind.family == "C":
            # the general form carries 2 g(X_0(M)) - 2; with M = 1 that is -2
            val = 2 * comp.genus - s - 4 * data.k - 2 * data.xi1 - data.xi3 - 2
        elif comp.kind.family == "E":
            val = 0
        else:
            val = 1
        out.append(Fraction(val))
    return tuple(out)


def contract(fiber: FiberModel, kind: ComponentKind) -> FiberModel:
    """Contract one exceptional component.

    Survivors are updated by ``C.D += (C.E)(D.E)`` and the genus of ``C``
    rises by ``r(r-1)/2`` with ``r = C.E``.
    """
    t = fiber.index_of(kind)
    comp = fiber.components[t]
    if comp.genus != 0 or fiber.matrix[t, t] != -1:
        raise InvalidInput(f"{kind.label(fiber.n)} is not exceptional")
    rows = fiber.matrix.to_int_rows()
    col = [row[t] for row in rows]
    keep = [i for i in range(len(fiber)) if i != t]
    new_rows = [[rows[i][j] + col[i] * col[j] for j in keep] for i in keep]
    comps = tuple(
        FiberComponent(fiber.components[i].kind, fiber.components[i].multiplicity,
                       fiber.components[i].genus + col[i] * (col[i] - 1) // 2)
        for i in keep)
    return FiberModel(fiber.p, fiber.n, fiber.M, MINIMAL, comps, RationalMatrix(new_rows))


def blow_down_iterative(fiber: FiberModel) -> FiberModel:
    """Contract exceptional components one at a time until none is left.

    The first exceptional component in canonical order goes first.  A fibre
    without exceptional components is returned unchanged.
    """
    while len(fiber) > 1:
        found = find_exceptional(fiber)
        if not found:
            break
        fiber = contract(fiber, found[0])
    return fiber


def canonical_intersections(fiber: FiberModel, g: int | None = None) -> RationalVector:
    """``K . Gamma = 2 g_Gamma - 2 - Gamma^2`` for every component."""
    return tuple(Fraction(2 * c.genus - 2 - s)
                 for c, s in zip(fiber.components, fiber.self_intersections))


def minimal_fiber(p: int, n: int, M: int) -> FiberModel:
    """Fibre at ``p`` of the minimal regular model of X_0(p**n * M)."""
    N = p**n * M
    if N in (5, 7, 13):
        raise UnsupportedLevel(f"the blow-downs for N={N} are not covered")
    edi = build_edixhoven(p, n, M)
    if needs_blow_down(n, M):
        return blow_down_composite(edi)
    return edi


def fiber_for_level(N: int, p: int) -> FiberModel:
    """Minimal-model fibre of X_0(N) at ``p``, with level-wide checks."""
    level = arith.factor_level(N)
    if not level.coprime_to_6:
        raise UnsupportedLevel("level not coprime to 6")
    if level.excluded:
        raise UnsupportedLevel(f"level {N} is excluded")
    if p in (2, 3):
        raise UnsupportedLevel("no regular model is available at p = 2 or 3")
    block = level.block(p)
    return minimal_fiber(block.p, block.n, block.M)
