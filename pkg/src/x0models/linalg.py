"""Exact dense linear algebra over the rationals.

Elimination is fraction-free: each row is scaled to integers first and kept
primitive, so the work stays in Python ints.  Pivots are the first nonzero
entry in column order; no magnitude pivoting is needed in exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import InvalidInput, NoSolution

RationalVector = tuple[Fraction, ...]


def vector(values: Iterable) -> RationalVector:
    return tuple(Fraction(v) for v in values)


class RationalMatrix:
    """Immutable square matrix of :class:`Fraction` entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if any(len(r) != len(rows) for r in rows):
            raise InvalidInput("matrix must be square")
        self.rows = rows

    @classmethod
    def identity(cls, dim: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(dim)] for i in range(dim)])

    @classmethod
    def zeros(cls, dim: int) -> "RationalMatrix":
        return cls([[0] * dim for _ in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"RationalMatrix([{body}])"

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def diagonal(self) -> RationalVector:
        return tuple(self.rows[i][i] for i in range(self.dim))

    def submatrix(self, keep: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self.rows[i][j] for j in keep] for i in keep])

    def to_int_rows(self) -> list[list[int]]:
        out = []
        for row in self.rows:
            if any(x.denominator != 1 for x in row):
                raise InvalidInput("matrix has non-integral entries")
            out.append([int(x) for x in row])
        return out


def _check_dim(n: int, v: Sequence) -> None:
    if len(v) != n:
        raise InvalidInput(f"dimension mismatch: {n} vs {len(v)}")


def dot(a: Sequence, b: Sequence) -> Fraction:
    _check_dim(len(a), b)
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def mat_vec(m: RationalMatrix, v: Sequence) -> RationalVector:
    _check_dim(m.dim, v)
    return tuple(dot(row, v) for row in m.rows)


def scale(c, v: Sequence) -> RationalVector:
    c = Fraction(c)
    return tuple(c * x for x in v)


def add(a: Sequence, b: Sequence) -> RationalVector:
    _check_dim(len(a), b)
    return tuple(Fraction(x) + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> RationalVector:
    _check_dim(len(a), b)
    return tuple(Fraction(x) - y for x, y in zip(a, b))


def quadratic_form(m: RationalMatrix, v: Sequence, w: Sequence) -> Fraction:
    """``v^T m w``."""
    return dot(v, mat_vec(m, w))


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = reduce(lcm, (x.denominator for x in row), 1)
    ints = [int(x * den) for x in row]
    return _primitive(ints)


def _primitive(row: list[int]) -> list[int]:
    c = reduce(gcd, row, 0)
    return [x // c for x in row] if c > 1 else row


def _gauss_jordan(rows: list[list[int]], ncols: int) -> list[int]:
    """Reduce ``rows`` in place over the first ``ncols`` columns.

    Returns the pivot columns; pivot row ``r`` has its pivot in ``pivots[r]``
    and zeros in every other pivot column.
    """
    pivots = []
    r = 0
    for c in range(ncols):
        src = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i, row in enumerate(rows):
            if i == r or row[c] == 0:
                continue
            f = row[c]
            rows[i] = _primitive([pv * x - f * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _normalize_direction(v: list[Fraction]) -> RationalVector:
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = _primitive([int(x * den) for x in v])
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def kernel_basis(m: RationalMatrix) -> list[RationalVector]:
    """Null space basis, one vector per free column in ascending order.

    Each vector is scaled to coprime integers with a positive first nonzero
    entry.
    """
    n = m.dim
    rows = [_integer_row(row) for row in m.rows]
    pivots = _gauss_jordan(rows, n)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = Fraction(-rows[r][f], rows[r][pc])
        basis.append(_normalize_direction(x))
    return basis


def rank(m: RationalMatrix) -> int:
    rows = [_integer_row(row) for row in m.rows]
    return len(_gauss_jordan(rows, m.dim))


def solve_singular(m: RationalMatrix, rhs: Sequence) -> RationalVector:
    """One exact solution of ``m x = rhs`` with every free variable set to 0.

    Raises :class:`NoSolution` when the system is inconsistent.  The returned
    vector is checked by substituting it back.
    """
    n = m.dim
    rhs = vector(rhs)
    _check_dim(n, rhs)
    rows = [_integer_row(list(row) + [b]) for row, b in zip(m.rows, rhs)]
    pivots = _gauss_jordan(rows, n)
    for row in rows[len(pivots):]:
        if row[n] != 0:
            raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = Fraction(rows[r][n], rows[r][pc])
    x = tuple(x)
    if mat_vec(m, x) != rhs:
        raise NoSolution("residual of the computed solution is not zero")
    return x
