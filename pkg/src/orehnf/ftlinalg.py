"""Dense exact linear algebra over the rational function field Q(t).

Gaussian elimination with exact division.  The pivot in each column is the
candidate entry of minimal t-degree (ties: topmost row), which keeps the
degrees of intermediate fractions down.  Row updates skip zero entries, so
block-structured systems cost roughly the sum of their blocks.
"""

from __future__ import annotations

from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import ShapeError
from .field import RF_ZERO, RatFun


class FtMatrix:
    """Immutable grid of rational functions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[RatFun]]):
        rows = len(entries)
        if rows == 0 or len(entries[0]) == 0:
            raise ShapeError("matrix dimensions must be positive")
        cols = len(entries[0])
        grid = []
        for row in entries:
            if len(row) != cols:
                raise ShapeError("ragged rows")
            grid.append(tuple(e if isinstance(e, RatFun) else RatFun.const(e) for e in row))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(grid))

    def __setattr__(self, name, value):
        raise AttributeError("FtMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "FtMatrix":
        one = RatFun.const(1)
        return cls([[one if i == j else RF_ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: Tuple[int, int]) -> RatFun:
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FtMatrix):
            return NotImplemented
        return self.entries == other.entries

    def transpose(self) -> "FtMatrix":
        return FtMatrix([list(col) for col in zip(*self.entries)])

    def mat_vec(self, x: Sequence[RatFun]) -> List[RatFun]:
        if len(x) != self.cols:
            raise ShapeError("vector length does not match column count")
        out = []
        for row in self.entries:
            acc = RF_ZERO
            for c, v in zip(row, x):
                if c and v:
                    acc = acc + c * v
            out.append(acc)
        return out

    def __repr__(self) -> str:
        return f"FtMatrix({self.rows}x{self.cols})"


class SolveOutcome(NamedTuple):
    """Result of an exact linear solve."""

    consistent: bool
    solution: Optional[Tuple[RatFun, ...]]
    pivot_columns: Tuple[int, ...]


def _echelon(rows: List[List[RatFun]], lhs_cols: int) -> List[int]:
    """In-place row echelon reduction of an augmented matrix.

    Only the first ``lhs_cols`` columns are eligible as pivots.  Returns the
    pivot column indices in order.
    """
    nrows = len(rows)
    total = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(lhs_cols):
        if r >= nrows:
            break
        best = -1
        best_key = None
        for i in range(r, nrows):
            e = rows[i][c]
            if e.is_zero:
                continue
            key = e.deg_t
            if best_key is None or key < best_key:
                best, best_key = i, key
        if best < 0:
            continue
        if best != r:
            rows[best], rows[r] = rows[r], rows[best]
        prow = rows[r]
        piv = prow[c]
        if not (piv.num.degree == 0 and piv.den.degree == 0
                and piv.num.leading == 1):
            inv = piv.inverse()
            for j in range(c + 1, total):
                if not prow[j].is_zero:
                    prow[j] = prow[j] * inv
            prow[c] = RatFun.const(1)
        pnz = [(j, prow[j]) for j in range(c + 1, total) if not prow[j].is_zero]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f.is_zero:
                continue
            irow = rows[i]
            for j, v in pnz:
                irow[j] = irow[j] - f * v
            irow[c] = RF_ZERO  # cancels exactly; skip the gcd work
        pivots.append(c)
        r += 1
    return pivots


def solve(m: FtMatrix, b: Sequence[RatFun]) -> SolveOutcome:
    """Solve ``m @ x = b`` exactly; free variables are fixed to zero.

    Returns an inconsistent outcome (no solution) when the system has none.
    """
    if len(b) != m.rows:
        raise ShapeError("right-hand side length does not match row count")
    rows = [list(row) + [b[i] if isinstance(b[i], RatFun) else RatFun.const(b[i])]
            for i, row in enumerate(m.entries)]
    pivots = _echelon(rows, m.cols)
    rank = len(pivots)
    for i in range(rank, m.rows):
        if not rows[i][m.cols].is_zero:
            return SolveOutcome(False, None, tuple(pivots))
    x: List[RatFun] = [RF_ZERO] * m.cols
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        acc = rows[r][m.cols]
        row = rows[r]
        for j in range(c + 1, m.cols):
            if not row[j].is_zero and not x[j].is_zero:
                acc = acc - row[j] * x[j]
        x[c] = acc  # pivot entries were normalized to 1 during elimination
    return SolveOutcome(True, tuple(x), tuple(pivots))


def rank(m: FtMatrix) -> int:
    """Rank over Q(t)."""
    rows = [list(row) for row in m.entries]
    return len(_echelon(rows, m.cols))
