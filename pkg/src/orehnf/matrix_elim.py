"""Matrices over F(t)[D;delta] and Hermite-form elimination.

The elimination drives a full-row-rank square matrix to upper triangular form
with 2x2 unimodular transforms built from GCRD/LCLM pairs, makes the diagonal
monic, reduces every off-diagonal entry modulo the diagonal below it, and
accumulates the whole unimodular left transform U so that ``U*A = H`` holds
exactly.
"""

from __future__ import annotations

import random
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import NotUnimodular, RankDeficient, ShapeError, ZeroOperand
from .field import Derivation, RatFun, Rat
from .ore import GcrdResult, OrePoly, gcrd_extended, lclm


class OreMatrix:
    """Immutable n x m grid of operators over a shared derivation."""

    __slots__ = ("rows", "cols", "entries", "derivation")

    def __init__(self, entries: Sequence[Sequence[OrePoly]]):
        rows = len(entries)
        if rows == 0 or len(entries[0]) == 0:
            raise ShapeError("matrix dimensions must be positive")
        cols = len(entries[0])
        deriv = entries[0][0].derivation
        grid = []
        for row in entries:
            if len(row) != cols:
                raise ShapeError("ragged rows")
            for e in row:
                e._check(entries[0][0])
            grid.append(tuple(row))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(grid))
        object.__setattr__(self, "derivation", deriv)

    def __setattr__(self, name, value):
        raise AttributeError("OreMatrix is immutable")

    @classmethod
    def identity(cls, n: int, derivation: Derivation) -> "OreMatrix":
        one = OrePoly.one(derivation)
        zero = OrePoly.zero(derivation)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: Tuple[int, int]) -> OrePoly:
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, OreMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __mul__(self, other: "OreMatrix") -> "OreMatrix":
        return ore_mat_mul(self, other)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        one = OrePoly.one(self.derivation)
        return all(
            e == one if i == j else e.is_zero
            for i, row in enumerate(self.entries)
            for j, e in enumerate(row)
        )

    def max_deg(self) -> int:
        """Largest D-degree over all entries (0 for an all-zero matrix)."""
        degs = [e.deg for row in self.entries for e in row if not e.is_zero]
        return int(max(degs)) if degs else 0

    def __str__(self) -> str:
        return "\n".join(" ; ".join(str(e) for e in row) for row in self.entries)

    def __repr__(self) -> str:
        return f"OreMatrix({self.rows}x{self.cols})"


def ore_mat_mul(a: OreMatrix, b: OreMatrix) -> OreMatrix:
    """Non-commutative matrix product; entry order is (a-entry)*(b-entry)."""
    if a.cols != b.rows:
        raise ShapeError(f"inner dimensions disagree: {a.cols} vs {b.rows}")
    zero = OrePoly.zero(a.derivation)
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = zero
            for k in range(a.cols):
                x = a.entries[i][k]
                y = b.entries[k][j]
                if not x.is_zero and not y.is_zero:
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return OreMatrix(out)


class HermiteResult(NamedTuple):
    """Unimodular transform U, Hermite form H with ``U*A = H``, and the
    D-degrees of H's diagonal.  ``probes`` counts consistency probes when the
    result came from the linear-system algorithm."""

    U: OreMatrix
    H: OreMatrix
    diag_degrees: Tuple[int, ...]
    probes: Optional[int] = None


def unimodular_2x2(a: OrePoly, b: OrePoly) -> Tuple[OreMatrix, OrePoly]:
    """2x2 unimodular W with ``W*(a, b)^T = (g, 0)^T`` and g = gcrd(a, b).

    Row one holds the extended-GCRD cofactors, row two the LCLM witnesses
    (which kill the pair).  Degenerate zero operands take the short forms.
    """
    a._check(b)
    deriv = a.derivation
    one = OrePoly.one(deriv)
    zero = OrePoly.zero(deriv)
    if a.is_zero and b.is_zero:
        raise ZeroOperand("gcrd transform of (0, 0)")
    if b.is_zero:
        inv = OrePoly.scalar(a.leading.inverse(), deriv)
        return OreMatrix([[inv, zero], [zero, one]]), a.monic()
    if a.is_zero:
        inv = OrePoly.scalar(b.leading.inverse(), deriv)
        return OreMatrix([[zero, inv], [one, zero]]), b.monic()
    g, u, v = gcrd_extended(a, b)
    _, s, tt = lclm(a, b)
    return OreMatrix([[u, v], [s, tt]]), g


def _apply_2x2(rows: List[List[OrePoly]], w: OreMatrix, p: int, i: int) -> None:
    """Replace rows p and i by the W-combination of the pair, in place."""
    u, v = w.entries[0]
    s, tt = w.entries[1]
    rp, ri = rows[p], rows[i]
    new_p = [u * x + v * y for x, y in zip(rp, ri)]
    new_i = [s * x + tt * y for x, y in zip(rp, ri)]
    rows[p], rows[i] = new_p, new_i


def _scale_row(rows: List[List[OrePoly]], i: int, c: RatFun) -> None:
    rows[i] = [e.left_scale(c) for e in rows[i]]


def _addmul_row(rows: List[List[OrePoly]], i: int, q: OrePoly, j: int) -> None:
    """row_i += q * row_j, in place."""
    rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]


def hermite_elimination(a: OreMatrix) -> HermiteResult:
    """Hermite form by unimodular Euclidean elimination.

    Walks the columns left to right.  At column k the candidate rows are those
    at or below the diagonal with a nonzero entry; the pivot is the candidate
    of minimal D-degree (ties: minimal t-degree, then lowest row index), and
    every other candidate is eliminated pairwise with a GCRD/LCLM transform.
    A column with no candidates witnesses a row dependency and aborts.

    Raises:
        ShapeError: if the matrix is not square.
        RankDeficient: if the rows are dependent over the operator ring.
    """
    if not a.is_square:
        raise ShapeError("Hermite elimination requires a square matrix")
    n = a.rows
    deriv = a.derivation
    h = [list(row) for row in a.entries]
    u = [list(row) for row in OreMatrix.identity(n, deriv).entries]

    for k in range(n):
        candidates = [i for i in range(k, n) if not h[i][k].is_zero]
        if not candidates:
            raise RankDeficient(
                f"rows {k + 1}..{n} are dependent: column {k + 1} vanished"
            )
        pivot = min(candidates, key=lambda i: (h[i][k].deg, h[i][k].deg_t, i))
        for i in candidates:
            if i == pivot:
                continue
            w, _ = unimodular_2x2(h[pivot][k], h[i][k])
            _apply_2x2(h, w, pivot, i)
            _apply_2x2(u, w, pivot, i)
        if pivot != k:
            h[pivot], h[k] = h[k], h[pivot]
            u[pivot], u[k] = u[k], u[pivot]
        lead = h[k][k].leading
        if lead != RatFun.const(1):
            inv = lead.inverse()
            _scale_row(h, k, inv)
            _scale_row(u, k, inv)

    _reduce_off_diagonal(h, u)
    diag = tuple(int(h[i][i].deg) for i in range(n))
    return HermiteResult(OreMatrix(u), OreMatrix(h), diag)


def _reduce_off_diagonal(h: List[List[OrePoly]], u: List[List[OrePoly]]) -> None:
    """Reduce every above-diagonal entry modulo the diagonal below it."""
    n = len(h)
    for j in range(n):
        for i in range(j):
            q, _ = h[i][j].right_divrem(h[j][j])
            if q.is_zero:
                continue
            _addmul_row(h, i, -q, j)
            _addmul_row(u, i, -q, j)


def off_diagonal_reduce(h: OreMatrix, u: OreMatrix) -> Tuple[OreMatrix, OreMatrix]:
    """Remainder-reduce the strict upper triangle of h, mirroring row
    operations into the transform u."""
    hh = [list(row) for row in h.entries]
    uu = [list(row) for row in u.entries]
    _reduce_off_diagonal(hh, uu)
    return OreMatrix(hh), OreMatrix(uu)


def is_hermite(h: OreMatrix) -> bool:
    """True iff upper triangular with monic diagonal and every off-diagonal
    entry of D-degree strictly below the diagonal entry in its column."""
    if not h.is_square:
        return False
    one = RatFun.const(1)
    for i in range(h.rows):
        for j in range(h.cols):
            e = h.entries[i][j]
            if i == j:
                if e.is_zero or e.leading != one:
                    return False
            elif i > j:
                if not e.is_zero:
                    return False
            else:
                if e.deg >= h.entries[j][j].deg:
                    return False
    return True


def inverse_unimodular(u: OreMatrix) -> OreMatrix:
    """Two-sided inverse of a unimodular matrix.

    Eliminates u to the identity; the accumulated transform is the inverse.
    """
    try:
        res = hermite_elimination(u)
    except RankDeficient as exc:
        raise NotUnimodular(str(exc)) from exc
    if not res.H.is_identity:
        raise NotUnimodular("Hermite form of the matrix is not the identity")
    return res.U


def random_unimodular(
    n: int,
    steps: int,
    seed: int,
    derivation: Derivation = Derivation.STANDARD,
) -> OreMatrix:
    """Reproducible product of random elementary row operations.

    Each step is one of: a transvection adding a random low-degree operator
    multiple of one row to another, a row swap, or a unit (degree-0) scaling.
    Unimodular by construction.
    """
    if n < 1:
        raise ShapeError("n must be positive")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    rows = [list(row) for row in OreMatrix.identity(n, derivation).entries]
    for _ in range(steps):
        kind = rng.choice(("transvect", "swap", "scale")) if n > 1 else "scale"
        if kind == "transvect":
            i, j = rng.sample(range(n), 2)
            f = random_ore_poly(rng, derivation, max_deg_d=1, max_deg_t=1)
            if not f.is_zero:
                _addmul_row(rows, i, f, j)
        elif kind == "swap":
            i, j = rng.sample(range(n), 2)
            rows[i], rows[j] = rows[j], rows[i]
        else:
            i = rng.randrange(n)
            c = random_unit(rng, max_deg_t=1)
            _scale_row(rows, i, c)
    return OreMatrix(rows)


def random_rat(rng: random.Random, bound: int = 3) -> Rat:
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Rat(num, den)


def random_ratfun(rng: random.Random, max_deg_t: int = 2, denominators: bool = False) -> RatFun:
    from .field import TPoly

    num = TPoly([random_rat(rng) for _ in range(rng.randint(0, max_deg_t) + 1)])
    if not denominators:
        return RatFun(num)
    dd = rng.randint(0, max_deg_t)
    den = TPoly([random_rat(rng) for _ in range(dd)] + [1])
    return RatFun(num, den)


def random_unit(rng: random.Random, max_deg_t: int = 1) -> RatFun:
    while True:
        c = random_ratfun(rng, max_deg_t, denominators=rng.random() < 0.3)
        if not c.is_zero:
            return c


def random_ore_poly(
    rng: random.Random,
    derivation: Derivation,
    max_deg_d: int = 2,
    max_deg_t: int = 2,
    denominators: bool = False,
) -> OrePoly:
    d = rng.randint(0, max_deg_d)
    coeffs = [random_ratfun(rng, max_deg_t, denominators) for _ in range(d + 1)]
    return OrePoly(coeffs, derivation)


def random_matrix(
    rng: random.Random,
    n: int,
    derivation: Derivation = Derivation.STANDARD,
    max_deg_d: int = 2,
    max_deg_t: int = 2,
    denominators: bool = False,
) -> OreMatrix:
    return OreMatrix(
        [
            [
                random_ore_poly(rng, derivation, max_deg_d, max_deg_t, denominators)
                for _ in range(n)
            ]
            for _ in range(n)
        ]
    )


def random_full_rank_matrix(
    rng: random.Random,
    n: int,
    derivation: Derivation = Derivation.STANDARD,
    max_deg_d: int = 2,
    max_deg_t: int = 2,
    denominators: bool = False,
) -> OreMatrix:
    """Rejection-sample a matrix whose elimination succeeds (full row rank)."""
    while True:
        m = random_matrix(rng, n, derivation, max_deg_d, max_deg_t, denominators)
        try:
            hermite_elimination(m)
        except RankDeficient:
            continue
        return m
