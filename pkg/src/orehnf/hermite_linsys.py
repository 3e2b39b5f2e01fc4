"""Hermite forms via linear systems over Q(t).

The operator equation ``P*A = G`` (with G upper triangular, monic diagonal of
prescribed degrees, and reduced off-diagonals) linearizes over the commutative
field Q(t): stacking the D-coefficient rows of ``D^l * A[j][k]`` into a block
matrix turns the unknown operator coefficients of P and G into a plain linear
system.  Consistency of that system, as the prescribed diagonal degrees vary,
characterizes the true Hermite diagonal degrees, which a per-diagonal binary
search discovers; solving once at the discovered degrees yields U and H.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotCleared, RankDeficient, ShapeError
from .field import RF_ZERO, Derivation, RatFun, TPoly, TP_ONE, poly_lcm
from .ftlinalg import FtMatrix, solve
from .matrix_elim import HermiteResult, OreMatrix, is_hermite, ore_mat_mul
from .ore import OrePoly

DegreeProfile = Tuple[int, ...]


def _row_multipliers(a: OreMatrix) -> List[TPoly]:
    """Per-row LCM of all coefficient denominators (monic)."""
    out = []
    for row in a.entries:
        lcm = TP_ONE
        for entry in row:
            for c in entry.coeffs:
                if c.den.degree > 0:
                    lcm = poly_lcm(lcm, c.den)
        out.append(lcm)
    return out


def clear_denominators(a: OreMatrix) -> OreMatrix:
    """Scale each row on the left by the LCM of its denominators.

    The scaling is unimodular over F(t)[D;delta], so the Hermite form is
    unchanged; afterwards every coefficient lies in Q[t].
    """
    mults = _row_multipliers(a)
    if all(m == TP_ONE for m in mults):
        return a
    rows = []
    for row, m in zip(a.entries, mults):
        c = RatFun(m)
        rows.append([e.left_scale(c) for e in row])
    return OreMatrix(rows)


@dataclass(frozen=True)
class EncodedSystem:
    """The linearization of ``P*A = G`` at one degree profile.

    ``ahat`` stacks, for each entry (j, k) of A, the (beta+1) coefficient rows
    of ``D^l * A[j][k]`` as a block; it has shape n(beta+1) x n(beta+d+1).
    ``pinned`` holds the G coefficients forced by triangularity, monicity and
    the degree caps; the remaining G slots are unknowns appended after the P
    unknowns in the variable order.
    """

    n: int
    deg_d: int
    beta: int
    profile: DegreeProfile
    derivation: Derivation
    ahat: FtMatrix
    g_cols: Dict[Tuple[int, int, int], int]
    pinned: Dict[Tuple[int, int, int], int]

    @property
    def p_count(self) -> int:
        return self.n * self.n * (self.beta + 1)

    @property
    def unknown_count(self) -> int:
        return self.p_count + len(self.g_cols)

    def p_col(self, i: int, j: int, l: int) -> int:
        return (i * self.n + j) * (self.beta + 1) + l


def build_system(a: OreMatrix, profile: Sequence[int]) -> EncodedSystem:
    """Encode ``P*A = G`` over Q(t) for the given diagonal degree profile.

    Requires a square matrix with polynomial coefficients.  The profile must
    stay within ``[0, n*d]``, the cap on Hermite diagonal degrees.

    Raises:
        NotCleared: if some coefficient has a nontrivial denominator.
        ShapeError: if the matrix is not square.
        ValueError: if the profile has the wrong length or is out of range.
    """
    if not a.is_square:
        raise ShapeError("degree encoding requires a square matrix")
    n = a.rows
    for i, row in enumerate(a.entries):
        for j, e in enumerate(row):
            for c in e.coeffs:
                if not c.is_polynomial:
                    raise NotCleared(
                        f"entry ({i + 1},{j + 1}) has denominator {c.den}"
                    )
    profile = tuple(int(x) for x in profile)
    if len(profile) != n:
        raise ValueError(f"profile length {len(profile)} != n = {n}")
    d = a.max_deg()
    cap = n * d
    if any(x < 0 or x > cap for x in profile):
        raise ValueError(f"profile {profile} outside [0, {cap}]")
    beta = (n - 1) * d + max(profile)
    mu = beta + d

    blocks = {}
    for j in range(n):
        for k in range(n):
            e = a.entries[j][k]
            shifts = [e] + (e.shift_powers(beta) if beta >= 1 else [])
            blocks[(j, k)] = shifts
    ahat_rows = []
    for j in range(n):
        for l in range(beta + 1):
            row = []
            for k in range(n):
                s = blocks[(j, k)][l]
                row.extend(s.coeff(m) for m in range(mu + 1))
            ahat_rows.append(row)
    ahat = FtMatrix(ahat_rows)

    g_cols: Dict[Tuple[int, int, int], int] = {}
    pinned: Dict[Tuple[int, int, int], int] = {}
    p_count = n * n * (beta + 1)
    for i in range(n):
        for k in range(n):
            for m in range(mu + 1):
                if k < i:
                    pinned[(i, k, m)] = 0
                elif k == i:
                    if m < profile[i]:
                        g_cols[(i, k, m)] = p_count + len(g_cols)
                    elif m == profile[i]:
                        pinned[(i, k, m)] = 1
                    else:
                        pinned[(i, k, m)] = 0
                else:
                    if m < profile[k]:
                        g_cols[(i, k, m)] = p_count + len(g_cols)
                    else:
                        pinned[(i, k, m)] = 0
    return EncodedSystem(
        n=n,
        deg_d=d,
        beta=beta,
        profile=profile,
        derivation=a.derivation,
        ahat=ahat,
        g_cols=g_cols,
        pinned=pinned,
    )


def system_equations(sys: EncodedSystem) -> Tuple[FtMatrix, List[RatFun]]:
    """Materialize the encoded system as ``M*x = b`` over Q(t).

    Unknown order: all P coefficients row-major by (i, j) and ascending
    D-power, then the unknown G coefficients.  One equation per G slot.
    """
    n, beta, d = sys.n, sys.beta, sys.deg_d
    mu = beta + d
    width = sys.unknown_count
    one = RatFun.const(1)
    rows: List[List[RatFun]] = []
    rhs: List[RatFun] = []
    for i in range(n):
        for k in range(n):
            for m in range(mu + 1):
                row = [RF_ZERO] * width
                for j in range(n):
                    base_r = j * (beta + 1)
                    base_c = k * (mu + 1) + m
                    for l in range(beta + 1):
                        v = sys.ahat.entries[base_r + l][base_c]
                        if not v.is_zero:
                            row[sys.p_col(i, j, l)] = v
                slot = (i, k, m)
                if slot in sys.g_cols:
                    row[sys.g_cols[slot]] = -one
                    rhs.append(RF_ZERO)
                else:
                    rhs.append(RatFun.const(sys.pinned[slot]))
                rows.append(row)
    return FtMatrix(rows), rhs


def _pinned_equations(sys: EncodedSystem) -> Tuple[FtMatrix, List[RatFun]]:
    """The constraining subsystem in the P unknowns alone.

    Equations for unknown G slots only define those slots from P and are
    always satisfiable, so solvability of the full system is equivalent to
    solvability of the pinned-slot equations; a probe needs nothing more.
    """
    n, beta, d = sys.n, sys.beta, sys.deg_d
    mu = beta + d
    width = sys.p_count
    rows: List[List[RatFun]] = []
    rhs: List[RatFun] = []
    for i in range(n):
        for k in range(n):
            for m in range(mu + 1):
                slot = (i, k, m)
                if slot in sys.g_cols:
                    continue
                row = [RF_ZERO] * width
                for j in range(n):
                    base_r = j * (beta + 1)
                    base_c = k * (mu + 1) + m
                    for l in range(beta + 1):
                        v = sys.ahat.entries[base_r + l][base_c]
                        if not v.is_zero:
                            row[sys.p_col(i, j, l)] = v
                rows.append(row)
                rhs.append(RatFun.const(sys.pinned[slot]))
    return FtMatrix(rows), rhs


def decode_solution(
    sys: EncodedSystem, x: Sequence[RatFun]
) -> Tuple[OreMatrix, OreMatrix]:
    """Rebuild the operator matrices (P, G) from a solution vector."""
    n, beta, d = sys.n, sys.beta, sys.deg_d
    mu = beta + d
    deriv = sys.derivation
    p_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [x[sys.p_col(i, j, l)] for l in range(beta + 1)]
            row.append(OrePoly(coeffs, deriv))
        p_rows.append(row)
    g_rows = []
    for i in range(n):
        row = []
        for k in range(n):
            coeffs = []
            for m in range(mu + 1):
                slot = (i, k, m)
                if slot in sys.g_cols:
                    coeffs.append(x[sys.g_cols[slot]])
                else:
                    coeffs.append(RatFun.const(sys.pinned[slot]))
            row.append(OrePoly(coeffs, deriv))
        g_rows.append(row)
    return OreMatrix(p_rows), OreMatrix(g_rows)


def probe_consistent(a: OreMatrix, profile: Sequence[int]) -> bool:
    """True iff ``P*A = G`` is solvable at this diagonal degree profile."""
    sys = build_system(a, profile)
    m, b = _pinned_equations(sys)
    return solve(m, b).consistent


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 1 else 0


def probe_budget(n: int, d: int) -> int:
    """Upper bound on consistency probes for the degree search."""
    return n * (_ceil_log2(n * d + 1) + 1)


def _search_degrees_counted(
    a: OreMatrix, jobs: int = 1
) -> Tuple[DegreeProfile, int]:
    n = a.rows
    d = a.max_deg()
    cap = n * d
    # One shared probe at the all-cap profile doubles as the rank check.
    if not probe_consistent(a, (cap,) * n):
        raise RankDeficient("no Hermite form within the degree cap: "
                            "the matrix does not have full row rank")
    probes = 1

    def search_one(i: int) -> Tuple[int, int]:
        lo, hi, used = 0, cap, 0
        while lo < hi:
            mid = (lo + hi) // 2
            prof = [cap] * n
            prof[i] = mid
            used += 1
            if probe_consistent(a, prof):
                hi = mid
            else:
                lo = mid + 1
        return lo, used

    results: List[Optional[int]] = [None] * n
    if jobs > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=min(jobs, n)) as pool:
            for i, (h, used) in enumerate(pool.map(search_one, range(n))):
                results[i] = h
                probes += used
    else:
        for i in range(n):
            h, used = search_one(i)
            results[i] = h
            probes += used
    return tuple(results), probes


def search_degrees(a: OreMatrix, jobs: int = 1) -> DegreeProfile:
    """Exact diagonal D-degrees of the Hermite form, by binary search.

    Each diagonal is searched independently over ``[0, n*d]`` with every other
    diagonal held at the cap.

    Raises:
        RankDeficient: if no profile within the cap is consistent.
    """
    profile, _ = _search_degrees_counted(a, jobs)
    return profile


def hermite_via_linsys(a: OreMatrix, jobs: int = 1) -> HermiteResult:
    """Hermite form and transform through the linear-system reduction.

    Clears denominators (a unimodular row scaling), discovers the diagonal
    degrees, solves the encoded system at the minimal profile, and decodes
    (U, H).  The contract ``U*A = H`` is re-verified by exact operator
    multiplication before returning.
    """
    if not a.is_square:
        raise ShapeError("Hermite form requires a square matrix")
    mults = _row_multipliers(a)
    cleared = clear_denominators(a)
    profile, probes = _search_degrees_counted(cleared, jobs)
    sys = build_system(cleared, profile)
    m, b = system_equations(sys)
    out = solve(m, b)
    if not out.consistent:  # cannot happen once the degree search succeeded
        raise RankDeficient("system inconsistent at the discovered profile")
    p, g = decode_solution(sys, out.solution)
    if all(mlt == TP_ONE for mlt in mults):
        u = p
    else:
        scalars = [OrePoly.scalar(RatFun(mlt), a.derivation) for mlt in mults]
        u = OreMatrix(
            [[p.entries[i][j] * scalars[j] for j in range(a.rows)]
             for i in range(a.rows)]
        )
    if ore_mat_mul(u, a) != g or not is_hermite(g):
        raise RuntimeError("decoded transform failed re-verification")
    return HermiteResult(u, g, profile, probes)
