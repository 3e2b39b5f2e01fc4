"""Verification of claimed Hermite computations.

A claim (A, U, H) passes when the product U*A reproduces H exactly, H has the
Hermite shape, U is unimodular, and the output degrees respect the bounds
``deg_D H <= n*d`` and ``deg_D U <= (n-1)*d`` where d is the largest entry
degree of A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

from .errors import RankDeficient, ShapeError
from .matrix_elim import OreMatrix, hermite_elimination, is_hermite, ore_mat_mul


@dataclass(frozen=True)
class VerificationReport:
    product_ok: bool
    shape_ok: bool
    unimodular_ok: bool
    degree_bounds_ok: bool
    details: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (self.product_ok and self.shape_ok
                and self.unimodular_ok and self.degree_bounds_ok)


def verify_hermite(a: OreMatrix, u: OreMatrix, h: OreMatrix) -> VerificationReport:
    """Check a claimed pair (U, H) against A; never raises on a bad claim."""
    details: Dict[str, str] = {}

    product_ok = False
    if u.rows == u.cols == a.rows and h.rows == a.rows and h.cols == a.cols:
        prod = ore_mat_mul(u, a)
        product_ok = prod == h
        if not product_ok:
            mismatch = next(
                (i, j)
                for i in range(a.rows)
                for j in range(a.cols)
                if prod.entries[i][j] != h.entries[i][j]
            )
            details["product"] = f"U*A differs from H at entry {mismatch}"
    else:
        details["product"] = "dimension mismatch between A, U, H"

    shape_ok = is_hermite(h)
    if not shape_ok:
        details["shape"] = "H is not upper triangular monic-diagonal reduced"

    try:
        unimodular_ok = hermite_elimination(u).H.is_identity
    except (RankDeficient, ShapeError) as exc:
        unimodular_ok = False
        details["unimodular"] = str(exc)
    else:
        if not unimodular_ok:
            details["unimodular"] = "Hermite form of U is not the identity"

    d = a.max_deg()
    n = a.rows
    degree_bounds_ok = True
    bad_h = [(i, j) for i in range(h.rows) for j in range(h.cols)
             if not h.entries[i][j].is_zero and h.entries[i][j].deg > n * d]
    bad_u = [(i, j) for i in range(u.rows) for j in range(u.cols)
             if not u.entries[i][j].is_zero and u.entries[i][j].deg > (n - 1) * d]
    if bad_h:
        degree_bounds_ok = False
        details["degrees"] = f"deg_D H{bad_h[0]} exceeds n*d = {n * d}"
    if bad_u:
        degree_bounds_ok = False
        details.setdefault(
            "degrees", f"deg_D U{bad_u[0]} exceeds (n-1)*d = {(n - 1) * d}"
        )

    return VerificationReport(product_ok, shape_ok, unimodular_ok,
                              degree_bounds_ok, details)
