"""HTTP service wrapping the core package.

FastAPI endpoints mirror the CLI commands; matrices travel as JSON documents
whose entries are exact expression strings, so no value is ever laundered
through a float.  Run with ``python -m orehnf.service`` or point uvicorn at
``orehnf.service:app``.
"""

from __future__ import annotations

import random
from typing import Dict, List, Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .errors import NotCleared, ParseError, RankDeficient, ShapeError
from .field import Derivation
from .cli import run_hermite
from .matrix_elim import OreMatrix, ore_mat_mul, random_full_rank_matrix, random_unimodular
from .parsing import parse_entry, print_entry
from .verify import verify_hermite


class MatrixDoc(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    derivation: Literal["standard", "euler"] = "standard"
    entries: List[List[str]]

    def to_matrix(self) -> OreMatrix:
        deriv = Derivation(self.derivation)
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ParseError("entry grid does not match declared dimensions")
        grid = [
            [parse_entry(cell, deriv, line=i + 1) for cell in row]
            for i, row in enumerate(self.entries)
        ]
        return OreMatrix(grid)

    @classmethod
    def from_matrix(cls, m: OreMatrix) -> "MatrixDoc":
        return cls(
            rows=m.rows,
            cols=m.cols,
            derivation=m.derivation.value,
            entries=[[print_entry(e) for e in row] for row in m.entries],
        )


class ReportDoc(BaseModel):
    product_ok: bool
    shape_ok: bool
    unimodular_ok: bool
    degree_bounds_ok: bool
    passed: bool
    details: Dict[str, str]


class HermiteRequest(BaseModel):
    matrix: MatrixDoc
    algorithm: Literal["elim", "linsys"] = "elim"
    emit: Literal["h", "u", "both"] = "both"
    verify: bool = False
    jobs: int = Field(default=1, ge=1)


class HermiteResponse(BaseModel):
    h: Optional[MatrixDoc] = None
    u: Optional[MatrixDoc] = None
    diag_degrees: List[int]
    probes: Optional[int] = None
    report: Optional[ReportDoc] = None


class CheckRequest(BaseModel):
    a: MatrixDoc
    u: MatrixDoc
    h: MatrixDoc


class RandomRequest(BaseModel):
    n: int = Field(ge=1)
    deg_d: int = Field(default=1, ge=0)
    deg_t: int = Field(default=1, ge=0)
    seed: int
    unimodular_steps: int = Field(default=0, ge=0)


app = FastAPI(
    title="orehnf",
    description="Hermite normal forms of matrices of differential operators over Q(t)",
)


def _parse_doc(doc: MatrixDoc) -> OreMatrix:
    try:
        return doc.to_matrix()
    except ParseError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/hermite", response_model=HermiteResponse)
def hermite(req: HermiteRequest) -> HermiteResponse:
    a = _parse_doc(req.matrix)
    if not a.is_square:
        raise HTTPException(status_code=422, detail="matrix must be square")
    try:
        result = run_hermite(a, req.algorithm, req.jobs)
    except (RankDeficient, NotCleared, ShapeError) as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    report = None
    if req.verify:
        r = verify_hermite(a, result.U, result.H)
        report = ReportDoc(
            product_ok=r.product_ok,
            shape_ok=r.shape_ok,
            unimodular_ok=r.unimodular_ok,
            degree_bounds_ok=r.degree_bounds_ok,
            passed=r.passed,
            details=dict(r.details),
        )
    return HermiteResponse(
        h=MatrixDoc.from_matrix(result.H) if req.emit in ("h", "both") else None,
        u=MatrixDoc.from_matrix(result.U) if req.emit in ("u", "both") else None,
        diag_degrees=list(result.diag_degrees),
        probes=result.probes,
        report=report,
    )


@app.post("/check", response_model=ReportDoc)
def check(req: CheckRequest) -> ReportDoc:
    a = _parse_doc(req.a)
    u = _parse_doc(req.u)
    h = _parse_doc(req.h)
    if u.derivation is not a.derivation or h.derivation is not a.derivation:
        raise HTTPException(status_code=400, detail="derivation tags disagree")
    report = verify_hermite(a, u, h)
    return ReportDoc(
        product_ok=report.product_ok,
        shape_ok=report.shape_ok,
        unimodular_ok=report.unimodular_ok,
        degree_bounds_ok=report.degree_bounds_ok,
        passed=report.passed,
        details=dict(report.details),
    )


@app.post("/random", response_model=MatrixDoc)
def random_instance(req: RandomRequest) -> MatrixDoc:
    rng = random.Random(req.seed)
    a = random_full_rank_matrix(
        rng, req.n, Derivation.STANDARD,
        max_deg_d=req.deg_d, max_deg_t=req.deg_t,
    )
    if req.unimodular_steps > 0:
        m = random_unimodular(req.n, req.unimodular_steps, req.seed)
        a = ore_mat_mul(m, a)
    return MatrixDoc.from_matrix(a)


def serve(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    serve()
