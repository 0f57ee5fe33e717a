"""HTTP service exposing the library operations.

Run with:  uvicorn graphreg.service:app

Request bodies carry matrices as row-lists of integers; certificates,
witnesses, and grids use the same JSON shapes as the on-disk formats.
Domain errors (bad colorings, dimension mismatches, budget violations)
come back as 400 with a detail message.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import ops
from .ratmath import DimensionError, IntMatrix
from .serialize import certificate_from_json

app = FastAPI(
    title="graphreg",
    description="Graph-regularity certificates, colorings, and witness "
                "searches over exact arithmetic.",
    version="0.1.0",
)


class MatrixPayload(BaseModel):
    matrix: list[list[int]] = Field(..., description="row-major integer matrix")

    def to_matrix(self) -> IntMatrix:
        try:
            return IntMatrix(self.matrix)
        except DimensionError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc


class AnalyzeRequest(MatrixPayload):
    t_max: Optional[int] = None


class VerifyRequest(MatrixPayload):
    certificate: dict
    flavor: Optional[str] = None


class SearchRequest(MatrixPayload):
    coloring: str
    N: int = Field(..., ge=1)
    hyper: bool = False


class GridRequest(MatrixPayload):
    coloring: str
    Q: int = Field(..., ge=1)
    budget: Optional[int] = None


class ReduceRequest(MatrixPayload):
    emit_c: bool = False
    sigma: Optional[list[int]] = None  # 1-based


class ColorRequest(BaseModel):
    coloring: str
    points: list[int]


class ThresholdRequest(MatrixPayload):
    colors: int = Field(..., ge=1)
    n_max: int = Field(..., ge=1, le=7)


class AnalyzeResponse(BaseModel):
    schema_: int = Field(alias="schema")
    classification: str
    sum_to_zero: bool
    zero_sum_partition: Optional[list[int]]
    evidence: str
    certificate: Optional[dict]
    wgcc_certificate: Optional[dict]

    model_config = {"populate_by_name": True}


class VerifyResponse(BaseModel):
    schema_: int = Field(alias="schema")
    accepted: bool
    flavor: str
    violations: list[str]

    model_config = {"populate_by_name": True}


class SearchResponse(BaseModel):
    schema_: int = Field(alias="schema")
    N: int
    coloring: str
    witness: Optional[dict]
    avoided: bool

    model_config = {"populate_by_name": True}


class GridResponse(BaseModel):
    schema_: int = Field(alias="schema")
    Q: int
    coloring: str
    stage: Optional[str]
    reason: str
    witness: Optional[dict]
    grid: Optional[dict]
    certificate: Optional[dict]

    model_config = {"populate_by_name": True}


class ReduceResponse(BaseModel):
    schema_: int = Field(alias="schema")
    certificate: Optional[dict] = None
    n: Optional[int] = None
    pairs: Optional[list[list[int]]] = None
    matrix: Optional[str] = None

    model_config = {"populate_by_name": True}


class ColorResponse(BaseModel):
    schema_: int = Field(alias="schema")
    coloring: str
    points: list[int]
    color: str

    model_config = {"populate_by_name": True}


class ThresholdResponse(BaseModel):
    schema_: int = Field(alias="schema")
    colors: int
    entries: list[dict]

    model_config = {"populate_by_name": True}


def _domain(call, *args, **kwargs):
    try:
        return call(*args, **kwargs)
    except (ValueError, DimensionError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "schema": ops.SCHEMA}


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(req: AnalyzeRequest):
    return _domain(ops.op_analyze, req.to_matrix(), t_max=req.t_max)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest):
    cert = _domain(certificate_from_json, req.certificate)
    return _domain(ops.op_verify, req.to_matrix(), cert, req.flavor)


@app.post("/search", response_model=SearchResponse)
def search(req: SearchRequest):
    return _domain(ops.op_search, req.to_matrix(), req.coloring, req.N,
                   hyper=req.hyper)


@app.post("/grid", response_model=GridResponse)
def grid(req: GridRequest):
    return _domain(ops.op_grid, req.to_matrix(), req.coloring, req.Q,
                   budget=req.budget)


@app.post("/reduce", response_model=ReduceResponse)
def reduce(req: ReduceRequest):
    sigma = [s - 1 for s in req.sigma] if req.sigma else None
    return _domain(ops.op_reduce, req.to_matrix(), emit_c=req.emit_c,
                   sigma=sigma)


@app.post("/color", response_model=ColorResponse)
def color(req: ColorRequest):
    return _domain(ops.op_color, req.coloring, req.points)


@app.post("/threshold", response_model=ThresholdResponse)
def threshold(req: ThresholdRequest):
    return _domain(ops.op_threshold, req.to_matrix(), req.colors, req.n_max)
