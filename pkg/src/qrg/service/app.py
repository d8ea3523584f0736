"""FastAPI application exposing the core operations."""
from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError

from .. import __version__
from . import ops, schemas

app = FastAPI(title="qrg", version=__version__)


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/theory", response_model=schemas.TheoryResponse)
def theory_endpoint(req: schemas.TheoryRequest) -> schemas.TheoryResponse:
    return _guard(ops.run_theory, req)


@app.post("/oracle", response_model=schemas.OracleResponse)
def oracle_endpoint(req: schemas.OracleRequest) -> schemas.OracleResponse:
    return _guard(ops.run_oracle, req)


@app.post("/simulate", response_model=schemas.SimulateResponse)
def simulate_endpoint(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    return _guard(ops.run_simulate, req)


@app.post("/sweep", response_model=schemas.SweepResponse)
def sweep_endpoint(req: schemas.SweepRequest) -> schemas.SweepResponse:
    return _guard(ops.run_sweep, req)


@app.post("/er-check", response_model=schemas.ErCheckResponse)
def er_check_endpoint(req: schemas.ErCheckRequest) -> schemas.ErCheckResponse:
    return _guard(ops.run_er_check, req)


@app.post("/export-graph", response_model=schemas.ExportGraphResponse)
def export_graph_endpoint(req: schemas.ExportGraphRequest) -> schemas.ExportGraphResponse:
    return _guard(ops.run_export_graph, req)


def _guard(fn, req):
    # domain errors the pydantic validators cannot see (e.g. n < 1 combined
    # with other fields) surface as 400s instead of tracebacks
    try:
        return fn(req)
    except (ValueError, RequestValidationError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
