"""Request and response models for the service endpoints.

The hole intensity is published under the JSON key "lambda" everywhere;
internally the models use the attribute name hole_intensity.
"""
from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class _Base(BaseModel):
    model_config = ConfigDict(populate_by_name=True)


class HealthResponse(_Base):
    status: str
    version: str


class TheoryRequest(_Base):
    beta: float = Field(gt=0)
    hole_intensity: float = Field(default=0.0, ge=0, alias="lambda")


class TheoryResponse(_Base):
    beta: float
    hole_intensity: float = Field(alias="lambda")
    F: float
    gamma: float
    rho: float
    zeta: float
    giant_length_density: float
    vertex_density: float
    edge_density: float


class OracleRequest(_Base):
    beta: float = Field(gt=0)
    hole_intensity: float = Field(default=0.0, ge=0, alias="lambda")
    trials: int = Field(default=100_000, ge=1)
    seed: int = 0
    max_generations: int = Field(default=60, ge=1)
    population_cap: int = Field(default=10**6, ge=1)


class OracleResponse(_Base):
    beta: float
    hole_intensity: float = Field(alias="lambda")
    trials: int
    gamma_mc: float
    stderr: float
    gamma_fp: float
    gamma_solver: float
    agree: bool
    cap_hits: int
    horizon_hits: int
    note: Optional[str] = None


class SimulateRequest(_Base):
    beta: float = Field(gt=0)
    hole_intensity: float = Field(default=0.0, ge=0, alias="lambda")
    n: list[int] = Field(min_length=1)
    replicates: int = Field(default=1, ge=1)
    seed: int = 0
    simplify: bool = True
    audit: bool = False
    threads: int = Field(default=1, ge=1)


class SimulateResponse(_Base):
    schema_version: int = Field(alias="schema")
    meta: dict
    theory: dict
    rows: list[dict]
    aggregates: list[dict]
    errors: list[str]
    violations: list[str]


class SweepRequest(_Base):
    beta_grid: list[float] = Field(min_length=1)
    lambda_grid: list[float] = Field(min_length=1)
    n: int = Field(ge=1)
    replicates: int = Field(default=1, ge=1)
    seed: int = 0
    threads: int = Field(default=1, ge=1)


class SweepResponse(_Base):
    schema_version: int = Field(alias="schema")
    meta: dict
    rows: list[dict]


class ErCheckRequest(_Base):
    beta: float = Field(gt=0)
    n: int = Field(ge=1)
    replicates: int = Field(default=1, ge=1)
    seed: int = 0
    threads: int = Field(default=1, ge=1)
    tol_floor: float = Field(default=0.01, gt=0)


class ErCheckResponse(_Base):
    schema_version: int = Field(alias="schema")
    meta: dict
    beta: float
    n: int
    replicates: int
    gamma_er: float
    mean_v_c1_over_n: float
    se_v_c1_over_n: Optional[float]
    abs_dev: float
    tolerance: float
    ok: bool


class ExportGraphRequest(_Base):
    beta: float = Field(gt=0)
    hole_intensity: float = Field(default=0.0, ge=0, alias="lambda")
    n: int = Field(ge=1)
    seed: int = 0
    audit: bool = False


class ExportGraphResponse(_Base):
    num_vertices: int
    num_edges_simple: int
    num_edges_multi: int
    excess_edges: int
    vertices: str
    edges: str
    components: str
    audit_points: Optional[str] = None
