"""Service operations: the bridge between request models and the core API.

The CLI calls these directly in its default in-process mode; the FastAPI app
wraps the same functions, so both dispatch paths produce identical results.
"""
from __future__ import annotations

from .. import branching, ensemble, theory
from ..components import components as graph_components
from ..components import format_component_table
from ..params import ModelParams
from ..sampler import build_graph, format_edge_list, format_vertex_table
from . import schemas


def run_theory(req: schemas.TheoryRequest) -> schemas.TheoryResponse:
    pred = theory.predictions(req.beta, req.hole_intensity)
    return schemas.TheoryResponse(**pred.as_dict())


def run_oracle(req: schemas.OracleRequest) -> schemas.OracleResponse:
    cfg = branching.GWConfig(
        beta=req.beta,
        hole_intensity=req.hole_intensity,
        trials=req.trials,
        max_generations=req.max_generations,
        population_cap=req.population_cap,
    )
    mc = branching.gw_survival_mc(cfg, req.seed)
    fp = branching.extinction_fixed_point(req.beta, req.hole_intensity)
    solver = theory.solve_gamma(req.beta, req.hole_intensity)
    agree = abs(mc.estimate - solver) <= 3.0 * mc.stderr
    return schemas.OracleResponse(
        beta=req.beta,
        hole_intensity=req.hole_intensity,
        trials=req.trials,
        gamma_mc=mc.estimate,
        stderr=mc.stderr,
        gamma_fp=fp,
        gamma_solver=solver,
        agree=agree,
        cap_hits=mc.cap_hits,
        horizon_hits=mc.horizon_hits,
        note=mc.note,
    )


def simulate_report(req: schemas.SimulateRequest) -> ensemble.EnsembleReport:
    cfg = ensemble.ExperimentConfig(
        beta=req.beta,
        hole_intensity=req.hole_intensity,
        n_schedule=tuple(req.n),
        replicates=req.replicates,
        master_seed=req.seed,
        simplify=req.simplify,
        audit=req.audit,
        threads=req.threads,
    )
    return ensemble.run_ensemble(cfg)


def run_simulate(req: schemas.SimulateRequest) -> schemas.SimulateResponse:
    report = simulate_report(req)
    doc = ensemble.report_doc(report)
    return schemas.SimulateResponse(
        schema_version=doc["schema"],
        meta=doc["meta"],
        theory=doc["theory"],
        rows=doc["rows"],
        aggregates=doc["aggregates"],
        errors=doc["errors"],
        violations=ensemble.check_violations(report),
    )


def run_sweep(req: schemas.SweepRequest) -> schemas.SweepResponse:
    report = ensemble.phase_sweep(
        req.beta_grid, req.lambda_grid, req.n, req.replicates, req.seed,
        threads=req.threads,
    )
    doc = ensemble.sweep_doc(report)
    return schemas.SweepResponse(
        schema_version=doc["schema"], meta=doc["meta"], rows=doc["rows"]
    )


def run_er_check(req: schemas.ErCheckRequest) -> schemas.ErCheckResponse:
    report = ensemble.er_crosscheck(
        req.beta, req.n, req.replicates, req.seed,
        threads=req.threads, tol_floor=req.tol_floor,
    )
    doc = ensemble.er_check_doc(report)
    meta = doc.pop("meta")
    schema = doc.pop("schema")
    return schemas.ErCheckResponse(schema_version=schema, meta=meta, **doc)


def run_export_graph(req: schemas.ExportGraphRequest) -> schemas.ExportGraphResponse:
    params = ModelParams(req.beta, req.hole_intensity, req.n)
    graph = build_graph(params, req.seed, audit=req.audit)
    comps = graph_components(graph)
    audit_text = None
    if graph.audit is not None:
        lines = ["# circle_i circle_j position"]
        for i, j, x in zip(
            graph.audit.circle_i.tolist(),
            graph.audit.circle_j.tolist(),
            graph.audit.position.tolist(),
        ):
            lines.append(f"{i} {j} {x:.9g}")
        audit_text = "\n".join(lines) + "\n"
    return schemas.ExportGraphResponse(
        num_vertices=graph.num_vertices,
        num_edges_simple=graph.num_edges_simple,
        num_edges_multi=graph.num_edges_multi,
        excess_edges=graph.excess_edges,
        vertices=format_vertex_table(graph),
        edges=format_edge_list(graph),
        components=format_component_table(comps),
        audit_points=audit_text,
    )
