"""Replicated simulation runs, convergence sweeps, and report rendering.

Reports are deterministic byte-for-byte for a fixed configuration: replicate
seeds are derived from (master_seed, n, replicate), rows are emitted sorted
by (n, replicate), and floats are rendered with shortest round-trip repr.
The CSV schema is versioned (schema=1): one header block of "#" metadata
lines, a column header, replicate rows, then aggregate rows distinguished by
the row_type column (mean, se, target, abs_dev).  JSON mirrors the same
content structurally.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import streams
from .components import component_stats, components, same_component_length_prob
from .params import ModelParams
from .sampler import build_graph
from .theory import TheoryPrediction, predictions

__all__ = [
    "METRICS",
    "TOLERANCE_POLICY",
    "ExperimentConfig",
    "ReplicateRow",
    "AggregateRow",
    "EnsembleReport",
    "run_ensemble",
    "check_violations",
    "report_doc",
    "report_csv_from_doc",
    "report_to_csv",
    "report_to_json",
    "SweepRow",
    "SweepReport",
    "phase_sweep",
    "sweep_doc",
    "sweep_csv_from_doc",
    "sweep_to_csv",
    "sweep_to_json",
    "ErCheckReport",
    "er_gamma",
    "er_crosscheck",
    "er_check_doc",
    "er_check_csv_from_doc",
    "er_check_to_csv",
    "er_check_to_json",
    "write_text",
]

METRICS = (
    "v_q_over_n",
    "e_q_multi_over_n",
    "e_q_simple_over_n",
    "v_c1_over_n",
    "len_c1_over_n",
    "e_c1_over_n",
    "v_c2_over_n",
    "len_c2_over_n",
    "e_c2_over_n",
    "same_comp_prob",
    "excess_edges",
)

TOLERANCE_POLICY = "mean within max(0.02, 3*se) of target"


@dataclass(frozen=True)
class ExperimentConfig:
    """One ensemble: a (beta, hole_intensity) point across an n schedule."""

    beta: float
    hole_intensity: float
    n_schedule: tuple[int, ...]
    replicates: int
    master_seed: int
    simplify: bool = True
    audit: bool = False
    threads: int = 1

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not self.n_schedule:
            raise ValueError("n_schedule must not be empty")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")


@dataclass(frozen=True)
class ReplicateRow:
    n: int
    replicate: int
    seed: int
    v_q_over_n: float
    e_q_multi_over_n: float
    e_q_simple_over_n: float
    v_c1_over_n: float
    len_c1_over_n: float
    e_c1_over_n: float
    v_c2_over_n: float
    len_c2_over_n: float
    e_c2_over_n: float
    same_comp_prob: float
    excess_edges: int


@dataclass(frozen=True)
class AggregateRow:
    """Per-n aggregates over replicate rows; se is None for one replicate,
    target/abs_dev are None for metrics without a theoretical target."""

    n: int
    replicates: int
    mean: dict[str, float]
    se: dict[str, Optional[float]]
    target: dict[str, Optional[float]]
    abs_dev: dict[str, Optional[float]]


@dataclass(frozen=True)
class EnsembleReport:
    config: ExperimentConfig
    theory: TheoryPrediction
    rows: list[ReplicateRow]
    aggregates: list[AggregateRow]
    errors: list[str] = field(default_factory=list)
    schema: int = 1
    tolerance_policy: str = TOLERANCE_POLICY


def _metric_targets(theory: TheoryPrediction) -> dict[str, Optional[float]]:
    return {
        "v_q_over_n": theory.vertex_density,
        "e_q_multi_over_n": theory.edge_density,
        "e_q_simple_over_n": theory.edge_density,
        "v_c1_over_n": theory.rho,
        "len_c1_over_n": theory.giant_length_density,
        "e_c1_over_n": theory.zeta,
        "v_c2_over_n": 0.0,
        "len_c2_over_n": 0.0,
        "e_c2_over_n": 0.0,
        "same_comp_prob": theory.gamma ** 2,
        "excess_edges": None,
    }


def _simulate_replicate(
    config: ExperimentConfig, n: int, replicate: int
) -> ReplicateRow:
    seed = streams.child_seed(config.master_seed, streams.REPLICATE, n, replicate)
    params = ModelParams(config.beta, config.hole_intensity, n)
    graph = build_graph(params, seed, audit=config.audit)
    comps = components(graph)
    c1 = component_stats(comps, 1)
    c2 = component_stats(comps, 2)
    if config.simplify:
        e_c1, e_c2 = c1.edge_count_simple, c2.edge_count_simple
    else:
        e_c1, e_c2 = c1.edge_count_multi, c2.edge_count_multi
    return ReplicateRow(
        n=n,
        replicate=replicate,
        seed=seed,
        v_q_over_n=graph.num_vertices / n,
        e_q_multi_over_n=graph.num_edges_multi / n,
        e_q_simple_over_n=graph.num_edges_simple / n,
        v_c1_over_n=c1.vertex_count / n,
        len_c1_over_n=c1.total_length / n,
        e_c1_over_n=e_c1 / n,
        v_c2_over_n=c2.vertex_count / n,
        len_c2_over_n=c2.total_length / n,
        e_c2_over_n=e_c2 / n,
        same_comp_prob=same_component_length_prob(comps, config.beta, n),
        excess_edges=graph.excess_edges,
    )


def _aggregate(
    rows: Sequence[ReplicateRow], theory: TheoryPrediction
) -> list[AggregateRow]:
    targets = _metric_targets(theory)
    out = []
    for n in sorted({r.n for r in rows}):
        group = [r for r in rows if r.n == n]
        k = len(group)
        mean: dict[str, float] = {}
        se: dict[str, Optional[float]] = {}
        target: dict[str, Optional[float]] = {}
        abs_dev: dict[str, Optional[float]] = {}
        for m in METRICS:
            vals = [float(getattr(r, m)) for r in group]
            mu = sum(vals) / k
            mean[m] = mu
            if k > 1:
                var = sum((v - mu) ** 2 for v in vals) / (k - 1)
                se[m] = math.sqrt(var / k)
            else:
                se[m] = None
            t = targets[m]
            target[m] = t
            abs_dev[m] = abs(mu - t) if t is not None else None
        out.append(
            AggregateRow(n=n, replicates=k, mean=mean, se=se, target=target, abs_dev=abs_dev)
        )
    return out


def run_ensemble(config: ExperimentConfig) -> EnsembleReport:
    """Run all (n, replicate) tasks; per-replicate failures are recorded in
    report.errors and the remaining rows still aggregate."""
    theory = predictions(config.beta, config.hole_intensity)
    tasks = [
        (n, r) for n in config.n_schedule for r in range(config.replicates)
    ]
    rows: list[ReplicateRow] = []
    errors: list[str] = []

    def run(task: tuple[int, int]) -> tuple[tuple[int, int], ReplicateRow | None, str | None]:
        n, r = task
        try:
            return task, _simulate_replicate(config, n, r), None
        except Exception as exc:  # noqa: BLE001  (isolation is the contract)
            return task, None, f"n={n} replicate={r}: {exc!r}"

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]
    for _, row, err in results:
        if err is not None:
            errors.append(err)
        elif row is not None:
            rows.append(row)
    rows.sort(key=lambda r: (r.n, r.replicate))
    aggregates = _aggregate(rows, theory) if rows else []
    return EnsembleReport(
        config=config, theory=theory, rows=rows, aggregates=aggregates, errors=errors
    )


def check_violations(
    report: EnsembleReport, tol_floor: float = 0.02, se_mult: float = 3.0
) -> list[str]:
    """Tolerance check: each targeted metric's mean must sit within
    max(tol_floor, se_mult * se) of its target.  Returns violation strings."""
    out = []
    for agg in report.aggregates:
        for m in METRICS:
            t = agg.target[m]
            if t is None:
                continue
            se = agg.se[m]
            tol = tol_floor if se is None else max(tol_floor, se_mult * se)
            dev = abs(agg.mean[m] - t)
            if dev > tol:
                out.append(
                    f"n={agg.n} {m}: |{agg.mean[m]:.6g} - {t:.6g}| = {dev:.3g} > {tol:.3g}"
                )
    return out


def _f(x: Optional[float]) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _row_dict(r: ReplicateRow) -> dict:
    d = {"n": r.n, "replicate": r.replicate, "seed": r.seed}
    d.update({m: getattr(r, m) for m in METRICS})
    return d


def report_doc(report: EnsembleReport) -> dict:
    """JSON-ready document; both renderers are derived from it, so a report
    round-tripped through JSON renders byte-identical CSV."""
    c = report.config
    return {
        "schema": report.schema,
        "meta": {
            "beta": c.beta,
            "lambda": c.hole_intensity,
            "n_schedule": list(c.n_schedule),
            "replicates": c.replicates,
            "master_seed": c.master_seed,
            "simplify": c.simplify,
            "tolerance_policy": report.tolerance_policy,
        },
        "theory": report.theory.as_dict(),
        "rows": [_row_dict(r) for r in report.rows],
        "aggregates": [
            {
                "n": a.n,
                "replicates": a.replicates,
                "mean": a.mean,
                "se": a.se,
                "target": a.target,
                "abs_dev": a.abs_dev,
            }
            for a in report.aggregates
        ],
        "errors": report.errors,
    }


def report_csv_from_doc(doc: dict) -> str:
    meta = doc["meta"]
    lines = [
        f"# qrg-ensemble schema={doc['schema']}",
        f"# beta={_f(meta['beta'])} lambda={_f(meta['lambda'])} "
        f"master_seed={meta['master_seed']} replicates={meta['replicates']} "
        f"simplify={str(meta['simplify']).lower()}",
        "# theory "
        + " ".join(
            f"{k}={_f(v)}" for k, v in doc["theory"].items() if k not in ("beta", "lambda")
        ),
        f"# tolerance_policy={meta['tolerance_policy']}",
    ]
    for e in doc["errors"]:
        lines.append(f"# error {e}")
    lines.append(",".join(["row_type", "n", "replicate", "seed", *METRICS]))
    for r in doc["rows"]:
        vals = [_f(r[m]) for m in METRICS]
        lines.append(",".join(["replicate", str(r["n"]), str(r["replicate"]), str(r["seed"]), *vals]))
    for agg in doc["aggregates"]:
        for kind in ("mean", "se", "target", "abs_dev"):
            vals = [_f(agg[kind][m]) for m in METRICS]
            lines.append(",".join([kind, str(agg["n"]), "", "", *vals]))
    return "\n".join(lines) + "\n"


def report_to_csv(report: EnsembleReport) -> str:
    return report_csv_from_doc(report_doc(report))


def report_to_json(report: EnsembleReport) -> str:
    return json.dumps(report_doc(report), indent=2) + "\n"


@dataclass(frozen=True)
class SweepRow:
    beta: float
    hole_intensity: float
    F: float
    gamma: float
    rho: float
    zeta: float
    supercritical: bool
    mean_v_c1_over_n: float
    se_v_c1_over_n: Optional[float]
    abs_dev_v_c1: float


@dataclass(frozen=True)
class SweepReport:
    n: int
    replicates: int
    master_seed: int
    rows: list[SweepRow]
    schema: int = 1


def phase_sweep(
    beta_grid: Sequence[float],
    lambda_grid: Sequence[float],
    n: int,
    replicates: int,
    master_seed: int,
    threads: int = 1,
) -> SweepReport:
    """Theory and simulated giant-fraction across a parameter grid.

    Each cell runs its own small ensemble from a seed derived from the cell
    indices, so the sweep is deterministic and insensitive to grid order.
    """
    rows = []
    for bi, beta in enumerate(beta_grid):
        for li, lam in enumerate(lambda_grid):
            cell_seed = streams.child_seed(master_seed, streams.SWEEP, bi, li)
            cfg = ExperimentConfig(
                beta=float(beta),
                hole_intensity=float(lam),
                n_schedule=(n,),
                replicates=replicates,
                master_seed=cell_seed,
                threads=threads,
            )
            rep = run_ensemble(cfg)
            agg = rep.aggregates[0]
            t = rep.theory
            rows.append(
                SweepRow(
                    beta=float(beta),
                    hole_intensity=float(lam),
                    F=t.F,
                    gamma=t.gamma,
                    rho=t.rho,
                    zeta=t.zeta,
                    supercritical=t.F > 1.0,
                    mean_v_c1_over_n=agg.mean["v_c1_over_n"],
                    se_v_c1_over_n=agg.se["v_c1_over_n"],
                    abs_dev_v_c1=abs(agg.mean["v_c1_over_n"] - t.rho),
                )
            )
    return SweepReport(
        n=n, replicates=replicates, master_seed=master_seed, rows=rows
    )


_SWEEP_COLS = (
    "beta", "lambda", "F", "gamma", "rho", "zeta", "supercritical",
    "mean_v_c1_over_n", "se_v_c1_over_n", "abs_dev_v_c1",
)


def _sweep_row_values(r: SweepRow) -> list:
    return [
        r.beta, r.hole_intensity, r.F, r.gamma, r.rho, r.zeta,
        r.supercritical, r.mean_v_c1_over_n, r.se_v_c1_over_n, r.abs_dev_v_c1,
    ]


def sweep_doc(report: SweepReport) -> dict:
    return {
        "schema": report.schema,
        "meta": {
            "n": report.n,
            "replicates": report.replicates,
            "master_seed": report.master_seed,
        },
        "rows": [dict(zip(_SWEEP_COLS, _sweep_row_values(r))) for r in report.rows],
    }


def sweep_csv_from_doc(doc: dict) -> str:
    meta = doc["meta"]
    lines = [
        f"# qrg-sweep schema={doc['schema']}",
        f"# n={meta['n']} replicates={meta['replicates']} master_seed={meta['master_seed']}",
        ",".join(_SWEEP_COLS),
    ]
    for r in doc["rows"]:
        lines.append(",".join(_f(r[c]) for c in _SWEEP_COLS))
    return "\n".join(lines) + "\n"


def sweep_to_csv(report: SweepReport) -> str:
    return sweep_csv_from_doc(sweep_doc(report))


def sweep_to_json(report: SweepReport) -> str:
    return json.dumps(sweep_doc(report), indent=2) + "\n"


def er_gamma(beta: float) -> float:
    """Giant fraction of the no-holes limit G(n, 1 - e^(-beta/n)): the root of
    x = 1 - e^(-beta x), by plain bisection (independent of solve_gamma)."""
    if beta <= 1.0:
        return 0.0
    lo, hi = 1e-12, 1.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if 1.0 - math.exp(-beta * mid) - mid > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ErCheckReport:
    beta: float
    n: int
    replicates: int
    master_seed: int
    gamma_er: float
    mean_v_c1_over_n: float
    se_v_c1_over_n: Optional[float]
    abs_dev: float
    tolerance: float
    ok: bool
    schema: int = 1


def er_crosscheck(
    beta: float,
    n: int,
    replicates: int,
    master_seed: int,
    threads: int = 1,
    tol_floor: float = 0.01,
) -> ErCheckReport:
    """No-holes consistency check: simulated v(C1)/n against the classical
    giant-fraction equation at hole_intensity = 0."""
    cfg = ExperimentConfig(
        beta=beta,
        hole_intensity=0.0,
        n_schedule=(n,),
        replicates=replicates,
        master_seed=master_seed,
        threads=threads,
    )
    rep = run_ensemble(cfg)
    agg = rep.aggregates[0]
    target = er_gamma(beta)
    mean = agg.mean["v_c1_over_n"]
    se = agg.se["v_c1_over_n"]
    dev = abs(mean - target)
    tol = tol_floor if se is None else max(tol_floor, 3.0 * se)
    return ErCheckReport(
        beta=beta,
        n=n,
        replicates=replicates,
        master_seed=master_seed,
        gamma_er=target,
        mean_v_c1_over_n=mean,
        se_v_c1_over_n=se,
        abs_dev=dev,
        tolerance=tol,
        ok=dev <= tol,
    )


_ER_COLS = (
    "beta", "n", "replicates", "gamma_er", "mean_v_c1_over_n",
    "se_v_c1_over_n", "abs_dev", "tolerance", "ok",
)


def _er_values(r: ErCheckReport) -> list:
    return [
        r.beta, r.n, r.replicates, r.gamma_er, r.mean_v_c1_over_n,
        r.se_v_c1_over_n, r.abs_dev, r.tolerance, r.ok,
    ]


def er_check_doc(report: ErCheckReport) -> dict:
    doc = {
        "schema": report.schema,
        "meta": {"master_seed": report.master_seed},
    }
    doc.update(dict(zip(_ER_COLS, _er_values(report))))
    return doc


def er_check_csv_from_doc(doc: dict) -> str:
    lines = [
        f"# qrg-er-check schema={doc['schema']}",
        f"# master_seed={doc['meta']['master_seed']}",
        ",".join(_ER_COLS),
        ",".join(_f(doc[c]) for c in _ER_COLS),
    ]
    return "\n".join(lines) + "\n"


def er_check_to_csv(report: ErCheckReport) -> str:
    return er_check_csv_from_doc(er_check_doc(report))


def er_check_to_json(report: ErCheckReport) -> str:
    return json.dumps(er_check_doc(report), indent=2) + "\n"


def write_text(text: str, path: str) -> None:
    """Write an output file; failures carry the path in the error message."""
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc
