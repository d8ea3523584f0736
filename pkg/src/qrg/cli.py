"""Command-line client for the qrg operations.

Commands build the same request models the service accepts and, by default,
run them in-process; with --server URL they are POSTed to a running service
instead.  Either way the rendered output is identical.

Exit codes: 0 on success, 2 when --check finds a tolerance violation,
1 on any runtime error.
"""
from __future__ import annotations

import json
import sys
from typing import Callable, Optional

import click

from . import ensemble
from .service import schemas

_PATHS: dict[str, str] = {
    "theory": "/theory",
    "oracle": "/oracle",
    "simulate": "/simulate",
    "sweep": "/sweep",
    "er_check": "/er-check",
    "export_graph": "/export-graph",
}


def _dispatch(server: Optional[str], op: str, req, resp_model):
    if server is None:
        from .service import ops

        local: dict[str, Callable] = {
            "theory": ops.run_theory,
            "oracle": ops.run_oracle,
            "simulate": ops.run_simulate,
            "sweep": ops.run_sweep,
            "er_check": ops.run_er_check,
            "export_graph": ops.run_export_graph,
        }
        return local[op](req)
    import httpx

    url = server.rstrip("/") + _PATHS[op]
    resp = httpx.post(url, json=req.model_dump(by_alias=True, mode="json"), timeout=None)
    resp.raise_for_status()
    return resp_model.model_validate(resp.json())


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        ensemble.write_text(text, out)


def _fail(exc: BaseException) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Dispatch to a running service instead of in-process.")
@click.pass_context
def main(ctx: click.Context, server: Optional[str]) -> None:
    """Random interval graphs on Poisson-cut circles: simulate and predict."""
    ctx.obj = {"server": server}


_beta = click.option("--beta", type=float, required=True, help="Circle circumference.")
_lambda = click.option("--lambda", "hole_intensity", type=float, default=0.0,
                       show_default=True, help="Poisson hole intensity.")
_seed = click.option("--seed", type=int, default=0, show_default=True,
                     help="Master seed.")
_out = click.option("--out", type=click.Path(dir_okay=False), default=None,
                    help="Output file (default: stdout).")
_format = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                       default="csv", show_default=True)
_threads = click.option("--threads", type=int, default=1, show_default=True,
                        envvar="QRG_THREADS", help="Worker thread bound.")


@main.command()
@_beta
@_lambda
@_out
@click.pass_context
def theory(ctx: click.Context, beta: float, hole_intensity: float, out: Optional[str]) -> None:
    """Closed-form predictions for one parameter point (JSON)."""
    try:
        req = schemas.TheoryRequest(beta=beta, hole_intensity=hole_intensity)
        resp = _dispatch(ctx.obj["server"], "theory", req, schemas.TheoryResponse)
        _emit(json.dumps(resp.model_dump(by_alias=True), indent=2) + "\n", out)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@_beta
@_lambda
@click.option("--trials", type=int, default=100_000, show_default=True)
@_seed
@click.option("--max-generations", type=int, default=60, show_default=True)
@click.option("--population-cap", type=int, default=10**6, show_default=True)
@_out
@click.pass_context
def oracle(ctx: click.Context, beta: float, hole_intensity: float, trials: int,
           seed: int, max_generations: int, population_cap: int,
           out: Optional[str]) -> None:
    """Branching-process estimates of the survival probability (JSON)."""
    try:
        req = schemas.OracleRequest(
            beta=beta, hole_intensity=hole_intensity, trials=trials, seed=seed,
            max_generations=max_generations, population_cap=population_cap,
        )
        resp = _dispatch(ctx.obj["server"], "oracle", req, schemas.OracleResponse)
        _emit(json.dumps(resp.model_dump(by_alias=True), indent=2) + "\n", out)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@_beta
@_lambda
@click.option("--n", "n_values", type=int, multiple=True, required=True,
              help="Circle count; repeat for a schedule.")
@click.option("--reps", type=int, default=1, show_default=True,
              help="Replicates per n.")
@_seed
@_out
@_format
@click.option("--keep-multi", is_flag=True,
              help="Count giant-component edges with multiplicity.")
@click.option("--audit", is_flag=True, help="Retain raw edge points in memory.")
@_threads
@click.option("--check", "check_flag", is_flag=True,
              help="Exit 2 when a targeted metric misses its tolerance.")
@click.pass_context
def simulate(ctx: click.Context, beta: float, hole_intensity: float,
             n_values: tuple[int, ...], reps: int, seed: int,
             out: Optional[str], fmt: str, keep_multi: bool, audit: bool,
             threads: int, check_flag: bool) -> None:
    """Run a replicated ensemble and report per-replicate and aggregate rows."""
    try:
        req = schemas.SimulateRequest(
            beta=beta, hole_intensity=hole_intensity, n=list(n_values),
            replicates=reps, seed=seed, simplify=not keep_multi, audit=audit,
            threads=threads,
        )
        resp = _dispatch(ctx.obj["server"], "simulate", req, schemas.SimulateResponse)
        doc = resp.model_dump(by_alias=True)
        if fmt == "csv":
            _emit(ensemble.report_csv_from_doc(doc), out)
        else:
            _emit(json.dumps(doc, indent=2) + "\n", out)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)
    if check_flag and resp.violations:
        for v in resp.violations:
            click.echo(f"tolerance violation: {v}", err=True)
        sys.exit(2)


@main.command()
@click.option("--beta-grid", required=True,
              help="Comma-separated beta values.")
@click.option("--lambda-grid", required=True,
              help="Comma-separated hole intensities.")
@click.option("--n", type=int, required=True)
@click.option("--reps", type=int, default=1, show_default=True)
@_seed
@_out
@_format
@_threads
@click.pass_context
def sweep(ctx: click.Context, beta_grid: str, lambda_grid: str, n: int,
          reps: int, seed: int, out: Optional[str], fmt: str, threads: int) -> None:
    """Theory vs simulation across a (beta, lambda) grid."""
    try:
        req = schemas.SweepRequest(
            beta_grid=[float(x) for x in beta_grid.split(",") if x.strip()],
            lambda_grid=[float(x) for x in lambda_grid.split(",") if x.strip()],
            n=n, replicates=reps, seed=seed, threads=threads,
        )
        resp = _dispatch(ctx.obj["server"], "sweep", req, schemas.SweepResponse)
        doc = resp.model_dump(by_alias=True)
        if fmt == "csv":
            _emit(ensemble.sweep_csv_from_doc(doc), out)
        else:
            _emit(json.dumps(doc, indent=2) + "\n", out)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command("er-check")
@_beta
@click.option("--n", type=int, required=True)
@click.option("--reps", type=int, default=1, show_default=True)
@_seed
@_out
@_format
@_threads
@click.option("--tol-floor", type=float, default=0.01, show_default=True)
@click.option("--check", "check_flag", is_flag=True,
              help="Exit 2 when the deviation exceeds the tolerance.")
@click.pass_context
def er_check(ctx: click.Context, beta: float, n: int, reps: int, seed: int,
             out: Optional[str], fmt: str, threads: int, tol_floor: float,
             check_flag: bool) -> None:
    """Compare the no-holes run against the classical giant-fraction value."""
    try:
        req = schemas.ErCheckRequest(
            beta=beta, n=n, replicates=reps, seed=seed, threads=threads,
            tol_floor=tol_floor,
        )
        resp = _dispatch(ctx.obj["server"], "er_check", req, schemas.ErCheckResponse)
        doc = resp.model_dump(by_alias=True)
        if fmt == "csv":
            _emit(ensemble.er_check_csv_from_doc(doc), out)
        else:
            _emit(json.dumps(doc, indent=2) + "\n", out)
    except Exception as exc:  # noqa: BLE001
        _fail(exc)
    if check_flag and not resp.ok:
        click.echo(
            f"tolerance violation: |mean - gamma_er| = {resp.abs_dev:.6g} "
            f"> {resp.tolerance:.6g}",
            err=True,
        )
        sys.exit(2)


@main.command("export-graph")
@_beta
@_lambda
@click.option("--n", type=int, required=True)
@_seed
@click.option("--out", "prefix", required=True,
              help="Output path prefix for the table files.")
@click.option("--audit", is_flag=True,
              help="Also export raw edge points.")
@click.pass_context
def export_graph(ctx: click.Context, beta: float, hole_intensity: float, n: int,
                 seed: int, prefix: str, audit: bool) -> None:
    """Sample one graph and export vertex, edge and component tables."""
    try:
        req = schemas.ExportGraphRequest(
            beta=beta, hole_intensity=hole_intensity, n=n, seed=seed, audit=audit,
        )
        resp = _dispatch(ctx.obj["server"], "export_graph", req,
                         schemas.ExportGraphResponse)
        written = []
        for suffix, text in (
            ("vertices", resp.vertices),
            ("edges", resp.edges),
            ("components", resp.components),
        ):
            path = f"{prefix}.{suffix}.txt"
            ensemble.write_text(text, path)
            written.append(path)
        if resp.audit_points is not None:
            path = f"{prefix}.audit.txt"
            ensemble.write_text(resp.audit_points, path)
            written.append(path)
        summary = {
            "num_vertices": resp.num_vertices,
            "num_edges_simple": resp.num_edges_simple,
            "num_edges_multi": resp.num_edges_multi,
            "excess_edges": resp.excess_edges,
            "files": written,
        }
        click.echo(json.dumps(summary, indent=2))
    except Exception as exc:  # noqa: BLE001
        _fail(exc)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app as fastapi_app

    uvicorn.run(fastapi_app, host=host, port=port)


if __name__ == "__main__":
    main()
