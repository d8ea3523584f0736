"""Ensemble runner and report rendering: determinism, aggregate arithmetic,
tolerance checks, sweeps, and the no-holes cross-check."""
from __future__ import annotations

import json
import math

import pytest

import qrg.ensemble as ens
from qrg.ensemble import (
    METRICS,
    ExperimentConfig,
    check_violations,
    er_check_csv_from_doc,
    er_check_to_csv,
    er_check_to_json,
    er_crosscheck,
    er_gamma,
    phase_sweep,
    report_csv_from_doc,
    report_to_csv,
    report_to_json,
    run_ensemble,
    sweep_csv_from_doc,
    sweep_to_csv,
    sweep_to_json,
    write_text,
)


def _cfg(**kw):
    base = dict(
        beta=2.0,
        hole_intensity=0.5,
        n_schedule=(200,),
        replicates=3,
        master_seed=5,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_reports_are_byte_deterministic():
    a = report_to_csv(run_ensemble(_cfg()))
    b = report_to_csv(run_ensemble(_cfg()))
    assert a == b
    threaded = report_to_csv(run_ensemble(_cfg(threads=2)))
    assert threaded == a


def test_rows_sorted_and_complete():
    rep = run_ensemble(_cfg(n_schedule=(100, 50), replicates=2))
    keys = [(r.n, r.replicate) for r in rep.rows]
    assert keys == [(50, 0), (50, 1), (100, 0), (100, 1)]
    assert rep.errors == []


def test_aggregates_recomputable_from_rows():
    rep = run_ensemble(_cfg(replicates=4))
    agg = rep.aggregates[0]
    assert agg.replicates == 4
    for m in METRICS:
        vals = [float(getattr(r, m)) for r in rep.rows]
        mu = sum(vals) / 4
        assert agg.mean[m] == pytest.approx(mu, rel=1e-14, abs=1e-14)
        var = sum((v - mu) ** 2 for v in vals) / 3
        assert agg.se[m] == pytest.approx(math.sqrt(var / 4), rel=1e-12, abs=1e-14)
        t = agg.target[m]
        if t is not None:
            assert agg.abs_dev[m] == pytest.approx(abs(mu - t), rel=1e-12, abs=1e-14)


def test_single_replicate_has_no_se():
    rep = run_ensemble(_cfg(replicates=1))
    agg = rep.aggregates[0]
    assert all(agg.se[m] is None for m in METRICS)
    assert agg.target["excess_edges"] is None
    assert agg.abs_dev["excess_edges"] is None
    assert agg.target["v_c1_over_n"] is not None


def test_row_inequalities():
    rep = run_ensemble(_cfg(replicates=5))
    for r in rep.rows:
        assert r.e_q_multi_over_n >= r.e_q_simple_over_n
        assert r.v_c1_over_n >= r.v_c2_over_n
        assert r.len_c1_over_n >= r.len_c2_over_n
        assert 0.0 <= r.same_comp_prob <= 1.0
        assert r.excess_edges >= 0


def test_simplify_flag_switches_component_edge_counts():
    simple = run_ensemble(_cfg(n_schedule=(400,)))
    multi = run_ensemble(_cfg(n_schedule=(400,), simplify=False))
    # same seeds, same graphs; only the component edge counting changes
    for a, b in zip(simple.rows, multi.rows):
        assert a.seed == b.seed
        assert b.e_c1_over_n >= a.e_c1_over_n
        assert a.v_c1_over_n == b.v_c1_over_n


def test_check_violations():
    rep = run_ensemble(_cfg(n_schedule=(5000,), replicates=5, master_seed=17))
    assert check_violations(rep) == []
    bad = check_violations(rep, tol_floor=1e-12, se_mult=0.0)
    assert bad
    assert all("n=5000" in line and ">" in line for line in bad)


def test_csv_layout():
    rep = run_ensemble(_cfg(replicates=2))
    text = report_to_csv(rep)
    lines = text.splitlines()
    assert lines[0] == "# qrg-ensemble schema=1"
    assert lines[1].startswith("# beta=2.0 lambda=0.5 master_seed=5")
    assert lines[2].startswith("# theory ")
    assert lines[3].startswith("# tolerance_policy=")
    assert lines[4] == ",".join(["row_type", "n", "replicate", "seed", *METRICS])
    assert sum(1 for l in lines if l.startswith("replicate,")) == 2
    for kind in ("mean", "se", "target", "abs_dev"):
        assert sum(1 for l in lines if l.startswith(f"{kind},")) == 1
    assert text.endswith("\n")


def test_json_round_trip_renders_identical_csv():
    rep = run_ensemble(_cfg())
    doc = json.loads(report_to_json(rep))
    assert report_csv_from_doc(doc) == report_to_csv(rep)


def test_replicate_failures_are_isolated(monkeypatch):
    real = ens.build_graph
    calls = {"count": 0}

    def flaky(params, seed, audit=False):
        calls["count"] += 1
        if calls["count"] == 2:
            raise RuntimeError("boom")
        return real(params, seed, audit=audit)

    monkeypatch.setattr(ens, "build_graph", flaky)
    rep = run_ensemble(_cfg(n_schedule=(50,), replicates=3))
    assert len(rep.rows) == 2
    assert len(rep.errors) == 1
    assert "n=50 replicate=1" in rep.errors[0]
    assert "RuntimeError" in rep.errors[0]
    assert rep.aggregates[0].replicates == 2
    assert "# error n=50 replicate=1" in report_to_csv(rep)


def test_se_shrinks_with_replicates():
    small = run_ensemble(_cfg(n_schedule=(500,), replicates=5, master_seed=23))
    big = run_ensemble(_cfg(n_schedule=(500,), replicates=20, master_seed=23))
    ratios = []
    for m in METRICS:
        s, b = small.aggregates[0].se[m], big.aggregates[0].se[m]
        if b and b > 0.0:
            ratios.append(s / b)
    mean_ratio = sum(ratios) / len(ratios)
    # 4x the replicates should halve the standard error
    assert 1.3 < mean_ratio < 3.0


def test_er_gamma_frozen_and_residual():
    x = er_gamma(2.0)
    assert abs(x - 0.79681213002002) < 1e-12
    assert abs(1.0 - math.exp(-2.0 * x) - x) < 1e-11
    assert er_gamma(1.0) == 0.0
    assert er_gamma(0.5) == 0.0


def test_er_crosscheck_coherent():
    rep = er_crosscheck(beta=2.0, n=1500, replicates=4, master_seed=9)
    assert rep.gamma_er == er_gamma(2.0)
    assert rep.tolerance >= 0.01
    assert rep.ok == (rep.abs_dev <= rep.tolerance)
    assert rep.abs_dev == abs(rep.mean_v_c1_over_n - rep.gamma_er)
    text = er_check_to_csv(rep)
    lines = text.splitlines()
    assert lines[0] == "# qrg-er-check schema=1"
    assert lines[2].startswith("beta,n,replicates,gamma_er")
    doc = json.loads(er_check_to_json(rep))
    assert er_check_csv_from_doc(doc) == text


def test_phase_sweep():
    rep = phase_sweep(
        beta_grid=[0.8, 1.0, 2.0],
        lambda_grid=[0.0, 0.5],
        n=400,
        replicates=2,
        master_seed=3,
    )
    assert len(rep.rows) == 6
    for row in rep.rows:
        assert row.supercritical == (row.F > 1.0)
        if not row.supercritical:
            assert row.gamma == 0.0 and row.rho == 0.0
    # the critical point itself does not count as supercritical
    at_one = [r for r in rep.rows if r.beta == 1.0 and r.hole_intensity == 0.0]
    assert at_one[0].F == 1.0 and not at_one[0].supercritical
    text = sweep_to_csv(rep)
    lines = text.splitlines()
    assert lines[0] == "# qrg-sweep schema=1"
    assert lines[2].startswith("beta,lambda,F,gamma,rho,zeta,supercritical")
    assert len(lines) == 3 + 6
    again = sweep_to_csv(
        phase_sweep([0.8, 1.0, 2.0], [0.0, 0.5], 400, 2, master_seed=3)
    )
    assert again == text
    doc = json.loads(sweep_to_json(rep))
    assert sweep_csv_from_doc(doc) == text


def test_write_text(tmp_path):
    path = tmp_path / "out.csv"
    write_text("hello\n", str(path))
    assert path.read_text() == "hello\n"
    missing = tmp_path / "nope" / "out.csv"
    with pytest.raises(OSError, match=str(missing)):
        write_text("x", str(missing))


def test_config_validation():
    with pytest.raises(ValueError):
        _cfg(replicates=0)
    with pytest.raises(ValueError):
        _cfg(n_schedule=())
    with pytest.raises(ValueError):
        _cfg(threads=0)
