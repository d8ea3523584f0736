"""Closed-form limit theory: threshold, survival probability, giant densities.

Every closed form is checked two ways: against values frozen from a
high-precision independent evaluation, and against live quadrature over the
limiting vertex-length law.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from qrg.measures import MeasureHat, measure_hat_integral
from qrg.theory import (
    critical_F,
    degree_pmf,
    predictions,
    rho_closed,
    rho_integral,
    solve_gamma,
    survival_equation_lhs,
    survival_residual,
    survival_residual_derivative,
    zeta_closed,
    zeta_integral,
)

# frozen oracle values (50-digit arithmetic, rounded to float64)
F_2_05 = 1.792723352971346
F_05_1 = 0.48367335071841644
F_1_1 = 0.896361676485673
GAMMA_2_05 = 0.6970699001671528
GAMMA_ER_2 = 0.79681213002002
RHO_2_05 = 0.8058049835182276
ZETA_2_05 = 0.9082333546152612


def test_critical_f_frozen_values():
    assert abs(critical_F(2.0, 0.5) - F_2_05) < 1e-14
    assert abs(critical_F(0.5, 1.0) - F_05_1) < 1e-14
    assert abs(critical_F(1.0, 1.0) - F_1_1) < 1e-14
    assert critical_F(2.0, 0.0) == 2.0


def test_critical_f_matches_second_moment():
    rng = np.random.default_rng(7)
    for _ in range(30):
        beta = float(rng.uniform(0.2, 4.0))
        lam = float(rng.uniform(0.0, 3.0))
        by_quad = measure_hat_integral(
            lambda x: x * x, MeasureHat(beta, lam), tol=1e-12
        ) / beta
        assert abs(critical_F(beta, lam) - by_quad) < 1e-9


def test_critical_f_continuous_at_lam_zero():
    assert abs(critical_F(2.0, 1e-8) - 2.0) < 1e-7


def test_critical_f_domain():
    with pytest.raises(ValueError):
        critical_F(0.0, 1.0)
    with pytest.raises(ValueError):
        critical_F(1.0, -0.1)


def test_residual_matches_quadrature():
    rng = np.random.default_rng(11)
    for _ in range(40):
        beta = float(rng.uniform(0.2, 4.0))
        lam = float(rng.uniform(0.0, 3.0))
        gamma = float(rng.uniform(1e-3, 1.0))
        by_quad = (
            measure_hat_integral(
                lambda x: x * (-np.expm1(-gamma * x)),
                MeasureHat(beta, lam),
                tol=1e-12,
            )
            / beta
            - gamma
        )
        assert abs(survival_residual(beta, lam, gamma) - by_quad) < 1e-9


def test_residual_derivative_matches_quadrature():
    rng = np.random.default_rng(13)
    for _ in range(40):
        beta = float(rng.uniform(0.2, 4.0))
        lam = float(rng.uniform(0.0, 3.0))
        gamma = float(rng.uniform(0.0, 1.0))
        by_quad = (
            measure_hat_integral(
                lambda x: x * x * np.exp(-gamma * x),
                MeasureHat(beta, lam),
                tol=1e-12,
            )
            / beta
            - 1.0
        )
        assert abs(survival_residual_derivative(beta, lam, gamma) - by_quad) < 1e-9


def test_residual_shape():
    # h(0) = 0, h < 0 at 1, and the sign flips exactly once across the root
    for beta, lam in [(2.0, 0.5), (3.0, 1.0), (1.5, 0.0)]:
        assert survival_residual(beta, lam, 0.0) == 0.0
        assert survival_residual(beta, lam, 1.0) < 0.0
        root = solve_gamma(beta, lam)
        assert survival_residual(beta, lam, 0.5 * root) > 0.0
        assert survival_residual(beta, lam, 0.5 * (1.0 + root)) < 0.0


def test_solve_gamma_frozen_values():
    assert abs(solve_gamma(2.0, 0.5) - GAMMA_2_05) < 1e-9
    assert abs(solve_gamma(2.0, 0.0) - GAMMA_ER_2) < 1e-9


def test_solve_gamma_zero_iff_subcritical():
    assert solve_gamma(0.5, 1.0) == 0.0
    assert solve_gamma(1.0, 1.0) == 0.0
    assert solve_gamma(1.0, 0.0) == 0.0  # F = 1 exactly: still no giant
    for beta, lam in [(1.2, 0.0), (2.0, 0.5), (4.0, 1.5)]:
        assert critical_F(beta, lam) > 1.0
        assert solve_gamma(beta, lam) > 0.0


def test_solved_gamma_satisfies_published_equation():
    for beta, lam in [(2.0, 0.5), (1.5, 0.2), (4.0, 1.0)]:
        gamma = solve_gamma(beta, lam)
        assert abs(survival_equation_lhs(beta, lam, gamma) - 1.0) < 1e-10


def test_survival_equation_lhs_domain():
    with pytest.raises(ValueError):
        survival_equation_lhs(2.0, 0.5, 0.0)
    with pytest.raises(ValueError):
        survival_equation_lhs(2.0, 0.5, -0.2)


def test_gamma_monotone_in_parameters():
    gammas_beta = [solve_gamma(b, 0.5) for b in (1.5, 2.0, 3.0, 5.0)]
    assert all(a < b for a, b in zip(gammas_beta, gammas_beta[1:]))
    gammas_lam = [solve_gamma(2.0, lam) for lam in (0.0, 0.3, 0.6, 0.9)]
    assert all(a > b for a, b in zip(gammas_lam, gammas_lam[1:]))


def test_gamma_continuous_at_lam_zero():
    assert abs(solve_gamma(2.0, 1e-8) - solve_gamma(2.0, 0.0)) < 1e-6


def test_rho_identity():
    # closed form vs quadrature for arbitrary gamma, not just the solved one
    rng = np.random.default_rng(17)
    for _ in range(100):
        beta = float(rng.uniform(0.2, 4.0))
        lam = float(rng.uniform(0.0, 3.0))
        gamma = float(rng.uniform(0.0, 1.0))
        closed = rho_closed(beta, lam, gamma)
        quad = rho_integral(beta, lam, gamma, tol=1e-12)
        assert abs(closed - quad) < 1e-10
        # rho is a per-circle count, bounded by the total vertex density
        assert 0.0 <= closed < MeasureHat(beta, lam).total_mass
    assert rho_closed(2.0, 0.5, 0.0) == 0.0


def test_rho_frozen_value():
    assert abs(rho_closed(2.0, 0.5, solve_gamma(2.0, 0.5)) - RHO_2_05) < 1e-9


def test_rho_equals_gamma_without_holes():
    # at lam = 0 the fixed point reduces to 1 - e^{-gamma beta} = gamma
    gamma = solve_gamma(2.0, 0.0)
    assert abs(rho_closed(2.0, 0.0, gamma) - gamma) < 1e-9


def test_rho_domain():
    with pytest.raises(ValueError):
        rho_closed(2.0, 0.5, -0.1)
    with pytest.raises(ValueError):
        rho_integral(2.0, 0.5, -0.1)


def test_zeta_closed_form():
    assert zeta_closed(2.0, 0.5) == 0.75
    assert zeta_closed(3.0, 0.0) == 0.0


def test_zeta_routes_agree_at_solved_gamma():
    for beta, lam in [(2.0, 0.5), (1.5, 0.2), (4.0, 1.0)]:
        gamma = solve_gamma(beta, lam)
        closed = zeta_closed(beta, gamma)
        quad = zeta_integral(beta, lam, gamma, tol=1e-12)
        assert abs(closed - quad) < 1e-8
    assert abs(zeta_closed(2.0, GAMMA_2_05) - ZETA_2_05) < 1e-9


def test_predictions_bundle():
    p = predictions(2.0, 0.5)
    assert abs(p.F - F_2_05) < 1e-12
    assert abs(p.gamma - GAMMA_2_05) < 1e-9
    assert abs(p.rho - RHO_2_05) < 1e-9
    assert abs(p.zeta - ZETA_2_05) < 1e-9
    assert abs(p.giant_length_density - 2.0 * p.gamma) < 1e-15
    assert abs(p.vertex_density - 1.3678794411714423) < 1e-15
    assert p.edge_density == 1.0
    doc = p.as_dict()
    assert doc["lambda"] == 0.5
    assert set(doc) == {
        "beta", "lambda", "F", "gamma", "rho", "zeta",
        "giant_length_density", "vertex_density", "edge_density",
    }


def test_predictions_subcritical():
    p = predictions(0.5, 1.0)
    assert p.gamma == 0.0
    assert p.rho == 0.0
    assert p.zeta == 0.0
    assert p.giant_length_density == 0.0


def test_degree_pmf_er_limit_is_poisson():
    pmf, tail = degree_pmf(2.0, 0.0, k_max=30)
    expect = np.exp(
        np.arange(31) * math.log(2.0) - 2.0
        - np.array([math.lgamma(k + 1) for k in range(31)])
    )
    assert np.all(np.abs(pmf - expect) < 1e-12)
    assert tail < 1e-12


def test_degree_pmf_mass_and_mean():
    # mean degree is beta / total mass: 2 E / V with E/n = beta/2 and V/n = mass
    pmf, tail = degree_pmf(1.0, 1.0, k_max=40, tol=1e-12)
    assert np.all(pmf >= 0.0)
    assert tail < 1e-12
    assert abs(pmf.sum() + tail - 1.0) < 1e-9
    mean = float(np.arange(41) @ pmf)
    assert abs(mean - 0.7310585786300049) < 1e-9


def test_degree_pmf_domain():
    with pytest.raises(ValueError):
        degree_pmf(1.0, 1.0, k_max=-1)
