"""Closed forms of the limiting vertex-length law and its integrals."""
from __future__ import annotations

import math

import numpy as np
import pytest

from qrg.measures import (
    MeasureHat,
    measure_hat_integral,
    mu_full_circle_atom,
    mu_rectangle_mass,
)
from qrg.params import ModelParams
from qrg.quadrature import adaptive_simpson


def test_total_mass():
    # frozen: 1 + e^-1
    m = MeasureHat(1.0, 1.0)
    got = measure_hat_integral(lambda x: np.ones_like(x), m, tol=1e-12)
    assert abs(got - 1.3678794411714423) < 1e-8
    assert abs(m.total_mass - 1.3678794411714423) < 1e-15


def test_first_moment_is_beta():
    for beta, lam in [(2.0, 0.7), (0.5, 3.0), (4.0, 0.0), (1.0, 1.0)]:
        m = MeasureHat(beta, lam)
        got = measure_hat_integral(lambda x: x, m, tol=1e-12)
        assert abs(got - beta) < 1e-8
        assert m.mean == beta


def test_second_moment_ratio():
    # frozen: independent high-precision evaluation of the x^2/beta integral
    got = measure_hat_integral(lambda x: x * x / 2.0, MeasureHat(2.0, 0.5), tol=1e-12)
    assert abs(got - 1.792723352971346) < 1e-8


def test_atom_mass():
    assert abs(MeasureHat(2.0, 0.5).atom_mass - 0.7357588823428847) < 1e-15
    assert MeasureHat(3.0, 0.0).atom_mass == 1.0
    assert abs(mu_full_circle_atom(ModelParams(2.0, 0.5, 10)) - 0.7357588823428847) < 1e-15


def test_lam_zero_is_a_unit_atom():
    m = MeasureHat(2.5, 0.0)
    assert measure_hat_integral(lambda x: np.cos(x), m) == math.cos(2.5)
    assert m.total_mass == 1.0


def test_accepts_model_params():
    p = ModelParams(1.0, 1.0, 5)
    got = measure_hat_integral(lambda x: np.ones_like(x), p, tol=1e-12)
    assert abs(got - 1.3678794411714423) < 1e-8


def test_whole_strip_mass():
    # frozen: 1 - e^-1; together with the atom 2e^-1 this totals 1 + e^-1
    got = mu_rectangle_mass(0.0, 1.0, 0.0, 1.0, MeasureHat(1.0, 1.0))
    assert abs(got - 0.6321205588285577) < 1e-12
    total = got + MeasureHat(1.0, 1.0).atom_mass
    assert abs(total - MeasureHat(1.0, 1.0).total_mass) < 1e-12


def test_degenerate_rectangles():
    m = MeasureHat(2.0, 0.5)
    assert mu_rectangle_mass(0.7, 0.7, 0.0, 1.0, m) == 0.0
    assert mu_rectangle_mass(0.0, 1.0, 0.9, 0.9, m) == 0.0
    assert mu_rectangle_mass(0.0, 2.0, 0.0, 2.0, MeasureHat(2.0, 0.0)) == 0.0


def test_length_bound_is_clamped_to_beta():
    m = MeasureHat(1.0, 2.0)
    assert mu_rectangle_mass(0.0, 1.0, 0.5, 5.0, m) == mu_rectangle_mass(0.0, 1.0, 0.5, 1.0, m)


def test_rectangle_additivity():
    rng = np.random.default_rng(31)
    m = MeasureHat(2.0, 0.8)
    for _ in range(200):
        x1, xm, x2 = np.sort(rng.uniform(0.0, 2.0, size=3))
        l1, lm, l2 = np.sort(rng.uniform(0.0, 2.0, size=3))
        whole = mu_rectangle_mass(x1, x2, l1, l2, m)
        split_x = mu_rectangle_mass(x1, xm, l1, l2, m) + mu_rectangle_mass(xm, x2, l1, l2, m)
        split_l = mu_rectangle_mass(x1, x2, l1, lm, m) + mu_rectangle_mass(x1, x2, lm, l2, m)
        assert abs(whole - split_x) < 1e-12
        assert abs(whole - split_l) < 1e-12


def test_rectangle_matches_quadrature():
    m = MeasureHat(2.0, 0.5)
    got = mu_rectangle_mass(0.25, 1.5, 0.3, 1.1, m)
    # positions are uniform, so a rectangle is (width / beta) x (length-law mass)
    by_quad = (1.5 - 0.25) / m.beta * adaptive_simpson(m.density, 0.3, 1.1, tol=1e-12)
    assert abs(got - by_quad) < 1e-10


def test_domain_errors():
    m = MeasureHat(2.0, 0.5)
    with pytest.raises(ValueError):
        mu_rectangle_mass(1.0, 0.5, 0.0, 1.0, m)
    with pytest.raises(ValueError):
        mu_rectangle_mass(0.0, 2.5, 0.0, 1.0, m)
    with pytest.raises(ValueError):
        mu_rectangle_mass(0.0, 1.0, 1.0, 0.5, m)
    with pytest.raises(ValueError):
        MeasureHat(0.0, 1.0)
    with pytest.raises(ValueError):
        MeasureHat(1.0, -0.5)
    with pytest.raises(ValueError):
        MeasureHat(math.inf, 1.0)
