"""Closed-form predictions for the large-n limit.

The giant component appears exactly when the critical coupling functional
F(beta, lam) = (2/lam)(1 - exp(-lam*beta)) - beta*exp(-lam*beta) exceeds 1
(F = beta at lam = 0).  Above the threshold, the giant's vertex fraction rho,
length fraction gamma*beta and edge density zeta are all elementary functions
of the survival probability gamma, the unique root in (0, 1) of

    gamma = (1/beta) * Integral y * (1 - exp(-gamma*y)) dMu(y)

with Mu the limiting vertex-length law (see measures).  Every quantity here
has two routes: a closed form obtained by integrating Mu explicitly, and a
quadrature form used to cross-check it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measures import MeasureHat, measure_hat_integral

__all__ = [
    "RootBracketError",
    "critical_F",
    "survival_residual",
    "survival_residual_derivative",
    "survival_equation_lhs",
    "solve_gamma",
    "rho_closed",
    "rho_integral",
    "zeta_closed",
    "zeta_integral",
    "TheoryPrediction",
    "predictions",
    "degree_pmf",
]


class RootBracketError(RuntimeError):
    """No sign change on the bracketing interval; indicates a bug, not a
    legitimate model state."""


def critical_F(beta: float, lam: float) -> float:
    """Critical coupling functional; the giant component exists iff > 1.

    Equals the operator norm of the limiting connection kernel, and also
    (1/beta) * Integral x^2 dMu(x).  Reduces to beta at lam = 0 (the
    Erdos-Renyi limit), continuously: the lam -> 0 expansion is
    beta + O(lam^2 * beta^3).
    """
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    if lam < 0:
        raise ValueError(f"lam must be >= 0, got {lam}")
    if lam == 0.0:
        return beta
    lb = lam * beta
    return (2.0 / lam) * (-math.expm1(-lb)) - beta * math.exp(-lb)


def _g2(x: float) -> float:
    """(1 - (1+x) e^-x) / x^2, stable near 0 (series below 1e-3)."""
    if x < 1e-3:
        return 0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0
    return (1.0 - (1.0 + x) * math.exp(-x)) / (x * x)


def _g3(x: float) -> float:
    """(2 - (2 + 2x + x^2) e^-x) / x^3, stable near 0 (series below 1e-3)."""
    if x < 1e-3:
        return 1.0 / 3.0 - x / 4.0 + x * x / 10.0 - x * x * x / 36.0
    return (2.0 - (2.0 + 2.0 * x + x * x) * math.exp(-x)) / (x * x * x)


def survival_residual(beta: float, lam: float, gamma: float) -> float:
    """Fixed-point residual h(gamma) = (1/beta) Integral y (1 - e^{-gamma y})
    dMu(y) - gamma, in closed form.

    h(0) = 0, h'(0) = F - 1, and h(1) < 0; for F > 1 the unique root in
    (0, 1) is the survival probability.
    """
    if gamma == 0.0:
        return 0.0
    s = lam + gamma
    x = s * beta
    return (
        1.0
        - gamma
        - (1.0 + lam * beta) * math.exp(-x)
        - lam * lam * beta * beta * _g2(x)
    )


def survival_residual_derivative(beta: float, lam: float, gamma: float) -> float:
    """h'(gamma) = (1/beta) Integral y^2 e^{-gamma y} dMu(y) - 1, closed form."""
    s = lam + gamma
    x = s * beta
    return (
        beta * (1.0 + lam * beta) * math.exp(-x)
        + lam * lam * beta ** 3 * _g3(x)
        - 1.0
    )


def survival_equation_lhs(beta: float, lam: float, gamma: float) -> float:
    """Left side of the survival equation in its published closed form,

        (2 lam + gamma)/(lam+gamma)^2 (1 - e^{-(lam+gamma) beta})
            - lam beta/(lam+gamma) e^{-(lam+gamma) beta},

    which equals 1 exactly at the root of survival_residual."""
    if gamma <= 0:
        raise ValueError(f"gamma must be > 0, got {gamma}")
    s = lam + gamma
    return (2.0 * lam + gamma) / (s * s) * (-math.expm1(-s * beta)) - (
        lam * beta / s
    ) * math.exp(-s * beta)


def solve_gamma(beta: float, lam: float, tol: float = 1e-12) -> float:
    """Survival probability gamma: 0 when F <= 1, else the root of
    survival_residual in (0, 1).

    Bracketed bisection on [tol, 1] down to width tol, then three Newton
    polish steps with the analytic derivative.
    """
    if critical_F(beta, lam) <= 1.0:
        return 0.0
    lo, hi = tol, 1.0
    h_lo = survival_residual(beta, lam, lo)
    h_hi = survival_residual(beta, lam, hi)
    if h_lo <= 0.0 or h_hi >= 0.0:
        raise RootBracketError(
            f"no sign change on [{lo}, {hi}] for beta={beta}, lam={lam} "
            f"(h(lo)={h_lo}, h(hi)={h_hi})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if survival_residual(beta, lam, mid) > 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(3):
        d = survival_residual_derivative(beta, lam, x)
        if d == 0.0:
            break
        step = survival_residual(beta, lam, x) / d
        x = min(max(x - step, lo - tol), hi + tol)
    return x


def rho_closed(beta: float, lam: float, gamma: float) -> float:
    """Giant-component vertex density rho = Integral (1 - e^{-gamma x}) dMu(x)
    in closed form:

        gamma lam beta/(lam+gamma) (1 - e^{-(lam+gamma) beta})
            + e^{-lam beta} (1 - e^{-gamma beta}).
    """
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if gamma == 0.0:
        return 0.0
    if lam == 0.0:
        return -math.expm1(-gamma * beta)
    s = lam + gamma
    return gamma * lam * beta / s * (-math.expm1(-s * beta)) + math.exp(
        -lam * beta
    ) * (-math.expm1(-gamma * beta))


def rho_integral(
    beta: float, lam: float, gamma: float, tol: float = 1e-10
) -> float:
    """rho by quadrature against the vertex-length law (cross-check route)."""
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    m = MeasureHat(beta, lam)
    return measure_hat_integral(lambda x: -np.expm1(-gamma * x), m, tol=tol)


def zeta_closed(beta: float, gamma: float) -> float:
    """Giant-component edge density zeta = gamma (1 - gamma/2) beta."""
    return gamma * (1.0 - 0.5 * gamma) * beta


def zeta_integral(
    beta: float, lam: float, gamma: float, tol: float = 1e-10
) -> float:
    """zeta by quadrature: with A = Integral x (1 - e^{-gamma x}) dMu(x),
    zeta = (2 A beta - A^2) / (2 beta).  At the solved gamma, A = gamma*beta
    and this collapses to the closed form."""
    m = MeasureHat(beta, lam)
    a = measure_hat_integral(lambda x: x * (-np.expm1(-gamma * x)), m, tol=tol)
    return (2.0 * a * beta - a * a) / (2.0 * beta)


@dataclass(frozen=True)
class TheoryPrediction:
    """Bundle of limiting densities for one (beta, lam) point.

    giant_length_density is gamma * beta (length of the giant over n);
    vertex_density is lam*beta + e^{-lam*beta} (vertices over n);
    edge_density is beta/2 (edges over n, with or without multiplicity).
    """

    beta: float
    hole_intensity: float
    F: float
    gamma: float
    rho: float
    zeta: float
    giant_length_density: float
    vertex_density: float
    edge_density: float

    def as_dict(self) -> dict[str, float]:
        """JSON-facing form; the hole intensity is published as "lambda"."""
        return {
            "beta": self.beta,
            "lambda": self.hole_intensity,
            "F": self.F,
            "gamma": self.gamma,
            "rho": self.rho,
            "zeta": self.zeta,
            "giant_length_density": self.giant_length_density,
            "vertex_density": self.vertex_density,
            "edge_density": self.edge_density,
        }


def predictions(beta: float, lam: float, tol: float = 1e-12) -> TheoryPrediction:
    """All closed-form limits for one parameter point."""
    f = critical_F(beta, lam)
    gamma = solve_gamma(beta, lam, tol=tol)
    lb = lam * beta
    return TheoryPrediction(
        beta=beta,
        hole_intensity=lam,
        F=f,
        gamma=gamma,
        rho=rho_closed(beta, lam, gamma),
        zeta=zeta_closed(beta, gamma),
        giant_length_density=gamma * beta,
        vertex_density=lb + math.exp(-lb),
        edge_density=0.5 * beta,
    )


def degree_pmf(
    beta: float, lam: float, k_max: int, tol: float = 1e-10
) -> tuple[np.ndarray, float]:
    """Limiting degree distribution: Poisson(x) mixed over the normalized
    vertex-length law.

    Returns (pmf, tail) where pmf[k] = P(degree = k) for k = 0..k_max and
    tail is the mass beyond k_max.  At lam = 0 this is Poisson(beta).
    """
    if k_max < 0:
        raise ValueError(f"k_max must be >= 0, got {k_max}")
    m = MeasureHat(beta, lam)
    mass = m.total_mass
    pmf = np.empty(k_max + 1, dtype=np.float64)
    for k in range(k_max + 1):
        lg = math.lgamma(k + 1)

        def weight(x: np.ndarray, _k: int = k, _lg: float = lg) -> np.ndarray:
            x = np.asarray(x, dtype=np.float64)
            safe = np.where(x > 0.0, x, 1.0)
            val = np.exp(_k * np.log(safe) - x - _lg)
            return np.where(x > 0.0, val, 1.0 if _k == 0 else 0.0)

        pmf[k] = measure_hat_integral(weight, m, tol=tol) / mass
    tail = max(0.0, 1.0 - float(pmf.sum()))
    return pmf, tail
