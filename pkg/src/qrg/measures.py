"""Limit laws of the vertex population.

As n grows, the empirical distribution of vertices over (position, length)
converges to a deterministic measure: a density lam^2 * exp(-lam * l) dx dl
over positions x in [0, beta] and lengths l in (0, beta), plus an atom of
mass (1 + lam*beta) * exp(-lam*beta) on full circles (the circles with zero
or one hole).  Its length marginal, represented here by MeasureHat, is what
every closed-form prediction in the theory module integrates against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .params import ModelParams
from .quadrature import adaptive_simpson

__all__ = [
    "MeasureHat",
    "measure_hat_integral",
    "mu_rectangle_mass",
    "mu_full_circle_atom",
]


@dataclass(frozen=True)
class MeasureHat:
    """Limiting vertex-length law (per circle): expected number of vertices
    per circle with length in a set.

    Density beta * lam^2 * exp(-lam * l) on l in (0, beta) plus an atom of
    mass (1 + lam*beta) * exp(-lam*beta) at exactly beta.  Total mass is
    lam*beta + exp(-lam*beta) (the limiting vertex density v(Q)/n) and the
    first moment is exactly beta (lengths tile each circle).
    """

    beta: float
    hole_intensity: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be finite and > 0, got {self.beta}")
        if not (math.isfinite(self.hole_intensity) and self.hole_intensity >= 0):
            raise ValueError(
                f"hole_intensity must be finite and >= 0, got {self.hole_intensity}"
            )

    @property
    def atom_mass(self) -> float:
        lb = self.hole_intensity * self.beta
        return (1.0 + lb) * math.exp(-lb)

    @property
    def total_mass(self) -> float:
        lb = self.hole_intensity * self.beta
        return lb + math.exp(-lb)

    @property
    def mean(self) -> float:
        return self.beta

    def density(self, length: np.ndarray) -> np.ndarray:
        """Density of the absolutely continuous part at the given lengths."""
        lam = self.hole_intensity
        length = np.asarray(length, dtype=np.float64)
        return self.beta * lam * lam * np.exp(-lam * length)


ParamsLike = Union[ModelParams, MeasureHat]


def _as_measure(params: ParamsLike) -> MeasureHat:
    if isinstance(params, MeasureHat):
        return params
    return MeasureHat(params.beta, params.hole_intensity)


def measure_hat_integral(
    g: Callable[[np.ndarray], np.ndarray],
    params: ParamsLike,
    tol: float = 1e-10,
    max_evals: int = 10**6,
) -> float:
    """Integral of g against the limiting vertex-length law.

    g must be vectorized (accept a float64 array) and evaluable on [0, beta];
    it is sampled at quadrature nodes of the continuous part and once at beta
    for the full-circle atom.  With hole_intensity == 0 the law is a unit
    atom at beta and the result is exactly g(beta).
    """
    m = _as_measure(params)
    atom = m.atom_mass * float(np.asarray(g(np.array([m.beta])), dtype=np.float64)[0])
    if m.hole_intensity == 0.0:
        return atom
    return atom + adaptive_simpson(
        lambda x: np.asarray(g(x), dtype=np.float64) * m.density(x),
        0.0,
        m.beta,
        tol=tol,
        max_evals=max_evals,
    )


def mu_rectangle_mass(
    x1: float, x2: float, l1: float, l2: float, params: ParamsLike
) -> float:
    """Limit of (#vertices with start in [x1, x2] and length in [l1, l2)) / n.

    Covers only the proper-arc population (length < beta); full circles are
    counted by mu_full_circle_atom.  The closed form is
    (x2 - x1) * lam * (exp(-lam*l1) - exp(-lam*min(l2, beta))).
    """
    m = _as_measure(params)
    if not 0.0 <= x1 <= x2 <= m.beta:
        raise ValueError(f"need 0 <= x1 <= x2 <= beta, got x1={x1}, x2={x2}, beta={m.beta}")
    if not 0.0 <= l1 <= l2:
        raise ValueError(f"need 0 <= l1 <= l2, got l1={l1}, l2={l2}")
    lam = m.hole_intensity
    if lam == 0.0:
        return 0.0
    hi = min(l2, m.beta)
    if hi <= l1:
        return 0.0
    return (x2 - x1) * lam * (math.exp(-lam * l1) - math.exp(-lam * hi))


def mu_full_circle_atom(params: ParamsLike) -> float:
    """Limit of (#full-circle vertices) / n, i.e. P(at most one hole)."""
    return _as_measure(params).atom_mass
