"""Model parameters shared across the package."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the random interval graph on Poisson-cut circles.

    beta: circumference of every circle (> 0).
    hole_intensity: rate of the Poisson hole process per unit length (>= 0);
        0 means no holes, so every circle is a single full-circle vertex and
        the simple graph reduces to G(n, 1 - exp(-beta/n)).
    n: number of circles (>= 1).
    """

    beta: float
    hole_intensity: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be finite and > 0, got {self.beta}")
        if not (math.isfinite(self.hole_intensity) and self.hole_intensity >= 0):
            raise ValueError(
                f"hole_intensity must be finite and >= 0, got {self.hole_intensity}"
            )
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n}")
