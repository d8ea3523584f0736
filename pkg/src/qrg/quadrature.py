"""Adaptive Simpson quadrature with an absolute-tolerance budget.

Interval-halving Simpson with the usual |S_left + S_right - S_whole| / 15
error estimate and Richardson extrapolation on acceptance.  Intervals are
processed level-synchronously as numpy arrays, so the integrand must accept
and return numpy arrays.  The absolute tolerance is split in half on every
subdivision, which keeps the summed error of accepted intervals below the
requested total.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

__all__ = ["QuadratureError", "adaptive_simpson"]


class QuadratureError(RuntimeError):
    """Raised when the evaluation budget is exhausted before convergence."""


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_evals: int = 10**6,
) -> float:
    """Integrate f over [a, b] to absolute tolerance tol.

    Args:
        f: vectorized integrand; called with a float64 array, must return an
            array of the same shape.
        a, b: integration bounds, a <= b.
        tol: absolute tolerance on the result.
        max_evals: budget of integrand evaluations (points, not calls).

    Returns:
        The integral estimate.

    Raises:
        ValueError: on invalid bounds or tolerance.
        QuadratureError: if the budget is exhausted with intervals still
            above their tolerance share (e.g. a non-integrable or non-finite
            integrand).
    """
    if not np.isfinite(a) or not np.isfinite(b):
        raise ValueError(f"bounds must be finite, got [{a}, {b}]")
    if b < a:
        raise ValueError(f"need a <= b, got [{a}, {b}]")
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if a == b:
        return 0.0

    mid = 0.5 * (a + b)
    fx = np.asarray(f(np.array([a, mid, b], dtype=np.float64)), dtype=np.float64)
    evals = 3

    left = np.array([a])
    right = np.array([b])
    mids = np.array([mid])
    fl = fx[:1]
    fm = fx[1:2]
    fr = fx[2:]
    whole = (b - a) / 6.0 * (fx[0] + 4.0 * fx[1] + fx[2])
    whole = np.array([whole])
    tols = np.array([tol])

    total = 0.0
    while left.size:
        ml = 0.5 * (left + mids)
        mr = 0.5 * (mids + right)
        fnew = np.asarray(f(np.concatenate([ml, mr])), dtype=np.float64)
        evals += fnew.size
        fml = fnew[: ml.size]
        fmr = fnew[ml.size:]
        s_left = (mids - left) / 6.0 * (fl + 4.0 * fml + fm)
        s_right = (right - mids) / 6.0 * (fm + 4.0 * fmr + fr)
        err = (s_left + s_right - whole) / 15.0
        done = np.abs(err) <= tols
        if done.any():
            total += float((s_left[done] + s_right[done] + err[done]).sum())
        keep = ~done
        if not keep.any():
            break
        if evals > max_evals:
            raise QuadratureError(
                f"evaluation budget {max_evals} exhausted with "
                f"{int(keep.sum())} intervals unresolved (tol={tol})"
            )
        half = tols[keep] * 0.5
        left, mids, right, fl, fm, fr, whole, tols = (
            np.concatenate([left[keep], mids[keep]]),
            np.concatenate([ml[keep], mr[keep]]),
            np.concatenate([mids[keep], right[keep]]),
            np.concatenate([fl[keep], fm[keep]]),
            np.concatenate([fml[keep], fmr[keep]]),
            np.concatenate([fm[keep], fr[keep]]),
            np.concatenate([s_left[keep], s_right[keep]]),
            np.concatenate([half, half]),
        )
    return total
