"""Robust location estimators.

Mode, shorth, least median of squares, least trimmed squares, OWA-penalty
regression operators, and density-based means.  All are shift-invariant
(and hence weakly monotone) but not monotone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .means import _as_input
from .penalty import MinimizerConfig, PenaltySpec, minimize_penalty

ArrayLike = Sequence[float] | np.ndarray


def mode(x: ArrayLike, quantize: float | None = None) -> float:
    """Most frequent value; ties broken by the smallest value.

    ``quantize`` optionally snaps values to a grid of that step before
    counting (mode is degenerate on continuous samples).
    """
    v = _as_input(x)
    if quantize is not None:
        if quantize <= 0:
            raise ValueError("quantize step must be positive")
        v = np.round(v / quantize) * quantize
    values, counts = np.unique(v, return_counts=True)
    return float(values[np.argmax(counts)])  # first max = smallest value


@dataclass(frozen=True)
class Window:
    """Contiguous half-sample window into sorted data: indices start..stop."""

    start: int  # 0-based into sorted x
    stop: int  # inclusive, start + floor(n/2)
    length: float


def candidate_windows(x: ArrayLike) -> tuple[np.ndarray, list[Window]]:
    """All contiguous half-sample windows of sorted x with their lengths."""
    xs = np.sort(_as_input(x))
    n = xs.size
    if n < 2:
        raise ValueError("need at least two values")
    half = n // 2
    windows = [
        Window(k, k + half, float(xs[k + half] - xs[k]))
        for k in range((n + 1) // 2)
    ]
    return xs, windows


def _shortest_window(x: ArrayLike) -> tuple[np.ndarray, Window]:
    xs, windows = candidate_windows(x)
    # near-ties (within fp noise of a uniform shift) resolve to the smallest
    # start so the selection is stable under translation of quantized data
    shortest = min(w.length for w in windows)
    tol = 1e-9 * max(1.0, float(np.abs(xs).max()))
    best = next(w for w in windows if w.length <= shortest + tol)
    return xs, best


def shorth(x: ArrayLike) -> float:
    """Arithmetic mean of the shortest half-sample window."""
    xs, w = _shortest_window(x)
    return float(np.mean(xs[w.start : w.stop + 1]))


def lms(x: ArrayLike) -> float:
    """Least median of squares: midpoint of the shortest half-sample window."""
    xs, w = _shortest_window(x)
    return 0.5 * (float(xs[w.start]) + float(xs[w.stop]))


def lts(x: ArrayLike) -> float:
    """Least trimmed squares.

    In one dimension the optimal h-subset (h = floor(n/2)+1) is a contiguous
    block of the sorted data, so the block of minimal within-window sum of
    squares is found by exact enumeration; its mean is returned.  Ties go to
    the smallest window start.
    """
    xs = np.sort(_as_input(x))
    n = xs.size
    if n < 2:
        raise ValueError("need at least two values")
    h = n // 2 + 1
    stats = []
    for k in range(n - h + 1):
        win = xs[k : k + h]
        m = win.mean()
        stats.append((float(np.sum((win - m) ** 2)), float(m)))  # centered, shift-stable
    best_sse = min(s for s, _ in stats)
    tol = 1e-9 * max(1.0, best_sse)
    return next(m for s, m in stats if s <= best_sse + tol)


def owa_penalty(delta: ArrayLike) -> PenaltySpec:
    """OWA penalty sum_i delta_i * S_i((x - y)^2), S_i the i-th smallest."""
    d = np.asarray(delta, dtype=float)
    if np.any(d < 0) or d.sum() <= 0:
        raise ValueError("delta must be non-negative with positive sum")

    def whole(xs: np.ndarray, y: float) -> float:
        r2 = np.sort((xs - y) ** 2)
        return float(np.dot(d, r2))

    return PenaltySpec(whole=whole, convexity="lower-semicontinuous")


def owa_penalty_estimator(
    x: ArrayLike, delta: ArrayLike, method: str = "exact"
) -> float:
    """Argmin over y of the OWA-weighted ordered squared residuals.

    Special cases of the weight vector recover classical operators:
    all-ones -> least squares, (0,..,0,1) -> midrange, median weights -> LMS,
    trimmed (1,..,1_h,0,..,0) -> LTS.  Leftmost minimiser convention.

    "exact" solves each piecewise-quadratic segment analytically (segment
    boundaries at all pairwise midpoints); "penalty" delegates to the generic
    grid minimizer and serves as an independent cross-check.
    """
    x = _as_input(x)
    d = np.asarray(delta, dtype=float)
    if d.shape != x.shape:
        raise ValueError("delta must match the input length")
    if np.any(d < 0) or d.sum() <= 0:
        raise ValueError("delta must be non-negative with positive sum")

    if method == "penalty":
        cfg = MinimizerConfig(
            grid_points=4001,
            extra_candidates=[(a + b) / 2.0 for a in x for b in x],
        )
        return minimize_penalty(owa_penalty(d), x, cfg)
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")

    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        return lo
    # Segment boundaries: ordering of (x_i - y)^2 changes only at pairwise
    # midpoints.  Within a segment the objective is one strictly convex
    # quadratic with vertex sum(d_i x_sigma(i)) / sum(d).
    mids = (x[:, None] + x[None, :]) / 2.0
    bounds = np.unique(np.concatenate([mids.ravel(), [lo, hi]]))
    bounds = bounds[(bounds >= lo) & (bounds <= hi)]
    centers = 0.5 * (bounds[:-1] + bounds[1:])
    order = np.argsort(np.abs(x[None, :] - centers[:, None]), axis=1, kind="stable")
    xs_seg = x[order]  # per-segment residual-magnitude ordering of the data
    total = d.sum()
    vertices = (xs_seg @ d) / total
    vertices = np.clip(vertices, bounds[:-1], bounds[1:])

    cand = np.unique(np.concatenate([bounds, vertices]))
    r2 = np.sort((x[None, :] - cand[:, None]) ** 2, axis=1)
    vals = r2 @ d
    best = float(vals.min())
    tie_tol = 1e-12 * max(1.0, abs(best))
    return float(cand[int(np.argmax(vals <= best + tie_tol))])


def cauchy_kernel(t: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + t)


def density_mean(
    x: ArrayLike, kernel: Callable[[np.ndarray], np.ndarray] = cauchy_kernel
) -> float:
    """Weighted mean with weights decaying in each point's mean squared
    distance to the others through the (default Cauchy) kernel."""
    x = _as_input(x)
    d2 = (x[:, None] - x[None, :]) ** 2
    u = np.asarray(kernel(d2.mean(axis=1)), dtype=float)
    if np.any(u <= 0):
        raise ValueError("kernel must be strictly positive")
    return float(np.dot(u, x) / u.sum())
