"""
Least-squares fit of the single-attractor decay model

    A(N) = c1 + (total − c1) · exp(−c2 · N)

to (N, A) points. The solver evaluates the residual sum of squares on a
coarse grid over c1 ∈ [0, total], c2 ∈ [0, 1], then repeatedly re-grids a
shrinking window around the best point until both grid spacings fall
below the relative tolerance. No derivatives, fully deterministic.
"""

import logging
from typing import Iterable, NamedTuple, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

C2_MAX = 1.0
COARSE_POINTS = 201
REFINE_POINTS = 41
# Half-width of the refinement window, in grid spacings of the previous pass.
REFINE_HALF_WIDTH = 5
RELATIVE_TOLERANCE = 1e-6
MAX_REFINEMENTS = 60


class ExponentialFit(NamedTuple):
    c1: float
    c2: float


def _as_arrays(points: Iterable[Sequence[float]]) -> Tuple[np.ndarray, np.ndarray]:
    pairs = [(float(n), float(a)) for n, a in points]
    if len(pairs) < 3:
        raise ValueError(f"At least 3 points are needed for a fit, got {len(pairs)}")
    depths = np.array([n for n, _ in pairs])
    values = np.array([a for _, a in pairs])
    if np.all(depths == depths[0]):
        raise ValueError("Degenerate fit: every point has the same depth")
    return depths, values


def residual_sum(points: Iterable[Sequence[float]], total: float, c1: float, c2: float) -> float:
    depths, values = _as_arrays(points)
    model = c1 + (total - c1) * np.exp(-c2 * depths)
    return float(np.sum((values - model) ** 2))


def _grid_sse(depths, values, total, c1_axis, c2_axis) -> np.ndarray:
    c1 = c1_axis[:, None, None]
    c2 = c2_axis[None, :, None]
    model = c1 + (total - c1) * np.exp(-c2 * depths[None, None, :])
    return np.sum((values[None, None, :] - model) ** 2, axis=-1)


def _best(sse: np.ndarray) -> Tuple[int, int]:
    # argmin returns the first minimum in C order, which keeps ties stable.
    flat = int(np.argmin(sse))
    return divmod(flat, sse.shape[1])


def fit_exponential(points: Iterable[Sequence[float]], total: float) -> ExponentialFit:
    """
    Fit c1, c2 to (depth, A) points. `total` is the number of surveyed
    denominators (2000 for the published k <= 2000 table).
    """
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    depths, values = _as_arrays(points)

    c1_axis = np.linspace(0.0, total, COARSE_POINTS)
    c2_axis = np.linspace(0.0, C2_MAX, COARSE_POINTS)
    h1 = c1_axis[1] - c1_axis[0]
    h2 = c2_axis[1] - c2_axis[0]
    i, j = _best(_grid_sse(depths, values, total, c1_axis, c2_axis))
    c1, c2 = c1_axis[i], c2_axis[j]

    for _ in range(MAX_REFINEMENTS):
        if h1 <= RELATIVE_TOLERANCE * max(abs(c1), 1.0) and h2 <= RELATIVE_TOLERANCE * max(
            abs(c2), 1e-3
        ):
            break
        c1_axis = np.linspace(
            max(0.0, c1 - REFINE_HALF_WIDTH * h1),
            min(total, c1 + REFINE_HALF_WIDTH * h1),
            REFINE_POINTS,
        )
        c2_axis = np.linspace(
            max(0.0, c2 - REFINE_HALF_WIDTH * h2),
            min(C2_MAX, c2 + REFINE_HALF_WIDTH * h2),
            REFINE_POINTS,
        )
        h1 = c1_axis[1] - c1_axis[0]
        h2 = c2_axis[1] - c2_axis[0]
        i, j = _best(_grid_sse(depths, values, total, c1_axis, c2_axis))
        c1, c2 = c1_axis[i], c2_axis[j]

    fit = ExponentialFit(c1=float(c1), c2=float(c2))
    logger.info(
        "Fitted c1=%.6f c2=%.6f (sse=%.6g) to %d points",
        fit.c1,
        fit.c2,
        residual_sum(zip(depths, values), total, fit.c1, fit.c2),
        len(depths),
    )
    return fit
