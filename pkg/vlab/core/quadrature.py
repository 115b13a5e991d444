"""
quadrature.py
#############

Quadrature building blocks: Gauss-Legendre panel rules on graded or rate-adapted
panels, Cauchy-FFT Laurent coefficients on circles, and the asymptotic
integration-by-parts tail of an oscillatory vertical-line integral.
"""

# Imports
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from .config import RESIDUE_MAX_POINTS, RESIDUE_TOL
from .errors import ContourError, ResidueError

logger = logging.getLogger(__name__)

NODES_PER_PERIOD = 24  # Target density of an oscillation on a 20-node panel
GROWTH = 1.5  # Ratio of consecutive panel widths near the origin


@lru_cache(maxsize=32)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], cached per order."""
    nodes, weights = leggauss(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


@dataclass(frozen=True)
class PanelRule:
    """Composite Gauss-Legendre rule plus the half-order rule on the same panels."""

    edges: np.ndarray
    nodes: np.ndarray
    weights: np.ndarray
    half_nodes: np.ndarray
    half_weights: np.ndarray

    @property
    def size(self) -> int:
        return int(self.nodes.size + self.half_nodes.size)


def _map_rule(edges: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre(order)
    left = edges[:-1, None]
    width = (edges[1:] - edges[:-1])[:, None]
    nodes = left + 0.5 * width * (x[None, :] + 1.0)
    weights = 0.5 * width * w[None, :]
    return nodes.ravel(), weights.ravel()


def panel_rule(edges: Sequence[float], nodes_per_panel: int = 20) -> PanelRule:
    """
    Builds the composite rule on the given panel edges.

    Args:
        edges: Increasing panel boundaries.
        nodes_per_panel (int): Order of the main rule. The comparison rule uses half as many.
    """
    edge_array = np.asarray(edges, dtype=float)
    if edge_array.ndim != 1 or edge_array.size < 2 or np.any(np.diff(edge_array) <= 0.0):
        raise ValueError("panel edges must be a strictly increasing sequence of at least two points")
    nodes, weights = _map_rule(edge_array, nodes_per_panel)
    half_nodes, half_weights = _map_rule(edge_array, max(nodes_per_panel // 2, 1))
    return PanelRule(edge_array, nodes, weights, half_nodes, half_weights)


def graded_edges(t_max: float, panels: int, first_width: float, growth: float = GROWTH) -> np.ndarray:
    """
    Panel edges on [0, t_max]: widths first_width * growth**j, capped by a uniform width.

    The cap is chosen by bisection so that exactly `panels` panels cover [0, t_max].
    """
    if panels < 1 or t_max <= 0.0 or first_width <= 0.0:
        raise ValueError(f"Invalid panel layout: t_max={t_max}, panels={panels}, first_width={first_width}")
    geometric = first_width * growth ** np.arange(panels)
    if panels * first_width >= t_max:
        widths = np.full(panels, t_max / panels)
    elif geometric.sum() <= t_max:
        widths = geometric * (t_max / geometric.sum())
    else:
        lo, hi = first_width, t_max
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if np.minimum(geometric, mid).sum() < t_max:
                lo = mid
            else:
                hi = mid
        widths = np.minimum(geometric, hi)
        widths[-1] += t_max - widths.sum()
    edges = np.concatenate(([0.0], np.cumsum(widths)))
    edges[-1] = t_max
    return edges


def adaptive_edges(
    rate: Callable[[float], float],
    t_end: float,
    first_width: float,
    t_start: float = 0.0,
    nodes_per_panel: int = 20,
    growth: float = GROWTH,
    max_panels: int = 200_000,
) -> np.ndarray:
    """
    Panel edges on [t_start, t_end] resolving an integrand whose phase changes at `rate`.

    Widths grow geometrically from first_width but never exceed what keeps
    NODES_PER_PERIOD nodes per oscillation at the local phase rate.

    Raises:
        ContourError: If more than max_panels panels would be needed.
    """
    edges = [t_start]
    t = t_start
    width = first_width
    while t < t_end:
        local = max(rate(t), rate(min(t + width, t_end)), 1e-12)
        width = min(width, 2.0 * math.pi * nodes_per_panel / (NODES_PER_PERIOD * local))
        if t_end - (t + width) < 0.25 * width:
            width = t_end - t
        t = t + width
        edges.append(t)
        width *= growth
        if len(edges) > max_panels:
            raise ContourError(f"more than {max_panels} panels needed to reach t={t_end}")
    edges[-1] = t_end
    return np.asarray(edges)


def evaluate_on(func: Callable, points: np.ndarray) -> np.ndarray:
    """Evaluates func on an array, falling back to pointwise calls for scalar-only callables."""
    try:
        values = np.asarray(func(points), dtype=complex)
        if values.shape == points.shape:
            return values
    except (TypeError, ValueError):
        pass
    return np.array([complex(func(p)) for p in points], dtype=complex)


def laurent_coefficients(
    func: Callable,
    center: complex,
    radius: float,
    lowest: int = -1,
    highest: int = 0,
    tol: float = RESIDUE_TOL,
    n_start: int = 32,
    n_max: int = RESIDUE_MAX_POINTS,
) -> Dict[int, complex]:
    """
    Laurent coefficients c_k, lowest <= k <= highest, of func around center.

    Uses the N-point trapezoid rule on |s - center| = radius through one FFT; N is doubled
    until successive coefficient sets agree to tol relative to the largest sample.

    Raises:
        ResidueError: If the coefficients do not settle by n_max points.
    """
    if radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius}")
    ks = np.arange(lowest, highest + 1)
    previous: Optional[np.ndarray] = None
    n = max(n_start, 2 * (highest - lowest + 2))
    while n <= n_max:
        theta = 2.0 * np.pi * np.arange(n) / n
        values = evaluate_on(func, center + radius * np.exp(1j * theta))
        if not np.all(np.isfinite(values)):
            raise ResidueError(f"non-finite integrand on the circle around {center} (radius {radius})")
        spectrum = np.fft.fft(values) / n
        scaled = spectrum[ks % n]
        scale = max(float(np.max(np.abs(values))), 1e-300)
        if previous is not None and float(np.max(np.abs(scaled - previous))) <= tol * max(scale, 1.0):
            logger.debug("Laurent coefficients around %s converged with %d points", center, n)
            return {int(k): complex(c) / radius ** int(k) for k, c in zip(ks, scaled)}
        previous = scaled
        n *= 2
    raise ResidueError(
        f"circle quadrature around {center} (radius {radius}) did not converge with {n_max} points;"
        " an unlisted singularity may be nearby"
    )


def ibp_tail(
    g_at_t: np.ndarray, d1: np.ndarray, d2: complex, d3: complex, direction: int = 1
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Asymptotic value of int_T^inf exp(h(t)) dt for h(t) = log g(s), s = a + i*direction*t.

    Args:
        g_at_t: exp(h(T)).
        d1, d2, d3: First three s-derivatives of log g at s(T).
        direction (int): +1 for the upper half-line, -1 for the lower one.

    Returns:
        (value, error): The two-correction value and the size of its last correction.
    """
    j = 1j * direction
    h1 = j * np.asarray(d1)
    h2 = -d2
    h3 = j**3 * d3
    leading = 1.0 / h1 + h2 / h1**3
    correction = -h3 / h1**4 + 3.0 * h2 * h2 / h1**5
    g = np.asarray(g_at_t)
    return -g * (leading + correction), np.abs(g * correction)


def compensated_sum(values: np.ndarray) -> complex:
    """Exactly rounded sum of the real and imaginary parts, independent of summation order."""
    arr = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
