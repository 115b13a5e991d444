"""
rho_integral.py
###############

The vertical-line integral behind the Riesz-sum identity,

    I(y) = (1/2 pi i) int_(a) G_rho(s) y^-s ds,
    G_rho(s) = Gamma(delta - s) prod Gamma(alpha_i s + conj beta_i)
               / (Gamma(1 + delta - s + rho) prod Gamma(alpha_i (delta - s) + beta_i)),

its smooth part from the poles of G_rho right of the line, and the large-argument
expansion of its oscillating part.

|G_rho(a + it)| decays only like |t|^((2a - delta) d' - 1 - rho), so the quadrature runs
well past the stationary point of the phase and finishes with integration by parts.
"""

# Imports
import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .config import ASYMPTOTIC_THRESHOLD, MAX_POLE_ORDER, POLE_GUARD_RADIUS, get_node_budget
from .errors import AsymptoticThresholdError, CalibrationError, ContourError, GammaPoleError
from .functional import FunctionalEquationData
from .gamma import GammaRatio, GammaSignature
from .kernels import ContourSpec, KernelValue
from .quadrature import adaptive_edges, compensated_sum, ibp_tail, laurent_coefficients, panel_rule
from .residues import ResidualTerm, ResidualTermSum, default_line

logger = logging.getLogger(__name__)

ROUNDOFF_FACTOR = 64.0 * np.finfo(float).eps
BLOCK_RATIO = 2.0  # Largest ratio of stationary heights sharing one node set
TAIL_START = 2.5  # Quadrature end as a multiple of the largest stationary height
MIN_TAIL_START = 40.0
TAIL_GROWTH = 1.5
MAX_EXTENSIONS = 8
MATRIX_ENTRIES = 2_000_000  # Complex entries per (y, node) block
CALIBRATION_GRID = (50.0, 400.0, 48)
MAX_CALIBRATED_ORDER = 2
ORDER_DETECTION_THRESHOLD = 1e-9


def g_rho_ratio(sig: GammaSignature, delta: float, rho: float) -> GammaRatio:
    """G_rho as a Gamma quotient."""
    terms = [(1, -1.0, delta)]
    terms += [(1, alpha, beta.conjugate()) for alpha, beta in zip(sig.alphas, sig.betas)]
    terms += [(-1, -1.0, 1.0 + delta + rho)]
    terms += [(-1, -alpha, alpha * delta + beta) for alpha, beta in zip(sig.alphas, sig.betas)]
    return GammaRatio(tuple(terms))


def decay_exponent(sig: GammaSignature, delta: float, rho: float, a: float) -> float:
    """The power of |t| that bounds |G_rho(a + it)|."""
    return (2.0 * a - delta) * sig.dprime - 1.0 - rho


def check_decay(sig: GammaSignature, delta: float, rho: float, a: float) -> None:
    """
    Raises:
        ContourError: Unless rho > (2a - delta) d' - 1, below which the line integral diverges.
    """
    if not decay_exponent(sig, delta, rho, a) < 0.0:
        raise ContourError(
            f"rho = {rho} is too small for the line a = {a}: need rho > {(2.0 * a - delta) * sig.dprime - 1.0:.4g}"
        )


def _log_scale(sig: GammaSignature) -> float:
    """2 sum alpha_i log alpha_i."""
    return 2.0 * math.fsum(alpha * math.log(alpha) for alpha in sig.alphas)


def stationary_height(sig: GammaSignature, y: float) -> float:
    """Height t* where the phase of G_rho(a + it) y^-it stops moving: (y / prod alpha^(2 alpha))^(1/(2d'))."""
    return math.exp((math.log(y) - _log_scale(sig)) / (2.0 * sig.dprime))


def _line_clearance(ratio: GammaRatio, a: float) -> float:
    """Distance from the line to the nearest real pole of a numerator factor."""
    nearest = math.inf
    for sign, c, d in ratio.terms:
        if sign != 1:
            continue
        # Poles of Gamma(c s + d) at s = -(d + k) / c; the nearest k to the line
        k_line = -(c * a + d.real)
        for k in (math.floor(k_line), math.ceil(k_line)):
            if k >= 0:
                nearest = min(nearest, abs(a + (d.real + k) / c))
    return nearest


@dataclass(frozen=True)
class _HalfLine:
    """One half-line of the integral: node values of log G_rho and the IBP data at its end."""

    s: np.ndarray
    log_g: np.ndarray
    weights: np.ndarray
    direction: int


def _half_line(ratio: GammaRatio, a: float, edges: np.ndarray, direction: int) -> _HalfLine:
    rule = panel_rule(edges)
    s = a + 1j * direction * rule.nodes
    try:
        log_g = ratio.log_value(s)
    except GammaPoleError as e:
        raise ContourError(f"pole on the line a={a}: {e}") from e
    return _HalfLine(s, log_g, rule.weights, direction)


def _line_sums(half: _HalfLine, log_y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """sum_j w_j G(s_j) y^-s_j for every y, chunked to keep the matrix small."""
    chunk = max(1, MATRIX_ENTRIES // max(half.s.size, 1))
    values = np.empty(log_y.size, dtype=complex)
    magnitudes = np.empty(log_y.size, dtype=float)
    for start in range(0, log_y.size, chunk):
        block = log_y[start:start + chunk]
        terms = np.exp(half.log_g[None, :] - half.s[None, :] * block[:, None]) * half.weights[None, :]
        values[start:start + chunk] = terms.sum(axis=1)
        magnitudes[start:start + chunk] = np.abs(terms).sum(axis=1)
    return values, magnitudes


def _ibp(ratio: GammaRatio, a: float, t_end: float, log_y: np.ndarray, direction: int) -> Tuple[np.ndarray, np.ndarray]:
    s_end = complex(a, direction * t_end)
    d1, d2, d3 = ratio.log_derivatives(s_end, count=3)
    log_g = complex(ratio.log_value(s_end))
    g = np.exp(log_g - s_end * log_y)
    return ibp_tail(g, d1 - log_y, d2, d3, direction)


def _block_values(
    ratio: GammaRatio, sig: GammaSignature, a: float, log_y: np.ndarray, symmetric: bool, tol: float
) -> Tuple[np.ndarray, np.ndarray]:
    """I at a set of arguments whose stationary heights are within BLOCK_RATIO of each other."""
    y_lo, y_hi = float(log_y.min()), float(log_y.max())
    log_scale = _log_scale(sig)
    two_d = 2.0 * sig.dprime

    def rate(t: float) -> float:
        phase = two_d * math.log(max(t, 1.0)) + log_scale
        return max(abs(phase - y_lo), abs(phase - y_hi)) + 0.5

    t_star = stationary_height(sig, math.exp(y_hi))
    first_width = min(0.25, 0.5 * _line_clearance(ratio, a))
    t_end = max(MIN_TAIL_START, TAIL_START * t_star)
    budget = get_node_budget()
    directions = (1,) if symmetric else (1, -1)

    totals = {d: np.zeros(log_y.size, dtype=complex) for d in directions}
    magnitude = np.zeros(log_y.size)
    t_start = 0.0
    width = first_width
    nodes_used = 0
    for extension in range(MAX_EXTENSIONS + 1):
        edges = adaptive_edges(rate, t_end, width, t_start=t_start)
        nodes_used += (edges.size - 1) * 20
        if nodes_used > budget:
            raise ContourError(
                f"I_rho quadrature to t={t_end:.4g} needs {nodes_used} nodes, above the node budget {budget}"
            )
        for d in directions:
            values, mags = _line_sums(_half_line(ratio, a, edges, d), log_y)
            totals[d] += values
            magnitude += mags
        tails = {d: _ibp(ratio, a, t_end, log_y, d) for d in directions}
        tail_error = sum(err for _, err in tails.values())
        if np.all(tail_error <= tol * np.maximum(magnitude, 1e-300)) or extension == MAX_EXTENSIONS:
            break
        width = float(edges[-1] - edges[-2])
        t_start, t_end = t_end, TAIL_GROWTH * t_end

    logger.debug(
        "I_rho block of %d arguments (t* up to %.4g): %d nodes per half-line, t_end=%.4g",
        log_y.size, t_star, nodes_used, t_end,
    )
    if symmetric:
        up = totals[1] + tails[1][0]
        values = up.real / math.pi + 0j
        scale = 1.0 / math.pi
    else:
        up = totals[1] + tails[1][0]
        down = totals[-1] + tails[-1][0]
        values = (up + down) / (2.0 * math.pi)
        scale = 1.0 / (2.0 * math.pi)
    errors = scale * (tail_error + ROUNDOFF_FACTOR * magnitude)
    return values, errors


def i_rho_values(
    sig: GammaSignature, delta: float, rho: float, a: float, ys: Sequence[float], tol: float = 1e-12
) -> Tuple[np.ndarray, np.ndarray]:
    """
    I at many positive arguments.

    Arguments are grouped so that each group shares one node set; the quadrature of a group ends
    at 2.5 times its largest stationary height and is extended until the integration-by-parts
    tail is below tol relative to the integral of |integrand|.

    Returns:
        (values, errors) aligned with ys.

    Raises:
        ContourError: For a pole on the line, a decay-condition violation or an exhausted node budget.
    """
    check_decay(sig, delta, rho, a)
    ratio = g_rho_ratio(sig, delta, rho)
    if _line_clearance(ratio, a) < POLE_GUARD_RADIUS:
        raise ContourError(f"the line a = {a} passes through a pole of G_rho")
    arr = np.atleast_1d(np.asarray(ys, dtype=float))
    if np.any(arr <= 0.0):
        raise ValueError("I_rho arguments must be positive")

    order = np.argsort(arr)
    log_y = np.log(arr[order])
    heights = np.array([stationary_height(sig, y) for y in arr[order]])
    values = np.empty(arr.size, dtype=complex)
    errors = np.empty(arr.size, dtype=float)
    start = 0
    while start < arr.size:
        stop = start + 1
        while stop < arr.size and heights[stop] <= BLOCK_RATIO * max(heights[start], 1.0):
            stop += 1
        block_values, block_errors = _block_values(ratio, sig, a, log_y[start:stop], sig.real_betas, tol)
        values[order[start:stop]] = block_values
        errors[order[start:stop]] = block_errors
        start = stop
    return values, errors


def i_rho_quadrature(
    fe: FunctionalEquationData, rho: float, a: float, y: float, contour: Optional[ContourSpec] = None
) -> KernelValue:
    """
    I(y) for the conjugate side of fe on the line a.

    Args:
        contour (Optional[ContourSpec]): Only its tol is used; the height is chosen from y.

    Raises:
        ContourError: If rho <= (2a - delta) d' - 1 or the line meets a pole.
    """
    if contour is not None and abs(contour.a - a) > POLE_GUARD_RADIUS:
        raise ContourError(f"contour line {contour.a} differs from a = {a}")
    tol = contour.tol if contour is not None else 1e-12
    values, errors = i_rho_values(fe.sig, fe.delta, rho, a, [y], tol)
    return KernelValue(complex(values[0]), float(errors[0]))


def i_rho_bessel_oracle(delta: float, rho: float, y: float) -> float:
    """Single Gamma(s) block: I(y) = y^(-(delta + rho)/2) J_(delta + rho)(2 sqrt y)."""
    order = delta + rho
    return float(y ** (-0.5 * order) * special.jv(order, 2.0 * math.sqrt(y)))


# Smooth part


@lru_cache(maxsize=64)
def right_pole_terms(sig: GammaSignature, delta: float, rho: float, a: float, limit: float) -> ResidualTermSum:
    """
    The smooth part S of I: minus the residues of G_rho(s) y^-s at its poles in (a, limit].

    A pole p of order m with Laurent coefficients h_-1..h_-m contributes
    -sum_l h_(-1-l) (-1)^l / l! y^-p (log y)^l. Poles cancelled by zeros of the denominator
    drop out.
    """
    ratio = g_rho_ratio(sig, delta, rho)
    candidates = [p for p in ratio.right_poles(limit) if p > a + POLE_GUARD_RADIUS]
    if any(abs(p - a) < POLE_GUARD_RADIUS for p in ratio.right_poles(limit)):
        raise ContourError(f"the line a = {a} passes through a pole of G_rho")

    def integrand(s: np.ndarray) -> np.ndarray:
        return np.exp(ratio.log_value(s))

    terms: List[ResidualTerm] = []
    for i, p in enumerate(candidates):
        gaps = [abs(p - q) for j, q in enumerate(candidates) if j != i]
        radius = min(0.1, 0.5 * min(gaps, default=1.0), 0.5 * (p - a))
        coefficients = laurent_coefficients(integrand, complex(p), radius, lowest=-MAX_POLE_ORDER, highest=-1)
        size = max(abs(c) for c in coefficients.values())
        order = max((-k for k, c in coefficients.items() if abs(c) > ORDER_DETECTION_THRESHOLD * max(size, 1.0)), default=0)
        if order == 0:
            continue
        for l in range(order):
            h = coefficients[-1 - l]
            terms.append(ResidualTerm(complex(-p), l, -h * (-1) ** l / math.factorial(l)))
    logger.debug("G_rho right of a=%g up to %g: %d candidate poles, %d smooth terms", a, limit, len(candidates), len(terms))
    return ResidualTermSum(tuple(terms))


def smooth_part(sig: GammaSignature, delta: float, rho: float, a: float) -> ResidualTermSum:
    """S with every pole that decays slower than the oscillating part, plus two units of margin."""
    constants = asymptotic_constants(sig, delta, rho)
    oscillating = constants.exponent(0).real - rho - delta
    return right_pole_terms(sig, delta, float(rho), float(a), max(a, -oscillating) + 2.0)


# Large-argument expansion


@dataclass(frozen=True)
class AsymptoticConstants:
    """
    Constants of the expansion

        x^(rho + delta) I(x) ~ sum_n A_n x^((w - n - 2 i nu - 1/2) / (2d')) cos((x/h)^(1/(2d')) + pi (d' gamma + n/2 + i nu - mu))

    with w = d' delta + (2d' - 1) rho.
    """

    dprime: float
    nu: float
    omega_prime: float
    h: float
    mu: complex
    gamma: float
    k: complex

    def amplitude0(self) -> complex:
        two_d = 2.0 * self.dprime
        return self.k / (2.0 * math.pi * self.dprime) * complex(self.h) ** (2j * self.nu / two_d - self.gamma)

    def exponent(self, n: int) -> complex:
        return (self.omega_prime - n - 2j * self.nu - 0.5) / (2.0 * self.dprime)

    def phase(self, n: int) -> complex:
        return math.pi * (self.dprime * self.gamma + 0.5 * n + 1j * self.nu - self.mu)

    def frequency(self, x: float) -> float:
        return (x / self.h) ** (1.0 / (2.0 * self.dprime))

    def term(self, n: int, amplitude: complex, x: float) -> complex:
        return amplitude * complex(x) ** self.exponent(n) * cmath.cos(self.frequency(x) + self.phase(n))


def asymptotic_constants(sig: GammaSignature, delta: float, rho: float) -> AsymptoticConstants:
    dprime = sig.dprime
    two_d = 2.0 * dprime
    nu = math.fsum(beta.imag for beta in sig.betas)
    omega_prime = dprime * delta + (two_d - 1.0) * rho
    h = math.exp(_log_scale(sig) - two_d * math.log(two_d))
    mu = 0.5 + sum(beta - 0.5 for beta in sig.betas)
    gamma = -(0.5 * delta + rho / two_d + 1.0 / (2.0 * two_d))
    log_k = 0.5 * math.log(2.0 * math.pi) + (-two_d * gamma + 2j * nu + 0.5) * math.log(two_d)
    log_k -= sum((alpha * delta + 2j * beta.imag) * math.log(alpha) for alpha, beta in zip(sig.alphas, sig.betas))
    return AsymptoticConstants(dprime, nu, omega_prime, h, complex(mu), gamma, cmath.exp(log_k))


@dataclass(frozen=True)
class AsymptoticCalibration:
    """Fitted A_1..A_m with the relative least-squares residual over x_range."""

    amplitudes: Tuple[complex, ...]
    residual: float
    x_range: Tuple[float, float]


def _oscillating_exact(fe: FunctionalEquationData, rho: float, a: float, xs: np.ndarray) -> np.ndarray:
    values, _ = i_rho_values(fe.sig, fe.delta, rho, a, xs)
    terms = smooth_part(fe.sig, fe.delta, rho, a)
    smooth = terms.evaluate(xs) if len(terms) else 0.0
    return xs ** (rho + fe.delta) * (values - smooth)


@lru_cache(maxsize=32)
def calibrate_asymptotic_coefficients(fe: FunctionalEquationData, rho: float, m: int, a: float) -> AsymptoticCalibration:
    """
    Fits A_1..A_m by weighted complex least squares against quadrature on x in [50, 400],
    with A_0 held at its closed form.

    Raises:
        CalibrationError: If m exceeds the supported order.
    """
    if m > MAX_CALIBRATED_ORDER:
        raise CalibrationError(f"A_n is calibrated up to n = {MAX_CALIBRATED_ORDER}, got m = {m}")
    if m == 0:
        return AsymptoticCalibration((), 0.0, (0.0, 0.0))
    constants = asymptotic_constants(fe.sig, fe.delta, rho)
    lo, hi, count = CALIBRATION_GRID
    xs = np.geomspace(lo, hi, count)
    target = _oscillating_exact(fe, rho, a, xs)
    target = target - np.array([constants.term(0, constants.amplitude0(), x) for x in xs])
    basis = np.array([[constants.term(n, 1.0, x) for n in range(1, m + 1)] for x in xs])
    weights = np.array([1.0 / abs(complex(x) ** constants.exponent(0)) for x in xs])
    solution, _, _, _ = np.linalg.lstsq(basis * weights[:, None], target * weights, rcond=None)
    fitted = basis @ solution
    residual = float(np.linalg.norm((fitted - target) * weights) / max(np.linalg.norm(target * weights), 1e-300))
    logger.debug("calibrated A_1..A_%d for %s rho=%g: %s (residual %.3g)", m, fe.name, rho, solution, residual)
    if residual > 0.5:
        logger.warning("calibration of A_1..A_%d for %s fits poorly (relative residual %.3g)", m, fe.name, residual)
    return AsymptoticCalibration(tuple(complex(c) for c in solution), residual, (lo, hi))


@dataclass(frozen=True)
class AsymptoticEvaluation:
    """x^(rho + delta) I(x) from the expansion, its individual terms and the smooth part."""

    value: complex
    terms: Tuple[Dict[str, complex], ...]
    smooth: complex


def i_rho_asymptotic(
    fe: FunctionalEquationData, rho: float, x: float, m: int = 0, a: Optional[float] = None
) -> AsymptoticEvaluation:
    """
    The m-term expansion of x^(rho + delta) I(x) plus x^(rho + delta) S(x).

    Raises:
        AsymptoticThresholdError: If x is below ASYMPTOTIC_THRESHOLD.
        CalibrationError: If m exceeds the calibrated order.
    """
    if x < ASYMPTOTIC_THRESHOLD:
        raise AsymptoticThresholdError(f"x = {x} is below the asymptotic threshold {ASYMPTOTIC_THRESHOLD}")
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    a = default_line(fe) if a is None else float(a)
    constants = asymptotic_constants(fe.sig, fe.delta, rho)
    amplitudes = (constants.amplitude0(),) + calibrate_asymptotic_coefficients(fe, float(rho), m, a).amplitudes
    table = []
    for n, amplitude in enumerate(amplitudes):
        table.append({
            "n": n,
            "amplitude": amplitude,
            "exponent": constants.exponent(n),
            "phase": constants.phase(n),
            "value": constants.term(n, amplitude, x),
        })
    smooth_terms = smooth_part(fe.sig, fe.delta, rho, a)
    smooth = complex(x ** (rho + fe.delta) * smooth_terms.evaluate(x)) if len(smooth_terms) else 0j
    value = compensated_sum(np.array([row["value"] for row in table])) + smooth
    return AsymptoticEvaluation(value, tuple(table), smooth)


def asymptotic_error_envelope(
    fe: FunctionalEquationData, rho: float, x: float, m: int = 0, samples: int = 32, a: Optional[float] = None
) -> float:
    """
    max |quadrature - expansion| / max |quadrature| over one period of the cosine starting at x.
    """
    a = default_line(fe) if a is None else float(a)
    constants = asymptotic_constants(fe.sig, fe.delta, rho)
    two_d = 2.0 * constants.dprime
    x_end = constants.h * (constants.frequency(x) + 2.0 * math.pi) ** two_d
    xs = np.linspace(x, x_end, samples)
    values, _ = i_rho_values(fe.sig, fe.delta, rho, a, xs)
    exact = xs ** (rho + fe.delta) * values
    approx = np.array([i_rho_asymptotic(fe, rho, float(v), m, a).value for v in xs])
    return float(np.max(np.abs(exact - approx)) / np.max(np.abs(exact)))
