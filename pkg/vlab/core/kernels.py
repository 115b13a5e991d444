"""
kernels.py
##########

Inverse Mellin kernels on vertical lines:

    Z(x) = (1/2 pi i) int prod Gamma(alpha_i s + beta_i) x^-s ds
    Y(x) = (1/2 pi i) int Gamma(s) prod Gamma(alpha_i s + beta_i) x^-s ds
    X(y) = (1/2 pi i) int Gamma(delta - s) prod Gamma(alpha_i s + beta_i) y^-s ds

The line integrals use Gauss-Legendre panels, geometrically graded near t = 0, with a
Stirling tail bound beyond t_max. The nested-integral oracle, the closed-form Gamma-cosine
calibration and the Stirling-structured decay bound live here too.
"""

# Imports
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from .config import DEFAULT_KERNEL_TOL, POLE_GUARD_RADIUS, STIRLING_THRESHOLD, get_node_budget
from .errors import CalibrationError, ContourError, GammaPoleError
from .gamma import GammaRatio, GammaSignature, log_gamma, log_gamma_magnitude_estimate
from .quadrature import (
    GROWTH,
    NODES_PER_PERIOD,
    adaptive_edges,
    graded_edges,
    ibp_tail,
    panel_rule,
    PanelRule,
)

logger = logging.getLogger(__name__)

CHUNK = 256  # x values per matrix block
ROUNDOFF_FACTOR = 64.0 * np.finfo(float).eps


class KernelVariant(Enum):
    """The three kernel families."""

    Z = "Z"  # prod Gamma(alpha s + beta)
    Y = "Y"  # Gamma(s) prod Gamma(alpha s + beta)
    X = "X"  # Gamma(delta - s) prod Gamma(alpha s + beta)


@dataclass(frozen=True)
class KernelKind:
    """A kernel family, with delta for the X variant."""

    variant: KernelVariant
    delta: Optional[float] = None

    def __post_init__(self) -> None:
        if self.variant is KernelVariant.X:
            if self.delta is None or not self.delta > 0.0:
                raise ValueError(f"X kernels need delta > 0, got {self.delta}")
            object.__setattr__(self, "delta", float(self.delta))
        elif self.delta is not None:
            raise ValueError(f"delta is only meaningful for X kernels, got {self.delta} for {self.variant.value}")

    @classmethod
    def of(cls, name: str, delta: Optional[float] = None) -> "KernelKind":
        """Builds a kind from its letter, e.g. KernelKind.of('X', 1.0)."""
        try:
            variant = KernelVariant(name.upper())
        except ValueError as e:
            raise ValueError(f"Unknown kernel kind {name!r}; expected Z, Y or X") from e
        return cls(variant, delta if variant is KernelVariant.X else None)

    def __str__(self) -> str:
        if self.variant is KernelVariant.X:
            return f"X(delta={self.delta:g})"
        return self.variant.value


@dataclass(frozen=True)
class ContourSpec:
    """
    A truncated vertical line Re s = a, |t| <= t_max, split into graded Gauss-Legendre panels.
    """

    a: float
    t_max: float
    panels: int
    nodes_per_panel: int = 20
    tol: float = DEFAULT_KERNEL_TOL
    first_width: float = 0.25

    def __post_init__(self) -> None:
        if not self.a > 0.0:
            raise ContourError(f"contour abscissa must be positive, got {self.a}")
        if not self.t_max > 0.0 or not self.tol > 0.0 or not self.first_width > 0.0:
            raise ContourError(f"t_max, tol and first_width must be positive: {self}")
        if self.panels < 1 or self.nodes_per_panel < 2:
            raise ContourError(f"need at least one panel of two nodes: {self}")
        budget = get_node_budget()
        if self.panels * self.nodes_per_panel > budget:
            raise ContourError(
                f"contour needs {self.panels * self.nodes_per_panel} nodes, above the node budget {budget}"
            )

    def rule(self) -> PanelRule:
        return _contour_rule(self)


@lru_cache(maxsize=256)
def _contour_rule(contour: ContourSpec) -> PanelRule:
    edges = graded_edges(contour.t_max, contour.panels, min(contour.first_width, contour.t_max))
    return panel_rule(edges, contour.nodes_per_panel)


@dataclass(frozen=True)
class KernelValue:
    value: complex
    error: float


def kernel_ratio(kind: KernelKind, sig: GammaSignature) -> GammaRatio:
    """The Gamma quotient integrated by a kernel of this kind."""
    ratio = GammaRatio.from_signature(sig)
    if kind.variant is KernelVariant.Y:
        return ratio.extended([(1, 1.0, 0.0)])
    if kind.variant is KernelVariant.X:
        return ratio.extended([(1, -1.0, kind.delta)])
    return ratio


def extended_signature(kind: KernelKind, sig: GammaSignature, a: float) -> GammaSignature:
    """
    The signature whose factorwise Stirling magnitude on Re s = a matches the kernel integrand.

    |Gamma(delta - a - it)| equals |Gamma(1 * (a + it) + (delta - 2a))| up to the sign of t.
    """
    if kind.variant is KernelVariant.Y:
        return sig.with_factor(1.0, 0.0)
    if kind.variant is KernelVariant.X:
        return sig.with_factor(1.0, kind.delta - 2.0 * a)
    return sig


def pole_distance(kind: KernelKind, sig: GammaSignature, a: float) -> float:
    """Distance from the point s = a to the nearest pole of the kernel integrand."""
    distances = []
    for alpha, beta in zip(sig.alphas, sig.betas):
        distances.append(abs(a + beta / alpha))
    if kind.variant is KernelVariant.Y:
        distances.append(abs(a))
    if kind.variant is KernelVariant.X:
        k = max(round(a - kind.delta), 0)
        distances.append(abs(kind.delta + k - a))
        if k > 0:
            distances.append(abs(kind.delta + k - 1 - a))
    return min(distances)


def crossed_x_poles(kind: KernelKind, a: float) -> List[float]:
    """Poles delta + k of Gamma(delta - s) lying left of the line Re s = a."""
    if kind.variant is not KernelVariant.X:
        return []
    out = []
    k = 0
    while kind.delta + k < a:
        out.append(kind.delta + k)
        k += 1
    return out


def check_line(kind: KernelKind, sig: GammaSignature, a: float) -> None:
    """
    Validates a line for a kernel.

    Raises:
        ContourError: If a <= 0, if some Re(alpha_i a + beta_i) <= 0, or if a pole of
            Gamma(delta - s) lies on the line.
    """
    if not a > 0.0:
        raise ContourError(f"kernel line must satisfy a > 0, got {a}")
    for i, (alpha, beta) in enumerate(zip(sig.alphas, sig.betas)):
        if (alpha * a + beta).real <= 0.0:
            raise ContourError(f"Re(alpha_{i} a + beta_{i}) = {(alpha * a + beta).real} is not positive at a = {a}")
    if kind.variant is KernelVariant.X:
        k = round(a - kind.delta)
        if k >= 0 and abs(a - kind.delta - k) < POLE_GUARD_RADIUS:
            raise ContourError(f"the pole delta + {k} = {kind.delta + k} of Gamma(delta - s) lies on the line a = {a}")
        crossed = crossed_x_poles(kind, a)
        if crossed:
            logger.debug("X line a=%g lies right of the Gamma(delta - s) poles %s", a, crossed)


def default_kernel_line(kind: KernelKind, sig: GammaSignature) -> float:
    """A safe abscissa: a >= 1 right of the Gamma-block poles, or between 0 and delta for X."""
    need = max(max((0.5 - beta.real) / alpha for alpha, beta in zip(sig.alphas, sig.betas)), 0.0)
    if kind.variant is KernelVariant.X:
        a = max(0.5 * kind.delta, need)
        while pole_distance(kind, sig, a) < 0.1:
            a += 0.25
        return a
    return max(1.0, need)


def _tail_estimate(ext: GammaSignature, a: float, t: float) -> float:
    """(1/pi) int_{|t'|>t} of the Stirling magnitude, doubled for the estimate's own accuracy."""
    rate = 0.5 * math.pi * ext.dprime
    kappa = math.fsum(alpha * a + beta.real - 0.5 for alpha, beta in zip(ext.alphas, ext.betas))
    denominator = rate - max(kappa, 0.0) / t
    if denominator <= 0.0:
        return math.inf
    return 2.0 / math.pi * math.exp(log_gamma_magnitude_estimate(ext, a, t)) / denominator


def choose_truncation(
    sig: GammaSignature,
    kind: KernelKind,
    a: float,
    tol: float,
    x_range: Tuple[float, float] = (1e-3, 1e3),
    nodes_per_panel: int = 20,
) -> ContourSpec:
    """
    Picks t_max and a panel layout for a kernel line.

    t_max is the first point of a 0.5-step scan from the Stirling threshold where the tail
    bound (at x = 1) drops below tol/4. Panel widths keep NODES_PER_PERIOD nodes per
    oscillation of x^(-it) times the Gamma block's own phase, over all x in x_range.

    Raises:
        ContourError: For an invalid line or when the node budget would be exceeded.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    check_line(kind, sig, a)
    ext = extended_signature(kind, sig, a)

    t_max = STIRLING_THRESHOLD
    while _tail_estimate(ext, a, t_max) >= 0.25 * tol:
        t_max += 0.5
        if t_max > 1e4:
            raise ContourError(f"no truncation height below 1e4 reaches tol={tol} for {kind} on a={a}")

    log_x = max(abs(math.log(x_range[0])), abs(math.log(x_range[1])))
    gamma_phase = 0.0
    for alpha, beta in zip(ext.alphas, ext.betas):
        gamma_phase += alpha * (math.log(abs(alpha * a + beta) + alpha * t_max) + 1.0)
    phase_rate = log_x + gamma_phase
    cap = min(2.0, 2.0 * math.pi * nodes_per_panel / (NODES_PER_PERIOD * phase_rate))
    first_width = min(0.5, 0.5 * pole_distance(kind, sig, a), cap)

    covered = 0.0
    width = first_width
    panels = 0
    while covered < t_max - 1e-12:
        covered += min(width, cap)
        width *= GROWTH
        panels += 1

    logger.debug(
        "choose_truncation %s r=%d a=%g tol=%g: t_max=%g panels=%d first_width=%g",
        kind, sig.r, a, tol, t_max, panels, first_width,
    )
    return ContourSpec(a=a, t_max=t_max, panels=panels, nodes_per_panel=nodes_per_panel, tol=tol,
                       first_width=first_width)


@dataclass(frozen=True)
class _LineNodes:
    s_up: np.ndarray
    weights: np.ndarray
    log_up: np.ndarray
    log_down: Optional[np.ndarray]
    half_s_up: np.ndarray
    half_weights: np.ndarray
    half_log_up: np.ndarray
    half_log_down: Optional[np.ndarray]
    symmetric: bool
    tail_unit: float


@lru_cache(maxsize=256)
def _line_nodes(kind: KernelKind, sig: GammaSignature, contour: ContourSpec) -> _LineNodes:
    check_line(kind, sig, contour.a)
    ratio = kernel_ratio(kind, sig)
    rule = contour.rule()
    symmetric = sig.real_betas
    a = contour.a

    try:
        s_up = a + 1j * rule.nodes
        half_s_up = a + 1j * rule.half_nodes
        log_up = ratio.log_value(s_up)
        half_log_up = ratio.log_value(half_s_up)
        log_down = None if symmetric else ratio.log_value(np.conj(s_up))
        half_log_down = None if symmetric else ratio.log_value(np.conj(half_s_up))
        edge = ratio.log_value(np.array([a + 1j * contour.t_max, a - 1j * contour.t_max]))
    except GammaPoleError as e:
        raise ContourError(f"pole on the kernel line a={a}: {e}") from e

    ext = extended_signature(kind, sig, a)
    if contour.t_max >= STIRLING_THRESHOLD:
        tail_unit = _tail_estimate(ext, a, contour.t_max)
    else:
        # Below the Stirling threshold fall back on the integrand size at the cut
        rate = 0.5 * math.pi * ext.dprime
        tail_unit = 2.0 / math.pi * float(np.max(np.exp(edge.real))) / rate
    return _LineNodes(s_up, rule.weights, log_up, log_down, half_s_up, rule.half_weights, half_log_up,
                      half_log_down, symmetric, tail_unit)


def _line_sum(log_g: np.ndarray, s: np.ndarray, weights: np.ndarray, log_x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    terms = np.exp(log_g[None, :] - s[None, :] * log_x[:, None]) * weights[None, :]
    return terms.sum(axis=1), np.abs(terms).sum(axis=1)


@lru_cache(maxsize=128)
def _default_contour(kind: KernelKind, sig: GammaSignature, decade_lo: int, decade_hi: int) -> ContourSpec:
    a = default_kernel_line(kind, sig)
    return choose_truncation(sig, kind, a, DEFAULT_KERNEL_TOL, x_range=(10.0**decade_lo, 10.0**decade_hi))


def default_contour(kind: KernelKind, sig: GammaSignature, xs: Sequence[float]) -> ContourSpec:
    """The cached default contour covering the decades spanned by xs."""
    arr = np.asarray(xs, dtype=float)
    lo = min(int(math.floor(math.log10(float(arr.min())))), -3)
    hi = max(int(math.ceil(math.log10(float(arr.max())))), 3)
    return _default_contour(kind, sig, lo, hi)


def eval_kernel_array(
    kind: KernelKind, sig: GammaSignature, xs: Sequence[float], contour: Optional[ContourSpec] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Evaluates one kernel at many positive arguments.

    Returns:
        (values, errors): Complex kernel values and a-posteriori error estimates. For real betas
        the values have zero imaginary part.

    Raises:
        ContourError: For a pole on the line or when the tail bound exceeds contour.tol.
    """
    arr = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(arr <= 0.0):
        raise ValueError("kernel arguments must be positive")
    if contour is None:
        contour = default_contour(kind, sig, arr)
    nodes = _line_nodes(kind, sig, contour)
    if nodes.tail_unit > contour.tol:
        raise ContourError(
            f"tail bound {nodes.tail_unit:.3g} exceeds tol {contour.tol:.3g}; t_max={contour.t_max} is too small"
        )

    values = np.empty(arr.size, dtype=complex)
    errors = np.empty(arr.size, dtype=float)
    for start in range(0, arr.size, CHUNK):
        block = arr[start:start + CHUNK]
        log_x = np.log(block)
        full, magnitude = _line_sum(nodes.log_up, nodes.s_up, nodes.weights, log_x)
        half, _ = _line_sum(nodes.half_log_up, nodes.half_s_up, nodes.half_weights, log_x)
        if nodes.symmetric:
            value = full.real / np.pi + 0j
            half_value = half.real / np.pi
            magnitude = magnitude / np.pi
        else:
            full_down, magnitude_down = _line_sum(nodes.log_down, np.conj(nodes.s_up), nodes.weights, log_x)
            half_down, _ = _line_sum(nodes.half_log_down, np.conj(nodes.half_s_up), nodes.half_weights, log_x)
            value = (full + full_down) / (2.0 * np.pi)
            half_value = (half + half_down) / (2.0 * np.pi)
            magnitude = (magnitude + magnitude_down) / (2.0 * np.pi)
        tail = nodes.tail_unit * np.exp(-contour.a * log_x)
        values[start:start + CHUNK] = value
        errors[start:start + CHUNK] = np.maximum(np.abs(value - half_value), tail) + ROUNDOFF_FACTOR * magnitude
    return values, errors


def eval_kernel(
    kind: KernelKind, sig: GammaSignature, x: float, contour: Optional[ContourSpec] = None
) -> KernelValue:
    """
    Evaluates a Z, Y or X kernel at x > 0 on the contour's line.

    Args:
        kind (KernelKind): Kernel family.
        sig (GammaSignature): Gamma block (pass the conjugate signature for the dual side).
        x (float): Positive argument.
        contour (Optional[ContourSpec]): Line and quadrature layout; chosen automatically if omitted.

    Returns:
        KernelValue: The value and its error estimate.
    """
    values, errors = eval_kernel_array(kind, sig, [x], contour)
    return KernelValue(complex(values[0]), float(errors[0]))


# Nested Mellin oracle

MAX_NESTED_FACTORS = 3
_CUTOFF = math.log(60.0)


def _quad_complex(func: Callable[[float], complex], lo: float, hi: float, tol: float, real: bool) -> complex:
    options = {"epsabs": tol, "epsrel": tol, "limit": 200}
    re_part, _ = integrate.quad(lambda v: func(v).real, lo, hi, **options)
    if real:
        return complex(re_part, 0.0)
    im_part, _ = integrate.quad(lambda v: func(v).imag, lo, hi, **options)
    return complex(re_part, im_part)


def _nested_value(alphas: Tuple[float, ...], betas: Tuple[complex, ...], x: float, tol: float) -> complex:
    if not alphas:
        return complex(math.exp(-x))
    alpha, beta = alphas[0], betas[0]
    rest_alphas, rest_betas = alphas[1:], betas[1:]
    rest_degree = 1.0 + sum(rest_alphas)
    rest_scale = math.fsum(a * math.log(a) for a in rest_alphas)

    lo = min(math.log(x) - rest_degree * _CUTOFF - rest_scale, -2.0)
    hi = max(alpha * math.log(60.0 + 4.0 * abs(beta)) + 1.0, lo + 1.0)

    def integrand(v: float) -> complex:
        outer = np.exp((beta / alpha) * v - math.exp(v / alpha)) / alpha
        if outer == 0:
            return 0j
        return complex(outer) * _nested_value(rest_alphas, rest_betas, x * math.exp(-v), tol)

    real = all(b.imag == 0.0 for b in betas)
    return _quad_complex(integrand, lo, hi, tol, real)


def eval_kernel_nested(sig: GammaSignature, x: float, inner_tol: float = 1e-10) -> complex:
    """
    Y kernel as an iterated integral of elementary functions:

        Y(x) = int ... int prod f_{alpha_i, beta_i}(u_i) exp(-x / (u_1 ... u_r)) prod du_i / u_i

    Each level is a one-dimensional quadrature in v = log u.

    Raises:
        ValueError: For more than three factors or x <= 0.
    """
    if sig.r > MAX_NESTED_FACTORS:
        raise ValueError(f"nested oracle supports at most {MAX_NESTED_FACTORS} factors, got {sig.r}")
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    return _nested_value(sig.alphas, sig.betas, float(x), inner_tol)


# Decay bounds


@dataclass(frozen=True)
class DecayBound:
    """C s^kappa exp(-c s) with s = (x / scale)^(1/D)."""

    C: float
    c: float
    kappa: float
    D: float
    scale: float

    def __call__(self, x: np.ndarray) -> np.ndarray:
        s = (np.asarray(x, dtype=float) / self.scale) ** (1.0 / self.D)
        with np.errstate(under="ignore"):
            return self.C * s**self.kappa * np.exp(-self.c * s)


@lru_cache(maxsize=64)
def decay_bound_params(sig: GammaSignature, kind: KernelKind) -> DecayBound:
    """
    Calibrates the decay bound of a Z or Y kernel.

    The rate c is fitted from kernel values at x0 = 4^d' and 2 x0, then reduced to
    0.9 min(c_fit, D). C is 1.5 times the largest ratio |kernel| / model over a grid on [1, 2 x0].

    Raises:
        ValueError: For X kernels, which decay only algebraically.
        CalibrationError: If a calibration value underflows.
    """
    if kind.variant is KernelVariant.X:
        raise ValueError("X kernels have no exponential decay bound")
    ext = sig if kind.variant is KernelVariant.Z else sig.with_factor(1.0, 0.0)
    degree = ext.dprime
    scale = ext.scale()
    kappa = math.fsum(b.real for b in ext.betas) - 0.5 * ext.r + 0.5

    x0 = 4.0**sig.dprime
    grid = np.unique(np.concatenate((np.geomspace(1.0, 2.0 * x0, 12), [x0, 2.0 * x0])))
    values, _ = eval_kernel_array(kind, sig, grid)
    magnitudes = np.abs(values)
    s = (grid / scale) ** (1.0 / degree)

    k0 = magnitudes[np.argmin(np.abs(grid - x0))]
    k1 = magnitudes[np.argmin(np.abs(grid - 2.0 * x0))]
    s0 = (x0 / scale) ** (1.0 / degree)
    s1 = (2.0 * x0 / scale) ** (1.0 / degree)
    if not (k0 > 0.0 and k1 > 0.0 and np.isfinite(k0) and np.isfinite(k1)):
        raise CalibrationError(f"kernel values underflow at x0={x0}; cannot fit a decay rate")
    c_fit = (math.log(k0) - kappa * math.log(s0) - math.log(k1) + kappa * math.log(s1)) / (s1 - s0)
    if not c_fit > 0.0:
        raise CalibrationError(f"fitted decay rate {c_fit} is not positive")
    c = 0.9 * min(c_fit, degree)

    with np.errstate(under="ignore", over="ignore"):
        model = s**kappa * np.exp(-c * s)
    C = 1.5 * float(np.max(magnitudes / model))
    logger.debug("decay bound %s r=%d: C=%g c=%g kappa=%g D=%g", kind, sig.r, C, c, kappa, degree)
    return DecayBound(C=C, c=c, kappa=kappa, D=degree, scale=scale)


def kernel_decay_bound(sig: GammaSignature, kind: KernelKind, x: float) -> float:
    """
    Upper bound C exp(-c s) s^kappa, s = (x/prod alpha^alpha)^(1/D), for |kernel(x)|, x >= 1.

    D is d' for Z and 1 + d' for Y.
    """
    if x < 1.0:
        raise ValueError(f"decay bounds hold for x >= 1, got {x}")
    return float(decay_bound_params(sig, kind)(np.asarray(x)))


# X kernel asymptotics


@dataclass(frozen=True)
class XAsymptoticSeries:
    """
    Large-y expansion of an X kernel on the line a:

        X(y) ~ sum_{k >= K} (-1)^k / k! prod Gamma(alpha_i (delta + k) + beta_i) y^-(delta + k)

    where K is the first index with delta + K > a.
    """

    sig: GammaSignature
    delta: float
    a: float

    @property
    def first_index(self) -> int:
        k = 0
        while self.delta + k <= self.a + POLE_GUARD_RADIUS:
            k += 1
        return k

    def terms(self, count: int) -> List[Tuple[float, complex]]:
        """
        (exponent p_k, log coefficient) for the first `count` terms, so that
        X(y) ~ sum exp(log_c_k - p_k log y). Odd k carry i*pi in log_c_k.
        """
        return list(_x_asymptotic_terms(self.sig, self.delta, self.first_index, count))

    def evaluate(self, y: float, tol: float = 1e-16, max_terms: int = 200) -> Tuple[complex, int, bool]:
        """
        Sums the expansion at y until terms drop below tol relative to the sum.

        Returns:
            (value, terms_used, converged)
        """
        total = 0j
        previous = math.inf
        log_y = math.log(y)
        for count, (p, log_c) in enumerate(self.terms(max_terms), start=1):
            exponent = log_c - p * log_y
            if exponent.real > 700.0:
                return total, count, False
            term = complex(np.exp(exponent))
            total += term
            size = abs(term)
            if size <= tol * abs(total):
                return total, count, True
            if count > 4 and size > previous:
                return total, count, False
            previous = size
        return total, max_terms, False

    def switch_point(self, start: float = 20.0, limit: float = 1e12) -> float:
        """Smallest y on a doubling grid from `start` where the expansion converges to 1e-16."""
        y = start
        while y <= limit:
            if self.evaluate(y)[2]:
                return y
            y *= 2.0
        raise ContourError(f"X kernel expansion does not converge below y={limit}")


@lru_cache(maxsize=64)
def _x_asymptotic_terms(sig: GammaSignature, delta: float, first: int, count: int) -> Tuple[Tuple[float, complex], ...]:
    out = []
    for k in range(first, first + count):
        p = delta + k
        log_c = sum(log_gamma(alpha * p + beta) for alpha, beta in zip(sig.alphas, sig.betas)) - math.lgamma(k + 1)
        if k % 2:
            log_c += 1j * math.pi
        out.append((p, complex(log_c)))
    return tuple(out)


def x_kernel_asymptotic(sig: GammaSignature, delta: float, a: float, y: float) -> complex:
    """The large-y expansion of X on the line a, summed to double precision."""
    value, _, converged = XAsymptoticSeries(sig, delta, a).evaluate(y)
    if not converged:
        logger.warning("X kernel expansion at y=%g did not settle; value is approximate", y)
    return value


# Gamma-cosine calibration


def gamma_cos_reference(c: float, angle: float, x: float) -> float:
    """cos(x + angle) minus the Taylor terms n < |c|: the closed form of gamma_cos_calibration."""
    total = math.cos(x + angle)
    n = 0
    while n < abs(c):
        total -= (-1) ** n * x**n / math.factorial(n) * math.cos(angle - 0.5 * math.pi * n)
        n += 1
    return total


def gamma_cos_calibration(c: float, angle: float, x: float) -> complex:
    """
    (1/2 pi i) int_{(c)} Gamma(s) cos(pi s / 2 + angle) x^-s ds on a line left of the origin.

    Gamma(s) cos(pi s/2 + angle) is written as the Gamma quotient
    pi Gamma(s) / (Gamma(1/2 + s/2 + angle/pi) Gamma(1/2 - s/2 - angle/pi)), whose modulus
    decays only like |t|^(c - 1/2); the part beyond T is integrated by parts.

    Raises:
        ValueError: If c >= -1/2 or x <= 0.
        ContourError: If c is an integer.
    """
    if not c < -0.5:
        raise ValueError(f"the line must satisfy c < -1/2, got {c}")
    if abs(c - round(c)) < POLE_GUARD_RADIUS:
        raise ContourError(f"c = {c} is an integer; the line passes through a pole of Gamma")
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")

    ratio = GammaRatio(
        ((1, 1.0, 0.0), (-1, 0.5, 0.5 + angle / math.pi), (-1, -0.5, 0.5 - angle / math.pi)),
        log_const=math.log(math.pi),
    )
    log_x = math.log(x)
    t_end = max(40.0, 8.0 * x)
    first_width = min(0.25, 0.5 * abs(c - round(c)))
    edges = adaptive_edges(lambda t: abs(math.log(max(t, 1.0) / x)) + 1.0, t_end, first_width)
    rule = panel_rule(edges)

    try:
        s = c + 1j * rule.nodes
        main = np.sum(rule.weights * np.exp(ratio.log_value(s) - s * log_x))
        s_end = complex(c, t_end)
        g_end = np.exp(ratio.log_value(s_end) - s_end * log_x)
    except GammaPoleError as e:
        raise ContourError(f"Gamma-cosine integrand hits a pole on Re s = {c}: {e}") from e
    d1, d2, d3 = ratio.log_derivatives(s_end)
    tail, _ = ibp_tail(g_end, d1 - log_x, d2, d3)
    return complex((main + complex(tail)).real / math.pi, 0.0)
