"""
riesz.py
########

Riesz sums and the identity that expresses them through the conjugate series:

    (1/Gamma(rho + 1)) sum'_(lambda_n <= x) a_n (x - lambda_n)^rho
        = Q_rho(x) + (omega x^(delta + rho) / Q^delta) sum conj(b_n) I(mu_n x / Q^2)

The left side is summed directly or recovered from Perron's integral; the right side uses
the I_rho quadrature for a head of the conjugate series, sums the smooth part of the rest
in closed form and bounds the oscillating remainder by the leading asymptotic envelope.
"""

# Imports
import logging
import math
from dataclasses import dataclass
from math import comb
from typing import Optional, Tuple

import mpmath
import numpy as np
from scipy import special

from .arithmetic import coeff_tau
from .config import ASYMPTOTIC_THRESHOLD, get_node_budget, get_riesz_cap
from .errors import ContourError, TruncationError
from .functional import FunctionalEquationData
from .gamma import GammaRatio
from .identities import IdentityReport, IdentityTag
from .quadrature import adaptive_edges, compensated_sum, ibp_tail, panel_rule
from .residues import default_line, residual_Q_rho
from .rho_integral import (
    TAIL_START,
    AsymptoticConstants,
    asymptotic_constants,
    check_decay,
    i_rho_values,
    smooth_part,
    stationary_height,
)

logger = logging.getLogger(__name__)

BOUNDARY_RTOL = 1e-12  # x within this of lambda_n (relative) takes the half weight at rho = 0
PERRON_LINE_MARGIN = 0.75
PERRON_T_MAX = 120.0
PERRON_MAX_WIDTH = 0.8
PERRON_TAIL_TERMS = 20_000
RESONANCE = 40.0  # |log(x / lambda_n)| T below this is integrated further before the IBP tail
RESONANCE_REACH = 4000.0
NODES_PER_HEIGHT = 12.0  # Rough nodes needed per unit of stationary height
DERIVATIVE_STEP = 1e-4


# Left side


def riesz_lhs_direct(fe: FunctionalEquationData, x: float, rho: float) -> complex:
    """
    (1/Gamma(rho + 1)) sum'_(lambda_n <= x) a_n (x - lambda_n)^rho.

    At rho = 0 a term with lambda_n = x carries weight 1/2; for rho > 0 it vanishes.
    """
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    if rho < 0.0:
        raise ValueError(f"rho must be non-negative, got {rho}")
    count = fe.series.count_up_to(x)
    if count == 0:
        return 0j
    lattice, coeffs = fe.series.prefix(count)
    diff = x - lattice
    if rho == 0.0:
        weights = np.where(np.abs(diff) <= BOUNDARY_RTOL * max(1.0, x), 0.5, 1.0)
    else:
        weights = np.where(diff > 0.0, np.abs(diff) ** rho, 0.0)
    return compensated_sum(coeffs * weights) / math.gamma(rho + 1.0)


@dataclass(frozen=True)
class PerronValue:
    value: complex
    estimate: float
    nodes: int


def _perron(fe: FunctionalEquationData, x: float, rho: float, a: float, t_max: float) -> PerronValue:
    ratio = GammaRatio(((1, 1.0, 0.0), (-1, 1.0, rho + 1.0)))
    log_x = math.log(x)
    symmetric = fe.series.real_coefficients()

    def rate(t: float) -> float:
        return abs(log_x) + math.log(2.0 + t) + 1.0

    edges = adaptive_edges(rate, t_max, min(0.25, 0.5 * a))
    widths = np.diff(edges)
    if np.any(widths > PERRON_MAX_WIDTH):
        edges = np.unique(np.concatenate([edges, np.arange(0.0, t_max, PERRON_MAX_WIDTH)]))
    rule = panel_rule(edges)

    def half_line(direction: int) -> Tuple[complex, float]:
        s = a + 1j * direction * rule.nodes
        phi = np.array([fe.phi(complex(v)) for v in s])
        terms = phi * np.exp(ratio.log_value(s) + (s + rho) * log_x) * rule.weights
        return compensated_sum(terms), float(np.sum(np.abs(terms)))

    up, magnitude = half_line(1)
    if symmetric:
        main = up.real / math.pi
        scale = 1.0 / math.pi
    else:
        down, magnitude_down = half_line(-1)
        main = (up + down) / (2.0 * math.pi)
        magnitude = 0.5 * (magnitude + magnitude_down)
        scale = 1.0 / (2.0 * math.pi)

    tail, tail_error = _perron_tail(fe, x, rho, a, t_max, ratio, symmetric)
    estimate = tail_error + scale * 64.0 * np.finfo(float).eps * magnitude
    logger.debug("Perron integral x=%g rho=%g a=%g: %d nodes, tail %.3g", x, rho, a, rule.size, abs(tail))
    return PerronValue(complex(main + tail), float(estimate), rule.size)


def _perron_tail(
    fe: FunctionalEquationData, x: float, rho: float, a: float, t_end: float, ratio: GammaRatio, symmetric: bool
) -> Tuple[complex, float]:
    """
    The part |t| > t_end, term by term over the Dirichlet series: each n contributes
    a_n x^rho int (x / lambda_n)^s Gamma(s) / Gamma(s + rho + 1) ds. Terms with x / lambda_n
    close to 1 are first integrated numerically far enough for the IBP tail to apply.
    """
    count = min(fe.series.n_max, PERRON_TAIL_TERMS)
    lattice, coeffs = fe.series.prefix(count)
    logs = math.log(x) - np.log(lattice)
    directions = (1,) if symmetric else (1, -1)
    total = 0j
    error = 0.0
    for direction in directions:
        s_end = complex(a, direction * t_end)
        d1, d2, d3 = ratio.log_derivatives(s_end, count=3)
        log_g = complex(ratio.log_value(s_end))
        resonant = np.abs(logs) * t_end < RESONANCE
        g = coeffs * x**rho * np.exp(log_g + s_end * logs)
        values, errors = ibp_tail(np.where(resonant, 0.0, g), d1 + np.where(resonant, 1.0, logs), d2, d3, direction)
        part = compensated_sum(values)
        error += float(np.sum(errors))
        for n in np.nonzero(resonant)[0]:
            value, err = _resonant_tail(ratio, a, t_end, float(logs[n]), complex(coeffs[n]) * x**rho, direction)
            part += value
            error += err
        total += part.real if symmetric else part
    scale = 1.0 / math.pi if symmetric else 1.0 / (2.0 * math.pi)
    return total * scale, error * scale


def _resonant_tail(
    ratio: GammaRatio, a: float, t_start: float, log_ratio: float, weight: complex, direction: int
) -> Tuple[complex, float]:
    """int_t_start^inf weight exp(log_ratio s) Gamma(s) / Gamma(s + rho + 1) dt on one half-line."""
    reach = RESONANCE / max(abs(log_ratio), RESONANCE / RESONANCE_REACH)
    t_end = t_start + reach
    edges = adaptive_edges(lambda t: abs(log_ratio) + 1.0 / t, t_end, 1.0, t_start=t_start)
    rule = panel_rule(edges)
    s = a + 1j * direction * rule.nodes
    body = compensated_sum(weight * np.exp(ratio.log_value(s) + s * log_ratio) * rule.weights)
    s_end = complex(a, direction * t_end)
    d1, d2, d3 = ratio.log_derivatives(s_end, count=3)
    g = weight * np.exp(complex(ratio.log_value(s_end)) + s_end * log_ratio)
    tail, err = ibp_tail(np.array([g]), np.array([d1 + log_ratio]), d2, d3, direction)
    return body + complex(tail[0]), float(err[0])


def riesz_lhs_perron(
    fe: FunctionalEquationData, x: float, rho: float, a: Optional[float] = None, t_max: float = PERRON_T_MAX
) -> complex:
    """
    The Riesz sum from Perron's formula,
    (1/2 pi i) int_(a) phi(s) Gamma(s) x^(s + rho) / Gamma(s + rho + 1) ds.

    Args:
        a (Optional[float]): Line, default max(1, sigma_a) + 3/4.

    Raises:
        ContourError: If rho < 1 or a <= max(0, sigma_a).
        ConfigurationError: If the series has no analytic continuation.
    """
    if rho < 1.0:
        raise ContourError(f"Perron's integral decays like |t|^(-rho-1); rho >= 1 is required, got {rho}")
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    a = max(1.0, fe.sigma_a) + PERRON_LINE_MARGIN if a is None else float(a)
    if not a > max(0.0, fe.sigma_a):
        raise ContourError(f"the Perron line a = {a} must lie right of max(0, sigma_a) = {max(0.0, fe.sigma_a)}")
    return _perron(fe, x, rho, a, t_max).value


def perron_report(
    fe: FunctionalEquationData, x: float, rho: float, tol: float = 1e-6, a: Optional[float] = None
) -> IdentityReport:
    """Perron's integral against the direct Riesz sum."""
    line = max(1.0, fe.sigma_a) + PERRON_LINE_MARGIN if a is None else float(a)
    if rho < 1.0:
        raise ContourError(f"Perron's integral decays like |t|^(-rho-1); rho >= 1 is required, got {rho}")
    perron = _perron(fe, x, rho, line, PERRON_T_MAX)
    return IdentityReport(
        identity=IdentityTag.PERRON,
        point={"x": float(x), "rho": float(rho)},
        lhs=perron.value,
        rhs=riesz_lhs_direct(fe, x, rho),
        terms_used={"lhs": perron.nodes, "rhs": fe.series.count_up_to(x)},
        truncation_estimate=perron.estimate,
        tol=tol,
    )


# Right side


@dataclass(frozen=True)
class RieszSide:
    """The right side of the identity and how it was truncated."""

    value: complex
    q_rho: complex
    terms: int
    estimate: float
    envelope_decided: bool


def riesz_convergence_bound(fe: FunctionalEquationData) -> float:
    """rho must exceed (2 sigma_b - delta) d' - 1/2 for the conjugate series to converge."""
    return (2.0 * fe.sigma_b - fe.delta) * fe.dprime - 0.5


def _moment(fe: FunctionalEquationData, q: complex, j: int) -> complex:
    """sum conj(b_n) mu_n^-q (log mu_n)^j over all n, from the dual continuation."""
    if j == 0:
        return fe.conj_psi(q)
    derivative = mpmath.diff(lambda v: mpmath.mpc(fe.conj_psi(complex(v))), mpmath.mpc(q), j, h=DERIVATIVE_STEP)
    return (-1) ** j * complex(derivative)


def _smooth_tail(fe: FunctionalEquationData, rho: float, a: float, c: float, n: int) -> complex:
    """sum_(n' > n) conj(b_n') S(mu_n' c) for the smooth part S of I."""
    terms = smooth_part(fe.sig, fe.delta, rho, a)
    if not len(terms):
        return 0j
    lattice, coeffs = fe.series.prefix(n, dual=True) if n else (np.empty(0), np.empty(0, dtype=complex))
    coeffs = np.conj(coeffs)
    log_mu = np.log(lattice)
    log_c = math.log(c)
    total = 0j
    for term in terms.terms:
        e, l = term.exponent, term.logpower
        inner = 0j
        for j in range(l + 1):
            head = compensated_sum(coeffs * np.exp(e * log_mu) * log_mu**j) if n else 0j
            inner += comb(l, j) * log_c ** (l - j) * (_moment(fe, -e, j) - head)
        total += term.coefficient * complex(np.exp(e * log_c)) * inner
    return total


def _leading_oscillation(constants: AsymptoticConstants, ys: np.ndarray, power: float) -> np.ndarray:
    """The leading term of the oscillating part of I at each y."""
    amplitude = constants.amplitude0()
    return np.array([constants.term(0, amplitude, float(y)) * float(y) ** -power for y in ys])


def _oscillating_tail_bound(
    constants: AsymptoticConstants,
    prefactor: complex,
    coeffs: np.ndarray,
    args: np.ndarray,
    e0: float,
    sigma_b: float,
) -> float:
    """
    Size of the leading oscillating terms past the last computed index m.

    With |b_n| = n^g (mean + fluctuation) and g = sigma_b - 1, summation by parts bounds the mean
    part by its amplitude at m over the phase step there, and the fluctuation adds like a random
    walk. Returns inf when the amplitude over the phase step does not decrease or the phase step
    reaches pi.
    """
    m = len(coeffs)
    growth = max(sigma_b - 1.0, 0.0)
    power = e0 + growth
    two_d = 2.0 * constants.dprime
    if m < 8 or 2.0 * power >= -1.0 or sigma_b + e0 - 1.0 / two_d >= 0.0:
        return math.inf
    step = constants.frequency(float(args[-1])) - constants.frequency(float(args[-2]))
    if not 0.0 < step < math.pi:
        return math.inf
    index = np.arange(m // 2 + 1, m + 1, dtype=float)
    normalised = np.abs(coeffs[m // 2:]) / index**growth
    amplitude = abs(prefactor * constants.amplitude0()) * float(args[-1]) ** e0 * float(m) ** growth
    mean = float(np.mean(normalised))
    spread = float(np.std(normalised))
    return amplitude * (mean * (4.0 / step + 2.0) + spread * math.sqrt(m / (-2.0 * power - 1.0)))


def riesz_rhs(
    fe: FunctionalEquationData,
    x: float,
    rho: float,
    a: Optional[float] = None,
    budget: float = 1e-6,
    n_terms: Optional[int] = None,
    asymptotic_tail: bool = True,
) -> RieszSide:
    """
    Q_rho(x) + (omega x^(delta + rho) / Q^delta) sum conj(b_n) I(mu_n x / Q^2).

    The first N terms use the I_rho quadrature. N is the smallest count whose oscillating
    envelope tail |A_0| sum_(n > N) |b_n| (mu_n c)^e0 stays below budget/4, but at most the Riesz
    term cap and the count the node budget can resolve; n_terms overrides it. For the remaining
    terms the smooth part is summed in closed form and, with asymptotic_tail, the oscillating part
    through the leading term of its expansion up to twice the term cap; what lies beyond is bounded
    by _oscillating_tail_bound.

    Raises:
        TruncationError: If rho does not exceed the convergence bound of the conjugate series.
        ContourError: If rho <= (2a - delta) d' - 1.
    """
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    bound = riesz_convergence_bound(fe)
    if not rho > bound:
        raise TruncationError(f"rho = {rho} does not exceed (2 sigma_b - delta) d' - 1/2 = {bound:.4g}")
    a = default_line(fe) if a is None else float(a)
    check_decay(fe.sig, fe.delta, rho, a)

    _, q_value = residual_Q_rho(fe, x, rho, a)
    q = fe.bigQ
    prefactor = fe.omega * x ** (fe.delta + rho) / q**fe.delta
    c = x / (q * q)
    constants = asymptotic_constants(fe.sig, fe.delta, rho)
    e0 = constants.exponent(0).real - rho - fe.delta

    cap = get_riesz_cap()
    m = min(fe.series.n_max, 2 * cap)
    lattice, coeffs = fe.series.prefix(m, dual=True)
    args = lattice * c
    envelope = abs(prefactor * constants.amplitude0()) * np.abs(coeffs) * args**e0
    # |b_n| grows at most like n^(sigma_b - 1)
    beyond = float(envelope[-1]) * m / max(-e0 - fe.sigma_b, 0.05)
    remaining = np.cumsum(envelope[::-1])[::-1]
    within = np.nonzero(remaining + beyond <= 0.25 * budget)[0]
    n_envelope = int(within[0]) if within.size else m

    if n_terms is not None:
        n = min(int(n_terms), m)
    else:
        height_cap = get_node_budget() / (TAIL_START * NODES_PER_HEIGHT)
        heights = np.array([stationary_height(fe.sig, float(y)) for y in args])
        n_nodes = int(np.searchsorted(heights, height_cap, side="right"))
        n = max(1, min(n_envelope, cap, n_nodes))
    envelope_decided = n >= n_envelope and within.size > 0

    values, errors = i_rho_values(fe.sig, fe.delta, rho, a, args[:n])
    head_coeffs = np.conj(coeffs[:n])
    direct = compensated_sum(head_coeffs * values)
    smooth_tail = _smooth_tail(fe, rho, a, c, n)
    quadrature_error = abs(prefactor) * float(np.sum(np.abs(head_coeffs) * errors))

    smooth = smooth_part(fe.sig, fe.delta, rho, a)
    oscillating_tail = 0j
    if asymptotic_tail and n < m and args[n] >= ASYMPTOTIC_THRESHOLD:
        oscillating_tail = compensated_sum(np.conj(coeffs[n:]) * _leading_oscillation(constants, args[n:], rho + fe.delta))
        # How well the leading term matches the quadrature on the upper half of the head
        check = slice(n // 2, n)
        model = _leading_oscillation(constants, args[check], rho + fe.delta)
        if len(smooth):
            model = model + smooth.evaluate(args[check])
        past_m = min(beyond, _oscillating_tail_bound(constants, prefactor, coeffs, args, e0, fe.sigma_b))
        estimate = abs(prefactor * compensated_sum(head_coeffs[check] * (values[check] - model))) + past_m
    elif envelope_decided:
        estimate = float(remaining[n]) + beyond if n < m else beyond
    else:
        upper = values[n // 2:] - (smooth.evaluate(args[n // 2:n]) if len(smooth) else 0.0)
        estimate = abs(prefactor * compensated_sum(head_coeffs[n // 2:] * upper))
    estimate += quadrature_error
    value = q_value + prefactor * (direct + smooth_tail + oscillating_tail)
    logger.debug(
        "Riesz rhs %s x=%g rho=%g: N=%d (envelope %d, cap %d), estimate %.3g", fe.name, x, rho, n, n_envelope, cap, estimate
    )
    return RieszSide(complex(value), complex(q_value), n, float(estimate), envelope_decided)


def riesz_report(
    fe: FunctionalEquationData,
    x: float,
    rho: float,
    a: Optional[float] = None,
    tol: float = 1e-6,
    relative: bool = False,
    n_terms: Optional[int] = None,
) -> IdentityReport:
    """Both sides of the Riesz-sum identity at x."""
    lhs = riesz_lhs_direct(fe, x, rho)
    budget = tol * abs(lhs) if relative and lhs != 0 else tol
    rhs = riesz_rhs(fe, x, rho, a, budget, n_terms)
    if rhs.estimate > budget:
        logger.warning(
            "Riesz truncation estimate %.3g for %s at x=%g exceeds the tolerance %.3g", rhs.estimate, fe.name, x, budget
        )
    return IdentityReport(
        identity=IdentityTag.RIESZ,
        point={"x": float(x), "rho": float(rho)},
        lhs=lhs,
        rhs=rhs.value,
        terms_used={"lhs": fe.series.count_up_to(x), "rhs": rhs.terms},
        truncation_estimate=rhs.estimate,
        tol=tol,
        relative=relative,
    )


def wilton_sum(x: float, rho: float, n_terms: int) -> float:
    """(2 pi)^-rho sum_(n <= n_terms) tau(n) (x/n)^((12 + rho)/2) J_(12 + rho)(4 pi sqrt(n x))."""
    order = 12.0 + rho
    n = np.arange(1, n_terms + 1, dtype=float)
    taus = np.array(coeff_tau(n_terms), dtype=float)
    terms = taus * (x / n) ** (0.5 * order) * special.jv(order, 4.0 * math.pi * np.sqrt(n * x))
    return float((2.0 * math.pi) ** (-rho) * compensated_sum(terms).real)
