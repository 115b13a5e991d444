"""
gamma.py
########

Complex Gamma machinery shared by every numerical module.

log_gamma evaluates the principal branch of log Gamma on numpy arrays: a fixed-coefficient
Lanczos core (g = 7, nine coefficients) for |Im z| <= 20 and the Stirling series with ten
Bernoulli corrections beyond. Products over a GammaSignature flow through ScaledComplex so
that large parameters (the tau preset has delta = 12) never overflow silently.
"""

# Imports
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple, Union

import mpmath
import numpy as np

from .config import (
    MAGNITUDE_ESTIMATE_FACTOR,
    POLE_GUARD_RADIUS,
    STIRLING_SWITCH_IMAG,
    STIRLING_TERMS,
    STIRLING_THRESHOLD,
)
from .errors import AsymptoticThresholdError, GammaPoleError, GammaRangeError

logger = logging.getLogger(__name__)

ArrayLike = Union[complex, float, np.ndarray]

LN2 = math.log(2.0)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)

LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2, B_4, ..., B_20
BERNOULLI_EVEN = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
)


@dataclass(frozen=True)
class GammaSignature:
    """
    The parameter lists (alpha_i), (beta_i) of a product of Gamma factors prod Gamma(alpha_i s + beta_i).

    Strict signatures require Re(beta_i) >= 0. Non-strict ones are used by presets whose
    normalisation shifts a beta below zero and by magnitude-only bookkeeping.
    """

    alphas: Tuple[float, ...]
    betas: Tuple[complex, ...]
    strict: bool = True
    dprime: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        alphas = tuple(float(a) for a in self.alphas)
        betas = tuple(complex(b) for b in self.betas)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "betas", betas)

        if len(alphas) == 0:
            raise ValueError("A Gamma signature needs at least one factor")
        if len(alphas) != len(betas):
            raise ValueError(f"Got {len(alphas)} alphas but {len(betas)} betas")
        for i, alpha in enumerate(alphas):
            if not alpha > 0.0 or not math.isfinite(alpha):
                raise ValueError(f"alpha_{i} must be positive and finite, got {alpha}")
        if self.strict:
            for i, beta in enumerate(betas):
                if beta.real < 0.0:
                    raise ValueError(f"Re(beta_{i}) must be non-negative, got {beta}")
        object.__setattr__(self, "dprime", math.fsum(alphas))

    @classmethod
    def of(cls, alphas: Sequence[float], betas: Sequence[complex], strict: bool = True) -> "GammaSignature":
        return cls(tuple(alphas), tuple(betas), strict)

    @property
    def r(self) -> int:
        return len(self.alphas)

    @property
    def real_betas(self) -> bool:
        return all(b.imag == 0.0 for b in self.betas)

    def conjugate(self) -> "GammaSignature":
        """The same alphas with conjugated betas."""
        return GammaSignature(self.alphas, tuple(b.conjugate() for b in self.betas), self.strict)

    def with_factor(self, alpha: float, beta: complex) -> "GammaSignature":
        """Returns a non-strict signature with one more factor appended."""
        return GammaSignature(self.alphas + (alpha,), self.betas + (complex(beta),), strict=False)

    def scale(self) -> float:
        """prod alpha_i^alpha_i, the natural scale of the kernel argument."""
        return math.exp(math.fsum(a * math.log(a) for a in self.alphas))


@dataclass(frozen=True)
class ScaledComplex:
    """A complex number mantissa * 2**exponent2 with 1 <= |mantissa| < 2, or zero."""

    mantissa: complex
    exponent2: int = 0

    def __post_init__(self) -> None:
        m = complex(self.mantissa)
        e = int(self.exponent2)
        if m == 0:
            e = 0
        elif not (math.isfinite(m.real) and math.isfinite(m.imag)):
            raise GammaRangeError(f"Non-finite mantissa {m}")
        else:
            _, k = math.frexp(abs(m))
            # frexp gives abs(m) = f * 2**k with f in [0.5, 1)
            m = complex(math.ldexp(m.real, 1 - k), math.ldexp(m.imag, 1 - k))
            e += k - 1
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent2", e)

    @classmethod
    def from_log(cls, log_value: complex) -> "ScaledComplex":
        """exp(log_value) without overflow."""
        log_value = complex(log_value)
        if log_value.real == -math.inf:
            return cls(0j, 0)
        exponent = math.floor(log_value.real / LN2)
        mantissa = np.exp(complex(log_value.real - exponent * LN2, log_value.imag))
        return cls(complex(mantissa), exponent)

    def __mul__(self, other: "ScaledComplex") -> "ScaledComplex":
        return ScaledComplex(self.mantissa * other.mantissa, self.exponent2 + other.exponent2)

    def __truediv__(self, other: "ScaledComplex") -> "ScaledComplex":
        if other.mantissa == 0:
            raise ZeroDivisionError("division by a zero ScaledComplex")
        return ScaledComplex(self.mantissa / other.mantissa, self.exponent2 - other.exponent2)

    def conjugate(self) -> "ScaledComplex":
        return ScaledComplex(self.mantissa.conjugate(), self.exponent2)

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def log(self) -> complex:
        if self.mantissa == 0:
            raise ValueError("log of zero")
        return complex(np.log(self.mantissa)) + self.exponent2 * LN2

    def to_complex(self) -> complex:
        """
        Converts to a plain complex number.

        Raises:
            GammaRangeError: If the value exceeds the double range.
        """
        try:
            return complex(
                math.ldexp(self.mantissa.real, self.exponent2), math.ldexp(self.mantissa.imag, self.exponent2)
            )
        except OverflowError as e:
            raise GammaRangeError(f"Value 2^{self.exponent2} exceeds the double range") from e


def _as_complex_array(z: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(z, dtype=complex)
    return np.atleast_1d(arr), arr.ndim == 0


def check_poles(z: ArrayLike, guard: float = POLE_GUARD_RADIUS) -> None:
    """
    Raises GammaPoleError if any entry of z is within the guard radius of a non-positive integer.
    """
    arr, _ = _as_complex_array(z)
    nearest = np.round(arr.real)
    close = (nearest <= 0.0) & (np.abs(arr - nearest) < guard)
    if np.any(close):
        bad = complex(arr[np.argmax(close)])
        raise GammaPoleError(f"Gamma argument {bad} is within {guard:g} of the pole {int(nearest[np.argmax(close)])}")


def lanczos_log_gamma(z: ArrayLike) -> ArrayLike:
    """
    Lanczos (g = 7) approximation of log Gamma, using reflection for Re z < 1/2.

    The imaginary part is only determined modulo 2*pi; log_gamma aligns it with the principal branch.
    """
    arr, scalar = _as_complex_array(z)
    out = np.empty_like(arr)
    reflect = arr.real < 0.5

    w = np.where(reflect, 1.0 - arr, arr) - 1.0
    series = np.full_like(w, LANCZOS_COEFFICIENTS[0])
    for i, coefficient in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series = series + coefficient / (w + i)
    t = w + LANCZOS_G + 0.5
    core = HALF_LOG_2PI + (w + 0.5) * np.log(t) - t + np.log(series)

    out[~reflect] = core[~reflect]
    if np.any(reflect):
        zr = arr[reflect]
        out[reflect] = LOG_PI - np.log(np.sin(np.pi * zr)) - core[reflect]
    return complex(out[0]) if scalar else out


def stirling_log_gamma(z: ArrayLike, terms: int = STIRLING_TERMS) -> ArrayLike:
    """
    Stirling series for the principal branch of log Gamma.

    The argument is first shifted upward to w = z + n with Re w >= 1 and |w| >= 10, then
    log Gamma(z) = log Gamma(w) - sum_{k<n} log(z + k).

    Args:
        z: Complex scalar or array.
        terms (int): Number of Bernoulli corrections, at most 10.
    """
    if not 0 <= terms <= len(BERNOULLI_EVEN):
        raise ValueError(f"terms must be between 0 and {len(BERNOULLI_EVEN)}, got {terms}")
    arr, scalar = _as_complex_array(z)
    x = arr.real
    y = arr.imag
    shift_right = np.ceil(np.maximum(1.0 - x, 0.0))
    shift_radius = np.ceil(np.sqrt(np.maximum(100.0 - y * y, 0.0)) - x)
    shift = np.maximum(np.maximum(shift_right, shift_radius), 0.0).astype(int)

    w = arr + shift
    inv = 1.0 / w
    inv2 = inv * inv
    out = (w - 0.5) * np.log(w) - w + HALF_LOG_2PI
    power = inv
    for j in range(1, terms + 1):
        out = out + BERNOULLI_EVEN[j - 1] / (2 * j * (2 * j - 1)) * power
        power = power * inv2

    for k in range(int(shift.max(initial=0))):
        active = shift > k
        out[active] -= np.log(arr[active] + k)
    return complex(out[0]) if scalar else out


def log_gamma(z: ArrayLike, principal: bool = True) -> ArrayLike:
    """
    Principal branch of log Gamma(z), continuous on the plane cut along (-inf, 0].

    Args:
        z: Complex scalar or numpy array.
        principal (bool): When False the imaginary part is only correct modulo 2*pi. Callers
            that exponentiate the result skip the branch alignment this way.

    Returns:
        A Python complex for scalar input, otherwise a complex array of the same shape.

    Raises:
        GammaPoleError: If an argument is within the guard radius of a non-positive integer.
    """
    arr, scalar = _as_complex_array(z)
    shape = np.shape(np.asarray(z))
    arr = arr.ravel()
    check_poles(arr)

    lower = arr.imag < 0.0
    folded = np.where(lower, np.conj(arr), arr)
    out = np.empty_like(folded)

    far = np.abs(folded.imag) > STIRLING_SWITCH_IMAG
    if np.any(far):
        out[far] = stirling_log_gamma(folded[far])
    near = ~far
    if np.any(near):
        values = lanczos_log_gamma(folded[near])
        if principal:
            reference = stirling_log_gamma(folded[near])
            turns = np.round((reference.imag - values.imag) / (2.0 * np.pi))
            values = values + 2j * np.pi * turns
        out[near] = values

    out = np.where(lower, np.conj(out), out)
    if scalar:
        return complex(out[0])
    return out.reshape(shape)


def gamma_product(sig: GammaSignature, s: complex) -> ScaledComplex:
    """
    Evaluates prod_i Gamma(alpha_i s + beta_i) as a ScaledComplex.

    Factors are accumulated in ascending index order.

    Raises:
        GammaPoleError: Tagged with the index of the offending factor.
    """
    total = 0j
    for i, (alpha, beta) in enumerate(zip(sig.alphas, sig.betas)):
        try:
            total += log_gamma(alpha * s + beta)
        except GammaPoleError as e:
            raise GammaPoleError(str(e), factor_index=i) from e
    return ScaledComplex.from_log(total)


def f_alpha_beta(alpha: float, beta: complex, x: ArrayLike) -> ArrayLike:
    """
    The elementary function x^(beta/alpha) exp(-x^(1/alpha)) / alpha.

    Its Mellin transform is Gamma(alpha s + beta), so it is the closed form of the
    single-factor Z kernel.

    Args:
        alpha (float): Positive scale.
        beta (complex): Shift with Re(beta) >= 0.
        x: Positive real scalar or array.

    Returns:
        complex or numpy array. Values may underflow to zero for large x.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0.0):
        raise ValueError("f_alpha_beta needs x > 0")
    log_x = np.log(xs)
    with np.errstate(under="ignore"):
        value = np.exp((complex(beta) / alpha) * log_x - np.exp(log_x / alpha)) / alpha
    if np.any(value == 0):
        logger.debug("f_alpha_beta underflowed to zero for alpha=%s beta=%s", alpha, beta)
    if xs.ndim == 0:
        return complex(value)
    return value


def log_gamma_magnitude_estimate(sig: GammaSignature, a: float, t: float) -> float:
    """Logarithm of gamma_magnitude_estimate. Never underflows."""
    if abs(t) < STIRLING_THRESHOLD:
        raise AsymptoticThresholdError(f"|t| = {abs(t)} is below the Stirling threshold {STIRLING_THRESHOLD}")
    total = []
    drift_limit = math.log(MAGNITUDE_ESTIMATE_FACTOR) / max(len(sig.alphas), 1)
    worst_drift = 0.0
    for alpha, beta in zip(sig.alphas, sig.betas):
        sigma = alpha * a + beta.real
        tau = abs(alpha * t + beta.imag)
        if tau < 1.0:
            raise AsymptoticThresholdError(f"factor height {tau} is too small for the Stirling magnitude")
        worst_drift = max(worst_drift, sigma * sigma * abs(sigma / 6.0 - 0.25) / (tau * tau))
        total.append(HALF_LOG_2PI + (sigma - 0.5) * math.log(tau) - 0.5 * math.pi * tau)
    if worst_drift > drift_limit:
        logger.debug(
            "Stirling magnitude at a=%s t=%s may be off by more than a factor %s (drift %.3g > %.3g)",
            a, t, MAGNITUDE_ESTIMATE_FACTOR, worst_drift, drift_limit,
        )
    return math.fsum(total)


def gamma_magnitude_estimate(sig: GammaSignature, a: float, t: float) -> float:
    """
    Factorwise Stirling magnitude of prod Gamma(alpha_i (a + it) + beta_i).

    Each factor contributes sqrt(2 pi) |tau|^(sigma - 1/2) exp(-pi |tau| / 2) with
    sigma = alpha_i a + Re beta_i and tau = alpha_i t + Im beta_i. Within a factor of
    MAGNITUDE_ESTIMATE_FACTOR of the true modulus while sigma_i^2 (sigma_i / 6 - 1/4) / tau_i^2
    stays below log(MAGNITUDE_ESTIMATE_FACTOR) / r; outside that range a debug line is logged.

    Raises:
        AsymptoticThresholdError: If |t| is below STIRLING_THRESHOLD.
    """
    return math.exp(log_gamma_magnitude_estimate(sig, a, t))


@dataclass(frozen=True)
class GammaRatio:
    """
    A quotient of Gamma functions exp(log_const) * prod_j Gamma(c_j s + d_j)^(sign_j).

    Every vertical-line integrand of the package is one of these, multiplied by a power of
    the argument. Signs are +1 or -1.
    """

    terms: Tuple[Tuple[int, float, complex], ...]
    log_const: complex = 0j

    def __post_init__(self) -> None:
        normalised = tuple((int(sign), float(c), complex(d)) for sign, c, d in self.terms)
        for sign, c, _ in normalised:
            if sign not in (1, -1) or c == 0.0:
                raise ValueError(f"Invalid Gamma ratio term ({sign}, {c})")
        object.__setattr__(self, "terms", normalised)
        object.__setattr__(self, "log_const", complex(self.log_const))

    @classmethod
    def from_signature(cls, sig: GammaSignature) -> "GammaRatio":
        return cls(tuple((1, alpha, beta) for alpha, beta in zip(sig.alphas, sig.betas)))

    def extended(self, terms: Iterable[Tuple[int, float, complex]], log_const: complex = 0j) -> "GammaRatio":
        return GammaRatio(self.terms + tuple(terms), self.log_const + log_const)

    def log_value(self, s: ArrayLike, principal: bool = False) -> ArrayLike:
        """
        Sum of sign_j log Gamma(c_j s + d_j) plus log_const.

        Raises:
            GammaPoleError: Tagged with the term index when a numerator or denominator argument hits a pole.
        """
        total: ArrayLike = self.log_const
        for j, (sign, c, d) in enumerate(self.terms):
            try:
                value = log_gamma(np.asarray(s) * c + d, principal=principal)
            except GammaPoleError as e:
                raise GammaPoleError(str(e), factor_index=j) from e
            total = total + sign * value
        return total

    def log_derivatives(self, s: complex, count: int = 3) -> Tuple[complex, ...]:
        """
        Derivatives d^k/ds^k of log_value at s for k = 1..count, via polygamma values.
        """
        out = []
        for k in range(1, count + 1):
            acc = mpmath.mpc(0)
            for sign, c, d in self.terms:
                acc += sign * (c**k) * mpmath.psi(k - 1, c * s + d)
            out.append(complex(acc))
        return tuple(out)

    def right_poles(self, limit: float) -> Tuple[float, ...]:
        """
        Real parts of candidate poles of numerator terms with negative c, up to limit.

        A numerator Gamma(c s + d) with c < 0 has poles at s = -(d + k)/c moving right.
        """
        out = []
        for sign, c, d in self.terms:
            if sign != 1 or c > 0.0:
                continue
            k = 0
            while True:
                p = -(d + k) / c
                if p.real > limit:
                    break
                out.append(p.real)
                k += 1
        return tuple(sorted(set(out)))
