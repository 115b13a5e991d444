"""
residues.py
###########

Pole enumeration, circle-quadrature residues and the residual functions

    P(x)     = sum of residues of F(s) x^-s,
    Q_rho(x) = sum of residues of phi(s) Gamma(s) x^(s + rho) / Gamma(s + rho + 1),
    P_1(x)   = sum of residues of Gamma(s) F(s) x^-s,

each over the poles in the strip delta - a < Re s < a. Every residual function is returned
as a finite sum of terms c x^e (log x)^m whose coefficients come from Laurent coefficients
of the x-free part of the integrand.
"""

# Imports
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import MAX_POLE_ORDER, POLE_GUARD_RADIUS, RESIDUE_RADIUS, RESIDUE_TOL
from .errors import ResidueError
from .functional import FunctionalEquationData
from .gamma import GammaRatio
from .poles import PoleSource, PoleSpec, zero_order
from .quadrature import laurent_coefficients

logger = logging.getLogger(__name__)

MERGE_RADIUS = 1e-9  # Candidates closer than this are the same pole
ORDER_DETECTION_THRESHOLD = 1e-9  # Relative size of a Laurent coefficient that counts as non-zero
DEFAULT_LINE_MARGIN = 0.25


class ResidualKind(Enum):
    """Which residual function a pole set belongs to."""

    P = "P"  # F(s) x^-s
    Q_RHO = "Q_rho"  # phi(s) Gamma(s) x^(s + rho) / Gamma(s + rho + 1)
    P1 = "P1"  # Gamma(s) F(s) x^-s


# Residual term sums


@dataclass(frozen=True)
class ResidualTerm:
    """coefficient * x^exponent * (log x)^logpower"""

    exponent: complex
    logpower: int
    coefficient: complex


@dataclass(frozen=True)
class ResidualTermSum:
    """
    A finite sum of ResidualTerms sorted by (Re exponent desc, logpower desc), plus the poles
    that produced it.
    """

    terms: Tuple[ResidualTerm, ...]
    poles: Tuple[PoleSpec, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.terms, key=lambda term: (-term.exponent.real, -term.logpower, -term.exponent.imag)))
        object.__setattr__(self, "terms", ordered)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, x: Union[float, np.ndarray]) -> Union[complex, np.ndarray]:
        """Value at x > 0 (scalar or array)."""
        xs = np.asarray(x, dtype=float)
        if np.any(xs <= 0.0):
            raise ValueError("residual functions are evaluated at x > 0")
        log_x = np.log(xs)
        total = np.zeros(xs.shape, dtype=complex)
        for term in self.terms:
            total = total + term.coefficient * np.exp(term.exponent * log_x) * log_x**term.logpower
        if xs.ndim == 0:
            return complex(total)
        return total

    def derivative(self) -> "ResidualTermSum":
        """The term-by-term derivative in x."""
        out: List[ResidualTerm] = []
        for term in self.terms:
            if term.exponent != 0:
                out.append(ResidualTerm(term.exponent - 1, term.logpower, term.coefficient * term.exponent))
            if term.logpower > 0:
                out.append(ResidualTerm(term.exponent - 1, term.logpower - 1, term.coefficient * term.logpower))
        return ResidualTermSum(tuple(out), self.poles)

    def mellin_head(self, s: complex, c: float = 1.0) -> complex:
        """
        int_0^c sum coeff x^e (log x)^m x^(s-1) dx in closed form.

        Uses I_m = c^w (log c)^m / w - (m / w) I_{m-1} with w = e + s. For Re w <= 0 this is
        the analytic continuation in s of the convergent integral.

        Raises:
            ResidueError: If s sits on a pole of the continuation (w = 0).
        """
        if not c > 0.0:
            raise ValueError(f"c must be positive, got {c}")
        log_c = math.log(c)
        total = 0j
        for term in self.terms:
            w = term.exponent + complex(s)
            if abs(w) < POLE_GUARD_RADIUS:
                raise ResidueError(f"s = {s} is a pole of the Mellin transform of x^{term.exponent}")
            head = complex(np.exp(w * log_c))
            integral = head / w
            for m in range(1, term.logpower + 1):
                integral = head * log_c**m / w - (m / w) * integral
            total += term.coefficient * integral
        return total

    def describe(self) -> List[str]:
        return [pole.describe() for pole in self.poles]


# Pole enumeration


@dataclass
class _Candidate:
    location: complex
    order: int
    sources: List[PoleSpec]


def _add_candidate(candidates: List[_Candidate], pole: PoleSpec) -> None:
    for candidate in candidates:
        if abs(candidate.location - pole.location) < MERGE_RADIUS:
            candidate.order += pole.order
            candidate.sources.append(pole)
            return
    candidates.append(_Candidate(pole.location, pole.order, [pole]))


def _gamma_ladder(alpha: float, beta: complex, left: float, factor: Optional[int]) -> List[PoleSpec]:
    out = []
    k = 0
    while True:
        location = -(beta + k) / alpha
        if location.real <= left:
            return out
        if factor is None:
            out.append(PoleSpec(location, 1, PoleSource.EXTRA_GAMMA, k=k))
        else:
            out.append(PoleSpec(location, 1, PoleSource.GAMMA_FACTOR, factor=factor, k=k))
        k += 1


def _candidates(fe: FunctionalEquationData, kind: ResidualKind, left: float, rho: float) -> List[_Candidate]:
    candidates: List[_Candidate] = []
    if kind is not ResidualKind.Q_RHO:
        for i, (alpha, beta) in enumerate(zip(fe.sig.alphas, fe.sig.betas)):
            for pole in _gamma_ladder(alpha, beta, left, i):
                _add_candidate(candidates, pole)
    if kind is not ResidualKind.P:
        extra = _gamma_ladder(1.0, 0.0, left, None)
        if kind is ResidualKind.Q_RHO and abs(rho - round(rho)) < POLE_GUARD_RADIUS:
            # Gamma(s) / Gamma(s + rho + 1) is 1 / (s (s+1) ... (s+rho)) for integer rho
            extra = [pole for pole in extra if pole.k is not None and pole.k <= round(rho)]
        for pole in extra:
            _add_candidate(candidates, pole)
    for pole in fe.declared_poles:
        _add_candidate(candidates, pole)

    for candidate in candidates:
        candidate.order -= zero_order(fe.declared_zeros, candidate.location)
    return [candidate for candidate in candidates if candidate.order > 0]


def _merged_spec(candidate: _Candidate) -> PoleSpec:
    if len(candidate.sources) == 1:
        source = candidate.sources[0]
        return PoleSpec(candidate.location, candidate.order, source.source, source.factor, source.k)
    return PoleSpec(candidate.location, candidate.order, PoleSource.MERGED)


def enumerate_poles(
    fe: FunctionalEquationData, strip: Tuple[float, float], which: ResidualKind, rho: float = 0.0
) -> List[PoleSpec]:
    """
    Poles of the residual integrand of kind `which` with real part in the open strip.

    Gamma-block ladders, the extra Gamma(s) ladder (Q_rho and P1) and declared poles of phi are
    merged by location with summed order; declared zeros of phi are subtracted and poles of
    non-positive order dropped before the boundary check.

    Raises:
        ResidueError: If a surviving pole lies within the guard radius of a strip edge.
    """
    left, right = strip
    if not left < right:
        raise ValueError(f"empty strip {strip}")
    survivors = _candidates(fe, which, left - 1.0, rho)
    for candidate in survivors:
        for edge in (left, right):
            if abs(candidate.location.real - edge) < POLE_GUARD_RADIUS:
                raise ResidueError(
                    f"pole at {candidate.location} lies on the strip edge Re s = {edge}; move the line a"
                )
    inside = [c for c in survivors if left < c.location.real < right]
    inside.sort(key=lambda c: (-c.location.real, -c.location.imag))
    return [_merged_spec(c) for c in inside]


def _neighbour_radius(location: complex, others: Sequence[complex]) -> float:
    gaps = [abs(location - other) for other in others if abs(location - other) > MERGE_RADIUS]
    return min([RESIDUE_RADIUS] + [0.5 * gap for gap in gaps])


# Integrands


def x_free_integrand(fe: FunctionalEquationData, kind: ResidualKind, rho: float = 0.0) -> Callable[[np.ndarray], np.ndarray]:
    """The integrand of a residual function without its power of x, as an array function."""
    if kind is ResidualKind.P:
        ratio = GammaRatio.from_signature(fe.sig)
    elif kind is ResidualKind.P1:
        ratio = GammaRatio.from_signature(fe.sig).extended([(1, 1.0, 0.0)])
    else:
        ratio = GammaRatio(((1, 1.0, 0.0), (-1, 1.0, rho + 1.0)))

    def integrand(s: np.ndarray) -> np.ndarray:
        points = np.atleast_1d(np.asarray(s, dtype=complex))
        phi = np.array([fe.phi(complex(p)) for p in points], dtype=complex)
        return phi * np.exp(ratio.log_value(points))

    return integrand


def residue_numeric(integrand: Callable, pole: PoleSpec, radius: float, tol: float = RESIDUE_TOL) -> complex:
    """
    (1/2 pi i) times the integral of integrand around |s - pole| = radius.

    Raises:
        ResidueError: If the trapezoid sums do not settle (an unlisted singularity is likely).
    """
    return laurent_coefficients(integrand, pole.location, radius, lowest=-1, highest=-1, tol=tol)[-1]


def laurent_principal_part(
    integrand: Callable, pole: PoleSpec, radius: float, tol: float = RESIDUE_TOL
) -> Tuple[Dict[int, complex], int]:
    """
    Principal-part coefficients h_j, -order <= j <= -1, of integrand at the pole, and the detected order.

    The order is read off the Laurent coefficients down to MAX_POLE_ORDER. A detected order
    that disagrees with the declaration is logged; the larger one is used.
    """
    depth = max(MAX_POLE_ORDER, pole.order)
    coeffs = laurent_coefficients(integrand, pole.location, radius, lowest=-depth, highest=0, tol=tol)
    scaled = {k: abs(c) * radius**k for k, c in coeffs.items()}
    scale = max(max(scaled.values()), 1e-300)
    detected = 0
    for j in range(depth, 0, -1):
        if scaled[-j] > ORDER_DETECTION_THRESHOLD * scale:
            detected = j
            break
    if detected != pole.order:
        logger.warning(
            "pole at %s declared with order %d but the Laurent coefficients indicate order %d",
            pole.location, pole.order, detected,
        )
    order = max(detected, pole.order)
    return {j: coeffs[j] for j in range(-order, 0)}, order


@lru_cache(maxsize=256)
def residual_terms(fe: FunctionalEquationData, kind: ResidualKind, a: float, rho: float = 0.0) -> ResidualTermSum:
    """
    The residual function of the given kind for the line a as a ResidualTermSum.

    For P and P_1 the term at a pole p is sum_l h_{-1-l} (-1)^l / l! x^-p (log x)^l; for Q_rho it
    is sum_l h_{-1-l} / l! x^(p + rho) (log x)^l.
    """
    strip = (fe.delta - a, a)
    poles = enumerate_poles(fe, strip, kind, rho)
    if not poles:
        return ResidualTermSum((), ())
    integrand = x_free_integrand(fe, kind, rho)
    neighbours = [c.location for c in _candidates(fe, kind, strip[0] - 1.0, rho)]

    terms: List[ResidualTerm] = []
    for pole in poles:
        radius = _neighbour_radius(pole.location, neighbours)
        principal, order = laurent_principal_part(integrand, pole, radius)
        for l in range(order):
            h = principal[-1 - l]
            if kind is ResidualKind.Q_RHO:
                terms.append(ResidualTerm(pole.location + rho, l, h / math.factorial(l)))
            else:
                terms.append(ResidualTerm(-pole.location, l, h * (-1) ** l / math.factorial(l)))
    logger.debug("%s residual for %s on a=%g: %d poles, %d terms", kind.value, fe.name, a, len(poles), len(terms))
    return ResidualTermSum(tuple(terms), tuple(poles))


def default_line(fe: FunctionalEquationData) -> float:
    """
    a = max(0, sigma_a, sigma_b) + 1/4, widened by 1/2 until the declared poles of phi lie inside
    (delta - a, a) and no residual pole sits on a strip edge.
    """
    a = max(0.0, fe.sigma_a, fe.sigma_b) + DEFAULT_LINE_MARGIN
    for _ in range(10):
        inside = all(fe.delta - a < pole.location.real < a for pole in fe.declared_poles)
        if inside:
            try:
                for kind in ResidualKind:
                    enumerate_poles(fe, (fe.delta - a, a), kind)
                return a
            except ResidueError:
                pass
        a += 0.5
    raise ResidueError(f"no line a up to {a} encloses the declared poles of {fe.name!r}")


def residual_P(fe: FunctionalEquationData, x: float, a: Optional[float] = None) -> complex:
    """P(x), the residue sum of F(s) x^-s; independent of a once every pole of F is enclosed."""
    a = default_line(fe) if a is None else a
    return complex(residual_terms(fe, ResidualKind.P, float(a)).evaluate(x))


def residual_Q_rho(
    fe: FunctionalEquationData, x: float, rho: float, a: Optional[float] = None
) -> Tuple[ResidualTermSum, complex]:
    """Q_rho(x) as a term sum and its value at x; the included Gamma(s) poles depend on a."""
    if rho < 0.0:
        raise ValueError(f"rho must be non-negative, got {rho}")
    a = default_line(fe) if a is None else a
    terms = residual_terms(fe, ResidualKind.Q_RHO, float(a), float(rho))
    return terms, complex(terms.evaluate(x))


def residual_P1(fe: FunctionalEquationData, x: float, a: Optional[float] = None) -> complex:
    """P_1(x), the residue sum of Gamma(s) F(s) x^-s over the strip of the line a."""
    a = default_line(fe) if a is None else a
    return complex(residual_terms(fe, ResidualKind.P1, float(a)).evaluate(x))
