"""
identities.py
#############

Both sides of the modular relation and of the auxiliary modular relation, the Mellin
reconstruction of the completed function Q^s F(s) from kernel sums, and the report type
shared by every identity check.

    sum a_n Z(lambda_n x) = P(x) + omega / (x Q)^delta sum conj(b_n) Z'(mu_n / (Q^2 x))
    sum a_n Y(lambda_n x) = P_1(x) + omega / (x Q)^delta sum conj(b_n) X'(mu_n / (Q^2 x))

Primed kernels use the conjugate signature (conj beta_i).
"""

# Imports
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .errors import ContourError, TruncationError
from .functional import FunctionalEquationData
from .kernels import (
    KernelKind,
    KernelVariant,
    XAsymptoticSeries,
    choose_truncation,
    decay_bound_params,
    eval_kernel_array,
)
from .quadrature import compensated_sum, panel_rule
from .residues import ResidualKind, default_line, residual_P, residual_P1, residual_terms

logger = logging.getLogger(__name__)

RECONSTRUCTION_PANEL = 0.25  # Panel width in log x for the Mellin integrals
RECONSTRUCTION_NODES = 20
RECONSTRUCTION_FLOOR = 1e-17  # Integrand size, relative to the largest sample, that ends a Mellin integral
SECOND_SPLIT = 1.3


class IdentityTag(Enum):
    """Which identity a report checks."""

    MODULAR = "modular"
    RIESZ = "riesz"
    AUX_MODULAR = "aux_modular"
    FUNCTIONAL_EQ = "functional_eq"
    RECONSTRUCTION = "reconstruction"  # Q^s F(s) rebuilt from kernel sums
    PERRON = "perron"  # Perron integral against the direct Riesz sum


PointValue = Union[float, complex]


def _encode(value: Any) -> Any:
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def _decode(value: Any) -> Any:
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return complex(value["re"], value["im"])
    return value


@dataclass(frozen=True)
class IdentityReport:
    """
    Left side, right side and bookkeeping of one identity at one evaluation point.

    `passed` compares the residual with tol, scaled by max(|lhs|, |rhs|) for relative reports.
    """

    identity: IdentityTag
    point: Dict[str, PointValue]
    lhs: complex
    rhs: complex
    terms_used: Dict[str, int] = field(default_factory=dict)
    truncation_estimate: float = 0.0
    tol: float = 1e-8
    relative: bool = False

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def scale(self) -> float:
        return max(abs(self.lhs), abs(self.rhs)) if self.relative else 1.0

    @property
    def relative_residual(self) -> float:
        size = max(abs(self.lhs), abs(self.rhs))
        return self.residual / size if size > 0.0 else self.residual

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol * self.scale

    @property
    def canary(self) -> bool:
        """A confident truncation that still misses the tolerance: a genuine identity failure."""
        return self.truncation_estimate < 0.5 * self.tol * self.scale and not self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "identity": self.identity.value,
            "point": {key: _encode(value) for key, value in self.point.items()},
            "lhs": _encode(complex(self.lhs)),
            "rhs": _encode(complex(self.rhs)),
            "residual": float(self.residual),
            "terms_used": {key: int(value) for key, value in self.terms_used.items()},
            "truncation_estimate": float(self.truncation_estimate),
            "tol": self.tol,
            "relative": self.relative,
            "passed": bool(self.passed),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "IdentityReport":
        return cls(
            identity=IdentityTag(data["identity"]),
            point={key: _decode(value) for key, value in data["point"].items()},
            lhs=_decode(data["lhs"]),
            rhs=_decode(data["rhs"]),
            terms_used={key: int(value) for key, value in data.get("terms_used", {}).items()},
            truncation_estimate=float(data.get("truncation_estimate", 0.0)),
            tol=float(data["tol"]),
            relative=bool(data.get("relative", False)),
        )


# Kernel sums


@dataclass(frozen=True)
class KernelSum:
    """sum c_n K(ell_n y) truncated after `terms` terms, with a bound on what was left out."""

    value: complex
    terms: int
    estimate: float


def _coefficients(fe: FunctionalEquationData, n: int, dual: bool) -> Tuple[np.ndarray, np.ndarray]:
    lattice, coeffs = fe.series.prefix(n, dual)
    return lattice, (np.conj(coeffs) if dual else coeffs)


def _truncation_point(fe: FunctionalEquationData, kind: KernelKind, y: float, budget: float, dual: bool) -> Tuple[int, float]:
    """
    Smallest N such that sum_{n > N} |c_n| B(ell_n y) stays below budget, B the kernel decay bound.

    The prefix is doubled until its second half alone is below budget/2; that half also stands
    in for the terms never generated.

    Raises:
        TruncationError: If the series cap is reached first.
    """
    sig = fe.sig_conj if dual else fe.sig
    bound = decay_bound_params(sig, kind)
    m = 16
    while True:
        m = min(m, fe.series.n_max)
        lattice, coeffs = fe.series.prefix(m, dual)
        args = lattice * y
        envelope = np.abs(coeffs) * bound(np.maximum(args, 1.0))
        beyond = float(envelope[m // 2:].sum())
        if args[m // 2] >= 1.0 and beyond < 0.5 * budget:
            remaining = np.cumsum(envelope[::-1])[::-1]
            n = int(np.nonzero(remaining + beyond <= budget)[0][0])
            n = max(n, int(np.searchsorted(args, 1.0)), 1)
            tail = float(remaining[n]) if n < m else 0.0
            return n, tail + beyond
        if m == fe.series.n_max:
            raise TruncationError(
                f"{kind} sum at y={y:g} needs more than {m} terms of {fe.name!r} to reach {budget:.3g}"
            )
        m *= 2


def kernel_series(
    fe: FunctionalEquationData, kind: KernelKind, ys: np.ndarray, budget: float, dual: bool = False
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    sum c_n K(ell_n y) at every y, with c_n = a_n (or conj b_n on the dual side).

    Each y gets its own truncation point; all kernel values come from one batched evaluation.

    Returns:
        (values, estimates, terms) arrays aligned with ys.
    """
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    counts = []
    tails = []
    for y in ys:
        n, tail = _truncation_point(fe, kind, float(y), budget, dual)
        counts.append(n)
        tails.append(tail)
    lattice, coeffs = _coefficients(fe, max(counts), dual)
    args = np.concatenate([lattice[:n] * y for n, y in zip(counts, ys)])
    weights = np.concatenate([coeffs[:n] for n in counts])
    sig = fe.sig_conj if dual else fe.sig
    values, errors = eval_kernel_array(kind, sig, args)

    sums = np.empty(ys.size, dtype=complex)
    estimates = np.asarray(tails, dtype=float)
    start = 0
    for i, n in enumerate(counts):
        block = slice(start, start + n)
        sums[i] = compensated_sum(weights[block] * values[block])
        estimates[i] += float(np.sum(np.abs(weights[block]) * errors[block]))
        start += n
    return sums, estimates, np.asarray(counts)


def kernel_sum(fe: FunctionalEquationData, kind: KernelKind, y: float, budget: float, dual: bool = False) -> KernelSum:
    """A single kernel sum; see kernel_series."""
    values, estimates, terms = kernel_series(fe, kind, np.array([y]), budget, dual)
    return KernelSum(complex(values[0]), int(terms[0]), float(estimates[0]))


def _dual_factor(fe: FunctionalEquationData, x: float) -> complex:
    return fe.omega / (x * fe.bigQ) ** fe.delta


# Modular relation


def modular_report(fe: FunctionalEquationData, x: float, tol: float, relative: bool = False) -> IdentityReport:
    """
    Both sides of the modular relation at x.

    Each kernel sum is truncated where its decay-bound tail falls below tol/4 (the dual one
    after scaling by omega / (x Q)^delta).

    Raises:
        TruncationError: If x is so small (or 1 / (Q^2 x) so small) that a sum exceeds its cap.
    """
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    kind = KernelKind(KernelVariant.Z)
    factor = _dual_factor(fe, x)
    lhs = kernel_sum(fe, kind, x, 0.25 * tol)
    dual = kernel_sum(fe, kind, 1.0 / (fe.bigQ**2 * x), 0.25 * tol / abs(factor), dual=True)
    p_value = residual_P(fe, x)
    rhs = p_value + factor * dual.value
    logger.debug("modular %s x=%g: N_lhs=%d N_rhs=%d P=%s", fe.name, x, lhs.terms, dual.terms, p_value)
    return IdentityReport(
        identity=IdentityTag.MODULAR,
        point={"x": float(x)},
        lhs=lhs.value,
        rhs=rhs,
        terms_used={"lhs": lhs.terms, "rhs": dual.terms},
        truncation_estimate=lhs.estimate + abs(factor) * dual.estimate,
        tol=tol,
        relative=relative,
    )


# Auxiliary modular relation


def x_kernel_sum(fe: FunctionalEquationData, y0: float, a: float, budget: float) -> KernelSum:
    """
    sum conj(b_n) X'(mu_n y0) on the line a.

    Terms with mu_n y0 below the point where the large-y expansion of X' converges are
    evaluated by quadrature. The rest is summed through the expansion, each of its powers
    mu^-p over all n coming from the dual continuation minus the head already used.
    """
    kind = KernelKind(KernelVariant.X, fe.delta)
    expansion = XAsymptoticSeries(fe.sig_conj, fe.delta, a)
    y_switch = expansion.switch_point()
    _, count, _ = expansion.evaluate(y_switch)
    n_head = fe.series.count_up_to(y_switch / y0, dual=True)

    head = 0j
    estimate = 0.0
    if n_head > 0:
        lattice, coeffs = _coefficients(fe, n_head, True)
        args = lattice * y0
        contour = choose_truncation(
            fe.sig_conj, kind, a, min(budget, 1e-12), x_range=(float(args.min()), float(args.max()))
        )
        values, errors = eval_kernel_array(kind, fe.sig_conj, args, contour)
        head = compensated_sum(coeffs * values)
        estimate += float(np.sum(np.abs(coeffs) * errors))
    else:
        lattice, coeffs = np.empty(0), np.empty(0, dtype=complex)

    tail = []
    last = 0.0
    for p, log_c in expansion.terms(count + 2):
        partial = compensated_sum(coeffs * lattice ** (-p)) if n_head else 0j
        term = complex(np.exp(log_c - p * math.log(y0))) * (fe.conj_psi(p) - partial)
        tail.append(term)
        last = abs(term)
    estimate += last
    logger.debug("X sum y0=%g a=%g: %d quadrature terms, %d expansion powers", y0, a, n_head, count + 2)
    return KernelSum(head + compensated_sum(np.asarray(tail)), n_head, estimate)


def aux_modular_report(
    fe: FunctionalEquationData, x: float, tol: float, a: Optional[float] = None, relative: bool = False
) -> IdentityReport:
    """
    Both sides of the auxiliary modular relation at x, with P_1 and the X kernels on the line a.

    Raises:
        TruncationError: If the Y sum exceeds its cap.
        ConfigurationError: If the series has no dual continuation (the X-side tail needs it).
    """
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    a = default_line(fe) if a is None else float(a)
    factor = _dual_factor(fe, x)
    lhs = kernel_sum(fe, KernelKind(KernelVariant.Y), x, 0.25 * tol)
    dual = x_kernel_sum(fe, 1.0 / (fe.bigQ**2 * x), a, 0.25 * tol / abs(factor))
    p1_value = residual_P1(fe, x, a)
    rhs = p1_value + factor * dual.value
    return IdentityReport(
        identity=IdentityTag.AUX_MODULAR,
        point={"x": float(x), "a": a},
        lhs=lhs.value,
        rhs=rhs,
        terms_used={"lhs": lhs.terms, "rhs": dual.terms},
        truncation_estimate=lhs.estimate + abs(factor) * dual.estimate,
        tol=tol,
        relative=relative,
    )


# Reconstruction of Q^s F(s)


def _mellin_tail(
    fe: FunctionalEquationData, lower: float, exponent: complex, dual: bool, budget: float
) -> Tuple[complex, float]:
    """
    int_lower^inf sum c_n Z(ell_n v) v^(exponent - 1) dv, integrated in u = log v on
    Gauss-Legendre panels until the integrand has died out.
    """
    kind = KernelKind(KernelVariant.Z)
    sig = fe.sig_conj if dual else fe.sig
    bound = decay_bound_params(sig, kind)
    lattice, coeffs = _coefficients(fe, 1, dual)
    lead = abs(coeffs[0])

    u_start = math.log(lower)
    u_end = u_start + RECONSTRUCTION_PANEL
    peak = 0.0
    while True:
        v = math.exp(u_end)
        size = lead * float(bound(np.asarray(max(lattice[0] * v, 1.0)))) * v**exponent.real
        peak = max(peak, size)
        if lattice[0] * v >= 1.0 and size <= RECONSTRUCTION_FLOOR * peak:
            break
        u_end += RECONSTRUCTION_PANEL
        if u_end - u_start > 200.0:
            raise ContourError(f"Mellin integrand from {lower:g} does not decay")

    edges = np.arange(u_start, u_end + 0.5 * RECONSTRUCTION_PANEL, RECONSTRUCTION_PANEL)
    rule = panel_rule(edges, RECONSTRUCTION_NODES)
    nodes = np.concatenate((rule.nodes, rule.half_nodes))
    sums, estimates, _ = kernel_series(fe, kind, np.exp(nodes), budget, dual)
    factor = np.exp(exponent * nodes)
    full = compensated_sum(rule.weights * sums[: rule.nodes.size] * factor[: rule.nodes.size])
    half = compensated_sum(rule.half_weights * sums[rule.nodes.size:] * factor[rule.nodes.size:])
    truncation = float(np.sum(np.abs(rule.weights * factor[: rule.nodes.size]) * estimates[: rule.nodes.size]))
    return full, abs(full - half) + truncation


@dataclass(frozen=True)
class Reconstruction:
    value: complex
    estimate: float


def _reconstruct(fe: FunctionalEquationData, s: complex, split: float, tol: float) -> Reconstruction:
    if not split > 0.0:
        raise ValueError(f"split must be positive, got {split}")
    s = complex(s)
    q = fe.bigQ
    head = residual_terms(fe, ResidualKind.P, default_line(fe)).mellin_head(s, split)
    direct, direct_error = _mellin_tail(fe, split, s, False, tol)
    dual, dual_error = _mellin_tail(fe, 1.0 / (q * q * split), fe.delta - s, True, tol)
    dual_factor = fe.omega * complex(np.exp((fe.delta - 2.0 * s) * math.log(q)))
    scale = complex(np.exp(s * math.log(q)))
    value = scale * (direct + head + dual_factor * dual)
    estimate = abs(scale) * (direct_error + abs(dual_factor) * dual_error)
    logger.debug("reconstruction of %s at s=%s split=%g: estimate %.3g", fe.name, s, split, estimate)
    return Reconstruction(value, estimate)


def reconstruct_completed_function(
    fe: FunctionalEquationData, s: complex, split: float = 1.0, tol: float = 1e-13
) -> complex:
    """
    Q^s F(s) rebuilt from coefficient data, kernels and the residual function P alone:

        Q^s [ int_c^inf Phi(x) x^(s-1) dx + int_0^c P(x) x^(s-1) dx
              + omega Q^(delta - 2s) int_(1 / (Q^2 c))^inf Psi(v) v^(delta - s - 1) dv ]

    with Phi(x) = sum a_n Z(lambda_n x), Psi(v) = sum conj(b_n) Z'(mu_n v) and c = split.
    The P piece is integrated term by term in closed form (continued analytically in s).

    Raises:
        ResidueError: If s is a pole of F.
    """
    return _reconstruct(fe, s, split, tol).value


def completed_function_direct(fe: FunctionalEquationData, s: complex) -> complex:
    """Q^s F(s) from the series continuation and the Gamma block."""
    return fe.completed(s)


def functional_equation_report(
    fe: FunctionalEquationData, s: complex, tol: float = 1e-6, relative: bool = True
) -> IdentityReport:
    """
    Q^s F(s) against omega Q^(delta - s) conj(G(delta - conj s)), each side reconstructed from
    modular data (the second from the dual series, at a different split point).
    """
    s = complex(s)
    lhs = _reconstruct(fe, s, 1.0, 1e-13)
    dual = _reconstruct(fe.dual(), fe.delta - s.conjugate(), SECOND_SPLIT, 1e-13)
    rhs = fe.omega * dual.value.conjugate()
    return IdentityReport(
        identity=IdentityTag.FUNCTIONAL_EQ,
        point={"s": s},
        lhs=lhs.value,
        rhs=rhs,
        terms_used={},
        truncation_estimate=lhs.estimate + dual.estimate,
        tol=tol,
        relative=relative,
    )


def reconstruction_report(fe: FunctionalEquationData, s: complex, tol: float = 1e-6) -> IdentityReport:
    """The reconstruction of Q^s F(s) against its direct evaluation, as a relative report."""
    s = complex(s)
    rebuilt = _reconstruct(fe, s, 1.0, 1e-13)
    return IdentityReport(
        identity=IdentityTag.RECONSTRUCTION,
        point={"s": s},
        lhs=rebuilt.value,
        rhs=completed_function_direct(fe, s),
        truncation_estimate=rebuilt.estimate,
        tol=tol,
        relative=True,
    )

