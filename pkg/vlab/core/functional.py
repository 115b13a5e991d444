"""
functional.py
#############

Data types for a pair of Dirichlet series linked by a Hecke-type functional equation

    Q^s F(s) = omega Q^(delta - s) conj(G(delta - conj s)),
    F(s) = phi(s) prod Gamma(alpha_i s + beta_i),  G(s) = psi(s) prod Gamma(alpha_i s + beta_i),

with phi(s) = sum a_n lambda_n^-s and psi(s) = sum b_n mu_n^-s.
"""

# Imports
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .config import DEFAULT_SERIES_CAP
from .errors import ConfigurationError, TruncationError
from .gamma import GammaSignature, gamma_product
from .poles import PoleSpec, ZeroLadder

logger = logging.getLogger(__name__)

PrefixGenerator = Callable[[int], np.ndarray]
Continuation = Callable[[complex], complex]


def integer_lattice(n: int) -> np.ndarray:
    """lambda_n = n."""
    return np.arange(1, n + 1, dtype=float)


@dataclass(eq=False)
class ArithmeticSeriesPair:
    """
    The sequences (lambda_n, a_n) and (mu_n, b_n) with prefix generators.

    Generators return the first n terms as arrays. Generated prefixes are cached read-only
    and grown by doubling up to n_max. A missing dual side means b_n = a_n and mu_n = lambda_n.
    """

    a_generator: PrefixGenerator
    lambda_generator: PrefixGenerator = integer_lattice
    b_generator: Optional[PrefixGenerator] = None
    mu_generator: Optional[PrefixGenerator] = None
    n_max: int = DEFAULT_SERIES_CAP
    continuation: Optional[Continuation] = None
    dual_continuation: Optional[Continuation] = None
    _cache: Dict[bool, Tuple[np.ndarray, np.ndarray]] = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    @property
    def self_dual(self) -> bool:
        return self.b_generator is None and self.mu_generator is None

    def _generators(self, dual: bool) -> Tuple[PrefixGenerator, PrefixGenerator]:
        if not dual:
            return self.lambda_generator, self.a_generator
        return (self.mu_generator or self.lambda_generator), (self.b_generator or self.a_generator)

    def prefix(self, n: int, dual: bool = False) -> Tuple[np.ndarray, np.ndarray]:
        """
        First n terms (lattice, coefficients) of one side.

        Raises:
            TruncationError: If n exceeds n_max.
        """
        if n < 1:
            raise ValueError(f"prefix length must be positive, got {n}")
        if n > self.n_max:
            raise TruncationError(f"{n} terms requested but the series is capped at {self.n_max}")
        if self.self_dual:
            dual = False
        with self._lock:
            cached = self._cache.get(dual)
            if cached is None or cached[0].size < n:
                size = n if cached is None else min(max(n, 2 * cached[0].size), self.n_max)
                cached = self._generate(size, dual)
                self._cache[dual] = cached
        lattice, coeffs = cached
        return lattice[:n], coeffs[:n]

    def _generate(self, n: int, dual: bool) -> Tuple[np.ndarray, np.ndarray]:
        lattice_gen, coeff_gen = self._generators(dual)
        lattice = np.array(lattice_gen(n), dtype=float)
        coeffs = np.array(coeff_gen(n), dtype=complex)
        if lattice.size < n or coeffs.size < n:
            raise TruncationError(f"generator produced {min(lattice.size, coeffs.size)} of {n} requested terms")
        lattice, coeffs = lattice[:n], coeffs[:n]
        if lattice[0] <= 0.0 or np.any(np.diff(lattice) <= 0.0):
            raise ConfigurationError("the lattice must be positive and strictly increasing")
        lattice.flags.writeable = False
        coeffs.flags.writeable = False
        logger.debug("generated %d %s terms", n, "dual" if dual else "primal")
        return lattice, coeffs

    def count_up_to(self, x: float, dual: bool = False) -> int:
        """Number of lattice points <= x, growing the cached prefix as needed."""
        n = 16
        while True:
            n = min(n, self.n_max)
            lattice, _ = self.prefix(n, dual)
            if lattice[-1] > x:
                return int(np.searchsorted(lattice, x, side="right"))
            if n == self.n_max:
                raise TruncationError(f"more than {self.n_max} lattice points lie below {x}")
            n *= 2

    def real_coefficients(self, n: int = 64) -> bool:
        """True when the first n coefficients of both sides are real."""
        n = min(n, self.n_max)
        return bool(np.all(self.prefix(n)[1].imag == 0.0) and np.all(self.prefix(n, dual=True)[1].imag == 0.0))

    def swapped(self) -> "ArithmeticSeriesPair":
        """The pair with the roles of (lambda, a) and (mu, b) exchanged."""
        if self.self_dual:
            return ArithmeticSeriesPair(
                self.a_generator, self.lambda_generator, None, None, self.n_max,
                self.continuation, self.continuation,
            )
        mu_gen, b_gen = self._generators(True)
        return ArithmeticSeriesPair(
            b_gen, mu_gen, self.a_generator, self.lambda_generator, self.n_max,
            self.dual_continuation, self.continuation,
        )


@dataclass(eq=False)
class FunctionalEquationData:
    """Everything that determines one functional equation and its two Dirichlet series."""

    delta: float
    bigQ: float
    omega: complex
    sig: GammaSignature
    series: ArithmeticSeriesPair
    declared_poles: Tuple[PoleSpec, ...] = ()
    declared_zeros: Tuple[ZeroLadder, ...] = ()
    sigma_a: float = 1.0
    sigma_b: float = 1.0
    dual_poles: Optional[Tuple[PoleSpec, ...]] = None
    dual_zeros: Optional[Tuple[ZeroLadder, ...]] = None
    name: str = "custom"

    def __post_init__(self) -> None:
        self.omega = complex(self.omega)
        if not self.delta > 0.0:
            raise ConfigurationError(f"delta must be positive, got {self.delta}")
        if not self.bigQ > 0.0:
            raise ConfigurationError(f"Q must be positive, got {self.bigQ}")
        if abs(abs(self.omega) - 1.0) >= 1e-12:
            raise ConfigurationError(f"|omega| must be 1, got {abs(self.omega)}")
        self.declared_poles = tuple(self.declared_poles)
        self.declared_zeros = tuple(self.declared_zeros)
        if self.dual_poles is None:
            self.dual_poles = self.declared_poles
        if self.dual_zeros is None:
            self.dual_zeros = self.declared_zeros

    @property
    def sig_conj(self) -> GammaSignature:
        return self.sig.conjugate()

    @property
    def dprime(self) -> float:
        return self.sig.dprime

    def phi(self, s: complex) -> complex:
        """The analytic continuation of sum a_n lambda_n^-s."""
        if self.series.continuation is None:
            raise ConfigurationError(f"series {self.name!r} has no analytic continuation")
        return complex(self.series.continuation(s))

    def psi(self, s: complex) -> complex:
        """The analytic continuation of sum b_n mu_n^-s."""
        continuation = self.series.dual_continuation or (
            self.series.continuation if self.series.self_dual else None
        )
        if continuation is None:
            raise ConfigurationError(f"series {self.name!r} has no dual continuation")
        return complex(continuation(s))

    def conj_psi(self, p: complex) -> complex:
        """sum conj(b_n) mu_n^-p, i.e. conj(psi(conj p))."""
        return self.psi(complex(p).conjugate()).conjugate()

    def completed(self, s: complex) -> complex:
        """Q^s F(s) from the continuation and the Gamma block."""
        block = gamma_product(self.sig, s).to_complex()
        return complex(np.exp(complex(s) * math.log(self.bigQ))) * self.phi(s) * block

    def dual(self) -> "FunctionalEquationData":
        """
        The data of G: series and declared poles swapped; the Gamma block and omega are kept,
        since Q^s G(s) = omega Q^(delta - s) conj(F(delta - conj s)).
        """
        return FunctionalEquationData(
            delta=self.delta,
            bigQ=self.bigQ,
            omega=self.omega,
            sig=self.sig,
            series=self.series.swapped(),
            declared_poles=tuple(self.dual_poles or ()),
            declared_zeros=tuple(self.dual_zeros or ()),
            sigma_a=self.sigma_b,
            sigma_b=self.sigma_a,
            dual_poles=self.declared_poles,
            dual_zeros=self.declared_zeros,
            name=f"{self.name}-dual",
        )
