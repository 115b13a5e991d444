"""
catalog.py
##########

Preset Dirichlet series with their functional-equation data: the theta/zeta smoke test, the
divisor function, generalized divisor sums sigma_z and sigma^(k), sums of two squares and
Ramanujan's tau. Custom series from run configurations are assembled here as well.

Every preset uses the integer lattice lambda_n = mu_n = n and a real, self-dual coefficient
sequence, so omega = 1 and the dual series equals the primal one.
"""

# Imports
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

import mpmath
import numpy as np

from .arithmetic import coeff_tau, divisor_counts, r2_counts, sigma_zk_values
from .config import CustomSeriesConfig, PoleConfig
from .errors import ConfigurationError
from .functional import ArithmeticSeriesPair, Continuation, FunctionalEquationData, PrefixGenerator
from .gamma import GammaSignature
from .poles import PoleSource, PoleSpec, ZeroLadder

logger = logging.getLogger(__name__)

TAU_CONTINUATION_TERMS = 24  # exp(-2 pi n) drops below 1e-60 well before this
TAU_CONTINUATION_DPS = 30


class OracleTag(Enum):
    """Closed-form cross-checks a preset supports."""

    THETA_IDENTITY = "theta_identity"  # 2 sum exp(-n^2 x^2) against its transform
    K0_KERNEL = "k0_kernel"  # single Gamma(s) block, Y kernel is 2 K_0(2 sqrt x)
    BESSEL_I_RHO = "bessel_i_rho"  # single Gamma(s) block, I_rho is a Bessel J
    WILTON = "wilton"  # tau Riesz sums against the J_{12+rho} series
    DIVISOR_SUMMATORY = "divisor_summatory"  # sum d(n) = sum floor(x/m)


@dataclass(frozen=True)
class RieszPoint:
    """A recommended (rho, x) for the Riesz identity and the tolerance it reaches."""

    rho: float
    x: float
    tol: float
    relative: bool = False


@dataclass
class SeriesPreset:
    """A named functional equation with its lattice description and supported oracles."""

    name: str
    fe: FunctionalEquationData
    lattice: str = "lambda_n = mu_n = n"
    oracle_tags: List[OracleTag] = field(default_factory=list)
    riesz_point: Optional[RieszPoint] = None
    description: str = ""


# Continuations


def zeta_continuation(s: complex) -> complex:
    return complex(mpmath.zeta(s))


def divisor_continuation(s: complex) -> complex:
    return complex(mpmath.zeta(s) ** 2)


def r2_continuation(s: complex) -> complex:
    """4 zeta(s) L(s, chi_-4)."""
    return complex(4 * mpmath.zeta(s) * mpmath.dirichlet(s, [0, 1, 0, -1]))


def sigma_z_continuation(z: float) -> Continuation:
    """pi^(z/2) zeta(s) zeta(s - z)."""
    scale = math.pi ** (0.5 * z)

    def continuation(s: complex) -> complex:
        return complex(scale * mpmath.zeta(s) * mpmath.zeta(s - z))

    return continuation


def sigma_k_continuation(k: int) -> Continuation:
    """pi^((k-1)/4) zeta(s) zeta(k s - (k-1)/2)."""
    scale = math.pi ** (0.25 * (k - 1))

    def continuation(s: complex) -> complex:
        return complex(scale * mpmath.zeta(s) * mpmath.zeta(k * s - 0.5 * (k - 1)))

    return continuation


@lru_cache(maxsize=1)
def _tau_table() -> Tuple[int, ...]:
    return tuple(coeff_tau(TAU_CONTINUATION_TERMS))


def tau_continuation(s: complex) -> complex:
    """
    L(s, Delta) from the rapidly convergent incomplete-gamma series

        (2 pi)^-s Gamma(s) L(s) = sum tau(n) [(2 pi n)^-s Gamma(s, 2 pi n) + (2 pi n)^(s-12) Gamma(12-s, 2 pi n)].
    """
    with mpmath.workdps(TAU_CONTINUATION_DPS):
        s = mpmath.mpc(s)
        two_pi = 2 * mpmath.pi
        total = mpmath.mpc(0)
        for n, tau in enumerate(_tau_table(), start=1):
            u = two_pi * n
            total += tau * (u ** (-s) * mpmath.gammainc(s, u) + u ** (s - 12) * mpmath.gammainc(12 - s, u))
        return complex(total * two_pi**s * mpmath.rgamma(s))


# Prefix generators


def ones(n: int) -> np.ndarray:
    return np.ones(n)


def tau_prefix(n: int) -> np.ndarray:
    return np.array([float(t) for t in coeff_tau(n)])


def sigma_z_prefix(z: float) -> PrefixGenerator:
    scale = math.pi ** (0.5 * z)
    return lambda n: scale * sigma_zk_values(n, z, 1).real


def sigma_k_prefix(k: int) -> PrefixGenerator:
    scale = math.pi ** (0.25 * (k - 1))
    return lambda n: scale * sigma_zk_values(n, 0.5 * (k - 1), k).real


# Named generators for custom series: prefix and, where known, the continuation
GENERATORS: Dict[str, Tuple[PrefixGenerator, Optional[Continuation]]] = {
    "one": (ones, zeta_continuation),
    "divisor": (divisor_counts, divisor_continuation),
    "r2": (r2_counts, r2_continuation),
    "tau": (tau_prefix, tau_continuation),
}


# Presets


def _zeta_zeros(order: int = 1) -> ZeroLadder:
    return ZeroLadder(-2.0, -2.0, order)


def _theta_zeta() -> SeriesPreset:
    fe = FunctionalEquationData(
        delta=1.0,
        bigQ=math.pi**-0.5,
        omega=1.0,
        sig=GammaSignature.of([0.5], [0.0]),
        series=ArithmeticSeriesPair(ones, continuation=zeta_continuation),
        declared_poles=(PoleSpec(1.0, 1),),
        declared_zeros=(_zeta_zeros(),),
        sigma_a=1.0,
        sigma_b=1.0,
        name="theta-zeta",
    )
    return SeriesPreset(
        "theta-zeta",
        fe,
        lattice="lambda_n = mu_n = n with the Gamma(s/2) block",
        oracle_tags=[OracleTag.THETA_IDENTITY],
        riesz_point=RieszPoint(rho=1.0, x=7.3, tol=1e-6),
        description="zeta(s) Gamma(s/2): the theta transformation formula",
    )


def _sigma_z(z: float, name: str) -> SeriesPreset:
    if isinstance(z, complex) or not -1.0 < z <= 0.0:
        raise ValueError(f"sigma-z presets need real z in (-1, 0], got {z}")
    z = float(z)
    zeros = (ZeroLadder(-2.0, -2.0, 1), ZeroLadder(z - 2.0, -2.0, 1))
    if z == 0.0:
        poles: Tuple[PoleSpec, ...] = (PoleSpec(1.0, 2),)
    else:
        poles = (PoleSpec(1.0, 1), PoleSpec(1.0 + z, 1))
    fe = FunctionalEquationData(
        delta=1.0 + z,
        bigQ=1.0 / math.pi,
        omega=1.0,
        sig=GammaSignature.of([0.5, 0.5], [0.0, -0.5 * z]),
        series=ArithmeticSeriesPair(
            sigma_z_prefix(z), continuation=divisor_continuation if z == 0.0 else sigma_z_continuation(z)
        ),
        declared_poles=poles,
        declared_zeros=zeros,
        sigma_a=1.0,
        sigma_b=1.0,
        name=name,
    )
    tags = [OracleTag.DIVISOR_SUMMATORY] if z == 0.0 else []
    point = RieszPoint(rho=2.0, x=10.5, tol=1e-5, relative=True) if z == 0.0 else None
    return SeriesPreset(name, fe, oracle_tags=tags, riesz_point=point,
                        description=f"pi^(z/2) sigma_z(n) with z = {z:g}: zeta(s) zeta(s - z)")


def _sigma_k(k: int) -> SeriesPreset:
    if k != int(k) or k < 1:
        raise ValueError(f"sigma-k presets need a positive integer k, got {k}")
    k = int(k)
    shift = 0.5 * (k - 1)
    if k == 1:
        poles: Tuple[PoleSpec, ...] = (PoleSpec(1.0, 2),)
    else:
        poles = (PoleSpec(1.0, 1), PoleSpec((k + 1) / (2.0 * k), 1))
    fe = FunctionalEquationData(
        delta=1.0,
        bigQ=math.pi ** (-0.5 * (k + 1)),
        omega=1.0,
        sig=GammaSignature.of([0.5, 0.5 * k], [0.0, -0.5 * shift], strict=False),
        series=ArithmeticSeriesPair(sigma_k_prefix(k), continuation=sigma_k_continuation(k)),
        declared_poles=poles,
        declared_zeros=(ZeroLadder(-2.0, -2.0, 1), ZeroLadder((shift - 2.0) / k, -2.0 / k, 1)),
        sigma_a=1.0,
        sigma_b=1.0,
        name=f"sigma-k(k={k})",
    )
    return SeriesPreset(fe.name, fe, description=f"pi^((k-1)/4) sigma^(k)_((k-1)/2)(n) with k = {k}")


def _r2() -> SeriesPreset:
    fe = FunctionalEquationData(
        delta=1.0,
        bigQ=1.0 / math.pi,
        omega=1.0,
        sig=GammaSignature.of([1.0], [0.0]),
        series=ArithmeticSeriesPair(r2_counts, continuation=r2_continuation),
        declared_poles=(PoleSpec(1.0, 1),),
        declared_zeros=(ZeroLadder(-2.0, -2.0, 1), ZeroLadder(-1.0, -2.0, 1)),
        sigma_a=1.0,
        sigma_b=1.0,
        name="r2",
    )
    return SeriesPreset("r2", fe, oracle_tags=[OracleTag.K0_KERNEL, OracleTag.BESSEL_I_RHO],
                        riesz_point=RieszPoint(rho=2.0, x=5.5, tol=1e-5, relative=True),
                        description="r2(n): 4 zeta(s) L(s, chi_-4)")


def _ramanujan_tau() -> SeriesPreset:
    fe = FunctionalEquationData(
        delta=12.0,
        bigQ=1.0 / (2.0 * math.pi),
        omega=1.0,
        sig=GammaSignature.of([1.0], [0.0]),
        series=ArithmeticSeriesPair(tau_prefix, n_max=100_000, continuation=tau_continuation),
        declared_poles=(),
        declared_zeros=(ZeroLadder(0.0, -1.0, 1),),
        sigma_a=6.5,
        sigma_b=6.5,
        name="ramanujan-tau",
    )
    return SeriesPreset("ramanujan-tau", fe, oracle_tags=[OracleTag.K0_KERNEL, OracleTag.WILTON],
                        description="tau(n): L(s, Delta), weight 12")


@dataclass(frozen=True)
class PresetInfo:
    """Registry entry: how to build a preset and which parameters it takes."""

    name: str
    builder: Callable[..., SeriesPreset]
    parameters: Dict[str, float]
    summary: str


PRESET_DATABASE: Dict[str, PresetInfo] = {
    "theta-zeta": PresetInfo("theta-zeta", _theta_zeta, {}, "zeta(s) with Gamma(s/2), delta = 1"),
    "divisor": PresetInfo("divisor", lambda: _sigma_z(0.0, "divisor"), {}, "d(n), zeta(s)^2 with Gamma(s/2)^2"),
    "sigma-z": PresetInfo(
        "sigma-z", lambda z=-0.5: _sigma_z(z, f"sigma-z(z={z:g})"), {"z": -0.5},
        "pi^(z/2) sigma_z(n), real z in (-1, 0], delta = 1 + z",
    ),
    "sigma-k": PresetInfo("sigma-k", lambda k=2: _sigma_k(k), {"k": 2}, "pi^((k-1)/4) sigma^(k)_((k-1)/2)(n), delta = 1"),
    "r2": PresetInfo("r2", _r2, {}, "r2(n) with Gamma(s), delta = 1"),
    "ramanujan-tau": PresetInfo("ramanujan-tau", _ramanujan_tau, {}, "tau(n) with Gamma(s), delta = 12"),
}


@lru_cache(maxsize=32)
def _cached_preset(name: str, params: Tuple[Tuple[str, float], ...]) -> SeriesPreset:
    info = PRESET_DATABASE[name]
    logger.debug("building preset %s with %s", name, dict(params))
    return info.builder(**dict(params))


def preset(name: str, **params: float) -> SeriesPreset:
    """
    Returns a catalog preset. Instances are cached per (name, parameters) so coefficient
    prefixes and residual expansions are shared.

    Raises:
        ValueError: For an unknown name or an unknown or out-of-range parameter.
    """
    if name not in PRESET_DATABASE:
        raise ValueError(f"Unknown preset: {name}. Available presets: {', '.join(PRESET_DATABASE)}")
    info = PRESET_DATABASE[name]
    unknown = set(params) - set(info.parameters)
    if unknown:
        raise ValueError(f"Preset {name} does not take parameters {sorted(unknown)}")
    if name == "sigma-k" and "k" in params:
        params["k"] = int(params["k"])
    return _cached_preset(name, tuple(sorted(params.items())))


def available_presets() -> List[str]:
    return list(PRESET_DATABASE)


# Custom series


def _pole_spec(pole: PoleConfig) -> PoleSpec:
    location = pole.location
    value = complex(location[0], location[1]) if isinstance(location, tuple) else complex(location)
    return PoleSpec(value, pole.order, PoleSource.SERIES_DECLARED)


def _array_generator(values: List[float], label: str) -> PrefixGenerator:
    data = np.asarray(values, dtype=float)

    def generator(n: int) -> np.ndarray:
        if n > data.size:
            raise ConfigurationError(f"{label} has {data.size} entries but {n} were requested")
        return data[:n]

    return generator


def custom_series(config: CustomSeriesConfig) -> FunctionalEquationData:
    """
    Builds functional-equation data from an inline series description.

    Named generators bring their continuation along; explicit coefficient arrays have none,
    so residues and Perron integrals are unavailable for them.

    Raises:
        ConfigurationError: For an unknown generator or inconsistent data.
    """
    betas = [complex(b[0], b[1]) if isinstance(b, tuple) else complex(b) for b in config.betas]
    sig = GammaSignature.of(config.alphas, betas, strict=config.strict)

    continuation: Optional[Continuation] = None
    if config.generator is not None:
        if config.generator not in GENERATORS:
            raise ConfigurationError(f"Unknown generator {config.generator!r}; known: {', '.join(GENERATORS)}")
        a_gen, continuation = GENERATORS[config.generator]
        n_max = 100_000
    else:
        a_gen = _array_generator(config.a_coeffs or [], "a_coeffs")
        n_max = len(config.a_coeffs or [])

    b_gen = _array_generator(config.b_coeffs, "b_coeffs") if config.b_coeffs is not None else None
    lambda_gen = _array_generator(config.lambdas, "lambdas") if config.lambdas is not None else None
    mu_gen = _array_generator(config.mus, "mus") if config.mus is not None else None
    for values in (config.b_coeffs, config.lambdas, config.mus):
        if values is not None:
            n_max = min(n_max, len(values))

    series = ArithmeticSeriesPair(a_gen, b_generator=b_gen, mu_generator=mu_gen, n_max=n_max,
                                  continuation=continuation)
    if lambda_gen is not None:
        series.lambda_generator = lambda_gen

    return FunctionalEquationData(
        delta=config.delta,
        bigQ=config.bigQ,
        omega=complex(config.omega[0], config.omega[1]),
        sig=sig,
        series=series,
        declared_poles=tuple(_pole_spec(p) for p in config.poles),
        declared_zeros=tuple(ZeroLadder(z.start, z.step, z.order) for z in config.zeros),
        sigma_a=config.sigma_a,
        sigma_b=config.sigma_b,
        name="custom",
    )
