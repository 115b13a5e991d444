"""
config.py
#########

Numerical defaults, environment overrides and the validated run configuration.

Run configurations are JSON documents (see templates/template_run.json) naming either a
catalog preset or an inline custom series, the identity to check, the evaluation points
and the output settings.
"""

# Imports
import json
import logging
import os
from functools import lru_cache
from typing import Dict, List, Literal, Optional, Tuple, Union

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

# Numerical defaults
POLE_GUARD_RADIUS = 1e-8  # Distance to a Gamma pole below which evaluation fails
STIRLING_SWITCH_IMAG = 20.0  # |Im z| above which log_gamma uses the Stirling series
STIRLING_TERMS = 10  # Bernoulli correction terms in the Stirling series
STIRLING_THRESHOLD = 10.0  # Smallest |t| accepted by gamma_magnitude_estimate
MAGNITUDE_ESTIMATE_FACTOR = 2.0  # Documented bound on estimate/|Gamma product| and its inverse
RESIDUE_RADIUS = 0.1  # Largest circle radius used around a pole
RESIDUE_MAX_POINTS = 1024  # Circle quadrature points before giving up
RESIDUE_TOL = 1e-13
MAX_POLE_ORDER = 4
DEFAULT_NODE_BUDGET = 400_000  # Quadrature nodes allowed per contour
DEFAULT_RIESZ_CAP = 2000  # Conjugate-side terms allowed in a Riesz right side
DEFAULT_SERIES_CAP = 10_000  # Terms allowed in a kernel sum
DEFAULT_KERNEL_TOL = 1e-14  # Absolute kernel accuracy at x = 1
ASYMPTOTIC_THRESHOLD = 10.0  # Smallest x accepted by the I_rho expansion

NODE_BUDGET_ENV = "VLAB_NODE_BUDGET"
RIESZ_CAP_ENV = "VLAB_RIESZ_CAP"


@lru_cache(maxsize=1)
def _load_environment() -> bool:
    """Loads a .env file once per process. Returns True if one was found."""
    return load_dotenv()


def _int_from_env(name: str, default: int) -> int:
    _load_environment()
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e
    if value <= 0:
        raise ConfigurationError(f"{name} must be positive, got {value}")
    return value


def get_node_budget() -> int:
    """
    Returns the global cap on quadrature nodes per contour.

    Returns:
        int: VLAB_NODE_BUDGET if set (a .env file is honoured), otherwise DEFAULT_NODE_BUDGET.

    Raises:
        ConfigurationError: If the environment value is not a positive integer.
    """
    return _int_from_env(NODE_BUDGET_ENV, DEFAULT_NODE_BUDGET)


def get_riesz_cap() -> int:
    """Returns the cap on conjugate-side terms in a Riesz right side."""
    return _int_from_env(RIESZ_CAP_ENV, DEFAULT_RIESZ_CAP)


# Run configuration

PointValue = Union[float, Tuple[float, float], str]


class PoleConfig(BaseModel):
    location: Union[float, Tuple[float, float]]
    order: int = Field(default=1, ge=1)


class ZeroLadderConfig(BaseModel):
    start: float
    step: float = -2.0
    order: int = Field(default=1, ge=1)


class CustomSeriesConfig(BaseModel):
    """Inline series descriptor. Coefficients come from explicit arrays or a named generator."""

    alphas: List[float] = Field(min_length=1)
    betas: List[Union[float, Tuple[float, float]]] = Field(min_length=1)
    delta: float = Field(gt=0)
    bigQ: float = Field(gt=0)
    omega: Tuple[float, float] = (1.0, 0.0)
    sigma_a: float
    sigma_b: float
    poles: List[PoleConfig]
    zeros: List[ZeroLadderConfig] = Field(default_factory=list)
    generator: Optional[str] = None
    a_coeffs: Optional[List[float]] = None
    b_coeffs: Optional[List[float]] = None
    lambdas: Optional[List[float]] = None
    mus: Optional[List[float]] = None
    strict: bool = True

    @model_validator(mode="after")
    def _check_source(self) -> "CustomSeriesConfig":
        if len(self.alphas) != len(self.betas):
            raise ValueError("alphas and betas must have the same length")
        if self.generator is None and self.a_coeffs is None:
            raise ValueError("custom series need either a generator name or explicit a_coeffs")
        return self


class ContourOverrides(BaseModel):
    t_max: Optional[float] = Field(default=None, gt=0)
    panels: Optional[int] = Field(default=None, ge=1)
    nodes_per_panel: int = Field(default=20, ge=2)


class OutputConfig(BaseModel):
    format: Literal["json", "csv"] = "json"
    path: Optional[str] = None


class RunConfig(BaseModel):
    """Validated run configuration."""

    preset: Optional[str] = None
    preset_params: Dict[str, float] = Field(default_factory=dict)
    custom: Optional[CustomSeriesConfig] = None
    identity: Literal["modular", "aux", "riesz", "fe", "reconstruct", "perron", "kernel", "asympt"]
    points: List[PointValue] = Field(min_length=1)
    rho: Optional[float] = Field(default=None, ge=0)
    a: Optional[float] = Field(default=None, gt=0)
    m: int = Field(default=0, ge=0)
    tol: Optional[float] = Field(default=None, gt=0)
    relative: Optional[bool] = None
    n_terms: Optional[int] = Field(default=None, ge=1)
    contour: Optional[ContourOverrides] = None
    kernel: Optional[Dict[str, Union[float, str, List[Union[float, str]]]]] = None
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _check_series(self) -> "RunConfig":
        if self.identity != "kernel" and (self.preset is None) == (self.custom is None):
            raise ValueError("exactly one of 'preset' and 'custom' must be given")
        return self

    @field_validator("points")
    @classmethod
    def _check_points(cls, points: List[PointValue]) -> List[PointValue]:
        for point in points:
            if isinstance(point, str):
                try:
                    complex(point.replace(" ", ""))
                except ValueError as e:
                    raise ValueError(f"cannot parse point {point!r}") from e
        return points


def parse_point(point: PointValue) -> complex:
    """Converts a configured evaluation point to a complex number."""
    if isinstance(point, str):
        return complex(point.replace(" ", ""))
    if isinstance(point, (tuple, list)):
        return complex(point[0], point[1])
    return complex(point)


def load_run_config(config_path: str) -> RunConfig:
    """
    Loads and validates a run configuration file.

    Args:
        config_path (str): Path to the JSON configuration.

    Returns:
        RunConfig: The validated configuration.

    Raises:
        FileNotFoundError: If the file doesn't exist.
        ConfigurationError: If the file is malformed or fails validation.
    """
    if not os.path.isfile(config_path):
        raise FileNotFoundError(f"Run configuration file does not exist: {config_path}")

    with open(config_path, "r", encoding="utf-8") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Run configuration is not valid JSON: {e}") from e

    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid run configuration {config_path}: {e}") from e

    logger.debug("Loaded run configuration %s (identity=%s)", config_path, config.identity)
    return config
