"""
poles.py
########

Pole and zero declarations for Dirichlet series continuations and Gamma blocks.
"""

# Imports
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .config import POLE_GUARD_RADIUS


class PoleSource(Enum):
    """Where a pole of a residual integrand comes from."""

    GAMMA_FACTOR = "gamma_factor"  # -(beta_i + k) / alpha_i
    SERIES_DECLARED = "series_declared"  # declared pole of the continuation
    EXTRA_GAMMA = "extra_gamma"  # Gamma(s) ladder at s = -k
    MERGED = "merged"  # several sources at one location


@dataclass(frozen=True)
class PoleSpec:
    """
    A pole of a meromorphic integrand.

    `factor` and `k` identify gamma_factor(i, k) and extra_gamma(k) sources.
    """

    location: complex
    order: int = 1
    source: PoleSource = PoleSource.SERIES_DECLARED
    factor: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "location", complex(self.location))
        if self.order < 1:
            raise ValueError(f"pole order must be a positive integer, got {self.order}")

    def describe(self) -> str:
        if self.source is PoleSource.GAMMA_FACTOR:
            tag = f"gamma_factor({self.factor},{self.k})"
        elif self.source is PoleSource.EXTRA_GAMMA:
            tag = f"extra_gamma({self.k})"
        else:
            tag = self.source.value
        return f"{_format_location(self.location)} (order {self.order}, {tag})"


@dataclass(frozen=True)
class ZeroLadder:
    """
    Zeros of a continuation at start, start + step, start + 2 step, ... each of the same order.

    The trivial zeros of zeta are ZeroLadder(-2, -2). A finite ladder sets count.
    """

    start: complex
    step: float = -2.0
    order: int = 1
    count: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", complex(self.start))
        if self.step == 0.0:
            raise ValueError("zero ladder step must be non-zero")
        if self.order < 1:
            raise ValueError(f"zero order must be a positive integer, got {self.order}")

    def order_at(self, s: complex, guard: float = POLE_GUARD_RADIUS) -> int:
        """Order of the declared zero at s, or 0 when s is not on the ladder."""
        j = (complex(s) - self.start) / self.step
        index = round(j.real)
        if index < 0 or (self.count is not None and index >= self.count):
            return 0
        if abs(self.start + index * self.step - complex(s)) > guard:
            return 0
        return self.order


def _format_location(z: complex) -> str:
    if z.imag == 0.0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


def zero_order(ladders: Tuple[ZeroLadder, ...], s: complex) -> int:
    """Total declared zero order at s over several ladders."""
    return sum(ladder.order_at(s) for ladder in ladders)
