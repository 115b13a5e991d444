"""
RunManager.py
#############

This module provides the RunManager class, which carries out a validated RunConfig: it resolves the
series (catalog preset or inline custom data), evaluates the requested identity or value table at
every configured point and hands the results to a ReportManager.
"""

# Imports
import dataclasses
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.catalog import SeriesPreset, custom_series, preset
from ..core.config import DEFAULT_KERNEL_TOL, RunConfig, parse_point
from ..core.errors import ConfigurationError
from ..core.functional import FunctionalEquationData
from ..core.gamma import GammaSignature
from ..core.identities import (
    aux_modular_report,
    functional_equation_report,
    modular_report,
    reconstruction_report,
)
from ..core.kernels import ContourSpec, KernelKind, choose_truncation, default_kernel_line, eval_kernel_array
from ..core.residues import default_line
from ..core.riesz import perron_report, riesz_report
from ..core.rho_integral import (
    asymptotic_constants,
    asymptotic_error_envelope,
    calibrate_asymptotic_coefficients,
    i_rho_asymptotic,
    i_rho_values,
)
from .ReportManager import ReportManager

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES: Dict[str, float] = {
    "modular": 1e-8,
    "aux": 1e-7,
    "riesz": 1e-6,
    "fe": 1e-6,
    "reconstruct": 1e-6,
    "perron": 1e-6,
    "kernel": DEFAULT_KERNEL_TOL,
}
DEFAULT_RHO = 1.0


class RunManager:
    """
    RunManager evaluates one run configuration.

    Identities produce IdentityReports:
    - modular, aux: modular relations with the Z/Y and Y/X kernels
    - riesz, perron: Riesz sums against the kernel side or Perron's integral
    - fe, reconstruct: the completed function rebuilt from modular data

    Kernel and asympt runs produce value tables instead.
    """

    def __init__(self, config: RunConfig):
        """
        Initialize the RunManager and resolve the configured series.

        Args:
            config (RunConfig): A validated run configuration.

        Raises:
            ValueError: If the preset name or its parameters are unknown.
            ConfigurationError: If the inline series is inconsistent.
        """
        self.config = config
        self.preset: Optional[SeriesPreset] = None
        self.fe: Optional[FunctionalEquationData] = None

        if config.preset is not None:
            self.preset = preset(config.preset, **config.preset_params)
            self.fe = self.preset.fe
        elif config.custom is not None:
            self.fe = custom_series(config.custom)

        self._handlers: Dict[str, Callable[[ReportManager], None]] = {
            "modular": self._run_modular,
            "aux": self._run_aux,
            "riesz": self._run_riesz,
            "perron": self._run_perron,
            "fe": self._run_functional_equation,
            "reconstruct": self._run_reconstruction,
            "kernel": self._run_kernel,
            "asympt": self._run_asymptotic,
        }

    # Settings with preset-aware defaults

    @property
    def series(self) -> FunctionalEquationData:
        if self.fe is None:
            raise ConfigurationError(f"identity {self.config.identity!r} needs a preset or custom series")
        return self.fe

    @property
    def tol(self) -> float:
        if self.config.tol is not None:
            return self.config.tol
        point = self.preset.riesz_point if self.preset is not None else None
        if self.config.identity == "riesz" and point is not None:
            return point.tol
        return DEFAULT_TOLERANCES.get(self.config.identity, 1e-6)

    @property
    def relative(self) -> bool:
        if self.config.relative is not None:
            return self.config.relative
        point = self.preset.riesz_point if self.preset is not None else None
        if self.config.identity == "riesz" and point is not None:
            return point.relative
        return self.config.identity in ("fe", "reconstruct")

    @property
    def rho(self) -> float:
        if self.config.rho is not None:
            return self.config.rho
        point = self.preset.riesz_point if self.preset is not None else None
        if self.config.identity == "riesz" and point is not None:
            return point.rho
        return DEFAULT_RHO

    def real_points(self) -> List[float]:
        """The configured points as positive reals."""
        points = []
        for raw in self.config.points:
            value = parse_point(raw)
            if value.imag != 0.0 or not value.real > 0.0:
                raise ConfigurationError(f"identity {self.config.identity!r} needs positive real points, got {raw!r}")
            points.append(value.real)
        return points

    def complex_points(self) -> List[complex]:
        return [parse_point(raw) for raw in self.config.points]

    # Execution

    def run(self, report_manager: Optional[ReportManager] = None) -> ReportManager:
        """
        Evaluates every configured point.

        Args:
            report_manager (Optional[ReportManager]): Collector to fill; one is created from the
                configured output settings if omitted.

        Returns:
            ReportManager: The collector holding all reports and rows.
        """
        if report_manager is None:
            report_manager = ReportManager(self.config.output.format, self.config.output.path)
        handler = self._handlers[self.config.identity]
        logger.info("running %s on %d point(s)", self.config.identity, len(self.config.points))
        handler(report_manager)
        return report_manager

    def _run_modular(self, reports: ReportManager) -> None:
        for x in self.real_points():
            reports.add_report(modular_report(self.series, x, self.tol, self.relative))

    def _run_aux(self, reports: ReportManager) -> None:
        for x in self.real_points():
            reports.add_report(aux_modular_report(self.series, x, self.tol, self.config.a, self.relative))

    def _run_riesz(self, reports: ReportManager) -> None:
        for x in self.real_points():
            reports.add_report(
                riesz_report(self.series, x, self.rho, self.config.a, self.tol, self.relative, self.config.n_terms)
            )

    def _run_perron(self, reports: ReportManager) -> None:
        for x in self.real_points():
            reports.add_report(perron_report(self.series, x, self.rho, self.tol, self.config.a))

    def _run_functional_equation(self, reports: ReportManager) -> None:
        for s in self.complex_points():
            reports.add_report(functional_equation_report(self.series, s, self.tol, self.relative))

    def _run_reconstruction(self, reports: ReportManager) -> None:
        for s in self.complex_points():
            reports.add_report(reconstruction_report(self.series, s, self.tol))

    # Value tables

    def kernel_setup(self) -> Tuple[KernelKind, GammaSignature]:
        """
        The kernel kind and signature: explicit kernel settings first, the preset's block otherwise.

        Returns:
            (KernelKind, GammaSignature)
        """
        settings: Dict[str, Any] = dict(self.config.kernel or {})
        name = str(settings.get("kind", "Z"))
        if "alphas" in settings:
            alphas = [parse_point(v).real for v in _as_list(settings["alphas"])]
            betas = [parse_point(v) for v in _as_list(settings.get("betas", [0.0] * len(alphas)))]
            sig = GammaSignature.of(alphas, betas)
            delta = settings.get("delta")
        else:
            sig = self.series.sig
            delta = settings.get("delta", self.series.delta)
        kind = KernelKind.of(name, float(delta) if delta is not None and name.upper() == "X" else None)
        return kind, sig

    def kernel_contour(self, kind: KernelKind, sig: GammaSignature, xs: List[float]) -> Optional[ContourSpec]:
        """A contour when a line or layout override is configured, else None for the cached default."""
        settings = self.config.kernel or {}
        a = settings.get("a", self.config.a)
        overrides = self.config.contour
        if a is None and overrides is None and self.config.tol is None:
            return None
        line = float(a) if a is not None else default_kernel_line(kind, sig)
        contour = choose_truncation(sig, kind, line, self.tol, x_range=(min(xs), max(xs)),
                                    nodes_per_panel=overrides.nodes_per_panel if overrides else 20)
        if overrides is not None:
            changes: Dict[str, Any] = {}
            if overrides.t_max is not None:
                changes["t_max"] = overrides.t_max
            if overrides.panels is not None:
                changes["panels"] = overrides.panels
            contour = dataclasses.replace(contour, **changes)
        return contour

    def _run_kernel(self, reports: ReportManager) -> None:
        xs = self.real_points()
        kind, sig = self.kernel_setup()
        values, errors = eval_kernel_array(kind, sig, xs, self.kernel_contour(kind, sig, xs))
        for x, value, error in zip(xs, values, errors):
            reports.add_row({
                "kind": str(kind),
                "x": x,
                "value_re": float(value.real),
                "value_im": float(value.imag),
                "error": float(error),
            })

    def _run_asymptotic(self, reports: ReportManager) -> None:
        fe = self.series
        xs = self.real_points()
        rho, m = self.rho, self.config.m
        a = default_line(fe) if self.config.a is None else self.config.a
        values, _ = i_rho_values(fe.sig, fe.delta, rho, a, xs)
        for x, value in zip(xs, values):
            expansion = i_rho_asymptotic(fe, rho, x, m, a).value
            quadrature = complex(x ** (rho + fe.delta) * value)
            reports.add_row({
                "x": x,
                "rho": rho,
                "m": m,
                "expansion_re": float(expansion.real),
                "expansion_im": float(expansion.imag),
                "quadrature_re": quadrature.real,
                "quadrature_im": quadrature.imag,
                "abs_error": abs(expansion - quadrature),
                "envelope_error": asymptotic_error_envelope(fe, rho, x, m, a=a),
            })

    def coefficient_table(self) -> List[Dict[str, Any]]:
        """
        A_0 in closed form and the calibrated A_1..A_m, with exponents and phases.

        Raises:
            CalibrationError: If m exceeds the calibrated order.
        """
        fe = self.series
        rho, m = self.rho, self.config.m
        a = default_line(fe) if self.config.a is None else self.config.a
        constants = asymptotic_constants(fe.sig, fe.delta, rho)
        calibration = calibrate_asymptotic_coefficients(fe, float(rho), m, a)
        amplitudes = (constants.amplitude0(),) + calibration.amplitudes
        table = []
        for n, amplitude in enumerate(amplitudes):
            table.append({
                "n": n,
                "amplitude": complex(amplitude),
                "exponent": complex(constants.exponent(n)),
                "phase": complex(constants.phase(n)),
                "source": "closed form" if n == 0 else f"fit (residual {calibration.residual:.2e})",
            })
        return table

    # Catalog views

    @staticmethod
    def describe_preset(name: str, **params: float) -> Dict[str, Any]:
        """
        A plain-data description of a catalog preset for display.

        Raises:
            ValueError: For an unknown preset or parameter.
        """
        entry = preset(name, **params)
        fe = entry.fe
        summary: Dict[str, Any] = {
            "name": entry.name,
            "delta": fe.delta,
            "bigQ": fe.bigQ,
            "omega": fe.omega,
            "alphas": list(fe.sig.alphas),
            "betas": list(fe.sig.betas),
            "sigma_a": fe.sigma_a,
            "sigma_b": fe.sigma_b,
            "lattice": entry.lattice,
            "description": entry.description,
            "poles": [{"location": p.location, "order": p.order} for p in fe.declared_poles],
            "zeros": [{"start": z.start, "step": z.step, "order": z.order} for z in fe.declared_zeros],
            "oracles": [tag.value for tag in entry.oracle_tags],
            "riesz_point": dataclasses.asdict(entry.riesz_point) if entry.riesz_point else None,
            "n_max": fe.series.n_max,
        }
        return summary


def _as_list(value: Any) -> List[Any]:
    if isinstance(value, (list, tuple, np.ndarray)):
        return list(value)
    return [value]
