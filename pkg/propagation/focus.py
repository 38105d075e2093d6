# propagation/focus.py
"""Focal-plane search along z for transverse wavefunctions and diffraction orders."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from ..common.errors import FocusNotFoundError, ParameterError
from ..common.grid import ComplexField2D, radial_rms
from .angular_spectrum import MODULE, apodize, check_nyquist, propagate_spectrum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PropagationPlan:
    """Scan n_planes equally spaced planes in [z_start, z_end] with carrier K (1/m)."""

    K: float
    z_start: float
    z_end: float
    n_planes: int = 64
    apodization_margin: float = 0.1

    def __post_init__(self) -> None:
        if not (math.isfinite(self.K) and self.K > 0):
            raise ParameterError(MODULE, f"carrier wavenumber K must be > 0, got {self.K!r}")
        if not (math.isfinite(self.z_start) and math.isfinite(self.z_end) and self.z_end > self.z_start):
            raise ParameterError(MODULE, f"need z_end > z_start, got [{self.z_start!r}, {self.z_end!r}]")
        if self.n_planes < 2:
            raise ParameterError(MODULE, f"n_planes must be >= 2, got {self.n_planes}")
        if not 0.0 <= self.apodization_margin < 0.5:
            raise ParameterError(MODULE, f"apodization margin must lie in [0, 0.5), got {self.apodization_margin!r}")

    @property
    def planes(self) -> np.ndarray:
        return np.linspace(self.z_start, self.z_end, self.n_planes)

    @property
    def tolerance(self) -> float:
        return 1e-4 * (self.z_end - self.z_start)

    @classmethod
    def around(cls, K: float, z_expected: float, start_fraction: float, end_fraction: float, n_planes: int, margin: float):
        """Plan bracketing a predicted focus by fractions of it."""
        return cls(K, start_fraction * z_expected, end_fraction * z_expected, n_planes, margin)


@dataclass(frozen=True, eq=False)
class FocusResult:
    z_focus: float
    rms_radius: float
    scan_z: np.ndarray
    scan_rms: np.ndarray


def predicted_focus(K: float, k_optical: float, f: float, m: int) -> float:
    """Geometric focus of an order with phase -m a r^2, a = k/2f: z = K f / (m k)."""
    if m <= 0:
        raise ParameterError(MODULE, f"order m={m} carries a diverging phase and has no real focus")
    return K * f / (m * k_optical)


def find_focus(psi: ComplexField2D, plan: PropagationPlan) -> FocusResult:
    """Minimize the intensity-weighted RMS radius along z."""
    windowed = apodize(psi, plan.apodization_margin)
    check_nyquist(windowed)
    spectrum = np.fft.fft2(windowed.values)

    def rms_at(z: float) -> float:
        return radial_rms(windowed.with_values(propagate_spectrum(spectrum, psi.spec, plan.K, z)))

    scan_z = plan.planes
    scan_rms = np.array([rms_at(float(z)) for z in scan_z])
    i = int(np.argmin(scan_rms))
    if i == 0 or i == scan_z.size - 1:
        trend = "growth" if i == 0 else "decrease"
        raise FocusNotFoundError(
            f"RMS radius is monotone in range [{plan.z_start:.6g}, {plan.z_end:.6g}] m ({trend})"
        )

    result = optimize.minimize_scalar(
        rms_at,
        bounds=(float(scan_z[i - 1]), float(scan_z[i + 1])),
        method="bounded",
        options={"xatol": plan.tolerance},
    )
    z_focus, rms = float(result.x), float(result.fun)
    if scan_rms[i] < rms:
        z_focus, rms = float(scan_z[i]), float(scan_rms[i])
    logger.info(f"focus at z={z_focus:.6g} m, RMS radius {rms:.6g} m")
    return FocusResult(z_focus=z_focus, rms_radius=rms, scan_z=scan_z, scan_rms=scan_rms)


@dataclass(frozen=True)
class OrderFocus:
    """Measured focus of one order next to the two closed-form readings."""

    m: int
    measured: float | None
    geometric: float | None
    m_times_f: float
    rms_radius: float | None

    @property
    def deviation(self) -> float | None:
        if self.measured is None or self.geometric is None:
            return None
        return self.measured / self.geometric - 1.0

    def row(self) -> str:
        def fmt(value: float | None) -> str:
            return "-" if value is None else f"{value:.6g}"

        deviation = "-" if self.deviation is None else f"{self.deviation:+.3%}"
        return (
            f"{self.m:>4d}  {fmt(self.measured):>14}  {fmt(self.geometric):>14}  "
            f"{fmt(self.m_times_f):>14}  {deviation:>10}  {fmt(self.rms_radius):>14}"
        )


SCAN_HEADER = (
    f"{'m':>4}  {'measured [m]':>14}  {'K f/(m k) [m]':>14}  {'m f K/k [m]':>14}  "
    f"{'deviation':>10}  {'rms [m]':>14}"
)


def scan_order(
    field: ComplexField2D,
    m: int,
    K: float,
    k_optical: float,
    f: float,
    start_fraction: float,
    end_fraction: float,
    n_planes: int,
    margin: float,
) -> OrderFocus:
    """Focus scan of one order bracketed around |m|'s geometric focus."""
    reference = predicted_focus(K, k_optical, f, abs(m))
    geometric = reference if m > 0 else None
    plan = PropagationPlan.around(K, reference, start_fraction, end_fraction, n_planes, margin)
    try:
        focus = find_focus(field, plan)
    except FocusNotFoundError as exc:
        logger.info(f"order m={m}: {exc}")
        return OrderFocus(m, None, geometric, m * f * K / k_optical, None)
    return OrderFocus(m, focus.z_focus, geometric, m * f * K / k_optical, focus.rms_radius)
