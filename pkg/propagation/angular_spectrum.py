# propagation/angular_spectrum.py
"""
Paraxial free-space propagation of a transverse wavefunction.

One step multiplies the 2-D spectrum by exp(-i (kx^2 + ky^2) dz / 2K) and
transforms back, so the propagator is unitary on the grid.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..common.errors import NyquistError, ParameterError
from ..common.grid import ComplexField2D, GridSpec

logger = logging.getLogger(__name__)

MODULE = "propagation"
NYQUIST_BAND = 0.9
NYQUIST_TOLERANCE = 1e-6


def spatial_frequencies(spec: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """kx, ky (rad/m) in FFT order, shaped (ny, nx)."""
    kx = 2.0 * np.pi * np.fft.fftfreq(spec.nx, d=spec.dx)
    ky = 2.0 * np.pi * np.fft.fftfreq(spec.ny, d=spec.dy)
    return np.meshgrid(kx, ky)


def nyquist_limits(spec: GridSpec) -> tuple[float, float]:
    return math.pi / spec.dx, math.pi / spec.dy


def nyquist_band_fraction(psi: ComplexField2D, band: float = NYQUIST_BAND) -> float:
    """Share of spectral energy with |kx| or |ky| above `band` times Nyquist."""
    kx, ky = spatial_frequencies(psi.spec)
    nyq_x, nyq_y = nyquist_limits(psi.spec)
    power = np.abs(np.fft.fft2(psi.values)) ** 2
    total = float(np.add.reduce(power.ravel()))
    if total == 0.0:
        return 0.0
    outside = (np.abs(kx) > band * nyq_x) | (np.abs(ky) > band * nyq_y)
    return float(np.add.reduce(power[outside])) / total


def check_nyquist(psi: ComplexField2D, tolerance: float = NYQUIST_TOLERANCE) -> float:
    fraction = nyquist_band_fraction(psi)
    if fraction > tolerance:
        nyq = max(nyquist_limits(psi.spec))
        raise NyquistError(fraction, NYQUIST_BAND * nyq, nyq)
    if fraction > 1e-3 * tolerance:
        logger.warning(f"spectral energy near Nyquist is {fraction:.2e}; consider a finer grid")
    return fraction


def _check_step(K: float, dz: float) -> None:
    if not (math.isfinite(K) and K > 0):
        raise ParameterError(MODULE, f"carrier wavenumber K must be > 0, got {K!r}")
    if not math.isfinite(dz):
        raise ParameterError(MODULE, f"propagation distance must be finite, got {dz!r}")


def fresnel_kernel(spec: GridSpec, K: float, dz: float) -> np.ndarray:
    kx, ky = spatial_frequencies(spec)
    return np.exp(-1j * (kx ** 2 + ky ** 2) * dz / (2.0 * K))


def propagate_spectrum(spectrum: np.ndarray, spec: GridSpec, K: float, dz: float) -> np.ndarray:
    """Propagate an already transformed field; returns real-space samples."""
    return np.fft.ifft2(spectrum * fresnel_kernel(spec, K, dz))


def propagate(psi: ComplexField2D, K: float, dz: float, check: bool = True) -> ComplexField2D:
    _check_step(K, dz)
    if check:
        check_nyquist(psi)
    if dz == 0:
        return psi.with_values(psi.values)
    values = propagate_spectrum(np.fft.fft2(psi.values), psi.spec, K, dz)
    propagated = psi.with_values(values)
    propagated.params["dz"] = psi.params.get("dz", 0.0) + dz
    return propagated


def apodization_window(spec: GridSpec, margin: float) -> np.ndarray:
    """Separable raised-cosine window falling to zero over the outer `margin` of each axis."""
    if not 0.0 <= margin < 0.5:
        raise ParameterError(MODULE, f"apodization margin must lie in [0, 0.5), got {margin!r}")

    def axis_window(axis: np.ndarray, half: float) -> np.ndarray:
        if margin == 0.0:
            return np.ones_like(axis)
        inner = (1.0 - margin) * half
        t = np.clip((np.abs(axis) - inner) / (margin * half), 0.0, 1.0)
        return 0.5 * (1.0 + np.cos(np.pi * t))

    wx = axis_window(spec.x_axis(), spec.half_extent_x)
    wy = axis_window(spec.y_axis(), spec.half_extent_y)
    return np.outer(wy, wx)


def apodize(psi: ComplexField2D, margin: float = 0.1) -> ComplexField2D:
    return psi.with_values(psi.values * apodization_window(psi.spec, margin))
