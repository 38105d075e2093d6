# optics/mask.py
"""The spiral light mask: an LG beam interfering with a lensed Gaussian."""

from __future__ import annotations

import logging
import math

import numpy as np

from ..common.errors import ParameterError
from ..common.grid import ComplexField2D, GridSpec, grid_coordinates, ring_samples
from .beams import (
    MODULE,
    GaussianBeamParams,
    LGBeamParams,
    ThinLens,
    gaussian_field,
    intensity_from_field,
    lensed_gaussian,
    lg_envelope,
    lg_field,
)

logger = logging.getLogger(__name__)


def _check_common_frequency(lg: LGBeamParams, g: GaussianBeamParams) -> None:
    if not math.isclose(lg.wavelength, g.wavelength, rel_tol=1e-12, abs_tol=0.0):
        raise ParameterError(
            MODULE,
            f"LG and Gaussian wavelengths differ ({lg.wavelength:.9g} m vs {g.wavelength:.9g} m); "
            "the mask needs a common frequency",
        )


def _echo(lg: LGBeamParams, g: GaussianBeamParams, lens: ThinLens, z: float) -> dict:
    return {
        "ell": lg.ell,
        "p": lg.p,
        "w0": lg.w0,
        "wavelength": lg.wavelength,
        "E_GL0": lg.field_amplitude,
        "E_G0": g.field_amplitude,
        "lens_n": lens.n,
        "lens_d": lens.d,
        "lens_f": lens.f,
        "z": z,
    }


def mask_field(lg: LGBeamParams, g: GaussianBeamParams, lens: ThinLens, spec: GridSpec, z: float = 0.0) -> ComplexField2D:
    """Transverse mask field (V/m), the LG beam plus the lensed Gaussian."""
    _check_common_frequency(lg, g)
    _, _, r, phi = grid_coordinates(spec)
    values = lg_field(lg, r, phi, z) + lensed_gaussian(g, lens, r, z)
    return ComplexField2D(spec, values, quantity="mask_field", units="V/m", params=_echo(lg, g, lens, z))


def _as_intensity(field_sq: np.ndarray, in_saturation_units: bool, saturation_intensity: float | None):
    intensity = intensity_from_field(field_sq)
    if not in_saturation_units:
        return intensity, "W/m^2"
    if saturation_intensity is None or not saturation_intensity > 0:
        raise ParameterError(MODULE, f"saturation intensity must be > 0, got {saturation_intensity!r}")
    return intensity / saturation_intensity, "I_S"


def mask_intensity(
    lg: LGBeamParams,
    g: GaussianBeamParams,
    lens: ThinLens,
    spec: GridSpec,
    z: float = 0.0,
    in_saturation_units: bool = False,
    saturation_intensity: float | None = None,
) -> ComplexField2D:
    """(c eps0 / 2)|E|^2 of the summed complex field, optionally in units of I_S."""
    field = mask_field(lg, g, lens, spec, z)
    values, units = _as_intensity(np.abs(field.values) ** 2, in_saturation_units, saturation_intensity)
    params = dict(field.params, I_S=saturation_intensity) if in_saturation_units else field.params
    return ComplexField2D(spec, values, quantity="mask_intensity", units=units, params=params)


def interference_intensity(
    lg: LGBeamParams,
    g: GaussianBeamParams,
    lens: ThinLens,
    spec: GridSpec,
    z: float = 0.0,
    in_saturation_units: bool = False,
    saturation_intensity: float | None = None,
) -> ComplexField2D:
    """Envelope-and-cosine form E_LG^2 + E_G^2 + 2 E_LG E_G cos(...).

    At z = 0 the cosine argument reduces to l*phi + knd - k r^2/2f. Kept as a
    separate code path from mask_intensity so the two can be checked against
    each other.
    """
    _check_common_frequency(lg, g)
    _, _, r, phi = grid_coordinates(spec)
    e_lg = lg_envelope(lg, r, z)
    e_g, _ = gaussian_field(g, r, z)
    gouy = (2 * lg.p + abs(lg.ell)) * math.atan(z / lg.z_r)
    argument = (
        lg.ell * phi
        - gouy
        + lens.reduced_phase_offset(lg.k)
        - lens.quadratic_coefficient(lg.k) * r ** 2
    )
    field_sq = e_lg ** 2 + e_g ** 2 + 2.0 * e_lg * e_g * np.cos(argument)
    values, units = _as_intensity(field_sq, in_saturation_units, saturation_intensity)
    return ComplexField2D(spec, values, quantity="mask_intensity", units=units, params=_echo(lg, g, lens, z))


def spiral_arm_angles(intensity: ComplexField2D, radii, ell: int, n_phi: int = 1024) -> np.ndarray:
    """Angle of the arm maximum at each radius, reduced modulo 2*pi/|l|.

    A ring profile M + 2AB cos(l*phi + c) peaks at phi = -c/l, and c is the
    phase of the profile's l-th azimuthal harmonic.
    """
    if ell == 0:
        raise ParameterError(MODULE, "a mask with l = 0 has no spiral arms")
    if not 2 * abs(ell) < n_phi:
        raise ParameterError(MODULE, f"n_phi={n_phi} cannot resolve harmonic {ell}")
    profiles = ring_samples(intensity, radii, n_phi, method="linear").real
    harmonic = np.fft.fft(profiles, axis=1)[:, ell]
    angles = -np.angle(harmonic) / ell
    return np.mod(angles, 2.0 * np.pi / abs(ell))
