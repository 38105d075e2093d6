# optics/beams.py
"""
Closed-form paraxial beams: Laguerre-Gaussian and Gaussian fields, the thin
lens, and the power normalization of their amplitudes.

Transverse fields never carry the axial carrier exp(ikz); both beams
co-propagate along +z and the carrier cancels in every intensity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants, integrate
from scipy.special import eval_genlaguerre

from ..common.errors import ParameterError

logger = logging.getLogger(__name__)

MODULE = "optics"
TWO_PI = 2.0 * math.pi


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ParameterError(MODULE, f"{name} must be > 0, got {value!r}")


def _resolve_amplitude(power: float | None, amplitude: float | None) -> None:
    if (power is None) == (amplitude is None):
        raise ParameterError(MODULE, "exactly one of power / amplitude must be set")
    if power is not None and not (math.isfinite(power) and power >= 0):
        raise ParameterError(MODULE, f"power must be >= 0, got {power!r}")
    if amplitude is not None and not math.isfinite(amplitude):
        raise ParameterError(MODULE, f"amplitude must be finite, got {amplitude!r}")


@dataclass(frozen=True)
class LGBeamParams:
    ell: int
    p: int
    w0: float
    wavelength: float
    power: float | None = None
    amplitude: float | None = None

    def __post_init__(self) -> None:
        _require_positive("w0", self.w0)
        _require_positive("wavelength", self.wavelength)
        if self.p < 0:
            raise ParameterError(MODULE, f"radial index p must be >= 0, got {self.p}")
        _resolve_amplitude(self.power, self.amplitude)

    @property
    def k(self) -> float:
        return TWO_PI / self.wavelength

    @property
    def z_r(self) -> float:
        return rayleigh_range(self.w0, self.wavelength)

    @property
    def field_amplitude(self) -> float:
        """E_GL,0 in V/m."""
        if self.amplitude is not None:
            return self.amplitude
        return amplitude_from_power(self.power, self)


@dataclass(frozen=True)
class GaussianBeamParams:
    w0: float
    wavelength: float
    power: float | None = None
    amplitude: float | None = None

    def __post_init__(self) -> None:
        _require_positive("w0", self.w0)
        _require_positive("wavelength", self.wavelength)
        _resolve_amplitude(self.power, self.amplitude)

    @property
    def k(self) -> float:
        return TWO_PI / self.wavelength

    @property
    def z_r(self) -> float:
        return rayleigh_range(self.w0, self.wavelength)

    @property
    def field_amplitude(self) -> float:
        """E_G,0 in V/m."""
        if self.amplitude is not None:
            return self.amplitude
        return amplitude_from_power(self.power, self)


@dataclass(frozen=True)
class ThinLens:
    n: float
    d: float
    f: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.n) and self.n > 1):
            raise ParameterError(MODULE, f"lens refractive index must be > 1, got {self.n!r}")
        _require_positive("lens width d", self.d)
        if self.f == 0 or math.isnan(self.f):
            raise ParameterError(MODULE, "lens focal length must be non-zero")

    def phase_offset(self, k: float) -> float:
        """k*n*d at full precision (about 1.28e5 rad for the default 8 mm lens)."""
        return k * self.n * self.d

    def reduced_phase_offset(self, k: float) -> float:
        return math.fmod(self.phase_offset(k), TWO_PI)

    def quadratic_coefficient(self, k: float) -> float:
        """a = k / 2f (1/m^2); zero for an infinitely long focal length."""
        return 0.0 if math.isinf(self.f) else k / (2.0 * self.f)


def rayleigh_range(w0: float, wavelength: float) -> float:
    return math.pi * w0 ** 2 / wavelength


def beam_width(w0: float, wavelength: float, z: float) -> float:
    return w0 * math.sqrt(1.0 + (z / rayleigh_range(w0, wavelength)) ** 2)


def laguerre_gauss_profile(ell: int, p: int, rho):
    """sqrt(p!/(p+|l|)!) (sqrt2 rho)^|l| exp(-rho^2) L_p^|l|(2 rho^2), rho = r / w."""
    rho = np.asarray(rho, dtype=np.float64)
    order = abs(ell)
    norm = math.sqrt(math.factorial(p) / math.factorial(p + order))
    return (
        norm
        * (math.sqrt(2.0) * rho) ** order
        * np.exp(-rho ** 2)
        * eval_genlaguerre(p, order, 2.0 * rho ** 2)
    )


def lg_envelope(params: LGBeamParams, r, z: float = 0.0):
    """Real LG amplitude E_|l|,p(r, z) in V/m, including the leading 1/2."""
    width = beam_width(params.w0, params.wavelength, z)
    scale = 1.0 / math.sqrt(1.0 + (z / params.z_r) ** 2)
    return 0.5 * params.field_amplitude * scale * laguerre_gauss_profile(params.ell, params.p, np.asarray(r) / width)


def _curvature_phase(k: float, z_r: float, r, z: float):
    return k * z * np.asarray(r) ** 2 / (2.0 * (z ** 2 + z_r ** 2))


def lg_phase(params: LGBeamParams, r, phi, z: float = 0.0):
    gouy = (2 * params.p + abs(params.ell) + 1) * math.atan(z / params.z_r)
    return params.ell * np.asarray(phi) - gouy + _curvature_phase(params.k, params.z_r, r, z)


def lg_field(params: LGBeamParams, r, phi, z: float = 0.0):
    return lg_envelope(params, r, z) * np.exp(1j * lg_phase(params, r, phi, z))


def gaussian_field(params: GaussianBeamParams, r, z: float = 0.0):
    """Return (amplitude in V/m, phase in rad) of the reference Gaussian beam."""
    width = beam_width(params.w0, params.wavelength, z)
    scale = 1.0 / math.sqrt(1.0 + (z / params.z_r) ** 2)
    r = np.asarray(r)
    amplitude = 0.5 * params.field_amplitude * scale * np.exp(-r ** 2 / width ** 2)
    phase = _curvature_phase(params.k, params.z_r, r, z) - math.atan(z / params.z_r)
    return amplitude, phase


def lensed_gaussian(params: GaussianBeamParams, lens: ThinLens, r, z: float = 0.0):
    """Gaussian field after the thin lens: E_G exp(-iknd) exp(ikr^2/2f) exp(i Theta_G)."""
    amplitude, phase = gaussian_field(params, r, z)
    lens_phase = -lens.reduced_phase_offset(params.k) + lens.quadratic_coefficient(params.k) * np.asarray(r) ** 2
    return amplitude * np.exp(1j * (phase + lens_phase))


def spiral_phase(ell: int, k: float, lens: ThinLens, r, phi):
    """l*phi + knd - k r^2/2f, the argument of the LG/Gaussian cross term at z = 0."""
    return ell * np.asarray(phi) + lens.reduced_phase_offset(k) - lens.quadratic_coefficient(k) * np.asarray(r) ** 2


def intensity_from_field(field_sq):
    """I = (c eps0 / 2) |E|^2 for a field that already carries the 1/2 factors."""
    return 0.5 * constants.c * constants.epsilon_0 * field_sq


def _unit_amplitude_power(beam: LGBeamParams | GaussianBeamParams) -> float:
    if isinstance(beam, LGBeamParams):
        ell, p = beam.ell, beam.p
    else:
        ell, p = 0, 0

    def integrand(r: float) -> float:
        envelope = 0.5 * laguerre_gauss_profile(ell, p, r / beam.w0)
        return float(intensity_from_field(envelope ** 2)) * TWO_PI * r

    upper = beam.w0 * (6.0 + math.sqrt(abs(ell) + 2 * p + 1.0))
    power, _ = integrate.quad(integrand, 0.0, upper, epsabs=0.0, epsrel=1e-12, limit=200)
    return power


def beam_power(beam: LGBeamParams | GaussianBeamParams) -> float:
    """Plane-integrated intensity at z = 0 by radial quadrature (W)."""
    return _unit_amplitude_power(beam) * beam.field_amplitude ** 2


def amplitude_from_power(power: float, beam: LGBeamParams | GaussianBeamParams, method: str = "analytic") -> float:
    """E0 such that the z = 0 plane integral of (c eps0/2)|E|^2 equals power.

    The sqrt(p!/(p+|l|)!) factor makes the integral mode-independent, so the
    Gaussian closed form E0 = 4 sqrt(P / (pi w0^2 c eps0)) holds for every LG.
    """
    if not (math.isfinite(power) and power >= 0):
        raise ParameterError(MODULE, f"power must be >= 0, got {power!r}")
    if method == "analytic":
        return 4.0 * math.sqrt(power / (math.pi * beam.w0 ** 2 * constants.c * constants.epsilon_0))
    if method == "quadrature":
        return math.sqrt(power / _unit_amplitude_power(beam))
    raise ParameterError(MODULE, f"unknown normalization method {method!r}")
