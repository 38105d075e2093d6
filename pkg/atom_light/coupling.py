# atom_light/coupling.py
"""
Two-level atom in the spiral mask: Rabi frequencies and the optical dipole
potential U = -2 hbar |Omega|^2 / Delta.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from ..common.errors import ParameterError
from ..common.grid import ComplexField2D, GridSpec, grid_coordinates
from ..optics.beams import ThinLens, laguerre_gauss_profile, spiral_phase

logger = logging.getLogger(__name__)

MODULE = "atom_light"
WEAK_SATURATION_LIMIT = 0.5


@dataclass(frozen=True)
class TwoLevelAtom:
    lambda0: float
    gamma: float
    mass: float
    saturation_intensity: float

    def __post_init__(self) -> None:
        for name in ("lambda0", "gamma", "mass", "saturation_intensity"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(MODULE, f"{name} must be > 0, got {value!r}")

    @property
    def omega0(self) -> float:
        """Transition angular frequency 2*pi*c/lambda0 (rad/s)."""
        return 2.0 * math.pi * constants.c / self.lambda0


@dataclass(frozen=True)
class RabiConfig:
    """Peak Rabi frequencies and detuning in rad/s, plus the mask geometry."""

    omega_g0: float
    omega_gl0: float
    detuning: float
    ell: int
    p: int
    w0: float
    lens: ThinLens
    wavelength: float

    def __post_init__(self) -> None:
        if self.detuning == 0 or not math.isfinite(self.detuning):
            raise ParameterError(MODULE, "detuning must be finite and non-zero")
        if self.p < 0:
            raise ParameterError(MODULE, f"radial index p must be >= 0, got {self.p}")
        for name in ("w0", "wavelength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(MODULE, f"{name} must be > 0, got {value!r}")
        ratio = self.saturation_ratio
        if ratio > WEAK_SATURATION_LIMIT:
            logger.warning(
                f"|Omega|/Delta up to {ratio:.3g} exceeds {WEAK_SATURATION_LIMIT}; "
                "the weak-saturation dipole potential is not reliable"
            )

    @classmethod
    def from_gamma_units(
        cls,
        gamma: float,
        omega_g0: float,
        omega_gl0: float,
        detuning: float,
        ell: int,
        p: int,
        w0: float,
        lens: ThinLens,
        wavelength: float,
    ) -> "RabiConfig":
        return cls(
            omega_g0=omega_g0 * gamma,
            omega_gl0=omega_gl0 * gamma,
            detuning=detuning * gamma,
            ell=ell,
            p=p,
            w0=w0,
            lens=lens,
            wavelength=wavelength,
        )

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def a(self) -> float:
        return self.lens.quadratic_coefficient(self.k)

    @property
    def saturation_ratio(self) -> float:
        """Upper bound of |Omega| / |Delta| over the plane."""
        return (abs(self.omega_g0) + abs(self.omega_gl0)) / abs(self.detuning)


def rabi_gaussian(cfg: RabiConfig, r):
    return cfg.omega_g0 * np.exp(-np.asarray(r) ** 2 / cfg.w0 ** 2)


def rabi_lg(cfg: RabiConfig, r):
    return cfg.omega_gl0 * laguerre_gauss_profile(cfg.ell, cfg.p, np.asarray(r) / cfg.w0)


def rabi_sq_total(cfg: RabiConfig, r, phi):
    """|Omega(r, phi)|^2 in (rad/s)^2."""
    omega_g = rabi_gaussian(cfg, r)
    omega_l = rabi_lg(cfg, r)
    cross = 2.0 * omega_g * omega_l * np.cos(spiral_phase(cfg.ell, cfg.k, cfg.lens, r, phi))
    return omega_g ** 2 + omega_l ** 2 + cross


def dipole_potential(cfg: RabiConfig, r, phi):
    """U = -2 hbar |Omega|^2 / Delta in J."""
    return -2.0 * constants.hbar * rabi_sq_total(cfg, r, phi) / cfg.detuning


def potential_field(cfg: RabiConfig, spec: GridSpec) -> ComplexField2D:
    _, _, r, phi = grid_coordinates(spec)
    return ComplexField2D(
        spec,
        dipole_potential(cfg, r, phi),
        quantity="dipole_potential",
        units="J",
        params={
            "omega_g0": cfg.omega_g0,
            "omega_gl0": cfg.omega_gl0,
            "detuning": cfg.detuning,
            "ell": cfg.ell,
            "p": cfg.p,
            "w0": cfg.w0,
        },
    )
