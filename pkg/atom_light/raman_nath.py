# atom_light/raman_nath.py
"""
Validity report for the thin-mask (Raman-Nath) treatment.

Two criteria are checked:
  (i)  the packet FWHM must exceed the radius of the region where the
       LG/Gaussian interference term is strong;
  (ii) the transverse kinetic energy of the packet must stay below the
       atom-light interaction energy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants, integrate

from ..common.errors import ParameterError
from ..common.grid import GridSpec, grid_coordinates
from ..diffraction.packet import WavePacket
from .coupling import MODULE, RabiConfig, TwoLevelAtom, dipole_potential, rabi_gaussian, rabi_lg

logger = logging.getLogger(__name__)

RADIAL_SAMPLES = 8193
DEFAULT_GRID = 256


@dataclass(frozen=True)
class RamanNathReport:
    sigma: float
    region_radius: float
    region_fraction: float
    region_benchmark: float
    position_std: float
    momentum_spread: float
    kinetic_energy: float
    max_abs_potential: float
    potential_depth: float

    @property
    def region_ok(self) -> bool:
        return self.sigma > self.region_radius

    @property
    def energy_ok(self) -> bool:
        return self.kinetic_energy < self.max_abs_potential

    @property
    def passed(self) -> bool:
        return self.region_ok and self.energy_ok

    def summary(self) -> str:
        def verdict(ok: bool) -> str:
            return "PASS" if ok else "FAIL"

        lines = [
            "Raman-Nath validity report",
            "",
            f"(i)  packet FWHM sigma          : {self.sigma:.6g} m",
            f"     spiral region radius ({self.region_fraction:.0%}) : {self.region_radius:.6g} m",
            f"     0.5*w0 benchmark           : {self.region_benchmark:.6g} m",
            f"     sigma > region radius      : {verdict(self.region_ok)}",
            "",
            f"(ii) position std sigma_x       : {self.position_std:.6g} m",
            f"     momentum spread hbar/2sx   : {self.momentum_spread:.6g} kg m/s",
            f"     transverse kinetic energy  : {self.kinetic_energy:.6g} J",
            f"     max |U| over the grid      : {self.max_abs_potential:.6g} J",
            f"     potential depth max-min    : {self.potential_depth:.6g} J",
            f"     E_kin < max |U|            : {verdict(self.energy_ok)}",
            "",
            f"overall: {verdict(self.passed)}",
        ]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "region_radius": self.region_radius,
            "region_fraction": self.region_fraction,
            "region_benchmark": self.region_benchmark,
            "position_std": self.position_std,
            "momentum_spread": self.momentum_spread,
            "kinetic_energy": self.kinetic_energy,
            "max_abs_potential": self.max_abs_potential,
            "potential_depth": self.potential_depth,
            "region_ok": self.region_ok,
            "energy_ok": self.energy_ok,
        }


def spiral_region_radius(cfg: RabiConfig, fraction: float = 0.95) -> float:
    """Radius enclosing `fraction` of the area-integrated cross term 2|Omega_G Omega_GL|."""
    if not 0.0 < fraction < 1.0:
        raise ParameterError(MODULE, f"region fraction must lie in (0, 1), got {fraction!r}")
    r_max = cfg.w0 * (6.0 + math.sqrt(abs(cfg.ell) + 2 * cfg.p + 1.0))
    r = np.linspace(0.0, r_max, RADIAL_SAMPLES)
    cross = 2.0 * np.abs(rabi_gaussian(cfg, r) * rabi_lg(cfg, r)) * 2.0 * np.pi * r
    cumulative = integrate.cumulative_trapezoid(cross, r, initial=0.0)
    total = cumulative[-1]
    if total == 0.0:
        logger.warning("cross term vanishes everywhere; spiral region radius set to 0")
        return 0.0
    return float(np.interp(fraction * total, cumulative, r))


def default_report_grid(cfg: RabiConfig) -> GridSpec:
    return GridSpec.square(DEFAULT_GRID, 3.0 * cfg.w0)


def raman_nath_report(
    cfg: RabiConfig,
    atom: TwoLevelAtom,
    packet: WavePacket,
    spec: GridSpec | None = None,
    region_fraction: float = 0.95,
) -> RamanNathReport:
    spec = spec or default_report_grid(cfg)
    region = spiral_region_radius(cfg, region_fraction)

    sigma_x = packet.position_std
    delta_p = constants.hbar / (2.0 * sigma_x)
    kinetic = delta_p ** 2 / (2.0 * atom.mass)

    _, _, r, phi = grid_coordinates(spec)
    potential = dipole_potential(cfg, r, phi)
    max_abs = float(np.max(np.abs(potential)))
    depth = float(np.max(potential) - np.min(potential))

    report = RamanNathReport(
        sigma=packet.sigma,
        region_radius=region,
        region_fraction=region_fraction,
        region_benchmark=0.5 * cfg.w0,
        position_std=sigma_x,
        momentum_spread=delta_p,
        kinetic_energy=kinetic,
        max_abs_potential=max_abs,
        potential_depth=depth,
    )
    logger.info(
        f"Raman-Nath check: region {region:.3g} m vs sigma {packet.sigma:.3g} m, "
        f"E_kin {kinetic:.3g} J vs max|U| {max_abs:.3g} J"
    )
    if not report.passed:
        logger.warning("Raman-Nath validity criteria not met; see report")
    return report
