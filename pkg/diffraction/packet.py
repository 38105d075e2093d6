# diffraction/packet.py
"""Initial atomic wave packet released from a 2-D trap."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..common.errors import ParameterError
from ..common.grid import ComplexField2D, GridSpec, grid_coordinates

logger = logging.getLogger(__name__)

MODULE = "diffraction"
FWHM_EXPONENT = 4.0 * math.log(2.0)


@dataclass(frozen=True)
class WavePacket:
    """Gaussian packet N exp(-4 ln2 r^2 / sigma^2); sigma is the amplitude FWHM.

    k_db is the axial de Broglie wavenumber. The axial factor exp(-i k_db z)
    is metadata and never stored on a transverse grid.
    """

    sigma: float
    k_db: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ParameterError(MODULE, f"packet sigma must be > 0, got {self.sigma!r}")
        if not (math.isfinite(self.k_db) and self.k_db > 0):
            raise ParameterError(MODULE, f"k_db must be > 0, got {self.k_db!r}")

    @property
    def normalization(self) -> float:
        """N with integral of |psi|^2 over the plane equal to one."""
        return math.sqrt(2.0 * FWHM_EXPONENT / (math.pi * self.sigma ** 2))

    @property
    def position_std(self) -> float:
        """Standard deviation of |psi|^2 along one axis."""
        return self.sigma / (2.0 * math.sqrt(FWHM_EXPONENT))

    def amplitude(self, r):
        return self.normalization * np.exp(-FWHM_EXPONENT * np.asarray(r) ** 2 / self.sigma ** 2)


def initial_packet(packet: WavePacket, spec: GridSpec) -> ComplexField2D:
    half = min(spec.half_extent_x, spec.half_extent_y)
    if half < 2.0 * packet.sigma:
        logger.warning(
            f"grid half extent {half:.3g} m is below 2*sigma = {2 * packet.sigma:.3g} m; "
            "the packet is truncated"
        )
    _, _, r, _ = grid_coordinates(spec)
    values = packet.amplitude(r).astype(np.complex128)
    return ComplexField2D(
        spec,
        values,
        quantity="wavefunction",
        units="1/m",
        params={"sigma": packet.sigma, "k_db": packet.k_db},
    )
