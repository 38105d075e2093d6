# diffraction/second_imprint.py
"""
Order-selective second imprint that equalizes the lens phase of orders +m and -m.

Two modes:
  ideal    - multiply only the target order m by exp(2i m a r^2), so orders +m
             and -m share the factor exp(i m a r^2);
  physical - every order sees a second field through its own detuning
             Delta_m(r) = Delta0 - s m hbar / (M r^2), which shifts it by
             +Omega'^2 dt / Delta_m.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from ..atom_light.coupling import TwoLevelAtom
from ..common.errors import ParameterError, ResonanceCrossingError
from ..common.grid import grid_coordinates
from .orders import DiffractionOrder, find_order
from .packet import MODULE

logger = logging.getLogger(__name__)


def second_imprint_ideal(orders: list[DiffractionOrder], m_target: int) -> list[DiffractionOrder]:
    """Multiply order m_target by exp(2i m_target a r^2).

    Orders +m_target and -m_target then share the factor exp(i m_target a r^2).
    """
    if m_target == 0:
        return list(orders)
    target = find_order(orders, m_target)
    partner = find_order(orders, -m_target)

    # the partner order still carries its lens phase m_target * a
    a = partner.quad_phase / m_target
    _, _, r, _ = grid_coordinates(target.field.spec)
    values = target.field.values * np.exp(2j * m_target * a * r ** 2)
    shifted = dataclasses.replace(
        target,
        quad_phase=target.quad_phase + 2.0 * m_target * a,
        field=target.field.with_values(values),
    )
    logger.debug(
        f"ideal second imprint on order {m_target:+d}: "
        f"quadratic phase {target.quad_phase:.6g} -> {shifted.quad_phase:.6g}"
    )
    return [shifted if order.m == m_target else order for order in orders]


@dataclass(frozen=True)
class PhysicalSecondImprint:
    """Second field Omega'(r) = omega_prime0 [exp(-r^2/waist^2)] applied for dt.

    `s` is the helicity of the second field; `r_core` regularizes the
    azimuthal Doppler term near the axis.
    """

    s: int
    delta0: float
    omega_prime0: float
    dt: float
    atom: TwoLevelAtom
    r_core: float
    waist: float | None = None

    def __post_init__(self) -> None:
        if self.delta0 == 0 or not math.isfinite(self.delta0):
            raise ParameterError(MODULE, "second-imprint detuning delta0 must be finite and non-zero")
        if not (math.isfinite(self.r_core) and self.r_core > 0):
            raise ParameterError(MODULE, f"r_core must be > 0, got {self.r_core!r}")
        if not (math.isfinite(self.dt) and self.dt >= 0):
            raise ParameterError(MODULE, f"dt must be >= 0, got {self.dt!r}")
        if self.waist is not None and not self.waist > 0:
            raise ParameterError(MODULE, f"waist must be > 0, got {self.waist!r}")

    @property
    def doppler_scale(self) -> float:
        """hbar / M in m^2/s."""
        return constants.hbar / self.atom.mass

    def detuning(self, m: int, r):
        r_eff = np.maximum(np.asarray(r, dtype=np.float64), self.r_core)
        return self.delta0 - self.s * m * self.doppler_scale / r_eff ** 2

    def rabi_sq(self, r):
        r = np.asarray(r, dtype=np.float64)
        if self.waist is None:
            return np.full_like(r, self.omega_prime0 ** 2)
        return self.omega_prime0 ** 2 * np.exp(-2.0 * r ** 2 / self.waist ** 2)

    def resonance_radius(self, m: int) -> float | None:
        """Radius where Delta_m vanishes, or None when it never does."""
        ratio = self.s * m * self.doppler_scale / self.delta0
        return math.sqrt(ratio) if ratio > 0 else None

    def phase(self, m: int, r):
        """Imprinted phase +Omega'^2 dt / Delta_m(r)."""
        detuning = self.detuning(m, r)
        if np.any(np.sign(detuning) != np.sign(self.delta0)):
            radius = self.resonance_radius(m)
            raise ResonanceCrossingError(m, radius if radius is not None else float("nan"))
        return self.rabi_sq(r) * self.dt / detuning

    def selectivity_ratio(self, m: int, r):
        """phase(+|m|) / phase(-|m|), equal to Delta_-(r) / Delta_+(r)."""
        return self.phase(abs(m), r) / self.phase(-abs(m), r)


def second_imprint_physical(
    orders: list[DiffractionOrder],
    s: int,
    delta0: float,
    omega_prime0: float,
    dt: float,
    atom: TwoLevelAtom,
    r_core: float,
    waist: float | None = None,
) -> list[DiffractionOrder]:
    imprint = PhysicalSecondImprint(s, delta0, omega_prime0, dt, atom, r_core, waist)
    return apply_physical_imprint(orders, imprint)


def apply_physical_imprint(orders: list[DiffractionOrder], imprint: PhysicalSecondImprint) -> list[DiffractionOrder]:
    shifted = []
    for order in orders:
        _, _, r, _ = grid_coordinates(order.field.spec)
        values = order.field.values * np.exp(1j * imprint.phase(order.m, r))
        shifted.append(dataclasses.replace(order, field=order.field.with_values(values)))
    logger.info(
        f"physical second imprint: s={imprint.s}, delta0={imprint.delta0:.6g} rad/s on {len(shifted)} orders"
    )
    return shifted
