# diffraction/ferris.py
"""Ferris wheel density of two counter-rotating orders +m and -m."""

from __future__ import annotations

import logging

import numpy as np

from ..common.errors import ParameterError
from ..common.grid import ComplexField2D, GridSpec, grid_coordinates
from .orders import DiffractionOrder, ImprintParams, find_order, signed_bessel
from .packet import MODULE

logger = logging.getLogger(__name__)


def _normalized(spec: GridSpec, density: np.ndarray, quantity: str, params: dict) -> ComplexField2D:
    total = float(np.add.reduce(np.ascontiguousarray(density).ravel())) * spec.cell_area
    if total == 0.0:
        raise ParameterError(MODULE, f"{quantity} vanishes on the whole grid")
    return ComplexField2D(spec, density / total, quantity=quantity, units="1/m^2", params=params)


def ferris_density(params: ImprintParams, m: int, spec: GridSpec) -> ComplexField2D:
    """4 |psi0|^2 J_m^2(E tau) cos^2(m l phi + m knd), normalized to unit integral.

    The pattern has 2|m|l petals.
    """
    if m == 0:
        raise ParameterError(MODULE, "the Ferris wheel needs a non-zero order m")
    packet = params.require_packet()
    _, _, r, phi = grid_coordinates(spec)
    psi0_sq = packet.amplitude(r) ** 2
    bessel = signed_bessel(m, params.modulation(r))
    angle = m * params.ell * phi + m * params.knd
    density = 4.0 * psi0_sq * bessel ** 2 * np.cos(angle) ** 2
    logger.debug(f"closed-form Ferris density for m={m}, l={params.ell}: {2 * abs(m * params.ell)} petals")
    return _normalized(spec, density, "ferris_density", {"m": m, "ell": params.ell, "tau": params.tau})


def superpose_orders(orders: list[DiffractionOrder], m: int) -> ComplexField2D:
    """|psi_+m + psi_-m|^2 of decomposed orders, normalized to unit integral."""
    if m == 0:
        raise ParameterError(MODULE, "the Ferris wheel needs a non-zero order m")
    plus = find_order(orders, abs(m))
    minus = find_order(orders, -abs(m))
    density = np.abs(plus.field.values + minus.field.values) ** 2
    return _normalized(plus.field.spec, density, "ferris_density", {"m": abs(m), "helicity": plus.helicity})
