# diffraction/orders.py
"""
Thin-mask phase imprint and its Jacobi-Anger decomposition.

The imprint exp(-2i tau |Omega|^2 / Delta) splits into a common phase
exp(-i(B+C)tau) and a modulation exp(-i E tau cos(theta)), with
theta = l*phi + knd - a r^2. Expanding the modulation gives the orders

    psi_m = psi0 exp(-i(B+C)tau) i^-m J_m(E tau) exp(i m theta)

each winding as exp(i m l phi) and carrying the lens phase -m a r^2.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize
from scipy.special import jv

from ..atom_light.coupling import RabiConfig, rabi_gaussian, rabi_lg, rabi_sq_total
from ..common.errors import ParameterError, TruncationError
from ..common.grid import ComplexField2D, grid_coordinates
from ..optics.beams import spiral_phase
from .packet import MODULE, FWHM_EXPONENT, WavePacket

logger = logging.getLogger(__name__)

TAIL_BOUND = 1e-12
RADIAL_SAMPLES = 8193
MAX_ORDER_LIMIT = 200


def signed_bessel(m: int, x):
    """J_m(x) for real x of either sign, via J_m(-x) = (-1)^m J_m(x)."""
    x = np.asarray(x, dtype=np.float64)
    sign = np.where(x < 0, (-1.0) ** m, 1.0)
    return sign * jv(m, np.abs(x))


def imprint_profiles(cfg: RabiConfig, tau: float, r):
    """Radial phases (B tau, C tau, E tau) in rad.

    B = 2 Omega_l,p^2 / Delta, C = 2 Omega_G^2 / Delta, E = 4 Omega_G Omega_l,p / Delta.
    """
    omega_g = rabi_gaussian(cfg, r)
    omega_l = rabi_lg(cfg, r)
    scale = tau / cfg.detuning
    return (
        2.0 * omega_l ** 2 * scale,
        2.0 * omega_g ** 2 * scale,
        4.0 * omega_g * omega_l * scale,
    )


def imprint_phase(cfg: RabiConfig, tau: float, r, phi):
    """Total imprint phase 2 tau |Omega|^2 / Delta (the wavefunction gets exp(-i*this))."""
    return 2.0 * tau * rabi_sq_total(cfg, r, phi) / cfg.detuning


def _profile_radius(cfg: RabiConfig) -> float:
    return cfg.w0 * (6.0 + math.sqrt(abs(cfg.ell) + 2 * cfg.p + 1.0))


def _check_tau(tau: float, gamma: float | None) -> None:
    if not (math.isfinite(tau) and tau >= 0):
        raise ParameterError(MODULE, f"interaction time tau must be >= 0, got {tau!r}")
    if gamma is not None and tau * gamma >= 1.0:
        logger.warning(
            f"interaction time {tau * gamma:.3g}/Gamma is not below 1/Gamma; "
            "spontaneous emission is no longer negligible"
        )


@dataclass(frozen=True)
class ImprintParams:
    """Imprint of one mask on one packet.

    `tau` is in seconds; `gamma` (rad/s) is optional and only used to warn
    when tau reaches the excited-state lifetime.
    """

    rabi: RabiConfig
    tau: float
    packet: WavePacket | None = None
    gamma: float | None = None

    def __post_init__(self) -> None:
        _check_tau(self.tau, self.gamma)

    @property
    def a(self) -> float:
        return self.rabi.a

    @property
    def ell(self) -> int:
        return self.rabi.ell

    @property
    def knd(self) -> float:
        return self.rabi.lens.reduced_phase_offset(self.rabi.k)

    def profiles(self, r):
        return imprint_profiles(self.rabi, self.tau, r)

    def modulation(self, r):
        """E(r) tau."""
        return self.profiles(r)[2]

    def max_modulation(self) -> float:
        """max over r of |E(r) tau|, refined by bounded scalar minimization."""
        if self.tau == 0:
            return 0.0
        r = np.linspace(0.0, _profile_radius(self.rabi), RADIAL_SAMPLES)
        values = np.abs(self.modulation(r))
        i = int(np.argmax(values))
        lo, hi = r[max(i - 1, 0)], r[min(i + 1, r.size - 1)]
        if hi <= lo:
            return float(values[i])
        result = optimize.minimize_scalar(
            lambda x: -abs(float(self.modulation(x))),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12 * self.rabi.w0},
        )
        return max(float(values[i]), -float(result.fun))

    def auto_m_max(self) -> int:
        """Smallest M with (x/2)^M / M! < 1e-12, x = max |E tau|; this bounds J_M."""
        half = self.max_modulation() / 2.0
        m = 1
        while half ** m / math.factorial(m) >= TAIL_BOUND:
            m += 1
            if m > MAX_ORDER_LIMIT:
                raise ParameterError(MODULE, f"modulation depth {2 * half:.3g} rad needs more than {MAX_ORDER_LIMIT} orders")
        return m

    def require_packet(self) -> WavePacket:
        if self.packet is None:
            raise ParameterError(MODULE, "this operation needs the imprint's wave packet")
        return self.packet


def phase_imprint(psi: ComplexField2D, cfg: RabiConfig, tau: float, gamma: float | None = None) -> ComplexField2D:
    """psi(r, 0) = psi(r, -tau) exp(-2i tau |Omega(r, phi)|^2 / Delta)."""
    _check_tau(tau, gamma)
    _, _, r, phi = grid_coordinates(psi.spec)
    values = psi.values * np.exp(-1j * imprint_phase(cfg, tau, r, phi))
    imprinted = psi.with_values(values, quantity="imprinted_wavefunction")
    imprinted.params.update(tau=tau, detuning=cfg.detuning)
    return imprinted


@dataclass(frozen=True, eq=False)
class DiffractionOrder:
    """Order m of the decomposition.

    `helicity` is the azimuthal harmonic m*l, `quad_phase` the coefficient
    of r^2 in its phase (-m*a after the mask) and `extra_phase` m*knd.
    """

    m: int
    helicity: int
    quad_phase: float
    extra_phase: float
    field: ComplexField2D

    def weight(self, params: ImprintParams, r):
        """Radial weight i^-m J_m(E(r) tau)."""
        return (1j) ** (-self.m) * signed_bessel(self.m, params.modulation(r))


def bessel_sum_rule_residual(params: ImprintParams, radii, m_max: int | None = None) -> float:
    """max over radii of |1 - sum_{|m| <= M} J_m^2(E(r) tau)|."""
    m_max = params.auto_m_max() if m_max is None else m_max
    x = params.modulation(np.atleast_1d(np.asarray(radii, dtype=np.float64)))
    total = np.zeros_like(x)
    for m in range(-m_max, m_max + 1):
        total += signed_bessel(m, x) ** 2
    return float(np.max(np.abs(1.0 - total)))


def decompose_orders(psi0: ComplexField2D, params: ImprintParams, m_max: int | None = None) -> list[DiffractionOrder]:
    """Orders -M..M of the imprinted packet, in ascending m."""
    if m_max is None:
        m_max = params.auto_m_max()
        logger.debug(f"auto m_max = {m_max} for max |E tau| = {params.max_modulation():.6g}")
    elif m_max < 0:
        raise ParameterError(MODULE, f"m_max must be >= 0, got {m_max}")

    _, _, r, phi = grid_coordinates(psi0.spec)
    b_tau, c_tau, e_tau = params.profiles(r)
    residual = bessel_sum_rule_residual(params, r.ravel(), m_max)
    if residual > TAIL_BOUND:
        raise TruncationError(m_max, residual)

    common = psi0.values * np.exp(-1j * (b_tau + c_tau))
    theta = spiral_phase(params.ell, params.rabi.k, params.rabi.lens, r, phi)
    orders = []
    for m in range(-m_max, m_max + 1):
        values = common * (1j) ** (-m) * signed_bessel(m, e_tau) * np.exp(1j * m * theta)
        field = psi0.with_values(values, quantity=f"order_{m}")
        field.params.update(m=m, helicity=m * params.ell, tau=params.tau)
        orders.append(
            DiffractionOrder(
                m=m,
                helicity=m * params.ell,
                quad_phase=-m * params.a,
                extra_phase=m * params.knd,
                field=field,
            )
        )
    logger.info(f"decomposed imprint into {len(orders)} orders (m_max={m_max}, residual={residual:.2e})")
    return orders


def reconstruct(orders: list[DiffractionOrder]) -> ComplexField2D:
    """Pointwise sum of the orders, accumulated in ascending m."""
    if not orders:
        raise ParameterError(MODULE, "cannot reconstruct from an empty order list")
    ordered = sorted(orders, key=lambda o: o.m)
    total = np.zeros_like(ordered[0].field.values, dtype=np.complex128)
    for order in ordered:
        total += order.field.values
    return ordered[0].field.with_values(total, quantity="reconstructed_wavefunction")


def find_order(orders: list[DiffractionOrder], m: int) -> DiffractionOrder:
    for order in orders:
        if order.m == m:
            return order
    raise ParameterError(MODULE, f"order m={m} is not in the order list")


def order_weights(params: ImprintParams, m: int) -> float:
    """Population P_m = integral of |psi0|^2 J_m^2(E(r) tau) over the plane."""
    packet = params.require_packet()
    n_sq = packet.normalization ** 2

    def integrand(r: float) -> float:
        density = n_sq * math.exp(-2.0 * FWHM_EXPONENT * r * r / packet.sigma ** 2)
        return density * float(signed_bessel(m, params.modulation(r))) ** 2 * 2.0 * math.pi * r

    upper = 5.0 * packet.sigma
    value, _ = integrate.quad(integrand, 0.0, upper, epsabs=1e-15, epsrel=1e-12, limit=400)
    return value


def order_populations(params: ImprintParams, m_max: int | None = None) -> list[tuple[int, float]]:
    m_max = params.auto_m_max() if m_max is None else m_max
    return [(m, order_weights(params, m)) for m in range(-m_max, m_max + 1)]
