import logging
import math

import numpy as np
import pytest
from scipy.special import jv

from atom_ferris_wheel.common.errors import ParameterError, TruncationError
from atom_ferris_wheel.common.grid import GridSpec, azimuthal_spectrum, field_norm
from atom_ferris_wheel.diffraction.orders import (
    ImprintParams,
    bessel_sum_rule_residual,
    decompose_orders,
    find_order,
    imprint_phase,
    imprint_profiles,
    order_populations,
    order_weights,
    phase_imprint,
    reconstruct,
    signed_bessel,
)
from atom_ferris_wheel.diffraction.packet import WavePacket, initial_packet

from conftest import GAMMA, W0

DEPTH = math.sqrt(2) / math.e


def test_packet_is_normalized(packet, packet_grid):
    psi = initial_packet(packet, packet_grid)
    assert psi.quantity == "wavefunction"
    assert psi.params == {"sigma": packet.sigma, "k_db": packet.k_db}
    assert field_norm(psi) == pytest.approx(1.0, rel=1e-9)
    assert packet.amplitude(packet.sigma / 2) == pytest.approx(packet.normalization / 2)


def test_truncated_packet_warns(caplog):
    with caplog.at_level(logging.WARNING, logger="atom_ferris_wheel.diffraction.packet"):
        initial_packet(WavePacket(sigma=100e-6, k_db=2e9), GridSpec.square(64, 150e-6))
    assert "truncated" in caplog.text


@pytest.mark.parametrize("kwargs", [{"sigma": 0.0, "k_db": 2e9}, {"sigma": 1e-4, "k_db": -1.0}])
def test_packet_validation(kwargs):
    with pytest.raises(ParameterError, match="diffraction"):
        WavePacket(**kwargs)


def test_signed_bessel_parity():
    x = np.linspace(0.1, 3, 7)
    for m in range(-3, 4):
        np.testing.assert_allclose(signed_bessel(m, -x), (-1) ** m * jv(m, x), rtol=1e-14)


def test_modulation_depth(imprint_params):
    assert imprint_params.max_modulation() == pytest.approx(DEPTH, rel=1e-9)
    e_tau = imprint_params.modulation(W0 / math.sqrt(2))
    assert e_tau == pytest.approx(DEPTH, rel=1e-12)
    assert jv(1, e_tau) / jv(0, e_tau) == pytest.approx(0.26935, rel=1e-4)
    assert jv(1, e_tau) ** 2 == pytest.approx(0.06322, rel=1e-3)


def test_profiles_sum_to_in_phase_imprint(imprint_params):
    # at r^2 = (1 - 1/sqrt2) w0^2 both beams add to the largest |Omega|
    r = W0 * math.sqrt(1 - 1 / math.sqrt(2))
    b, c, e = imprint_profiles(imprint_params.rabi, imprint_params.tau, r)
    assert b + c + e == pytest.approx(1.1133, rel=1e-4)
    assert imprint_phase(imprint_params.rabi, imprint_params.tau, r, 0.0) <= b + c + e + 1e-12


def test_auto_m_max(imprint_params):
    assert imprint_params.auto_m_max() == 10
    assert bessel_sum_rule_residual(imprint_params, np.linspace(0, 3 * W0, 500)) < 1e-12


def test_zero_interaction_time(rabi_cfg, packet, packet_grid):
    params = ImprintParams(rabi=rabi_cfg, tau=0.0, packet=packet)
    assert params.max_modulation() == 0.0
    psi = initial_packet(packet, packet_grid)
    np.testing.assert_array_equal(phase_imprint(psi, rabi_cfg, 0.0).values, psi.values)


def test_interaction_time_checks(rabi_cfg, caplog):
    with pytest.raises(ParameterError):
        ImprintParams(rabi=rabi_cfg, tau=-1e-9)
    with caplog.at_level(logging.WARNING, logger="atom_ferris_wheel.diffraction.orders"):
        ImprintParams(rabi=rabi_cfg, tau=2.0 / GAMMA, gamma=GAMMA)
    assert "spontaneous emission" in caplog.text


@pytest.fixture
def orders(imprint_params, packet, packet_grid):
    return decompose_orders(initial_packet(packet, packet_grid), imprint_params)


def test_orders_are_ascending_with_helicity(orders, imprint_params):
    assert [o.m for o in orders] == list(range(-10, 11))
    first = find_order(orders, 1)
    assert first.helicity == 2
    assert first.quad_phase == pytest.approx(-imprint_params.a)
    assert first.extra_phase == pytest.approx(imprint_params.knd)
    assert first.field.quantity == "order_1"
    assert first.field.params["m"] == 1
    with pytest.raises(ParameterError):
        find_order(orders, 11)


def test_orders_reconstruct_the_imprint(orders, imprint_params, packet, packet_grid):
    imprinted = phase_imprint(initial_packet(packet, packet_grid), imprint_params.rabi, imprint_params.tau)
    total = reconstruct(orders)
    scale = np.max(np.abs(imprinted.values))
    assert np.max(np.abs(total.values - imprinted.values)) < 1e-10 * scale
    assert imprinted.quantity == "imprinted_wavefunction"


@pytest.mark.parametrize("m", [1, -1, 2, -2])
def test_order_winds_with_m_times_ell(orders, m):
    spectrum = azimuthal_spectrum(find_order(orders, m).field, 70e-6, method="spectral")
    assert spectrum.orders[np.argmax(np.abs(spectrum.coefficients))] == 2 * m


def test_order_weight_phase(orders, imprint_params):
    r = W0 / math.sqrt(2)
    assert find_order(orders, 1).weight(imprint_params, r) == pytest.approx(-1j * jv(1, DEPTH), rel=1e-12)
    assert find_order(orders, -2).weight(imprint_params, r) == pytest.approx(-jv(2, DEPTH), rel=1e-12)


def test_truncated_decomposition_is_refused(imprint_params, packet, packet_grid):
    with pytest.raises(TruncationError) as info:
        decompose_orders(initial_packet(packet, packet_grid), imprint_params, m_max=1)
    assert info.value.m_max == 1
    assert info.value.residual > 1e-12


def test_populations_sum_to_one(imprint_params):
    populations = dict(order_populations(imprint_params))
    assert sum(populations.values()) == pytest.approx(1.0, rel=1e-9)
    assert populations[1] == pytest.approx(populations[-1], rel=1e-12)
    assert populations[0] > populations[1] > populations[2]


def test_weights_need_a_packet(rabi_cfg):
    with pytest.raises(ParameterError):
        order_weights(ImprintParams(rabi=rabi_cfg, tau=1e-9), 1)


def test_imprinted_ring_carries_only_multiples_of_ell(imprint_params, packet, packet_grid):
    psi = phase_imprint(initial_packet(packet, packet_grid), imprint_params.rabi, imprint_params.tau)
    radius = W0 / math.sqrt(2)
    depth = abs(float(imprint_params.modulation(radius)))
    assert depth == pytest.approx(0.5203, abs=1e-3)

    spectrum = azimuthal_spectrum(psi, radius, method="spectral")
    magnitude = np.abs(spectrum.coefficients)
    assert np.max(magnitude[spectrum.orders % 2 != 0]) < 1e-6 * np.max(magnitude)
    ratio = abs(spectrum.coefficient(2)) / abs(spectrum.coefficient(0))
    assert ratio == pytest.approx(jv(1, depth) / jv(0, depth), rel=1e-6)
    assert ratio == pytest.approx(0.26935, abs=1e-4)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_opposite_orders_have_equal_magnitude(orders, m):
    plus = np.abs(find_order(orders, m).field.values)
    minus = np.abs(find_order(orders, -m).field.values)
    assert np.max(np.abs(plus - minus)) < 1e-12 * np.max(plus)
