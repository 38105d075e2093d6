# tests/conftest.py
"""Shared fixtures: the l = 2 spiral mask, the 133Cs transition and a 100 um packet."""

import math

import pytest

from atom_ferris_wheel.atom_light.coupling import RabiConfig, TwoLevelAtom
from atom_ferris_wheel.common.grid import GridSpec
from atom_ferris_wheel.diffraction.orders import ImprintParams
from atom_ferris_wheel.diffraction.packet import WavePacket
from atom_ferris_wheel.optics.beams import GaussianBeamParams, LGBeamParams, ThinLens

GAMMA = 2.0 * math.pi * 5.22e6
MASS = 2.2069e-25
WAVELENGTH = 589.16e-9
W0 = 180e-6
POWER = 2.8e-3
SATURATION_INTENSITY = 10.9


@pytest.fixture
def lens():
    return ThinLens(n=1.5, d=0.008, f=0.008)


@pytest.fixture
def lg_beam():
    return LGBeamParams(ell=2, p=0, w0=W0, wavelength=WAVELENGTH, power=POWER)


@pytest.fixture
def gaussian_beam():
    return GaussianBeamParams(w0=W0, wavelength=WAVELENGTH, power=POWER)


@pytest.fixture
def cesium():
    return TwoLevelAtom(lambda0=WAVELENGTH, gamma=GAMMA, mass=MASS, saturation_intensity=SATURATION_INTENSITY)


@pytest.fixture
def rabi_cfg(lens):
    return RabiConfig.from_gamma_units(
        gamma=GAMMA,
        omega_g0=10.0,
        omega_gl0=10.0,
        detuning=100.0,
        ell=2,
        p=0,
        w0=W0,
        lens=lens,
        wavelength=WAVELENGTH,
    )


@pytest.fixture
def packet():
    return WavePacket(sigma=100e-6, k_db=2.0e9)


@pytest.fixture
def imprint_params(rabi_cfg, packet):
    return ImprintParams(rabi=rabi_cfg, tau=0.5 / GAMMA, packet=packet, gamma=GAMMA)


@pytest.fixture
def packet_grid():
    """512 samples over +/-300 um: the 100 um packet is negligible at the edges."""
    return GridSpec.square(512, 300e-6)


@pytest.fixture
def mask_grid():
    return GridSpec.square(256, 3.0 * W0)
