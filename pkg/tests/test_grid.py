import math

import numpy as np
import pytest

from atom_ferris_wheel.common.errors import DegenerateRingError, NonFiniteSampleError, ParameterError
from atom_ferris_wheel.common.grid import (
    ComplexField2D,
    GridSpec,
    azimuthal_spectrum,
    count_azimuthal_peaks,
    field_norm,
    grid_coordinates,
    radial_rms,
    ring_samples,
    sample_polar_function,
)

W = 50e-6


@pytest.fixture
def spec():
    # W spans 8 samples; the Gaussian is ~e^-64 at the edge
    return GridSpec.square(128, 8 * W)


def gaussian(spec):
    return sample_polar_function(spec, lambda r, phi: np.exp(-r ** 2 / W ** 2))


def vortex(spec, q):
    x, y, r, _ = grid_coordinates(spec)
    z = x + 1j * y if q >= 0 else x - 1j * y
    return ComplexField2D(spec, z ** abs(q) * np.exp(-r ** 2 / W ** 2) / W ** abs(q))


@pytest.mark.parametrize("n", [8, 100, 0])
def test_grid_rejects_bad_sample_counts(n):
    with pytest.raises(ParameterError, match="core_grid"):
        GridSpec.square(n, 1e-3)


@pytest.mark.parametrize("extent", [0.0, -1e-3, math.inf])
def test_grid_rejects_bad_extent(extent):
    with pytest.raises(ParameterError):
        GridSpec.square(64, extent)


def test_axis_is_a_sample(spec):
    x = spec.x_axis()
    assert x[spec.nx // 2] == 0.0
    assert x[0] == pytest.approx(-spec.half_extent_x)
    assert spec.dx == pytest.approx(2 * spec.half_extent_x / spec.nx)


def test_coordinates_shape_and_angle_range():
    spec = GridSpec(nx=64, ny=32, half_extent_x=2e-4, half_extent_y=1e-4)
    x, y, r, phi = grid_coordinates(spec)
    assert x.shape == (32, 64)
    assert np.all(phi >= 0) and np.all(phi < 2 * np.pi)
    np.testing.assert_allclose(r, np.hypot(x, y))


def test_field_is_immutable_and_finite(spec):
    F = gaussian(spec)
    with pytest.raises(ValueError):
        F.values[0, 0] = 1.0
    bad = np.ones((spec.ny, spec.nx))
    bad[3, 4] = np.nan
    with pytest.raises(ParameterError):
        ComplexField2D(spec, bad)


def test_field_shape_must_match(spec):
    with pytest.raises(ParameterError):
        ComplexField2D(spec, np.ones((4, 4)))


def test_non_finite_sample_reports_coordinate(spec):
    with np.errstate(divide="ignore"):
        with pytest.raises(NonFiniteSampleError) as info:
            sample_polar_function(spec, lambda r, phi: 1.0 / r)
    assert info.value.coordinate == (0.0, 0.0)


def test_gaussian_norm(spec):
    assert field_norm(gaussian(spec)) == pytest.approx(math.sqrt(math.pi / 2) * W, rel=1e-12)


def test_norm_is_reproducible(spec):
    F = vortex(spec, 3)
    assert field_norm(F) == field_norm(F)


def test_norm_survives_grid_refinement(spec):
    def petals(r, phi):
        return (r / W) ** 2 * np.exp(-(r ** 2) / W ** 2) * np.cos(2 * phi)

    coarse = field_norm(sample_polar_function(spec, petals))
    fine = field_norm(sample_polar_function(spec.refined(), petals))
    assert spec.refined().nx == 2 * spec.nx
    assert spec.refined().half_extent_x == spec.half_extent_x
    assert fine == pytest.approx(coarse, rel=1e-6)


def test_radial_rms_of_gaussian(spec):
    # |exp(-r^2/W^2)|^2 has <r^2> = W^2/2
    assert radial_rms(gaussian(spec)) == pytest.approx(W / math.sqrt(2), rel=1e-10)


def test_radial_rms_of_zero_field(spec):
    with pytest.raises(DegenerateRingError):
        radial_rms(ComplexField2D(spec, np.zeros((spec.ny, spec.nx))))


def test_ring_samples_shape(spec):
    samples = ring_samples(gaussian(spec), [W, 2 * W, 3 * W], 64)
    assert samples.shape == (3, 64)
    np.testing.assert_allclose(samples[0], math.exp(-1), rtol=1e-2)


def test_spectral_ring_samples_are_exact_for_resolved_fields(spec):
    samples = ring_samples(gaussian(spec), [1.3 * W], 128, method="spectral")
    np.testing.assert_allclose(samples, math.exp(-1.69), rtol=1e-10)


def test_unknown_ring_method(spec):
    with pytest.raises(ParameterError):
        ring_samples(gaussian(spec), [W], 64, method="cubic")


def test_azimuthal_spectrum_isolates_vortex_charge(spec):
    result = azimuthal_spectrum(vortex(spec, 3), W, n_phi=128, method="spectral")
    c3 = result.coefficient(3)
    assert abs(c3) == pytest.approx(math.exp(-1), rel=1e-9)
    off_support = np.abs(result.coefficients[result.orders != 3]) ** 2
    assert off_support.sum() < 1e-18 * abs(c3) ** 2


def test_azimuthal_spectrum_linear_method_finds_dominant_harmonic(spec):
    result = azimuthal_spectrum(vortex(spec, -2), W)
    assert result.orders[np.argmax(np.abs(result.coefficients))] == -2


@pytest.mark.parametrize("method", ["linear", "spectral"])
def test_ring_spectrum_keeps_ring_power(spec, method):
    F = vortex(spec, 3).with_values(vortex(spec, 3).values + gaussian(spec).values)
    result = azimuthal_spectrum(F, 1.2 * W, n_phi=128, method=method)
    ring = ring_samples(F, [1.2 * W], 128, method=method)[0]
    assert result.power() == pytest.approx(np.mean(np.abs(ring) ** 2), rel=1e-12)


def test_azimuthal_spectrum_validates_arguments(spec):
    F = gaussian(spec)
    with pytest.raises(ParameterError):
        azimuthal_spectrum(F, W, n_phi=32)
    with pytest.raises(ParameterError):
        azimuthal_spectrum(F, W, n_phi=100)
    with pytest.raises(ParameterError):
        azimuthal_spectrum(F, spec.half_extent_x, n_phi=64)
    with pytest.raises(ParameterError):
        azimuthal_spectrum(F, 0.0)
    result = azimuthal_spectrum(F, W, n_phi=64)
    with pytest.raises(ParameterError):
        result.coefficient(32)


def petal_density(spec):
    # (1.5 + cos 4phi) r^4 exp(-r^2/W^2), written with polynomials in x and y
    x, y, r, _ = grid_coordinates(spec)
    return ComplexField2D(spec, (1.5 * r ** 4 + x ** 4 - 6 * x ** 2 * y ** 2 + y ** 4) * np.exp(-r ** 2 / W ** 2) / W ** 4)


@pytest.mark.parametrize("radius", [0.5 * W, W, 2 * W])
def test_count_peaks_of_four_fold_density(spec, radius):
    assert count_azimuthal_peaks(petal_density(spec), radius, method="spectral") == 4


def test_plateau_counts_once():
    spec = GridSpec.square(256, 300e-6)
    clipped = sample_polar_function(spec, lambda r, phi: np.minimum(np.cos(2 * phi) ** 2, 0.8))
    assert count_azimuthal_peaks(clipped, 100e-6) == 4


def test_count_peaks_of_flat_ring(spec):
    assert count_azimuthal_peaks(gaussian(spec), W, method="spectral") == 0


def test_count_peaks_rejects_invalid_input(spec):
    with pytest.raises(ParameterError):
        count_azimuthal_peaks(vortex(spec, 1), W)
    with pytest.raises(ParameterError):
        count_azimuthal_peaks(gaussian(spec).with_values(-gaussian(spec).values), W)
    with pytest.raises(ParameterError):
        count_azimuthal_peaks(gaussian(spec), spec.half_extent_x)
    with pytest.raises(DegenerateRingError):
        count_azimuthal_peaks(ComplexField2D(spec, np.zeros((spec.ny, spec.nx))), W)
