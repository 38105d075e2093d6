# common/grid.py
"""
Uniform 2-D sampling grids and the complex fields that live on them.

Sample (i, j) sits at x = (i - nx/2)*dx, y = (j - ny/2)*dy so the beam axis
(0, 0) is always a grid point. Field values are stored with shape (ny, nx):
the row index is y, the column index is x.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import ndimage

from .errors import DegenerateRingError, NonFiniteSampleError, ParameterError

logger = logging.getLogger(__name__)

MODULE = "core_grid"
MIN_SAMPLES = 16

PolarFunction = Callable[[np.ndarray, np.ndarray], "np.ndarray | complex | float"]


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class GridSpec:
    """Sample counts and physical half extents (m) of a centered grid."""

    nx: int
    ny: int
    half_extent_x: float
    half_extent_y: float

    def __post_init__(self) -> None:
        for name in ("nx", "ny"):
            n = getattr(self, name)
            if not isinstance(n, (int, np.integer)) or n < MIN_SAMPLES or not _is_power_of_two(int(n)):
                raise ParameterError(MODULE, f"{name} must be a power of two >= {MIN_SAMPLES}, got {n!r}")
        for name in ("half_extent_x", "half_extent_y"):
            h = getattr(self, name)
            if not (math.isfinite(h) and h > 0):
                raise ParameterError(MODULE, f"{name} must be a finite positive length, got {h!r}")

    @classmethod
    def square(cls, n: int, half_extent: float) -> "GridSpec":
        return cls(nx=n, ny=n, half_extent_x=half_extent, half_extent_y=half_extent)

    @property
    def dx(self) -> float:
        return 2.0 * self.half_extent_x / self.nx

    @property
    def dy(self) -> float:
        return 2.0 * self.half_extent_y / self.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    def x_axis(self) -> np.ndarray:
        return (np.arange(self.nx) - self.nx // 2) * self.dx

    def y_axis(self) -> np.ndarray:
        return (np.arange(self.ny) - self.ny // 2) * self.dy

    def refined(self) -> "GridSpec":
        """Same extent, twice the samples per axis."""
        return GridSpec(2 * self.nx, 2 * self.ny, self.half_extent_x, self.half_extent_y)


def grid_coordinates(spec: GridSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return x, y, r and phi arrays of shape (ny, nx); phi lies in [0, 2*pi)."""
    x, y = np.meshgrid(spec.x_axis(), spec.y_axis())
    r = np.hypot(x, y)
    phi = np.mod(np.arctan2(y, x), 2.0 * np.pi)
    return x, y, r, phi


@dataclass(frozen=True, eq=False)
class ComplexField2D:
    """Immutable samples of a scalar field on a GridSpec.

    `quantity` and `units` are carried as metadata (V/m for optical fields,
    1/m for 2-D wavefunctions, W/m^2 for intensities, empty when normalized).
    Real-valued fields (densities, intensities, potentials) keep a float dtype.
    """

    spec: GridSpec
    values: np.ndarray
    quantity: str = "field"
    units: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        values = np.array(self.values, copy=True)
        if not (np.iscomplexobj(values) or np.issubdtype(values.dtype, np.floating)):
            values = values.astype(np.float64)
        expected = (self.spec.ny, self.spec.nx)
        if values.shape != expected:
            raise ParameterError(MODULE, f"values shape {values.shape} does not match grid {expected}")
        if not np.all(np.isfinite(values)):
            raise ParameterError(MODULE, f"field '{self.quantity}' contains non-finite values")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values)

    def with_values(self, values: np.ndarray, quantity: str | None = None, units: str | None = None) -> "ComplexField2D":
        return ComplexField2D(
            spec=self.spec,
            values=values,
            quantity=self.quantity if quantity is None else quantity,
            units=self.units if units is None else units,
            params=dict(self.params),
        )

    def density(self, quantity: str = "density") -> "ComplexField2D":
        """|F|^2 as a real field."""
        return ComplexField2D(self.spec, np.abs(self.values) ** 2, quantity=quantity, units="")


def sample_polar_function(spec: GridSpec, f: PolarFunction, quantity: str = "field", units: str = "") -> ComplexField2D:
    """Evaluate f(r, phi) at every sample; f receives arrays and must broadcast."""
    x, y, r, phi = grid_coordinates(spec)
    values = np.broadcast_to(np.asarray(f(r, phi)), r.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        j, i = np.argwhere(bad)[0]
        raise NonFiniteSampleError(float(x[j, i]), float(y[j, i]), float(r[j, i]), float(phi[j, i]))
    return ComplexField2D(spec, values, quantity=quantity, units=units)


def field_norm(F: ComplexField2D) -> float:
    """sqrt(sum |F|^2 dx dy).

    numpy reduces a contiguous 1-D array with a fixed pairwise tree, so the
    result is bit-reproducible for a given grid.
    """
    weights = np.ascontiguousarray((np.abs(F.values) ** 2).ravel())
    return math.sqrt(float(np.add.reduce(weights)) * F.spec.cell_area)


def radial_rms(F: ComplexField2D) -> float:
    """Intensity-weighted RMS distance from the beam axis."""
    _, _, r, _ = grid_coordinates(F.spec)
    weights = np.abs(F.values) ** 2
    total = float(np.add.reduce(weights.ravel()))
    if total == 0.0:
        raise DegenerateRingError("RMS radius of an all-zero field is undefined")
    return math.sqrt(float(np.add.reduce((weights * r ** 2).ravel())) / total)


def ring_angles(n_phi: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n_phi) / n_phi


def _linear_samples(F: ComplexField2D, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    spec = F.spec
    coords = np.vstack([ys / spec.dy + spec.ny // 2, xs / spec.dx + spec.nx // 2])
    real = ndimage.map_coordinates(np.real(F.values), coords, order=1, mode="nearest")
    if F.is_real:
        return real
    imag = ndimage.map_coordinates(np.imag(F.values), coords, order=1, mode="nearest")
    return real + 1j * imag


def _spectral_samples(F: ComplexField2D, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    # trigonometric interpolation of the periodic band-limited grid function
    spec = F.spec
    coeffs = np.fft.fft2(F.values) / (spec.nx * spec.ny)
    kx = 2.0 * np.pi * np.fft.fftfreq(spec.nx, d=spec.dx)
    ky = 2.0 * np.pi * np.fft.fftfreq(spec.ny, d=spec.dy)
    ex = np.exp(1j * np.outer(xs + spec.half_extent_x, kx))
    ey = np.exp(1j * np.outer(ys + spec.half_extent_y, ky))
    samples = np.sum((ey @ coeffs) * ex, axis=1)
    return samples.real if F.is_real else samples


RING_METHODS = {"linear": _linear_samples, "spectral": _spectral_samples}


def ring_samples(F: ComplexField2D, radii, n_phi: int, method: str = "linear") -> np.ndarray:
    """Interpolate F on rings; returns shape (len(radii), n_phi), angles 2*pi*k/n_phi."""
    try:
        sampler = RING_METHODS[method]
    except KeyError:
        raise ParameterError(MODULE, f"unknown ring interpolation method {method!r}") from None
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    phi = ring_angles(n_phi)
    xs = np.outer(radii, np.cos(phi)).ravel()
    ys = np.outer(radii, np.sin(phi)).ravel()
    return sampler(F, xs, ys).reshape(radii.size, n_phi)


@dataclass(frozen=True, eq=False)
class AzimuthalSpectrum:
    """Ring-DFT coefficients c_q for q in [-n_phi/2, n_phi/2)."""

    radius: float
    orders: np.ndarray
    coefficients: np.ndarray

    def coefficient(self, q: int) -> complex:
        n = self.coefficients.size
        if not -n // 2 <= q < n // 2:
            raise ParameterError(MODULE, f"harmonic {q} outside [-{n // 2}, {n // 2})")
        return complex(self.coefficients[q + n // 2])

    def power(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


def azimuthal_spectrum(F: ComplexField2D, r: float, n_phi: int = 256, method: str = "linear") -> AzimuthalSpectrum:
    if n_phi < 64 or not _is_power_of_two(n_phi):
        raise ParameterError(MODULE, f"n_phi must be a power of two >= 64, got {n_phi}")
    safe = min(F.spec.half_extent_x, F.spec.half_extent_y) / math.sqrt(2.0)
    if not 0.0 < r < safe:
        raise ParameterError(MODULE, f"ring radius {r:.6g} m outside the safe interpolation disc (0, {safe:.6g})")
    samples = ring_samples(F, [r], n_phi, method=method)[0]
    coefficients = np.fft.fftshift(np.fft.fft(samples) / n_phi)
    return AzimuthalSpectrum(
        radius=r,
        orders=np.arange(-n_phi // 2, n_phi // 2),
        coefficients=coefficients,
    )


def _count_circular_maxima(profile: np.ndarray, tol: float) -> int:
    levels: list[float] = []
    for value in profile:
        if levels and abs(value - levels[-1]) <= tol:
            continue
        levels.append(float(value))
    if len(levels) > 1 and abs(levels[0] - levels[-1]) <= tol:
        levels.pop()
    n = len(levels)
    if n < 2:
        return 0
    return sum(1 for i in range(n) if levels[i] > levels[i - 1] and levels[i] > levels[(i + 1) % n])


def count_azimuthal_peaks(density: ComplexField2D, r: float, n_phi: int = 256, method: str = "linear") -> int:
    """Number of strict local maxima of density(r, phi) over one revolution.

    Consecutive samples closer than 1e-9 times the ring maximum are one level, so a
    plateau counts once. Bilinear sampling ripples on fields with radial structure;
    pass method="spectral" for smooth band-limited densities.
    """
    if not density.is_real:
        raise ParameterError(MODULE, "peak counting needs a real-valued density")
    limit = min(density.spec.half_extent_x, density.spec.half_extent_y) - max(density.spec.dx, density.spec.dy)
    if not 0.0 < r < limit:
        raise ParameterError(MODULE, f"ring radius {r:.6g} m outside the grid (0, {limit:.6g})")
    if np.min(density.values) < 0.0:
        raise ParameterError(MODULE, "density has negative samples")
    profile = ring_samples(density, [r], n_phi, method=method)[0]
    ring_max = float(np.max(profile))
    field_max = float(np.max(density.values))
    if not ring_max > 1e-13 * field_max:
        raise DegenerateRingError(f"degenerate ring at r={r:.6g} m")
    return _count_circular_maxima(profile, 1e-9 * ring_max)
