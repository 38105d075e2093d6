# common/errors.py
"""Exception hierarchy shared by every simulator module."""

from __future__ import annotations


class FerrisWheelError(Exception):
    """Base class for all simulator errors."""


class ParameterError(FerrisWheelError, ValueError):
    """A parameter record violates its invariants.

    The message is prefixed with the owning module so the CLI can attribute it.
    """

    def __init__(self, module: str, message: str):
        self.module = module
        super().__init__(f"[{module}] {message}")


class ConfigError(ParameterError):
    """Config file or override could not be parsed or validated."""


class NumericalValidityError(FerrisWheelError):
    """A numerical precondition failed (sampling, truncation, resonance)."""


class NonFiniteSampleError(NumericalValidityError):
    def __init__(self, x: float, y: float, r: float, phi: float):
        self.coordinate = (x, y)
        super().__init__(
            f"non-finite sample at x={x:.6g} m, y={y:.6g} m (r={r:.6g} m, phi={phi:.6g} rad)"
        )


class DegenerateRingError(NumericalValidityError):
    """Ring profile is identically zero."""


class NyquistError(NumericalValidityError):
    def __init__(self, fraction: float, band_low: float, band_high: float):
        self.fraction = fraction
        self.band = (band_low, band_high)
        super().__init__(
            f"Nyquist violation: spectral energy fraction {fraction:.3e} in band "
            f"|k| in [{band_low:.6g}, {band_high:.6g}] rad/m"
        )


class TruncationError(NumericalValidityError):
    def __init__(self, m_max: int, residual: float):
        self.m_max = m_max
        self.residual = residual
        super().__init__(
            f"m_max={m_max} too small: achieved Bessel sum-rule residual {residual:.3e}"
        )


class ResonanceCrossingError(NumericalValidityError):
    def __init__(self, m: int, radius: float):
        self.m = m
        self.radius = radius
        super().__init__(f"resonance crossing for order m={m} at r={radius:.6g} m")


class FocusNotFoundError(NumericalValidityError):
    """RMS radius has no interior minimum in the scanned range."""


class FieldFormatError(FerrisWheelError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
