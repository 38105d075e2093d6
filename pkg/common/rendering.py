# common/rendering.py
"""Image output for real fields: 16-bit PGM always, colormapped PNG on request."""

from __future__ import annotations

import logging
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib import image as mpimg

from .errors import ParameterError
from .grid import ComplexField2D

logger = logging.getLogger(__name__)

MODULE = "core_grid"
MAX_LEVEL = 65535


def normalize_image(values: np.ndarray, gamma: float = 1.0) -> np.ndarray:
    """Linear min-max map to [0, 1] followed by x**gamma; a flat field maps to 0.5."""
    if not gamma > 0:
        raise ParameterError(MODULE, f"gamma must be > 0, got {gamma!r}")
    low, high = float(np.min(values)), float(np.max(values))
    if high == low:
        logger.warning(f"image range is degenerate (all samples = {low:.6g}); writing uniform mid-gray")
        return np.full(values.shape, 0.5)
    return ((values - low) / (high - low)) ** gamma


def _display_rows(values: np.ndarray) -> np.ndarray:
    # storage row 0 is the most negative y; images put +y at the top
    return np.flipud(values)


def pgm_bytes(F: ComplexField2D, gamma: float = 1.0) -> bytes:
    levels = np.round(normalize_image(F.values, gamma) * MAX_LEVEL).astype(">u2")
    header = f"P5\n{F.spec.nx} {F.spec.ny}\n{MAX_LEVEL}\n".encode("ascii")
    return header + _display_rows(levels).tobytes()


def render_image(
    F: ComplexField2D,
    path: str | Path,
    colormap: str = "viridis",
    gamma: float = 1.0,
    fmt: str = "pgm",
) -> Path:
    if not F.is_real:
        raise ParameterError(MODULE, f"cannot render complex field '{F.quantity}'; take a density first")
    path = Path(path)
    if fmt == "pgm":
        path.write_bytes(pgm_bytes(F, gamma))
    elif fmt == "png":
        try:
            cmap = matplotlib.colormaps[colormap]
        except KeyError:
            raise ParameterError(MODULE, f"unknown colormap {colormap!r}") from None
        mpimg.imsave(
            path,
            _display_rows(normalize_image(F.values, gamma)),
            cmap=cmap,
            vmin=0.0,
            vmax=1.0,
            format="png",
            metadata={"Software": None},
        )
    else:
        raise ParameterError(MODULE, f"unknown image format {fmt!r}")
    logger.debug(f"rendered {F.quantity} to {path}")
    return path
