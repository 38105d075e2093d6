# optics/__init__.py
"""Laguerre-Gaussian and Gaussian beams, the thin lens and the spiral light mask."""
