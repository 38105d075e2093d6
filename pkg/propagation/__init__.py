# propagation/__init__.py
"""Paraxial free-space propagation and focal-plane search."""
