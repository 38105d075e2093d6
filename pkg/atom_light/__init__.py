# atom_light/__init__.py
"""Two-level atom coupling to the light mask."""
