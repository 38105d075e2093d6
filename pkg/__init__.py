# atom_ferris_wheel/__init__.py
"""
Atomic Ferris Wheel Beams

Spiral light masks, thin-mask phase imprints on cold-atom packets, atom
vortex diffraction orders and their Ferris wheel superpositions.
"""

__version__ = "0.1.0"
