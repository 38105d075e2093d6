# diffraction/__init__.py
"""Matter-wave pipeline from the released packet to the Ferris wheel density."""
