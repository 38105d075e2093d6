# common/__init__.py
"""Sampling grids, errors, configuration and file output shared by all modules."""
