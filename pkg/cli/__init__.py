# cli/__init__.py
"""Command-line interface for the Ferris wheel simulator."""
