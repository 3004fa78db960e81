"""Effective Brauer-Manin computations at desk scale."""

__version__ = "0.1.0"
