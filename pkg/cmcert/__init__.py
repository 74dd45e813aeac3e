"""Certified genus-2 CM computations for cyclic quartic CM fields."""

__version__ = '0.1.0'
