"""Exact arithmetic for the extended Hermitian modular group over imaginary-quadratic fields."""

__version__ = "0.1.0"
