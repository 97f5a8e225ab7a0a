"""Explicit spectral representations of the sinc-kernel Wiener-Hopf operator
and related integral operators, with numerical verification of their identities."""

__version__ = "0.1.0"
