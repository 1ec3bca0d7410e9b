"""Cubic-transformation cipher with rank bits, oblivious transfer and oblivious DH key exchange."""

__version__ = "0.1.0"
