"""Exact computer algebra for dot-bracket superalgebras over Grassmann algebras."""

__version__ = "0.1.0"
