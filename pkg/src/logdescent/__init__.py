"""Isogeny descent on elliptic curves over quadratic fields via the
logarithmic class group pairing."""

__version__ = "0.1.0"
