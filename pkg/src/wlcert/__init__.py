"""Exact computation of C2/C3-equivalence, cospectrality, fractional isomorphism,
controllability and distance-regularity for small finite graphs."""

__version__ = "0.1.0"
