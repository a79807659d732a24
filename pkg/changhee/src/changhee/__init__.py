"""
changhee: exact higher-order Changhee and Euler numbers and polynomials,
truncated power series over Q and Q[x], and a registry of identity checkers.
"""

# Importing the identities package registers every checker
from . import identities

__version__ = "0.1.0"
