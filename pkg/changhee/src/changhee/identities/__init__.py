"""
Identity checkers and their registry
"""

# Import registry first
from .registry import IdentityCheck, identity_registry

# Import all checker modules to ensure they register themselves
from . import first_kind, first_kind_poly, second_kind, second_kind_poly, inversion
