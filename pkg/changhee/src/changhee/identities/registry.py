import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

import yaml

from ..errors import UnknownIdentityError
from ..ring import Polynomial, RingElement, lift
from ..sequences import SequenceProvider
from .report import Grid, IdentityReport, Verdict, Witness

logger = logging.getLogger(__name__)

IDENTITIES_CONFIG = Path(__file__).resolve().parent.parent / "config" / "identities.yaml"

# rationals at which polynomial identities are also compared pointwise
SAMPLE_POINTS = (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(7, 3), Fraction(-5))

Sides = Iterable[Tuple[str, RingElement, RingElement]]


def values_agree(lhs: RingElement, rhs: RingElement) -> bool:
    """Exact equality; polynomials compare coefficient-wise."""
    if isinstance(lhs, Polynomial) or isinstance(rhs, Polynomial):
        lhs, rhs = lift(lhs, Polynomial), lift(rhs, Polynomial)
        exact = lhs == rhs
        pointwise = all(lhs(a) == rhs(a) for a in SAMPLE_POINTS)
        if exact and not pointwise:
            raise AssertionError(f"equal polynomials {lhs} evaluated differently")
        if pointwise != exact:
            logger.debug("pointwise sampling missed a difference between %s and %s", lhs, rhs)
        return exact
    return lhs == rhs


class IdentityCheck(ABC):
    """Base class for all identity checkers"""

    # first index n the identity is stated for
    n_start: int = 0

    @property
    @abstractmethod
    def category(self) -> str:
        """Return the family of the identity (first_kind, second_kind, inversion, ...)"""

    @abstractmethod
    def sides(self, n: int, k: int, provider: SequenceProvider, order: int) -> Sides:
        """Yield (route, lhs, rhs) triples that must agree at the grid point (n, k);
        series routes expand to t^order."""

    def verify(
        self, identity_id: str, grid: Grid, provider: SequenceProvider, truncation: Optional[int] = None
    ) -> IdentityReport:
        order = max(truncation if truncation is not None else grid.n_max + 4, grid.n_max)
        checked = 0
        for n in range(self.n_start, grid.n_max + 1):
            for k in range(1, grid.k_max + 1):
                for route, lhs, rhs in self.sides(n, k, provider, order):
                    checked += 1
                    if not values_agree(lhs, rhs):
                        return IdentityReport(
                            identity_id=identity_id,
                            grid=grid,
                            verdict=Verdict.FAIL,
                            witness=Witness(n=n, k=k, lhs=lhs, rhs=rhs, route=route),
                            checked=checked,
                        )
        return IdentityReport(identity_id=identity_id, grid=grid, verdict=Verdict.PASS, checked=checked)


class IdentityRegistry:
    """Registry for managing identity checkers"""

    def __init__(self, config_path: Path = IDENTITIES_CONFIG):
        self.identities: Dict[str, IdentityCheck] = {}
        with open(config_path, "r", encoding="utf-8") as f:
            self.identities_config: Dict[str, Dict[str, Any]] = yaml.safe_load(f) or {}
        self.identity_categories: Dict[str, List[str]] = {
            "first_kind": [],
            "first_kind_poly": [],
            "second_kind": [],
            "second_kind_poly": [],
            "inversion": [],
        }

    def register_identity(self, name: str, check: IdentityCheck, category: Optional[str] = None):
        """Register a new identity checker"""
        self.identities[name] = check
        category = category or check.category
        if category in self.identity_categories:
            self.identity_categories[category].append(name)

    def get_available_identities(self, category: Optional[str] = None) -> List[str]:
        """Registered ids in canonical order, optionally filtered by category"""
        names = [name for name in self.identities_config if name in self.identities]
        names += sorted(name for name in self.identities if name not in self.identities_config)
        if category:
            return [name for name in names if name in self.identity_categories.get(category, [])]
        return names

    def get_identity_info(self, name: str) -> Dict[str, Any]:
        if name not in self.identities:
            raise UnknownIdentityError(name)
        check = self.identities[name]
        return {
            "id": name,
            "category": check.category,
            "n_start": check.n_start,
            **self.identities_config.get(name, {}),
        }

    def execute_identity(
        self,
        name: str,
        grid: Grid,
        provider: Optional[SequenceProvider] = None,
        truncation: Optional[int] = None,
    ) -> IdentityReport:
        """Run a specific identity checker over the grid"""
        if name not in self.identities:
            raise UnknownIdentityError(name)
        return self.identities[name].verify(name, grid, provider or SequenceProvider(), truncation)


# Global registry instance
identity_registry = IdentityRegistry()
