from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, InstanceOf, field_serializer, field_validator, model_validator

from ..ring import Polynomial, format_value


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class Grid(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_max: int = Field(12, ge=0)
    k_max: int = Field(6, ge=1)


class Witness(BaseModel):
    """First failing grid point, with both sides fully evaluated."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int
    k: int
    lhs: Union[InstanceOf[Fraction], InstanceOf[Polynomial]]
    rhs: Union[InstanceOf[Fraction], InstanceOf[Polynomial]]
    route: str = "direct"

    @field_validator("lhs", "rhs", mode="before")
    @classmethod
    def _exact(cls, value):
        return Fraction(value) if isinstance(value, int) else value

    @field_serializer("lhs", "rhs")
    def _render(self, value):
        return format_value(value)


class IdentityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    identity_id: str
    grid: Grid
    verdict: Verdict
    witness: Optional[Witness] = None
    checked: int = 0

    @model_validator(mode="after")
    def _verdict_matches_witness(self):
        if (self.verdict is Verdict.PASS) != (self.witness is None):
            raise ValueError("a report passes exactly when it carries no witness")
        return self

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "id": self.identity_id,
            "verdict": self.verdict.value,
            "grid": self.grid.model_dump(),
            "witness": self.witness.model_dump() if self.witness else None,
        }
