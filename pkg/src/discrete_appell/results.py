"""Identity identifiers and check results shared by all checkers."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any


class Variant(str, enum.Enum):
    V1 = "V1"
    V2 = "V2"
    V3 = "V3"


class Family(str, enum.Enum):
    DIFF_FORMULA = "DiffFormula"
    DIFF_OP_FORMULA = "DiffOpFormula"
    FINITE_SUM = "FiniteSum"
    INFINITE_SUM = "InfiniteSum"
    RECURSION = "Recursion"
    LADDER_DIFFERENTIAL = "LadderDifferential"
    LADDER_DIFFERENCE = "LadderDifference"
    PAIRWISE_DIFFERENTIAL = "PairwiseDifferential"
    PAIRWISE_DIFFERENCE = "PairwiseDifference"
    REDUCTION = "Reduction"
    HUMBERT_LIMIT = "HumbertLimit"
    INTEGRAL_REP = "IntegralRep"
    DIFFERENCE_EQ = "DifferenceEq"


FAMILY_ORDER = {f: i for i, f in enumerate(Family)}


@dataclass(frozen=True)
class IdentityId:
    family: Family
    variant: Variant
    detail: str

    def __str__(self) -> str:
        return f"{self.family.value}/{self.variant.value}/{self.detail}"

    def sort_key(self):
        return (FAMILY_ORDER[self.family], self.variant.value, self.detail)


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def format_complex(z: complex) -> str:
    """Render ``z`` as ``re`` or ``re+imi`` (the literal syntax the CLI parses)."""
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


@dataclass
class IdentityCheckResult:
    id: IdentityId
    point: dict[str, Any]
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    tolerance: float
    passed: bool
    notes: str = ""

    @classmethod
    def from_sides(
        cls,
        id: IdentityId,
        point: dict[str, Any],
        lhs: complex,
        rhs: complex,
        tolerance: float,
        notes: str = "",
        scale: float | None = None,
    ) -> "IdentityCheckResult":
        """Residual |lhs - rhs|, relative to ``scale`` or else to max(|lhs|, |rhs|)."""
        lhs, rhs = complex(lhs), complex(rhs)
        ab = abs(lhs - rhs)
        if scale is None:
            scale = max(abs(lhs), abs(rhs))
        rel = ab / scale if scale > 0 else ab
        passed = bool(math.isfinite(rel) and rel <= tolerance)
        return cls(id, point, lhs, rhs, ab, rel, tolerance, passed, notes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": str(self.id),
            "point": self.point,
            "lhs": complex_pair(self.lhs),
            "rhs": complex_pair(self.rhs),
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "passed": self.passed,
            "notes": self.notes,
        }
