"""Exact interval arithmetic over decimal attribute constraints.

Attribute values are decimal.Decimal throughout; no binary floating point
enters the constraint domain, so boundary comparisons like 30 vs 30.0 are
exact. Attributes declared ``int`` get integer semantics: strict bounds are
tightened to the nearest integer (``> 30`` becomes ``>= 31``), which makes
entailment agree with exhaustive integer-witness checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, ROUND_CEILING, ROUND_FLOOR

from .ontology import COMPARISON_OPS


def value_satisfies(value: Decimal, op: str, bound: Decimal) -> bool:
    if op == ">=":
        return value >= bound
    if op == ">":
        return value > bound
    if op == "<=":
        return value <= bound
    if op == "<":
        return value < bound
    if op == "==":
        return value == bound
    raise ValueError(f"unknown comparison operator {op!r}")


def _ceil(value: Decimal) -> Decimal:
    return value.to_integral_value(rounding=ROUND_CEILING)


def _floor(value: Decimal) -> Decimal:
    return value.to_integral_value(rounding=ROUND_FLOOR)


@dataclass(frozen=True)
class Interval:
    """Solution set of a conjunction of comparisons on one attribute.

    Bounds are optional; a strict flag accompanies each. ``kind`` is the
    attribute's declared value kind and fixes whether the domain is dense.
    """

    kind: str = "decimal"
    lower: Decimal | None = None
    lower_strict: bool = False
    upper: Decimal | None = None
    upper_strict: bool = False

    def __post_init__(self):
        if self.kind not in ("int", "decimal"):
            raise ValueError(f"unknown value kind {self.kind!r}")
        if self.kind == "int":
            # Tighten to inclusive integral bounds.
            lo, los, up, ups = self.lower, self.lower_strict, self.upper, self.upper_strict
            if lo is not None:
                lo = _floor(lo) + 1 if (los and lo == _floor(lo)) else _ceil(lo)
                los = False
            if up is not None:
                up = _ceil(up) - 1 if (ups and up == _ceil(up)) else _floor(up)
                ups = False
            object.__setattr__(self, "lower", lo)
            object.__setattr__(self, "lower_strict", los)
            object.__setattr__(self, "upper", up)
            object.__setattr__(self, "upper_strict", ups)

    @classmethod
    def from_constraint(cls, op: str, value: Decimal, kind: str = "decimal") -> "Interval":
        if op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison operator {op!r}")
        if op == ">=":
            return cls(kind, lower=value)
        if op == ">":
            return cls(kind, lower=value, lower_strict=True)
        if op == "<=":
            return cls(kind, upper=value)
        if op == "<":
            return cls(kind, upper=value, upper_strict=True)
        return cls(kind, lower=value, upper=value)

    @property
    def is_empty(self) -> bool:
        if self.lower is None or self.upper is None:
            return False
        if self.lower > self.upper:
            return True
        if self.lower == self.upper and (self.lower_strict or self.upper_strict):
            return True
        return False

    @property
    def equality(self) -> Decimal | None:
        """The single admitted value, when the interval is a point."""
        if (
            self.lower is not None
            and self.upper is not None
            and self.lower == self.upper
            and not self.lower_strict
            and not self.upper_strict
        ):
            return self.lower
        return None

    def intersect(self, other: "Interval") -> "Interval":
        if self.kind != other.kind:
            raise ValueError("cannot intersect intervals of different kinds")
        lo, los = self.lower, self.lower_strict
        if other.lower is not None and (lo is None or other.lower > lo or (other.lower == lo and other.lower_strict)):
            lo, los = other.lower, other.lower_strict
        up, ups = self.upper, self.upper_strict
        if other.upper is not None and (up is None or other.upper < up or (other.upper == up and other.upper_strict)):
            up, ups = other.upper, other.upper_strict
        return Interval(self.kind, lo, los, up, ups)

    def contains(self, value: Decimal) -> bool:
        if self.lower is not None:
            if value < self.lower or (value == self.lower and self.lower_strict):
                return False
        if self.upper is not None:
            if value > self.upper or (value == self.upper and self.upper_strict):
                return False
        if self.kind == "int" and value != _floor(value):
            return False
        return True

    def is_subset_of(self, other: "Interval") -> bool:
        """Set containment: every admitted value of self lies in other.

        The empty set is a subset of everything; this keeps entailment
        monotone under constraint tightening (an unsatisfiable constraint
        set is flagged via is_empty, not by flipping decisions).
        """
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        if other.lower is not None:
            if self.lower is None:
                return False
            if self.lower < other.lower:
                return False
            if self.lower == other.lower and other.lower_strict and not self.lower_strict:
                return False
        if other.upper is not None:
            if self.upper is None:
                return False
            if self.upper > other.upper:
                return False
            if self.upper == other.upper and other.upper_strict and not self.upper_strict:
                return False
        return True

    def entails(self, op: str, value: Decimal) -> bool:
        """True iff every admitted value satisfies ``op value``."""
        return self.is_subset_of(Interval.from_constraint(op, value, self.kind))
