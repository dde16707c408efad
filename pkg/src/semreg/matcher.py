"""Requirement formulas and component compatibility decisions.

A requirement constrains one attribute of a neighbouring App, written as
``<TypeName>.<AttributeName> <op> <number>``. Requirements are conjunctive:
a provider is compatible when every applicable requirement passes. A
requirement applies when its target type subsumes any of the provider's
declared software types or supported-device hardware types; requirements
aimed at unrelated types are reported separately and never fail the check.

Attribute values are compared as exact decimals: a provider declaring
FPS = 30 fails ``FPS > 30.0`` and passes ``FPS >= 30``, with no epsilon.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from typing import TYPE_CHECKING, Sequence

from .errors import ParseError
from .intervals import Interval, value_satisfies
from .ontology import COMPARISON_OPS
from .reasoner import ClassifiedOntology

if TYPE_CHECKING:  # pragma: no cover
    from .records import ComponentRecord

_REQUIREMENT_RE = re.compile(
    r"\s*(?P<type>[A-Za-z_][A-Za-z0-9_/-]*)\s*\.\s*(?P<attr>[A-Za-z_][A-Za-z0-9_/-]*)"
    r"\s*(?P<op>>=|<=|==|>|<)\s*(?P<value>[-+]?\d+(?:\.\d+)?)\s*$"
)


@dataclass(frozen=True)
class RequirementConstraint:
    target_type: str
    attribute: str
    op: str
    value: Decimal

    def __str__(self) -> str:
        return f"{self.target_type}.{self.attribute} {self.op} {self.value}"

    def interval(self, kind: str = "decimal") -> Interval:
        return Interval.from_constraint(self.op, self.value, kind)


def parse_requirement(text: str) -> RequirementConstraint:
    """Parses ``TypeName.Attribute op number`` into a constraint."""
    m = _REQUIREMENT_RE.fullmatch(text)
    if not m:
        raise ParseError(f"malformed requirement {text!r} (expected 'TypeName.Attribute op number')")
    op = m.group("op")
    if op not in COMPARISON_OPS:  # pragma: no cover - the regex is stricter
        raise ParseError(f"unknown comparison operator {op!r}")
    return RequirementConstraint(
        target_type=m.group("type"),
        attribute=m.group("attr"),
        op=op,
        value=Decimal(m.group("value")),
    )


@dataclass(frozen=True)
class CompatibilityCheck:
    constraint: RequirementConstraint
    subject: str
    observed: Decimal | None
    verdict: str  # "Pass" | "Fail"
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "constraint": str(self.constraint),
            "subject": self.subject,
            "observed": None if self.observed is None else str(self.observed),
            "verdict": self.verdict,
            "note": self.note,
        }


@dataclass(frozen=True)
class CompatibilityReport:
    """Outcome of matching one requirer against one provider.

    ``compatible`` holds exactly when every check passed; requirements whose
    target type matched none of the provider's types are listed in
    ``skipped`` and do not enter the conjunction.
    """

    requirer: str
    provider: str
    compatible: bool
    checks: tuple[CompatibilityCheck, ...] = ()
    skipped: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "requirer": self.requirer,
            "provider": self.provider,
            "compatible": self.compatible,
            "checks": [c.to_json_dict() for c in self.checks],
            "skipped": list(self.skipped),
        }

    def failures(self) -> tuple[CompatibilityCheck, ...]:
        return tuple(c for c in self.checks if c.verdict != "Pass")


def _provider_type_names(provider: "ComponentRecord") -> list[str]:
    names = list(provider.sw_types)
    for device in provider.supported_devices:
        names.extend(device.hw_types)
    return names


def _locate_attribute(provider: "ComponentRecord", attribute: str) -> tuple[Decimal | None, str]:
    """Finds an observed value: record attributes first, then each supported
    device in declaration order."""
    for av in provider.attributes:
        if av.attribute == attribute:
            return av.value, provider.id
    for index, device in enumerate(provider.supported_devices):
        for av in device.attributes:
            if av.attribute == attribute:
                label = device.model_name or f"device[{index}]"
                return av.value, f"{provider.id}/{label}"
    return None, provider.id


def check_compatibility(
    ctx: ClassifiedOntology,
    requirer: "ComponentRecord",
    provider: "ComponentRecord",
) -> CompatibilityReport:
    """Evaluates every requirement of the requirer against the provider.

    A requirement applies when its target type subsumes any of the
    provider's software types or device hardware types. An applicable
    requirement whose attribute the provider does not declare anywhere
    fails with note AttributeUnknown; a requirer with no applicable
    requirements is vacuously compatible.
    """
    checks: list[CompatibilityCheck] = []
    skipped: list[str] = []
    provider_types = _provider_type_names(provider)
    for text in requirer.requirements:
        constraint = parse_requirement(text)
        applicable = any(
            name in ctx.graph.subsumers and constraint.target_type in ctx.graph.subsumers_of(name)
            for name in provider_types
        )
        if not applicable:
            skipped.append(str(constraint))
            continue
        observed, subject = _locate_attribute(provider, constraint.attribute)
        if observed is None:
            checks.append(CompatibilityCheck(constraint, subject, None, "Fail", "AttributeUnknown"))
        elif value_satisfies(observed, constraint.op, constraint.value):
            checks.append(CompatibilityCheck(constraint, subject, observed, "Pass"))
        else:
            checks.append(
                CompatibilityCheck(constraint, subject, observed, "Fail", f"observed {observed} violates {constraint.op} {constraint.value}")
            )
    compatible = all(c.verdict == "Pass" for c in checks)
    return CompatibilityReport(
        requirer=requirer.id,
        provider=provider.id,
        compatible=compatible,
        checks=tuple(checks),
        skipped=tuple(skipped),
    )


def filter_candidates(
    ctx: ClassifiedOntology,
    requirer: "ComponentRecord",
    pool: Sequence["ComponentRecord"],
    keep_incompatible: bool = False,
) -> list[tuple["ComponentRecord", CompatibilityReport]]:
    """Providers from the pool that satisfy the requirer, with their reports.

    Results follow the registry ranking: Released before Prototype before
    Model, ties broken by id. With keep_incompatible=True the failing
    candidates stay in the list (for verbose inspection).
    """
    from .records import STATUS_RANK

    scored = []
    for candidate in pool:
        report = check_compatibility(ctx, requirer, candidate)
        if report.compatible or keep_incompatible:
            scored.append((candidate, report))
    scored.sort(key=lambda pair: (STATUS_RANK.get(pair[0].meta.status, 3), pair[0].id))
    return scored
