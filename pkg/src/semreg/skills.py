"""Skill composition: wiring component instances into validated assemblies.

A skill instantiates stored records and connects Provides endpoints to
Requires endpoints of the same kind and message type. Skills nest: an
instance may refer to a record of kind Skill, whose exported endpoints are
named ``<inner-instance>/<inner-endpoint>`` so that flattening can rebind
outer connections onto the leaf instances. A validated skill can be
parameterized into a Solution: a flattened, self-contained descriptor with
bound parameters and pinned record versions.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from .errors import (
    CycleDetected,
    DirectionMismatch,
    MultiplicityViolation,
    NotFound,
    TypeMismatch,
    UnboundParameter,
    UnresolvedReference,
    ValidationErrorsPresent,
)
from .matcher import check_compatibility, parse_requirement
from .reasoner import ClassifiedOntology
from .records import ComponentRecord, InterfaceSpec, Violation
from .store import Store

COORDINATOR_TYPE = "Coordinator"


@dataclass(frozen=True)
class EndpointRef:
    """Addresses one endpoint of one instance inside a skill."""

    instance: str
    kind: str
    name: str

    def to_json_dict(self) -> dict:
        return {"instance": self.instance, "kind": self.kind, "name": self.name}

    @classmethod
    def from_json_dict(cls, data: dict) -> "EndpointRef":
        return cls(instance=data.get("instance", ""), kind=data.get("kind", ""), name=data.get("name", ""))

    def __str__(self) -> str:
        return f"{self.instance}.{self.name}({self.kind})"


@dataclass(frozen=True)
class Connection:
    source: EndpointRef  # a Provides endpoint
    target: EndpointRef  # a Requires endpoint

    def to_json_dict(self) -> dict:
        return {"from": self.source.to_json_dict(), "to": self.target.to_json_dict()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Connection":
        return cls(
            source=EndpointRef.from_json_dict(data.get("from", {})),
            target=EndpointRef.from_json_dict(data.get("to", {})),
        )


@dataclass(frozen=True)
class SkillGraph:
    instances: dict[str, str] = field(default_factory=dict)  # instance id -> record id
    connections: tuple[Connection, ...] = ()
    coordinator: str | None = None
    parameters: dict[str, dict[str, Any]] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "instances": dict(sorted(self.instances.items())),
            "connections": [c.to_json_dict() for c in self.connections],
            "coordinator": self.coordinator,
            "parameters": {k: dict(sorted(v.items())) for k, v in sorted(self.parameters.items())},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SkillGraph":
        return cls(
            instances=dict(data.get("instances", {})),
            connections=tuple(Connection.from_json_dict(c) for c in data.get("connections", ())),
            coordinator=data.get("coordinator"),
            parameters={k: dict(v) for k, v in data.get("parameters", {}).items()},
        )


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()
    unbound_parameters: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    @property
    def deployable(self) -> bool:
        """Ready to become a Solution: no errors and every parameter bound."""
        return not self.errors and not self.unbound_parameters

    def to_json_dict(self) -> dict:
        return {
            "errors": [v.to_json_dict() for v in self.errors],
            "warnings": [v.to_json_dict() for v in self.warnings],
            "unboundParameters": list(self.unbound_parameters),
        }


# ---------------------------------------------------------------------------
# Endpoint resolution & connecting
# ---------------------------------------------------------------------------

def _resolve_endpoint(store: Store, skill: SkillGraph, ref: EndpointRef, direction: str) -> InterfaceSpec:
    record_id = skill.instances.get(ref.instance)
    if record_id is None:
        raise UnresolvedReference(f"unknown instance '{ref.instance}'")
    try:
        record = store.get(record_id)
    except NotFound:
        raise UnresolvedReference(f"instance '{ref.instance}' refers to unknown record '{record_id}'")
    spec = record.find_endpoint(ref.kind, direction, ref.name)
    if spec is not None:
        return spec
    other = "Requires" if direction == "Provides" else "Provides"
    if record.find_endpoint(ref.kind, other, ref.name) is not None:
        raise DirectionMismatch(f"{ref} is a {other} endpoint, expected {direction}")
    raise UnresolvedReference(f"no {direction} {ref.kind} endpoint '{ref.name}' on instance '{ref.instance}'")


def connect(store: Store, skill: SkillGraph, source: EndpointRef, target: EndpointRef) -> SkillGraph:
    """Adds a connection after checking kind, direction, message type, and
    multiplicity; returns the extended skill."""
    source_spec = _resolve_endpoint(store, skill, source, "Provides")
    target_spec = _resolve_endpoint(store, skill, target, "Requires")
    if source.kind != target.kind:
        raise TypeMismatch(expected=target.kind, found=source.kind)
    if source_spec.message_type != target_spec.message_type:
        raise TypeMismatch(expected=target_spec.message_type, found=source_spec.message_type)
    for conn in skill.connections:
        if conn.source == source and conn.target == target:
            raise MultiplicityViolation(f"connection {source} -> {target} already exists")
    if target.kind in ("Service", "Action"):
        for conn in skill.connections:
            if conn.target == target:
                raise MultiplicityViolation(f"{target} already has a provider; {target.kind} endpoints take exactly one")
    return replace(skill, connections=skill.connections + (Connection(source, target),))


# ---------------------------------------------------------------------------
# Flattening
# ---------------------------------------------------------------------------

@dataclass
class _FlatParts:
    instances: dict[str, str]
    connections: list[Connection]
    parameters: dict[str, dict[str, Any]]


def _flatten_graph(
    store: Store,
    graph: SkillGraph,
    prefix: str,
    stack: tuple[str, ...],
    issues: list[Violation],
) -> _FlatParts:
    instances: dict[str, str] = {}
    nested: dict[str, tuple[ComponentRecord, _FlatParts]] = {}
    for iid in sorted(graph.instances):
        record_id = graph.instances[iid]
        try:
            record = store.get(record_id)
        except NotFound:
            raise UnresolvedReference(f"instance '{prefix}{iid}' refers to unknown record '{record_id}'")
        if record.kind == "Skill":
            if not record.skill_body:
                issues.append(Violation("unresolved_reference", f"skill record '{record_id}' has no body", f"{prefix}{iid}"))
                continue
            if record.skill_body in stack:
                raise CycleDetected([*stack, record.skill_body])
            try:
                body = SkillGraph.from_json_dict(store.get_skill(record.skill_body))
            except NotFound:
                issues.append(
                    Violation("unresolved_reference", f"skill body '{record.skill_body}' is not stored", f"{prefix}{iid}")
                )
                continue
            parts = _flatten_graph(store, body, f"{prefix}{iid}/", (*stack, record.skill_body), issues)
            nested[iid] = (record, parts)
            instances.update(parts.instances)
        else:
            instances[f"{prefix}{iid}"] = record_id

    connections: list[Connection] = []
    for _, parts in nested.values():
        connections.extend(parts.connections)

    def rebind(ref: EndpointRef, direction: str) -> EndpointRef | None:
        iid = ref.instance
        if iid not in graph.instances:
            issues.append(Violation("unresolved_reference", f"unknown instance '{iid}'", str(ref)))
            return None
        if iid not in nested:
            flat_id = f"{prefix}{iid}"
            if flat_id not in instances:  # instance dropped due to an earlier issue
                return None
            record = store.get(instances[flat_id])
            if record.find_endpoint(ref.kind, direction, ref.name) is None:
                issues.append(
                    Violation(
                        "unresolved_reference",
                        f"no {direction} {ref.kind} endpoint '{ref.name}' on '{flat_id}'",
                        str(ref),
                    )
                )
                return None
            return EndpointRef(flat_id, ref.kind, ref.name)
        record, parts = nested[iid]
        export = record.find_endpoint(ref.kind, direction, ref.name)
        if export is None:
            issues.append(
                Violation(
                    "unresolved_reference",
                    f"skill record '{record.id}' exports no {direction} {ref.kind} endpoint '{ref.name}'",
                    str(ref),
                )
            )
            return None
        inner_prefix = f"{prefix}{iid}/"
        relative = {key[len(inner_prefix):]: key for key in parts.instances}
        candidates = sorted((rel for rel in relative if ref.name.startswith(rel + "/")), key=len, reverse=True)
        for rel in candidates:
            endpoint_name = ref.name[len(rel) + 1:]
            inner_id = relative[rel]
            inner_record = store.get(parts.instances[inner_id])
            inner_spec = inner_record.find_endpoint(ref.kind, direction, endpoint_name)
            if inner_spec is None:
                continue
            if inner_spec.message_type != export.message_type:
                issues.append(
                    Violation(
                        "type_mismatch",
                        f"export '{ref.name}' declares {export.message_type} but inner endpoint carries {inner_spec.message_type}",
                        str(ref),
                    )
                )
                return None
            return EndpointRef(inner_id, ref.kind, endpoint_name)
        issues.append(
            Violation(
                "unresolved_reference",
                f"export '{ref.name}' of '{record.id}' does not resolve to an inner endpoint",
                str(ref),
            )
        )
        return None

    for conn in graph.connections:
        source = rebind(conn.source, "Provides")
        target = rebind(conn.target, "Requires")
        if source is not None and target is not None:
            connections.append(Connection(source, target))

    parameters: dict[str, dict[str, Any]] = {}
    for _, parts in nested.values():
        for key, values in parts.parameters.items():
            parameters.setdefault(key, {}).update(values)
    # Outer keys may address nested leaves by path (e.g. "locz/loc").
    for key, values in graph.parameters.items():
        parameters.setdefault(f"{prefix}{key}", {}).update(values)
    return _FlatParts(instances=instances, connections=connections, parameters=parameters)


def flatten(store: Store, skill: SkillGraph) -> SkillGraph:
    """Inlines all nested skills; outer connections are rebound onto the
    inner endpoints their export names point at."""
    issues: list[Violation] = []
    parts = _flatten_graph(store, skill, "", (), issues)
    if issues:
        raise UnresolvedReference("; ".join(str(v) for v in issues))
    # A top-level leaf coordinator keeps its id; a skill-instance coordinator
    # dissolves with its instance.
    coordinator = skill.coordinator if skill.coordinator in parts.instances else None
    return SkillGraph(
        instances=parts.instances,
        connections=tuple(parts.connections),
        coordinator=coordinator,
        parameters=parts.parameters,
    )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_skill(ctx: ClassifiedOntology, store: Store, skill: SkillGraph) -> ValidationReport:
    """Full validation: connection typing, multiplicity, unbound Requires
    endpoints, pairwise requirement compatibility on the flattened graph,
    nesting cycles, and coordinator presence.

    Only structural resolution failures raise; everything else lands in the
    report, which is data for the caller rather than a transport failure.
    """
    errors: list[Violation] = []
    warnings: list[Violation] = []

    # Nested-level connection checks against the declared (exported) endpoints.
    seen_connections: set[tuple] = set()
    provider_count: dict[tuple, int] = {}
    for conn in skill.connections:
        specs: list[InterfaceSpec] = []
        for ref, direction in ((conn.source, "Provides"), (conn.target, "Requires")):
            record_id = skill.instances.get(ref.instance)
            if record_id is None:
                errors.append(Violation("unresolved_reference", f"unknown instance '{ref.instance}'", str(ref)))
                continue
            record = store.get(record_id)
            spec = record.find_endpoint(ref.kind, direction, ref.name)
            if spec is None:
                other = "Requires" if direction == "Provides" else "Provides"
                if record.find_endpoint(ref.kind, other, ref.name) is not None:
                    errors.append(Violation("direction_mismatch", f"{ref} is a {other} endpoint, expected {direction}", str(ref)))
                else:
                    errors.append(
                        Violation("unresolved_reference", f"no {direction} {ref.kind} endpoint '{ref.name}' on '{ref.instance}'", str(ref))
                    )
                continue
            specs.append(spec)
        if len(specs) == 2:
            if conn.source.kind != conn.target.kind:
                errors.append(
                    Violation("type_mismatch", f"cannot join a {conn.source.kind} to a {conn.target.kind}", f"{conn.source} -> {conn.target}")
                )
            elif specs[0].message_type != specs[1].message_type:
                errors.append(
                    Violation(
                        "type_mismatch",
                        f"message type {specs[0].message_type} does not match {specs[1].message_type}",
                        f"{conn.source} -> {conn.target}",
                    )
                )
        key = (conn.source, conn.target)
        if key in seen_connections:
            errors.append(Violation("multiplicity_violation", "duplicate connection", f"{conn.source} -> {conn.target}"))
        seen_connections.add(key)
        if conn.target.kind in ("Service", "Action"):
            tkey = (conn.target.instance, conn.target.kind, conn.target.name)
            provider_count[tkey] = provider_count.get(tkey, 0) + 1
    for (instance, kind, name), count in sorted(provider_count.items()):
        if count > 1:
            errors.append(
                Violation("multiplicity_violation", f"{kind} endpoint '{name}' has {count} providers; exactly one is allowed", instance)
            )

    # Nesting cycles and flattening.
    flat: SkillGraph | None = None
    try:
        issues: list[Violation] = []
        parts = _flatten_graph(store, skill, "", (), issues)
        errors.extend(issues)
        flat = SkillGraph(
            instances=parts.instances,
            connections=tuple(parts.connections),
            coordinator=skill.coordinator if skill.coordinator in parts.instances else None,
            parameters=parts.parameters,
        )
    except CycleDetected as cycle:
        errors.append(Violation("nesting_cycle", str(cycle)))

    unbound_parameters: list[str] = []
    if flat is not None:
        bound_targets = {(c.target.instance, c.target.kind, c.target.name) for c in flat.connections}
        bound_sources = {(c.source.instance, c.source.kind, c.source.name) for c in flat.connections}
        for iid in sorted(flat.instances):
            record = store.get(flat.instances[iid])
            for spec in record.endpoints("Requires"):
                if (iid, spec.kind, spec.name) not in bound_targets:
                    errors.append(
                        Violation("unbound_requires", f"Requires {spec.kind} '{spec.name}' ({spec.message_type}) is not connected", iid)
                    )
            for spec in record.endpoints("Provides"):
                if (iid, spec.kind, spec.name) not in bound_sources:
                    warnings.append(
                        Violation("unconnected_provides", f"Provides {spec.kind} '{spec.name}' ({spec.message_type}) is not connected", iid)
                    )
            for key in record.parameters:
                if key not in flat.parameters.get(iid, {}):
                    unbound_parameters.append(f"{iid}.{key}")

        pairs: set[tuple[str, str]] = set()
        for conn in flat.connections:
            a, b = conn.source.instance, conn.target.instance
            if a != b:
                pairs.add((min(a, b), max(a, b)))
        for a, b in sorted(pairs):
            for requirer_id, provider_id in ((a, b), (b, a)):
                requirer = store.get(flat.instances[requirer_id])
                provider = store.get(flat.instances[provider_id])
                report = check_compatibility(ctx, requirer, provider)
                for check in report.failures():
                    errors.append(
                        Violation(
                            "requirement_violation",
                            f"'{requirer_id}' requires {check.constraint}; "
                            + ("attribute not declared by provider" if check.note == "AttributeUnknown" else f"observed {check.observed}"),
                            f"{requirer_id} -> {provider_id}",
                        )
                    )

    # Coordinator designation.
    if skill.coordinator is not None:
        record_id = skill.instances.get(skill.coordinator)
        if record_id is None:
            errors.append(Violation("unresolved_reference", f"coordinator '{skill.coordinator}' is not an instance"))
        else:
            record = store.get(record_id)
            if not _carries_coordinator_type(ctx, record):
                errors.append(
                    Violation("bad_coordinator", f"instance '{skill.coordinator}' does not carry the {COORDINATOR_TYPE} software type")
                )
    else:
        leaf_count = 0
        for iid, record_id in skill.instances.items():
            try:
                if store.get(record_id).kind != "Skill":
                    leaf_count += 1
            except NotFound:
                pass
        if leaf_count > 1:
            warnings.append(Violation("missing_coordinator", "more than one component instance and no coordinator designated"))

    return ValidationReport(
        errors=tuple(errors),
        warnings=tuple(warnings),
        unbound_parameters=tuple(sorted(unbound_parameters)),
    )


def _carries_coordinator_type(ctx: ClassifiedOntology, record: ComponentRecord) -> bool:
    for sw_type in record.sw_types:
        if sw_type == COORDINATOR_TYPE:
            return True
        if (
            COORDINATOR_TYPE in ctx.tbox.concepts
            and sw_type in ctx.graph.subsumers
            and COORDINATOR_TYPE in ctx.graph.subsumers_of(sw_type)
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# Interchangeability
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterchangeabilityResult:
    interchangeable: bool
    reasons: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "interchangeable": self.interchangeable,
            "reasons": [v.to_json_dict() for v in self.reasons],
            "warnings": [v.to_json_dict() for v in self.warnings],
        }


def _endpoint_set(record: ComponentRecord, direction: str) -> set[tuple[str, str]]:
    return {(spec.kind, spec.message_type) for spec in record.endpoints(direction)}


def check_interchangeable(
    ctx: ClassifiedOntology,
    incumbent: ComponentRecord,
    replacement: ComponentRecord,
) -> InterchangeabilityResult:
    """Decides whether replacement can stand in for incumbent.

    Clauses: (a) each incumbent software type subsumes some replacement
    type, so functionality is preserved; (b) the replacement provides at
    least the incumbent's provided endpoints, matched by kind and message
    type (names are vendor-specific); (c) the replacement requires no more
    than the incumbent did; (d) on shared (targetType, attribute) pairs the
    replacement's requirements are no stricter. Requirements the incumbent
    never stated are ignored with a warning.
    """
    reasons: list[Violation] = []
    warnings: list[Violation] = []

    for incumbent_type in incumbent.sw_types:
        ok = any(
            replacement_type in ctx.graph.subsumers and incumbent_type in ctx.graph.subsumers_of(replacement_type)
            for replacement_type in replacement.sw_types
        )
        if not ok:
            reasons.append(
                Violation("functionality", f"no replacement type is subsumed by incumbent type '{incumbent_type}'")
            )

    missing_provides = _endpoint_set(incumbent, "Provides") - _endpoint_set(replacement, "Provides")
    for kind, message_type in sorted(missing_provides):
        reasons.append(Violation("provides", f"replacement does not provide a {kind} of type {message_type}"))

    extra_requires = _endpoint_set(replacement, "Requires") - _endpoint_set(incumbent, "Requires")
    for kind, message_type in sorted(extra_requires):
        reasons.append(Violation("requires", f"replacement additionally requires a {kind} of type {message_type}"))

    incumbent_reqs = {(c.target_type, c.attribute): c for c in map(parse_requirement, incumbent.requirements)}
    for constraint in map(parse_requirement, replacement.requirements):
        key = (constraint.target_type, constraint.attribute)
        counterpart = incumbent_reqs.get(key)
        if counterpart is None:
            warnings.append(
                Violation("requirements", f"replacement constrains {key[0]}.{key[1]}, which the incumbent did not; ignored")
            )
            continue
        kind = ctx.tbox.attributes.get(constraint.attribute, "decimal")
        if not counterpart.interval(kind).is_subset_of(constraint.interval(kind)):
            reasons.append(
                Violation(
                    "requirements",
                    f"replacement requirement '{constraint}' is stricter than incumbent '{counterpart}'",
                )
            )

    return InterchangeabilityResult(
        interchangeable=not reasons,
        reasons=tuple(reasons),
        warnings=tuple(warnings),
    )


def substitute(store: Store, skill: SkillGraph, instance_id: str, replacement_id: str) -> SkillGraph:
    """Swaps one instance's record, rebinding its connections by kind and
    message type (endpoint names differ across vendors). Connections into
    Requires endpoints the replacement no longer has are dropped."""
    if instance_id not in skill.instances:
        raise UnresolvedReference(f"unknown instance '{instance_id}'")
    old = store.get(skill.instances[instance_id])
    new = store.get(replacement_id)

    def matching_endpoint(direction: str, kind: str, message_type: str) -> InterfaceSpec | None:
        candidates = [s for s in new.endpoints(direction) if s.kind == kind and s.message_type == message_type]
        return min(candidates, key=lambda s: s.name, default=None)

    connections: list[Connection] = []
    for conn in skill.connections:
        source, target = conn.source, conn.target
        if source.instance == instance_id:
            old_spec = old.find_endpoint(source.kind, "Provides", source.name)
            new_spec = matching_endpoint("Provides", source.kind, old_spec.message_type) if old_spec else None
            if new_spec is None:
                continue
            source = EndpointRef(instance_id, source.kind, new_spec.name)
        if target.instance == instance_id:
            old_spec = old.find_endpoint(target.kind, "Requires", target.name)
            new_spec = matching_endpoint("Requires", target.kind, old_spec.message_type) if old_spec else None
            if new_spec is None:
                continue  # the replacement dropped this need
            target = EndpointRef(instance_id, target.kind, new_spec.name)
        connections.append(Connection(source, target))

    instances = dict(skill.instances)
    instances[instance_id] = replacement_id
    return replace(skill, instances=instances, connections=tuple(connections))


# ---------------------------------------------------------------------------
# Solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    """A flattened, fully parameterized skill pinned to record versions."""

    graph: SkillGraph
    parameters: dict[str, dict[str, Any]]
    resolved_versions: dict[str, dict[str, str]]

    def to_json_dict(self) -> dict:
        doc = self.graph.to_json_dict()
        doc["parameters"] = {k: dict(sorted(v.items())) for k, v in sorted(self.parameters.items())}
        doc["resolvedVersions"] = {k: dict(v) for k, v in sorted(self.resolved_versions.items())}
        return doc

    @classmethod
    def from_json_dict(cls, data: dict) -> "Solution":
        graph = SkillGraph.from_json_dict(data)
        return cls(
            graph=graph,
            parameters={k: dict(v) for k, v in data.get("parameters", {}).items()},
            resolved_versions={k: dict(v) for k, v in data.get("resolvedVersions", {}).items()},
        )


def parameterize(
    ctx: ClassifiedOntology,
    store: Store,
    skill: SkillGraph,
    parameters: dict[str, dict[str, Any]] | None = None,
) -> Solution:
    """Turns a validation-clean skill into a Solution descriptor.

    Raises ValidationErrorsPresent when the skill has errors and
    UnboundParameter when any parameter a flat instance's record declares
    stays unbound after merging the given values over the skill's own.
    """
    report = validate_skill(ctx, store, skill)
    if report.errors:
        raise ValidationErrorsPresent(report)
    flat = flatten(store, skill)
    bound: dict[str, dict[str, Any]] = {k: dict(v) for k, v in flat.parameters.items()}
    for key, values in (parameters or {}).items():
        bound.setdefault(key, {}).update(values)
    missing: list[str] = []
    resolved: dict[str, dict[str, str]] = {}
    for iid in sorted(flat.instances):
        record = store.get(flat.instances[iid])
        for key in record.parameters:
            if key not in bound.get(iid, {}):
                missing.append(f"{iid}.{key}")
        resolved[iid] = {"record": record.id, "version": record.meta.version}
    if missing:
        raise UnboundParameter(sorted(missing))
    bound = {k: v for k, v in bound.items() if v}
    return Solution(graph=replace(flat, parameters={}), parameters=bound, resolved_versions=resolved)
