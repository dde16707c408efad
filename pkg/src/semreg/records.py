"""Component record model: the semantic description of one App.

A record bundles meta information, software types, non-type-specific
capabilities/interfaces/attributes, requirements on neighbouring Apps, and
(for hardware access components) the supported devices and their low-level
interfaces. Records are registered into the reasoner as named concepts so
that discovery queries run entirely inside the TBox.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from decimal import Decimal, InvalidOperation
from typing import Any, Iterable, Sequence

from . import matcher
from .errors import EmptyTypeList, UndeclaredIdentifier
from .ontology import (
    AttributeRestriction,
    Axiom,
    Existential,
    NamedConcept,
    TBox,
    is_identifier,
)
from .reasoner import CAPABILITY_ROLE, ClassifiedOntology

RECORD_KINDS = ("SWComponent", "HAComponent", "Skill")
STATUSES = ("Model", "Prototype", "Released")
# Search ranking: released components first, bare models last.
STATUS_RANK = {"Released": 0, "Prototype": 1, "Model": 2}

INTERFACE_KINDS = ("Topic", "Service", "Action")
DIRECTIONS = ("Provides", "Requires")

# Reasoner-facing vocabulary used when records are indexed as concepts.
ROOT_CONCEPT = "Component"
DEVICE_ROLE = "supportsDevice"
ATTRIBUTE_ROLE = "hasAttribute"
INTERFACE_ROLES = {
    "providesTopic": ("Topic", "Provides"),
    "requiresTopic": ("Topic", "Requires"),
    "providesService": ("Service", "Provides"),
    "requiresService": ("Service", "Requires"),
    "providesAction": ("Action", "Provides"),
    "requiresAction": ("Action", "Requires"),
}
ROLE_FOR_ENDPOINT = {(kind, direction): role for role, (kind, direction) in INTERFACE_ROLES.items()}

_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")
_VERSION_RE = re.compile(r"\d+\.\d+\.\d+(?:[-+][0-9A-Za-z.-]+)?")
_RFC3339_RE = re.compile(r"\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(?:\.\d+)?(?:Z|[+-]\d{2}:\d{2})")


def canonical_json(payload: Any) -> str:
    """Deterministic JSON used everywhere a byte-stable document is promised."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _decimal(value: Any) -> Decimal:
    if isinstance(value, Decimal):
        return value
    try:
        return Decimal(str(value))
    except InvalidOperation as exc:
        raise ValueError(f"not a decimal value: {value!r}") from exc


@dataclass(frozen=True)
class MetaInfo:
    author: str = ""
    owner: str = ""
    created_at: str = ""
    version: str = ""
    description: str = ""
    status: str = "Model"

    def to_json_dict(self) -> dict:
        return {
            "author": self.author,
            "owner": self.owner,
            "createdAt": self.created_at,
            "version": self.version,
            "description": self.description,
            "status": self.status,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MetaInfo":
        return cls(
            author=data.get("author", ""),
            owner=data.get("owner", ""),
            created_at=data.get("createdAt", ""),
            version=data.get("version", ""),
            description=data.get("description", ""),
            status=data.get("status", "Model"),
        )


@dataclass(frozen=True)
class InterfaceSpec:
    kind: str
    direction: str
    name: str
    message_type: str

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.kind, self.direction, self.name)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "direction": self.direction, "name": self.name, "messageType": self.message_type}

    @classmethod
    def from_json_dict(cls, data: dict) -> "InterfaceSpec":
        return cls(
            kind=data.get("kind", ""),
            direction=data.get("direction", ""),
            name=data.get("name", ""),
            message_type=data.get("messageType", ""),
        )


@dataclass(frozen=True)
class AttributeValue:
    attribute: str
    value: Decimal

    def to_json_dict(self) -> dict:
        return {"attribute": self.attribute, "value": str(self.value)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "AttributeValue":
        return cls(attribute=data.get("attribute", ""), value=_decimal(data.get("value", "0")))


@dataclass(frozen=True)
class DeviceSpec:
    manufacturer: str = ""
    model_name: str = ""
    model_number: str = ""
    hw_types: tuple[str, ...] = ()
    attributes: tuple[AttributeValue, ...] = ()
    geometry_model_ref: str | None = None
    simulation_model_ref: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "manufacturer": self.manufacturer,
            "modelName": self.model_name,
            "modelNumber": self.model_number,
            "hwTypes": list(self.hw_types),
            "attributes": [a.to_json_dict() for a in self.attributes],
            "geometryModelRef": self.geometry_model_ref,
            "simulationModelRef": self.simulation_model_ref,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DeviceSpec":
        return cls(
            manufacturer=data.get("manufacturer", ""),
            model_name=data.get("modelName", ""),
            model_number=data.get("modelNumber", ""),
            hw_types=tuple(data.get("hwTypes", ())),
            attributes=tuple(AttributeValue.from_json_dict(a) for a in data.get("attributes", ())),
            geometry_model_ref=data.get("geometryModelRef"),
            simulation_model_ref=data.get("simulationModelRef"),
        )


@dataclass(frozen=True)
class HWInterfaceSpec:
    medium: str
    protocol: str

    def to_json_dict(self) -> dict:
        return {"medium": self.medium, "protocol": self.protocol}

    @classmethod
    def from_json_dict(cls, data: dict) -> "HWInterfaceSpec":
        return cls(medium=data.get("medium", ""), protocol=data.get("protocol", ""))


@dataclass(frozen=True)
class NonTypeSpecific:
    capabilities: tuple[str, ...] = ()
    interfaces: tuple[InterfaceSpec, ...] = ()
    attributes: tuple[AttributeValue, ...] = ()
    parameters: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "capabilities": list(self.capabilities),
            "interfaces": [i.to_json_dict() for i in self.interfaces],
            "attributes": [a.to_json_dict() for a in self.attributes],
            "parameters": list(self.parameters),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "NonTypeSpecific":
        return cls(
            capabilities=tuple(data.get("capabilities", ())),
            interfaces=tuple(InterfaceSpec.from_json_dict(i) for i in data.get("interfaces", ())),
            attributes=tuple(AttributeValue.from_json_dict(a) for a in data.get("attributes", ())),
            parameters=tuple(data.get("parameters", ())),
        )


@dataclass(frozen=True)
class ComponentRecord:
    id: str = ""
    meta: MetaInfo = field(default_factory=MetaInfo)
    kind: str = "SWComponent"
    sw_types: tuple[str, ...] = ()
    non_type_specific: NonTypeSpecific = field(default_factory=NonTypeSpecific)
    requirements: tuple[str, ...] = ()
    supported_devices: tuple[DeviceSpec, ...] = ()
    hw_interfaces: tuple[HWInterfaceSpec, ...] = ()
    skill_body: str | None = None

    @property
    def interfaces(self) -> tuple[InterfaceSpec, ...]:
        return self.non_type_specific.interfaces

    @property
    def attributes(self) -> tuple[AttributeValue, ...]:
        return self.non_type_specific.attributes

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.non_type_specific.parameters

    def endpoints(self, direction: str | None = None) -> tuple[InterfaceSpec, ...]:
        if direction is None:
            return self.interfaces
        return tuple(i for i in self.interfaces if i.direction == direction)

    def find_endpoint(self, kind: str, direction: str, name: str) -> InterfaceSpec | None:
        for spec in self.interfaces:
            if spec.key == (kind, direction, name):
                return spec
        return None

    def with_status(self, status: str) -> "ComponentRecord":
        return replace(self, meta=replace(self.meta, status=status))

    def to_json_dict(self) -> dict:
        doc = {
            "id": self.id,
            "meta": self.meta.to_json_dict(),
            "kind": self.kind,
            "swTypes": list(self.sw_types),
            "nonTypeSpecific": self.non_type_specific.to_json_dict(),
            "requirements": list(self.requirements),
            "supportedDevices": [d.to_json_dict() for d in self.supported_devices],
            "hwInterfaces": [h.to_json_dict() for h in self.hw_interfaces],
        }
        if self.kind == "Skill":
            doc["skillBody"] = self.skill_body
        return doc

    @classmethod
    def from_json_dict(cls, data: dict) -> "ComponentRecord":
        return cls(
            id=data.get("id", ""),
            meta=MetaInfo.from_json_dict(data.get("meta", {})),
            kind=data.get("kind", ""),
            sw_types=tuple(data.get("swTypes", ())),
            non_type_specific=NonTypeSpecific.from_json_dict(data.get("nonTypeSpecific", {})),
            requirements=tuple(data.get("requirements", ())),
            supported_devices=tuple(DeviceSpec.from_json_dict(d) for d in data.get("supportedDevices", ())),
            hw_interfaces=tuple(HWInterfaceSpec.from_json_dict(h) for h in data.get("hwInterfaces", ())),
            skill_body=data.get("skillBody"),
        )

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "ComponentRecord":
        return cls.from_json_dict(json.loads(text))


def is_valid_record_id(record_id: str) -> bool:
    return bool(_ID_RE.fullmatch(record_id))


def record_concept(record_id: str) -> str:
    """Name of the TBox concept a record is registered under."""
    return f"app/{record_id}"


def device_concept(record_id: str, index: int) -> str:
    return f"dev/{record_id}/{index}"


def is_legal_status_transition(current: str, requested: str) -> bool:
    """The status ladder is strictly sequential: Model -> Prototype -> Released."""
    if current not in STATUSES or requested not in STATUSES:
        return False
    return STATUSES.index(requested) == STATUSES.index(current) + 1


# ---------------------------------------------------------------------------
# Violations & validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: str = ""

    def __str__(self) -> str:
        return f"{self.code}: {self.message}" + (f" ({self.where})" if self.where else "")

    def to_json_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "where": self.where}


def _check_attribute_values(ctx: ClassifiedOntology, values: Sequence[AttributeValue], where: str, out: list[Violation]) -> None:
    seen: set[str] = set()
    for av in values:
        kind = ctx.tbox.attributes.get(av.attribute)
        if kind is None:
            out.append(Violation("undeclared_identifier", f"attribute '{av.attribute}' is not declared", where))
        elif kind == "int" and av.value != av.value.to_integral_value():
            out.append(Violation("bad_attribute_kind", f"attribute '{av.attribute}' is int-valued but got {av.value}", where))
        if av.attribute in seen:
            out.append(Violation("duplicate_attribute", f"attribute '{av.attribute}' is declared more than once", where))
        seen.add(av.attribute)


def validate_record(ctx: ClassifiedOntology, record: ComponentRecord) -> list[Violation]:
    """All invariant violations of a record against the loaded ontologies.

    An empty result means the record can be stored: the structural rules
    hold, every referenced name is declared, and the record declares every
    interface its software types demand.
    """
    out: list[Violation] = []

    if not record.id:
        out.append(Violation("bad_id", "record id is empty"))
    elif not is_valid_record_id(record.id):
        out.append(Violation("bad_id", f"record id {record.id!r} is not a valid identifier"))

    if record.kind not in RECORD_KINDS:
        out.append(Violation("bad_kind", f"kind must be one of {', '.join(RECORD_KINDS)}, got {record.kind!r}"))

    meta = record.meta
    for field_name, value in (
        ("author", meta.author),
        ("owner", meta.owner),
        ("description", meta.description),
    ):
        if not value:
            out.append(Violation("missing_meta", f"meta.{field_name} is empty"))
    if not _VERSION_RE.fullmatch(meta.version or ""):
        out.append(Violation("bad_version", f"meta.version {meta.version!r} is not a semantic version"))
    if not _RFC3339_RE.fullmatch(meta.created_at or ""):
        out.append(Violation("bad_timestamp", f"meta.createdAt {meta.created_at!r} is not an RFC 3339 timestamp"))
    if meta.status not in STATUSES:
        out.append(Violation("bad_status", f"meta.status must be one of {', '.join(STATUSES)}, got {meta.status!r}"))

    if record.kind == "SWComponent" and not record.sw_types:
        out.append(Violation("missing_sw_types", "a pure software component needs at least one software type"))
    if record.kind == "HAComponent" and not record.supported_devices:
        out.append(Violation("missing_devices", "a hardware access component needs at least one supported device"))
    if record.kind != "HAComponent" and record.supported_devices:
        out.append(Violation("unexpected_devices", "only hardware access components may declare supported devices"))
    if record.kind != "HAComponent" and record.hw_interfaces:
        out.append(Violation("unexpected_hw_interfaces", "only hardware access components may declare hardware interfaces"))
    if record.kind != "Skill" and record.skill_body:
        out.append(Violation("unexpected_skill_body", "only skills may reference a skill body"))

    declared_concepts = ctx.tbox.concepts
    for sw_type in record.sw_types:
        if sw_type not in declared_concepts:
            out.append(Violation("undeclared_identifier", f"software type '{sw_type}' is not declared", "swTypes"))
    for capability in record.non_type_specific.capabilities:
        if capability not in ctx.tbox.capability_concepts:
            out.append(Violation("undeclared_identifier", f"'{capability}' is not a declared capability", "capabilities"))

    seen_keys: set[tuple[str, str, str]] = set()
    for spec in record.interfaces:
        where = f"interface {spec.name or '?'}"
        if spec.kind not in INTERFACE_KINDS:
            out.append(Violation("bad_interface", f"kind must be one of {', '.join(INTERFACE_KINDS)}, got {spec.kind!r}", where))
        if spec.direction not in DIRECTIONS:
            out.append(Violation("bad_interface", f"direction must be Provides or Requires, got {spec.direction!r}", where))
        if not is_identifier(spec.name):
            out.append(Violation("bad_interface", f"endpoint name {spec.name!r} is not an identifier", where))
        if not is_identifier(spec.message_type):
            out.append(Violation("bad_interface", f"message type {spec.message_type!r} is not an identifier", where))
        if spec.key in seen_keys:
            out.append(Violation("duplicate_interface", f"duplicate endpoint {spec.key}", where))
        seen_keys.add(spec.key)

    _check_attribute_values(ctx, record.attributes, "attributes", out)
    for parameter in record.parameters:
        if not is_identifier(parameter):
            out.append(Violation("bad_parameter", f"parameter key {parameter!r} is not an identifier"))

    for requirement in record.requirements:
        try:
            constraint = matcher.parse_requirement(requirement)
        except Exception as exc:
            out.append(Violation("bad_requirement", str(exc), requirement))
            continue
        if constraint.target_type not in declared_concepts:
            out.append(Violation("undeclared_identifier", f"requirement target type '{constraint.target_type}' is not declared", requirement))
        if constraint.attribute not in ctx.tbox.attributes:
            out.append(Violation("undeclared_identifier", f"requirement attribute '{constraint.attribute}' is not declared", requirement))

    for index, device in enumerate(record.supported_devices):
        where = f"supportedDevices[{index}]"
        if not device.hw_types:
            out.append(Violation("missing_hw_types", "a supported device needs at least one hardware type", where))
        for hw_type in device.hw_types:
            if hw_type not in declared_concepts:
                out.append(Violation("undeclared_identifier", f"hardware type '{hw_type}' is not declared", where))
        _check_attribute_values(ctx, device.attributes, where, out)

    for index, hw in enumerate(record.hw_interfaces):
        where = f"hwInterfaces[{index}]"
        if not hw.medium:
            out.append(Violation("bad_hw_interface", "medium is empty", where))
        if not hw.protocol:
            out.append(Violation("bad_hw_interface", "protocol is empty", where))

    # Bundle check: every interface demanded by the declared software types
    # (jointly, so demands attached to type combinations count as well).
    if record.sw_types and not any(v.code == "undeclared_identifier" and v.where == "swTypes" for v in out):
        for kind, direction, message_type in interface_demands(ctx, record.sw_types):
            matches = [
                spec
                for spec in record.interfaces
                if spec.kind == kind and spec.direction == direction and spec.message_type == message_type
            ]
            if not matches:
                out.append(
                    Violation(
                        "missing_interface",
                        f"software types demand a {direction} {kind} of type {message_type}",
                        ",".join(record.sw_types),
                    )
                )
    return out


# ---------------------------------------------------------------------------
# Type-driven scaffolding
# ---------------------------------------------------------------------------

def interface_demands(ctx: ClassifiedOntology, sw_types: Sequence[str]) -> list[tuple[str, str, str]]:
    """Interfaces the given types demand, as (kind, direction, messageType)."""
    probe = ctx.probe_types(list(sw_types))
    demands: set[tuple[str, str, str]] = set()
    for role, target in probe.edges:
        endpoint = INTERFACE_ROLES.get(role)
        if endpoint is None:
            continue
        for name in probe.node_subsumers(target):
            if "/" in name and name in ctx.tbox.concepts:
                demands.add((endpoint[0], endpoint[1], name))
    return sorted(demands)


def capability_closure(ctx: ClassifiedOntology, sw_types: Sequence[str]) -> list[str]:
    probe = ctx.probe_types(list(sw_types))
    found: set[str] = set()
    for role, target in probe.edges:
        if role == CAPABILITY_ROLE:
            found.update(set(probe.node_subsumers(target)) & ctx.tbox.capability_concepts)
    return sorted(found)


def attribute_slots(ctx: ClassifiedOntology, sw_types: Sequence[str]) -> list[AttributeValue]:
    """Attribute slots the types declare, prefilled from derived constraints."""
    probe = ctx.probe_types(list(sw_types))
    demanded: set[str] = set()
    for role, target in probe.edges:
        if role != ATTRIBUTE_ROLE:
            continue
        for name in probe.node_subsumers(target):
            if name in ctx.tbox.attributes:
                demanded.add(name)
    ranges = probe.ranges
    demanded.update(ranges)
    slots = []
    for attribute in sorted(demanded):
        interval = ranges.get(attribute)
        if interval is None:
            value = Decimal(0)
        elif interval.equality is not None:
            value = interval.equality
        elif interval.lower is not None:
            value = interval.lower
        else:
            value = Decimal(0)
        slots.append(AttributeValue(attribute, value))
    return slots


def _endpoint_name(message_type: str, taken: set[tuple[str, str, str]], kind: str, direction: str) -> str:
    base = message_type.rsplit("/", 1)[-1].lower()
    base = re.sub(r"[^a-z0-9_]", "_", base) or "endpoint"
    if not base[0].isalpha() and base[0] != "_":
        base = "_" + base
    name = base
    counter = 2
    while (kind, direction, name) in taken:
        name = f"{base}_{counter}"
        counter += 1
    return name


def instantiate_from_types(ctx: ClassifiedOntology, sw_types: Sequence[str]) -> ComponentRecord:
    """Drafts a record for the given software types.

    The draft carries the union of deduced capabilities, the demanded
    interfaces with generated endpoint names, and prefilled attribute
    slots; meta information still has to be completed by the developer.
    """
    if not sw_types:
        raise EmptyTypeList()
    for name in sw_types:
        if name not in ctx.tbox.concepts:
            raise UndeclaredIdentifier(name, kind="concept")
    interfaces: list[InterfaceSpec] = []
    taken: set[tuple[str, str, str]] = set()
    for kind, direction, message_type in interface_demands(ctx, sw_types):
        name = _endpoint_name(message_type, taken, kind, direction)
        taken.add((kind, direction, name))
        interfaces.append(InterfaceSpec(kind, direction, name, message_type))
    draft_id = "draft_" + "_".join(re.sub(r"[^A-Za-z0-9_]", "_", t).lower() for t in sw_types)
    return ComponentRecord(
        id=draft_id,
        meta=MetaInfo(version="0.1.0", status="Model"),
        kind="SWComponent",
        sw_types=tuple(sw_types),
        non_type_specific=NonTypeSpecific(
            capabilities=tuple(capability_closure(ctx, sw_types)),
            interfaces=tuple(interfaces),
            attributes=tuple(attribute_slots(ctx, sw_types)),
        ),
    )


# ---------------------------------------------------------------------------
# Registry vocabulary & record indexing
# ---------------------------------------------------------------------------

def registry_vocabulary(base: TBox) -> TBox:
    """Built-in declarations every store shares: component kind concepts,
    the linking roles, and one concept per declared attribute so queries can
    ask for attribute presence via some(hasAttribute, Name)."""
    concepts = {ROOT_CONCEPT, *RECORD_KINDS}
    axioms = [Axiom(NamedConcept(kind), NamedConcept(ROOT_CONCEPT)) for kind in sorted(RECORD_KINDS)]
    concepts.update(name for name in base.attributes if name not in base.concepts)
    roles = {DEVICE_ROLE, ATTRIBUTE_ROLE, CAPABILITY_ROLE, *INTERFACE_ROLES}
    vocab = TBox(concepts=concepts, roles=roles, axioms=(), capability_concepts=())
    merged = base.merged_with(vocab)
    return TBox(
        concepts=merged.concepts,
        roles=merged.roles,
        attributes=merged.attributes,
        axioms=list(merged.axioms) + axioms,
        capability_concepts=merged.capability_concepts,
    )


def record_declarations(record: ComponentRecord) -> tuple[set[str], list[Axiom]]:
    """Concepts and axioms that register one record in the working TBox."""
    concepts: set[str] = set()
    axioms: list[Axiom] = []
    app = record_concept(record.id)
    concepts.add(app)
    me = NamedConcept(app)
    axioms.append(Axiom(me, NamedConcept(record.kind)))
    for sw_type in record.sw_types:
        axioms.append(Axiom(me, NamedConcept(sw_type)))
    for capability in record.non_type_specific.capabilities:
        axioms.append(Axiom(me, Existential(CAPABILITY_ROLE, NamedConcept(capability))))
    for av in record.attributes:
        axioms.append(Axiom(me, AttributeRestriction(av.attribute, "==", av.value)))
        axioms.append(Axiom(me, Existential(ATTRIBUTE_ROLE, NamedConcept(av.attribute))))
    for spec in record.interfaces:
        role = ROLE_FOR_ENDPOINT.get((spec.kind, spec.direction))
        if role is None:
            continue
        concepts.add(spec.message_type)
        axioms.append(Axiom(me, Existential(role, NamedConcept(spec.message_type))))
    for index, device in enumerate(record.supported_devices):
        dev = device_concept(record.id, index)
        concepts.add(dev)
        dev_expr = NamedConcept(dev)
        for hw_type in device.hw_types:
            axioms.append(Axiom(dev_expr, NamedConcept(hw_type)))
        for av in device.attributes:
            axioms.append(Axiom(dev_expr, AttributeRestriction(av.attribute, "==", av.value)))
            axioms.append(Axiom(dev_expr, Existential(ATTRIBUTE_ROLE, NamedConcept(av.attribute))))
        axioms.append(Axiom(me, Existential(DEVICE_ROLE, dev_expr)))
    return concepts, axioms


def build_working_tbox(base: TBox, records: Iterable[ComponentRecord]) -> TBox:
    """Base ontologies + registry vocabulary + one concept per record."""
    vocab = registry_vocabulary(base)
    concepts = set(vocab.concepts)
    axioms = list(vocab.axioms)
    for record in records:
        extra_concepts, extra_axioms = record_declarations(record)
        concepts.update(extra_concepts)
        # message types may be referenced before being 'declared' here
        for ax in extra_axioms:
            axioms.append(ax)
    return TBox(
        concepts=concepts,
        roles=vocab.roles,
        attributes=vocab.attributes,
        axioms=axioms,
        capability_concepts=vocab.capability_concepts,
    )
