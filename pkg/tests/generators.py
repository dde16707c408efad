"""Seeded random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from decimal import Decimal

from semreg.ontology import (
    AttributeRestriction,
    Axiom,
    Conjunction,
    Existential,
    NamedConcept,
    TBox,
)
from semreg.records import ComponentRecord, InterfaceSpec, MetaInfo, NonTypeSpecific
from semreg.skills import Connection, EndpointRef, SkillGraph

OPS = (">=", ">", "<=", "<", "==")


def random_value(rng: random.Random) -> Decimal:
    if rng.random() < 0.6:
        return Decimal(rng.randint(0, 40))
    return Decimal(rng.randint(0, 80)) / 2  # halves exercise int tightening


def random_expr(rng: random.Random, concepts, roles, attributes, depth: int):
    roll = rng.random()
    if depth <= 0 or roll < 0.45 or (not roles and not attributes and roll < 0.85):
        return NamedConcept(rng.choice(concepts))
    if roll < 0.65:
        parts = tuple(random_expr(rng, concepts, roles, attributes, depth - 1) for _ in range(rng.randint(2, 3)))
        return Conjunction(parts)
    if roll < 0.85 and roles:
        return Existential(rng.choice(roles), random_expr(rng, concepts, roles, attributes, depth - 1))
    if attributes:
        return AttributeRestriction(rng.choice(sorted(attributes)), rng.choice(OPS), random_value(rng))
    return NamedConcept(rng.choice(concepts))


def random_tbox(rng: random.Random, max_concepts: int = 10, max_axioms: int = 15, max_roles: int = 3, max_attributes: int = 2) -> TBox:
    concepts = [f"C{i}" for i in range(rng.randint(2, max_concepts))]
    n_roles = rng.randint(1, max_roles)
    roles = ["hasCapability", "r1", "r2"][:n_roles]
    attributes = {}
    if max_attributes >= 1 and rng.random() < 0.8:
        attributes["P0"] = "int"
    if max_attributes >= 2 and rng.random() < 0.6:
        attributes["P1"] = "decimal"
    capability_count = rng.randint(0, min(3, len(concepts)))
    capabilities = rng.sample(concepts, k=capability_count)
    axioms = [
        Axiom(
            random_expr(rng, concepts, roles, attributes, 2),
            random_expr(rng, concepts, roles, attributes, 2),
        )
        for _ in range(rng.randint(1, max_axioms))
    ]
    return TBox(
        concepts=concepts,
        roles=roles,
        attributes=attributes,
        axioms=axioms,
        capability_concepts=capabilities,
    )


# ---------------------------------------------------------------------------
# Component pools and skills over the demo ontology
# ---------------------------------------------------------------------------

# Software types of the demo ontology that demand no interfaces, so generated
# records validate without extra scaffolding.
SAFE_TYPES = ("Perception", "Planning", "Control", "Mapping", "PoseDetection")
MESSAGES = tuple(f"gen_msgs/Type{i}" for i in range(6))


def _generated_meta() -> MetaInfo:
    return MetaInfo(
        author="Generator",
        owner="tests",
        created_at="2016-01-01T00:00:00Z",
        version="1.0.0",
        description="generated component",
        status="Released",
    )


def random_provider(rng: random.Random, record_id: str) -> ComponentRecord:
    provides = rng.sample(MESSAGES, k=rng.randint(1, 3))
    interfaces = tuple(
        InterfaceSpec("Topic", "Provides", f"out_{i}", message) for i, message in enumerate(provides)
    )
    return ComponentRecord(
        id=record_id,
        meta=_generated_meta(),
        kind="SWComponent",
        sw_types=(rng.choice(SAFE_TYPES),),
        non_type_specific=NonTypeSpecific(interfaces=interfaces),
    )


def random_consumer(rng: random.Random, record_id: str) -> ComponentRecord:
    requires = rng.sample(MESSAGES, k=rng.randint(1, 3))
    provides = rng.sample(MESSAGES, k=rng.randint(0, 2))
    interfaces = [InterfaceSpec("Topic", "Requires", f"in_{i}", m) for i, m in enumerate(requires)]
    interfaces += [InterfaceSpec("Topic", "Provides", f"out_{i}", m) for i, m in enumerate(provides)]
    return ComponentRecord(
        id=record_id,
        meta=_generated_meta(),
        kind="SWComponent",
        sw_types=(rng.choice(SAFE_TYPES),),
        non_type_specific=NonTypeSpecific(interfaces=tuple(interfaces)),
    )


def full_provider(record_id: str) -> ComponentRecord:
    """Provides every generated message type; guarantees wireability."""
    interfaces = tuple(
        InterfaceSpec("Topic", "Provides", f"all_{i}", message) for i, message in enumerate(MESSAGES)
    )
    return ComponentRecord(
        id=record_id,
        meta=_generated_meta(),
        kind="SWComponent",
        sw_types=("Perception",),
        non_type_specific=NonTypeSpecific(interfaces=interfaces),
    )


def random_skill(rng: random.Random, store, consumer_ids, provider_ids) -> SkillGraph:
    """A skill wiring 2-4 consumers so that every Requires endpoint is bound."""
    chosen = rng.sample(consumer_ids, k=rng.randint(2, min(4, len(consumer_ids))))
    instances = {f"c{i}": record_id for i, record_id in enumerate(chosen)}
    connections = []
    provider_instances: dict[str, str] = {}
    for iid, record_id in list(instances.items()):
        record = store.get(record_id)
        for spec in record.endpoints("Requires"):
            provider_id = rng.choice(
                [p for p in provider_ids if any(
                    s.kind == spec.kind and s.message_type == spec.message_type
                    for s in store.get(p).endpoints("Provides")
                )]
            )
            pid = provider_instances.setdefault(provider_id, f"p{len(provider_instances)}")
            provider_spec = next(
                s for s in store.get(provider_id).endpoints("Provides")
                if s.kind == spec.kind and s.message_type == spec.message_type
            )
            connections.append(
                Connection(
                    EndpointRef(pid, provider_spec.kind, provider_spec.name),
                    EndpointRef(iid, spec.kind, spec.name),
                )
            )
    instances.update({pid: record_id for record_id, pid in provider_instances.items()})
    return SkillGraph(instances=instances, connections=tuple(connections))


def interchangeable_variant(rng: random.Random, record: ComponentRecord, new_id: str) -> ComponentRecord:
    """A record that check_interchangeable accepts as a stand-in: endpoint
    names shuffled, possibly an extra Provides endpoint, possibly one
    Requires endpoint dropped."""
    interfaces = []
    dropped_requires = False
    for spec in record.interfaces:
        if spec.direction == "Requires" and not dropped_requires and rng.random() < 0.3:
            dropped_requires = True
            continue
        interfaces.append(InterfaceSpec(spec.kind, spec.direction, f"{spec.name}_v2", spec.message_type))
    if rng.random() < 0.4:
        interfaces.append(InterfaceSpec("Topic", "Provides", "extra_out", "gen_msgs/Extra"))
    import dataclasses

    return dataclasses.replace(
        record,
        id=new_id,
        non_type_specific=dataclasses.replace(record.non_type_specific, interfaces=tuple(interfaces)),
    )
