"""Subsumption reasoning over a TBox.

The engine normalizes axioms into a small set of normal forms, then runs a
worklist saturation in the style of EL completion calculi, extended with
interval reasoning for numeric attribute restrictions. Complex expressions
in queries are internalized with fresh definitional names and evaluated
against the saturated graph without mutating it, so one classified graph
can serve many concurrent queries.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InternalLimitExceeded, UndeclaredIdentifier
from .intervals import Interval
from .ontology import (
    AttributeRestriction,
    Axiom,
    ConceptExpression,
    Conjunction,
    Existential,
    NamedConcept,
    TBox,
)

log = logging.getLogger(__name__)

# Role linking components and devices to the capabilities they exhibit.
CAPABILITY_ROLE = "hasCapability"


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubAx:
    """sub ⊑ sup, both named."""

    sub: str
    sup: str


@dataclass(frozen=True)
class ConjAx:
    """left ⊓ right ⊑ sup, all named."""

    left: str
    right: str
    sup: str


@dataclass(frozen=True)
class ExRightAx:
    """sub ⊑ some(role, filler), sub and filler named."""

    sub: str
    role: str
    filler: str


@dataclass(frozen=True)
class ExLeftAx:
    """some(role, filler) ⊑ sup, filler and sup named."""

    role: str
    filler: str
    sup: str


@dataclass(frozen=True)
class AttrRightAx:
    """sub ⊑ attr-restriction."""

    sub: str
    atom: AttributeRestriction


@dataclass(frozen=True)
class AttrLeftAx:
    """attr-restriction ⊑ sup."""

    atom: AttributeRestriction
    sup: str


NormalAxiom = SubAx | ConjAx | ExRightAx | ExLeftAx | AttrRightAx | AttrLeftAx


def _fresh_prefix(taken: Iterable[str], base: str) -> str:
    prefix = base
    while any(name.startswith(prefix) for name in taken):
        prefix = "_" + prefix
    return prefix


class _Normalizer:
    """Rewrites arbitrary axioms into normal forms with fresh names.

    Sub-expressions are named once per polarity; naming is memoized on the
    expression structure, so identical sub-expressions share one fresh name
    and the number of fresh names stays linear in the input size.
    """

    def __init__(self, declared: Iterable[str], prefix_base: str = "_n"):
        self.prefix = _fresh_prefix(declared, prefix_base)
        self.counter = 0
        self.names: dict = {}
        self.emitted: set[tuple[str, str]] = set()
        self.axioms: list[NormalAxiom] = []
        self.fresh: dict[str, ConceptExpression] = {}

    def _fresh(self, key, origin: ConceptExpression) -> str:
        name = self.names.get(key)
        if name is None:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            self.names[key] = name
            self.fresh[name] = origin
        return name

    def add_axiom(self, lhs: ConceptExpression, rhs: ConceptExpression) -> None:
        if isinstance(lhs, NamedConcept):
            self.decompose_pos(lhs.name, rhs)
        elif isinstance(rhs, NamedConcept):
            self.decompose_neg(lhs, rhs.name)
        else:
            bridge = self.neg_name(lhs)
            self.decompose_pos(bridge, rhs)

    def pos_name(self, expr: ConceptExpression) -> str:
        """A name usable where expr occurs positively: name ⊑ expr."""
        if isinstance(expr, NamedConcept):
            return expr.name
        name = self._fresh(expr, expr)
        if (name, "+") not in self.emitted:
            self.emitted.add((name, "+"))
            self.decompose_pos(name, expr)
        return name

    def neg_name(self, expr: ConceptExpression) -> str:
        """A name usable where expr occurs negatively: expr ⊑ name."""
        if isinstance(expr, NamedConcept):
            return expr.name
        name = self._fresh(expr, expr)
        if (name, "-") not in self.emitted:
            self.emitted.add((name, "-"))
            self.decompose_neg(expr, name)
        return name

    def decompose_pos(self, name: str, expr: ConceptExpression) -> None:
        """Emit normal axioms equivalent to name ⊑ expr."""
        if isinstance(expr, NamedConcept):
            self.axioms.append(SubAx(name, expr.name))
        elif isinstance(expr, Conjunction):
            for part in expr.parts:
                self.decompose_pos(name, part)
        elif isinstance(expr, Existential):
            self.axioms.append(ExRightAx(name, expr.role, self.pos_name(expr.filler)))
        else:
            self.axioms.append(AttrRightAx(name, expr))

    def decompose_neg(self, expr: ConceptExpression, name: str) -> None:
        """Emit normal axioms equivalent to expr ⊑ name."""
        if isinstance(expr, NamedConcept):
            self.axioms.append(SubAx(expr.name, name))
        elif isinstance(expr, Conjunction):
            operands = [self.neg_name(p) for p in expr.parts]
            acc = operands[0]
            for i, operand in enumerate(operands[1:], start=1):
                if i == len(operands) - 1:
                    target = name
                else:
                    target = self._fresh(("chain", expr, i), expr)
                self.axioms.append(ConjAx(acc, operand, target))
                acc = target
        elif isinstance(expr, Existential):
            self.axioms.append(ExLeftAx(expr.role, self.neg_name(expr.filler), name))
        else:
            self.axioms.append(AttrLeftAx(expr, name))


class NormalizedTBox:
    """A TBox reduced to normal-form axioms plus lookup indexes."""

    __slots__ = (
        "tbox",
        "concepts",
        "capability_concepts",
        "roles",
        "attributes",
        "fresh_names",
        "axioms",
        "told",
        "conj_index",
        "ex_right",
        "ex_left",
        "attr_right",
        "attr_left",
    )

    def __init__(self, tbox: TBox, axioms: Sequence[NormalAxiom], fresh_names: Mapping[str, ConceptExpression]):
        self.tbox = tbox
        self.fresh_names = dict(fresh_names)
        self.concepts = frozenset(tbox.concepts) | frozenset(fresh_names)
        self.capability_concepts = tbox.capability_concepts
        self.roles = tbox.roles
        self.attributes = dict(tbox.attributes)
        self.axioms = tuple(axioms)
        self.told, self.conj_index, self.ex_right, self.ex_left, self.attr_right, self.attr_left = index_axioms(axioms)

    def attr_kind(self, attribute: str) -> str:
        return self.attributes.get(attribute, "decimal")


def index_axioms(axioms: Sequence[NormalAxiom]):
    told: dict[str, list[str]] = {}
    conj_index: dict[str, list[tuple[str, str]]] = {}
    ex_right: dict[str, list[tuple[str, str]]] = {}
    ex_left: dict[tuple[str, str], list[str]] = {}
    attr_right: dict[str, list[AttributeRestriction]] = {}
    attr_left: dict[str, list[tuple[AttributeRestriction, str]]] = {}
    for ax in axioms:
        if isinstance(ax, SubAx):
            told.setdefault(ax.sub, []).append(ax.sup)
        elif isinstance(ax, ConjAx):
            conj_index.setdefault(ax.left, []).append((ax.right, ax.sup))
            if ax.right != ax.left:
                conj_index.setdefault(ax.right, []).append((ax.left, ax.sup))
        elif isinstance(ax, ExRightAx):
            ex_right.setdefault(ax.sub, []).append((ax.role, ax.filler))
        elif isinstance(ax, ExLeftAx):
            ex_left.setdefault((ax.role, ax.filler), []).append(ax.sup)
        elif isinstance(ax, AttrRightAx):
            attr_right.setdefault(ax.sub, []).append(ax.atom)
        elif isinstance(ax, AttrLeftAx):
            attr_left.setdefault(ax.atom.attribute, []).append((ax.atom, ax.sup))
    return told, conj_index, ex_right, ex_left, attr_right, attr_left


def normalize(tbox: TBox) -> NormalizedTBox:
    """Rewrites a TBox into normal form. Deterministic: the same input
    produces the same fresh names and the same axiom order."""
    normalizer = _Normalizer(tbox.concepts)
    for ax in tbox.axioms:
        normalizer.add_axiom(ax.lhs, ax.rhs)
    return NormalizedTBox(tbox, normalizer.axioms, normalizer.fresh)


# ---------------------------------------------------------------------------
# Saturation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubsumptionGraph:
    """Saturated consequences of a NormalizedTBox.

    subsumers is reflexive and transitively closed; capability_index maps
    every concept to the capability concepts reachable over derived
    hasCapability edges. ranges holds the tightest derived interval per
    (concept, attribute); unsatisfiable lists concepts whose constraints
    admit no value.
    """

    subsumers: dict[str, frozenset[str]]
    capability_index: dict[str, frozenset[str]]
    out_edges: dict[str, tuple[tuple[str, str], ...]]
    ranges: dict[str, dict[str, Interval]]
    unsatisfiable: frozenset[str]

    def subsumers_of(self, name: str) -> frozenset[str]:
        got = self.subsumers.get(name)
        if got is None:
            raise UndeclaredIdentifier(name, kind="concept")
        return got


class _Saturation:
    """Worklist saturation engine.

    Without a base graph it classifies the whole NormalizedTBox. With one,
    only the given private nodes evolve while the base graph is consulted
    read-only, which is how query subjects are internalized incrementally.
    """

    def __init__(
        self,
        ntbox: NormalizedTBox,
        extra_axioms: Sequence[NormalAxiom] = (),
        base: SubsumptionGraph | None = None,
        private_nodes: Iterable[str] = (),
    ):
        self.nt = ntbox
        self.base = base
        self.private = set(private_nodes)
        (
            self.x_told,
            self.x_conj,
            self.x_ex_right,
            self.x_ex_left,
            self.x_attr_right,
            self.x_attr_left,
        ) = index_axioms(extra_axioms)
        self.S: dict[str, set[str]] = {}
        self.out_edges: dict[str, set[tuple[str, str]]] = {}
        self.in_edges: dict[str, set[tuple[str, str]]] = {}
        self.ranges: dict[str, dict[str, Interval]] = {}
        self.unsat: set[str] = set()
        self.queue: deque = deque()
        n_concepts = len(ntbox.concepts) + len(self.private) + 1
        n_roles = len(ntbox.roles) + 1
        # Every queued item is a newly stored fact, so a correct run can
        # never exceed the size of the fact universe; hitting the cap
        # signals an engine bug, not bad input.
        self.cap = n_concepts * n_concepts * (n_roles + 2) + 1024
        self.processed = 0

    # -- fact lookups ------------------------------------------------------

    def subsumers_view(self, node: str):
        if self.base is not None and node not in self.private:
            return self.base.subsumers.get(node, frozenset())
        return self.S.get(node, frozenset())

    def _told(self, concept: str):
        yield from self.nt.told.get(concept, ())
        yield from self.x_told.get(concept, ())

    def _conj(self, concept: str):
        yield from self.nt.conj_index.get(concept, ())
        yield from self.x_conj.get(concept, ())

    def _ex_right(self, concept: str):
        yield from self.nt.ex_right.get(concept, ())
        yield from self.x_ex_right.get(concept, ())

    def _ex_left(self, role: str, filler: str):
        yield from self.nt.ex_left.get((role, filler), ())
        yield from self.x_ex_left.get((role, filler), ())

    def _attr_right(self, concept: str):
        yield from self.nt.attr_right.get(concept, ())
        yield from self.x_attr_right.get(concept, ())

    def _attr_left(self, attribute: str):
        yield from self.nt.attr_left.get(attribute, ())
        yield from self.x_attr_left.get(attribute, ())

    # -- fact insertion ----------------------------------------------------

    def add_sub(self, node: str, concept: str) -> None:
        known = self.S.setdefault(node, set())
        if concept not in known:
            known.add(concept)
            self.queue.append((node, concept, None))

    def add_edge(self, node: str, role: str, target: str) -> None:
        outs = self.out_edges.setdefault(node, set())
        if (role, target) not in outs:
            outs.add((role, target))
            self.in_edges.setdefault(target, set()).add((node, role))
            self.queue.append((node, role, target))

    # -- rules -------------------------------------------------------------

    def run(self, seeds: Iterable[str]) -> None:
        for node in seeds:
            self.add_sub(node, node)
        while self.queue:
            self.processed += 1
            if self.processed > self.cap:
                raise InternalLimitExceeded(f"saturation exceeded {self.cap} rule firings")
            node, a, b = self.queue.popleft()
            if b is None:
                self._on_sub(node, a)
            else:
                self._on_edge(node, a, b)

    def _on_sub(self, node: str, concept: str) -> None:
        for sup in self._told(concept):
            self.add_sub(node, sup)
        known = self.S[node]
        for other, sup in self._conj(concept):
            if other in known:
                self.add_sub(node, sup)
        for role, filler in self._ex_right(concept):
            self.add_edge(node, role, filler)
        atoms = list(self._attr_right(concept))
        if atoms:
            self._merge_atoms(node, atoms)
        # node is also an edge target: re-fire left-existential axioms.
        for source, role in self.in_edges.get(node, ()):
            for sup in self._ex_left(role, concept):
                self.add_sub(source, sup)

    def _on_edge(self, node: str, role: str, target: str) -> None:
        # Copy: a self-edge makes node and target the same evolving set.
        for filler in tuple(self.subsumers_view(target)):
            for sup in self._ex_left(role, filler):
                self.add_sub(node, sup)

    def _merge_atoms(self, node: str, atoms: Sequence[AttributeRestriction]) -> None:
        node_ranges = self.ranges.setdefault(node, {})
        changed: set[str] = set()
        for atom in atoms:
            kind = self.nt.attr_kind(atom.attribute)
            current = node_ranges.get(atom.attribute, Interval(kind))
            merged = current.intersect(Interval.from_constraint(atom.op, atom.value, kind))
            if merged != current:
                node_ranges[atom.attribute] = merged
                changed.add(atom.attribute)
        for attribute in changed:
            interval = node_ranges[attribute]
            if interval.is_empty and node not in self.unsat:
                self.unsat.add(node)
                log.warning("unsatisfiable %s constraints on %s", attribute, node)
            for atom, sup in self._attr_left(attribute):
                if interval.entails(atom.op, atom.value):
                    self.add_sub(node, sup)

    # -- results -----------------------------------------------------------

    def graph(self) -> SubsumptionGraph:
        subsumers = {node: frozenset(vals) for node, vals in self.S.items()}
        capability_index: dict[str, frozenset[str]] = {}
        caps = self.nt.capability_concepts
        for node in subsumers:
            found: set[str] = set()
            for role, target in self.out_edges.get(node, ()):
                if role == CAPABILITY_ROLE:
                    found.update(self.subsumers_view(target) & caps)
            capability_index[node] = frozenset(found)
        return SubsumptionGraph(
            subsumers=subsumers,
            capability_index=capability_index,
            out_edges={n: tuple(sorted(v)) for n, v in self.out_edges.items()},
            ranges={n: dict(v) for n, v in self.ranges.items() if v},
            unsatisfiable=frozenset(self.unsat),
        )


def classify(ntbox: NormalizedTBox) -> SubsumptionGraph:
    """Saturates the normalized TBox to a fixpoint."""
    sat = _Saturation(ntbox)
    sat.run(sorted(ntbox.concepts))
    return sat.graph()


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def check_expression_refs(ntbox: NormalizedTBox, expr: ConceptExpression) -> None:
    if isinstance(expr, NamedConcept):
        if expr.name not in ntbox.concepts:
            raise UndeclaredIdentifier(expr.name, kind="concept")
    elif isinstance(expr, Conjunction):
        for part in expr.parts:
            check_expression_refs(ntbox, part)
    elif isinstance(expr, Existential):
        if expr.role not in ntbox.roles:
            raise UndeclaredIdentifier(expr.role, kind="role")
        check_expression_refs(ntbox, expr.filler)
    elif isinstance(expr, AttributeRestriction):
        if expr.attribute not in ntbox.attributes:
            raise UndeclaredIdentifier(expr.attribute, kind="attribute")


class _Probe:
    """A saturated private extension representing a generic member of an
    expression (or of a conjunction of named types)."""

    def __init__(self, ntbox: NormalizedTBox, graph: SubsumptionGraph, expr: ConceptExpression):
        normalizer = _Normalizer(ntbox.concepts, "_p")
        self.root = f"{normalizer.prefix}root"
        normalizer.decompose_pos(self.root, expr)
        nodes = {self.root, *normalizer.fresh}
        self.sat = _Saturation(ntbox, normalizer.axioms, base=graph, private_nodes=nodes)
        self.sat.run(sorted(nodes))
        self.nodes = nodes

    @property
    def subsumers(self) -> frozenset[str]:
        return frozenset(self.sat.S.get(self.root, set()))

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.sat.out_edges.get(self.root, ())))

    @property
    def ranges(self) -> dict[str, Interval]:
        return dict(self.sat.ranges.get(self.root, {}))

    def node_subsumers(self, node: str):
        return self.sat.subsumers_view(node)

    def node_edges(self, node: str):
        return self.sat.out_edges.get(node, ())

    def node_ranges(self, node: str):
        return self.sat.ranges.get(node, {})


class _QueryProgram:
    """Internalized query: axioms deriving fresh names from node facts."""

    def __init__(self, ntbox: NormalizedTBox, query: ConceptExpression):
        normalizer = _Normalizer(ntbox.concepts, "_q")
        self.goal = f"{normalizer.prefix}goal"
        normalizer.decompose_neg(query, self.goal)
        self.fresh = {self.goal, *normalizer.names.values()}
        self.sub_axioms = [ax for ax in normalizer.axioms if isinstance(ax, SubAx)]
        self.conj_axioms = [ax for ax in normalizer.axioms if isinstance(ax, ConjAx)]
        self.ex_axioms = [ax for ax in normalizer.axioms if isinstance(ax, ExLeftAx)]
        self.attr_axioms = [ax for ax in normalizer.axioms if isinstance(ax, AttrLeftAx)]
        self.roles = {ax.role for ax in self.ex_axioms}
        self.warnings = _unsatisfiable_clauses(ntbox, query)


def _unsatisfiable_clauses(ntbox: NormalizedTBox, query: ConceptExpression) -> list[str]:
    """Conjunction scopes whose attribute constraints admit no value."""
    warnings: list[str] = []

    def scan(expr: ConceptExpression) -> None:
        atoms: dict[str, Interval] = {}
        parts = expr.parts if isinstance(expr, Conjunction) else (expr,)
        for part in parts:
            if isinstance(part, AttributeRestriction):
                kind = ntbox.attr_kind(part.attribute)
                current = atoms.get(part.attribute, Interval(kind))
                atoms[part.attribute] = current.intersect(Interval.from_constraint(part.op, part.value, kind))
            elif isinstance(part, Existential):
                scan(part.filler)
            elif isinstance(part, Conjunction):  # pragma: no cover - flattened away
                scan(part)
        for attribute, interval in atoms.items():
            if interval.is_empty:
                warnings.append(f"unsatisfiable constraints on attribute {attribute}")

    scan(query)
    return warnings


class _QueryEvaluator:
    """Evaluates a query program over graph nodes (plus an optional probe)."""

    def __init__(self, graph: SubsumptionGraph, ntbox: NormalizedTBox, program: _QueryProgram, probe: _Probe | None = None):
        self.graph = graph
        self.nt = ntbox
        self.program = program
        self.probe = probe

    def _is_probe_node(self, node: str) -> bool:
        return self.probe is not None and node in self.probe.nodes

    def _node_subsumers(self, node: str):
        if self._is_probe_node(node):
            return self.probe.node_subsumers(node)
        return self.graph.subsumers.get(node, frozenset())

    def _node_edges(self, node: str):
        if self._is_probe_node(node):
            return self.probe.node_edges(node)
        return self.graph.out_edges.get(node, ())

    def _node_ranges(self, node: str):
        if self._is_probe_node(node):
            return self.probe.node_ranges(node)
        return self.graph.ranges.get(node, {})

    def matches(self, roots: Sequence[str]) -> set[str]:
        nodes = self._reachable(roots)
        derived: dict[str, set[str]] = {n: set() for n in nodes}
        changed = True
        while changed:
            changed = False
            for node in nodes:
                facts = derived[node]
                before = len(facts)
                base_subs = self._node_subsumers(node)
                for ax in self.program.sub_axioms:
                    if ax.sup not in facts and (ax.sub in facts or ax.sub in base_subs):
                        facts.add(ax.sup)
                for ax in self.program.conj_axioms:
                    if ax.sup in facts:
                        continue
                    if (ax.left in facts or ax.left in base_subs) and (ax.right in facts or ax.right in base_subs):
                        facts.add(ax.sup)
                for ax in self.program.attr_axioms:
                    if ax.sup in facts:
                        continue
                    interval = self._node_ranges(node).get(ax.atom.attribute)
                    if interval is not None and interval.entails(ax.atom.op, ax.atom.value):
                        facts.add(ax.sup)
                for ax in self.program.ex_axioms:
                    if ax.sup in facts:
                        continue
                    for role, target in self._node_edges(node):
                        if role != ax.role:
                            continue
                        if ax.filler in derived.get(target, ()) or ax.filler in self._node_subsumers(target):
                            facts.add(ax.sup)
                            break
                if len(facts) != before:
                    changed = True
        goal = self.program.goal
        return {node for node in roots if goal in derived[node]}

    def _reachable(self, roots: Sequence[str]) -> list[str]:
        seen = list(roots)
        seen_set = set(roots)
        stack = list(roots)
        while stack:
            node = stack.pop()
            for role, target in self._node_edges(node):
                if role in self.program.roles and target not in seen_set:
                    seen_set.add(target)
                    seen.append(target)
                    stack.append(target)
        return seen


def is_subsumed_by(
    graph: SubsumptionGraph,
    ntbox: NormalizedTBox,
    sub: ConceptExpression,
    sup: ConceptExpression,
) -> bool:
    """Decides whether sub ⊑ sup follows from the TBox.

    Interval entailment covers attribute restrictions: attr(P, >=, 40) is
    subsumed by attr(P, >=, 30) but not by attr(P, >, 40).
    """
    check_expression_refs(ntbox, sub)
    check_expression_refs(ntbox, sup)
    if isinstance(sub, NamedConcept) and isinstance(sup, NamedConcept):
        return sup.name in graph.subsumers_of(sub.name)
    probe: _Probe | None = None
    if isinstance(sub, NamedConcept):
        root = sub.name
        if root not in graph.subsumers:
            raise UndeclaredIdentifier(root, kind="concept")
    else:
        probe = _Probe(ntbox, graph, sub)
        root = probe.root
    program = _QueryProgram(ntbox, sup)
    for warning in program.warnings:
        log.warning("%s", warning)
    evaluator = _QueryEvaluator(graph, ntbox, program, probe)
    return root in evaluator.matches([root])


def answer_query(
    graph: SubsumptionGraph,
    ntbox: NormalizedTBox,
    query: ConceptExpression,
    candidates: Iterable[str],
) -> list[str]:
    """All candidates subsumed by the query, in lexicographic order."""
    results, _ = answer_query_detailed(graph, ntbox, query, candidates)
    return results


def answer_query_detailed(
    graph: SubsumptionGraph,
    ntbox: NormalizedTBox,
    query: ConceptExpression,
    candidates: Iterable[str],
) -> tuple[list[str], list[str]]:
    check_expression_refs(ntbox, query)
    roots = sorted(set(candidates))
    for name in roots:
        if name not in graph.subsumers:
            raise UndeclaredIdentifier(name, kind="concept")
    program = _QueryProgram(ntbox, query)
    for warning in program.warnings:
        log.warning("%s", warning)
    evaluator = _QueryEvaluator(graph, ntbox, program)
    matched = evaluator.matches(roots)
    return sorted(matched), program.warnings


def answer_query_by_resaturation(
    ntbox: NormalizedTBox,
    query: ConceptExpression,
    candidates: Iterable[str],
) -> list[str]:
    """Reference implementation of answer_query that rebuilds the whole TBox
    with the query as a named concept and re-classifies from scratch. Slower
    but structurally independent of the incremental internalization path;
    kept as the second route of the dual-route check."""
    tbox = ntbox.tbox
    goal = _fresh_prefix(tbox.concepts, "_full_goal")
    extended = TBox(
        concepts=set(tbox.concepts) | {goal},
        roles=tbox.roles,
        attributes=tbox.attributes,
        axioms=list(tbox.axioms) + [Axiom(query, NamedConcept(goal))],
        capability_concepts=tbox.capability_concepts,
    )
    graph = classify(normalize(extended))
    return sorted(c for c in set(candidates) if goal in graph.subsumers_of(c))


def deduce_capabilities(graph: SubsumptionGraph, concept: str) -> frozenset[str]:
    """Capability concepts derivable for a named concept, closed under
    capability subsumption and inherited from all subsumers."""
    found = set(graph.capability_index.get(concept, frozenset()))
    for sup in graph.subsumers_of(concept):
        found.update(graph.capability_index.get(sup, frozenset()))
    return frozenset(found)


# ---------------------------------------------------------------------------
# Convenience bundle
# ---------------------------------------------------------------------------

class ClassifiedOntology:
    """A TBox with its normalization and saturated graph, ready to query."""

    def __init__(self, tbox: TBox):
        self.tbox = tbox
        self.ntbox = normalize(tbox)
        self.graph = classify(self.ntbox)

    def is_subsumed(self, sub: ConceptExpression, sup: ConceptExpression) -> bool:
        return is_subsumed_by(self.graph, self.ntbox, sub, sup)

    def is_subsumed_named(self, sub: str, sup: str) -> bool:
        return sup in self.graph.subsumers_of(sub)

    def query(self, expr: ConceptExpression, candidates: Iterable[str]) -> list[str]:
        return answer_query(self.graph, self.ntbox, expr, candidates)

    def query_detailed(self, expr: ConceptExpression, candidates: Iterable[str]) -> tuple[list[str], list[str]]:
        return answer_query_detailed(self.graph, self.ntbox, expr, candidates)

    def capabilities_of(self, concept: str) -> frozenset[str]:
        return deduce_capabilities(self.graph, concept)

    def probe_types(self, type_names: Sequence[str]) -> _Probe:
        """A generic member of the conjunction of the given named types."""
        for name in type_names:
            if name not in self.ntbox.concepts:
                raise UndeclaredIdentifier(name, kind="concept")
        parts = tuple(NamedConcept(n) for n in type_names)
        expr: ConceptExpression = parts[0] if len(parts) == 1 else Conjunction(parts)
        return _Probe(self.ntbox, self.graph, expr)

    def probe_expression(self, expr: ConceptExpression) -> _Probe:
        check_expression_refs(self.ntbox, expr)
        return _Probe(self.ntbox, self.graph, expr)
