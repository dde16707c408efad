"""Description-logic data model and the textual ontology language.

The fragment is deliberately small: named concepts, conjunction, existential
role restriction, and numeric attribute restrictions over an exact decimal
domain. Negation, disjunction, and universal quantification are not
representable, which keeps reasoning polynomial.

Surface syntax is a line-oriented DSL (``#`` starts a comment)::

    concept <Name>
    capability <Name>
    role <name>
    attribute <Name> : int | decimal
    axiom <Expr> SubClassOf <Expr>

    Expr := <Name> | and(<Expr>, <Expr>, ...) | some(<name>, <Expr>)
          | attr(<Name>, <op>, <number>)
    op   := >= | > | <= | < | ==
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, Mapping, Union

from .errors import CycleDetected, DuplicateDeclaration, ParseError, UndeclaredIdentifier

# Non-leading '-' is allowed so that vendor-style names like
# RGBD-Camera_Wrapper stay expressible; '/' appears in message-type names.
IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_/-]*")

COMPARISON_OPS = (">=", ">", "<=", "<", "==")

_RESERVED = {"and", "some", "attr", "SubClassOf", "concept", "capability", "role", "attribute", "axiom", "int", "decimal"}


def is_identifier(text: str) -> bool:
    return bool(IDENTIFIER_RE.fullmatch(text))


def _check_identifier(name: str) -> str:
    if not is_identifier(name):
        raise ValueError(f"invalid identifier {name!r}")
    return name


@dataclass(frozen=True)
class NamedConcept:
    name: str

    def __post_init__(self):
        _check_identifier(self.name)


@dataclass(frozen=True)
class Conjunction:
    """Intersection of two or more expressions; nested conjunctions flatten."""

    parts: tuple

    def __post_init__(self):
        flat: list = []
        for p in self.parts:
            if isinstance(p, Conjunction):
                flat.extend(p.parts)
            else:
                flat.append(p)
        if len(flat) < 2:
            raise ValueError("conjunction needs at least two parts")
        object.__setattr__(self, "parts", tuple(flat))


@dataclass(frozen=True)
class Existential:
    role: str
    filler: "ConceptExpression"

    def __post_init__(self):
        _check_identifier(self.role)


@dataclass(frozen=True)
class AttributeRestriction:
    """Numeric constraint on an attribute, e.g. attr(UpdateFrequencyInHz, >=, 30)."""

    attribute: str
    op: str
    value: Decimal

    def __post_init__(self):
        _check_identifier(self.attribute)
        if self.op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")
        if not isinstance(self.value, Decimal):
            object.__setattr__(self, "value", Decimal(str(self.value)))
        if not self.value.is_finite():
            raise ValueError("attribute restriction value must be a finite decimal")


ConceptExpression = Union[NamedConcept, Conjunction, Existential, AttributeRestriction]


def conj(*parts: ConceptExpression) -> ConceptExpression:
    """Conjunction constructor that collapses the single-part case."""
    if len(parts) == 1:
        return parts[0]
    return Conjunction(tuple(parts))


@dataclass(frozen=True)
class Axiom:
    """Subsumption statement: every member of lhs is a member of rhs."""

    lhs: ConceptExpression
    rhs: ConceptExpression


@dataclass(frozen=True)
class TaxonomyLevel:
    concept: str
    level: int


def expr_to_text(expr: ConceptExpression) -> str:
    if isinstance(expr, NamedConcept):
        return expr.name
    if isinstance(expr, Conjunction):
        return "and(" + ", ".join(expr_to_text(p) for p in expr.parts) + ")"
    if isinstance(expr, Existential):
        return f"some({expr.role}, {expr_to_text(expr.filler)})"
    if isinstance(expr, AttributeRestriction):
        return f"attr({expr.attribute}, {expr.op}, {expr.value})"
    raise TypeError(f"not a concept expression: {expr!r}")


def iter_subexpressions(expr: ConceptExpression) -> Iterable[ConceptExpression]:
    """Yields expr and every nested sub-expression, depth first."""
    yield expr
    if isinstance(expr, Conjunction):
        for p in expr.parts:
            yield from iter_subexpressions(p)
    elif isinstance(expr, Existential):
        yield from iter_subexpressions(expr.filler)


class TBox:
    """Immutable set of declarations and subsumption axioms.

    ``attributes`` maps each attribute name to its value kind ("int" or
    "decimal"). Capability concepts are ordinary concepts carrying an
    explicit marker so they can be retrieved as deduction targets.
    """

    __slots__ = ("concepts", "capability_concepts", "roles", "attributes", "axioms")

    def __init__(
        self,
        concepts: Iterable[str] = (),
        roles: Iterable[str] = (),
        attributes: Mapping[str, str] | None = None,
        axioms: Iterable[Axiom] = (),
        capability_concepts: Iterable[str] = (),
    ):
        self.concepts = frozenset(concepts)
        self.capability_concepts = frozenset(capability_concepts)
        self.roles = frozenset(roles)
        self.attributes = dict(attributes or {})
        self.axioms = tuple(axioms)
        if not self.capability_concepts <= self.concepts:
            raise ValueError("capability concepts must be declared concepts")
        for kind in self.attributes.values():
            if kind not in ("int", "decimal"):
                raise ValueError(f"unknown attribute kind {kind!r}")
        for ax in self.axioms:
            self._check_refs(ax.lhs)
            self._check_refs(ax.rhs)

    def _check_refs(self, expr: ConceptExpression) -> None:
        if isinstance(expr, NamedConcept):
            if expr.name not in self.concepts:
                raise UndeclaredIdentifier(expr.name, kind="concept")
        elif isinstance(expr, Conjunction):
            for p in expr.parts:
                self._check_refs(p)
        elif isinstance(expr, Existential):
            if expr.role not in self.roles:
                raise UndeclaredIdentifier(expr.role, kind="role")
            self._check_refs(expr.filler)
        elif isinstance(expr, AttributeRestriction):
            if expr.attribute not in self.attributes:
                raise UndeclaredIdentifier(expr.attribute, kind="attribute")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TBox)
            and self.concepts == other.concepts
            and self.capability_concepts == other.capability_concepts
            and self.roles == other.roles
            and self.attributes == other.attributes
            and self.axioms == other.axioms
        )

    def __hash__(self):
        return hash((self.concepts, self.capability_concepts, self.roles, tuple(sorted(self.attributes.items())), self.axioms))

    def __repr__(self):
        return (
            f"TBox({len(self.concepts)} concepts, {len(self.roles)} roles, "
            f"{len(self.attributes)} attributes, {len(self.axioms)} axioms)"
        )

    def merged_with(self, other: "TBox") -> "TBox":
        """Union of two TBoxes; identical re-declarations are tolerated."""
        attrs = dict(self.attributes)
        for name, kind in other.attributes.items():
            if attrs.get(name, kind) != kind:
                raise DuplicateDeclaration(name)
            attrs[name] = kind
        return TBox(
            concepts=self.concepts | other.concepts,
            roles=self.roles | other.roles,
            attributes=attrs,
            axioms=self.axioms + other.axioms,
            capability_concepts=self.capability_concepts | other.capability_concepts,
        )


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>[-+]?\d+(?:\.\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_/-]*)"
    r"|(?P<op>>=|<=|==|>|<)|(?P<punct>[(),]))"
)


class _ExprParser:
    """Recursive-descent parser for the expression sub-grammar."""

    def __init__(self, text: str, line: int, offset: int):
        self.text = text
        self.line = line
        self.offset = offset  # column of text[0] in the original line, 1-based
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._tokenize()
        self.index = 0

    def _tokenize(self) -> None:
        pos = 0
        while pos < len(self.text):
            m = _TOKEN_RE.match(self.text, pos)
            if not m or m.end() == pos:
                rest = self.text[pos:].lstrip()
                if not rest:
                    break
                col = self.offset + len(self.text) - len(rest)
                raise ParseError(f"unexpected character {rest[0]!r}", self.line, col)
            kind = m.lastgroup
            value = m.group(kind)
            col = self.offset + m.start(kind)
            self.tokens.append((kind, value, col))
            pos = m.end()

    def _peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _next(self, expected: str | None = None):
        tok = self._peek()
        if tok is None:
            raise ParseError(
                f"unexpected end of expression{', expected ' + expected if expected else ''}",
                self.line,
                self.offset + len(self.text),
            )
        self.index += 1
        return tok

    def _expect_punct(self, char: str) -> None:
        kind, value, col = self._next(repr(char))
        if kind != "punct" or value != char:
            raise ParseError(f"expected {char!r}, found {value!r}", self.line, col)

    def parse(self) -> ConceptExpression:
        expr = self._expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing token {tok[1]!r}", self.line, tok[2])
        return expr

    def _expr(self) -> ConceptExpression:
        kind, value, col = self._next("expression")
        if kind == "name":
            nxt = self._peek()
            if value in ("and", "some", "attr") and nxt and nxt[:2] == ("punct", "("):
                return self._call(value, col)
            return NamedConcept(value)
        raise ParseError(f"expected expression, found {value!r}", self.line, col)

    def _call(self, head: str, col: int) -> ConceptExpression:
        self._expect_punct("(")
        if head == "and":
            parts = [self._expr()]
            while True:
                kind, value, c = self._next("',' or ')'")
                if (kind, value) == ("punct", ")"):
                    break
                if (kind, value) != ("punct", ","):
                    raise ParseError(f"expected ',' or ')', found {value!r}", self.line, c)
                parts.append(self._expr())
            if len(parts) < 2:
                raise ParseError("and(...) needs at least two arguments", self.line, col)
            return Conjunction(tuple(parts))
        if head == "some":
            kind, role, c = self._next("role name")
            if kind != "name":
                raise ParseError(f"expected role name, found {role!r}", self.line, c)
            self._expect_punct(",")
            filler = self._expr()
            self._expect_punct(")")
            return Existential(role, filler)
        # attr(Name, op, number)
        kind, attribute, c = self._next("attribute name")
        if kind != "name":
            raise ParseError(f"expected attribute name, found {attribute!r}", self.line, c)
        self._expect_punct(",")
        kind, op, c = self._next("comparison operator")
        if kind != "op":
            raise ParseError(f"expected comparison operator, found {op!r}", self.line, c)
        self._expect_punct(",")
        kind, number, c = self._next("number")
        if kind != "num":
            raise ParseError(f"expected number, found {number!r}", self.line, c)
        self._expect_punct(")")
        try:
            value = Decimal(number)
        except InvalidOperation:  # pragma: no cover - the token regex is stricter
            raise ParseError(f"bad number {number!r}", self.line, c)
        return AttributeRestriction(attribute, op, value)


def parse_expression(text: str, line: int = 1, offset: int = 1) -> ConceptExpression:
    """Parses a single DSL expression, e.g. ``and(A, some(r, B))``."""
    return _ExprParser(text, line, offset).parse()


@dataclass
class _RawDocument:
    concepts: dict[str, int] = field(default_factory=dict)  # name -> line
    capabilities: dict[str, int] = field(default_factory=dict)
    roles: dict[str, int] = field(default_factory=dict)
    attributes: dict[str, tuple[str, int]] = field(default_factory=dict)  # name -> (kind, line)
    axioms: list[tuple[Axiom, int]] = field(default_factory=list)


_DECL_RE = {
    "concept": re.compile(r"concept\s+(\S+)\s*$"),
    "capability": re.compile(r"capability\s+(\S+)\s*$"),
    "role": re.compile(r"role\s+(\S+)\s*$"),
    "attribute": re.compile(r"attribute\s+(\S+)\s*:\s*(int|decimal)\s*$"),
}


def _parse_raw(text: str, doc: _RawDocument | None = None) -> _RawDocument:
    doc = doc or _RawDocument()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split(None, 1)[0]
        if keyword in ("concept", "capability", "role"):
            m = _DECL_RE[keyword].fullmatch(line)
            if not m:
                raise ParseError(f"malformed {keyword} declaration", lineno, 1)
            name = m.group(1)
            if not is_identifier(name) or name in _RESERVED:
                raise ParseError(f"invalid {keyword} name {name!r}", lineno, raw_line.find(name) + 1)
            if keyword == "role":
                if name in doc.roles:
                    raise DuplicateDeclaration(name, lineno)
                doc.roles[name] = lineno
            else:
                # concept and capability share one namespace
                if name in doc.concepts or name in doc.capabilities:
                    raise DuplicateDeclaration(name, lineno)
                if keyword == "capability":
                    doc.capabilities[name] = lineno
                else:
                    doc.concepts[name] = lineno
        elif keyword == "attribute":
            m = _DECL_RE["attribute"].fullmatch(line)
            if not m:
                raise ParseError("malformed attribute declaration (expected 'attribute <Name> : int|decimal')", lineno, 1)
            name, kind = m.group(1), m.group(2)
            if not is_identifier(name) or name in _RESERVED:
                raise ParseError(f"invalid attribute name {name!r}", lineno, raw_line.find(name) + 1)
            if name in doc.attributes:
                raise DuplicateDeclaration(name, lineno)
            doc.attributes[name] = (kind, lineno)
        elif keyword == "axiom":
            body = line[len("axiom"):].strip()
            split = re.split(r"\bSubClassOf\b", body)
            if len(split) != 2:
                raise ParseError("axiom must contain exactly one SubClassOf", lineno, 1)
            lhs_text, rhs_text = split[0].strip(), split[1].strip()
            lhs = parse_expression(lhs_text, lineno, raw_line.find(lhs_text) + 1)
            rhs = parse_expression(rhs_text, lineno, raw_line.find(rhs_text, raw_line.find("SubClassOf")) + 1)
            doc.axioms.append((Axiom(lhs, rhs), lineno))
        else:
            raise ParseError(f"unknown statement {keyword!r}", lineno, 1)
    return doc


def _build_tbox(doc: _RawDocument) -> TBox:
    concepts = set(doc.concepts) | set(doc.capabilities)
    roles = set(doc.roles)
    attributes = {name: kind for name, (kind, _) in doc.attributes.items()}

    def check(expr: ConceptExpression, line: int) -> None:
        if isinstance(expr, NamedConcept):
            if expr.name not in concepts:
                raise UndeclaredIdentifier(expr.name, line, kind="concept")
        elif isinstance(expr, Conjunction):
            for p in expr.parts:
                check(p, line)
        elif isinstance(expr, Existential):
            if expr.role not in roles:
                raise UndeclaredIdentifier(expr.role, line, kind="role")
            check(expr.filler, line)
        elif isinstance(expr, AttributeRestriction):
            if expr.attribute not in attributes:
                raise UndeclaredIdentifier(expr.attribute, line, kind="attribute")

    for ax, line in doc.axioms:
        check(ax.lhs, line)
        check(ax.rhs, line)
    return TBox(
        concepts=concepts,
        roles=roles,
        attributes=attributes,
        axioms=[ax for ax, _ in doc.axioms],
        capability_concepts=set(doc.capabilities),
    )


def parse_ontology(text: str) -> TBox:
    """Parses one self-contained ontology document into a TBox.

    Declarations may appear in any order relative to the axioms that use
    them; references are resolved over the whole document.
    """
    return _build_tbox(_parse_raw(text))


def load_ontology_files(paths: Iterable[str | Path]) -> TBox:
    """Parses several documents as one ontology (cross-file references allowed).

    Re-declaring the same name in multiple files is tolerated as long as the
    declarations agree; this lets each file declare the roles it uses.
    """
    doc = _RawDocument()
    for path in paths:
        text = Path(path).read_text(encoding="utf-8")
        part = _parse_raw(text)
        for name, line in part.concepts.items():
            if name in doc.capabilities:
                raise DuplicateDeclaration(name, line)
            doc.concepts.setdefault(name, line)
        for name, line in part.capabilities.items():
            if name in doc.concepts:
                raise DuplicateDeclaration(name, line)
            doc.capabilities.setdefault(name, line)
        for name, line in part.roles.items():
            doc.roles.setdefault(name, line)
        for name, (kind, line) in part.attributes.items():
            if name in doc.attributes and doc.attributes[name][0] != kind:
                raise DuplicateDeclaration(name, line)
            doc.attributes.setdefault(name, (kind, line))
        doc.axioms.extend(part.axioms)
    return _build_tbox(doc)


def serialize_ontology(tbox: TBox) -> str:
    """Renders a TBox back to canonical DSL text.

    Declarations are sorted lexicographically within their kind; axioms keep
    insertion order. parse(serialize(t)) == t for every valid TBox.
    """
    lines: list[str] = []
    for name in sorted(tbox.concepts - tbox.capability_concepts):
        lines.append(f"concept {name}")
    for name in sorted(tbox.capability_concepts):
        lines.append(f"capability {name}")
    for name in sorted(tbox.roles):
        lines.append(f"role {name}")
    for name in sorted(tbox.attributes):
        lines.append(f"attribute {name} : {tbox.attributes[name]}")
    for ax in tbox.axioms:
        lines.append(f"axiom {expr_to_text(ax.lhs)} SubClassOf {expr_to_text(ax.rhs)}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Taxonomy levels
# ---------------------------------------------------------------------------

def named_parent_edges(tbox: TBox) -> dict[str, set[str]]:
    """child -> declared named parents (axioms with named concepts on both sides)."""
    edges: dict[str, set[str]] = {c: set() for c in tbox.concepts}
    for ax in tbox.axioms:
        if isinstance(ax.lhs, NamedConcept) and isinstance(ax.rhs, NamedConcept):
            if ax.lhs.name != ax.rhs.name:
                edges[ax.lhs.name].add(ax.rhs.name)
    return edges


def compute_levels(tbox: TBox) -> list[TaxonomyLevel]:
    """Longest-path depth of every concept in the declared named hierarchy.

    Roots (concepts without a declared named parent) sit at level 0; every
    other concept is one deeper than its deepest declared parent.
    """
    parents = named_parent_edges(tbox)
    levels: dict[str, int] = {}
    state: dict[str, int] = {}  # 1 = on stack, 2 = done

    def visit(node: str) -> int:
        if state.get(node) == 2:
            return levels[node]
        if state.get(node) == 1:
            raise CycleDetected(_trace_cycle(parents, node))
        state[node] = 1
        depth = 0
        for parent in sorted(parents[node]):
            depth = max(depth, visit(parent) + 1)
        state[node] = 2
        levels[node] = depth
        return depth

    for concept in sorted(tbox.concepts):
        visit(concept)
    return sorted((TaxonomyLevel(c, l) for c, l in levels.items()), key=lambda t: (t.level, t.concept))


def _trace_cycle(parents: dict[str, set[str]], start: str) -> list[str]:
    trail = [start]
    seen = {start}
    node = start
    while True:
        nxt = None
        for parent in sorted(parents[node]):
            nxt = parent
            break
        if nxt is None:  # pragma: no cover - only called when a cycle exists
            return trail
        trail.append(nxt)
        if nxt in seen:
            return trail
        seen.add(nxt)
        node = nxt
