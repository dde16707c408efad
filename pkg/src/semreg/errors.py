"""Exception hierarchy shared by all semreg subsystems."""

from __future__ import annotations


class SemregError(Exception):
    """Base class for every error raised by this package."""

    code = "error"


class ParseError(SemregError):
    """Malformed ontology DSL or requirement text."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        self.message = message
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{message}{where}")


class UndeclaredIdentifier(SemregError):
    code = "undeclared_identifier"

    def __init__(self, name: str, line: int | None = None, kind: str = "identifier"):
        self.name = name
        self.line = line
        self.kind = kind
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"undeclared {kind} '{name}'{where}")


class DuplicateDeclaration(SemregError):
    code = "duplicate_declaration"

    def __init__(self, name: str, line: int | None = None):
        self.name = name
        self.line = line
        where = f" at line {line}" if line is not None else ""
        super().__init__(f"duplicate declaration of '{name}'{where}")


class CycleDetected(SemregError):
    code = "cycle_detected"

    def __init__(self, members: list[str]):
        self.members = list(members)
        super().__init__("cycle detected: " + " -> ".join(self.members))


class InternalLimitExceeded(SemregError):
    """Saturation exceeded its safety cap; indicates a reasoner bug."""

    code = "internal_limit_exceeded"


class ValidationFailed(SemregError):
    code = "validation_failed"

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"record validation failed: {lines}")


class DuplicateId(SemregError):
    code = "duplicate_id"

    def __init__(self, record_id: str):
        self.record_id = record_id
        super().__init__(f"a component with id '{record_id}' already exists")


class NotFound(SemregError):
    code = "not_found"

    def __init__(self, what: str):
        self.what = what
        super().__init__(f"'{what}' not found")


class IllegalTransition(SemregError):
    code = "illegal_transition"

    def __init__(self, current: str, requested: str):
        self.current = current
        self.requested = requested
        super().__init__(f"illegal status transition {current} -> {requested}")


class EmptyTypeList(SemregError):
    code = "empty_type_list"

    def __init__(self):
        super().__init__("at least one software type is required")


class TypeMismatch(SemregError):
    code = "type_mismatch"

    def __init__(self, expected: str, found: str):
        self.expected = expected
        self.found = found
        super().__init__(f"type mismatch: expected {expected}, found {found}")


class DirectionMismatch(SemregError):
    code = "direction_mismatch"

    def __init__(self, message: str):
        super().__init__(message)


class MultiplicityViolation(SemregError):
    code = "multiplicity_violation"

    def __init__(self, message: str):
        super().__init__(message)


class UnresolvedReference(SemregError):
    code = "unresolved_reference"

    def __init__(self, message: str):
        super().__init__(message)


class UnboundParameter(SemregError):
    code = "unbound_parameter"

    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__("unbound parameters: " + ", ".join(self.missing))


class ValidationErrorsPresent(SemregError):
    code = "validation_errors_present"

    def __init__(self, report):
        self.report = report
        super().__init__(f"skill has {len(report.errors)} validation error(s)")
