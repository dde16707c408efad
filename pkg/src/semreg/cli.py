"""Command-line entry point for all registry workflows.

Exit codes: 0 success, 1 a validation/check found violations, 2 usage or
parse errors, 3 internal errors. Data goes to stdout, diagnostics to
stderr; ``--format json`` switches every subcommand to machine-readable
output with the same payload shapes the HTTP API serves.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import codegen
from .demo import init_demo
from .errors import ParseError, SemregError, UndeclaredIdentifier
from .matcher import check_compatibility
from .ontology import (
    Existential,
    NamedConcept,
    expr_to_text,
    load_ontology_files,
    parse_expression,
)
from .reasoner import CAPABILITY_ROLE, ClassifiedOntology
from .records import ComponentRecord, canonical_json, instantiate_from_types, validate_record
from .skills import SkillGraph, flatten, parameterize, validate_skill
from .store import Store

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _echo_json(payload) -> None:
    click.echo(canonical_json(payload), nl=False)


def _table(rows: list[list[str]], headers: list[str]) -> str:
    widths = [max(len(str(row[i])) for row in [headers] + rows) for i in range(len(headers))]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths))]
    for row in rows:
        lines.append("  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)))
    return "\n".join(lines)


def _load_tbox(paths: tuple[str, ...]):
    return load_ontology_files(list(paths))


def _open_store(store_dir: str | None, ontology_paths: tuple[str, ...]) -> Store:
    if not store_dir:
        raise click.UsageError("a store directory is required (use --store or SEMREG_STORE)")
    if not ontology_paths:
        raise click.UsageError("ontology files are required (use --ontologies)")
    return Store(store_dir, _load_tbox(ontology_paths))


format_option = click.option(
    "--format", "output_format", type=click.Choice(["table", "json"]), default="table", show_default=True
)
store_option = click.option("--store", "store_dir", envvar="SEMREG_STORE", default=None, help="Store directory (env: SEMREG_STORE).")
ontologies_option = click.option(
    "--ontologies", "-o", "ontology_paths", multiple=True, type=click.Path(exists=True), help="Ontology DSL files."
)


@click.group()
def main() -> None:
    """Semantic component registry workbench."""


# -- ontology ----------------------------------------------------------------

@main.group()
def ontology() -> None:
    """Parse, check, and classify ontology files."""


@ontology.command("check")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@format_option
def ontology_check(files: tuple[str, ...], output_format: str) -> None:
    """Parses the files and reports declarations and resolution problems."""
    tbox = _load_tbox(files)
    payload = {
        "concepts": len(tbox.concepts),
        "capabilities": len(tbox.capability_concepts),
        "roles": len(tbox.roles),
        "attributes": len(tbox.attributes),
        "axioms": len(tbox.axioms),
    }
    if output_format == "json":
        _echo_json(payload)
    else:
        click.echo(", ".join(f"{key}: {value}" for key, value in payload.items()))


@ontology.command("classify")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@format_option
def ontology_classify(files: tuple[str, ...], output_format: str) -> None:
    """Prints every derived subsumption between declared names, plus the
    derived capability memberships."""
    tbox = _load_tbox(files)
    ctx = ClassifiedOntology(tbox)
    declared = tbox.concepts
    pairs = []
    for concept in sorted(declared):
        for sup in sorted(ctx.graph.subsumers_of(concept)):
            if sup != concept and sup in declared:
                pairs.append((concept, sup))
    capability_facts = []
    for concept in sorted(declared):
        for capability in sorted(ctx.graph.capability_index.get(concept, ())):
            capability_facts.append((concept, capability))
    if output_format == "json":
        _echo_json(
            {
                "subsumptions": [{"sub": a, "sup": b} for a, b in pairs],
                "capabilities": [{"concept": a, "capability": b} for a, b in capability_facts],
            }
        )
        return
    for a, b in pairs:
        click.echo(f"{a} SubClassOf {b}")
    for a, b in capability_facts:
        click.echo(f"{a} SubClassOf {expr_to_text(Existential(CAPABILITY_ROLE, NamedConcept(b)))}")


# -- query -------------------------------------------------------------------

@main.command("query")
@click.argument("files", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("--expr", "expression", required=True, help="Query expression in the ontology DSL.")
@store_option
@click.option("--status", default=None)
@click.option("--kind", default=None)
@click.option("--manufacturer", default=None)
@click.option("--text", default=None)
@format_option
def query_command(
    files: tuple[str, ...],
    expression: str,
    store_dir: str | None,
    status: str | None,
    kind: str | None,
    manufacturer: str | None,
    text: str | None,
    output_format: str,
) -> None:
    """Answers a DL query over the ontologies, or over a store's components."""
    expr = parse_expression(expression)
    if store_dir:
        store = _open_store(store_dir, files)
        results, warnings = store.search_detailed(
            expr, status=status, kind=kind, manufacturer=manufacturer, text=text
        )
        if output_format == "json":
            _echo_json({"total": len(results), "results": [r.to_json_dict() for r in results], "warnings": warnings})
        else:
            for warning in warnings:
                click.echo(f"warning: {warning}", err=True)
            rows = [[r.id, r.kind, r.meta.status, r.meta.description] for r in results]
            click.echo(_table(rows, ["id", "kind", "status", "description"]) if rows else "no matches")
        return
    tbox = _load_tbox(files)
    ctx = ClassifiedOntology(tbox)
    matches, warnings = ctx.query_detailed(expr, sorted(tbox.concepts))
    if output_format == "json":
        _echo_json({"matches": matches, "warnings": warnings})
    else:
        for warning in warnings:
            click.echo(f"warning: {warning}", err=True)
        for name in matches:
            click.echo(name)


# -- component ---------------------------------------------------------------

@main.group()
def component() -> None:
    """Validate, add, and generate artifacts from component records."""


def _read_record(path: str) -> ComponentRecord:
    return ComponentRecord.from_json(Path(path).read_text(encoding="utf-8"))


@component.command("validate")
@click.argument("record_file", type=click.Path(exists=True))
@ontologies_option
@format_option
@click.pass_context
def component_validate(ctx_obj, record_file: str, ontology_paths: tuple[str, ...], output_format: str) -> None:
    """Checks a record file against the ontologies; exits 1 on violations."""
    if not ontology_paths:
        raise click.UsageError("ontology files are required (use --ontologies)")
    record = _read_record(record_file)
    ctx = ClassifiedOntology(_load_tbox(ontology_paths))
    violations = validate_record(ctx, record)
    if output_format == "json":
        _echo_json({"id": record.id, "violations": [v.to_json_dict() for v in violations]})
    else:
        for violation in violations:
            click.echo(str(violation))
        if not violations:
            click.echo(f"{record.id}: ok")
    if violations:
        ctx_obj.exit(EXIT_VIOLATIONS)


@component.command("add")
@click.argument("record_file", type=click.Path(exists=True))
@store_option
@ontologies_option
@format_option
def component_add(record_file: str, store_dir: str | None, ontology_paths: tuple[str, ...], output_format: str) -> None:
    store = _open_store(store_dir, ontology_paths)
    record = _read_record(record_file)
    store.add(record)
    if output_format == "json":
        _echo_json({"id": record.id})
    else:
        click.echo(f"added {record.id}")


@component.command("instantiate")
@click.argument("sw_types", nargs=-1, required=True)
@ontologies_option
@format_option
def component_instantiate(sw_types: tuple[str, ...], ontology_paths: tuple[str, ...], output_format: str) -> None:
    """Drafts a record from software types (capabilities, interfaces, slots)."""
    if not ontology_paths:
        raise click.UsageError("ontology files are required (use --ontologies)")
    ctx = ClassifiedOntology(_load_tbox(ontology_paths))
    draft = instantiate_from_types(ctx, list(sw_types))
    _echo_json(draft.to_json_dict())


def _record_from_store_or_file(reference: str, store_dir: str | None, ontology_paths: tuple[str, ...]) -> ComponentRecord:
    if Path(reference).is_file():
        return _read_record(reference)
    store = _open_store(store_dir, ontology_paths)
    return store.get(reference)


@component.command("skeleton")
@click.argument("reference")
@store_option
@ontologies_option
def component_skeleton(reference: str, store_dir: str | None, ontology_paths: tuple[str, ...]) -> None:
    """Prints the skeleton descriptor for a stored id or a record file."""
    record = _record_from_store_or_file(reference, store_dir, ontology_paths)
    _echo_json(codegen.generate_skeleton(record).to_json_dict())


@component.command("manifest")
@click.argument("reference")
@store_option
@ontologies_option
def component_manifest(reference: str, store_dir: str | None, ontology_paths: tuple[str, ...]) -> None:
    """Prints the package manifest for a stored id or a record file."""
    record = _record_from_store_or_file(reference, store_dir, ontology_paths)
    click.echo(codegen.generate_manifest(record), nl=False)


# -- skill ---------------------------------------------------------------------

@main.group()
def skill() -> None:
    """Validate, flatten, and parameterize skills."""


def _read_skill(reference: str, store: Store) -> SkillGraph:
    if Path(reference).is_file():
        return SkillGraph.from_json_dict(json.loads(Path(reference).read_text(encoding="utf-8")))
    return SkillGraph.from_json_dict(store.get_skill(reference))


@skill.command("validate")
@click.argument("reference")
@store_option
@ontologies_option
@format_option
@click.pass_context
def skill_validate(ctx_obj, reference: str, store_dir: str | None, ontology_paths: tuple[str, ...], output_format: str) -> None:
    """Validates a skill file or stored skill; exits 1 when it has errors."""
    store = _open_store(store_dir, ontology_paths)
    graph = _read_skill(reference, store)
    report = validate_skill(store.context(), store, graph)
    if output_format == "json":
        _echo_json(report.to_json_dict())
    else:
        for violation in report.errors:
            click.echo(f"error: {violation}")
        for violation in report.warnings:
            click.echo(f"warning: {violation}")
        if report.unbound_parameters:
            click.echo("unbound parameters: " + ", ".join(report.unbound_parameters))
        if report.ok:
            click.echo("ok")
    if report.errors:
        ctx_obj.exit(EXIT_VIOLATIONS)


@skill.command("flatten")
@click.argument("reference")
@store_option
@ontologies_option
def skill_flatten(reference: str, store_dir: str | None, ontology_paths: tuple[str, ...]) -> None:
    store = _open_store(store_dir, ontology_paths)
    graph = _read_skill(reference, store)
    _echo_json(flatten(store, graph).to_json_dict())


@skill.command("solution")
@click.argument("reference")
@store_option
@ontologies_option
@click.option("--param", "params", multiple=True, help="Bind a parameter: instance.key=value (repeatable).")
@click.option("--save", "save_name", default=None, help="Also write <name>.solution.json into the store.")
def skill_solution(
    reference: str,
    store_dir: str | None,
    ontology_paths: tuple[str, ...],
    params: tuple[str, ...],
    save_name: str | None,
) -> None:
    """Parameterizes a validation-clean skill into a Solution descriptor."""
    store = _open_store(store_dir, ontology_paths)
    graph = _read_skill(reference, store)
    extra: dict[str, dict[str, str]] = {}
    for binding in params:
        if "=" not in binding or "." not in binding.split("=", 1)[0]:
            raise click.UsageError(f"bad --param {binding!r}; expected instance.key=value")
        target, value = binding.split("=", 1)
        instance, key = target.rsplit(".", 1)
        extra.setdefault(instance, {})[key] = value
    solution = parameterize(store.context(), store, graph, extra)
    if save_name:
        store.save_solution(save_name, solution.to_json_dict())
    _echo_json(solution.to_json_dict())


# -- compat & serve ------------------------------------------------------------

@main.command("compat")
@click.argument("requirer_id")
@click.argument("provider_id")
@store_option
@ontologies_option
@format_option
@click.pass_context
def compat(ctx_obj, requirer_id: str, provider_id: str, store_dir: str | None, ontology_paths: tuple[str, ...], output_format: str) -> None:
    """Checks whether the provider satisfies the requirer's requirements."""
    store = _open_store(store_dir, ontology_paths)
    report = check_compatibility(store.context(), store.get(requirer_id), store.get(provider_id))
    if output_format == "json":
        _echo_json(report.to_json_dict())
    else:
        rows = [
            [str(c.constraint), c.subject, "-" if c.observed is None else str(c.observed), c.verdict, c.note]
            for c in report.checks
        ]
        if rows:
            click.echo(_table(rows, ["constraint", "subject", "observed", "verdict", "note"]))
        for skipped in report.skipped:
            click.echo(f"not applicable: {skipped}")
        click.echo("compatible" if report.compatible else "incompatible")
    if not report.compatible:
        ctx_obj.exit(EXIT_VIOLATIONS)


@main.command("serve")
@store_option
@ontologies_option
@click.option("--bind", default="127.0.0.1:8000", show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(), default=None, help="Static directory for the web UI.")
def serve_command(store_dir: str | None, ontology_paths: tuple[str, ...], bind: str, ui_dir: str | None) -> None:
    """Runs the HTTP JSON API (and optionally the web UI)."""
    if not store_dir:
        raise click.UsageError("a store directory is required (use --store or SEMREG_STORE)")
    if not ontology_paths:
        raise click.UsageError("ontology files are required (use --ontologies)")
    from .server import serve

    serve(store_dir, list(ontology_paths), bind=bind, ui_dir=ui_dir)


@main.group()
def demo() -> None:
    """Seeded demo dataset."""


@demo.command("init")
@click.argument("directory", type=click.Path())
def demo_init(directory: str) -> None:
    """Writes the demo ontologies and a populated store into DIRECTORY."""
    ontology_paths, store_dir = init_demo(directory)
    click.echo(f"ontologies: {' '.join(str(p) for p in ontology_paths)}")
    click.echo(f"store: {store_dir}")


def run(argv: list[str] | None = None) -> int:
    """Programmatic entry point with the documented exit-code mapping."""
    try:
        result = main.main(args=argv, standalone_mode=False)
        return int(result) if isinstance(result, int) else EXIT_OK
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except (ParseError, UndeclaredIdentifier) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except SemregError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_VIOLATIONS
    except click.Abort:
        return EXIT_INTERNAL
    except Exception as exc:  # internal fault, not user error
        click.echo(f"internal error: {exc}", err=True)
        return EXIT_INTERNAL


def console() -> None:
    sys.exit(run())


if __name__ == "__main__":
    sys.exit(run())
