"""HTTP JSON API over the registry, reasoner, composer, and generators.

One process serves one store plus one classified ontology snapshot. Reads
are snapshot-consistent; mutations are serialized by the store. Query
expressions travel as DSL text and are parsed server-side, so the wire
format never duplicates the expression grammar.

No authentication: this is a single-operator, desk-scale tool.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import codegen
from .errors import NotFound, SemregError, ValidationFailed
from .matcher import check_compatibility
from .ontology import TBox, compute_levels, load_ontology_files, named_parent_edges, parse_expression
from .records import ComponentRecord
from .skills import SkillGraph, flatten, validate_skill
from .store import Store

log = logging.getLogger(__name__)

_STATUS_FOR = {
    "parse_error": 400,
    "undeclared_identifier": 400,
    "validation_failed": 400,
    "unresolved_reference": 400,
    "bad_request": 400,
    "not_found": 404,
    "duplicate_id": 409,
    "illegal_transition": 409,
}


def _error_response(code: str, message: str, details: Any = None) -> JSONResponse:
    body: dict[str, Any] = {"code": code, "message": message}
    if details is not None:
        body["details"] = details
    return JSONResponse(status_code=_STATUS_FOR.get(code, 500), content=body)


def _taxonomy_tree(tbox: TBox, member_names: set[str]) -> list[dict]:
    """Level-annotated forest over the declared named hierarchy."""
    levels = {tl.concept: tl.level for tl in compute_levels(tbox)}
    parents = named_parent_edges(tbox)
    children: dict[str, list[str]] = {name: [] for name in member_names}
    roots: list[str] = []
    for name in sorted(member_names):
        member_parents = sorted(p for p in parents.get(name, ()) if p in member_names)
        if member_parents:
            for parent in member_parents:
                children[parent].append(name)
        else:
            roots.append(name)

    def node(name: str) -> dict:
        return {
            "name": name,
            "level": levels.get(name, 0),
            "capability": name in tbox.capability_concepts,
            "children": [node(child) for child in children[name]],
        }

    return [node(root) for root in roots]


def _descendants(tbox: TBox, root: str) -> set[str]:
    parents = named_parent_edges(tbox)
    children: dict[str, set[str]] = {}
    for child, parent_set in parents.items():
        for parent in parent_set:
            children.setdefault(parent, set()).add(child)
    found = {root} if root in tbox.concepts else set()
    stack = [root]
    while stack:
        for child in children.get(stack.pop(), ()):
            if child not in found:
                found.add(child)
                stack.append(child)
    return found


def create_app(store: Store, ontology_tbox: TBox, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="semreg", docs_url=None, redoc_url=None)

    @app.exception_handler(SemregError)
    async def semreg_error_handler(request: Request, exc: SemregError):
        details = None
        if isinstance(exc, ValidationFailed):
            details = [v.to_json_dict() for v in exc.violations]
        return _error_response(exc.code, str(exc), details)

    def _record_or_404(record_id: str) -> ComponentRecord:
        return store.get(record_id)  # NotFound propagates to the handler

    @app.get("/api/components")
    def list_components(
        status: str | None = None,
        kind: str | None = None,
        manufacturer: str | None = None,
        text: str | None = None,
        offset: int = 0,
        limit: int = 100,
    ):
        records = store.search(None, status=status, kind=kind, manufacturer=manufacturer, text=text)
        page = records[offset : offset + limit]
        return {"total": len(records), "results": [r.to_json_dict() for r in page]}

    @app.get("/api/components/{record_id}")
    def get_component(record_id: str):
        return _record_or_404(record_id).to_json_dict()

    @app.post("/api/components", status_code=201)
    async def add_component(request: Request):
        payload = await request.json()
        if not isinstance(payload, dict):
            return _error_response("bad_request", "expected a component record object")
        try:
            record = ComponentRecord.from_json_dict(payload)
        except (TypeError, ValueError, AttributeError) as exc:
            return _error_response("bad_request", f"malformed component record: {exc}")
        store.add(record)
        return {"id": record.id}

    @app.post("/api/components/{record_id}/status")
    async def set_status(record_id: str, request: Request):
        payload = await request.json()
        status = payload.get("status") if isinstance(payload, dict) else None
        if not status:
            return _error_response("bad_request", "body must carry a 'status' field")
        return store.set_status(record_id, status).to_json_dict()

    @app.post("/api/query")
    async def query(request: Request):
        payload = await request.json()
        if not isinstance(payload, dict) or not isinstance(payload.get("expression"), str):
            return _error_response("bad_request", "body must carry an 'expression' DSL string")
        filters = payload.get("filters") or {}
        snapshot = store.snapshot()
        expr = parse_expression(payload["expression"])
        results, warnings = store.search_detailed(
            expr,
            status=filters.get("status") or None,
            kind=filters.get("kind") or None,
            manufacturer=filters.get("manufacturer") or None,
            text=filters.get("text") or None,
            snapshot=snapshot,
        )
        offset = int(payload.get("offset", 0))
        limit = int(payload.get("limit", 100))
        page = results[offset : offset + limit]
        return {
            "total": len(results),
            "results": [r.to_json_dict() for r in page],
            "warnings": warnings,
        }

    @app.get("/api/taxonomy/{name}")
    def taxonomy(name: str):
        if name == "hardware":
            members = _descendants(ontology_tbox, "HardwareType")
        elif name == "software":
            members = _descendants(ontology_tbox, "SoftwareType")
        elif name == "capability":
            members = set(ontology_tbox.capability_concepts)
        else:
            raise NotFound(name)
        if not members:
            raise NotFound(name)
        return {"ontology": name, "roots": _taxonomy_tree(ontology_tbox, members)}

    @app.post("/api/compatibility")
    async def compatibility(request: Request):
        payload = await request.json()
        if not isinstance(payload, dict):
            return _error_response("bad_request", "expected {requirer, provider}")
        requirer = _record_or_404(str(payload.get("requirer", "")))
        provider = _record_or_404(str(payload.get("provider", "")))
        ctx = store.context()
        return check_compatibility(ctx, requirer, provider).to_json_dict()

    @app.post("/api/skills/validate")
    async def skills_validate(request: Request):
        payload = await request.json()
        if not isinstance(payload, dict):
            return _error_response("bad_request", "expected a skill document")
        try:
            skill = SkillGraph.from_json_dict(payload)
        except (TypeError, ValueError, AttributeError) as exc:
            return _error_response("bad_request", f"malformed skill document: {exc}")
        report = validate_skill(store.context(), store, skill)
        return report.to_json_dict()

    @app.post("/api/skills/{name}/flatten")
    def skills_flatten(name: str):
        skill = SkillGraph.from_json_dict(store.get_skill(name))
        return flatten(store, skill).to_json_dict()

    @app.get("/api/components/{record_id}/skeleton")
    def skeleton(record_id: str):
        return codegen.generate_skeleton(_record_or_404(record_id)).to_json_dict()

    @app.get("/api/components/{record_id}/manifest")
    def manifest(record_id: str):
        xml = codegen.generate_manifest(_record_or_404(record_id))
        return Response(content=xml, media_type="application/xml")

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def serve(store_dir: str | Path, ontology_files: list[str | Path], bind: str = "127.0.0.1:8000", ui_dir: str | Path | None = None) -> None:
    """Blocking entry point used by the CLI's serve subcommand."""
    import uvicorn

    tbox = load_ontology_files(ontology_files)
    store = Store(store_dir, tbox)
    store.context()  # classify before accepting traffic
    app = create_app(store, tbox, ui_dir=ui_dir)
    host, _, port = bind.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port), log_level="warning")
