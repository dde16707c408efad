"""Persistent component store with semantic indexing.

Layout: one ``<id>.component.json`` per record and one ``<name>.skill.json``
per stored skill graph inside the store directory, plus ``index.bin`` — a
rebuildable cache (never a source of truth) with a one-byte format-version
header.

Concurrency contract: single writer, many readers. Every mutation builds a
fresh immutable snapshot and swaps it in atomically; readers work against
the snapshot they grabbed at request start and can never observe a
half-applied change.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Callable

from .errors import DuplicateId, IllegalTransition, NotFound, ValidationFailed
from .ontology import ConceptExpression, TBox
from .reasoner import ClassifiedOntology
from .records import (
    STATUS_RANK,
    ComponentRecord,
    build_working_tbox,
    canonical_json,
    is_legal_status_transition,
    record_concept,
    validate_record,
)

INDEX_FORMAT_VERSION = 1
COMPONENT_SUFFIX = ".component.json"
SKILL_SUFFIX = ".skill.json"


class _Snapshot:
    """Immutable view of the store contents plus a lazily built reasoner
    context over base ontologies + registry vocabulary + record concepts."""

    def __init__(self, base_tbox: TBox, records: dict[str, ComponentRecord], skills: dict[str, dict]):
        self.records = dict(records)
        self.skills = dict(skills)
        self._base_tbox = base_tbox
        self._context: ClassifiedOntology | None = None
        self._context_lock = threading.Lock()

    def context(self) -> ClassifiedOntology:
        if self._context is None:
            with self._context_lock:
                if self._context is None:
                    working = build_working_tbox(self._base_tbox, self.records.values())
                    self._context = ClassifiedOntology(working)
        return self._context


class Store:
    """Registry of component records backed by a directory of JSON files."""

    def __init__(self, directory: str | Path, base_tbox: TBox):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.base_tbox = base_tbox
        # Records only reference ontology/vocabulary names, so validation can
        # run against this once-classified context no matter how many
        # records the store holds.
        self._base_context = ClassifiedOntology(build_working_tbox(base_tbox, ()))
        self._write_lock = threading.Lock()
        records, skills = self._load_directory()
        self._snapshot = _Snapshot(base_tbox, records, skills)
        self._write_index(records)

    # -- loading -----------------------------------------------------------

    def _load_directory(self) -> tuple[dict[str, ComponentRecord], dict[str, dict]]:
        records: dict[str, ComponentRecord] = {}
        skills: dict[str, dict] = {}
        for path in sorted(self.directory.glob(f"*{COMPONENT_SUFFIX}")):
            record = ComponentRecord.from_json(path.read_text(encoding="utf-8"))
            records[record.id] = record
        for path in sorted(self.directory.glob(f"*{SKILL_SUFFIX}")):
            name = path.name[: -len(SKILL_SUFFIX)]
            skills[name] = json.loads(path.read_text(encoding="utf-8"))
        return records, skills

    def _index_payload(self, records: dict[str, ComponentRecord]) -> dict:
        return {
            "records": {
                record_id: {"kind": r.kind, "status": r.meta.status, "version": r.meta.version}
                for record_id, r in sorted(records.items())
            }
        }

    def _write_index(self, records: dict[str, ComponentRecord]) -> None:
        payload = canonical_json(self._index_payload(records)).encode("utf-8")
        (self.directory / "index.bin").write_bytes(bytes([INDEX_FORMAT_VERSION]) + payload)

    def read_index(self) -> dict | None:
        """The cached summary, or None when missing/stale. The record files
        stay the source of truth; a stale cache is simply rewritten."""
        path = self.directory / "index.bin"
        if not path.exists():
            return None
        raw = path.read_bytes()
        if not raw or raw[0] != INDEX_FORMAT_VERSION:
            return None
        try:
            return json.loads(raw[1:].decode("utf-8"))
        except ValueError:
            return None

    # -- snapshot access ----------------------------------------------------

    def snapshot(self) -> _Snapshot:
        return self._snapshot

    def context(self) -> ClassifiedOntology:
        return self._snapshot.context()

    def base_context(self) -> ClassifiedOntology:
        """Ontologies + registry vocabulary, without any record concepts."""
        return self._base_context

    def get(self, record_id: str) -> ComponentRecord:
        record = self._snapshot.records.get(record_id)
        if record is None:
            raise NotFound(record_id)
        return record

    def list_records(self) -> list[ComponentRecord]:
        return [self._snapshot.records[k] for k in sorted(self._snapshot.records)]

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._snapshot.records

    # -- mutations -----------------------------------------------------------

    def _swap(self, mutate: Callable[[dict, dict], None]) -> _Snapshot:
        with self._write_lock:
            records = dict(self._snapshot.records)
            skills = dict(self._snapshot.skills)
            mutate(records, skills)
            snapshot = _Snapshot(self.base_tbox, records, skills)
            self._write_index(records)
            self._snapshot = snapshot
            return snapshot

    def _record_path(self, record_id: str) -> Path:
        return self.directory / f"{record_id}{COMPONENT_SUFFIX}"

    def _skill_path(self, name: str) -> Path:
        return self.directory / f"{name}{SKILL_SUFFIX}"

    def add(self, record: ComponentRecord) -> str:
        """Validates and persists a record, then refreshes the semantic index."""
        if record.id in self._snapshot.records:
            raise DuplicateId(record.id)
        violations = validate_record(self._base_context, record)
        if violations:
            raise ValidationFailed(violations)

        def mutate(records: dict, skills: dict) -> None:
            if record.id in records:
                raise DuplicateId(record.id)
            self._record_path(record.id).write_text(record.to_json(), encoding="utf-8")
            records[record.id] = record

        self._swap(mutate)
        return record.id

    def remove(self, record_id: str) -> None:
        def mutate(records: dict, skills: dict) -> None:
            if record_id not in records:
                raise NotFound(record_id)
            self._record_path(record_id).unlink(missing_ok=True)
            del records[record_id]

        self._swap(mutate)

    def set_status(self, record_id: str, status: str) -> ComponentRecord:
        """Advances the lifecycle status; only Model -> Prototype -> Released
        single steps are legal."""
        updated: dict[str, ComponentRecord] = {}

        def mutate(records: dict, skills: dict) -> None:
            record = records.get(record_id)
            if record is None:
                raise NotFound(record_id)
            if not is_legal_status_transition(record.meta.status, status):
                raise IllegalTransition(record.meta.status, status)
            new_record = record.with_status(status)
            self._record_path(record_id).write_text(new_record.to_json(), encoding="utf-8")
            records[record_id] = new_record
            updated["record"] = new_record

        self._swap(mutate)
        return updated["record"]

    def save_skill(self, name: str, document: dict) -> None:
        def mutate(records: dict, skills: dict) -> None:
            self._skill_path(name).write_text(canonical_json(document), encoding="utf-8")
            skills[name] = document

        self._swap(mutate)

    def get_skill(self, name: str) -> dict:
        document = self._snapshot.skills.get(name)
        if document is None:
            raise NotFound(name)
        return document

    def list_skills(self) -> list[str]:
        return sorted(self._snapshot.skills)

    def save_solution(self, name: str, document: dict) -> Path:
        """Solutions are deployment artifacts, not searchable records; they
        are written next to the skill files and not indexed."""
        path = self.directory / f"{name}.solution.json"
        path.write_text(canonical_json(document), encoding="utf-8")
        return path

    # -- search ---------------------------------------------------------------

    def search(
        self,
        query: ConceptExpression | None = None,
        status: str | None = None,
        kind: str | None = None,
        manufacturer: str | None = None,
        text: str | None = None,
        snapshot: _Snapshot | None = None,
    ) -> list[ComponentRecord]:
        records, _ = self.search_detailed(
            query, status=status, kind=kind, manufacturer=manufacturer, text=text, snapshot=snapshot
        )
        return records

    def search_detailed(
        self,
        query: ConceptExpression | None = None,
        status: str | None = None,
        kind: str | None = None,
        manufacturer: str | None = None,
        text: str | None = None,
        snapshot: _Snapshot | None = None,
    ) -> tuple[list[ComponentRecord], list[str]]:
        """Semantic pre-filter via the reasoner, then literal filters.

        Ranking is deterministic: Released before Prototype before Model,
        then lexicographic id. Also returns reasoner warnings (e.g. a query
        clause whose constraints admit no value).
        """
        snap = snapshot or self._snapshot
        ctx = snap.context()
        warnings: list[str] = []
        if query is not None:
            candidates = {record_concept(record_id) for record_id in snap.records}
            matched, warnings = ctx.query_detailed(query, candidates)
            ids = [name.split("/", 1)[1] for name in matched]
        else:
            ids = sorted(snap.records)
        results = []
        for record_id in ids:
            record = snap.records[record_id]
            if status is not None and record.meta.status != status:
                continue
            if kind is not None and record.kind != kind:
                continue
            if manufacturer is not None:
                needle = manufacturer.lower()
                if not any(needle in d.manufacturer.lower() for d in record.supported_devices):
                    continue
            if text is not None:
                haystack = " ".join(
                    [record.id, record.meta.description, record.meta.author, record.meta.owner]
                    + [d.model_name for d in record.supported_devices]
                ).lower()
                if text.lower() not in haystack:
                    continue
            results.append(record)
        results.sort(key=lambda r: (STATUS_RANK.get(r.meta.status, 3), r.id))
        return results, warnings
