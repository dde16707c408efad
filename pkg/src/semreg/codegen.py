"""Package manifest and code-skeleton generation from a component record.

Output is language-neutral on purpose: a manifest naming the package and
its message dependencies, plus a skeleton descriptor with one placeholder
hook per declared endpoint. Both are deterministic, so generated artifacts
are safe to diff and freeze as golden files.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .records import ComponentRecord, canonical_json


def package_name(record: ComponentRecord) -> str:
    return re.sub(r"[^A-Za-z0-9_]", "_", record.id)


def message_dependencies(record: ComponentRecord) -> list[str]:
    """Message packages the record's interfaces pull in (`pkg/Type` -> `pkg`)."""
    deps = {spec.message_type.split("/", 1)[0] for spec in record.interfaces if "/" in spec.message_type}
    return sorted(deps)


def generate_manifest(record: ComponentRecord) -> str:
    """Byte-stable XML manifest: name, version, description, author, then
    one depend element per message package, sorted."""
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        "<package>",
        f"  <name>{escape(package_name(record))}</name>",
        f"  <version>{escape(record.meta.version)}</version>",
        f"  <description>{escape(record.meta.description)}</description>",
        f"  <author>{escape(record.meta.author)}</author>",
    ]
    lines.extend(f"  <depend>{escape(dep)}</depend>" for dep in message_dependencies(record))
    lines.append("</package>")
    return "\n".join(lines) + "\n"


_HOOK_PREFIX = {
    ("Topic", "Requires"): "on",
    ("Topic", "Provides"): "publish",
    ("Service", "Provides"): "handle",
    ("Service", "Requires"): "call",
    ("Action", "Provides"): "execute",
    ("Action", "Requires"): "send",
}


def _hook_name(kind: str, direction: str, endpoint_name: str) -> str:
    prefix = _HOOK_PREFIX.get((kind, direction), "wire")
    safe = re.sub(r"[^A-Za-z0-9_]", "_", endpoint_name)
    return f"{prefix}_{safe}"


@dataclass(frozen=True)
class SkeletonEndpoint:
    kind: str
    direction: str
    name: str
    message_type: str
    placeholder_hook: str

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "direction": self.direction,
            "name": self.name,
            "messageType": self.message_type,
            "placeholderHook": self.placeholder_hook,
        }


@dataclass(frozen=True)
class SkeletonDescriptor:
    """Everything a language-specific emitter needs to lay out a package."""

    package_name: str
    manifest: str
    endpoints: tuple[SkeletonEndpoint, ...]
    parameters: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "packageName": self.package_name,
            "manifest": self.manifest,
            "endpoints": [e.to_json_dict() for e in self.endpoints],
            "parameters": list(self.parameters),
        }

    def to_json(self) -> str:
        return canonical_json(self.to_json_dict())


def generate_skeleton(record: ComponentRecord) -> SkeletonDescriptor:
    """One endpoint entry per declared interface, in declaration order, each
    with a named placeholder hook for the application code to fill in."""
    endpoints = tuple(
        SkeletonEndpoint(
            kind=spec.kind,
            direction=spec.direction,
            name=spec.name,
            message_type=spec.message_type,
            placeholder_hook=_hook_name(spec.kind, spec.direction, spec.name),
        )
        for spec in record.interfaces
    )
    return SkeletonDescriptor(
        package_name=package_name(record),
        manifest=generate_manifest(record),
        endpoints=endpoints,
        parameters=tuple(record.parameters),
    )
