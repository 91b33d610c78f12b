"""Suggestion lifecycle and per-node version history.

AI-proposed changes never touch the tree directly: they are queued here as
pending suggestions and applied only by ``apply_suggestion`` (optionally
with a user-edited payload) or discarded by ``reject_suggestion``. Every
accepted change archives a version snapshot of the touched node; history is
append-only and restoration itself appends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .diffing import Hunk, compute_diff, diff_text
from .errors import (
    AlreadyResolved,
    InvalidFragment,
    UnknownSuggestion,
    UnknownVersion,
)
from .fragment import canonicalize, validate_title
from .tree import Clock, DocumentTree, now_ms

SUGGESTION_KINDS = ("new_title", "new_content", "new_child", "new_children_batch")
MAX_BATCH_CHILDREN = 5

PENDING = "pending"
ACCEPTED = "accepted"
REJECTED = "rejected"


@dataclass
class Suggestion:
    suggestion_id: str
    kind: str
    target: str  # the node to change; the parent for child kinds
    payload: Any
    origin: str  # "assistant" or "button:<op-name>"
    status: str = PENDING
    created_ms: int = 0


@dataclass(frozen=True)
class Version:
    node_id: str
    seq: int
    label: str
    title_snapshot: str
    content_snapshot: str
    created_ms: int


def _validated_child(item: Any) -> dict:
    if not isinstance(item, dict):
        raise InvalidFragment("child proposal must be an object with title and content")
    if not isinstance(item.get("title"), str) or not isinstance(item.get("content"), str):
        raise InvalidFragment("child proposal needs string title and content")
    return {
        "title": validate_title(item["title"]),
        "content": canonicalize(item["content"]),
    }


def validate_payload(kind: str, payload: Any) -> Any:
    """Normalize a suggestion payload; raises on shape or fragment breaches."""
    if kind == "new_title":
        if not isinstance(payload, str):
            raise InvalidFragment("title payload must be a string")
        return validate_title(payload)
    if kind == "new_content":
        if not isinstance(payload, str):
            raise InvalidFragment("content payload must be a string")
        return canonicalize(payload)
    if kind == "new_child":
        return _validated_child(payload)
    if kind == "new_children_batch":
        if not isinstance(payload, list) or not payload:
            raise InvalidFragment("batch payload must be a non-empty list")
        if len(payload) > MAX_BATCH_CHILDREN:
            raise InvalidFragment(
                f"batch payload exceeds {MAX_BATCH_CHILDREN} children")
        return [_validated_child(item) for item in payload]
    raise ValueError(f"unknown suggestion kind {kind!r}")


class SuggestionStore:
    """Pending/resolved suggestions for one document, in queue order.

    Ids are small sequential tokens ("s1", "s2", ...) so replayed transcripts
    produce identical queues.
    """

    def __init__(self, clock: Clock | None = None):
        self._clock = clock or now_ms
        self._items: dict[str, Suggestion] = {}
        self._next = 1

    def queue(self, kind: str, target: str, payload: Any, origin: str) -> Suggestion:
        payload = validate_payload(kind, payload)
        suggestion = Suggestion(
            suggestion_id=f"s{self._next}",
            kind=kind,
            target=target,
            payload=payload,
            origin=origin,
            created_ms=self._clock(),
        )
        self._next += 1
        self._items[suggestion.suggestion_id] = suggestion
        return suggestion

    def get(self, suggestion_id: str) -> Suggestion:
        try:
            return self._items[suggestion_id]
        except KeyError:
            raise UnknownSuggestion(f"no suggestion {suggestion_id!r}") from None

    def list(self, status: str | None = None) -> list[Suggestion]:
        items = list(self._items.values())
        if status is not None:
            items = [s for s in items if s.status == status]
        return items

    def to_records(self) -> list[dict]:
        return [
            {
                "suggestion_id": s.suggestion_id,
                "kind": s.kind,
                "target": s.target,
                "payload": s.payload,
                "origin": s.origin,
                "status": s.status,
                "created_ms": s.created_ms,
            }
            for s in self._items.values()
        ]

    @classmethod
    def from_records(cls, records: list[dict], clock: Clock | None = None) -> "SuggestionStore":
        store = cls(clock=clock)
        for rec in records:
            suggestion = Suggestion(**rec)
            store._items[suggestion.suggestion_id] = suggestion
            # ids are "s<n>"; keep the counter ahead of everything seen
            tail = suggestion.suggestion_id.lstrip("s")
            if tail.isdigit():
                store._next = max(store._next, int(tail) + 1)
        return store


class VersionStore:
    """Append-only labeled snapshots, sequenced per node starting at 1."""

    def __init__(self, clock: Clock | None = None):
        self._clock = clock or now_ms
        self._by_node: dict[str, list[Version]] = {}
        self._order: list[Version] = []

    def record(self, node_id: str, label: str, title: str, content: str) -> Version:
        history = self._by_node.setdefault(node_id, [])
        version = Version(
            node_id=node_id,
            seq=len(history) + 1,
            label=label,
            title_snapshot=title,
            content_snapshot=content,
            created_ms=self._clock(),
        )
        history.append(version)
        self._order.append(version)
        return version

    def list_for(self, node_id: str) -> tuple[Version, ...]:
        return tuple(self._by_node.get(node_id, ()))

    def get(self, node_id: str, seq: int) -> Version:
        history = self._by_node.get(node_id, [])
        if not 1 <= seq <= len(history):
            raise UnknownVersion(f"node {node_id!r} has no version {seq}")
        return history[seq - 1]

    def to_records(self) -> list[dict]:
        return [
            {
                "node_id": v.node_id,
                "seq": v.seq,
                "label": v.label,
                "title_snapshot": v.title_snapshot,
                "content_snapshot": v.content_snapshot,
                "created_ms": v.created_ms,
            }
            for v in self._order
        ]

    @classmethod
    def from_records(cls, records: list[dict], clock: Clock | None = None) -> "VersionStore":
        store = cls(clock=clock)
        for rec in records:
            version = Version(**rec)
            history = store._by_node.setdefault(version.node_id, [])
            if version.seq != len(history) + 1:
                raise ValueError(
                    f"version seq gap for node {version.node_id!r}: got {version.seq}")
            history.append(version)
            store._order.append(version)
        return store


def origin_label(origin: str) -> str:
    """Descriptive archive label for an accepted AI change."""
    name = origin[len("button:"):] if origin.startswith("button:") else origin
    return f"AI: {name}"


@dataclass
class AppliedChange:
    suggestion_id: str
    kind: str
    nodes: list[str] = field(default_factory=list)
    versions: list[tuple[str, int]] = field(default_factory=list)
    diff: list[Hunk] | None = None


def apply_suggestion(tree: DocumentTree, suggestions: SuggestionStore,
                     versions: VersionStore, suggestion_id: str,
                     edited_payload: Any = None) -> AppliedChange:
    """Apply a pending suggestion (or the user's edited payload) to the tree.

    The effective payload is re-validated, the change lands on the tree, one
    version is archived per touched node, and the suggestion is resolved.
    The returned change carries a fresh diff against the effective payload so
    review surfaces stay truthful after edit mode.
    """
    suggestion = suggestions.get(suggestion_id)
    if suggestion.status != PENDING:
        raise AlreadyResolved(
            f"suggestion {suggestion_id!r} is {suggestion.status}")
    target = tree.node(suggestion.target)
    payload = suggestion.payload
    if edited_payload is not None:
        payload = validate_payload(suggestion.kind, edited_payload)
    label = origin_label(suggestion.origin)
    change = AppliedChange(suggestion_id=suggestion_id, kind=suggestion.kind)

    if suggestion.kind == "new_title":
        change.diff = diff_text(target.title, payload)
        tree.set_title(target.id, payload)
        version = versions.record(target.id, label, target.title, target.content)
        change.nodes.append(target.id)
        change.versions.append((target.id, version.seq))
    elif suggestion.kind == "new_content":
        change.diff = compute_diff(target.content, payload)
        tree.set_content(target.id, payload)
        version = versions.record(target.id, label, target.title, target.content)
        change.nodes.append(target.id)
        change.versions.append((target.id, version.seq))
    elif suggestion.kind == "new_child":
        node_id = tree.add_child(target.id, payload["title"], payload["content"])
        version = versions.record(node_id, label, payload["title"], payload["content"])
        change.nodes.append(node_id)
        change.versions.append((node_id, version.seq))
    elif suggestion.kind == "new_children_batch":
        for item in payload:
            node_id = tree.add_child(target.id, item["title"], item["content"])
            version = versions.record(node_id, label, item["title"], item["content"])
            change.nodes.append(node_id)
            change.versions.append((node_id, version.seq))
    else:
        raise ValueError(f"unknown suggestion kind {suggestion.kind!r}")

    suggestion.status = ACCEPTED
    return change


def reject_suggestion(suggestions: SuggestionStore, suggestion_id: str) -> None:
    """Resolve a pending suggestion without touching the tree."""
    suggestion = suggestions.get(suggestion_id)
    if suggestion.status != PENDING:
        raise AlreadyResolved(
            f"suggestion {suggestion_id!r} is {suggestion.status}")
    suggestion.status = REJECTED


def restore_version(tree: DocumentTree, versions: VersionStore,
                    node_id: str, seq: int) -> Version:
    """Set a node back to a snapshot; the restoration is itself archived."""
    tree.node(node_id)
    snapshot = versions.get(node_id, seq)
    tree.set_title(node_id, snapshot.title_snapshot)
    tree.set_content(node_id, snapshot.content_snapshot)
    return versions.record(node_id, f"restore of v{seq}",
                           snapshot.title_snapshot, snapshot.content_snapshot)


def record_snapshot(tree: DocumentTree, versions: VersionStore,
                    node_id: str, label: str) -> Version:
    """Manual snapshot of a node's current title and content."""
    node = tree.node(node_id)
    return versions.record(node_id, label, node.title, node.content)
