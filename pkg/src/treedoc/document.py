"""Document aggregate: a tree plus its suggestion queue and version history.

Suggestions and versions persist with the document (the confirmation flow is
asynchronous by nature), but they are not part of the tree itself: the
review gate is defined over ``serialize_tree``, which covers only the tree
payload.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .revision import (
    AppliedChange,
    SuggestionStore,
    Version,
    VersionStore,
    apply_suggestion,
    record_snapshot,
    reject_suggestion,
    restore_version,
)
from .tree import Clock, DocumentTree


@dataclass
class Document:
    tree: DocumentTree
    suggestions: SuggestionStore
    versions: VersionStore

    @classmethod
    def create(cls, title: str, doc_id: str | None = None,
               clock: Clock | None = None) -> "Document":
        tree = DocumentTree.create(title, doc_id=doc_id, clock=clock)
        return cls(tree=tree,
                   suggestions=SuggestionStore(clock=clock),
                   versions=VersionStore(clock=clock))

    @property
    def doc_id(self) -> str:
        return self.tree.doc_id

    def serialize_tree(self) -> str:
        """Canonical JSON of the tree part only; the review-gate fingerprint."""
        return json.dumps(self.tree.tree_payload(), sort_keys=False,
                          separators=(",", ":"), ensure_ascii=False)

    def to_payload(self) -> dict:
        payload = self.tree.tree_payload()
        payload["suggestions"] = self.suggestions.to_records()
        payload["versions"] = self.versions.to_records()
        return payload

    # thin delegates so service layers deal with one object

    def apply_suggestion(self, suggestion_id: str,
                         edited_payload: Any = None) -> AppliedChange:
        return apply_suggestion(self.tree, self.suggestions, self.versions,
                                suggestion_id, edited_payload)

    def reject_suggestion(self, suggestion_id: str) -> None:
        reject_suggestion(self.suggestions, suggestion_id)

    def restore_version(self, node_id: str, seq: int) -> Version:
        return restore_version(self.tree, self.versions, node_id, seq)

    def record_snapshot(self, node_id: str, label: str) -> Version:
        return record_snapshot(self.tree, self.versions, node_id, label)
