"""Ordered document tree: node CRUD, reordering, structural audit.

Documents are single-rooted trees of nodes; each node holds a plain-text
title, a canonical rich fragment, and an ordered child list. All mutations
on one tree are meant to be serialized by the caller (single writer per
document); reads are safe to share.
"""

from __future__ import annotations

import secrets
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import (
    CannotDeleteRoot,
    CycleWouldForm,
    EmptyTitle,
    PositionOutOfRange,
    UnknownNode,
)
from .fragment import canonicalize, validate_title

DOC_FORMAT = "treedoc/1"

Clock = Callable[[], int]


def now_ms() -> int:
    return time.time_ns() // 1_000_000


def mint_id(nbytes: int = 9) -> str:
    return secrets.token_urlsafe(nbytes)


@dataclass
class Node:
    id: str
    title: str
    content: str = ""
    children: list[str] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children


class DocumentTree:
    """Single-rooted ordered tree with derived parent pointers.

    Node ids are engine-minted, URL-safe, and never reused after deletion.
    """

    def __init__(self, doc_id: str, root: Node, clock: Clock | None = None,
                 created_ms: int | None = None, modified_ms: int | None = None):
        self._clock = clock or now_ms
        self.doc_id = doc_id
        self.root = root.id
        self.nodes: dict[str, Node] = {root.id: root}
        self._parent: dict[str, str] = {}
        self._used_ids: set[str] = {root.id}
        self.created_ms = created_ms if created_ms is not None else self._clock()
        self.modified_ms = modified_ms if modified_ms is not None else self.created_ms

    # --- construction ---

    @classmethod
    def create(cls, title: str, doc_id: str | None = None,
               clock: Clock | None = None) -> "DocumentTree":
        """New document with a single empty root node."""
        title = title.strip() if isinstance(title, str) else ""
        if not title:
            raise EmptyTitle("document title must be non-empty")
        validate_title(title)
        root = Node(id=mint_id(), title=title)
        return cls(doc_id=doc_id or mint_id(), root=root, clock=clock)

    @classmethod
    def from_parts(cls, doc_id: str, root_id: str, nodes: dict[str, Node],
                   created_ms: int, modified_ms: int,
                   clock: Clock | None = None) -> "DocumentTree":
        """Rebuild a tree from deserialized nodes; raises ValueError on a
        broken graph (cycle, orphan, unknown child, duplicate parent)."""
        if root_id not in nodes:
            raise ValueError(f"root node {root_id!r} not present")
        tree = cls(doc_id=doc_id, root=nodes[root_id], clock=clock,
                   created_ms=created_ms, modified_ms=modified_ms)
        tree.nodes = dict(nodes)
        tree._used_ids = set(nodes)
        tree._parent = {}
        for node_id, node in nodes.items():
            for cid in node.children:
                if cid not in nodes:
                    raise ValueError(f"node {node_id!r} references unknown child {cid!r}")
                if cid in tree._parent:
                    raise ValueError(f"node {cid!r} has multiple parents")
                tree._parent[cid] = node_id
        tree.audit()
        return tree

    def _mint_unused(self) -> str:
        while True:
            node_id = mint_id()
            if node_id not in self._used_ids:
                return node_id

    def _touch(self) -> None:
        self.modified_ms = self._clock()

    # --- reads ---

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(f"no node {node_id!r}") from None

    def exists(self, node_id: str) -> bool:
        return node_id in self.nodes

    def children(self, node_id: str) -> list[Node]:
        return [self.nodes[cid] for cid in self.node(node_id).children]

    def parent_id(self, node_id: str) -> str | None:
        self.node(node_id)
        return self._parent.get(node_id)

    def depth(self, node_id: str) -> int:
        depth = 0
        current = node_id
        self.node(node_id)
        while current != self.root:
            current = self._parent[current]
            depth += 1
        return depth

    def preorder(self, start: str | None = None) -> Iterator[str]:
        """Node ids of the subtree at ``start`` (default: whole document)."""
        stack = [start if start is not None else self.root]
        self.node(stack[0])
        while stack:
            node_id = stack.pop()
            yield node_id
            stack.extend(reversed(self.nodes[node_id].children))

    def subtree_size(self, node_id: str) -> int:
        return sum(1 for _ in self.preorder(node_id))

    def is_descendant(self, node_id: str, ancestor: str) -> bool:
        current = node_id
        while current != self.root:
            current = self._parent[current]
            if current == ancestor:
                return True
        return False

    # --- mutations ---

    def add_child(self, parent: str, title: str, content: str = "",
                  position: int | None = None, _id: str | None = None) -> str:
        """Insert a new node under ``parent``; returns the fresh node id.

        ``position=None`` appends. ``_id`` is reserved for deserialization;
        API callers never supply ids.
        """
        parent_node = self.node(parent)
        validate_title(title)
        content = canonicalize(content)
        if position is None:
            position = len(parent_node.children)
        if not 0 <= position <= len(parent_node.children):
            raise PositionOutOfRange(
                f"position {position} not in [0, {len(parent_node.children)}]")
        node_id = _id if _id is not None else self._mint_unused()
        if node_id in self._used_ids:
            raise ValueError(f"node id {node_id!r} already used")
        self.nodes[node_id] = Node(id=node_id, title=title, content=content)
        self._used_ids.add(node_id)
        parent_node.children.insert(position, node_id)
        self._parent[node_id] = parent
        self._touch()
        return node_id

    def delete_node(self, node_id: str) -> int:
        """Remove the node and its whole subtree; returns the removed count."""
        self.node(node_id)
        if node_id == self.root:
            raise CannotDeleteRoot("the root node cannot be deleted")
        removed = list(self.preorder(node_id))
        parent = self._parent[node_id]
        self.nodes[parent].children.remove(node_id)
        for rid in removed:
            del self.nodes[rid]
            self._parent.pop(rid, None)
        self._touch()
        return len(removed)

    def move_node(self, node_id: str, new_parent: str, position: int) -> None:
        """Detach the subtree at ``node_id`` and insert under ``new_parent``."""
        self.node(node_id)
        target = self.node(new_parent)
        if node_id == new_parent or node_id == self.root or \
                self.is_descendant(new_parent, node_id):
            raise CycleWouldForm(
                f"cannot move {node_id!r} under its own subtree")
        old_parent = self._parent[node_id]
        limit = len(target.children)
        if old_parent == new_parent:
            limit -= 1
        if not 0 <= position <= limit:
            raise PositionOutOfRange(f"position {position} not in [0, {limit}]")
        self.nodes[old_parent].children.remove(node_id)
        target.children.insert(position, node_id)
        self._parent[node_id] = new_parent
        self._touch()

    def set_content(self, node_id: str, content: str) -> None:
        node = self.node(node_id)
        node.content = canonicalize(content)
        self._touch()

    def set_title(self, node_id: str, title: str) -> None:
        node = self.node(node_id)
        node.title = validate_title(title)
        self._touch()

    # --- integrity ---

    def audit(self) -> None:
        """Full structural audit; raises ValueError on any violation.

        Checks: root present, all nodes reachable exactly once (no cycles,
        no orphans), child lists duplicate-free, parent map consistent.
        """
        if self.root not in self.nodes:
            raise ValueError("root node missing from node map")
        seen: set[str] = set()
        stack = [self.root]
        while stack:
            node_id = stack.pop()
            if node_id in seen:
                raise ValueError(f"node {node_id!r} reached twice (cycle or shared child)")
            seen.add(node_id)
            node = self.nodes.get(node_id)
            if node is None:
                raise ValueError(f"child id {node_id!r} missing from node map")
            if len(set(node.children)) != len(node.children):
                raise ValueError(f"duplicate child ids under {node_id!r}")
            for cid in node.children:
                if self._parent.get(cid) != node_id:
                    raise ValueError(f"parent map out of sync for {cid!r}")
                stack.append(cid)
        orphans = set(self.nodes) - seen
        if orphans:
            raise ValueError(f"orphan nodes: {sorted(orphans)}")
        if self._parent.get(self.root) is not None:
            raise ValueError("root must not have a parent")

    # --- serialization of the tree part (see store for the full file) ---

    def nodes_payload(self) -> dict:
        """Nodes map in preorder, fixed key order per node."""
        payload = {}
        for node_id in self.preorder():
            node = self.nodes[node_id]
            payload[node_id] = {
                "title": node.title,
                "content": node.content,
                "children": list(node.children),
            }
        return payload

    def tree_payload(self) -> dict:
        return {
            "format": DOC_FORMAT,
            "doc_id": self.doc_id,
            "root": self.root,
            "nodes": self.nodes_payload(),
            "created_ms": self.created_ms,
            "modified_ms": self.modified_ms,
        }
