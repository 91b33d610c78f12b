"""Document persistence: one treedoc/1 JSON file per document.

Writes are atomic (write to a temp file in the same directory, fsync, then
rename), so a crash mid-save never leaves a truncated document. Loading
validates both JSON and structure; a FormatError names the JSON path at
fault so corruption is diagnosable.

Key order in the file is fixed and the nodes map is serialized in preorder,
which keeps diffs of saved documents readable.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import threading
from pathlib import Path

from .document import Document
from .errors import FormatError, InvalidFragment, InvalidTitle, IoError, UnknownDoc
from .fragment import canonicalize, validate_title
from .revision import SuggestionStore, VersionStore, validate_payload
from .tree import DOC_FORMAT, Clock, DocumentTree, Node

_DOC_ID_RE = re.compile(r"^[A-Za-z0-9_-]{1,64}$")


def validate_doc_id(doc_id: str) -> str:
    if not isinstance(doc_id, str) or not _DOC_ID_RE.match(doc_id):
        raise UnknownDoc(f"invalid document id {doc_id!r}")
    return doc_id


def _expect(payload: dict, key: str, kind: type, path: str):
    if key not in payload:
        raise FormatError(f"{path}{key}: missing")
    value = payload[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise FormatError(f"{path}{key}: expected {kind.__name__}")
    return value


def document_from_payload(payload, clock: Clock | None = None) -> Document:
    """Build a Document from a parsed treedoc/1 object, naming bad paths."""
    if not isinstance(payload, dict):
        raise FormatError("$: expected a JSON object")
    fmt = _expect(payload, "format", str, "")
    if fmt != DOC_FORMAT:
        raise FormatError(f"format: unsupported format {fmt!r}")
    doc_id = _expect(payload, "doc_id", str, "")
    root_id = _expect(payload, "root", str, "")
    nodes_raw = _expect(payload, "nodes", dict, "")
    created_ms = _expect(payload, "created_ms", int, "")
    modified_ms = _expect(payload, "modified_ms", int, "")

    if root_id not in nodes_raw:
        raise FormatError(f"root: node {root_id!r} not present in nodes")

    nodes: dict[str, Node] = {}
    for node_id, raw in nodes_raw.items():
        path = f"nodes.{node_id}."
        if not isinstance(raw, dict):
            raise FormatError(f"nodes.{node_id}: expected object")
        title = _expect(raw, "title", str, path)
        content = _expect(raw, "content", str, path)
        children = _expect(raw, "children", list, path)
        try:
            validate_title(title)
        except InvalidTitle as exc:
            raise FormatError(f"{path}title: {exc.detail}")
        try:
            content = canonicalize(content)
        except InvalidFragment as exc:
            raise FormatError(f"{path}content: {exc.detail}")
        for i, cid in enumerate(children):
            if not isinstance(cid, str) or cid not in nodes_raw:
                raise FormatError(f"{path}children[{i}]: unknown node {cid!r}")
        if len(set(children)) != len(children):
            raise FormatError(f"{path}children: duplicate child ids")
        nodes[node_id] = Node(id=node_id, title=title, content=content,
                              children=list(children))

    try:
        tree = DocumentTree.from_parts(doc_id, root_id, nodes,
                                       created_ms, modified_ms, clock=clock)
    except ValueError as exc:
        raise FormatError(f"nodes: {exc}")

    try:
        suggestions = SuggestionStore.from_records(
            payload.get("suggestions", []), clock=clock)
        for record in suggestions.list():
            validate_payload(record.kind, record.payload)
    except (TypeError, ValueError, InvalidFragment, InvalidTitle) as exc:
        raise FormatError(f"suggestions: {exc}")
    try:
        versions = VersionStore.from_records(payload.get("versions", []), clock=clock)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"versions: {exc}")

    return Document(tree=tree, suggestions=suggestions, versions=versions)


def load_document_file(path: Path, clock: Clock | None = None) -> Document:
    try:
        text = path.read_text("utf-8")
    except FileNotFoundError:
        raise UnknownDoc(f"no document file at {path}")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}")
    except UnicodeDecodeError as exc:
        raise FormatError(f"$: file is not valid UTF-8: {exc}")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(
            f"$: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    return document_from_payload(payload, clock=clock)


def save_document_file(doc: Document, path: Path) -> None:
    """Atomic write: temp file in the target directory, fsync, rename."""
    payload = doc.to_payload()
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=".treedoc-",
                                        suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, path)
        except BaseException:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}")


class DocumentStore:
    """Directory of treedoc/1 files with per-document write locks."""

    def __init__(self, root: str | Path, clock: Clock | None = None):
        self.root = Path(root)
        self._clock = clock
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def lock(self, doc_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(doc_id, threading.Lock())

    def path(self, doc_id: str) -> Path:
        return self.root / f"{validate_doc_id(doc_id)}.json"

    def exists(self, doc_id: str) -> bool:
        try:
            return self.path(doc_id).exists()
        except UnknownDoc:
            return False

    def list_ids(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.stem for p in self.root.glob("*.json"))

    def create(self, title: str, doc_id: str | None = None) -> Document:
        if doc_id is not None:
            validate_doc_id(doc_id)
            if self.exists(doc_id):
                raise IoError(f"document {doc_id!r} already exists")
        doc = Document.create(title, doc_id=doc_id, clock=self._clock)
        self.save(doc)
        return doc

    def load(self, doc_id: str) -> Document:
        path = self.path(doc_id)
        if not path.exists():
            raise UnknownDoc(f"no document {doc_id!r}")
        return load_document_file(path, clock=self._clock)

    def save(self, doc: Document) -> None:
        save_document_file(doc, self.path(doc.doc_id))
