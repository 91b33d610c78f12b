"""HTTP API over the document store.

One process, one store directory; every mutation happens under the target
document's write lock and is persisted before the response goes out. Agent
sessions are in-memory only (suggestions they queue are persisted with the
document, transcripts are not).

Engine errors map to statuses via errors.HTTP_STATUS and come back as
``{"error": code, "detail": text}``.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import ai_ops
from .assistant import AgentSession, run_turn, search_nodes
from .errors import HTTP_STATUS, TreeDocError, UnsupportedFormat
from .gateway import Gateway
from .linearize import linearize, render
from .store import DocumentStore

ENV_ADDR = "TREEDOC_ADDR"
ENV_UI_DIR = "TREEDOC_UI_DIR"
DEFAULT_ADDR = "127.0.0.1:7340"

AI_OPS = {
    "split": ai_ops.split_into_subsections,
    "outline_from_children": ai_ops.generate_outline_from_children,
    "paragraph": ai_ops.generate_paragraph,
    "outline_from_paragraph": ai_ops.generate_outline_from_paragraph,
}


class CreateDoc(BaseModel):
    title: str


class AddNode(BaseModel):
    parent: str
    title: str = ""
    content: str = ""
    position: int | None = None


class PatchNode(BaseModel):
    title: str | None = None
    content: str | None = None


class MoveNode(BaseModel):
    new_parent: str
    position: int


class AiRequest(BaseModel):
    user_prompt: str | None = None


class ChatMessage(BaseModel):
    session_id: str | None = None
    selected: str
    marked: list[str] | None = None
    message: str


class AcceptSuggestion(BaseModel):
    edited_payload: Any = None


class Documents:
    """In-memory cache over the store; this process owns all writes."""

    def __init__(self, store: DocumentStore):
        self.store = store
        self._cache: dict[str, Any] = {}

    def get(self, doc_id: str):
        if doc_id not in self._cache:
            self._cache[doc_id] = self.store.load(doc_id)
        return self._cache[doc_id]

    def put(self, doc) -> None:
        self._cache[doc.doc_id] = doc

    def save(self, doc) -> None:
        self.store.save(doc)


def suggestion_record(s) -> dict:
    return {
        "suggestion_id": s.suggestion_id,
        "kind": s.kind,
        "target": s.target,
        "payload": s.payload,
        "origin": s.origin,
        "status": s.status,
        "created_ms": s.created_ms,
    }


def version_record(v) -> dict:
    return {
        "node_id": v.node_id,
        "seq": v.seq,
        "label": v.label,
        "title_snapshot": v.title_snapshot,
        "content_snapshot": v.content_snapshot,
        "created_ms": v.created_ms,
    }


def create_app(store: DocumentStore, gateway: Gateway | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="treedoc", version="0.1.0")
    docs = Documents(store)
    sessions: dict[str, AgentSession] = {}

    def get_gateway() -> Gateway:
        nonlocal gateway
        if gateway is None:
            gateway = Gateway.from_env()
        return gateway

    @app.exception_handler(TreeDocError)
    async def engine_error(request: Request, exc: TreeDocError):
        status = HTTP_STATUS.get(exc.code, 500)
        return JSONResponse(status_code=status,
                            content={"error": exc.code, "detail": exc.detail})

    @app.post("/docs")
    def create_doc(body: CreateDoc):
        with store.lock("__create__"):
            doc = store.create(body.title)
            docs.put(doc)
        return {"doc_id": doc.doc_id, "root": doc.tree.root}

    @app.get("/docs/{doc_id}/tree")
    def get_tree(doc_id: str):
        return docs.get(doc_id).tree.tree_payload()

    @app.post("/docs/{doc_id}/nodes")
    def add_node(doc_id: str, body: AddNode):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            node_id = doc.tree.add_child(body.parent, body.title, body.content,
                                         body.position)
            docs.save(doc)
        return {"id": node_id}

    @app.patch("/docs/{doc_id}/nodes/{node_id}")
    def patch_node(doc_id: str, node_id: str, body: PatchNode):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            if body.title is not None:
                doc.tree.set_title(node_id, body.title)
            if body.content is not None:
                doc.tree.set_content(node_id, body.content)
            docs.save(doc)
        return {}

    @app.delete("/docs/{doc_id}/nodes/{node_id}")
    def delete_node(doc_id: str, node_id: str):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            removed = doc.tree.delete_node(node_id)
            docs.save(doc)
        return {"removed": removed}

    @app.post("/docs/{doc_id}/nodes/{node_id}/move")
    def move_node(doc_id: str, node_id: str, body: MoveNode):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            doc.tree.move_node(node_id, body.new_parent, body.position)
            docs.save(doc)
        return {}

    @app.get("/docs/{doc_id}/linear")
    def linear(doc_id: str, root: str | None = None, format: str = "html",
               headings: str = "on"):
        doc = docs.get(doc_id)
        if headings not in ("on", "off"):
            raise UnsupportedFormat("headings must be 'on' or 'off'")
        policy = "titles-as-headings" if headings == "on" else "none"
        segments = linearize(doc.tree, root)
        scope = root if root is not None else doc.tree.root
        return {"text": render(doc.tree, segments, format, policy, scope_root=scope),
                "segments": [{"node_id": s.node_id, "depth": s.depth,
                              "fragment": s.fragment} for s in segments]}

    @app.get("/docs/{doc_id}/search")
    def search(doc_id: str, q: str = ""):
        doc = docs.get(doc_id)
        return [{"id": h.node_id, "title": h.title, "snippet": h.snippet}
                for h in search_nodes(doc.tree, q)]

    @app.post("/docs/{doc_id}/nodes/{node_id}/ai/{op}")
    def ai_op(doc_id: str, node_id: str, op: str, body: AiRequest):
        if op not in AI_OPS:
            raise UnsupportedFormat(
                f"unknown AI op {op!r}; one of {sorted(AI_OPS)}")
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            kwargs = {}
            if op == "paragraph" and body.user_prompt:
                kwargs["user_prompt"] = body.user_prompt
            suggestion = AI_OPS[op](doc, node_id, get_gateway(), **kwargs)
            docs.save(doc)
        return {"suggestion_id": suggestion.suggestion_id}

    @app.post("/docs/{doc_id}/chat")
    def chat(doc_id: str, body: ChatMessage):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            session = sessions.get(body.session_id) if body.session_id else None
            if session is None:
                session = AgentSession.start(doc_id, body.selected,
                                             set(body.marked or ()),
                                             session_id=body.session_id)
                sessions[session.session_id] = session
            else:
                session.selected_node = body.selected
                session.loaded_nodes.add(body.selected)
                if body.marked is not None:
                    session.marked_nodes = set(body.marked)
            result = run_turn(session, doc, get_gateway(), body.message)
            docs.save(doc)
        return {
            "session_id": session.session_id,
            "assistant_text": result.assistant_text,
            "suggestion_ids": result.queued_suggestion_ids,
            "budget_exhausted": result.budget_exhausted,
        }

    @app.get("/docs/{doc_id}/suggestions")
    def list_suggestions(doc_id: str, status: str | None = None):
        doc = docs.get(doc_id)
        return [suggestion_record(s) for s in doc.suggestions.list(status)]

    @app.post("/docs/{doc_id}/suggestions/{suggestion_id}/accept")
    def accept_suggestion(doc_id: str, suggestion_id: str,
                          body: AcceptSuggestion | None = None):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            edited = body.edited_payload if body else None
            change = doc.apply_suggestion(suggestion_id, edited)
            docs.save(doc)
        return {"nodes": change.nodes,
                "versions": [list(v) for v in change.versions]}

    @app.post("/docs/{doc_id}/suggestions/{suggestion_id}/reject")
    def reject_suggestion(doc_id: str, suggestion_id: str):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            doc.reject_suggestion(suggestion_id)
            docs.save(doc)
        return {}

    @app.get("/docs/{doc_id}/nodes/{node_id}/versions")
    def list_versions(doc_id: str, node_id: str):
        doc = docs.get(doc_id)
        doc.tree.node(node_id)
        return [version_record(v) for v in doc.versions.list_for(node_id)]

    @app.post("/docs/{doc_id}/nodes/{node_id}/versions/{seq}/restore")
    def restore(doc_id: str, node_id: str, seq: int):
        with store.lock(doc_id):
            doc = docs.get(doc_id)
            doc.restore_version(node_id, seq)
            docs.save(doc)
        return {}

    ui = Path(ui_dir) if ui_dir else Path(os.environ.get(ENV_UI_DIR, "frontend/dist"))
    if ui.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(ui), html=True), name="ui")

    return app


def serve(store_dir: str, addr: str | None = None,
          gateway: Gateway | None = None) -> None:
    import uvicorn

    addr = addr or os.environ.get(ENV_ADDR, DEFAULT_ADDR)
    host, _, port = addr.rpartition(":")
    app = create_app(DocumentStore(store_dir), gateway=gateway)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
