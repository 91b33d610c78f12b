"""The agentic writing assistant.

One session holds a chat transcript over one document. Each turn assembles
a fresh system prompt from the live tree (selected node, parent, marked
nodes, child/sibling listings), then loops: the model answers with tool
calls, the engine executes them against the tree, results go back into the
transcript, until the model produces a plain message or the step budget
runs out.

Tools never mutate the tree. The suggest_* tools queue pending suggestions;
errors (unknown node, load gate, bad arguments) are returned to the model
as structured tool results so it can recover on its own.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .document import Document
from .errors import EmptyKeyword, SessionClosed, TreeDocError, UnknownNode
from .gateway import ChatRequest, Gateway
from .linearize import strip_plain_text
from .prompting import render_prompt
from .tree import DocumentTree, mint_id

DEFAULT_STEP_BUDGET = 16
LOAD_GATE_ERROR = "node not loaded; call load_node_content first"

TOOL_SCHEMAS: list[dict] = [
    {
        "name": "load_node_content",
        "description": "Loads a node's content into the context by its ID.",
        "parameters": {
            "type": "object",
            "properties": {"node_id": {"type": "string",
                                       "description": "ID of the node to load"}},
            "required": ["node_id"],
        },
    },
    {
        "name": "load_node_children",
        "description": "Loads the ID and title of the child nodes of a node "
                       "into the context.",
        "parameters": {
            "type": "object",
            "properties": {"node_id": {"type": "string",
                                       "description": "ID of the parent node"}},
            "required": ["node_id"],
        },
    },
    {
        "name": "suggest_new_title",
        "description": "Suggests a new title of a node for the user to review.",
        "parameters": {
            "type": "object",
            "properties": {
                "node_id": {"type": "string", "description": "ID of the node"},
                "title": {"type": "string", "description": "Proposed title"},
            },
            "required": ["node_id", "title"],
        },
    },
    {
        "name": "suggest_new_content",
        "description": "Suggests a new version of the content of a node for "
                       "the user to review.",
        "parameters": {
            "type": "object",
            "properties": {
                "node_id": {"type": "string", "description": "ID of the node"},
                "content": {"type": "string",
                            "description": "Proposed HTML content"},
            },
            "required": ["node_id", "content"],
        },
    },
    {
        "name": "suggest_new_child",
        "description": "Suggests a new child to a certain node for the user "
                       "to review.",
        "parameters": {
            "type": "object",
            "properties": {
                "parent_id": {"type": "string", "description": "ID of the parent"},
                "title": {"type": "string", "description": "Title of the new child"},
                "content": {"type": "string",
                            "description": "HTML content of the new child"},
            },
            "required": ["parent_id", "title", "content"],
        },
    },
    {
        "name": "search_by_keyword",
        "description": "Searches for nodes that contain a given keyword from "
                       "the whole tree.",
        "parameters": {
            "type": "object",
            "properties": {"keyword": {"type": "string",
                                       "description": "Keyword to search for"}},
            "required": ["keyword"],
        },
    },
]

_SUGGEST_GATED = ("suggest_new_title", "suggest_new_content")


@dataclass
class SearchHit:
    node_id: str
    title: str
    snippet: str


@dataclass
class AgentSession:
    """Chat state for one conversation over one document."""

    session_id: str
    doc_id: str
    selected_node: str
    marked_nodes: set[str] = field(default_factory=set)
    transcript: list[dict] = field(default_factory=list)
    loaded_nodes: set[str] = field(default_factory=set)
    step_budget: int = DEFAULT_STEP_BUDGET
    closed: bool = False
    suggested: list[dict] = field(default_factory=list)  # audit of suggest_* calls

    def __post_init__(self):
        # the selected node's content is in the system context from the start
        self.loaded_nodes.add(self.selected_node)

    @classmethod
    def start(cls, doc_id: str, selected_node: str,
              marked_nodes: set[str] | None = None,
              session_id: str | None = None) -> "AgentSession":
        return cls(session_id=session_id or mint_id(),
                   doc_id=doc_id,
                   selected_node=selected_node,
                   marked_nodes=set(marked_nodes or ()))


@dataclass
class TurnResult:
    assistant_text: str
    tool_calls: list[dict] = field(default_factory=list)
    queued_suggestion_ids: list[str] = field(default_factory=list)
    budget_exhausted: bool = False


# --- context assembly ---

def _preorder_index(tree: DocumentTree) -> dict[str, int]:
    return {node_id: i for i, node_id in enumerate(tree.preorder())}


def _node_block(header: str, title: str, content: str, tag: str) -> str:
    return f"{header}\n<{tag}>\nTitle: {title}\n{content}\n</{tag}>"


def _listing(header: str, nodes: list, empty_line: str) -> str:
    if not nodes:
        return empty_line
    lines = [header]
    lines.extend(f"- (ID: {n.id}) {n.title}" for n in nodes)
    return "\n".join(lines)


def assemble_context(session: AgentSession, tree: DocumentTree) -> str:
    """Render the system prompt from the live tree, in document order."""
    selected = tree.node(session.selected_node)
    parent_id = tree.parent_id(selected.id)

    parent_block = ""
    if parent_id is not None:
        parent = tree.nodes[parent_id]
        parent_block = _node_block(
            f"The parent node (ID: {parent.id}):",
            parent.title, parent.content, "parentContent")

    order = _preorder_index(tree)
    marked = sorted((n for n in session.marked_nodes
                     if n != selected.id and tree.exists(n)),
                    key=lambda n: order[n])
    marked_block = "\n\n".join(
        _node_block(f"Marked node (ID: {n}):",
                    tree.nodes[n].title, tree.nodes[n].content,
                    "markedNodeContent")
        for n in marked)

    children_block = _listing(
        "Children of the selected node (ID, title):",
        tree.children(selected.id),
        "The selected node has no children.")

    siblings = []
    if parent_id is not None:
        siblings = [n for n in tree.children(parent_id) if n.id != selected.id]
    siblings_block = _listing(
        "Sibling nodes of the selected node (ID, title):",
        siblings,
        "The selected node has no siblings.")

    return render_prompt("assistant_system", {
        "nodeId": selected.id,
        "currentContent": f"Title: {selected.title}\n{selected.content}",
        "parentContent": parent_block,
        "markedNodeContent": marked_block,
        "childrenInfo": children_block,
        "siblingsInfo": siblings_block,
    })


# --- tools ---

def search_nodes(tree: DocumentTree, keyword: str) -> list[SearchHit]:
    """Case-insensitive substring search over every node, in preorder.

    The haystack per node is its title plus the plain-text projection of its
    content; the snippet is 40 characters of context around the first match.
    """
    keyword = keyword.strip()
    if not keyword:
        raise EmptyKeyword("search keyword must be non-empty")
    needle = keyword.lower()
    hits: list[SearchHit] = []
    for node_id in tree.preorder():
        node = tree.nodes[node_id]
        haystack = node.title + "\n" + strip_plain_text(node.content)
        pos = haystack.lower().find(needle)
        if pos < 0:
            continue
        start = max(0, pos - 20)
        end = min(len(haystack), pos + len(keyword) + 20)
        snippet = haystack[start:end].replace("\n", " ")
        if start > 0:
            snippet = "..." + snippet
        if end < len(haystack):
            snippet = snippet + "..."
        hits.append(SearchHit(node_id=node_id, title=node.title, snippet=snippet))
    return hits


def tool_load_node_content(session: AgentSession, tree: DocumentTree,
                           node_id: str) -> dict:
    if not tree.exists(node_id):
        return {"error": "unknown node"}
    session.loaded_nodes.add(node_id)
    node = tree.nodes[node_id]
    return {"id": node.id, "title": node.title, "content": node.content}


def tool_load_node_children(tree: DocumentTree, node_id: str) -> dict:
    if not tree.exists(node_id):
        return {"error": "unknown node"}
    return {"children": [{"id": n.id, "title": n.title}
                         for n in tree.children(node_id)]}


def tool_search_by_keyword(tree: DocumentTree, keyword: str) -> dict:
    try:
        hits = search_nodes(tree, keyword)
    except EmptyKeyword:
        return {"error": "empty keyword"}
    return {"results": [{"id": h.node_id, "title": h.title, "snippet": h.snippet}
                        for h in hits]}


def _gate_allows(session: AgentSession, tree: DocumentTree, node_id: str) -> bool:
    if node_id in session.loaded_nodes or node_id in session.marked_nodes:
        return True
    if node_id == session.selected_node:
        return True
    parent_id = tree.parent_id(session.selected_node) \
        if tree.exists(session.selected_node) else None
    return node_id == parent_id


def _queue_from_tool(session: AgentSession, doc: Document, kind: str,
                     target: str, payload) -> dict:
    try:
        suggestion = doc.suggestions.queue(kind, target, payload, "assistant")
    except TreeDocError as exc:
        return {"error": f"{exc.code}: {exc.detail}"}
    session.suggested.append({"tool": f"suggest_{kind}", "node_id": target,
                              "suggestion_id": suggestion.suggestion_id})
    return {"suggestion_id": suggestion.suggestion_id, "status": "queued"}


def execute_tool(session: AgentSession, doc: Document, name: str,
                 arguments: dict) -> dict:
    """Run one tool call; failures come back as tool results, never raises."""
    tree = doc.tree

    def need(*keys: str) -> list | None:
        values = []
        for key in keys:
            value = arguments.get(key)
            if not isinstance(value, str):
                return None
            values.append(value)
        return values

    if name == "load_node_content":
        args = need("node_id")
        return tool_load_node_content(session, tree, args[0]) if args else \
            {"error": "invalid arguments: node_id (string) required"}
    if name == "load_node_children":
        args = need("node_id")
        return tool_load_node_children(tree, args[0]) if args else \
            {"error": "invalid arguments: node_id (string) required"}
    if name == "search_by_keyword":
        args = need("keyword")
        return tool_search_by_keyword(tree, args[0]) if args else \
            {"error": "invalid arguments: keyword (string) required"}
    if name in _SUGGEST_GATED:
        key = "title" if name == "suggest_new_title" else "content"
        args = need("node_id", key)
        if not args:
            return {"error": f"invalid arguments: node_id and {key} (strings) required"}
        node_id, payload = args
        if not tree.exists(node_id):
            return {"error": "unknown node"}
        if not _gate_allows(session, tree, node_id):
            return {"error": LOAD_GATE_ERROR}
        kind = "new_title" if name == "suggest_new_title" else "new_content"
        return _queue_from_tool(session, doc, kind, node_id, payload)
    if name == "suggest_new_child":
        args = need("parent_id", "title", "content")
        if not args:
            return {"error": "invalid arguments: parent_id, title, content "
                             "(strings) required"}
        parent_id, title, content = args
        if not tree.exists(parent_id):
            return {"error": "unknown node"}
        return _queue_from_tool(session, doc, "new_child", parent_id,
                                {"title": title, "content": content})
    return {"error": f"unknown tool {name!r}"}


# --- the turn loop ---

def run_turn(session: AgentSession, doc: Document, gateway: Gateway,
             user_message: str) -> TurnResult:
    """One user turn: tool loop until a plain reply or the budget is gone."""
    if session.closed:
        raise SessionClosed(f"session {session.session_id!r} is closed")
    if session.selected_node and not doc.tree.exists(session.selected_node):
        raise UnknownNode(f"selected node {session.selected_node!r} is gone")

    system_prompt = assemble_context(session, doc.tree)
    session.transcript.append({"role": "user", "content": user_message})
    executed: list[dict] = []
    queued: list[str] = []

    for _ in range(session.step_budget):
        reply = gateway.chat(ChatRequest(
            messages=[{"role": "system", "content": system_prompt}]
                     + list(session.transcript),
            tool_schemas=TOOL_SCHEMAS,
            temperature_class="creative",
            tier="assistant",
        ))
        if not reply.tool_calls:
            text = reply.text or ""
            session.transcript.append({"role": "assistant", "content": text})
            return TurnResult(assistant_text=text, tool_calls=executed,
                              queued_suggestion_ids=queued)
        session.transcript.append({
            "role": "assistant",
            "content": reply.text or "",
            "tool_calls": [{"name": tc.name, "arguments": tc.arguments}
                           for tc in reply.tool_calls],
        })
        for tc in reply.tool_calls:
            result = execute_tool(session, doc, tc.name, tc.arguments)
            if "suggestion_id" in result:
                queued.append(result["suggestion_id"])
            executed.append({"name": tc.name, "arguments": tc.arguments,
                             "result": result})
            session.transcript.append({
                "role": "tool",
                "name": tc.name,
                "content": json.dumps(result, sort_keys=True, ensure_ascii=False),
            })

    return TurnResult(assistant_text="", tool_calls=executed,
                      queued_suggestion_ids=queued, budget_exhausted=True)
