"""treedoc: AI-assisted hierarchical document engine.

Documents are ordered trees of rich-text nodes. Parent nodes hold outlines;
export blocks (or bare leaf content) feed the linear document via preorder
traversal. AI features propose node-level edits as pending suggestions that
humans accept, edit, or reject, with every accepted change archived in a
per-node version history.
"""

from .assistant import AgentSession, TurnResult, assemble_context, run_turn, search_nodes
from .diffing import Hunk, apply_diff, compute_diff, diff_tokens
from .document import Document
from .errors import TreeDocError
from .fragment import canonicalize, split_export, validate_title
from .gateway import ChatReply, ChatRequest, Gateway, request_hash
from .linearize import ExportedSegment, exported_content, linearize, render, strip_plain_text
from .revision import Suggestion, SuggestionStore, Version, VersionStore
from .store import DocumentStore
from .tree import DocumentTree, Node

__version__ = "0.1.0"

__all__ = [
    "AgentSession",
    "ChatReply",
    "ChatRequest",
    "Document",
    "DocumentStore",
    "DocumentTree",
    "ExportedSegment",
    "Gateway",
    "Hunk",
    "Node",
    "Suggestion",
    "SuggestionStore",
    "TreeDocError",
    "TurnResult",
    "Version",
    "VersionStore",
    "apply_diff",
    "assemble_context",
    "canonicalize",
    "compute_diff",
    "diff_tokens",
    "exported_content",
    "linearize",
    "render",
    "request_hash",
    "run_turn",
    "search_nodes",
    "split_export",
    "strip_plain_text",
    "validate_title",
    "__version__",
]
