"""Linear document assembly.

A node contributes to the final document in exactly one of two ways: the
payload of its trailing export block, or (for leaves without an export
block) its entire content. Parent nodes without export blocks are outline
scaffolding and contribute nothing, but traversal still descends into them.
The linear document is the preorder concatenation of those contributions.

Everything here is pure over an immutable snapshot of the tree.
"""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass
from html import escape

from .errors import UnsupportedFormat
from .fragment import Element, FragNode, parse_fragment, split_export
from .tree import DocumentTree, Node

_BLOCK_TAGS = frozenset({"p", "ul", "ol", "li", "div"})
_WS_RUN = re.compile(r"\s+")


@dataclass(frozen=True)
class ExportedSegment:
    """One node's contribution to the linear document.

    ``depth`` is relative to the document root (root = 0) even when
    linearizing a subtree, so a subtree's segments are exactly a contiguous
    slice of the full document's.
    """

    node_id: str
    depth: int
    fragment: str


def exported_content(node: Node) -> str | None:
    """What the node contributes: export payload, leaf content, or nothing.

    An empty payload (or an empty leaf) yields None, so the node is skipped
    rather than emitting an empty segment.
    """
    non_export, payload = split_export(node.content)
    if payload is not None:
        return payload or None
    if node.is_leaf:
        return non_export or None
    return None


def linearize(tree: DocumentTree, root: str | None = None) -> list[ExportedSegment]:
    """Exported segments of the subtree at ``root``, in preorder."""
    start = root if root is not None else tree.root
    segments: list[ExportedSegment] = []
    base_depth = tree.depth(start)
    stack: list[tuple[str, int]] = [(start, base_depth)]
    while stack:
        node_id, depth = stack.pop()
        node = tree.nodes[node_id]
        fragment = exported_content(node)
        if fragment is not None:
            segments.append(ExportedSegment(node_id, depth, fragment))
        for cid in reversed(node.children):
            stack.append((cid, depth + 1))
    return segments


# --- plain-text projection ---

@lru_cache(maxsize=8192)
def strip_plain_text(markup: str) -> str:
    """Tags removed; block boundaries become newlines; inline runs collapse.

    Used by search and by the word-level diff, so the policy is fixed:
    one line per block element, whitespace runs collapsed to single spaces.
    Cached: search re-projects every node's content on every query.
    """
    lines: list[str] = []
    buffer: list[str] = []

    def flush() -> None:
        if buffer:
            line = _WS_RUN.sub(" ", "".join(buffer)).strip()
            buffer.clear()
            if line:
                lines.append(line)

    def walk(nodes: list[FragNode]) -> None:
        for node in nodes:
            if isinstance(node, str):
                buffer.append(node)
            elif node.tag in _BLOCK_TAGS:
                flush()
                walk(node.children)
                flush()
            else:
                walk(node.children)

    walk(parse_fragment(markup))
    flush()
    return "\n".join(lines)


# --- rendering ---

FORMATS = ("html", "markdown")
HEADING_POLICIES = ("titles-as-headings", "none")


def heading_level(depth: int) -> int:
    # depth counts from the root (0); h1..h6 cover depths 1..6, deeper clamps
    return min(depth, 6)


def _heading_chain(tree: DocumentTree, node_id: str, scope_root: str,
                   emitted: set[str]) -> list[tuple[int, str]]:
    """Headings owed before this segment: the not-yet-emitted titled nodes on
    the path from the render scope down to the segment's node. The document
    root (depth 0) is the document title, never a heading."""
    path: list[str] = []
    current: str | None = node_id
    while current is not None:
        path.append(current)
        if current == scope_root:
            break
        current = tree.parent_id(current)
    headings: list[tuple[int, str]] = []
    for ancestor in reversed(path):
        if ancestor in emitted:
            continue
        emitted.add(ancestor)
        node = tree.nodes[ancestor]
        depth = tree.depth(ancestor)
        if depth >= 1 and node.title:
            headings.append((heading_level(depth), node.title))
    return headings


def render(tree: DocumentTree, segments: list[ExportedSegment],
           format: str = "markdown",
           heading_policy: str = "titles-as-headings",
           scope_root: str | None = None) -> str:
    """Deterministic text for a segment list.

    With titles-as-headings, every exporting node with a non-empty title is
    preceded by a heading at its depth (clamped to h6), and so is every
    titled outline ancestor on the way down to it, so section headings
    survive even when the section's own node exports nothing.
    ``scope_root`` bounds that ancestor walk when rendering a subtree.
    The markdown conversion table is documented in the README.
    """
    if format not in FORMATS:
        raise UnsupportedFormat(f"format must be one of {FORMATS}, got {format!r}")
    if heading_policy not in HEADING_POLICIES:
        raise UnsupportedFormat(
            f"heading policy must be one of {HEADING_POLICIES}, got {heading_policy!r}")
    headings = heading_policy == "titles-as-headings"
    scope_root = scope_root if scope_root is not None else tree.root
    emitted: set[str] = set()

    if format == "html":
        parts: list[str] = []
        for seg in segments:
            if headings:
                for level, title in _heading_chain(tree, seg.node_id,
                                                   scope_root, emitted):
                    parts.append(f"<h{level}>{escape(title)}</h{level}>")
            parts.append(seg.fragment)
        return "".join(parts)

    blocks: list[str] = []
    for seg in segments:
        if headings:
            for level, title in _heading_chain(tree, seg.node_id,
                                               scope_root, emitted):
                blocks.append("#" * level + " " + title)
        blocks.extend(markdown_blocks(seg.fragment))
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"


def _inline_md(nodes: list[FragNode]) -> str:
    parts: list[str] = []
    for node in nodes:
        if isinstance(node, str):
            parts.append(node)
        elif node.tag in ("b", "strong"):
            parts.append(f"**{_inline_md(node.children)}**")
        elif node.tag in ("i", "em"):
            parts.append(f"*{_inline_md(node.children)}*")
        elif node.tag == "a":
            parts.append(f"[{_inline_md(node.children)}]({node.attrs['href']})")
        else:  # block inside an inline position: fall back to its text
            parts.append(_inline_md(node.children))
    return _WS_RUN.sub(" ", "".join(parts))


def _list_lines(element: Element, indent: str) -> list[str]:
    lines: list[str] = []
    ordered = element.tag == "ol"
    for i, item in enumerate(element.children, start=1):
        if not isinstance(item, Element):
            continue
        inline_parts: list[FragNode] = []
        sublists: list[Element] = []
        for child in item.children:
            if isinstance(child, Element) and child.tag in ("ul", "ol"):
                sublists.append(child)
            else:
                inline_parts.append(child)
        marker = f"{i}. " if ordered else "- "
        text = _inline_md(inline_parts).strip()
        lines.append(indent + marker + text)
        for sub in sublists:
            lines.extend(_list_lines(sub, indent + "  "))
    return lines


def markdown_blocks(markup: str) -> list[str]:
    """Convert a fragment to markdown blocks (conversion table in README)."""
    return _blocks_of(parse_fragment(markup))


def _blocks_of(nodes: list[FragNode]) -> list[str]:
    blocks: list[str] = []
    pending_inline: list[FragNode] = []

    def flush_inline() -> None:
        if pending_inline:
            text = _inline_md(pending_inline).strip()
            pending_inline.clear()
            if text:
                blocks.append(text)

    for node in nodes:
        if isinstance(node, str) or node.tag in ("b", "strong", "i", "em", "a"):
            pending_inline.append(node)
            continue
        flush_inline()
        if node.tag == "p":
            text = _inline_md(node.children).strip()
            if text:
                blocks.append(text)
        elif node.tag in ("ul", "ol"):
            lines = _list_lines(node, "")
            if lines:
                blocks.append("\n".join(lines))
        elif node.tag == "div":
            blocks.extend(_blocks_of(node.children))
    flush_inline()
    return blocks
