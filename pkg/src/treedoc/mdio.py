"""Markdown import: heading hierarchy becomes the tree.

Convention: an ATX heading at level N becomes a node at tree depth N (h1 is
a child of the root, h2 a child of the nearest h1, and so on; skipped levels
get untitled filler nodes so depths stay faithful). Body text under a
heading becomes that node's content. Bodies of nodes that also have child
headings are wrapped in an export block, so the visible text survives an
import/export round trip; deepest bodies stay plain leaf content.

The body converter covers what ``render`` emits: paragraphs, flat bullet
and numbered lists, bold, italic, and links. Anything else stays literal
text.
"""

from __future__ import annotations

import re
from html import escape
from pathlib import Path

from .document import Document

_HEADING_RE = re.compile(r"^(#{1,6})\s+(.*?)\s*$")
_FENCE_RE = re.compile(r"^(```|~~~)")
_BULLET_RE = re.compile(r"^(\s*)[-*]\s+(.*)$")
_NUMBERED_RE = re.compile(r"^(\s*)\d+[.)]\s+(.*)$")

_LINK_RE = re.compile(r"\[([^\]]*)\]\(([^)\s]+)\)")
_BOLD_RE = re.compile(r"\*\*(.+?)\*\*")
_ITALIC_RE = re.compile(r"(?<!\*)\*([^*\s][^*]*?)\*(?!\*)")


def _inline_html(text: str) -> str:
    """Markdown inline spans to whitelisted markup; the text is escaped first."""
    out = escape(text, quote=False)
    out = _LINK_RE.sub(lambda m: f'<a href="{m.group(2)}">{m.group(1)}</a>', out)
    out = _BOLD_RE.sub(lambda m: f"<b>{m.group(1)}</b>", out)
    out = _ITALIC_RE.sub(lambda m: f"<i>{m.group(1)}</i>", out)
    return out


def body_to_fragment(lines: list[str]) -> str:
    """Paragraphs, flat lists, and inline spans; blank lines delimit blocks."""
    blocks: list[str] = []
    paragraph: list[str] = []
    items: list[str] = []
    list_tag = ""

    def flush_paragraph() -> None:
        if paragraph:
            blocks.append(f"<p>{_inline_html(' '.join(paragraph))}</p>")
            paragraph.clear()

    def flush_list() -> None:
        nonlocal list_tag
        if items:
            body = "".join(f"<li>{item}</li>" for item in items)
            blocks.append(f"<{list_tag}>{body}</{list_tag}>")
            items.clear()
        list_tag = ""

    for line in lines:
        if not line.strip():
            flush_paragraph()
            flush_list()
            continue
        bullet = _BULLET_RE.match(line)
        numbered = _NUMBERED_RE.match(line)
        if bullet or numbered:
            flush_paragraph()
            tag = "ul" if bullet else "ol"
            if list_tag and list_tag != tag:
                flush_list()
            list_tag = tag
            items.append(_inline_html((bullet or numbered).group(2)))
        else:
            if list_tag:
                # lazy continuation of the previous list item
                items[-1] += " " + _inline_html(line.strip())
            else:
                paragraph.append(line.strip())
    flush_paragraph()
    flush_list()
    return "".join(blocks)


def import_markdown(text: str, title: str, doc_id: str | None = None,
                    clock=None) -> Document:
    """Build a document from markdown; see the module docstring for rules."""
    doc = Document.create(title or "Imported", doc_id=doc_id, clock=clock)
    tree = doc.tree

    # collect (depth, title, body-lines); depth 0 is the root preamble
    sections: list[tuple[int, str, list[str]]] = [(0, "", [])]
    in_fence = False
    for line in text.splitlines():
        if _FENCE_RE.match(line):
            in_fence = not in_fence
            sections[-1][2].append(line)
            continue
        heading = None if in_fence else _HEADING_RE.match(line)
        if heading:
            sections.append((len(heading.group(1)), heading.group(2), []))
        else:
            sections[-1][2].append(line)

    # a section has child headings iff the next section sits deeper
    has_children = [
        i + 1 < len(sections) and sections[i + 1][0] > depth
        for i, (depth, _, _) in enumerate(sections)
    ]

    stack: list[tuple[int, str]] = [(0, tree.root)]  # (depth, node id)
    for index, (depth, heading_title, body) in enumerate(sections):
        fragment = body_to_fragment(body)
        if has_children[index] and fragment:
            fragment = f'<div class="export">{fragment}</div>'
        elif not has_children[index] and not fragment and depth > 0:
            # a bodyless leaf section still occupies a place in the final
            # document; an empty paragraph keeps it (and its heading) visible
            fragment = "<p></p>"
        if depth == 0:
            if fragment:
                tree.set_content(tree.root, fragment)
            continue
        while stack[-1][0] >= depth:
            stack.pop()
        while stack[-1][0] < depth - 1:
            # skipped heading level: untitled filler keeps depths faithful
            filler = tree.add_child(stack[-1][1], "", "")
            stack.append((stack[-1][0] + 1, filler))
        node_id = tree.add_child(stack[-1][1], heading_title, fragment)
        stack.append((depth, node_id))
    return doc


def import_markdown_file(path: str | Path, doc_id: str | None = None,
                         clock=None) -> Document:
    path = Path(path)
    return import_markdown(path.read_text("utf-8"), title=path.stem,
                           doc_id=doc_id, clock=clock)
