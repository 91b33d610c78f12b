"""AI editing buttons: split, outline-from-children, paragraph, outline.

Each operation renders its prompt template, makes one gateway call on the
``buttons`` tier, validates the reply against the prompt's own normative
limits, and queues a pending suggestion. None of them ever mutates the
tree; that only happens when the user accepts the suggestion.

A reply that breaks a limit raises MalformedModelOutput carrying the raw
reply: it is surfaced to the user, never silently retried.
"""

from __future__ import annotations

import json
from collections import Counter

from .document import Document
from .errors import (
    EmptyContent,
    EmptyOutline,
    InvalidFragment,
    InvalidTitle,
    MalformedModelOutput,
    NoChildren,
    NoExportBlock,
)
from .fragment import (
    Element,
    canonicalize,
    element_names,
    fragment_hrefs,
    parse_fragment,
    serialize_fragment,
    split_export,
    validate_title,
)
from .gateway import ChatRequest, Gateway
from .linearize import strip_plain_text
from .prompting import render_prompt
from .revision import Suggestion

MAX_SPLIT_CHILDREN = 5
MAX_OUTLINE_POINTS = 5
MAX_POINT_WORDS = 30  # points must be strictly under this


def _ask(gateway: Gateway, prompt: str) -> str:
    reply = gateway.chat(ChatRequest(
        messages=[{"role": "system", "content": prompt}],
        tier="buttons",
        temperature_class="deterministic",
    ))
    if not reply.text:
        raise MalformedModelOutput("model returned no text", raw_reply="")
    return reply.text


# --- reply validators (pure; exercised directly by the fixture suites) ---

def parse_split_reply(raw: str, source_content: str) -> list[dict]:
    """Validate a split reply: JSON array, <=5 items, whitelisted elements."""
    try:
        data = json.loads(raw.strip())
    except json.JSONDecodeError as exc:
        raise MalformedModelOutput(f"reply is not valid JSON: {exc}", raw_reply=raw)
    if not isinstance(data, list):
        raise MalformedModelOutput("reply is not a JSON array", raw_reply=raw)
    if not data:
        raise MalformedModelOutput("reply proposes no children", raw_reply=raw)
    if len(data) > MAX_SPLIT_CHILDREN:
        raise MalformedModelOutput(
            f"reply proposes {len(data)} children; at most "
            f"{MAX_SPLIT_CHILDREN} are allowed", raw_reply=raw)
    allowed = element_names(source_content)
    items: list[dict] = []
    for index, item in enumerate(data):
        if not isinstance(item, dict) or not isinstance(item.get("title"), str) \
                or not isinstance(item.get("content"), str):
            raise MalformedModelOutput(
                f"item {index} is missing string title/content fields", raw_reply=raw)
        if not item["title"].strip():
            raise MalformedModelOutput(f"item {index} has an empty title", raw_reply=raw)
        try:
            title = validate_title(item["title"])
            content = canonicalize(item["content"])
        except (InvalidTitle, InvalidFragment) as exc:
            raise MalformedModelOutput(
                f"item {index} is invalid: {exc.detail}", raw_reply=raw)
        extra = element_names(content) - allowed
        if extra:
            raise MalformedModelOutput(
                f"item {index} uses elements not in the original content: "
                f"{sorted(extra)}", raw_reply=raw)
        items.append({"title": title, "content": content})
    return items


def _point_words(item: Element) -> int:
    # a key point's length ignores its sub-lists; those are sub-points
    own = [child for child in item.children
           if not (isinstance(child, Element) and child.tag in ("ul", "ol"))]
    text = strip_plain_text(serialize_fragment(own))
    return len(text.split())


def parse_outline_reply(raw: str) -> str:
    """Validate an outline reply: one list, <=5 points, each under 30 words."""
    try:
        top = parse_fragment(raw.strip())
    except InvalidFragment as exc:
        raise MalformedModelOutput(f"reply is not a valid fragment: {exc.detail}",
                                   raw_reply=raw)
    elements = [node for node in top if isinstance(node, Element)]
    if len(elements) != 1 or len(top) != 1 or elements[0].tag not in ("ul", "ol"):
        raise MalformedModelOutput("reply is not a single key-point list",
                                   raw_reply=raw)
    points = [child for child in elements[0].children if isinstance(child, Element)]
    if len(points) > MAX_OUTLINE_POINTS:
        raise MalformedModelOutput(
            f"reply has {len(points)} key points; no more than "
            f"{MAX_OUTLINE_POINTS} are allowed", raw_reply=raw)
    if not points:
        raise MalformedModelOutput("reply has no key points", raw_reply=raw)
    for index, point in enumerate(points):
        words = _point_words(point)
        if words >= MAX_POINT_WORDS:
            raise MalformedModelOutput(
                f"key point {index} has {words} words; each must be under "
                f"{MAX_POINT_WORDS}", raw_reply=raw)
    return serialize_fragment(top)


def parse_paragraph_reply(raw: str, raw_content: str) -> str:
    """Validate a paragraph reply: a fragment keeping every source link."""
    try:
        top = parse_fragment(raw.strip())
    except InvalidFragment as exc:
        raise MalformedModelOutput(f"reply is not a valid fragment: {exc.detail}",
                                   raw_reply=raw)
    reply = serialize_fragment(top)
    if "div" in element_names(reply):
        raise MalformedModelOutput("reply must not contain an export block",
                                   raw_reply=raw)
    if not strip_plain_text(reply).strip():
        raise MalformedModelOutput("reply carries no text", raw_reply=raw)
    missing = Counter(fragment_hrefs(raw_content)) - Counter(fragment_hrefs(reply))
    if missing:
        raise MalformedModelOutput(
            f"reply dropped links from the source: {sorted(missing)}", raw_reply=raw)
    return reply


# --- the four operations ---

def split_into_subsections(doc: Document, node_id: str, gateway: Gateway) -> Suggestion:
    """Propose up to five child nodes that redistribute the node's content."""
    node = doc.tree.node(node_id)
    if not node.content:
        raise EmptyContent(f"node {node_id!r} has no content to split")
    prompt = render_prompt("split", {"parentContent": node.content})
    raw = _ask(gateway, prompt)
    items = parse_split_reply(raw, node.content)
    return doc.suggestions.queue("new_children_batch", node_id, items,
                                 "button:split_into_subsections")


def generate_outline_from_children(doc: Document, node_id: str,
                                   gateway: Gateway) -> Suggestion:
    """Propose replacing the node's content with a summary of its children."""
    node = doc.tree.node(node_id)
    if not node.children:
        raise NoChildren(f"node {node_id!r} has no children to summarize")
    children_content = "\n".join(
        doc.tree.nodes[cid].content for cid in node.children)
    prompt = render_prompt("outline_from_children", {
        "originalContent": node.content,
        "childrenContent": children_content,
    })
    raw = _ask(gateway, prompt)
    outline = parse_outline_reply(raw)
    return doc.suggestions.queue("new_content", node_id, outline,
                                 "button:generate_outline_from_children")


def generate_paragraph(doc: Document, node_id: str, gateway: Gateway,
                       user_prompt: str | None = None) -> Suggestion:
    """Propose prose for the node's outline, wrapped in its export block.

    The suggested content keeps the non-export part untouched and swaps in a
    fresh export block holding the generated paragraphs.
    """
    node = doc.tree.node(node_id)
    non_export, payload = split_export(node.content)
    if not non_export:
        raise EmptyOutline(f"node {node_id!r} has no content outside its export block")
    title_block = ""
    if node.title:
        title_block = f"\n<node_title>\n{node.title}\n</node_title>\n"
    instructions_block = ""
    follow_line = ""
    if user_prompt:
        instructions_block = f"\n<user_instructions>\n{user_prompt}\n</user_instructions>\n"
        follow_line = "- Follow any additional instructions provided above\n"
    prompt = render_prompt("paragraph", {
        "titleBlock": title_block,
        "contentExceptExports": non_export,
        "existingExportContent": payload or "",
        "userInstructionsBlock": instructions_block,
        "followInstructionsLine": follow_line,
    })
    raw = _ask(gateway, prompt)
    paragraph = parse_paragraph_reply(raw, non_export)
    content = canonicalize(f'{non_export}<div class="export">{paragraph}</div>')
    return doc.suggestions.queue("new_content", node_id, content,
                                 "button:generate_paragraph")


def generate_outline_from_paragraph(doc: Document, node_id: str,
                                    gateway: Gateway) -> Suggestion:
    """Propose a fresh outline above the node's (unchanged) export block."""
    node = doc.tree.node(node_id)
    _, payload = split_export(node.content)
    if not payload:
        raise NoExportBlock(f"node {node_id!r} has no export block to outline")
    prompt = render_prompt("outline_from_paragraph", {"exportContent": payload})
    raw = _ask(gateway, prompt)
    outline = parse_outline_reply(raw)
    content = canonicalize(f'{outline}<div class="export">{payload}</div>')
    return doc.suggestions.queue("new_content", node_id, content,
                                 "button:generate_outline_from_paragraph")
