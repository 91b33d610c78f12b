"""Restricted rich-text fragments.

Node content is a small HTML subset stored as a canonical string:

* elements: p, ul, ol, li, strong, b, em, i, a, div
* ``a`` carries exactly one attribute, ``href``; ``div`` carries exactly
  ``class="export"`` and is only legal as the last top-level element
* canonical form has a fixed attribute rendering and no whitespace-only
  text nodes between block elements, so string equality is fragment equality

``parse_fragment`` is strict: anything outside the whitelist (or malformed
nesting) raises InvalidFragment rather than being repaired, which keeps
``canonicalize`` idempotent.

The trailing ``div class="export"`` is the export block: its payload is what
the node contributes to the linear document.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from html import escape
from html.parser import HTMLParser
from typing import Union

from .errors import InvalidFragment, InvalidTitle

ALLOWED_ELEMENTS = frozenset({"p", "ul", "ol", "li", "strong", "b", "em", "i", "a", "div"})
INLINE_ELEMENTS = frozenset({"strong", "b", "em", "i", "a"})
EXPORT_CLASS = "export"

TITLE_MAX_CHARS = 200

_MAX_DEPTH = 60
_BANNED_HREF_SCHEMES = ("javascript:", "vbscript:", "data:")
# mixed containers: whitespace-only text is pretty-printing unless it sits
# between two inline elements ("<b>a</b> <b>b</b>")
_MIXED_CONTAINERS = frozenset({None, "div"})


@dataclass
class Element:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list[FragNode] = field(default_factory=list)


FragNode = Union[Element, str]

# content model: which child tags an element may contain (text is allowed
# everywhere except ul/ol). None keys the fragment top level.
_ALLOWED_CHILDREN: dict[str | None, frozenset] = {
    None: frozenset({"p", "ul", "ol", "div"}) | INLINE_ELEMENTS,
    "p": INLINE_ELEMENTS,
    "ul": frozenset({"li"}),
    "ol": frozenset({"li"}),
    "li": frozenset({"p", "ul", "ol"}) | INLINE_ELEMENTS,
    "div": frozenset({"p", "ul", "ol"}) | INLINE_ELEMENTS,
    "strong": INLINE_ELEMENTS,
    "b": INLINE_ELEMENTS,
    "em": INLINE_ELEMENTS,
    "i": INLINE_ELEMENTS,
    "a": INLINE_ELEMENTS - {"a"},
}

_TEXT_FORBIDDEN = frozenset({"ul", "ol"})


def _check_href(value: str) -> None:
    # strip whitespace/control chars that could smuggle a scheme past the check
    compact = re.sub(r"[\s\x00-\x1f]+", "", value).lower()
    for scheme in _BANNED_HREF_SCHEMES:
        if compact.startswith(scheme):
            raise InvalidFragment(f"href scheme not allowed: {value!r}")


def _check_attrs(tag: str, attrs: list[tuple[str, str | None]]) -> dict[str, str]:
    names = [name for name, _ in attrs]
    if len(names) != len(set(names)):
        raise InvalidFragment(f"duplicate attribute on <{tag}>")
    got = {name: value for name, value in attrs}
    if any(value is None for value in got.values()):
        raise InvalidFragment(f"valueless attribute on <{tag}>")
    if tag == "a":
        if set(got) != {"href"}:
            raise InvalidFragment("<a> must carry exactly one attribute: href")
        _check_href(got["href"])
        return {"href": got["href"]}
    if tag == "div":
        if got != {"class": EXPORT_CLASS}:
            raise InvalidFragment('<div> must carry exactly class="export"')
        return {"class": EXPORT_CLASS}
    if got:
        raise InvalidFragment(f"<{tag}> takes no attributes")
    return {}


class _FragmentParser(HTMLParser):
    """Builds a strict element tree; rejects anything off-whitelist."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.top: list[FragNode] = []
        self.stack: list[Element] = []

    def _context_tag(self) -> str | None:
        return self.stack[-1].tag if self.stack else None

    def _append(self, node: FragNode) -> None:
        target = self.stack[-1].children if self.stack else self.top
        target.append(node)

    def handle_starttag(self, tag, attrs):
        if tag not in ALLOWED_ELEMENTS:
            raise InvalidFragment(f"element <{tag}> not allowed")
        ctx = self._context_tag()
        if tag not in _ALLOWED_CHILDREN[ctx]:
            where = f"<{ctx}>" if ctx else "the top level"
            raise InvalidFragment(f"<{tag}> not allowed inside {where}")
        if len(self.stack) >= _MAX_DEPTH:
            raise InvalidFragment("fragment nesting too deep")
        element = Element(tag, _check_attrs(tag, attrs))
        self._append(element)
        self.stack.append(element)

    def handle_endtag(self, tag):
        if tag not in ALLOWED_ELEMENTS:
            raise InvalidFragment(f"element </{tag}> not allowed")
        if not self.stack or self.stack[-1].tag != tag:
            raise InvalidFragment(f"mismatched closing tag </{tag}>")
        self.stack.pop()

    def handle_data(self, data):
        if not data:
            return
        self._append(data)

    def handle_comment(self, data):
        raise InvalidFragment("comments not allowed")

    def handle_decl(self, decl):
        raise InvalidFragment("declarations not allowed")

    def handle_pi(self, data):
        raise InvalidFragment("processing instructions not allowed")

    def unknown_decl(self, data):
        raise InvalidFragment("declarations not allowed")


def _merge_text(children: list[FragNode]) -> list[FragNode]:
    merged: list[FragNode] = []
    for child in children:
        if isinstance(child, str) and merged and isinstance(merged[-1], str):
            merged[-1] = merged[-1] + child
        else:
            merged.append(child)
    return merged


def _is_inline(node: FragNode | None) -> bool:
    return isinstance(node, Element) and node.tag in INLINE_ELEMENTS


def _clean(children: list[FragNode], ctx: str | None) -> list[FragNode]:
    """Merge adjacent text nodes and drop superfluous whitespace-only ones."""
    merged = _merge_text(children)
    out: list[FragNode] = []
    for i, child in enumerate(merged):
        if isinstance(child, str):
            if not child.strip():
                if ctx in _TEXT_FORBIDDEN:
                    continue
                if ctx in _MIXED_CONTAINERS:
                    prev = merged[i - 1] if i > 0 else None
                    nxt = merged[i + 1] if i + 1 < len(merged) else None
                    if not (_is_inline(prev) and _is_inline(nxt)):
                        continue
            elif ctx in _TEXT_FORBIDDEN:
                raise InvalidFragment(f"text not allowed directly inside <{ctx}>")
            out.append(child)
        else:
            child.children = _clean(child.children, child.tag)
            out.append(child)
    return out


def _check_export_position(top: list[FragNode]) -> None:
    divs = [i for i, node in enumerate(top) if isinstance(node, Element) and node.tag == "div"]
    if not divs:
        return
    if len(divs) > 1:
        raise InvalidFragment("at most one export block is allowed")
    if divs[0] != len(top) - 1:
        raise InvalidFragment("export block must be the last top-level element")


def parse_fragment(markup: str) -> list[FragNode]:
    """Parse markup into the element tree, raising InvalidFragment on any breach."""
    if not isinstance(markup, str):
        raise InvalidFragment("fragment must be a string")
    parser = _FragmentParser()
    try:
        parser.feed(markup)
        parser.close()
    except AssertionError as exc:  # HTMLParser internal errors on mangled input
        raise InvalidFragment(f"unparseable markup: {exc}") from exc
    if parser.stack:
        raise InvalidFragment(f"unclosed element <{parser.stack[-1].tag}>")
    top = _clean(parser.top, None)
    _check_export_position(top)
    return top


def _serialize_node(node: FragNode, parts: list[str]) -> None:
    if isinstance(node, str):
        parts.append(escape(node, quote=False))
        return
    if node.tag == "a":
        parts.append(f'<a href="{escape(node.attrs["href"], quote=True)}">')
    elif node.tag == "div":
        parts.append('<div class="export">')
    else:
        parts.append(f"<{node.tag}>")
    for child in node.children:
        _serialize_node(child, parts)
    parts.append(f"</{node.tag}>")


def serialize_fragment(nodes: list[FragNode]) -> str:
    """Render an element tree back to the canonical string form."""
    parts: list[str] = []
    for node in nodes:
        _serialize_node(node, parts)
    return "".join(parts)


def canonicalize(markup: str) -> str:
    """Validate markup and return its canonical serialization.

    Idempotent: canonicalize(canonicalize(x)) == canonicalize(x).
    """
    return serialize_fragment(parse_fragment(markup))


def is_valid_fragment(markup: str) -> bool:
    try:
        parse_fragment(markup)
    except InvalidFragment:
        return False
    return True


@lru_cache(maxsize=8192)
def split_export(markup: str) -> tuple[str, str | None]:
    """Split canonical content into (non-export markup, export payload).

    The payload is the serialization of the export block's children, without
    the div wrapper; None when the node has no export block. Cached: content
    strings are immutable and linearization revisits them constantly.
    """
    top = parse_fragment(markup)
    if top and isinstance(top[-1], Element) and top[-1].tag == "div":
        block = top[-1]
        return serialize_fragment(top[:-1]), serialize_fragment(block.children)
    return serialize_fragment(top), None


def has_export_block(markup: str) -> bool:
    return split_export(markup)[1] is not None


def element_names(markup: str) -> set[str]:
    """Set of element tags used anywhere in the fragment."""
    names: set[str] = set()

    def walk(nodes: list[FragNode]) -> None:
        for node in nodes:
            if isinstance(node, Element):
                names.add(node.tag)
                walk(node.children)

    walk(parse_fragment(markup))
    return names


def fragment_hrefs(markup: str) -> Counter:
    """Multiset of href values of every <a> in the fragment."""
    hrefs: Counter = Counter()

    def walk(nodes: list[FragNode]) -> None:
        for node in nodes:
            if isinstance(node, Element):
                if node.tag == "a":
                    hrefs[node.attrs["href"]] += 1
                walk(node.children)

    walk(parse_fragment(markup))
    return hrefs


def validate_title(title: str) -> str:
    """Titles are plain text: bounded length, no control characters."""
    if not isinstance(title, str):
        raise InvalidTitle("title must be a string")
    if len(title) > TITLE_MAX_CHARS:
        raise InvalidTitle(f"title longer than {TITLE_MAX_CHARS} characters")
    if any(ch in title for ch in "\n\r\t") or any(ord(ch) < 32 for ch in title):
        raise InvalidTitle("title must not contain control characters")
    return title
