"""Prompt template loading and slot substitution.

Templates live as versioned text assets under ``prompts/`` with ``${slot}``
placeholders. Substitution is a single pass, so slot values containing
``${...}`` are inserted verbatim and rendering stays deterministic:
identical inputs always produce a byte-identical prompt, which is what
makes record/replay matching work.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

_SLOT_RE = re.compile(r"\$\{(\w+)\}")


@lru_cache(maxsize=None)
def load_template(name: str) -> str:
    return resources.files("treedoc.prompts").joinpath(f"{name}.txt").read_text("utf-8")


def render_template(template: str, slots: dict[str, str]) -> str:
    def substitute(match: re.Match) -> str:
        key = match.group(1)
        if key not in slots:
            raise KeyError(f"template slot {key!r} has no value")
        return slots[key]

    return _SLOT_RE.sub(substitute, template)


def render_prompt(name: str, slots: dict[str, str]) -> str:
    return render_template(load_template(name), slots)
