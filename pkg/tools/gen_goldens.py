#!/usr/bin/env python3
"""Freeze the markdown corpus goldens.

Each tests/data/md_corpus/NN.md gets a NN.golden.md holding the markdown
export of its import. Inspect the diff before committing a regeneration.
"""

from __future__ import annotations

from pathlib import Path

from treedoc.linearize import linearize, render
from treedoc.mdio import import_markdown_file

CORPUS = Path(__file__).resolve().parent.parent / "tests" / "data" / "md_corpus"


def main() -> None:
    for source in sorted(CORPUS.glob("*.md")):
        if source.name.endswith(".golden.md"):
            continue
        doc = import_markdown_file(source, doc_id="golden")
        text = render(doc.tree, linearize(doc.tree), "markdown")
        golden = source.with_suffix("").with_suffix(".golden.md")
        golden.write_text(text, "utf-8")
        print(f"  {source.name} -> {golden.name} ({len(text)} bytes)")


if __name__ == "__main__":
    main()
