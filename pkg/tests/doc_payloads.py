"""Frozen document payloads used by the replay fixtures and the suites.

Node ids are fixed (never engine-minted) so that prompts, and therefore
request hashes, are byte-stable across runs.
"""

from __future__ import annotations

FIXED_CLOCK_MS = 1_700_000_000_000


def t1_payload() -> dict:
    """The T1 reference tree.

    R
    ├── A   leaf, plain paragraph (exports by the leaf-default rule)
    └── B   outline + export block (exports the block payload)
        ├── B1  leaf
        └── B2  leaf
    """
    return {
        "format": "treedoc/1",
        "doc_id": "t1",
        "root": "R",
        "nodes": {
            "R": {"title": "Root", "content": "<p>document outline</p>",
                  "children": ["A", "B"]},
            "A": {"title": "Alpha", "content": "<p>pA</p>", "children": []},
            "B": {"title": "Bravo",
                  "content": '<p>outline B</p><div class="export"><p>eB</p></div>',
                  "children": ["B1", "B2"]},
            "B1": {"title": "Bravo One", "content": "<p>pB1</p>", "children": []},
            "B2": {"title": "Bravo Two", "content": "<p>pB2</p>", "children": []},
        },
        "created_ms": FIXED_CLOCK_MS,
        "modified_ms": FIXED_CLOCK_MS,
    }


def aidoc_payload() -> dict:
    """Targets for the button-op fixture suite.

    Each scenario owns a distinct node so its rendered prompt (and request
    hash) cannot collide with another scenario's.
    """
    nodes = {
        "root": {"title": "AI Ops", "content": "", "children": [
            "split1", "split2", "split3", "split4", "split5",
            "outl1", "outl2", "outl3", "outl4",
            "para1", "para2", "para3", "ofp1", "ofp2",
            "empty1", "exportonly1", "noexp1",
        ]},
        "split1": {"title": "Mixed",
                   "content": "<p><b>Compute</b> alpha details</p>"
                              "<p><b>Memory</b> beta details</p>",
                   "children": []},
        "split2": {"title": "Sixway", "content": "<p>six way material</p>",
                   "children": []},
        "split3": {"title": "Nonjson", "content": "<p>non json material</p>",
                   "children": []},
        "split4": {"title": "Newelem", "content": "<p>new element material</p>",
                   "children": []},
        "split5": {"title": "Missing", "content": "<p>missing field material</p>",
                   "children": []},
        "outl1": {"title": "Summary One", "content": "<p>old summary</p>",
                  "children": ["oc1", "oc2"]},
        "oc1": {"title": "Child One", "content": "<p>child one details</p>",
                "children": []},
        "oc2": {"title": "Child Two", "content": "<p>child two details</p>",
                "children": []},
        "outl2": {"title": "Summary Six", "content": "<p>six point summary</p>",
                  "children": ["oc3"]},
        "oc3": {"title": "Child Three", "content": "<p>child three details</p>",
                "children": []},
        "outl3": {"title": "Summary Long", "content": "<p>long point summary</p>",
                  "children": ["oc4"]},
        "oc4": {"title": "Child Four", "content": "<p>child four details</p>",
                "children": []},
        "outl4": {"title": "Summary List", "content": "<p>not list summary</p>",
                  "children": ["oc5"]},
        "oc5": {"title": "Child Five", "content": "<p>child five details</p>",
                "children": []},
        "para1": {"title": "Para Target",
                  "content": '<ul><li>point one <a href="https://src.test/ref">'
                             "ref</a></li><li>point two</li></ul>",
                  "children": []},
        "para2": {"title": "Para Droplink",
                  "content": '<ul><li>keep <a href="https://src.test/keep">'
                             "this</a></li><li>more</li></ul>",
                  "children": []},
        "para3": {"title": "Para Prompted",
                  "content": "<ul><li>formal topic</li></ul>",
                  "children": []},
        "ofp1": {"title": "Sync Outline",
                 "content": '<p>outline old</p><div class="export">'
                            "<p>long paragraph text here</p></div>",
                 "children": []},
        "ofp2": {"title": "Sync Six",
                 "content": '<div class="export"><p>another paragraph '
                            "entirely</p></div>",
                 "children": []},
        "empty1": {"title": "Empty", "content": "", "children": []},
        "exportonly1": {"title": "Export Only",
                        "content": '<div class="export"><p>only export</p></div>',
                        "children": []},
        "noexp1": {"title": "No Export", "content": "<p>plain</p>", "children": []},
    }
    return {
        "format": "treedoc/1",
        "doc_id": "aidoc",
        "root": "root",
        "nodes": nodes,
        "created_ms": FIXED_CLOCK_MS,
        "modified_ms": FIXED_CLOCK_MS,
    }
