"""Scenario table behind the replay fixtures.

Each scenario pins: the document, the request the engine will build, the
scripted model reply, and the frozen expectation. ``tools/gen_fixtures.py``
replays this table against a recording gateway to (re)build
``fixtures/replay.json``; the test suites replay the same table offline.

Button scenarios cover every normative reply limit: at most 5 split
children, whitelisted elements only, JSON-array shape, at most 5 outline
points, each point under 30 words, and source links preserved.
"""

from __future__ import annotations

from treedoc.gateway import make_text_response, make_tool_call_response

# --- button ops ------------------------------------------------------------

_LONG_POINT = " ".join(f"w{i}" for i in range(1, 36))  # 35 words

SPLIT_OK_ITEMS = [
    {"title": "Compute", "content": "<p><b>Compute</b> alpha details</p>"},
    {"title": "Memory", "content": "<p><b>Memory</b> beta details</p>"},
]

OUTLINE_OK = ("<ul><li><b>child one</b> summary</li>"
              "<li><b>child two</b> summary</li></ul>")

PARA_OK = ('<p>Point one holds, see <a href="https://src.test/ref">the '
           "reference</a>. Point two follows.</p>")

PARA_PROMPTED = "<p>Formal prose on the formal topic.</p>"

OFP_OK = "<ul><li>long paragraph</li><li>text here</li></ul>"

AIOP_SCENARIOS = [
    {
        "name": "split_ok",
        "op": "split",
        "node": "split1",
        "reply": ('[{"title": "Compute", "content": "<p><b>Compute</b> alpha '
                  'details</p>"}, {"title": "Memory", "content": '
                  '"<p><b>Memory</b> beta details</p>"}]'),
        "expect": {"kind": "new_children_batch", "payload": SPLIT_OK_ITEMS},
    },
    {
        "name": "split_six_items",
        "op": "split",
        "node": "split2",
        "reply": "[" + ", ".join(
            f'{{"title": "T{i}", "content": "<p>part {i}</p>"}}'
            for i in range(6)) + "]",
        "expect": {"malformed": "6 children"},
    },
    {
        "name": "split_non_json",
        "op": "split",
        "node": "split3",
        "reply": "Sure! Here are some subsections you could use.",
        "expect": {"malformed": "not valid JSON"},
    },
    {
        "name": "split_new_element",
        "op": "split",
        "node": "split4",
        "reply": '[{"title": "Lists", "content": "<ul><li>new</li></ul>"}]',
        "expect": {"malformed": "elements not in the original content"},
    },
    {
        "name": "split_missing_fields",
        "op": "split",
        "node": "split5",
        "reply": '[{"title": "Only a title"}]',
        "expect": {"malformed": "missing string title/content"},
    },
    {
        "name": "outline_ok",
        "op": "outline_from_children",
        "node": "outl1",
        "reply": OUTLINE_OK,
        "expect": {"kind": "new_content", "payload": OUTLINE_OK},
    },
    {
        "name": "outline_six_points",
        "op": "outline_from_children",
        "node": "outl2",
        "reply": "<ul>" + "".join(f"<li>point {i}</li>" for i in range(6)) + "</ul>",
        "expect": {"malformed": "6 key points"},
    },
    {
        "name": "outline_long_point",
        "op": "outline_from_children",
        "node": "outl3",
        "reply": f"<ul><li>{_LONG_POINT}</li></ul>",
        "expect": {"malformed": "35 words"},
    },
    {
        "name": "outline_not_list",
        "op": "outline_from_children",
        "node": "outl4",
        "reply": "<p>just a paragraph summary</p>",
        "expect": {"malformed": "not a single key-point list"},
    },
    {
        "name": "para_ok",
        "op": "paragraph",
        "node": "para1",
        "reply": PARA_OK,
        "expect": {
            "kind": "new_content",
            "payload": ('<ul><li>point one <a href="https://src.test/ref">ref'
                        "</a></li><li>point two</li></ul>"
                        f'<div class="export">{PARA_OK}</div>'),
        },
    },
    {
        "name": "para_dropped_link",
        "op": "paragraph",
        "node": "para2",
        "reply": "<p>Rewritten without any anchors at all.</p>",
        "expect": {"malformed": "dropped links"},
    },
    {
        "name": "para_prompted",
        "op": "paragraph",
        "node": "para3",
        "user_prompt": "Make it formal.",
        "reply": PARA_PROMPTED,
        "expect": {
            "kind": "new_content",
            "payload": ("<ul><li>formal topic</li></ul>"
                        f'<div class="export">{PARA_PROMPTED}</div>'),
        },
    },
    {
        "name": "outline_from_para_ok",
        "op": "outline_from_paragraph",
        "node": "ofp1",
        "reply": OFP_OK,
        "expect": {
            "kind": "new_content",
            "payload": (f"{OFP_OK}"
                        '<div class="export"><p>long paragraph text here</p></div>'),
        },
    },
    {
        "name": "outline_from_para_six",
        "op": "outline_from_paragraph",
        "node": "ofp2",
        "reply": "<ol>" + "".join(f"<li>p{i}</li>" for i in range(6)) + "</ol>",
        "expect": {"malformed": "6 key points"},
    },
]

# --- agent turns -------------------------------------------------------------

# every scenario runs one turn over a fresh T1 document

AGENT_SCENARIOS = [
    {
        "name": "localized_edit",
        "selected": "B",
        "marked": [],
        "message": "Align this section with the parent outline.",
        "replies": [
            make_tool_call_response(
                [("suggest_new_content", {"node_id": "B",
                                          "content": "<p>aligned outline</p>"})]),
            make_text_response("Suggested a tighter outline for this section."),
        ],
        "expect_suggestions": [("new_content", "B", "<p>aligned outline</p>")],
        "expect_text": "Suggested a tighter outline for this section.",
    },
    {
        "name": "search_then_edit",
        "selected": "R",
        "marked": [],
        "message": "Find the node about pB2 and tighten it.",
        "replies": [
            make_tool_call_response([("search_by_keyword", {"keyword": "pB2"})]),
            make_tool_call_response([("load_node_content", {"node_id": "B2"})]),
            make_tool_call_response(
                [("suggest_new_content", {"node_id": "B2",
                                          "content": "<p>pB2 tightened</p>"})]),
            make_text_response("Tightened the matching node."),
        ],
        "expect_suggestions": [("new_content", "B2", "<p>pB2 tightened</p>")],
        "expect_text": "Tightened the matching node.",
        "expect_tool_names": ["search_by_keyword", "load_node_content",
                              "suggest_new_content"],
    },
    {
        "name": "load_gate_recovery",
        "selected": "A",
        "marked": [],
        "message": "Improve the second section body.",
        "replies": [
            make_tool_call_response(
                [("suggest_new_content", {"node_id": "B1",
                                          "content": "<p>pB1 improved</p>"})]),
            make_tool_call_response([("load_node_content", {"node_id": "B1"})]),
            make_tool_call_response(
                [("suggest_new_content", {"node_id": "B1",
                                          "content": "<p>pB1 improved</p>"})]),
            make_text_response("Updated after loading the node."),
        ],
        "expect_suggestions": [("new_content", "B1", "<p>pB1 improved</p>")],
        "expect_text": "Updated after loading the node.",
        "expect_gate_error_first": True,
    },
    {
        "name": "title_for_parent",
        "selected": "B1",
        "marked": [],
        "message": "Rename this group heading.",
        "replies": [
            make_tool_call_response(
                [("suggest_new_title", {"node_id": "B", "title": "Bravo Revised"})]),
            make_text_response("Proposed a new heading."),
        ],
        "expect_suggestions": [("new_title", "B", "Bravo Revised")],
        "expect_text": "Proposed a new heading.",
    },
    {
        "name": "new_child",
        "selected": "B",
        "marked": [],
        "message": "Add a wrap-up child node.",
        "replies": [
            make_tool_call_response(
                [("suggest_new_child", {"parent_id": "B", "title": "Wrap-up",
                                        "content": "<p>wrap</p>"})]),
            make_text_response("Added a wrap-up suggestion."),
        ],
        "expect_suggestions": [
            ("new_child", "B", {"title": "Wrap-up", "content": "<p>wrap</p>"})],
        "expect_text": "Added a wrap-up suggestion.",
    },
    {
        "name": "children_listing",
        "selected": "R",
        "marked": [],
        "message": "What subsections exist under the second section?",
        "replies": [
            make_tool_call_response([
                ("load_node_children", {"node_id": "B"}),
                ("load_node_content", {"node_id": "B1"}),
            ]),
            make_text_response("B has two subsections: B1 and B2."),
        ],
        "expect_suggestions": [],
        "expect_text": "B has two subsections: B1 and B2.",
        "expect_tool_names": ["load_node_children", "load_node_content"],
    },
    {
        "name": "marked_node_edit",
        "selected": "A",
        "marked": ["B2"],
        "message": "Polish the marked node.",
        "replies": [
            make_tool_call_response(
                [("suggest_new_content", {"node_id": "B2",
                                          "content": "<p>pB2 polished</p>"})]),
            make_text_response("Polished the marked node."),
        ],
        "expect_suggestions": [("new_content", "B2", "<p>pB2 polished</p>")],
        "expect_text": "Polished the marked node.",
    },
    {
        "name": "search_no_hits",
        "selected": "A",
        "marked": [],
        "message": "Anything about zeppelins?",
        "replies": [
            make_tool_call_response([("search_by_keyword", {"keyword": "zeppelin"})]),
            make_text_response("No matches in this document."),
        ],
        "expect_suggestions": [],
        "expect_text": "No matches in this document.",
    },
    {
        "name": "budget_exhausted",
        "selected": "A",
        "marked": [],
        "message": "Keep loading forever.",
        "replies": [
            make_tool_call_response([("load_node_content", {"node_id": "B1"})]),
        ],
        "repeat_last_reply": True,
        "expect_suggestions": [],
        "expect_text": "",
        "expect_budget_exhausted": True,
    },
    {
        "name": "unknown_node_recovery",
        "selected": "A",
        "marked": [],
        "message": "Load the appendix node.",
        "replies": [
            make_tool_call_response([("load_node_content", {"node_id": "ZZZ"})]),
            make_text_response("That node does not exist."),
        ],
        "expect_suggestions": [],
        "expect_text": "That node does not exist.",
        "expect_tool_errors": ["unknown node"],
    },
]
