#!/usr/bin/env python3
"""Regenerate fixtures/replay.json from the scenario table.

Runs every button-op and agent scenario through the real engine paths with
a recording gateway whose transport is scripted, so the frozen fixtures are
exactly what the engine would send and receive. Rerun after changing prompt
templates, tool schemas, or the scenario table:

    python3 tools/gen_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))

from treedoc import ai_ops
from treedoc.assistant import AgentSession, run_turn
from treedoc.errors import MalformedModelOutput
from treedoc.gateway import Gateway
from treedoc.store import document_from_payload

import agent_scenarios
import doc_payloads

FIXTURE_PATH = REPO / "fixtures" / "replay.json"

OPS = {
    "split": ai_ops.split_into_subsections,
    "outline_from_children": ai_ops.generate_outline_from_children,
    "paragraph": ai_ops.generate_paragraph,
    "outline_from_paragraph": ai_ops.generate_outline_from_paragraph,
}


class ScriptedTransport:
    """Provider stand-in: answers from a queue of canned responses."""

    def __init__(self, replies: list[dict], repeat_last: bool = False):
        self.replies = list(replies)
        self.repeat_last = repeat_last
        self.calls = 0

    def __call__(self, payload: dict) -> dict:
        if self.calls < len(self.replies):
            reply = self.replies[self.calls]
        elif self.repeat_last and self.replies:
            reply = self.replies[-1]
        else:
            raise AssertionError(
                f"scripted transport exhausted after {self.calls} calls")
        self.calls += 1
        return reply


def record_aiop(scenario: dict) -> None:
    doc = document_from_payload(doc_payloads.aidoc_payload())
    gateway = Gateway(
        mode="record", fixture_path=FIXTURE_PATH,
        transport=ScriptedTransport(
            [agent_scenarios.make_text_response(scenario["reply"])]))
    op = OPS[scenario["op"]]
    kwargs = {}
    if scenario.get("user_prompt"):
        kwargs["user_prompt"] = scenario["user_prompt"]
    try:
        op(doc, scenario["node"], gateway, **kwargs)
        outcome = "suggestion"
    except MalformedModelOutput as exc:
        outcome = f"malformed ({exc.detail})"
    print(f"  aiop {scenario['name']}: {outcome}")


def record_agent(scenario: dict) -> None:
    doc = document_from_payload(doc_payloads.t1_payload())
    gateway = Gateway(
        mode="record", fixture_path=FIXTURE_PATH,
        transport=ScriptedTransport(scenario["replies"],
                                    repeat_last=scenario.get("repeat_last_reply",
                                                             False)))
    session = AgentSession.start(doc.doc_id, scenario["selected"],
                                 set(scenario["marked"]))
    result = run_turn(session, doc, gateway, scenario["message"])
    queued = len(result.queued_suggestion_ids)
    print(f"  agent {scenario['name']}: {len(result.tool_calls)} tool calls, "
          f"{queued} suggestions, budget_exhausted={result.budget_exhausted}")


def main() -> None:
    if FIXTURE_PATH.exists():
        FIXTURE_PATH.unlink()
    print("recording button-op scenarios:")
    for scenario in agent_scenarios.AIOP_SCENARIOS:
        record_aiop(scenario)
    print("recording agent scenarios:")
    for scenario in agent_scenarios.AGENT_SCENARIOS:
        record_agent(scenario)
    import json
    entries = json.loads(FIXTURE_PATH.read_text())
    print(f"wrote {FIXTURE_PATH} with {len(entries)} entries")


if __name__ == "__main__":
    main()
