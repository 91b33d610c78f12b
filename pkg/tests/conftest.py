from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from treedoc.document import Document
from treedoc.store import document_from_payload

from doc_payloads import FIXED_CLOCK_MS, t1_payload  # noqa: F401  (re-exported)

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"
REPLAY_FIXTURES = FIXTURES_DIR / "replay.json"


def fixed_clock() -> int:
    return FIXED_CLOCK_MS


def pytest_configure(config):
    config.addinivalue_line("markers",
                            "acceptance: spec acceptance criteria tests")


def pytest_runtest_logreport(report):
    # one visible PASS/FAIL line per acceptance criterion
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {name}: {outcome}", flush=True)


@pytest.fixture
def t1_doc() -> Document:
    return document_from_payload(t1_payload(), clock=fixed_clock)


@pytest.fixture
def t1_tree(t1_doc):
    return t1_doc.tree
