"""Word-level diff for the suggestion review flow.

Diffs are computed over the plain-text projection of fragments (markup-level
diffs are too noisy to review), tokenized on whitespace, using a classic
longest-common-subsequence walk with deterministic tie-breaking: at equal
LCS length the source-side token is consumed first, so the earliest match
wins and delete hunks precede insert hunks within a replacement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linearize import strip_plain_text

KEEP = "keep"
DELETE = "delete"
INSERT = "insert"


@dataclass(frozen=True)
class Hunk:
    op: str  # keep | delete | insert
    tokens: tuple[str, ...]


def tokenize(text: str) -> list[str]:
    return text.split()


def compute_diff(old_markup: str, new_markup: str) -> list[Hunk]:
    """Token diff between two fragments' plain-text projections."""
    return diff_tokens(tokenize(strip_plain_text(old_markup)),
                       tokenize(strip_plain_text(new_markup)))


def diff_text(old_text: str, new_text: str) -> list[Hunk]:
    """Token diff between two plain strings (titles, oracle tests)."""
    return diff_tokens(tokenize(old_text), tokenize(new_text))


def diff_tokens(old: list[str], new: list[str]) -> list[Hunk]:
    if old == new:
        return [Hunk(KEEP, tuple(old))] if old else []

    # trim common affixes before the quadratic part
    lo = 0
    while lo < len(old) and lo < len(new) and old[lo] == new[lo]:
        lo += 1
    hi = 0
    while (hi < len(old) - lo and hi < len(new) - lo
           and old[len(old) - 1 - hi] == new[len(new) - 1 - hi]):
        hi += 1
    head = old[:lo]
    tail = old[len(old) - hi:] if hi else []
    a = old[lo:len(old) - hi] if hi else old[lo:]
    b = new[lo:len(new) - hi] if hi else new[lo:]

    m, n = len(a), len(b)
    # lcs[i][j] = LCS length of a[i:], b[j:]
    lcs = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row, nxt = lcs[i], lcs[i + 1]
        ai = a[i]
        for j in range(n - 1, -1, -1):
            if ai == b[j]:
                row[j] = nxt[j + 1] + 1
            else:
                row[j] = nxt[j] if nxt[j] >= row[j + 1] else row[j + 1]

    ops: list[tuple[str, str]] = [(KEEP, tok) for tok in head]
    i = j = 0
    while i < m and j < n:
        if a[i] == b[j]:
            ops.append((KEEP, a[i]))
            i += 1
            j += 1
        elif lcs[i + 1][j] >= lcs[i][j + 1]:
            ops.append((DELETE, a[i]))
            i += 1
        else:
            ops.append((INSERT, b[j]))
            j += 1
    ops.extend((DELETE, tok) for tok in a[i:])
    ops.extend((INSERT, tok) for tok in b[j:])
    ops.extend((KEEP, tok) for tok in tail)

    hunks: list[Hunk] = []
    run_op: str | None = None
    run: list[str] = []
    for op, tok in ops:
        if op != run_op:
            if run_op is not None:
                hunks.append(Hunk(run_op, tuple(run)))
            run_op = op
            run = []
        run.append(tok)
    if run_op is not None:
        hunks.append(Hunk(run_op, tuple(run)))
    return hunks


def apply_diff(hunks: list[Hunk]) -> list[str]:
    """Replay the diff forward: keep + insert reproduces the new stream."""
    out: list[str] = []
    for hunk in hunks:
        if hunk.op in (KEEP, INSERT):
            out.extend(hunk.tokens)
    return out


def source_tokens(hunks: list[Hunk]) -> list[str]:
    """Replay the diff backward: keep + delete reproduces the old stream."""
    out: list[str] = []
    for hunk in hunks:
        if hunk.op in (KEEP, DELETE):
            out.extend(hunk.tokens)
    return out


def hunks_payload(hunks: list[Hunk]) -> list[dict]:
    return [{"op": h.op, "tokens": list(h.tokens)} for h in hunks]


def render_diff(hunks: list[Hunk]) -> str:
    """Compact unified-ish text for the CLI: one prefixed line per hunk."""
    prefix = {KEEP: "  ", DELETE: "- ", INSERT: "+ "}
    return "\n".join(prefix[h.op] + " ".join(h.tokens) for h in hunks)
