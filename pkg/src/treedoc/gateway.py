"""Provider-agnostic chat gateway with deterministic record/replay.

Every AI feature goes through ``Gateway.chat``. In live mode it speaks the
common chat-completions JSON dialect over HTTPS; in record mode it does the
same and freezes (request-hash, normalized response) pairs into a fixture
file; in replay mode it answers purely from fixtures, so the whole AI
surface is testable offline and byte-deterministic.

Request hashing is canonical: sorted keys, compact separators, UTF-8. The
hash covers messages, tool schemas, the temperature class, and the tier
name, never the resolved provider model, so fixtures stay portable across
configurations.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from threading import Lock
from typing import Any, Callable

from .errors import FixtureMiss, GatewayTimeout, ProviderError

MODES = ("live", "record", "replay")
TIERS = ("assistant", "buttons")

ENV_BASE_URL = "TREEDOC_LLM_BASE_URL"
ENV_API_KEY = "TREEDOC_LLM_API_KEY"
ENV_MODEL_ASSISTANT = "TREEDOC_LLM_MODEL_ASSISTANT"
ENV_MODEL_BUTTONS = "TREEDOC_LLM_MODEL_BUTTONS"
ENV_MODE = "TREEDOC_GATEWAY_MODE"
ENV_FIXTURES = "TREEDOC_FIXTURES"

_DEF_TIMEOUT_S = 60.0


@dataclass
class ToolCallRequest:
    name: str
    arguments: dict


@dataclass
class ChatReply:
    text: str | None = None
    tool_calls: list[ToolCallRequest] | None = None

    def to_payload(self) -> dict:
        return {
            "text": self.text,
            "tool_calls": None if self.tool_calls is None else [
                {"name": tc.name, "arguments": tc.arguments} for tc in self.tool_calls
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "ChatReply":
        calls = payload.get("tool_calls")
        return cls(
            text=payload.get("text"),
            tool_calls=None if calls is None else [
                ToolCallRequest(tc["name"], tc["arguments"]) for tc in calls
            ],
        )


@dataclass
class ChatRequest:
    """Normalized chat call: first message is always the system prompt."""

    messages: list[dict]
    tool_schemas: list[dict] | None = None
    temperature_class: str = "deterministic"  # or "creative"
    tier: str = "buttons"  # "assistant" | "buttons"

    def __post_init__(self):
        if not self.messages:
            raise ValueError("messages must be non-empty")
        if self.messages[0].get("role") != "system":
            raise ValueError("first message must be the system prompt")


def canonical_request(req: ChatRequest) -> dict:
    return {
        "messages": req.messages,
        "tool_schemas": req.tool_schemas,
        "temperature_class": req.temperature_class,
        "tier": req.tier,
    }


def request_hash(req: ChatRequest) -> str:
    blob = json.dumps(canonical_request(req), sort_keys=True,
                      separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# --- provider wire format (chat-completions dialect) ---

def provider_payload(req: ChatRequest, model: str) -> dict:
    """Map the normalized request onto the chat-completions dialect."""
    messages = []
    pending_ids: list[str] = []
    counter = 0
    for msg in req.messages:
        role = msg["role"]
        if role == "assistant" and msg.get("tool_calls"):
            calls = []
            pending_ids = []
            for tc in msg["tool_calls"]:
                call_id = f"call_{counter}"
                counter += 1
                pending_ids.append(call_id)
                calls.append({
                    "id": call_id,
                    "type": "function",
                    "function": {
                        "name": tc["name"],
                        "arguments": json.dumps(tc["arguments"], sort_keys=True),
                    },
                })
            messages.append({"role": "assistant",
                             "content": msg.get("content") or None,
                             "tool_calls": calls})
        elif role == "tool":
            call_id = pending_ids.pop(0) if pending_ids else f"call_{counter - 1}"
            messages.append({"role": "tool", "tool_call_id": call_id,
                             "content": msg["content"]})
        else:
            messages.append({"role": role, "content": msg["content"]})
    payload: dict = {
        "model": model,
        "messages": messages,
        "temperature": 0.0 if req.temperature_class == "deterministic" else 0.7,
    }
    if req.tool_schemas:
        payload["tools"] = [
            {"type": "function", "function": schema} for schema in req.tool_schemas
        ]
    return payload


def normalize_response(raw: dict) -> ChatReply:
    """Normalize a provider response to the shared reply shape."""
    try:
        message = raw["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ProviderError(f"unexpected provider response shape: {exc}") from exc
    calls = message.get("tool_calls")
    tool_calls = None
    if calls:
        tool_calls = []
        for call in calls:
            fn = call.get("function", {})
            try:
                arguments = json.loads(fn.get("arguments") or "{}")
            except json.JSONDecodeError as exc:
                raise ProviderError(
                    f"tool call arguments are not valid JSON: {exc}") from exc
            if not isinstance(arguments, dict):
                raise ProviderError("tool call arguments must be a JSON object")
            tool_calls.append(ToolCallRequest(fn.get("name", ""), arguments))
    return ChatReply(text=message.get("content"), tool_calls=tool_calls)


Transport = Callable[[dict], dict]


def http_transport(base_url: str, api_key: str,
                   timeout_s: float = _DEF_TIMEOUT_S) -> Transport:
    """POSTs chat-completions payloads; raises ProviderError / GatewayTimeout."""

    def call(payload: dict) -> dict:
        import httpx

        url = base_url.rstrip("/") + "/chat/completions"
        headers = {"Authorization": f"Bearer {api_key}"} if api_key else {}
        try:
            response = httpx.post(url, json=payload, headers=headers,
                                  timeout=timeout_s)
        except httpx.TimeoutException as exc:
            raise GatewayTimeout(f"provider call timed out: {exc}") from exc
        except httpx.HTTPError as exc:
            raise ProviderError(f"provider call failed: {exc}") from exc
        if response.status_code != 200:
            raise ProviderError(
                f"provider returned {response.status_code}: {response.text[:500]}")
        return response.json()

    return call


@dataclass
class GatewayConfig:
    base_url: str = ""
    api_key: str = ""
    models: dict[str, str] = field(default_factory=dict)  # tier -> model name
    timeout_s: float = _DEF_TIMEOUT_S

    @classmethod
    def from_env(cls) -> "GatewayConfig":
        return cls(
            base_url=os.environ.get(ENV_BASE_URL, ""),
            api_key=os.environ.get(ENV_API_KEY, ""),
            models={
                "assistant": os.environ.get(ENV_MODEL_ASSISTANT, "gpt-assistant"),
                "buttons": os.environ.get(ENV_MODEL_BUTTONS, "gpt-buttons"),
            },
        )


class Gateway:
    """Chat interface in one of three modes: live, record, replay."""

    def __init__(self, mode: str = "live", fixture_path: str | Path | None = None,
                 transport: Transport | None = None,
                 config: GatewayConfig | None = None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.mode = mode
        self.config = config or GatewayConfig.from_env()
        self.fixture_path = Path(fixture_path) if fixture_path else None
        self._transport = transport
        self._fixtures: dict[str, dict] | None = None
        self._lock = Lock()
        if mode in ("record", "replay") and self.fixture_path is None:
            raise ValueError(f"{mode} mode requires a fixture path")
        if mode == "replay" and not self.fixture_path.exists():
            raise FixtureMiss(f"fixture file not found: {self.fixture_path}")

    @classmethod
    def from_env(cls, transport: Transport | None = None) -> "Gateway":
        mode = os.environ.get(ENV_MODE, "live")
        fixtures = os.environ.get(ENV_FIXTURES)
        return cls(mode=mode, fixture_path=fixtures, transport=transport)

    # --- fixtures ---

    def _load_fixtures(self) -> dict[str, dict]:
        if self._fixtures is None:
            if self.fixture_path and self.fixture_path.exists():
                entries = json.loads(self.fixture_path.read_text("utf-8"))
                self._fixtures = {e["request_hash"]: e["response"] for e in entries}
            else:
                self._fixtures = {}
        return self._fixtures

    def _append_fixture(self, digest: str, reply: ChatReply) -> None:
        fixtures = self._load_fixtures()
        if digest in fixtures:
            return
        fixtures[digest] = reply.to_payload()
        entries = [{"request_hash": h, "response": r} for h, r in fixtures.items()]
        self.fixture_path.parent.mkdir(parents=True, exist_ok=True)
        self.fixture_path.write_text(
            json.dumps(entries, indent=2, ensure_ascii=False) + "\n", "utf-8")

    # --- the one entry point ---

    def chat(self, req: ChatRequest) -> ChatReply:
        if self.mode == "replay":
            digest = request_hash(req)
            fixtures = self._load_fixtures()
            if digest not in fixtures:
                raise FixtureMiss(
                    f"no recorded response for request hash {digest}")
            return ChatReply.from_payload(fixtures[digest])
        if self.mode == "record":
            with self._lock:
                digest = request_hash(req)
                fixtures = self._load_fixtures()
                if digest in fixtures:
                    return ChatReply.from_payload(fixtures[digest])
                reply = self._call_live(req)
                self._append_fixture(digest, reply)
                return reply
        return self._call_live(req)

    def _call_live(self, req: ChatRequest) -> ChatReply:
        model = self.config.models.get(req.tier, "")
        if self._transport is None:
            self._transport = http_transport(
                self.config.base_url, self.config.api_key, self.config.timeout_s)
        raw = self._transport(provider_payload(req, model))
        return normalize_response(raw)


def make_text_response(text: str) -> dict:
    """Provider-shaped plain text reply (for scripted transports in tests)."""
    return {"choices": [{"message": {"role": "assistant", "content": text}}]}


def make_tool_call_response(calls: list[tuple[str, dict]],
                            text: str | None = None) -> dict:
    """Provider-shaped tool call reply (for scripted transports in tests)."""
    return {"choices": [{"message": {
        "role": "assistant",
        "content": text,
        "tool_calls": [
            {"id": f"call_{i}", "type": "function",
             "function": {"name": name, "arguments": json.dumps(args)}}
            for i, (name, args) in enumerate(calls)
        ],
    }}]}
