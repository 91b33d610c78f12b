"""Engine error types.

Every domain failure is a TreeDocError subclass carrying a stable snake_case
``code``. The HTTP layer and the CLI map codes to statuses / exit messages,
and the test suite checks the registry is exhaustive, so new errors must be
added here rather than raised ad hoc.
"""

from __future__ import annotations


class TreeDocError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code


# --- document tree ---

class EmptyTitle(TreeDocError):
    code = "empty_title"


class InvalidTitle(TreeDocError):
    code = "invalid_title"


class UnknownNode(TreeDocError):
    code = "unknown_node"


class PositionOutOfRange(TreeDocError):
    code = "position_out_of_range"


class InvalidFragment(TreeDocError):
    code = "invalid_fragment"


class CannotDeleteRoot(TreeDocError):
    code = "cannot_delete_root"


class CycleWouldForm(TreeDocError):
    code = "cycle_would_form"


# --- linearizer ---

class UnsupportedFormat(TreeDocError):
    code = "unsupported_format"


# --- revision ---

class UnknownSuggestion(TreeDocError):
    code = "unknown_suggestion"


class AlreadyResolved(TreeDocError):
    code = "already_resolved"


class UnknownVersion(TreeDocError):
    code = "unknown_version"


# --- AI operations ---

class EmptyContent(TreeDocError):
    code = "empty_content"


class NoChildren(TreeDocError):
    code = "no_children"


class EmptyOutline(TreeDocError):
    code = "empty_outline"


class NoExportBlock(TreeDocError):
    code = "no_export_block"


class MalformedModelOutput(TreeDocError):
    """The model reply broke a normative constraint.

    Carries the raw reply so callers can surface it to the user instead of
    silently retrying.
    """

    code = "malformed_model_output"

    def __init__(self, detail: str, raw_reply: str = ""):
        super().__init__(detail)
        self.raw_reply = raw_reply


# --- assistant ---

class SessionClosed(TreeDocError):
    code = "session_closed"


class EmptyKeyword(TreeDocError):
    code = "empty_keyword"


# --- gateway ---

class ProviderError(TreeDocError):
    code = "provider_error"


class FixtureMiss(TreeDocError):
    code = "fixture_miss"


class GatewayTimeout(TreeDocError):
    code = "timeout"


# --- persistence ---

class IoError(TreeDocError):
    code = "io_error"


class FormatError(TreeDocError):
    """A document file failed to load; detail names the JSON path at fault."""

    code = "format_error"


class UnknownDoc(TreeDocError):
    code = "unknown_doc"


def _subclasses(cls) -> list[type]:
    out = []
    for sub in cls.__subclasses__():
        out.append(sub)
        out.extend(_subclasses(sub))
    return out


#: code -> exception class, for exhaustiveness checks and HTTP/CLI mapping
ERROR_CODES: dict[str, type] = {sub.code: sub for sub in _subclasses(TreeDocError)}

#: code -> HTTP status used by the API layer
HTTP_STATUS: dict[str, int] = {
    "unknown_doc": 404,
    "unknown_node": 404,
    "unknown_suggestion": 404,
    "unknown_version": 404,
    "already_resolved": 409,
    "cycle_would_form": 409,
    "cannot_delete_root": 409,
    "session_closed": 409,
    "empty_title": 422,
    "invalid_title": 422,
    "position_out_of_range": 422,
    "invalid_fragment": 422,
    "unsupported_format": 422,
    "empty_content": 422,
    "no_children": 422,
    "empty_outline": 422,
    "no_export_block": 422,
    "malformed_model_output": 422,
    "empty_keyword": 422,
    "provider_error": 502,
    "fixture_miss": 502,
    "timeout": 502,
    "io_error": 500,
    "format_error": 500,
}
