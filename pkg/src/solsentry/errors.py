"""Exception types shared across the toolkit.

Every error carries the fields the CLI needs to render a diagnostic; nothing
here formats output.
"""

from __future__ import annotations


class SentryError(Exception):
    """Base class for all toolkit errors."""


class SoliditySyntaxError(SentryError):
    """Malformed source rejected by the built-in parser."""

    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"line {line}:{column}: expected {expected}, found {found}")


class UnsupportedConstructError(SentryError):
    """Valid Solidity that is outside the supported subset (e.g. assembly)."""

    def __init__(self, line: int, column: int, construct: str):
        self.line = line
        self.column = column
        self.construct = construct
        super().__init__(f"line {line}:{column}: unsupported construct: {construct}")


class MalformedAstError(SentryError):
    """AST JSON that does not follow the documented format."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class PrintUnsupportedError(SentryError):
    """pretty_print hit opaque nodes it cannot render back to source."""

    def __init__(self, node_types: list[str]):
        self.node_types = node_types
        super().__init__("cannot print opaque node types: " + ", ".join(sorted(set(node_types))))


class NoBodyError(SentryError):
    """CFG construction requires a function body."""


class RuleSyntaxError(SentryError):
    """Condition text rejected by the rule-DSL grammar."""

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"position {position}: expected {expected}")


class DuplicateDetectorIdError(SentryError):
    def __init__(self, detector_id: str):
        self.detector_id = detector_id
        super().__init__(f"detector id already registered: {detector_id}")


class RejectedCandidateError(SentryError):
    """integrate() called with a report whose decision is not `accepted`."""


class BackendUnavailableError(SentryError):
    """The LLM backend could not be reached (network/auth)."""


class EmptyResponseError(SentryError):
    """The LLM backend returned no usable text."""


class InjectionUnparseableError(SentryError):
    """A snippet composed into a forged function failed to parse."""


class InsufficientInstancesError(SentryError):
    """split() asked for more training instances than exist."""


class MissingExpectedConditionError(SentryError):
    def __init__(self, instance_id: str):
        self.instance_id = instance_id
        super().__init__(f"instance lacks expected_condition: {instance_id}")


class EmptyEvaluationError(SentryError):
    """em_score() over zero pairs."""


class NotFoundError(SentryError):
    """Remote target does not exist."""


class RateLimitedError(SentryError):
    def __init__(self, message: str, retry_after: float | None = None):
        self.retry_after = retry_after
        super().__init__(message)


class UnverifiedContractError(SentryError):
    """Chain address has no published, verified source."""


class NetworkDisabledError(SentryError):
    """Offline mode and the target is not cached or fixture-served."""
