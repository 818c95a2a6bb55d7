"""
Error hierarchy for reachkit.

Every error raised on purpose by the library derives from ``ReachkitError`` so
the CLI can map it onto an exit code.
"""

from typing import Any, Dict, List, Optional


class ReachkitError(Exception):
    """Base class for all reachkit errors."""

    exit_code = 1


class GraphParseError(ReachkitError):
    """Input text is not a well-formed graph in the requested format."""

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        self.line = line
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(f"{message}{suffix}")


class DomainError(ReachkitError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class WalkRejected(ReachkitError):
    """A vertex sequence is not an alternating walk."""

    exit_code = 2

    def __init__(self, message: str, index: int):
        self.index = index
        super().__init__(f"{message} at step {index}")


class CapExceeded(ReachkitError):
    """A resource cap was reached; ``partial`` holds what was computed."""

    exit_code = 3

    def __init__(self, what: str, cap: int, partial: Optional[List[Any]] = None):
        self.what = what
        self.cap = cap
        self.partial = partial if partial is not None else []
        super().__init__(f"{what} cap of {cap} exceeded")


class PreconditionError(ReachkitError):
    """The input does not satisfy the precondition of an operation."""

    exit_code = 2

    def __init__(self, message: str, verdict: Any = None):
        self.verdict = verdict
        super().__init__(message)


class TheoremViolation(ReachkitError):
    """A proved statement failed on a certified input."""

    exit_code = 1

    def __init__(self, check: str, witness: Dict[str, Any]):
        self.check = check
        self.witness = witness
        super().__init__(f"{check} violated: {witness}")


class InternalInconsistency(ReachkitError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 1


class GenerationFailure(ReachkitError):
    """Rejection sampling ran out of retries."""

    exit_code = 3

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)
