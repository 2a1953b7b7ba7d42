"""Error types shared by every layer of the generator.

Each error carries a short ``code`` token so the CLI (and anyone grepping its
stderr) can tell failures apart without parsing prose.
"""

from typing import Any, Dict, List, Optional, Sequence


class SerbestError(Exception):
    """Base class for all generator errors."""

    code: str = "error"

    def __init__(self, message: str, *, code: Optional[str] = None, path: Optional[str] = None, **context: Any):
        super().__init__(message)
        if code is not None:
            self.code = code
        self.message = message
        self.path = path
        self.context: Dict[str, Any] = context

    def diagnostic(self) -> str:
        """Render ``error[<code>] <path>: <message>``."""
        where = f" {self.path}" if self.path else ""
        return f"error[{self.code}]{where}: {self.message}"

    def __str__(self) -> str:
        return self.diagnostic()


class FeatureStructureError(SerbestError):
    """Malformed feature-structure text or an illegal path operation."""

    code = "syntax-error"

    def __init__(self, message: str, *, code: Optional[str] = None, line: Optional[int] = None,
                 column: Optional[int] = None, path: Optional[str] = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message, code=code, path=path)
        self.line = line
        self.column = column


class UnificationClash(SerbestError):
    code = "clash"


class GrammarError(SerbestError):
    """Rule-file, compilation or derivation failure."""

    code = "syntax-error"


class LexiconError(SerbestError):
    code = "missing-entry"


class MorphologyError(SerbestError):
    code = "tag-order-violation"


class PlanError(SerbestError):
    """Information-structure request that no constituent order can satisfy."""

    code = "focus-conflict"


class RealizationError(SerbestError):
    code = "unsupported-s-form"


class SchemaIssue:
    """One schema violation found while validating an input structure."""

    __slots__ = ("code", "path", "message")

    def __init__(self, code: str, path: str, message: str):
        self.code = code
        self.path = path
        self.message = message

    def diagnostic(self) -> str:
        return f"error[{self.code}] {self.path}: {self.message}"

    def __repr__(self) -> str:
        return f"SchemaIssue({self.code!r}, {self.path!r})"


class SchemaError(SerbestError):
    """Aggregates every issue found in one input structure."""

    code = "schema-error"

    def __init__(self, issues: Sequence[SchemaIssue]):
        self.issues: List[SchemaIssue] = list(issues)
        first = self.issues[0] if self.issues else None
        super().__init__(
            f"{len(self.issues)} schema issue(s)",
            code=first.code if first else None,
            path=first.path if first else None,
        )

    @property
    def codes(self) -> List[str]:
        return [issue.code for issue in self.issues]

    def diagnostic(self) -> str:
        return "\n".join(issue.diagnostic() for issue in self.issues)
