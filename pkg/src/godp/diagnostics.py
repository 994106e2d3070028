"""Source locations, diagnostics, and the error taxonomy shared by all passes.

Every diagnostic carries a position inside the input text and a stable
machine-readable code. Codes are grouped into three classes that the CLI
maps onto exit codes: frontend errors (syntax / name binding), semantic
errors (kinds, arity, collisions), and I/O failures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    """Half-open region of source text; line and column are 1-based."""

    line: int
    col: int
    end_line: int = 0
    end_col: int = 0

    def __post_init__(self) -> None:
        if self.end_line == 0:
            object.__setattr__(self, "end_line", self.line)
            object.__setattr__(self, "end_col", self.col)

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


# Frontend: malformed input or unresolvable names. CLI exit code 1.
FRONTEND_CODES = frozenset(
    {
        "SyntaxError",
        "UnsupportedConstruct",
        "DuplicateName",
        "UnresolvedReference",
        "ForwardReference",
        "NotAPattern",
    }
)

# Semantic: the library parses and resolves but is ill-typed or cannot be
# flattened/stratified. CLI exit code 2.
SEMANTIC_CODES = frozenset(
    {
        "KindMismatch",
        "ArityMismatch",
        "MissingMandatoryArgument",
        "OntologyArgForSymbolParam",
        "SymbolArgForOntologyParam",
        "UnmappedParameterSymbol",
        "FitTargetUndeclared",
        "UnknownFitSymbol",
        "ConflictingKind",
        "CyclicReference",
        "StratificationCollision",
        "UnstratifiedName",
        "OptionalParameterInRequirement",
        "UnknownTarget",
        "Usage",
    }
)

IO_CODES = frozenset({"IoError"})

EXIT_OK = 0
EXIT_FRONTEND = 1
EXIT_SEMANTIC = 2
EXIT_IO = 3


def exit_code_for(code: str) -> int:
    if code in SEMANTIC_CODES:
        return EXIT_SEMANTIC
    if code in IO_CODES:
        return EXIT_IO
    return EXIT_FRONTEND


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning" | "note"
    code: str
    message: str
    span: Span | None = None
    file: str | None = None
    notes: tuple[Diagnostic, ...] = field(default=())

    def format(self) -> str:
        """Render as ``file:line:col: severity: message`` (plus note lines)."""
        where = self.file or "<input>"
        if self.span is not None:
            where = f"{where}:{self.span.line}:{self.span.col}"
        label = f"{self.code}: " if self.severity != "note" else ""
        head = f"{where}: {self.severity}: {label}{self.message}"
        if self.notes:
            return "\n".join([head] + [n.format() for n in self.notes])
        return head

    def to_json(self) -> str:
        payload = {
            "file": self.file,
            "line": self.span.line if self.span else None,
            "col": self.span.col if self.span else None,
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
        }
        if self.notes:
            payload["notes"] = [n.message for n in self.notes]
        return json.dumps(payload, sort_keys=True)


class GodpError(Exception):
    """Any failure with a source position; wraps one primary Diagnostic."""

    def __init__(
        self,
        code: str,
        message: str,
        span: Span | None = None,
        file: str | None = None,
        notes: tuple[Diagnostic, ...] = (),
    ):
        self.code = code
        self.message = message
        self.span = span
        self.file = file
        self.notes = notes
        super().__init__(message)

    @property
    def diagnostic(self) -> Diagnostic:
        return Diagnostic("error", self.code, self.message, self.span, self.file, self.notes)

    def with_note(self, note: Diagnostic) -> "GodpError":
        return GodpError(self.code, self.message, self.span, self.file, self.notes + (note,))

    def with_file(self, file: str) -> "GodpError":
        notes = tuple(
            Diagnostic(n.severity, n.code, n.message, n.span, n.file or file) for n in self.notes
        )
        return GodpError(self.code, self.message, self.span, self.file or file, notes)

    def __str__(self) -> str:
        return self.diagnostic.format()
