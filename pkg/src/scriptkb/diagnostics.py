"""Diagnostics emitted by the file parser and knowledge-base loader.

Every problem found while reading source text is reported as a
:class:`Diagnostic` instead of an exception, so a single pass over a file
collects everything that is wrong with it.
"""

from dataclasses import dataclass

ERROR = "error"
WARNING = "warning"
INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    file: str
    line: int
    col: int
    severity: str
    code: str
    message: str

    def render(self) -> str:
        return f"{self.file}:{self.line}:{self.col}: {self.severity}: {self.message}"


def has_errors(diagnostics) -> bool:
    return any(d.severity == ERROR for d in diagnostics)
