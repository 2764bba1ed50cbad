"""Shared error and diagnostic types.

Every failure surfaced by the library carries a machine-readable ``code``
so that the CLI and the HTTP service can map it without string matching.
"""

from __future__ import annotations

from dataclasses import dataclass


class NormaError(Exception):
    """Base error: a code plus a human message, optionally a location."""

    def __init__(self, code: str, message: str, location: str | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.location = location

    def __str__(self) -> str:
        if self.location:
            return f"{self.code} at {self.location}: {self.message}"
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class Diagnostic:
    """A validation finding. Diagnostics are values, not exceptions."""

    code: str
    clause: str
    message: str
