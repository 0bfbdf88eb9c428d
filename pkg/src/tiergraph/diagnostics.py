"""Structured diagnostics emitted by the extraction and resolution pipeline.

Extraction never aborts on malformed source; everything the token rules
skip or cannot classify lands here so accuracy loss stays attributable.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

logger = logging.getLogger("tiergraph.diagnostics")

# Well-known diagnostic codes.
UNTERMINATED_NOISE = "unterminated-noise"
USING_MISSING_SEMICOLON = "using-missing-semicolon"
CLASS_MISSING_NAME = "class-missing-name"
MEMBER_UNCLASSIFIED = "member-unclassified"
CHAIN_LINK_SKIPPED = "chain-link-skipped"
BARE_CALL_SKIPPED = "bare-call-skipped"
RECEIVER_UNRESOLVED = "receiver-unresolved"
MEMBER_NOT_FOUND = "member-not-found"
DUPLICATE_CLASS = "duplicate-class"
AMBIGUOUS_TYPE = "ambiguous-type"
INTERFACE_CANDIDATES = "interface-candidates"
ENTRY_UNRESOLVED = "entry-unresolved"
EXTRACT_FAILED = "extract-failed"
FILE_SKIPPED = "file-skipped"
TICK_OVERLAP = "tick-overlap"


@dataclass(frozen=True)
class Diagnostic:
    """One pipeline event: where it happened, what rule fired, and why."""

    code: str
    file: str
    offset: int
    message: str


class DiagnosticLog:
    """Collects diagnostics for one pipeline run and mirrors them to logging."""

    def __init__(self) -> None:
        self.records: list[Diagnostic] = []

    def emit(self, code: str, file: str, offset: int, message: str) -> None:
        record = Diagnostic(code=code, file=file, offset=offset, message=message)
        self.records.append(record)
        logger.debug("%s %s@%d: %s", code, file, offset, message)

    def absorb(self, records: list[Diagnostic] | tuple[Diagnostic, ...]) -> None:
        """Replay records collected elsewhere (e.g. a per-file sub-log)."""
        self.records.extend(records)

    def counts_by_code(self) -> dict[str, int]:
        return dict(Counter(r.code for r in self.records))

    def for_code(self, code: str) -> list[Diagnostic]:
        return [r for r in self.records if r.code == code]

    def __len__(self) -> int:
        return len(self.records)
