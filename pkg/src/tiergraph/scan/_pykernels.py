"""Pure-Python noise scanner.

Walks source text once and reports the spans occupied by comments, string
literals, and character literals. This is the hottest loop of a corpus
sweep; a compiled twin lives in _ckernels.pyx and either implementation
must produce identical output.
"""

from __future__ import annotations


def find_noise_spans(source: str) -> tuple[list[tuple[int, int]], list[tuple[str, int]]]:
    """Locate comment/string/char-literal spans in ``source``.

    Returns (spans, problems): spans are non-overlapping ascending
    (start, end) ranges; problems are (kind, offset) pairs for
    unterminated constructs, whose span runs to end of input.
    """
    spans: list[tuple[int, int]] = []
    problems: list[tuple[str, int]] = []
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "/" and i + 1 < n:
            nxt = source[i + 1]
            if nxt == "/":
                end = source.find("\n", i)
                end = n if end < 0 else end
                spans.append((i, end))
                i = end
                continue
            if nxt == "*":
                close = source.find("*/", i + 2)
                if close < 0:
                    problems.append(("comment", i))
                    spans.append((i, n))
                    i = n
                else:
                    spans.append((i, close + 2))
                    i = close + 2
                continue
            i += 1
            continue
        if c == "@" and i + 1 < n and source[i + 1] == '"':
            end = _scan_verbatim(source, i + 2)
            if end < 0:
                problems.append(("string", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        if c == "$" and i + 1 < n and source[i + 1] == '"':
            end = _scan_quoted(source, i + 2)
            if end < 0:
                problems.append(("string", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        if c == '"':
            end = _scan_quoted(source, i + 1)
            if end < 0:
                problems.append(("string", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        if c == "'":
            end = _scan_char(source, i + 1)
            if end < 0:
                problems.append(("char", i))
                spans.append((i, n))
                i = n
            else:
                spans.append((i, end))
                i = end
            continue
        i += 1
    return spans, problems


def _scan_quoted(source: str, start: int) -> int:
    """End offset (exclusive) of a regular string opened before ``start``."""
    i = start
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\\":
            i += 2
            continue
        if c == '"':
            return i + 1
        if c == "\n":
            return -1
        i += 1
    return -1


def _scan_verbatim(source: str, start: int) -> int:
    """End offset of a verbatim string; doubled quotes stay inside it."""
    i = start
    n = len(source)
    while i < n:
        if source[i] == '"':
            if i + 1 < n and source[i + 1] == '"':
                i += 2
                continue
            return i + 1
        i += 1
    return -1


# Longest legal char literal is on the order of '\UXXXXXXXX'.
_CHAR_SCAN_LIMIT = 12


def _scan_char(source: str, start: int) -> int:
    i = start
    n = min(len(source), start + _CHAR_SCAN_LIMIT)
    while i < n:
        c = source[i]
        if c == "\\":
            i += 2
            continue
        if c == "'":
            return i + 1
        if c == "\n":
            return -1
        i += 1
    return -1
