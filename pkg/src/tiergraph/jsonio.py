"""Canonical JSON: sorted keys, compact separators, trailing newline.

The CLI and the HTTP service both emit these exact bytes so parity
tests can compare them byte for byte.
"""

from __future__ import annotations

import json


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def canonical_bytes(obj) -> bytes:
    return (canonical_dumps(obj) + "\n").encode("utf-8")
