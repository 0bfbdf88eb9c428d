"""Noise-scan kernel selection.

Prefers the compiled kernel when the extension has been built
(``python setup.py build_ext --inplace``); falls back to the pure-Python
twin otherwise. Set TIERGRAPH_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os

from tiergraph.scan import _pykernels

find_noise_spans = _pykernels.find_noise_spans
_IMPL = "python"

if not os.environ.get("TIERGRAPH_PURE"):
    try:
        from tiergraph.scan import _ckernels

        find_noise_spans = _ckernels.find_noise_spans
        _IMPL = "compiled"
    except ImportError:
        pass


def kernel_name() -> str:
    """Which kernel was selected at import: 'compiled' or 'python'."""
    return _IMPL
