"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``MAXENT_TRANSITIONS_PURE_PYTHON`` is set to a non-empty
value other than ``0``, the pure-Python twin is used.  ``BACKEND`` names the
active choice.
"""

from __future__ import annotations

import os

from maxent_transitions import _kernels_py

IID_MIXED = _kernels_py.IID_MIXED
ROTH_EREV = _kernels_py.ROTH_EREV
LOGIT_RESPONSE = _kernels_py.LOGIT_RESPONSE


def _load():
    if os.environ.get("MAXENT_TRANSITIONS_PURE_PYTHON", "") not in ("", "0"):
        return _kernels_py, "python"
    try:
        from maxent_transitions import _kernels
    except ImportError:
        return _kernels_py, "python"
    return _kernels, "cython"


_impl, BACKEND = _load()

count_pairs = _impl.count_pairs
play_session = _impl.play_session
max_entropy_on_segment = _impl.max_entropy_on_segment


def available_backends() -> dict[str, object]:
    """All importable kernel modules keyed by backend name (for tests and benchmarks)."""
    backends: dict[str, object] = {"python": _kernels_py}
    try:
        from maxent_transitions import _kernels
    except ImportError:
        pass
    else:
        backends["cython"] = _kernels
    return backends
