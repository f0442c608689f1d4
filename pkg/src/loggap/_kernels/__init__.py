"""Kernel backend selection.

The compiled Cython backend is used when importable; otherwise the
pure-numpy fallback.  ``LOGGAP_BACKEND=pure`` or ``LOGGAP_BACKEND=compiled``
forces a choice (the latter raises if the extension is missing).
"""

import os

_requested = os.environ.get("LOGGAP_BACKEND", "").strip().lower()

if _requested == "pure":
    from . import _pure as _impl

    BACKEND = "pure"
elif _requested in ("", "compiled"):
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _pure as _impl

        BACKEND = "pure"
else:
    raise RuntimeError(
        f"unknown LOGGAP_BACKEND={_requested!r} (use 'pure' or 'compiled')"
    )

SNAP_EPS = 1e-12

frac_log = _impl.frac_log
frac_log_root = _impl.frac_log_root
window_count_batch = _impl.window_count_batch
merge_progressions = _impl.merge_progressions

__all__ = [
    "BACKEND",
    "SNAP_EPS",
    "frac_log",
    "frac_log_root",
    "window_count_batch",
    "merge_progressions",
]
