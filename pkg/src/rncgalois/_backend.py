"""Kernel backend selection.

The compiled Cython kernel is preferred; the pure-Python mirror is the
fallback.  ``RNCGALOIS_BACKEND=pure`` or ``=compiled`` forces a choice
(the latter raises if the extension was not built).
"""

import os

_forced = os.environ.get("RNCGALOIS_BACKEND", "").strip().lower()

if _forced == "pure":
    from . import _kernel_py as kernel

    BACKEND = "pure"
elif _forced == "compiled":
    from . import _kernel as kernel  # type: ignore[attr-defined]

    BACKEND = "compiled"
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernel_py as kernel

        BACKEND = "pure"
