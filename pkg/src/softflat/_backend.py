"""Pick the field kernel implementation at import time.

``SOFTFLAT_BACKEND=python`` forces the interpreted kernels;
``SOFTFLAT_BACKEND=compiled`` makes a missing extension an ImportError.
``SOFTFLAT_SINGLE_THREAD=1`` pins the compiled kernel to one thread.
"""
import os

from . import _pyfield

_choice = os.environ.get("SOFTFLAT_BACKEND", "auto").lower()

if _choice == "python":
    kernels = _pyfield
else:
    try:
        from . import _cfield as kernels
    except ImportError:
        if _choice == "compiled":
            raise
        kernels = _pyfield

BACKEND = "compiled" if kernels is not _pyfield else "python"


def available_backends():
    out = {"python": _pyfield}
    try:
        from . import _cfield

        out["compiled"] = _cfield
    except ImportError:
        pass
    return out


def field_threads():
    if os.environ.get("SOFTFLAT_SINGLE_THREAD", "") not in ("", "0"):
        return 1
    return os.cpu_count() or 1
