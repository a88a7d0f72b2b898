"""Backend selection: compiled extension when available, NumPy otherwise.

Set SPECMOLL_BACKEND=python (or =c) to force a choice; the default is
the compiled module with a silent fallback.
"""

import os

from . import _kernels_py

_choice = os.environ.get("SPECMOLL_BACKEND", "auto").lower()

if _choice == "python":
    kernels = _kernels_py
elif _choice == "c":
    from . import _kernels as kernels  # ImportError here is deliberate
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _kernels_py


def backend_name() -> str:
    """Name of the active kernel backend: "c" or "python"."""
    return kernels.BACKEND


def available_backends():
    """All importable kernel backends, compiled first."""
    found = []
    try:
        from . import _kernels

        found.append(_kernels)
    except ImportError:
        pass
    found.append(_kernels_py)
    return found
