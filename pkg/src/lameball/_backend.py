"""Select the compiled kernels when importable, else the numpy fallback.

Set ``LAMEBALL_BACKEND=python`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("LAMEBALL_BACKEND", "").lower() == "python":
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _pykernels
        BACKEND = "python"

__all__ = ["BACKEND", "kernels"]
