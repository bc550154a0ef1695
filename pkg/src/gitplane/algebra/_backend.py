"""Select the elimination kernels: compiled when available, else pure Python.

Set ``GITPLANE_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("GITPLANE_PURE_PYTHON"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:  # extension not built
        from . import _kernels_py as kernels

BACKEND = kernels.BACKEND
echelon = kernels.echelon
rank = kernels.rank
det = kernels.det
