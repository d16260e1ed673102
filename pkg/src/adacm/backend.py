"""Kernel backend selection.

The compiled extension (adacm._core) is preferred; the numpy fallback is
used when it is missing or when ADACM_FORCE_FALLBACK=1 is set. Both expose
lut_apply_colors(colors, table, size) and
mlp_apply_colors(colors, w1, b1, w2, b2, w3, b3) over flat (K, 3) arrays.
"""

import os

from . import _kernels_np

if os.environ.get("ADACM_FORCE_FALLBACK") == "1":
    _impl = _kernels_np
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_np

BACKEND_NAME = "compiled" if _impl is not _kernels_np else "numpy"

lut_apply_colors = _impl.lut_apply_colors
mlp_apply_colors = _impl.mlp_apply_colors
