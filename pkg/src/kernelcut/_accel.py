"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``KERNELCUT_PURE=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("KERNELCUT_PURE", "") not in ("", "0"):
    from ._kernels_py import ball_sign_mismatch, lll_gram
else:
    try:
        from ._kernels_ext import ball_sign_mismatch, lll_gram

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import ball_sign_mismatch, lll_gram

__all__ = ["BACKEND", "ball_sign_mismatch", "lll_gram"]
