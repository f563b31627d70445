"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``QZERNIKE_KERNEL=pure`` or ``QZERNIKE_KERNEL=fast`` to force a choice
(``fast`` raises if the extension is missing).
"""

import os

_choice = os.environ.get("QZERNIKE_KERNEL", "").strip().lower()
if _choice not in ("", "pure", "fast"):
    raise RuntimeError(f"QZERNIKE_KERNEL must be 'pure' or 'fast', got {_choice!r}")

if _choice == "pure":
    from . import pure as kernel
else:
    try:
        from . import _fast as kernel  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "fast":
            raise
        from . import pure as kernel

KERNEL_NAME = kernel.KERNEL_NAME

GR_ZERO = kernel.GR_ZERO
GR_ONE = kernel.GR_ONE
GR_I = kernel.GR_I

gr_normalize = kernel.gr_normalize
gr_add = kernel.gr_add
gr_sub = kernel.gr_sub
gr_neg = kernel.gr_neg
gr_mul = kernel.gr_mul
gr_div = kernel.gr_div
gr_times_ipow = kernel.gr_times_ipow

expo_add = kernel.expo_add
poly_add = kernel.poly_add
poly_sub = kernel.poly_sub
poly_neg = kernel.poly_neg
poly_mul = kernel.poly_mul
poly_scale = kernel.poly_scale
poly_scale_int_ipow = kernel.poly_scale_int_ipow

weyl_mul = kernel.weyl_mul
