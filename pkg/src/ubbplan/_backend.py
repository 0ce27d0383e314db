"""Kernel backend selection.

Imports the compiled extension when it was built, the pure-Python fallback
otherwise. Set ``UBBPLAN_PURE_PYTHON=1`` to force the fallback (the kernel
benchmark uses this to compare both paths).
"""

import os

if os.environ.get("UBBPLAN_PURE_PYTHON"):
    from . import _kernels_py as _impl

    KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        KERNEL_BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

        KERNEL_BACKEND = "python"

power_sum = _impl.power_sum
power_prefix_sums = _impl.power_prefix_sums
