"""Numeric kernel backend.

The compiled Cython extension is preferred; the pure-Python module is the
fallback when the extension is missing or when ``INVDIFF_PURE`` is set in the
environment. Both expose the same functions (`thomas`, `cn_assemble`,
`cn_step`, `sens_solve`, `weighted_dot`) with identical semantics.
"""

import os

if os.environ.get("INVDIFF_PURE"):
    from invdiff._kernels import pure as impl

    BACKEND = "pure"
else:
    try:
        from invdiff._kernels import _core as impl

        BACKEND = "compiled"
    except ImportError:
        from invdiff._kernels import pure as impl

        BACKEND = "pure"

thomas = impl.thomas
cn_assemble = impl.cn_assemble
cn_step = impl.cn_step
sens_solve = impl.sens_solve
weighted_dot = impl.weighted_dot
