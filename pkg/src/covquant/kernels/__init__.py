"""Kernel selection: compiled extension if available, pure Python otherwise.

Set COVQUANT_KERNEL=py or COVQUANT_KERNEL=c to force a choice; the default
("auto") prefers the compiled kernel and silently falls back.
"""

import os

_choice = os.environ.get("COVQUANT_KERNEL", "auto")

if _choice == "py":
    from . import _intpoly_py as _impl

    IMPLEMENTATION = "py"
elif _choice == "c":
    from . import _intpoly_c as _impl

    IMPLEMENTATION = "c"
elif _choice == "auto":
    try:
        from . import _intpoly_c as _impl

        IMPLEMENTATION = "c"
    except ImportError:
        from . import _intpoly_py as _impl

        IMPLEMENTATION = "py"
else:
    raise RuntimeError(f"COVQUANT_KERNEL must be 'py', 'c' or 'auto', got {_choice!r}")

LP_ZERO = _impl.LP_ZERO
lp_trim = _impl.lp_trim
lp_const = _impl.lp_const
lp_monomial = _impl.lp_monomial
lp_is_zero = _impl.lp_is_zero
lp_valuation = _impl.lp_valuation
lp_degree = _impl.lp_degree
lp_add = _impl.lp_add
lp_neg = _impl.lp_neg
lp_sub = _impl.lp_sub
lp_mul = _impl.lp_mul
lp_scale = _impl.lp_scale
lp_shift = _impl.lp_shift
lp_monomial_mul = _impl.lp_monomial_mul
lp_divexact = _impl.lp_divexact
lp_content = _impl.lp_content
row_primitive = _impl.row_primitive
echelon = _impl.echelon
vec_reduce = _impl.vec_reduce
det_bareiss = _impl.det_bareiss
