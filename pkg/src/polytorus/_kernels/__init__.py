"""Backend selection for the numeric kernels.

Two interchangeable implementations exist: JIT-compiled (numba) and
pure NumPy.  The environment flag ``POLYTORUS_BACKEND`` picks one at
import time:

    auto   (default) numba if importable, NumPy otherwise
    numba  require the JIT backend, fail if numba is missing
    numpy  force the pure-NumPy backend

The flag swaps arithmetically equivalent code paths only: both backends
are deterministic for fixed inputs, and they agree to roundoff
(~1e-14 relative).  All numerical run state (seeds, grids, budgets)
stays in explicit configuration, never in the environment.
"""

from __future__ import annotations

import os

from . import numpy_impl

_CHOICE = os.environ.get("POLYTORUS_BACKEND", "auto").strip().lower()

if _CHOICE in ("auto", ""):
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        _impl = numpy_impl
        BACKEND = "numpy"
elif _CHOICE == "numba":
    from . import numba_impl as _impl

    BACKEND = "numba"
elif _CHOICE == "numpy":
    _impl = numpy_impl
    BACKEND = "numpy"
else:
    raise ValueError(
        f"POLYTORUS_BACKEND={_CHOICE!r}: expected 'auto', 'numba', or 'numpy'"
    )

eval_terms = _impl.eval_terms
line_values = _impl.line_values
dft_extract = _impl.dft_extract
pairwise_max_absdiff = _impl.pairwise_max_absdiff
abs_pow_sum = _impl.abs_pow_sum

# Fixed evaluation chunk for grid sweeps.  A constant, not a config knob:
# chunk boundaries change partial-sum grouping, and results must not
# depend on memory-pressure heuristics.
CHUNK = 1 << 16

__all__ = [
    "BACKEND",
    "CHUNK",
    "abs_pow_sum",
    "dft_extract",
    "eval_terms",
    "line_values",
    "pairwise_max_absdiff",
]
