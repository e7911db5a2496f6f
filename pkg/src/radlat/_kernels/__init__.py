"""Kernel backend selection.

The compiled backend is preferred when present; the pure-Python twin is used
otherwise, or when ``RADLAT_PURE`` is set in the environment. Both expose the
same functions with identical results, so callers import names from here.
"""

import os

if os.environ.get("RADLAT_PURE"):
    from . import pure as backend
else:
    try:
        from . import _fast as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as backend

BACKEND = backend.BACKEND

closure = backend.closure
transitivity_violation = backend.transitivity_violation
h_violation = backend.h_violation
h_shift_violation = backend.h_shift_violation
dual_h_violation = backend.dual_h_violation
dual_h_shift_violation = backend.dual_h_shift_violation
join_violation = backend.join_violation
meet_violation = backend.meet_violation
h_close = backend.h_close
dual_h_close = backend.dual_h_close
up_relation = backend.up_relation
lo_relation = backend.lo_relation
left_complement = backend.left_complement
right_complement = backend.right_complement
order_tables = backend.order_tables
