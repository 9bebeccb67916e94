"""Hot-kernel backend selection: compiled extension if built, else pure Python.

Both backends implement the same pinned algorithms (see
:mod:`visitprob._kernels_py`) and return bit-identical results, so the
selection affects speed only.
"""

from __future__ import annotations

try:
    from visitprob import _kernels as _impl

    HAVE_COMPILED = True
except ImportError:  # extension not built; fall back
    from visitprob import _kernels_py as _impl

    HAVE_COMPILED = False

simulate_counts = _impl.simulate_counts
enumerate_visit_mass = _impl.enumerate_visit_mass


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED else "pure-python"
