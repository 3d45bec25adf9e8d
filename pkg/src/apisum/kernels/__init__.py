"""Numeric kernels with a compiled core and a pure-Python fallback.

The compiled extension is preferred when importable; set
``APISUM_PURE_PYTHON=1`` to force the fallback.  Both implementations share
one flat-buffer contract and produce identical results (same operation
order, no fast-math), so callers never need to know which one is active.
"""

from __future__ import annotations

import os
from array import array

from . import _pykernels

if os.environ.get("APISUM_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND


def flatten(rows: list[list[float]]) -> array:
    flat = array("d")
    for row in rows:
        flat.extend(row)
    return flat


def cosine_matrix(rows: list[list[float]]) -> list[list[float]]:
    """Pairwise clamped-cosine matrix of equal-length vectors, diagonal 0."""
    n = len(rows)
    if n == 0:
        return []
    dim = len(rows[0])
    flat = _impl.cosine_matrix(flatten(rows), n, dim)
    return [list(flat[i * n : (i + 1) * n]) for i in range(n)]


def pagerank(
    weights: list[list[float]],
    damping: float,
    tolerance: float,
    max_iterations: int,
) -> tuple[list[float], int, bool]:
    """Scores, iterations used, and convergence flag for a weight matrix."""
    n = len(weights)
    if n == 0:
        return [], 0, True
    scores, iterations, converged = _impl.pagerank(
        flatten(weights), n, damping, tolerance, max_iterations
    )
    return list(scores), iterations, converged
