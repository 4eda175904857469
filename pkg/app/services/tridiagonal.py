import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import solve_banded

from app.config import STURM_REL_TOL, STURM_MAX_ITERATIONS
from app.middleware.error import ValidationFailure

logger = logging.getLogger(__name__)


def _as_tridiagonal(diagonal, off_diagonal) -> Tuple[np.ndarray, np.ndarray]:
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(off_diagonal, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise ValidationFailure("tridiagonal diagonal must be a non-empty vector")
    if e.size != d.size - 1:
        raise ValidationFailure(f"off-diagonal needs {d.size - 1} entries, got {e.size}")
    return d, e


# Number of eigenvalues strictly below each shift (Sturm sequence sign count)
def sturm_count(diagonal, off_diagonal, shifts) -> np.ndarray:
    d, e = _as_tridiagonal(diagonal, off_diagonal)
    e2 = e * e
    x = np.atleast_1d(np.asarray(shifts, dtype=float))
    pivmin = np.finfo(float).tiny * max(1.0, float(e2.max()) if e2.size else 1.0)

    q = d[0] - x
    q[np.abs(q) < pivmin] = -pivmin
    count = (q < 0).astype(int)
    for i in range(1, d.size):
        q = d[i] - x - e2[i - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        count += q < 0
    return count


def gershgorin_bounds(diagonal, off_diagonal) -> Tuple[float, float]:
    d, e = _as_tridiagonal(diagonal, off_diagonal)
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo, hi = float(np.min(d - radius)), float(np.max(d + radius))
    pad = 2.0 * np.finfo(float).eps * max(1.0, abs(lo), abs(hi))
    return lo - pad, hi + pad


def sturm_eigenvalues(
    diagonal,
    off_diagonal,
    indices: Optional[Sequence[int]] = None,
    tol: Optional[float] = None,
    rel_tol: float = 0.0,
) -> np.ndarray:
    """
    Selected eigenvalues (ascending, 0-based indices) of a symmetric
    tridiagonal matrix by Sturm-count bisection inside the Gershgorin bounds.

    Bisection stops once a bracket is narrower than max(tol, rel_tol*|lambda|)
    or can no longer be split in floating point. The default tol is
    1e-12 * max(1, norm); pass tol=0 with a small rel_tol for eigenvalues
    much smaller than the matrix norm.
    """
    d, e = _as_tridiagonal(diagonal, off_diagonal)
    size = d.size
    k = np.arange(size) if indices is None else np.asarray(indices, dtype=int)
    if k.size and (k.min() < 0 or k.max() >= size):
        raise ValidationFailure(f"eigenvalue index outside 0..{size - 1}")

    lower, upper = gershgorin_bounds(d, e)
    if tol is None:
        tol = STURM_REL_TOL * max(1.0, abs(lower), abs(upper))

    lo = np.full(k.size, lower)
    hi = np.full(k.size, upper)
    for _ in range(STURM_MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        width = hi - lo
        active = (width > np.maximum(tol, rel_tol * np.maximum(np.abs(lo), np.abs(hi))))
        active &= (mid > lo) & (mid < hi)
        if not active.any():
            break
        idx = np.flatnonzero(active)
        below = sturm_count(d, e, mid[idx]) > k[idx]
        hi[idx[below]] = mid[idx[below]]
        lo[idx[~below]] = mid[idx[~below]]
    else:
        logger.warning(f"Sturm bisection hit {STURM_MAX_ITERATIONS} iterations")

    return 0.5 * (lo + hi)


def inverse_iteration(diagonal, off_diagonal, eigenvalue: float, iterations: int = 3) -> np.ndarray:
    """Unit eigenvector for a known eigenvalue, by shifted banded solves"""
    d, e = _as_tridiagonal(diagonal, off_diagonal)
    shift = eigenvalue + 1e-12 * max(1.0, abs(eigenvalue))
    banded = np.zeros((3, d.size))
    banded[0, 1:] = e
    banded[1, :] = d - shift
    banded[2, :-1] = e

    vector = np.ones(d.size) / np.sqrt(d.size)
    for _ in range(iterations):
        vector = solve_banded((1, 1), banded, vector)
        vector /= np.linalg.norm(vector)
    return vector
