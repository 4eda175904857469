import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.config import MATHIEU_TOL, MATHIEU_MAX_DOUBLINGS
from app.middleware.error import TruncationError, ValidationFailure
from app.schemas import MathieuCharacteristics
from app.services.tridiagonal import sturm_eigenvalues

logger = logging.getLogger(__name__)

_EIGEN_REL_TOL = 4.0 * np.finfo(float).eps
_EIGEN_ABS_FLOOR = 1e-300

CONVENTIONS = ("standard", "shifted")


def minimum_basis_size(q: float) -> int:
    return int(math.ceil(3.0 * math.sqrt(abs(q)) + 30))


def _blocks(q: float, size: int) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """
    Symmetric tridiagonal Fourier blocks of y'' + (a - 2q cos 2v) y = 0:
    even/pi-periodic (a_0, a_2, ...), even/2pi (a_1, a_3, ...),
    odd/2pi (b_1, b_3, ...), odd/pi (b_2, b_4, ...).
    """
    r = np.arange(size, dtype=float)
    off = np.full(size - 1, q)

    even_pi = (2.0 * r) ** 2
    even_pi_off = off.copy()
    even_pi_off[0] = math.sqrt(2.0) * q

    odd_harmonics = (2.0 * r + 1.0) ** 2
    even_2pi = odd_harmonics.copy()
    even_2pi[0] += q
    odd_2pi = odd_harmonics.copy()
    odd_2pi[0] -= q

    odd_pi = (2.0 * r + 2.0) ** 2
    return {
        "even_pi": (even_pi, even_pi_off),
        "even_2pi": (even_2pi, off),
        "odd_2pi": (odd_2pi, off),
        "odd_pi": (odd_pi, off),
    }


def _lowest(block: Tuple[np.ndarray, np.ndarray], count: int) -> np.ndarray:
    if count == 0:
        return np.empty(0)
    return sturm_eigenvalues(block[0], block[1], np.arange(count),
                             tol=_EIGEN_ABS_FLOOR, rel_tol=_EIGEN_REL_TOL)


def _characteristics(q: float, max_order: int, size: int) -> Tuple[np.ndarray, np.ndarray]:
    blocks = _blocks(q, size)
    a = np.empty(max_order + 1)
    b = np.empty(max_order + 1)
    a[0::2] = _lowest(blocks["even_pi"], max_order // 2 + 1)
    a[1::2] = _lowest(blocks["even_2pi"], (max_order + 1) // 2)
    # b_r stored at index r - 1
    b[0::2] = _lowest(blocks["odd_2pi"], (max_order + 2) // 2)
    b[1::2] = _lowest(blocks["odd_pi"], (max_order + 1) // 2)
    return a, b


def _band_widths(a: np.ndarray, b: np.ndarray, bands: int) -> List[float]:
    # with one order beyond the last band solved, the lowest 2*bands sorted
    # values are the band edges a_r, b_(r+1) under either sign of q
    levels = np.sort(np.concatenate([a, b]))[:2 * bands]
    return (levels[1::2] - levels[0::2]).tolist()


def mathieu_characteristics(
    q: float,
    max_order: int = 2,
    basis_size: Optional[int] = None,
    convention: str = "standard",
) -> MathieuCharacteristics:
    """
    Characteristic values a_0..a_R and b_1..b_{R+1} of the Mathieu equation
    by truncated Fourier expansion. The basis doubles until the values
    move by less than MATHIEU_TOL; band r is the gap-free interval between
    the r-th consecutive pair of the sorted values.
    """
    if not q > 0:
        raise ValidationFailure(f"mathieu needs q > 0, got {q}")
    if max_order < 0:
        raise ValidationFailure("max_order must be non-negative")
    if convention not in CONVENTIONS:
        raise ValidationFailure(f"unknown mathieu convention '{convention}'")

    floor = minimum_basis_size(q)
    if basis_size is not None and basis_size < floor:
        raise ValidationFailure(f"basis_size must be at least 3*sqrt(q)+30 = {floor}")
    # one order beyond max_order: the shifted form swaps a and b of odd order
    order = max_order + 1
    size = max(basis_size or floor, order + 2)

    signed_q = q if convention == "standard" else -q
    a, b = _characteristics(signed_q, order, size)
    change = math.inf
    for _ in range(MATHIEU_MAX_DOUBLINGS):
        size *= 2
        a_next, b_next = _characteristics(signed_q, order, size)
        change = float(max(np.max(np.abs(a_next - a)), np.max(np.abs(b_next - b))))
        a, b = a_next, b_next
        if change < MATHIEU_TOL:
            break
    else:
        raise TruncationError(
            f"mathieu characteristic values still moving by {change:.3e} at basis size {size}",
            estimate=a[:order].tolist(),
            achieved=change,
        )

    logger.debug(f"mathieu q={q}: basis {size}, last change {change:.3e}")
    return MathieuCharacteristics(
        q=q,
        a_values=a[:order].tolist(),
        b_values=b[:order].tolist(),
        basis_size=size,
        band_widths=_band_widths(a, b, order),
        convergence_delta=change,
        convention=convention,
    )
