import logging
from typing import Callable

from app.config import ROOT_TOL, ROOT_MAX_ITERATIONS
from app.middleware.error import BracketError, ValidationFailure

logger = logging.getLogger(__name__)


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = ROOT_TOL,
    max_iterations: int = ROOT_MAX_ITERATIONS,
) -> float:
    """
    Bracketed root of f on [lo, hi].

    Secant steps alternate with bisection steps, so the bracket at least
    halves every second iteration whatever the secant does.
    """
    if not tol > 0:
        raise ValidationFailure("root tolerance must be positive")
    if hi < lo:
        lo, hi = hi, lo

    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0.0:
        raise BracketError(
            f"no sign change on [{lo}, {hi}]",
            detail={"f_lo": float(flo), "f_hi": float(fhi)},
        )

    for iteration in range(max_iterations):
        if hi - lo <= tol:
            break

        x = hi - fhi * (hi - lo) / (fhi - flo)
        if iteration % 2 == 1 or not (lo < x < hi):
            x = 0.5 * (lo + hi)
            if not (lo < x < hi):
                break

        fx = f(x)
        if fx == 0.0:
            return float(x)
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    else:
        logger.warning(f"find_root stopped after {max_iterations} iterations, bracket width {hi - lo}")

    return float(lo if abs(flo) <= abs(fhi) else hi)
