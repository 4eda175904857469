import logging
import sys
from typing import Callable

from app.config import QUADRATURE_TOL, QUADRATURE_MAX_DEPTH
from app.middleware.error import QuadratureError, ValidationFailure

logger = logging.getLogger(__name__)

# local targets never drop below this many ulps of the integral
FLOOR_ULPS = 50.0


class _Refinement:
    """Bookkeeping shared by one adaptive Simpson run"""
    def __init__(self, max_depth: int, floor: float):
        self.max_depth = max_depth
        self.floor = floor
        self.unresolved = 0.0
        self.capped = 0
        self.evaluations = 3


def _simpson(a: float, fa: float, b: float, fb: float, fm: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _refine(f, a, fa, m, fm, b, fb, whole, eps, depth, state: _Refinement) -> float:
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    state.evaluations += 2
    left = _simpson(a, fa, m, fm, flm)
    right = _simpson(m, fm, b, fb, frm)
    delta = left + right - whole
    if abs(delta) <= 15.0 * max(eps, state.floor):
        return left + right + delta / 15.0

    # interval no longer splittable in floating point, or depth cap hit:
    # keep the extrapolated value and book its error against the global target
    if depth >= state.max_depth or not (a < lm < m < rm < b):
        state.capped += 1
        state.unresolved += abs(delta) / 15.0
        return left + right + delta / 15.0

    return (_refine(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1, state)
            + _refine(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1, state))


def _run(f, a, fa, m, fm, b, fb, whole, target, scale, max_depth):
    state = _Refinement(max_depth, FLOOR_ULPS * sys.float_info.epsilon * scale)
    return _refine(f, a, fa, m, fm, b, fb, whole, target, 0, state), state


def adaptive_quadrature(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = QUADRATURE_TOL,
    max_depth: int = QUADRATURE_MAX_DEPTH,
) -> float:
    """
    Adaptive Simpson quadrature of f over [a, b].

    The error target is tol * max(1, |integral|), halved at every bisection
    but floored at a few ulps of the integral, so square-root zeros at the
    endpoints (turning points) stop refining once float resolution is
    reached. Intervals left unresolved at the depth cap or at float
    resolution add their error estimate to a running total; QuadratureError
    (carrying the best estimate) is raised only when that total exceeds the
    target.
    """
    if not tol > 0:
        raise ValidationFailure("quadrature tolerance must be positive")
    if b < a:
        raise ValidationFailure(f"quadrature limits out of order: [{a}, {b}]")
    if a == b:
        return 0.0

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = _simpson(a, fa, b, fb, fm)

    scale = max(1.0, abs(whole))
    target = tol * scale
    result, state = _run(f, a, fa, m, fm, b, fb, whole, target, scale, max_depth)

    # the coarse estimate can overstate the integral; tighten once if it did
    if scale > max(1.0, abs(result)) * 1.5:
        scale = max(1.0, abs(result))
        target = tol * scale
        result, state = _run(f, a, fa, m, fm, b, fb, whole, target, scale, max_depth)

    logger.debug(f"adaptive_quadrature on [{a}, {b}]: {state.evaluations} evaluations, "
                 f"{state.capped} unresolved intervals")

    if state.unresolved > target:
        raise QuadratureError(
            f"adaptive quadrature did not converge on [{a}, {b}] within depth {max_depth}",
            estimate=float(result),
            achieved=float(state.unresolved),
        )
    return float(result)
