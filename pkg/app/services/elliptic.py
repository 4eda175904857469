import math

from app.config import ELLIPTIC_TOL
from app.middleware.error import DomainError

_MAX_AGM_STEPS = 64


def elliptic_K(k: float, tol: float = ELLIPTIC_TOL) -> float:
    """Complete elliptic integral of the first kind, modulus k (not parameter k^2)"""
    if not 0.0 <= k < 1.0:
        raise DomainError(f"elliptic_K needs 0 <= k < 1, got {k}")
    a, b = 1.0, math.sqrt(1.0 - k * k)
    for _ in range(_MAX_AGM_STEPS):
        if abs(a - b) <= tol * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)


def elliptic_E(k: float, tol: float = ELLIPTIC_TOL) -> float:
    """Complete elliptic integral of the second kind, modulus k"""
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"elliptic_E needs 0 <= k <= 1, got {k}")
    if k == 1.0:
        return 1.0

    a, b = 1.0, math.sqrt(1.0 - k * k)
    weight = 0.5
    total = weight * k * k
    for _ in range(_MAX_AGM_STEPS):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        weight *= 2.0
        total += weight * c * c
        if abs(c) <= tol * a:
            break
    return math.pi / (2.0 * a) * (1.0 - total)
