import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from app.config import MAX_BAND_INDEX, QUADRATURE_TOL, TURNING_POINT_SCAN
from app.middleware.error import DomainError, RegimeError, ValidationFailure
from app.models import PotentialModel, SemiclassicalContext
from app.schemas import HoppingFactors, BandResult, EllipticAction
from app.services.elliptic import elliptic_E, elliptic_K
from app.services.quadrature import adaptive_quadrature
from app.services.roots import find_root

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi


def _check_band_index(n: int) -> None:
    if n < 0:
        raise ValidationFailure(f"band index must be non-negative, got {n}")
    if n > MAX_BAND_INDEX:
        raise ValidationFailure(f"band index {n} above the supported maximum {MAX_BAND_INDEX}")


def log_g_factor(n: int) -> float:
    _check_band_index(n)
    half = n + 0.5
    return 0.5 * math.log(2.0 * math.pi) - math.lgamma(n + 1) + half * math.log(half) - half


def g_factor(n: int) -> float:
    """g_n = sqrt(2 pi)/n! (n + 1/2)^(n + 1/2) e^-(n + 1/2); tends to 1 from above"""
    return math.exp(log_g_factor(n))


# Turning points
def _first_crossing(f, start: float, stop: float) -> float:
    grid = np.linspace(start, stop, TURNING_POINT_SCAN)
    above = np.flatnonzero(f(grid) > 0)
    if above.size == 0 or above[0] == 0:
        raise RegimeError(f"no classically forbidden region between {start} and {stop}")
    k = int(above[0])
    lo, hi = sorted((float(grid[k - 1]), float(grid[k])))
    return find_root(lambda y: float(f(y)), lo, hi)


def turning_points(model: PotentialModel, ctx: SemiclassicalContext, n: int) -> Tuple[float, float]:
    """
    Inner turning points of the first barrier at E_n0, found from each
    well center toward the barrier top by scan and bracketed root.
    """
    _check_band_index(n)
    energy = ctx.E_n0(n)
    x_top, v_top = model.barrier_top()
    if v_top <= energy:
        raise RegimeError(
            f"level n={n} at E={energy:.6g} is not below the barrier top {v_top:.6g}",
            detail={"n": n, "energy": energy, "barrier_top": v_top},
        )

    def excess(x):
        return model.periodic(x) - energy

    x_left = _first_crossing(excess, ctx.x1, x_top)
    x_right = _first_crossing(excess, ctx.x1 + ctx.a, x_top)
    return x_left, x_right


def _signed_action(integrand, start: float, stop: float, tol: float) -> float:
    if stop >= start:
        return adaptive_quadrature(integrand, start, stop, tol)
    return -adaptive_quadrature(integrand, stop, start, tol)


def barrier_action(model: PotentialModel, ctx: SemiclassicalContext, n: int,
                   tol: float = QUADRATURE_TOL) -> HoppingFactors:
    """
    WKB action through the first barrier, split at the cell midpoint
    x1 + a/2 into the left and right parts entering eps_L, eps_R, N_L, N_R.
    """
    x_left, x_right = turning_points(model, ctx, n)
    energy = ctx.E_n0(n)
    scale = math.sqrt(2.0 * ctx.m) / ctx.hbar

    def momentum(y: float) -> float:
        return scale * math.sqrt(max(model.periodic(y) - energy, 0.0))

    midpoint = ctx.x1 + 0.5 * ctx.a
    action_left = _signed_action(momentum, x_left, midpoint, tol)
    action_right = _signed_action(momentum, midpoint, x_right, tol)

    log_g = log_g_factor(n)
    log_eps = 0.5 * (math.lgamma(n + 1) + log_g - 0.5 * math.log(math.pi))
    log_norm = 0.5 * (log_g - math.log(2.0 * math.pi)) - math.log(ctx.l)
    sign = -1.0 if n % 2 else 1.0

    logger.debug(f"barrier action n={n}: left {action_left:.12g}, right {action_right:.12g}")
    return HoppingFactors(
        n=n,
        x_left=x_left,
        x_right=x_right,
        action_left=action_left,
        action_right=action_right,
        action_total=action_left + action_right,
        eps_L=math.exp(log_eps - action_left),
        eps_R=math.exp(log_eps - action_right),
        N_L=sign * math.exp(log_norm - action_right),
        N_R=math.exp(log_norm - action_left),
    )


def hopping_delta(model: PotentialModel, ctx: SemiclassicalContext, n: int,
                  factors: Optional[HoppingFactors] = None) -> float:
    """Delta_n = g_n (hbar omega / pi) exp(-action)"""
    factors = factors or barrier_action(model, ctx, n)
    return math.exp(log_g_factor(n) + math.log(ctx.hbar_omega / math.pi) - factors.action_total)


def hopping_delta_via_overlap(model: PotentialModel, ctx: SemiclassicalContext, n: int,
                              factors: Optional[HoppingFactors] = None) -> float:
    """Delta_n from the wavefunction-matching constants: (-1)^n 2 hbar^2 N_L N_R / m"""
    factors = factors or barrier_action(model, ctx, n)
    sign = -1.0 if n % 2 else 1.0
    return sign * 2.0 * ctx.hbar ** 2 * factors.N_L * factors.N_R / ctx.m


# Bands
def bloch_phases(N: int) -> List[float]:
    if N < 1:
        raise ValidationFailure(f"N must be at least 1, got {N}")
    return [math.pi * (s / (N + 1)) for s in range(1, N + 1)]


def phase_cosine(phase: float) -> float:
    # the self-paired level s = (N+1)/2 sits exactly at E_n0
    return 0.0 if phase == HALF_PI else math.cos(phase)


def band_energy_at_phase(E_n0: float, delta: float, n: int, phase: float) -> float:
    """E_n0 + (-1)^(n+1) Delta cos(phase); the formula behind band levels and the dispersion"""
    sign = 1.0 if n % 2 else -1.0
    return E_n0 + sign * delta * phase_cosine(phase)


def band_energies(model: PotentialModel, ctx: SemiclassicalContext, n: int,
                  N: Optional[int] = None, delta: Optional[float] = None) -> BandResult:
    N = ctx.N if N is None else N
    if delta is None:
        delta = hopping_delta(model, ctx, n)
    E_n0 = ctx.E_n0(n)
    phases = bloch_phases(N)
    energies = [band_energy_at_phase(E_n0, delta, n, phase) for phase in phases]
    sign = 1.0 if n % 2 else -1.0
    shifts = [sign * delta / ctx.hbar_omega * phase_cosine(phase)
              for phase in phases]
    coefficients = [[math.sin((j + 1) * phase) for phase in phases] for j in range(N)]

    logger.info(f"band n={n}, N={N}: E_n0={E_n0:.12g}, Delta={delta:.6e}")
    return BandResult(
        n=n, N=N, E_n0=E_n0, Delta_n=delta, hbar_omega=ctx.hbar_omega,
        delta_n_shift=shifts, energies=energies, bloch_phases=phases,
        coefficients=coefficients,
    )


def band_width(model: PotentialModel, ctx: SemiclassicalContext, n: int, N: int) -> float:
    return 2.0 * hopping_delta(model, ctx, n) * math.cos(math.pi / (N + 1))


def two_level_splitting(model: PotentialModel, ctx: SemiclassicalContext, n: int) -> Tuple[float, float]:
    """Double-well pair E_n0 -/+ Delta_n/2"""
    delta = hopping_delta(model, ctx, n)
    E_n0 = ctx.E_n0(n)
    return E_n0 - 0.5 * delta, E_n0 + 0.5 * delta


def periodic_dispersion(model: PotentialModel, ctx: SemiclassicalContext, n: int, k: float,
                        delta: Optional[float] = None) -> float:
    """Infinite-lattice band E_n(k) for k in the first Brillouin zone [-pi/a, pi/a)"""
    zone = math.pi / ctx.a
    if not -zone <= k < zone:
        raise DomainError(f"k = {k} outside the first Brillouin zone [{-zone}, {zone})")
    if delta is None:
        delta = hopping_delta(model, ctx, n)
    return band_energy_at_phase(ctx.E_n0(n), delta, n, k * ctx.a)


# Wavefunctions of the N-level model
def localized_state(ctx: SemiclassicalContext, n: int, j: int, x) -> np.ndarray:
    """Normalized oscillator state of order n centered on well j"""
    _check_band_index(n)
    xi = (np.asarray(x, dtype=float) - ctx.well_center(j)) / ctx.l
    previous = np.zeros_like(xi)
    current = np.pi ** -0.25 * np.exp(-0.5 * xi ** 2)
    for k in range(n):
        previous, current = current, (math.sqrt(2.0 / (k + 1)) * xi * current
                                      - math.sqrt(k / (k + 1)) * previous)
    return current / math.sqrt(ctx.l)


def band_wavefunction(ctx: SemiclassicalContext, n: int, N: int, s: int, x) -> np.ndarray:
    if not 1 <= s <= N:
        raise ValidationFailure(f"level s must be in 1..{N}, got {s}")
    phase = math.pi * (s / (N + 1))
    total = sum(localized_state(ctx, n, j, x) * math.sin((j + 1) * phase) for j in range(N))
    return math.sqrt(2.0 / (N + 1)) * total


def intraband_density_gap(ctx: SemiclassicalContext, n: int, N: int, s: int, x) -> float:
    """max | |psi_(N+1-s)|^2 - |psi_s|^2 | on the sample points x"""
    mirror = band_wavefunction(ctx, n, N, N + 1 - s, x)
    direct = band_wavefunction(ctx, n, N, s, x)
    return float(np.max(np.abs(mirror ** 2 - direct ** 2)))


# Cosine (Mathieu) specialization
def mathieu_band_width_closed(n: int, q: float, energy_scale: float = 1.0) -> float:
    """Leading-order width 2 Delta_n of band n for V = 2q cos(2x/l_c), in units of energy_scale"""
    _check_band_index(n)
    if not q > 0 or not energy_scale > 0:
        raise ValidationFailure("q and energy_scale must be positive")
    ratio = q / energy_scale
    log_width = ((4 * n + 5) * math.log(2.0) - math.lgamma(n + 1) + 0.5 * math.log(2.0 / math.pi)
                 + (0.5 * n + 0.75) * math.log(ratio) - 4.0 * math.sqrt(ratio))
    return energy_scale * math.exp(log_width)


def mathieu_action_elliptic(n: int, q: float, scale: float = 1.0) -> EllipticAction:
    """
    Barrier action of the cosine potential between the quadratic turning
    points, in complete elliptic integrals of modulus sin(phi_M), next to
    its large-q form.
    """
    _check_band_index(n)
    if not q > 0 or not scale > 0:
        raise ValidationFailure("q and scale must be positive")
    ratio = q / scale
    half = n + 0.5
    theta = math.sqrt(half / math.sqrt(ratio))
    phi = HALF_PI - theta
    if phi < 0:
        raise RegimeError(f"phi_M = {phi:.6g} < 0: level n={n} too high for q={q}")

    modulus = math.sin(phi)
    cos2 = math.cos(phi) ** 2
    elliptic = 4.0 * math.sqrt(ratio) * (elliptic_E(modulus) - cos2 * elliptic_K(modulus)) if phi > 0 else 0.0
    asymptotic = 4.0 * math.sqrt(ratio) - half - half * math.log(16.0 * math.sqrt(ratio) / half)
    offset = math.asin(theta) - theta if theta <= 1.0 else None

    return EllipticAction(
        n=n, q_ratio=ratio, phi_m=phi, elliptic=elliptic,
        asymptotic=asymptotic, turning_point_offset=offset,
    )
