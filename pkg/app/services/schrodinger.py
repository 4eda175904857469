import logging
from typing import Optional, Tuple

import numpy as np

from app.config import (
    FD_MIN_GRID, FD_BOUNDARY_THRESHOLD, FD_PADDING_LENGTHS, VERIFY_DEFAULT_GRID
)
from app.middleware.error import ValidationFailure
from app.models import PotentialModel, SemiclassicalContext
from app.schemas import OracleSpectrum
from app.services.tridiagonal import sturm_eigenvalues, inverse_iteration

logger = logging.getLogger(__name__)

# bisection floor: resolve eigenvalues to a few ulps of their own size
_EIGEN_REL_TOL = 4.0 * np.finfo(float).eps
_EIGEN_ABS_FLOOR = 1e-300
# e-folds of decay between the window edge and the wall
_WALL_DECAY = np.log(100.0 / FD_BOUNDARY_THRESHOLD)


# Default hard-wall domain: the potential window plus padding lengths l on both sides
def fd_domain(model: PotentialModel, ctx: SemiclassicalContext, n: int = 0,
              padding: float = FD_PADDING_LENGTHS) -> Tuple[float, float]:
    if padding < 0:
        raise ValidationFailure("padding must be non-negative")
    lo, hi = model.window
    pad = padding * ctx.l

    # the wall must sit where the band-n state has decayed well below the
    # contamination threshold under the (held) edge potential
    energy = ctx.E_n0(n)
    edge = min(float(model.padded(lo)), float(model.padded(hi)))
    if edge > energy:
        kappa = np.sqrt(2.0 * ctx.m * (edge - energy)) / ctx.hbar
        pad = max(pad, _WALL_DECAY / kappa)

    # never closer than 3 l to the outer turning points of band n
    reach = ctx.l * (np.sqrt(2 * n + 1) + 3.0)
    left = min(lo - pad, ctx.x1 - reach)
    right = max(hi + pad, ctx.well_center(ctx.N - 1) + reach)
    return float(left), float(right)


def _hamiltonian(model: PotentialModel, ctx: SemiclassicalContext,
                 domain: Tuple[float, float], grid_points: int):
    x_min, x_max = domain
    h = (x_max - x_min) / (grid_points + 1)
    x = x_min + h * np.arange(1, grid_points + 1)
    kinetic = ctx.hbar ** 2 / (2.0 * ctx.m * h ** 2)
    diagonal = 2.0 * kinetic + model.padded(x)
    off_diagonal = np.full(grid_points - 1, -kinetic)
    return diagonal, off_diagonal, h


def _lowest(diagonal, off_diagonal, count: int) -> np.ndarray:
    return sturm_eigenvalues(diagonal, off_diagonal, np.arange(count),
                             tol=_EIGEN_ABS_FLOOR, rel_tol=_EIGEN_REL_TOL)


def _check_padding(model: PotentialModel, ctx: SemiclassicalContext,
                   domain: Tuple[float, float], n: int) -> None:
    try:
        minima = model.minima
    except ValidationFailure:
        return
    reach = ctx.l * np.sqrt(2 * n + 1) + 3.0 * ctx.l
    if domain[0] > minima[0] - reach or domain[1] < minima[-1] + reach:
        logger.warning(
            f"FD domain {domain} leaves less than 3 l beyond the outer turning points of band {n}"
        )


def fd_schrodinger_eigs(
    model: PotentialModel,
    ctx: SemiclassicalContext,
    domain: Optional[Tuple[float, float]] = None,
    grid_points: int = VERIFY_DEFAULT_GRID,
    count: int = 1,
    n: int = 0,
) -> OracleSpectrum:
    """
    Lowest eigenvalues of -hbar^2/(2m) d2/dx2 + V on a hard-wall domain,
    second-order finite differences on grid_points interior points.

    The solve is repeated at half the spacing; the per-level difference is
    the convergence estimate. The ground-state amplitude at the first and
    last interior points, relative to its maximum, flags a domain too
    small for the walls to be harmless.
    """
    if grid_points < FD_MIN_GRID:
        raise ValidationFailure(f"grid needs at least {FD_MIN_GRID} points, got {grid_points}")
    if count < 1 or count > grid_points // 4:
        raise ValidationFailure(f"count must be in 1..{grid_points // 4}, got {count}")

    domain = domain if domain is not None else fd_domain(model, ctx, n)
    if not domain[1] > domain[0]:
        raise ValidationFailure(f"empty FD domain {domain}")
    _check_padding(model, ctx, domain, n)

    diagonal, off_diagonal, h = _hamiltonian(model, ctx, domain, grid_points)
    coarse = _lowest(diagonal, off_diagonal, count)
    fine_diagonal, fine_off, _ = _hamiltonian(model, ctx, domain, 2 * grid_points + 1)
    fine = _lowest(fine_diagonal, fine_off, count)
    estimate = np.abs(coarse - fine)

    vector = inverse_iteration(diagonal, off_diagonal, coarse[0])
    peak = float(np.max(np.abs(vector)))
    amplitude = float(max(abs(vector[0]), abs(vector[-1])) / peak)
    contaminated = amplitude > FD_BOUNDARY_THRESHOLD
    if contaminated:
        logger.warning(f"ground state reaches the FD walls: edge amplitude {amplitude:.3e}")

    logger.info(f"FD spectrum: {count} levels on {grid_points} points, h = {h:.3e}, "
                f"max convergence estimate {float(estimate.max()):.3e}")

    return OracleSpectrum(
        eigenvalues=np.sort(coarse).tolist(),
        grid_points=grid_points,
        grid_spacing=h,
        domain=(float(domain[0]), float(domain[1])),
        convergence_estimate=estimate.tolist(),
        boundary_amplitude=amplitude,
        boundary_contaminated=contaminated,
    )
