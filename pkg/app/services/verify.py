import logging
import math
from typing import Optional

import numpy as np

from app.config import (
    VERIFY_RATIO_TOL, VERIFY_CORRELATION_MIN, VERIFY_GAP_WIDTH_MIN,
    VERIFY_CONVERGENCE_TOL, VERIFY_DEFAULT_GRID, FD_PADDING_LENGTHS,
)
from app.models import PotentialModel, SemiclassicalContext
from app.schemas import LevelResidual, VerificationReport
from app.services.schrodinger import fd_domain, fd_schrodinger_eigs
from app.services.semiclassics import band_energies

logger = logging.getLogger(__name__)


def verify_band(
    model: PotentialModel,
    ctx: SemiclassicalContext,
    n: int,
    grid_points: int = VERIFY_DEFAULT_GRID,
    ratio_tol: float = VERIFY_RATIO_TOL,
    correlation_min: float = VERIFY_CORRELATION_MIN,
    gap_width_min: float = VERIFY_GAP_WIDTH_MIN,
    convergence_tol: float = VERIFY_CONVERGENCE_TOL,
    padding: float = FD_PADDING_LENGTHS,
) -> VerificationReport:
    """
    Compare band n of the N-level model with the FD spectrum of the padded
    window. The FD band is the N levels n*N .. n*N+N-1; its Delta is fitted
    by least squares against the sorted pattern (-1)^(n+1) cos(s pi/(N+1)).
    """
    N = ctx.N
    # a single well has no tunneling partner; its level is E_n0
    band = band_energies(model, ctx, n, delta=None if N > 1 else 0.0)
    domain = fd_domain(model, ctx, n, padding)
    spectrum = fd_schrodinger_eigs(model, ctx, domain, grid_points, count=N * (n + 1) + 1, n=n)

    levels = np.asarray(spectrum.eigenvalues)
    estimates = np.asarray(spectrum.convergence_estimate)
    fd_band = levels[n * N:(n + 1) * N]
    band_estimates = estimates[n * N:(n + 1) * N]

    sign = 1.0 if n % 2 else -1.0
    pattern = sign * np.cos(np.array(band.bloch_phases))
    order = np.argsort(pattern, kind="stable")
    predicted_sorted = np.asarray(band.energies)[order]
    s_sorted = order + 1

    residuals = [
        LevelResidual(
            index=n * N + i,
            s=int(s_sorted[i]),
            fd_energy=float(fd_band[i]),
            predicted=float(predicted_sorted[i]),
            residual=float(fd_band[i] - predicted_sorted[i]),
            convergence_estimate=float(band_estimates[i]),
        )
        for i in range(N)
    ]

    failures = []
    fitted: Optional[float] = None
    ratio: Optional[float] = None
    correlation: Optional[float] = None
    gap_over_width: Optional[float] = None

    convergence = float(band_estimates.max())
    if convergence > convergence_tol * ctx.hbar_omega:
        failures.append(f"FD not converged: estimate {convergence:.3e} above "
                        f"{convergence_tol:g} hbar*omega")
    if spectrum.boundary_contaminated:
        failures.append(f"boundary contamination: edge amplitude {spectrum.boundary_amplitude:.3e}")

    if N == 1:
        offset = abs(float(fd_band[0]) - band.E_n0)
        if offset > ratio_tol * ctx.hbar_omega:
            failures.append(f"single-well level off by {offset:.3e} from E_n0")
    else:
        pattern_sorted = pattern[order]
        centered = fd_band - fd_band.mean()
        fitted = float(np.dot(centered, pattern_sorted - pattern_sorted.mean())
                       / np.dot(pattern_sorted - pattern_sorted.mean(), pattern_sorted - pattern_sorted.mean()))
        ratio = fitted / band.Delta_n
        correlation = float(np.corrcoef(fd_band, pattern_sorted)[0, 1])

        width = float(fd_band[-1] - fd_band[0])
        neighbours = []
        if n > 0:
            neighbours.append(fd_band[0] - levels[n * N - 1])
        neighbours.append(levels[(n + 1) * N] - fd_band[-1])
        gap_over_width = float(min(neighbours) / width) if width > 0 else math.inf

        if gap_over_width <= gap_width_min:
            failures.append(f"band not isolated: gap/width = {gap_over_width:.3g}")
        if not correlation > correlation_min:
            failures.append(f"level pattern correlation {correlation:.6f} below {correlation_min}")
        if abs(ratio - 1.0) > ratio_tol:
            failures.append(f"fitted/predicted Delta = {ratio:.4f} outside 1 +/- {ratio_tol}")

    for failure in failures:
        logger.warning(f"verify n={n}: {failure}")
    logger.info(f"verify n={n}, N={N}: ratio {ratio}, correlation {correlation}, "
                f"{'passed' if not failures else 'failed'}")

    return VerificationReport(
        n=n, N=N, levels=residuals, predicted_delta=band.Delta_n if N > 1 else None, fitted_delta=fitted,
        ratio=ratio, correlation=correlation, gap_over_width=gap_over_width,
        boundary_amplitude=spectrum.boundary_amplitude, failures=failures,
    )
