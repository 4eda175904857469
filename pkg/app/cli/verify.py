import logging

from app.config import VERIFY_DEFAULT_GRID
from app.middleware.error import EXIT_OK, NumericalError
from app.schemas import RunConfig
from app.services.verify import verify_band
from app.cli.common import base_meta, emit, prepare

logger = logging.getLogger(__name__)

COLUMNS = ("index", "s", "fd_energy", "predicted", "residual", "convergence_estimate")


def register(subparsers, parents):
    return subparsers.add_parser(
        "verify", parents=parents,
        help="check a band against a finite-difference solution of the full window",
    )


def cmd_verify(config: RunConfig) -> int:
    model, ctx = prepare(config)
    n = config.n if config.n is not None else 0
    grid = config.grid or VERIFY_DEFAULT_GRID
    logger.info(f"verify: n={n}, N={ctx.N}, grid {grid}")

    report = verify_band(model, ctx, n, grid_points=grid, padding=config.padding)

    meta = base_meta(config, model, ctx)
    meta.update(report.model_dump(exclude={"levels"}))
    meta["grid"] = grid
    meta["passed"] = report.passed
    rows = [level.model_dump() for level in report.levels]
    emit(config, meta, COLUMNS, rows)

    if not report.passed:
        raise NumericalError(
            f"band {n} verification failed: {'; '.join(report.failures)}",
            estimate=report.fitted_delta,
            achieved=report.ratio,
            detail={"failures": report.failures},
        )
    return EXIT_OK
