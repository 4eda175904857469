import logging
import math

from app.middleware.error import EXIT_OK
from app.schemas import RunConfig
from app.services.semiclassics import barrier_action, hopping_delta, periodic_dispersion
from app.cli.common import prepare, quadrature_tol, base_meta, emit

logger = logging.getLogger(__name__)

COLUMNS = ("k", "phase", "energy")


def register(subparsers, parents):
    return subparsers.add_parser(
        "dispersion", parents=parents,
        help="band E_n(k) of the infinite periodic lattice over the first Brillouin zone",
    )


def cmd_dispersion(config: RunConfig) -> int:
    model, ctx = prepare(config)
    tol = quadrature_tol(config)
    factors = barrier_action(model, ctx, config.n, tol)
    delta = hopping_delta(model, ctx, config.n, factors)

    # uniform grid over [-pi/a, pi/a)
    count = config.k_points
    step = 2.0 * math.pi / (ctx.a * count)
    rows = []
    for i in range(count):
        k = -math.pi / ctx.a + i * step
        rows.append({
            "k": k,
            "phase": k * ctx.a,
            "energy": periodic_dispersion(model, ctx, config.n, k, delta=delta),
        })

    meta = base_meta(config, model, ctx)
    meta.update({
        "n": config.n,
        "E_n0": ctx.E_n0(config.n),
        "Delta_n": delta,
        "k_points": count,
        "quadrature_tol": tol,
    })
    logger.info(f"dispersion: n={config.n}, {count} k-points, Delta={delta:.6e}")
    emit(config, meta, COLUMNS, rows)
    return EXIT_OK
