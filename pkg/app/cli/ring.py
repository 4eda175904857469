import logging

from app.middleware.error import EXIT_OK
from app.schemas import ChainHamiltonian, RingHamiltonian, RunConfig
from app.services.lattice import (
    chain_spectrum, circulant_nearest_neighbor, circulant_spectrum, distinct_levels,
)
from app.services.semiclassics import barrier_action, hopping_delta
from app.cli.common import base_meta, emit, prepare, quadrature_tol

logger = logging.getLogger(__name__)

COLUMNS = ("s", "energy", "partner", "degenerate")


def register(subparsers, parents):
    return subparsers.add_parser(
        "ring", parents=parents,
        help="circulant spectrum of N wells on a ring, next to the open chain",
    )


def _couplings(config: RunConfig):
    """(h0, h1, meta) for the nearest-neighbour ring"""
    if not config.chain_heuristic:
        return config.h0, config.h1, {"couplings": "given"}

    model, ctx = prepare(config)
    factors = barrier_action(model, ctx, config.n, quadrature_tol(config))
    delta = hopping_delta(model, ctx, config.n, factors)
    sign = 1.0 if config.n % 2 else -1.0
    meta = {
        "couplings": "heuristic",
        "heuristic_note": "h1 taken from the open-chain hopping; not derived for a ring geometry",
        "n": config.n,
        "Delta_n": delta,
    }
    return ctx.E_n0(config.n), sign * delta / 2.0, meta


def cmd_ring(config: RunConfig) -> int:
    meta = base_meta(config)
    if config.h is not None:
        ring = RingHamiltonian(h=config.h)
        levels = circulant_spectrum(ring)
        N = ring.N
        meta["couplings"] = "given"
        meta["h"] = list(ring.h)
        chain = ChainHamiltonian(N=N, diagonal=ring.h[0], off_diagonal=ring.h[1] if N > 1 else 0.0)
    else:
        N = config.wells
        h0, h1, extra = _couplings(config)
        meta.update(extra)
        meta.update({"h0": h0, "h1": h1})
        levels = circulant_nearest_neighbor(h0, h1, N)
        chain = ChainHamiltonian(N=N, diagonal=h0, off_diagonal=h1)

    rows = [
        {"s": level.label, "energy": level.energy, "partner": level.partner,
         "degenerate": level.degenerate}
        for level in levels
    ]
    energies = [level.energy for level in levels]
    chain_levels = chain_spectrum(chain)
    meta.update({
        "N": N,
        "ring_distinct_levels": distinct_levels(energies),
        "chain_distinct_levels": distinct_levels(chain_levels),
        "non_degenerate_labels": [level.label for level in levels if not level.degenerate],
    })
    logger.info(f"ring N={N}: {meta['ring_distinct_levels']} distinct ring levels, "
                f"{meta['chain_distinct_levels']} chain levels")
    emit(config, meta, COLUMNS, rows)
    return EXIT_OK
