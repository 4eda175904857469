import logging

from app.middleware.error import EXIT_OK
from app.schemas import RunConfig
from app.services.potentials import validate_context
from app.services.semiclassics import band_energies, barrier_action, hopping_delta
from app.cli.common import prepare, quadrature_tol, base_meta, emit

logger = logging.getLogger(__name__)

COLUMNS = ("s", "bloch_phase", "energy", "delta_n_shift")


def register(subparsers, parents):
    return subparsers.add_parser(
        "bands", parents=parents,
        help="N-level energies E_n(s) of one band of a finite N-well potential",
    )


def cmd_bands(config: RunConfig) -> int:
    logger.info(f"bands: n={config.n}")
    model, ctx = prepare(config)
    tol = quadrature_tol(config)

    factors = barrier_action(model, ctx, config.n, tol)
    delta = hopping_delta(model, ctx, config.n, factors)
    band = band_energies(model, ctx, config.n, delta=delta)
    diagnostics = validate_context(model, ctx, bands=[config.n])

    rows = [
        {"s": s, "bloch_phase": phase, "energy": energy, "delta_n_shift": shift}
        for s, (phase, energy, shift) in enumerate(
            zip(band.bloch_phases, band.energies, band.delta_n_shift), start=1)
    ]
    meta = base_meta(config, model, ctx)
    meta.update({
        "n": band.n,
        "N": band.N,
        "E_n0": band.E_n0,
        "Delta_n": band.Delta_n,
        "hbar_omega": band.hbar_omega,
        "band_width": band.width,
        "action": factors.action_total,
        "quadrature_tol": tol,
        "a_over_l": diagnostics.a_over_l,
        "periodicity_violation": diagnostics.periodicity_violation,
        "diagnostics": diagnostics.flags,
    })
    emit(config, meta, COLUMNS, rows)
    return EXIT_OK
