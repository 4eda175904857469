import logging

from app.middleware.error import EXIT_OK, RegimeError, ValidationFailure
from app.schemas import RunConfig
from app.services.mathieu import mathieu_characteristics
from app.services.semiclassics import mathieu_action_elliptic, mathieu_band_width_closed
from app.cli.common import base_meta, emit, prepare

logger = logging.getLogger(__name__)

COLUMNS = ("n", "width_closed_form", "width_numeric", "ratio", "a_n", "b_n_plus_1",
           "action_elliptic", "action_asymptotic")


def register(subparsers, parents):
    return subparsers.add_parser(
        "mathieu", parents=parents,
        help="closed-form cosine band widths against Mathieu characteristic values",
    )


def cmd_mathieu(config: RunConfig) -> int:
    model, ctx = prepare(config)
    spec = config.potential
    hbar, mass = config.units()
    # energies in units of hbar^2/(2 m l_c^2); the Mathieu parameter is q in those units
    scale = hbar ** 2 / (2.0 * mass * spec.lc ** 2)
    q = spec.q / scale

    bands = sorted(set(config.bands))
    max_order = config.max_order if config.max_order is not None else max(bands)
    if max_order < max(bands):
        raise ValidationFailure(f"--max-order {max_order} below the highest requested band {max(bands)}")

    logger.info(f"mathieu: q={q:.6g}, bands {bands}")
    characteristics = mathieu_characteristics(q, max_order=max_order, basis_size=config.basis)

    rows = []
    for n in bands:
        closed = mathieu_band_width_closed(n, spec.q, scale)
        numeric = scale * characteristics.band_widths[n]
        try:
            action = mathieu_action_elliptic(n, spec.q, scale)
            elliptic, asymptotic = action.elliptic, action.asymptotic
        except RegimeError as exc:
            logger.warning(f"band {n}: {exc.message}")
            elliptic = asymptotic = None
        rows.append({
            "n": n,
            "width_closed_form": closed,
            "width_numeric": numeric,
            "ratio": closed / numeric,
            "a_n": characteristics.a_values[n],
            "b_n_plus_1": characteristics.b_values[n],
            "action_elliptic": elliptic,
            "action_asymptotic": asymptotic,
        })

    meta = base_meta(config, model, ctx)
    meta.update({
        "q": spec.q,
        "mathieu_q": q,
        "energy_scale": scale,
        "basis_size": characteristics.basis_size,
        "convergence_delta": characteristics.convergence_delta,
    })
    emit(config, meta, COLUMNS, rows)
    return EXIT_OK
