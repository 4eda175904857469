import logging
from typing import Any, Dict, List, Sequence, Tuple

from app.config import APP_VERSION, QUADRATURE_TOL
from app.models import PotentialModel, SemiclassicalContext
from app.schemas import RunConfig
from app.services.export import render, write_output
from app.services.potentials import build_context, model_from_spec, potential_summary

logger = logging.getLogger(__name__)


def prepare(config: RunConfig) -> Tuple[PotentialModel, SemiclassicalContext]:
    """Potential model and semiclassical context for a run, in its unit convention"""
    hbar, mass = config.units()
    model = model_from_spec(config.potential)
    ctx = build_context(model, hbar=hbar, mass=mass)
    return model, ctx


def quadrature_tol(config: RunConfig) -> float:
    return config.tol if config.tol is not None else QUADRATURE_TOL


def base_meta(config: RunConfig, model: PotentialModel = None, ctx: SemiclassicalContext = None) -> Dict[str, Any]:
    hbar, mass = config.units() if config.potential is not None else (config.hbar, config.mass or 1.0)
    meta: Dict[str, Any] = {
        "command": config.command,
        "version": APP_VERSION,
        "convention": config.convention,
        "hbar": hbar,
        "mass": mass,
    }
    if model is not None:
        meta["potential"] = potential_summary(model, ctx)
    return meta


def emit(config: RunConfig, meta: Dict[str, Any], columns: Sequence[str], rows: List[Dict[str, Any]]) -> None:
    write_output(render(meta, columns, rows, config.format), config.out)
    logger.info(f"{config.command}: {len(rows)} rows written as {config.format}")
