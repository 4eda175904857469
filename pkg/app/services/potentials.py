import csv
import logging
import math
from pathlib import Path
from typing import Iterable, Optional, Tuple

import numpy as np

from app.config import PERIODICITY_SAMPLES, DEEP_BARRIER_MIN_RATIO, DELTA_SHIFT_MAX
from app.middleware.error import AppError, InputOutputError, ValidationFailure
from app.models import (
    PotentialModel, CosinePotential, ParabolicChainPotential, TabulatedPotential,
    SemiclassicalContext,
)
from app.schemas import (
    CosineSpec, ParabolicChainSpec, TabulatedSpec, DiagnosticsReport
)

logger = logging.getLogger(__name__)


# Build the potential model described by a validated spec
def model_from_spec(spec) -> PotentialModel:
    if isinstance(spec, CosineSpec):
        return CosinePotential(q=spec.q, lc=spec.lc, n_wells=spec.wells, offset=spec.offset)
    if isinstance(spec, ParabolicChainSpec):
        return ParabolicChainPotential(
            omega=spec.omega, a=spec.a, x1=spec.x1, v0=spec.v0,
            n_wells=spec.wells, mass=spec.mass,
        )
    if isinstance(spec, TabulatedSpec):
        return TabulatedPotential(x=spec.x, v=spec.v, order=spec.order)
    raise ValidationFailure(f"unknown potential family: {type(spec).__name__}")


def evaluate(model: PotentialModel, x):
    """V(x) on the finite window; DomainError outside it"""
    return model.evaluate(x)


def resolve_mass(model: PotentialModel, mass: Optional[float] = None) -> float:
    """The particle mass for a model; a parabolic chain carries its own in m omega^2"""
    if mass is not None and not mass > 0:
        raise ValidationFailure(f"mass must be positive, got {mass}")
    bound = model.bound_mass
    if bound is None:
        return 1.0 if mass is None else mass
    if mass is not None and not math.isclose(mass, bound, rel_tol=1e-12):
        raise ValidationFailure(
            f"mass {mass} conflicts with the {model.family} potential's mass {bound}",
            detail={"mass": mass, "potential_mass": bound},
        )
    return bound


def quadratic_params(model: PotentialModel, mass: Optional[float] = None) -> Tuple[float, float]:
    """(V0, omega) of the harmonic approximation at the first minimum"""
    mass = resolve_mass(model, mass)
    curvature = model.curvature()
    if not curvature > 0:
        raise ValidationFailure(
            f"invalid well: V'' = {curvature} at x1 = {model.first_minimum}",
            detail={"curvature": curvature},
        )
    return model.minimum_value, model.harmonic_frequency(mass)


def build_context(model: PotentialModel, hbar: float = 1.0, mass: Optional[float] = None) -> SemiclassicalContext:
    if not hbar > 0:
        raise ValidationFailure(f"hbar must be positive, got {hbar}")
    mass = resolve_mass(model, mass)
    V0, omega = quadratic_params(model, mass)
    ctx = SemiclassicalContext(
        hbar=hbar, m=mass, omega=omega, a=model.period,
        x1=model.first_minimum, N=model.wells, V0=V0,
    )
    logger.debug(f"context for {model.family}: omega={omega:.6g}, a={ctx.a:.6g}, "
                 f"l={ctx.l:.6g}, N={ctx.N}")
    return ctx


def periodicity_violation(model: PotentialModel) -> float:
    """max |V(x + a) - V(x)| over the window, relative to max(1, |V|)"""
    if model.wells < 2:
        return 0.0
    a = model.period
    lo, hi = model.window
    if hi - a <= lo:
        return 0.0
    x = np.linspace(lo, hi - a, PERIODICITY_SAMPLES)
    v = model.evaluate(x)
    shifted = model.evaluate(x + a)
    scale = max(1.0, float(np.max(np.abs(v))))
    return float(np.max(np.abs(shifted - v)) / scale)


def validate_context(model: PotentialModel, ctx: SemiclassicalContext,
                     bands: Iterable[int] = (0,)) -> DiagnosticsReport:
    """
    Regime diagnostics: periodicity of V over the window, the deep-barrier
    ratio a/l and the size of the diagonal shift delta_n per band.
    Soft violations are returned as flags, never raised.
    """
    from app.services.semiclassics import hopping_delta

    flags = []
    violation = periodicity_violation(model)
    if violation > 1e-9:
        flags.append(f"potential not periodic on the window: max violation {violation:.3e}")

    ratio = ctx.a_over_l
    if ratio < DEEP_BARRIER_MIN_RATIO:
        flags.append(f"a/l = {ratio:.3g} below {DEEP_BARRIER_MIN_RATIO:g}: barrier not deep")

    shifts = {}
    for n in bands:
        try:
            shift = hopping_delta(model, ctx, n) / ctx.hbar_omega
        except AppError as exc:
            flags.append(f"band {n}: {exc.message}")
            continue
        shifts[n] = shift
        if shift > DELTA_SHIFT_MAX:
            flags.append(f"band {n}: delta_n = {shift:.3g} hbar*omega exceeds {DELTA_SHIFT_MAX:g}")

    for flag in flags:
        logger.warning(flag)
    return DiagnosticsReport(
        periodicity_violation=violation, a_over_l=ratio, delta_shift=shifts, flags=flags
    )


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def load_table(path: str, order: int = 3) -> TabulatedSpec:
    """Read a two-column CSV (x, V) into a tabulated spec; header line and '#' comments allowed"""
    xs, vs = [], []
    try:
        with open(Path(path), newline="") as handle:
            for row_number, row in enumerate(csv.reader(handle), start=1):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                if len(row) < 2:
                    raise ValidationFailure(f"{path}:{row_number}: expected two columns")
                if not (_is_number(row[0]) and _is_number(row[1])):
                    if xs:
                        raise ValidationFailure(f"{path}:{row_number}: non-numeric sample")
                    continue
                xs.append(float(row[0]))
                vs.append(float(row[1]))
    except OSError as exc:
        raise InputOutputError(f"cannot read potential table {path}: {exc}")

    logger.info(f"Loaded {len(xs)} potential samples from {path}")
    return TabulatedSpec(x=xs, v=vs, order=order)


def potential_summary(model: PotentialModel, ctx: Optional[SemiclassicalContext] = None) -> dict:
    """Metadata describing a potential, for command output"""
    summary = {
        "family": model.family,
        "wells": model.wells,
        "period": model.period,
        "x1": model.first_minimum,
        "window": list(model.window),
    }
    if isinstance(model, CosinePotential):
        summary.update(q=model.q, lc=model.lc)
    if ctx is not None:
        summary.update(V0=ctx.V0, omega=ctx.omega, l=ctx.l, a_over_l=ctx.a_over_l,
                       hbar=ctx.hbar, mass=ctx.m)
    return summary
