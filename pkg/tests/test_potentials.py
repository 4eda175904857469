import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.middleware.error import DomainError, ValidationFailure
from app.models import CosinePotential, ParabolicChainPotential, TabulatedPotential
from app.schemas import CosineSpec, ParabolicChainSpec, TabulatedSpec
from app.services.potentials import (
    build_context, evaluate, load_table, model_from_spec, periodicity_violation,
    quadratic_params, validate_context,
)


@pytest.fixture(scope="module")
def cosine():
    return model_from_spec(CosineSpec(q=25.0, lc=1.0, wells=3))


@pytest.fixture(scope="module")
def tabulated():
    x = np.linspace(0.0, 3.0 * math.pi, 601)
    return TabulatedPotential(x=x, v=2.0 * np.cos(2.0 * x))


# Test cosine minima and barrier top
def test_cosine_minimum_and_barrier(cosine):
    assert cosine.first_minimum == pytest.approx(math.pi / 2)
    assert evaluate(cosine, math.pi / 2) == pytest.approx(-50.0)
    x_top, v_top = cosine.barrier_top()
    assert x_top == pytest.approx(math.pi)
    assert v_top == 50.0


# Test evaluation outside the finite window
def test_evaluate_outside_window(cosine):
    lo, hi = cosine.window
    assert lo == pytest.approx(0.0, abs=1e-15)
    assert hi == pytest.approx(3.0 * math.pi)
    with pytest.raises(DomainError):
        evaluate(cosine, hi + 0.1)
    with pytest.raises(DomainError):
        evaluate(cosine, np.array([0.5, -1.0]))


# Test the padded potential is held at the window edge
def test_padded_holds_edge_value(cosine):
    lo, hi = cosine.window
    assert cosine.padded(lo - 2.0) == pytest.approx(cosine.padded(lo))
    assert cosine.padded(hi + 5.0) == pytest.approx(50.0)


# Test periodic continuation agrees with V on the window
def test_periodic_extension_matches_window(cosine):
    x = np.linspace(0.1, 3.0, 17)
    np.testing.assert_allclose(cosine.periodic(x), evaluate(cosine, x), atol=1e-12)
    assert cosine.periodic(10.0 * math.pi + 0.3) == pytest.approx(cosine.periodic(0.3))


# Test quadratic parameters of the cosine well
def test_cosine_quadratic_params(cosine):
    V0, omega = quadratic_params(cosine)
    assert V0 == -50.0
    assert omega == pytest.approx(math.sqrt(200.0))


# Test the context derived from a model
def test_build_context(cosine):
    ctx = build_context(cosine, hbar=1.0, mass=1.0)
    assert ctx.N == 3
    assert ctx.a == pytest.approx(math.pi)
    assert ctx.l == pytest.approx(200.0 ** -0.25)
    assert ctx.a_over_l == pytest.approx(math.pi * 200.0 ** 0.25)
    assert ctx.E_n0(0) == pytest.approx(-50.0 + 0.5 * math.sqrt(200.0))
    assert ctx.well_center(2) == pytest.approx(2.5 * math.pi)


# Test parabolic chain distance to the nearest well
def test_parabolic_chain_values():
    model = ParabolicChainPotential(omega=1.0, a=10.0, n_wells=3)
    assert model.evaluate(1.0) == pytest.approx(0.5)
    assert model.evaluate(9.0) == pytest.approx(0.5)
    assert model.evaluate(11.0) == pytest.approx(0.5)
    assert model.barrier_top() == pytest.approx((5.0, 12.5))
    assert quadratic_params(model) == pytest.approx((0.0, 1.0))


# Test the parabolic chain keeps its own omega and mass
def test_quadratic_params_mass():
    assert quadratic_params(ParabolicChainPotential(omega=2.0, a=10.0)) == (0.0, 2.0)

    heavy = ParabolicChainPotential(omega=2.0, a=10.0, mass=3.0)
    assert quadratic_params(heavy) == (0.0, 2.0)
    assert quadratic_params(heavy, mass=3.0) == (0.0, 2.0)
    ctx = build_context(heavy)
    assert ctx.m == 3.0
    assert ctx.omega == 2.0
    assert ctx.l == pytest.approx(math.sqrt(1.0 / 6.0))

    with pytest.raises(ValidationFailure):
        quadratic_params(ParabolicChainPotential(omega=2.0, a=10.0), mass=2.0)
    with pytest.raises(ValidationFailure):
        build_context(heavy, mass=1.0)
    with pytest.raises(ValidationFailure):
        quadratic_params(heavy, mass=0.0)


# Test the mass scales omega for the cosine well
def test_cosine_quadratic_params_mass(cosine):
    _, omega = quadratic_params(cosine, mass=2.0)
    assert omega == pytest.approx(10.0)


# Test omega against a numerical second derivative of V
@pytest.mark.parametrize("model, mass", [
    (CosinePotential(q=25.0, n_wells=3), 1.0),
    (CosinePotential(q=8.0, lc=1.7, n_wells=2, offset=1), 0.5),
    (ParabolicChainPotential(omega=1.3, a=6.0, x1=0.7, v0=-1.0, n_wells=3, mass=2.0), 2.0),
])
def test_quadratic_params_numerical_curvature(model, mass):
    h = 1e-3
    x1 = model.first_minimum
    second = (evaluate(model, x1 - h) - 2.0 * evaluate(model, x1) + evaluate(model, x1 + h)) / h ** 2
    V0, omega = quadratic_params(model, mass)
    assert V0 == pytest.approx(evaluate(model, x1), abs=1e-12)
    assert omega == pytest.approx(math.sqrt(second / mass), rel=1e-6)


# Test the parabolic chain is continuous across cell boundaries
def test_parabolic_chain_continuity():
    model = ParabolicChainPotential(omega=1.3, a=4.0, x1=0.7, v0=-1.0, n_wells=4, mass=2.0)
    expected = -1.0 + 0.5 * 2.0 * 1.3 ** 2 * 2.0 ** 2
    for j in range(3):
        boundary = 0.7 + 2.0 + 4.0 * j
        left = evaluate(model, boundary - 1e-9)
        right = evaluate(model, boundary + 1e-9)
        assert left == pytest.approx(right, abs=1e-7)
        assert evaluate(model, boundary) == pytest.approx(expected, rel=1e-12)


# Test minima and curvature of an interpolated table
def test_tabulated_minima(tabulated):
    np.testing.assert_allclose(tabulated.minima, [math.pi / 2, 1.5 * math.pi, 2.5 * math.pi], atol=1e-6)
    assert tabulated.wells == 3
    assert tabulated.period == pytest.approx(math.pi, rel=1e-6)
    assert tabulated.curvature() == pytest.approx(8.0, rel=1e-3)
    x_top, v_top = tabulated.barrier_top()
    assert x_top == pytest.approx(math.pi, abs=2e-3)
    assert v_top == pytest.approx(2.0, rel=1e-5)


# Test linear interpolation finds the sampled minima
def test_tabulated_linear_order():
    x = np.linspace(0.0, 4.0, 9)
    model = TabulatedPotential(x=x, v=(x - 1.0) ** 2 * (x - 3.0) ** 2, order=1)
    np.testing.assert_allclose(model.minima, [1.0, 3.0])
    assert model.evaluate(0.25) == pytest.approx(0.5 * (model.evaluate(0.0) + model.evaluate(0.5)))


# Test a table without a well is rejected
def test_tabulated_without_minimum():
    model = TabulatedPotential(x=[0.0, 1.0, 2.0, 3.0], v=[0.0, 1.0, 2.0, 3.0])
    with pytest.raises(ValidationFailure):
        build_context(model)


# Test tabulated spec validation
def test_tabulated_spec_validation():
    with pytest.raises(ValidationError):
        TabulatedSpec(x=[0.0, 2.0, 1.0, 3.0], v=[0.0, 1.0, 0.0, 1.0])
    with pytest.raises(ValidationError):
        TabulatedSpec(x=[0.0, 1.0, 2.0, 3.0], v=[0.0, 1.0, 0.0])
    with pytest.raises(ValidationError):
        CosineSpec(q=-1.0)


# Test reading a potential table from CSV
def test_load_table(tmp_path):
    path = tmp_path / "well.csv"
    x = np.linspace(0.0, 2.0 * math.pi, 201)
    lines = ["# sampled cosine", "x,V"] + [f"{float(a)!r},{float(b)!r}" for a, b in zip(x, np.cos(2.0 * x))]
    path.write_text("\n".join(lines) + "\n")

    spec = load_table(str(path))
    assert len(spec.x) == 201
    model = model_from_spec(spec)
    assert model.wells == 2
    assert model.first_minimum == pytest.approx(math.pi / 2, abs=1e-6)


# Test a missing table is an I/O error
def test_load_table_missing(tmp_path):
    from app.middleware.error import InputOutputError
    with pytest.raises(InputOutputError):
        load_table(str(tmp_path / "missing.csv"))


# Test periodicity diagnostics
def test_periodicity_violation(cosine):
    assert periodicity_violation(cosine) < 1e-12
    chain = model_from_spec(ParabolicChainSpec(omega=1.0, a=10.0, wells=4))
    assert periodicity_violation(chain) < 1e-12


# Test the regime diagnostics for deep and shallow barriers
def test_validate_context_flags(cosine):
    report = validate_context(cosine, build_context(cosine), bands=[0])
    assert report.ok
    assert report.delta_shift[0] < 1e-3

    shallow = model_from_spec(CosineSpec(q=0.5, wells=2))
    report = validate_context(shallow, build_context(shallow), bands=[0])
    assert not report.ok
    assert any("a/l" in flag for flag in report.flags)
