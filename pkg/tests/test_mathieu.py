import numpy as np
import pytest
from scipy import special

from app.middleware.error import TruncationError, ValidationFailure
from app.services import mathieu as mathieu_service
from app.services.mathieu import mathieu_characteristics, minimum_basis_size
from app.services.semiclassics import mathieu_band_width_closed


@pytest.fixture(scope="module")
def sweep():
    table = {}
    for q in (16.0, 25.0, 36.0, 49.0):
        numeric = mathieu_characteristics(q, max_order=1).band_widths
        table[q] = (numeric, [mathieu_band_width_closed(n, q) for n in (0, 1)])
    return table


# Test the small-q limit a_r, b_r -> r^2
def test_small_q_limit():
    result = mathieu_characteristics(1e-3, max_order=3)
    np.testing.assert_allclose(result.a_values, [0.0, 1.0, 4.0, 9.0], atol=2e-3)
    np.testing.assert_allclose(result.b_values, [1.0, 4.0, 9.0, 16.0], atol=2e-3)


# Test characteristic values against scipy
def test_characteristic_values_against_scipy():
    result = mathieu_characteristics(25.0, max_order=2)
    for r in range(3):
        assert result.a_values[r] == pytest.approx(special.mathieu_a(r, 25.0), rel=1e-6)
        assert result.b_values[r] == pytest.approx(special.mathieu_b(r + 1, 25.0), rel=1e-6)


# Test the sorted spectrum pairs into bands
def test_band_widths_from_pairs():
    result = mathieu_characteristics(25.0, max_order=2)
    for r in range(3):
        assert result.band_widths[r] == pytest.approx(result.b_values[r] - result.a_values[r], rel=1e-9)
        assert result.band_widths[r] > 0
    assert result.basis_size >= minimum_basis_size(25.0)


# Test the lowest band width against its closed form
def test_width_closed_form_q25(sweep):
    numeric, closed = sweep[25.0]
    assert closed[0] == pytest.approx(5.884e-7, rel=1e-3)
    assert 0.9 <= closed[0] / numeric[0] <= 1.1


# Test the closed-form ratio approaches one as q grows
def test_width_ratio_sweep(sweep):
    deviations = [abs(closed[0] / numeric[0] - 1.0) for numeric, closed in sweep.values()]
    assert all(b < a for a, b in zip(deviations, deviations[1:]))


# Test the first excited band at q = 49
def test_first_excited_band(sweep):
    numeric, closed = sweep[49.0]
    assert closed[1] / numeric[1] == pytest.approx(1.0, abs=0.15)


# Test band widths do not depend on the sign convention
def test_shifted_convention():
    standard = mathieu_characteristics(16.0, max_order=2)
    shifted = mathieu_characteristics(16.0, max_order=2, convention="shifted")
    assert shifted.convention == "shifted"
    np.testing.assert_allclose(shifted.band_widths, standard.band_widths, rtol=1e-6)


# Test every band width in both conventions against scipy
@pytest.mark.parametrize("convention", ["standard", "shifted"])
@pytest.mark.parametrize("q, max_order", [(16.0, 2), (16.0, 3), (9.0, 4)])
def test_band_widths_against_scipy(convention, q, max_order):
    result = mathieu_characteristics(q, max_order=max_order, convention=convention)
    assert len(result.band_widths) == max_order + 1
    for r in range(max_order + 1):
        expected = special.mathieu_b(r + 1, q) - special.mathieu_a(r, q)
        assert result.band_widths[r] == pytest.approx(expected, rel=1e-4, abs=1e-9)


# Test the characteristic values interlace a_0 < b_1 <= a_1 < b_2 <= a_2
@pytest.mark.parametrize("q", [1e-3, 2.0, 25.0])
def test_characteristic_values_interlace(q):
    result = mathieu_characteristics(q, max_order=3)
    a, b = result.a_values, result.b_values
    for r in range(4):
        assert a[r] < b[r]
        if r < 3:
            assert b[r] <= a[r + 1]


# Test invalid Mathieu parameters
def test_mathieu_validation():
    with pytest.raises(ValidationFailure):
        mathieu_characteristics(0.0)
    with pytest.raises(ValidationFailure):
        mathieu_characteristics(25.0, basis_size=10)
    with pytest.raises(ValidationFailure):
        mathieu_characteristics(25.0, convention="other")


# Test non-convergence of the truncation
def test_truncation_error(monkeypatch):
    monkeypatch.setattr(mathieu_service, "MATHIEU_TOL", -1.0)
    with pytest.raises(TruncationError) as info:
        mathieu_characteristics(4.0)
    assert info.value.exit_code == 3
    assert info.value.estimate is not None
