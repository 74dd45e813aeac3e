"""
Unit tests for realquad module.
"""

from fractions import Fraction

import mpmath
import pytest

from cmcert import realquad


@pytest.mark.parametrize("disc,unit", [
    (5, (Fraction(1, 2), Fraction(1, 2))),
    (8, (Fraction(1), Fraction(1, 2))),
    (12, (Fraction(2), Fraction(1, 2))),
    (13, (Fraction(3, 2), Fraction(1, 2))),
])
def test_fundamental_unit(disc, unit):
    """Units of small discriminants."""
    assert realquad.fundamental_unit(disc) == unit
    assert abs(realquad.norm(unit, disc)) == 1


@pytest.mark.parametrize("disc,h,h_plus", [
    (5, 1, 1),
    (8, 1, 1),
    (12, 1, 2),
    (13, 1, 1),
])
def test_class_numbers(disc, h, h_plus):
    """Wide and narrow class numbers."""
    data = realquad.real_quad_data(disc)
    assert data.class_number == h
    assert data.narrow_class_number == h_plus


def test_reduced_forms_cycles():
    """Reduced forms of discriminant 12 fall into two cycles."""
    forms = realquad.reduced_forms(12)
    assert len(forms) == 4
    for form in forms:
        assert form.b ** 2 - 4 * form.a * form.c == 12
    assert realquad.narrow_class_number(12) == 2


@pytest.mark.parametrize("disc", [0, 1, 4, 9, 16, 20, -3])
def test_not_fundamental(disc):
    """Non-fundamental or non-positive discriminants are rejected."""
    with pytest.raises(realquad.NotFundamental):
        realquad.real_quad_data(disc)


def test_regulator():
    """The regulator of Q(sqrt 5) is log of the golden ratio."""
    data = realquad.real_quad_data(5)
    with mpmath.workprec(300):
        golden = (1 + mpmath.sqrt(5)) / 2
        assert data.regulator(128).contains(mpmath.log(golden))
    assert abs(realquad.regulator_float(5) - 0.4812118250596) < 1e-12
    assert data.unit_norm == -1


def test_serialize():
    """Records hold strings."""
    record = realquad.real_quad_data(5).serialize()
    assert record['disc_F'] == '5'
    assert record['unit'] == ['1/2', '1/2']
    assert record['h_F'] == '1'
