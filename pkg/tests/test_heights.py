"""
Unit tests for heights module.
"""

from fractions import Fraction
import math

import pytest

from cmcert import heights
from cmcert import theta
from cmcert.ball import ComplexBall
from cmcert.field_enum import QuarticCharacter


def _zeros(count=4, prec=128):
    return [ComplexBall(0, 0, prec) for _ in range(count)]


def test_infinity_part_empty():
    """A coset without points has no infinity part."""
    with pytest.raises(ValueError):
        heights.infinity_part([])


def test_infinity_part_mean():
    """Average over the points, scaled by -1/10."""
    part = heights.infinity_part([ComplexBall(-10), ComplexBall(-30)])
    assert part.contains(2)


@pytest.mark.parametrize("count", [0, 3, 5])
def test_assemble_height_needs_four(count):
    """The height averages exactly four CM types."""
    with pytest.raises(ValueError):
        heights.assemble_height(_zeros(count))


def test_assemble_height_constants():
    """Only the normalising constants remain for vanishing parts."""
    height = heights.assemble_height(_zeros())
    assert float(height) == pytest.approx(-1.699248, abs=1e-6)
    shifted = heights.assemble_height(_zeros(), h0=Fraction(1, 2))
    assert float(shifted - height) == pytest.approx(0.5)


def test_scaled_shift():
    """Twelve tenths of log 2."""
    assert float(heights.scaled_shift(128)) == pytest.approx(0.831777, abs=1e-6)


def test_height_lower_bound():
    """Lower bound at the smallest field."""
    bound = heights.height_lower_bound(125)
    assert float(bound) == pytest.approx(-3.266624, abs=1e-5)
    assert heights.height_lower_bound(10 ** 9).gt(bound) is True


def test_faltings_height_small_field():
    """Report for vanishing infinity parts at discriminant 125."""
    report = heights.faltings_height(_zeros(), 125, 1,
                                     Fraction(48121, 100000))
    assert report.lower_bound_holds is True
    assert report.archimedean_bound_applies is False
    assert report.archimedean_bound_holds is True
    difference = report.faltings_height_scaled - report.faltings_height
    assert difference.overlaps(heights.scaled_shift(128))
    record = heights.height_record(report)
    assert record['h0'] == '0'
    assert record['archimedean_bound_applies'] is False


def test_archimedean_bound_threshold():
    """The bound is flagged as proved above the threshold."""
    report = heights.faltings_height(_zeros(), heights.HEIGHT_THRESHOLD, 1,
                                     Fraction(48121, 100000))
    assert report.archimedean_bound_applies is True


def test_point_height_zeta5(zeta5_point):
    """The chi_10 lower bound and its control hold at a CM point."""
    chi = theta.chi10(theta.theta_constants(zeta5_point))
    result = heights.point_height(zeta5_point, chi)
    assert result.chi10_bound_holds is True
    assert result.control is True
    assert heights.chi10_lower_bound(zeta5_point).gt(0) is True


@pytest.mark.parametrize("disc_f", [5, 13])
def test_height_lower_bound_slope(disc_f):
    """The slope in log(Delta_K) does not depend on the real subfield."""
    low = heights.height_lower_bound(10 ** 4, disc_f)
    high = heights.height_lower_bound(10 ** 6, disc_f)
    assert float(high - low) == pytest.approx(
        5 ** 0.5 / 20 * math.log(100), abs=1e-9)


def test_colmez_height_zeta5():
    """Lerch's formula with Gamma(k/5) for the fifth cyclotomic field."""
    character = QuarticCharacter(5, {1: 0, 2: 1, 3: 3, 4: 2})
    value = heights.colmez_height(character, 125, 5)
    assert abs(float(value) + 2.5972391) < 1e-5
    conjugate = heights.colmez_height(character.cube(), 125, 5)
    assert abs(float(conjugate - value)) < 1e-20
