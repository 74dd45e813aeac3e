"""
Unit tests for theta module.
"""

import mpmath
import pytest

from cmcert import theta
from cmcert.ball import ComplexBall, Undecidable
from cmcert.siegel import PeriodPoint


def _diagonal_point(prec=128):
    return PeriodPoint(ComplexBall(1j, 0, prec), ComplexBall(0, 0, prec),
                       ComplexBall(1j, 0, prec))


def _jacobi(prec=300):
    with mpmath.workprec(prec):
        q = mpmath.exp(-mpmath.pi)
        return {k: mpmath.jtheta(k, 0, q) for k in (2, 3, 4)}


def test_even_characteristics():
    """Ten of the sixteen characteristics are even."""
    even = [i for i in range(16) if theta.is_even(i)]
    assert tuple(even) == theta.EVEN_INDICES
    assert theta.characteristic(6) == (0, 1, 1, 0)


@pytest.mark.parametrize("index,factors", [
    (0, (3, 3)),
    (1, (2, 3)),
    (3, (2, 2)),
    (4, (4, 3)),
    (6, (4, 2)),
    (9, (2, 4)),
    (12, (4, 4)),
])
def test_diagonal_products(index, factors):
    """At diag(i, i) theta constants are products of Jacobi thetas."""
    values = _jacobi()
    with mpmath.workprec(300):
        expected = values[factors[0]] * values[factors[1]]
        assert theta.theta_constant(_diagonal_point(), index).contains(
            expected)


def test_diagonal_decomposable():
    """The odd-odd characteristic vanishes on diagonal points."""
    thetas = theta.theta_constants(_diagonal_point())
    assert theta.vanishing_constants(thetas) == [15]
    assert theta.chi10(thetas).contains(0)


def test_truncation_radius():
    """The tail after truncation is below the working precision."""
    radius, tail = theta.truncation_radius(_diagonal_point(), 128)
    assert radius >= 1
    assert tail < mpmath.ldexp(1, -136)
    lam = mpmath.mpf(1) / 2
    assert theta.tail_bound(lam, 5, 128) < theta.tail_bound(lam, 4, 128)


def test_non_positive_imaginary_part():
    """Points without positive definite Y are refused."""
    point = PeriodPoint(ComplexBall(-1j), ComplexBall(0), ComplexBall(1j))
    with pytest.raises(Undecidable):
        theta.theta_constants(point)


def test_chi10_normalizations(zeta5_point):
    """The scaled chi_10 differs by the factor 2^-12."""
    thetas = theta.theta_constants(zeta5_point)
    assert theta.vanishing_constants(thetas) == []
    plain = theta.chi10(thetas)
    assert plain.is_nonzero() is True
    scaled = theta.chi10(thetas, 'scaled')
    assert scaled.overlaps(plain * theta.SCALED_FACTOR)
    with pytest.raises(ValueError):
        theta.chi10(thetas, 'normalized')
