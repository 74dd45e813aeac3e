"""
Unit tests for polymod module.
"""

import pytest

from cmcert import polymod
from cmcert.polymod import ZPoly


def test_zpoly_normalisation():
    """Trailing zeros are dropped and the zero polynomial has degree -1."""
    assert ZPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert ZPoly([]).degree == -1
    assert ZPoly([5, 0, 1]).degree == 2


def test_zpoly_arithmetic():
    """Ring operations and evaluation."""
    f = ZPoly([1, 1])
    g = ZPoly([-1, 1])
    assert f * g == ZPoly([-1, 0, 1])
    assert f + g == ZPoly([0, 2])
    assert f - g == ZPoly([2])
    assert 3 * f == ZPoly([3, 3])
    assert ZPoly([1, 0, 1])(2) == 5
    assert ZPoly([0, 0, 1]).derivative() == ZPoly([0, 2])


def test_sympy_bridge():
    """Discriminant, irreducibility and real roots through sympy."""
    f = ZPoly([1, 0, 1])
    assert f.discriminant() == -4
    assert f.is_irreducible()
    assert not ZPoly([-1, 0, 1]).is_irreducible()
    assert f.count_real_roots() == 0
    assert ZPoly([5, 0, -5, 0, 1]).count_real_roots() == 4


def test_substitute_scaled():
    """Minimal polynomial of a*theta + b."""
    f = ZPoly([1, 0, 1])
    assert f.substitute_scaled(2, 1) == ZPoly([5, -2, 1])
    assert f.substitute_scaled(2, 0) == ZPoly([4, 0, 1])


def test_substitute_scaled_not_integral():
    """Non-integral images are rejected."""
    with pytest.raises(ValueError):
        ZPoly([1, 0, 1]).substitute_scaled('1/2', 0)


@pytest.mark.parametrize("coeffs,p,expected", [
    ([1, 0, 1], 5, [((2, 1), 1), ((3, 1), 1)]),
    ([1, 0, 1], 2, [((1, 1), 2)]),
    ([1, 0, 0, 0, 1], 3, [((2, 1, 1), 1), ((2, 2, 1), 1)]),
    ([1, 0, 1], 3, [((1, 0, 1), 1)]),
])
def test_factor_mod_p(coeffs, p, expected):
    """Factorisations modulo small primes."""
    factors = polymod.factor_mod_p(ZPoly(coeffs), p)
    assert [(g.coeffs, e) for g, e in factors] == expected


@pytest.mark.parametrize("p", [2, 3, 11, 31, 101])
def test_factor_mod_p_product(p):
    """The factors multiply back to the monic reduction."""
    f = polymod.cyclotomic(5)
    product = ZPoly([1])
    for g, e in polymod.factor_mod_p(f, p, seed=7):
        for _ in range(e):
            product = product * g
    assert [c % p for c in product.coeffs] == [c % p for c in f.coeffs]


def test_factor_composite_modulus():
    """Composite moduli are rejected."""
    with pytest.raises(polymod.CompositeModulus):
        polymod.factor_mod_p(ZPoly([1, 0, 1]), 15)


def test_factor_vanishing():
    """A polynomial vanishing modulo p has no factorisation."""
    with pytest.raises(ValueError):
        polymod.factor_mod_p(ZPoly([3, 6]), 3)


def test_cyclotomic_and_roots():
    """Cyclotomic polynomials and roots in GF(p)."""
    assert polymod.cyclotomic(5).coeffs == (1, 1, 1, 1, 1)
    assert polymod.roots_mod_p(ZPoly([1, 0, 1]), 5) == [2, 3]
    assert polymod.roots_mod_p(polymod.cyclotomic(5), 11) == [3, 4, 5, 9]
    assert polymod.roots_mod_p(ZPoly([1, 0, 1]), 7) == []


def test_serialize():
    """String coefficients survive JSON."""
    f = ZPoly([-7, 0, 10 ** 30])
    assert ZPoly.deserialize(f.serialize()) == f
