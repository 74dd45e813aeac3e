"""
Unit tests for numfield module.
"""

from fractions import Fraction

import pytest

from cmcert import numfield
from cmcert.ball import exp_pi_i
from cmcert.numfield import CMType
from cmcert.polymod import ZPoly, cyclotomic


def test_zeta5_invariants(zeta5):
    """Discriminant, subfield and roots of unity of Q(zeta_5)."""
    assert zeta5.disc == 125
    assert zeta5.index == 1
    assert zeta5.subfield.disc == 5
    assert zeta5.w == 10
    assert zeta5.unit_index == 1


def test_element_arithmetic(zeta5):
    """Field operations on the generator."""
    theta = zeta5.theta
    assert theta ** 5 == 1
    assert theta.trace() == -1
    assert theta.norm() == 1
    assert (1 - theta).norm() == 5
    assert theta * theta.inverse() == 1
    assert (theta ** -2) * theta ** 2 == zeta5.one
    half = theta / 2
    assert not half.is_integral()
    with pytest.raises(ZeroDivisionError):
        zeta5.zero.inverse()


def test_galois_structure(zeta5):
    """sigma has order four and squares to complex conjugation."""
    theta = zeta5.theta
    image = theta
    for _ in range(4):
        image = image.apply(zeta5.sigma)
    assert image == theta
    assert theta.conj() == theta ** 4
    assert theta.apply(zeta5.sigma) != theta


def test_embeddings(zeta5):
    """The first embedding sends theta to exp(2 pi i / 5)."""
    theta = zeta5.theta
    assert theta.embed(0, 128).overlaps(exp_pi_i(Fraction(2, 5), 128))
    assert theta.embed(1, 128).overlaps(exp_pi_i(Fraction(-2, 5), 128))
    for k in range(4):
        assert theta.embed(k, 128).overlaps(theta.conj().embed(k, 128)
                                            .conjugate())


def test_sqrt_disc_f(zeta5):
    """The subfield generator squares to its discriminant."""
    root = zeta5.sqrt_disc_F
    assert root * root == 5
    assert root.embed(0, 128).real.gt(0)


def test_regulator(zeta5):
    """R_K = 2 R_F for unit index one."""
    r_k = zeta5.regulator(128)
    r_f = zeta5.subfield.regulator(128)
    assert r_k.overlaps(r_f * 2)


def test_index_of_scaled_polynomial():
    """Round 2 recovers the maximal order of a non-monogenic model."""
    f = cyclotomic(5).substitute_scaled(2, 0)
    field = numfield.maximal_order(f, cyclic=False)
    assert field.disc == 125
    assert field.index == 64


def test_biquadratic_rejected():
    """Q(zeta_8) is Galois with group (Z/2)^2."""
    with pytest.raises(numfield.NotCyclic):
        numfield.maximal_order(cyclotomic(8))


def test_real_root_rejected():
    """Polynomials with real roots do not define CM fields."""
    with pytest.raises(numfield.NotCM):
        numfield.maximal_order(ZPoly([-2, 0, 0, 0, 1]))


def test_reducible_rejected():
    """x^4 + 4 factors over Q."""
    with pytest.raises(ValueError):
        numfield.maximal_order(ZPoly([4, 0, 0, 0, 1]))


def test_serialize_roundtrip(zeta5):
    """A record rebuilds the same field."""
    field = numfield.deserialize(zeta5.serialize())
    assert field.disc == zeta5.disc
    assert field.sigma == zeta5.sigma
    record = zeta5.serialize()
    record['disc_K'] = '126'
    with pytest.raises(ValueError):
        numfield.deserialize(record, cyclic=False)


def test_cm_types():
    """Types and their classes under complex conjugation."""
    types = numfield.cm_types(None)
    assert len(types) == 4
    assert numfield.conjugate_type(CMType(0, 2)) == CMType(1, 3)
    assert numfield.galois_action_on_type(CMType(0, 2)) == CMType(1, 2)
    classes = numfield.cm_type_classes(None)
    assert classes == [[CMType(0, 2), CMType(1, 3)],
                       [CMType(0, 3), CMType(1, 2)]]


def test_galois_action_single_orbit():
    """sigma cycles through all four types; sigma^2 is conjugation."""
    orbit = [CMType(0, 2)]
    for _ in range(3):
        orbit.append(numfield.galois_action_on_type(orbit[-1]))
    assert sorted(orbit) == numfield.cm_types(None)
    assert numfield.galois_action_on_type(orbit[3]) == orbit[0]
    for phi in orbit:
        twice = numfield.galois_action_on_type(
            numfield.galois_action_on_type(phi))
        assert twice == numfield.conjugate_type(phi)


def test_different(zeta5):
    """The different has norm equal to the discriminant."""
    assert zeta5.different().norm() == 125
    assert zeta5.codifferent().norm() == Fraction(1, 125)
