"""
Unit tests for invariants module.
"""

from fractions import Fraction

import pytest

from cmcert import invariants
from cmcert import pipeline
from cmcert import theta
from cmcert.ball import ComplexBall, Undecidable
from cmcert.invariants import InvariantTriple
from cmcert.siegel import PeriodPoint


def _exact_triple(j1, j2, j3):
    return InvariantTriple(ComplexBall.exact(j1), ComplexBall.exact(j2),
                           ComplexBall.exact(j3), None)


def test_recognize_rational():
    """A narrow ball around 22/7 is recognised exactly."""
    ball = ComplexBall.exact(Fraction(22, 7), 200)
    assert invariants.recognize_rational(ball) == Fraction(22, 7)
    big = ComplexBall.exact(183708000, 200)
    assert invariants.recognize_rational(big) == 183708000


@pytest.mark.parametrize("ball", [
    ComplexBall(3.14159, 1e-3),
    ComplexBall(1 + 1j, 0.1),
])
def test_recognize_rational_fails(ball):
    """Wide or non-real balls are not recognised."""
    with pytest.raises(invariants.RecognitionFailed):
        invariants.recognize_rational(ball)


def test_recognition_failure_is_undecidable():
    """Recognition failures trigger a precision retry."""
    assert issubclass(invariants.RecognitionFailed, Undecidable)


@pytest.mark.parametrize("ball,expected", [
    (ComplexBall(3, 1e-30), True),
    (ComplexBall(2.5, 0.1), False),
    (ComplexBall(3, 0.6), None),
])
def test_integrality(ball, expected):
    """Three-valued integrality test."""
    assert invariants.integrality(ball) is expected


def test_class_polynomials_exact():
    """Polynomials of exact invariants."""
    triples = [_exact_triple(1, 2, 3), _exact_triple(4, 5, 6)]
    polys = invariants.class_polynomials(triples)
    assert polys.h1 == [4, -5, 1]
    assert polys.h2 == [10, -7, 1]
    assert polys.h3 == [18, -9, 1]
    assert invariants.polynomials_integral(triples) is True
    record = invariants.polynomial_record(polys)
    assert record['h1'] == ['4', '-5', '1']


def test_class_polynomials_not_integral():
    """A half-integer invariant is certified non-integral."""
    triples = [_exact_triple(Fraction(1, 2), 2, 3)]
    assert invariants.polynomials_integral(triples) is False
    polys = invariants.class_polynomials(triples)
    assert polys.h1 == [Fraction(-1, 2), 1]


def test_class_polynomials_empty():
    """At least one point is needed."""
    with pytest.raises(ValueError):
        invariants.class_polynomial_balls([])


def _roots(values, prec=200):
    return [ComplexBall.exact(v, prec) for v in values]


def test_igusa_clebsch_translation_invariant():
    """Invariants only depend on differences of the roots."""
    values = [0, 1, 3, -2, Fraction(1, 2), 5]
    first = invariants.igusa_clebsch_from_roots(_roots(values))
    second = invariants.igusa_clebsch_from_roots(
        _roots([v + 7 for v in values]))
    for a, b in zip(first, second):
        assert a.overlaps(b)


def test_absolute_invariants_scaling():
    """Absolute invariants do not change when the roots are scaled."""
    values = [0, 1, 3, -2, Fraction(1, 2), 5]
    first = invariants.absolute_invariants(
        invariants.igusa_clebsch_from_roots(_roots(values)))
    second = invariants.absolute_invariants(
        invariants.igusa_clebsch_from_roots(_roots([3 * v for v in values])))
    for a, b in zip(first, second):
        assert a.overlaps(b)


def test_repeated_root_is_decomposable():
    """A double root makes I10 vanish."""
    ic = invariants.igusa_clebsch_from_roots(_roots([0, 0, 1, 2, 3, 4]))
    with pytest.raises(invariants.DecomposablePoint):
        invariants.absolute_invariants(ic)


def test_diagonal_point_decomposable():
    """Theta constants of a product of elliptic curves are refused."""
    point = PeriodPoint(ComplexBall(1j), ComplexBall(0), ComplexBall(1j))
    thetas = theta.theta_constants(point)
    with pytest.raises(invariants.DecomposablePoint):
        invariants.rosenhain(thetas)
    with pytest.raises(invariants.DecomposablePoint):
        invariants.igusa_invariants(thetas)


def test_zeta5_invariants_vanish(zeta5_point):
    """y^2 = x^5 + 1 has vanishing absolute invariants."""
    triple = invariants.igusa_invariants(
        theta.theta_constants(zeta5_point))
    assert triple.j1.contains(0)
    assert triple.j2.contains(0)
    assert triple.j3.contains(0)
    assert invariants.integrality(triple.j1) is not False
    lambdas = invariants.rosenhain(theta.theta_constants(zeta5_point))
    assert len(invariants.sextic_roots(lambdas)) == 6


def test_integral_unions_single_orbit():
    """An integral orbit is found on its own; a rational one is not."""
    orbits = [[_exact_triple(Fraction(1, 2), 2, 3)],
              [_exact_triple(1, 2, 3), _exact_triple(4, 5, 6)]]
    result = invariants.integral_unions(orbits)
    assert result.unions == [(1,)]
    assert result.undecided is False


def test_integral_unions_pair():
    """Two conjugate orbits are integral only together."""
    one = ComplexBall.exact(1, 200)
    phi = (ComplexBall.exact(5, 200).sqrt() + one) * Fraction(1, 2)
    orbits = [[InvariantTriple(phi, one, one, None)],
              [InvariantTriple(one - phi, one, one, None)],
              [_exact_triple(Fraction(1, 3), 1, 1)]]
    result = invariants.integral_unions(orbits)
    assert result.unions == [(0, 1)]
    assert result.undecided is False
    polys = invariants.class_polynomials(orbits[0] + orbits[1])
    assert polys.h1 == [-1, -1, 1]


def test_integral_unions_empty():
    """At least one orbit is needed."""
    with pytest.raises(ValueError):
        invariants.integral_unions([])


def test_zeta5_class_polynomials_exact(zeta5):
    """At 200 bits the invariants of y^2 = x^5 + 1 are recognised as 0."""
    cfg = pipeline.PipelineConfig.from_settings({'prec': 200})
    result = pipeline.field_invariants(zeta5, cfg)
    assert result.integral is True
    assert result.orbits == [[()]]
    assert result.unions == [(0,)]
    polys = result.polynomials[0]
    assert polys.h1 == [0, 1]
    assert polys.h2 == [0, 1]
    assert polys.h3 == [0, 1]


@pytest.mark.slow
def test_disc8000_invariants(field8000):
    """Of the two orbits of discriminant 8000 exactly one is integral."""
    cfg = pipeline.PipelineConfig.from_settings({'prec': 256})
    result = pipeline.field_invariants(field8000, cfg)
    assert len(result.orbits) == 2
    assert result.integral is True
    assert len(result.unions) == 1
    assert len(result.unions[0]) == 1
    polys = result.polynomials[0]
    assert polys.h2 == [-2583393750, 1]
    for poly in (polys.h1, polys.h3):
        assert len(poly) == 2
        assert all(Fraction(c).denominator == 1 for c in poly)
