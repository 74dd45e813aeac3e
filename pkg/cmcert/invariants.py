#!/usr/bin/env python

"""
Igusa-Clebsch and absolute Igusa invariants of reduced CM points, and the
class polynomials assembled from them.

The curve of a point is put in Rosenhain form
``y^2 = x (x - 1) (x - l1) (x - l2) (x - l3)`` from its even theta
constants; the Igusa-Clebsch invariants are then the root sums
``I2 = sum (12)^2 (34)^2 (56)^2`` (15 terms), ``I4`` (10 terms), ``I6``
(60 terms) and ``I10 = prod (ij)^2``. Absolute invariants are
``j1 = I4 I6' / I10``, ``j2 = I2 I4^2 / I10`` and ``j3 = I4^5 / I10^2``
with ``I6' = (I2 I4 - 3 I6) / 2``.
"""

from __future__ import division

import argparse
from collections import namedtuple
from fractions import Fraction
import itertools
import json
import logging
import sys

from cmcert import settings
from cmcert import theta
from cmcert.ball import ComplexBall, Error, Undecidable, mpf_to_fraction


class DecomposablePoint(Exception):
    """chi_10 cannot be certified nonzero at the point."""
    def __init__(self, characteristics):
        Exception.__init__(self)
        self.characteristics = characteristics

    def __str__(self):
        return "theta constants {} may vanish".format(self.characteristics)


class RecognitionFailed(Undecidable):
    """A ball does not single out a rational of bounded denominator."""
    def __init__(self, ball, msg=''):
        Undecidable.__init__(self, msg)
        self.ball = ball
        self.msg = msg

    def __str__(self):
        return "cannot recognise {}: {}".format(self.ball, self.msg)


InvariantTriple = namedtuple('InvariantTriple', 'j1 j2 j3 igusa_clebsch')

ClassPolynomials = namedtuple('ClassPolynomials', 'h1 h2 h3')

IntegralUnions = namedtuple('IntegralUnions', 'unions undecided')

SHIFTS = (-1, -2, 2, 3, Fraction(1, 2), Fraction(-1, 3), 5)


def _matchings(points):
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    result = []
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for tail in _matchings(remaining):
            result.append([(first, other)] + tail)
    return result


def _triangle(points):
    return list(itertools.combinations(points, 2))


def _templates():
    points = tuple(range(6))
    i2 = _matchings(list(points))
    i4, i6 = [], []
    for first in itertools.combinations(points, 3):
        if 0 not in first:
            continue
        second = tuple(p for p in points if p not in first)
        edges = _triangle(first) + _triangle(second)
        i4.append(edges)
        for image in itertools.permutations(second):
            i6.append(edges + list(zip(first, image)))
    i10 = [list(itertools.combinations(points, 2))]
    return i2, i4, i6, i10


TEMPLATES = _templates()


def rosenhain(thetas):
    """Rosenhain invariants ``(l1, l2, l3)`` from theta constants.

    ``l1 = t0 t4 / (t12 t8)``, ``l2 = t4 t3 / (t8 t15)`` and
    ``l3 = t0 t3 / (t12 t15)`` with ``t_i = theta_i^2``.

    Raises
    ------
    DecomposablePoint
        If one of the theta constants may vanish.
    """
    vanishing = theta.vanishing_constants(thetas)
    if vanishing:
        raise DecomposablePoint(vanishing)
    t = {index: value.square() for index, value in thetas.items()}
    return (t[0] * t[4] / (t[12] * t[8]),
            t[4] * t[3] / (t[8] * t[15]),
            t[0] * t[3] / (t[12] * t[15]))


def sextic_roots(lambdas):
    """Roots of a sextic model of the Rosenhain curve.

    The finite branch points ``0, 1, l1, l2, l3`` and infinity are moved
    by ``x -> 1/(x - t)`` for the first shift t in SHIFTS that avoids them.
    """
    prec = lambdas[0].prec
    points = [ComplexBall(0, 0, prec), ComplexBall(1, 0, prec)] + \
        list(lambdas)
    for shift in SHIFTS:
        diffs = [p - shift for p in points]
        if all(d.is_nonzero() for d in diffs):
            return [d.inverse() for d in diffs] + [ComplexBall(0, 0, prec)]
    raise Undecidable("no shift separates the branch points")


def _root_sum(squares, template):
    total = None
    for edges in template:
        term = None
        for i, j in edges:
            term = squares[i][j] if term is None else term * squares[i][j]
        total = term if total is None else total + term
    return total


def igusa_clebsch_from_roots(roots):
    """``(I2, I4, I6, I10)`` of the monic sextic with the given roots."""
    squares = [[(a - b).square() for b in roots] for a in roots]
    return tuple(_root_sum(squares, template) for template in TEMPLATES)


def igusa_clebsch(thetas):
    """Igusa-Clebsch invariants of the curve of a point (up to weighting)."""
    return igusa_clebsch_from_roots(sextic_roots(rosenhain(thetas)))


def absolute_invariants(ic):
    """Absolute invariants ``(j1, j2, j3)`` of Igusa-Clebsch invariants."""
    i2, i4, i6, i10 = ic
    if not i10.is_nonzero():
        raise DecomposablePoint(['I10'])
    i6_prime = (i2 * i4 - i6 * 3) * Fraction(1, 2)
    return (i4 * i6_prime / i10,
            i2 * i4.square() / i10,
            i4 ** 5 / i10.square())


def igusa_invariants(thetas):
    """InvariantTriple of a point given its even theta constants.

    Raises
    ------
    DecomposablePoint
        If chi_10 cannot be certified nonzero.
    """
    if theta.chi10(thetas).is_nonzero() is not True:
        raise DecomposablePoint(theta.vanishing_constants(thetas))
    ic = igusa_clebsch(thetas)
    j1, j2, j3 = absolute_invariants(ic)
    return InvariantTriple(j1, j2, j3, ic)


# Rational recognition

def convergents(value):
    """Continued-fraction convergents of a Fraction.

    Examples
    --------
    >>> list(convergents(Fraction(355, 113)))
    [Fraction(3, 1), Fraction(22, 7), Fraction(355, 113)]
    """
    p0, q0, p1, q1 = 0, 1, 1, 0
    while True:
        a = value.numerator // value.denominator
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)
        frac = value - a
        if frac == 0:
            return
        value = 1 / frac


def recognize_rational(ball, denominator_bound=2 ** 60):
    """The unique rational of bounded denominator inside a real ball.

    The candidate is the last convergent of the midpoint with denominator
    at most `denominator_bound`. It is accepted if it lies in the ball and
    the ball is narrower than ``1 / (q * denominator_bound)``, which keeps
    every other fraction of bounded denominator out of it.

    Raises
    ------
    RecognitionFailed
        If the ball is too wide or contains no candidate.
    """
    if not ball.imag.contains(0):
        raise RecognitionFailed(ball, "not real")
    mid = mpf_to_fraction(ball.mid.real)
    rad = mpf_to_fraction(ball.rad)
    candidate = None
    for conv in convergents(mid):
        if conv.denominator > denominator_bound:
            break
        candidate = conv
    if candidate is None or not ball.contains(candidate):
        raise RecognitionFailed(ball, "no convergent inside the ball")
    if 2 * rad * candidate.denominator * denominator_bound >= 1:
        raise RecognitionFailed(ball, "ball too wide")
    return candidate


def integrality(ball):
    """True if the ball is a certified integer, False if it holds none."""
    if not ball.contains_integer():
        return False
    try:
        value = recognize_rational(ball, 1)
    except RecognitionFailed:
        return None
    return value.denominator == 1


# Class polynomials

def _expand(roots):
    """Coefficients, low to high, of ``prod (X - r)``."""
    prec = roots[0].prec
    coeffs = [ComplexBall(1, 0, prec)]
    for root in roots:
        shifted = [ComplexBall(0, 0, prec)] + coeffs
        for k, c in enumerate(coeffs):
            shifted[k] = shifted[k] - c * root
        coeffs = shifted
    return coeffs


def class_polynomial_balls(triples):
    """Ball coefficients of the three class polynomials."""
    if not triples:
        raise ValueError("no CM points")
    return ClassPolynomials(*[_expand([t[k] for t in triples])
                              for k in range(3)])


def class_polynomials(triples, denominator_bound=2 ** 60):
    """Class polynomials with exactly recognised rational coefficients.

    Parameters
    ----------
    triples : list of InvariantTriple
        Invariants of every point in a Galois orbit.
    denominator_bound : int

    Returns
    -------
    ClassPolynomials
        Three lists of Fraction, low to high degree.

    Raises
    ------
    RecognitionFailed
        If a coefficient is not recognised at the current precision.
    """
    balls = class_polynomial_balls(triples)
    return ClassPolynomials(*[
        [recognize_rational(c, denominator_bound) for c in poly]
        for poly in balls])


def polynomials_integral(triples):
    """Whether all class-polynomial coefficients are integers.

    Returns False as soon as some coefficient ball excludes every integer,
    None if integrality is not decided at this precision.
    """
    verdict = True
    for poly in class_polynomial_balls(triples):
        for coeff in poly:
            status = integrality(coeff)
            if status is False:
                return False
            if status is None:
                verdict = None
    return verdict


def integral_unions(orbits, max_orbits=12):
    """Smallest unions of orbits whose class polynomials are integral.

    The points of a field split into Galois orbits over the reflex field;
    the rational class polynomial of a curve is the product over a union of
    them. Unions containing an integral one are skipped.

    Parameters
    ----------
    orbits : list of list of InvariantTriple

    Returns
    -------
    IntegralUnions
        ``unions`` are tuples of orbit indices; ``undecided`` is True if
        some union could not be decided.

    Raises
    ------
    ValueError
        If there are no orbits or more than `max_orbits`.
    """
    if not orbits or len(orbits) > max_orbits:
        raise ValueError("cannot combine {} orbits".format(len(orbits)))
    found = []
    undecided = False
    for size in range(1, len(orbits) + 1):
        for combo in itertools.combinations(range(len(orbits)), size):
            if any(set(union) <= set(combo) for union in found):
                continue
            verdict = polynomials_integral(
                [t for k in combo for t in orbits[k]])
            if verdict is True:
                found.append(combo)
            elif verdict is None:
                undecided = True
    return IntegralUnions(found, undecided)


def polynomial_record(polys):
    return {name: [str(c) for c in poly]
            for name, poly in zip(ClassPolynomials._fields, polys)}


def invariant_record(triple):
    return {
        'j1': triple.j1.serialize(),
        'j2': triple.j2.serialize(),
        'j3': triple.j3.serialize(),
    }


def _main():
    # pylint: disable=import-outside-toplevel
    from cmcert import field_enum
    from cmcert import pipeline

    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('fields', type=argparse.FileType('r'), nargs='?',
                        default=sys.stdin,
                        help="field database (.jsonl) [default: stdin]")
    parser.add_argument('-o', '--output', type=argparse.FileType('w'),
                        default=sys.stdout,
                        help="output file [default: stdout]")
    config, args = settings.load_args(parser, ['seed', 'relation_effort',
                                               'unit_range', 'prec',
                                               'prec_cap',
                                               'denominator_bound'])
    cfg = pipeline.PipelineConfig.from_settings(config)

    for field in field_enum.load_fields(args.fields):
        row = {'disc_K': str(field.disc)}
        try:
            result = pipeline.field_invariants(field, cfg)
        except (DecomposablePoint, Error) as exc:
            logging.warning("Field %d: %s", field.disc, exc)
            row['error'] = str(exc)
        else:
            row['points'] = [invariant_record(t) for t in result.triples]
            row['orbits'] = [[list(label) for label in labels]
                             for labels in result.orbits]
            row['integral_unions'] = [list(u) for u in result.unions]
            row['class_polynomials'] = [polynomial_record(p)
                                        for p in result.polynomials]
            row['integral'] = result.integral
        args.output.write(json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
