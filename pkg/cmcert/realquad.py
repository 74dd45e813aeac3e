"""
Real quadratic fields: fundamental unit, regulator and class number.

Elements of ``Q(sqrt(D))`` are held as pairs ``(u, v)`` of Fractions
meaning ``u + v*sqrt(D)``.
"""

from __future__ import division

from collections import namedtuple
from fractions import Fraction
import logging

import mpmath
import sympy

from cmcert.ball import ComplexBall


class NotFundamental(Exception):
    """Raised when a discriminant is not a fundamental discriminant."""
    def __init__(self, disc):
        Exception.__init__(self)
        self.disc = disc

    def __str__(self):
        return "{} is not a fundamental discriminant".format(self.disc)


BinaryForm = namedtuple('BinaryForm', 'a b c')


def is_fundamental(disc):
    """Whether `disc` is a fundamental discriminant of a quadratic field.

    Examples
    --------
    >>> [d for d in range(2, 30) if is_fundamental(d)]
    [5, 8, 12, 13, 17, 21, 24, 28, 29]
    """
    if disc in (0, 1):
        return False
    if disc % 4 == 1:
        return sympy.ntheory.factor_.core(abs(disc)) == abs(disc)
    if disc % 4 == 0:
        m = disc // 4
        if m % 4 in (2, 3):
            return sympy.ntheory.factor_.core(abs(m)) == abs(m)
    return False


def _qmul(x, y, disc):
    return (x[0] * y[0] + disc * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def fundamental_unit(disc):
    """Fundamental unit ``u + v*sqrt(disc) > 1`` of the maximal order.

    Expands the reduced quadratic irrational ``(b + sqrt(disc))/2`` as a
    continued fraction and multiplies the complete quotients of one period.

    Examples
    --------
    >>> fundamental_unit(5)
    (Fraction(1, 2), Fraction(1, 2))
    >>> fundamental_unit(8)
    (Fraction(1, 1), Fraction(1, 2))
    """
    root = sympy.integer_nthroot(disc, 2)[0]
    b = root if (root - disc) % 2 == 0 else root - 1
    if b * b == disc:
        b -= 2
    start = (b, 2)
    p, q = start
    unit = (Fraction(1), Fraction(0))
    steps = 0
    while True:
        a = (p + root) // q
        p = a * q - p
        q = (disc - p * p) // q
        steps += 1
        unit = _qmul(unit, (Fraction(p, q), Fraction(1, q)), disc)
        if (p, q) == start:
            break
    logging.debug("Continued fraction period of (%d + sqrt(%d))/2 is %d",
                  b, disc, steps)
    return unit


def norm(x, disc):
    return x[0] * x[0] - disc * x[1] * x[1]


def is_reduced(form, disc):
    """Gauss reduction of an indefinite form of discriminant `disc`."""
    a, b, _ = form
    if not 0 < b or b * b >= disc:
        return False
    twice_a = 2 * abs(a)
    if (twice_a + b) ** 2 <= disc:
        return False
    return twice_a - b < 0 or (twice_a - b) ** 2 < disc


def reduced_forms(disc):
    """All reduced forms ``(a, b, c)`` with ``b^2 - 4ac = disc``."""
    forms = []
    b = 2 - disc % 2
    while b * b < disc:
        ac = (b * b - disc) // 4
        for a in sympy.divisors(-ac):
            for signed in (a, -a):
                form = BinaryForm(signed, b, ac // signed)
                if is_reduced(form, disc):
                    forms.append(form)
        b += 2
    return sorted(set(forms))


def rho(form, disc):
    """Reduction operator moving to the right neighbour in a cycle."""
    _, b, c = form
    root = sympy.integer_nthroot(disc, 2)[0]
    mod = 2 * abs(c)
    b_new = root - ((root + b) % mod)
    return BinaryForm(c, b_new, (b_new * b_new - disc) // (4 * c))


def narrow_class_number(disc):
    """Number of rho-cycles of reduced forms."""
    remaining = set(reduced_forms(disc))
    cycles = 0
    while remaining:
        form = remaining.pop()
        cycles += 1
        nxt = rho(form, disc)
        while nxt != form:
            remaining.discard(nxt)
            nxt = rho(nxt, disc)
    return cycles


class RealQuadField(object):
    """Arithmetic data of a real quadratic field."""

    def __init__(self, disc, unit, class_number, narrow_class_number_):
        self.disc = disc
        self.unit = unit
        self.class_number = class_number
        self.narrow_class_number = narrow_class_number_

    @property
    def unit_norm(self):
        return int(norm(self.unit, self.disc))

    def unit_ball(self, prec):
        u, v = self.unit
        sqrt_d = ComplexBall.exact(self.disc, prec).sqrt()
        return ComplexBall.exact(u, prec) + ComplexBall.exact(v, prec) * sqrt_d

    def regulator(self, prec=128):
        """Real ball enclosing ``log(eps)``."""
        return self.unit_ball(prec).log().real

    def serialize(self):
        return {
            'disc_F': str(self.disc),
            'unit': [str(self.unit[0]), str(self.unit[1])],
            'h_F': str(self.class_number),
            'h_F_plus': str(self.narrow_class_number),
        }

    def __repr__(self):
        return "RealQuadField(disc={}, h={})".format(self.disc,
                                                      self.class_number)


def real_quad_data(disc):
    """Fundamental unit, regulator and class number of ``Q(sqrt(disc))``.

    Raises
    ------
    NotFundamental
        If `disc` is not a positive fundamental discriminant.

    Examples
    --------
    >>> real_quad_data(40).class_number
    2
    """
    if disc <= 1 or not is_fundamental(disc):
        raise NotFundamental(disc)
    unit = fundamental_unit(disc)
    h_plus = narrow_class_number(disc)
    if norm(unit, disc) == -1:
        h = h_plus
    else:
        h = h_plus // 2
    return RealQuadField(disc, unit, h, h_plus)


def regulator_float(disc):
    """Double-precision regulator, for tables and plots."""
    u, v = fundamental_unit(disc)
    return float(mpmath.log(mpmath.mpf(u.numerator) / u.denominator
                            + mpmath.mpf(v.numerator) / v.denominator
                            * mpmath.sqrt(disc)))
