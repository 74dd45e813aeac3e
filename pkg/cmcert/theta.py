"""
Theta constants of a reduced period point and the cusp form chi_10.

Characteristics ``(a, b)`` with ``a, b`` in {0, 1}^2 are numbered
``a1 + 2 a2 + 4 b1 + 8 b2``; the ten even ones are those with
``a . b = 0 mod 2``.
"""

from __future__ import division

from fractions import Fraction
import itertools
import logging

import mpmath

from cmcert.ball import ComplexBall, Undecidable


EVEN_INDICES = (0, 1, 2, 3, 4, 6, 8, 9, 12, 15)

NORMALIZATIONS = ('plain', 'scaled')

SCALED_FACTOR = Fraction(1, 2 ** 12)


def characteristic(index):
    """``(a1, a2, b1, b2)`` of a characteristic number.

    Examples
    --------
    >>> characteristic(9)
    (1, 0, 0, 1)
    """
    return (index & 1, (index >> 1) & 1, (index >> 2) & 1, (index >> 3) & 1)


def is_even(index):
    a1, a2, b1, b2 = characteristic(index)
    return (a1 * b1 + a2 * b2) % 2 == 0


def _smallest_eigenvalue_lower(point):
    """Rigorous lower bound of the smallest eigenvalue of Y."""
    with mpmath.workprec(point.prec):
        y1 = point.y1.mid.real
        y2 = point.y2.mid.real
        y12 = point.y12.mid.real
        rad = point.y1.rad + point.y2.rad + point.y12.rad
        lam = (y1 + y2 - mpmath.sqrt((y1 - y2) ** 2 + 4 * y12 ** 2)) / 2
        lam = lam * (1 - mpmath.ldexp(1, -point.prec // 2)) - 4 * rad
    if lam <= 0:
        raise Undecidable("Y is not certified positive definite")
    return lam


def tail_bound(lam, radius, prec):
    """Bound for the terms of a theta series outside ``|n_i| <= radius``.

    Every omitted ``v = n + a/2`` has ``max |v_i| >= radius``, at most
    ``8 r + 4`` of them share a value ``r`` of that norm, and the terms
    are bounded by ``exp(-pi lam |v|^2)``.
    """
    with mpmath.workprec(prec):
        k = mpmath.mpf(radius)
        q = mpmath.exp(-2 * mpmath.pi * lam * k)
        return mpmath.exp(-mpmath.pi * lam * k * k) * \
            ((8 * k + 8) / (1 - q) + 8 * q / (1 - q) ** 2)


def truncation_radius(point, prec=None):
    """Smallest radius whose tail is below ``2^-(prec + 8)``."""
    if prec is None:
        prec = point.prec
    lam = _smallest_eigenvalue_lower(point)
    target = mpmath.ldexp(1, -(prec + 8))
    radius = 1
    while tail_bound(lam, radius, prec) >= target:
        radius += 1
    return radius, tail_bound(lam, radius, prec)


def theta_constant(point, index, prec=None, radius=None):
    """Enclosure of ``theta[a; b](Z)`` for the characteristic `index`.

    ``sum over n of exp(pi i (n + a/2)^t Z (n + a/2) + pi i (n + a/2)^t b)``
    """
    if prec is None:
        prec = point.prec
    if radius is None:
        radius, tail = truncation_radius(point, prec)
    else:
        tail = tail_bound(_smallest_eigenvalue_lower(point), radius, prec)
    a1, a2, b1, b2 = characteristic(index)
    z1, z12, z2 = point.z1, point.z12, point.z2
    total = ComplexBall(0, 0, prec)
    for n1, n2 in itertools.product(range(-radius, radius + 1), repeat=2):
        v1 = Fraction(2 * n1 + a1, 2)
        v2 = Fraction(2 * n2 + a2, 2)
        exponent = z1 * (v1 * v1) + z12 * (2 * v1 * v2) + z2 * (v2 * v2) \
            + (v1 * b1 + v2 * b2)
        total = total + exponent.exp_pi_i()
    return total + ComplexBall(0, tail, prec)


def theta_constants(point, prec=None):
    """The ten even theta constants as a dict keyed by characteristic."""
    if prec is None:
        prec = point.prec
    radius, _ = truncation_radius(point, prec)
    logging.debug("Theta series truncated at radius %d", radius)
    return {index: theta_constant(point, index, prec, radius)
            for index in EVEN_INDICES}


def chi10(thetas, normalization='plain'):
    """``prod theta^2`` over the even characteristics.

    With ``normalization='scaled'`` the product is multiplied by 2^-12.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError("unknown normalization {!r}".format(normalization))
    product = None
    for index in EVEN_INDICES:
        square = thetas[index].square()
        product = square if product is None else product * square
    if normalization == 'scaled':
        product = product * SCALED_FACTOR
    return product


def vanishing_constants(thetas):
    """Characteristics whose theta constant may vanish."""
    return [index for index in EVEN_INDICES
            if thetas[index].is_nonzero() is not True]
