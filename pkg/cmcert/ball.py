"""
Complex ball arithmetic on top of mpmath.

A ball is a midpoint (an mpmath ``mpc``) together with an absolute error
radius. Every operation returns a ball that contains the exact image of all
points of its input balls. Rounding errors of the midpoint computation are
folded into the radius.

Predicates on balls are three-valued: ``True`` and ``False`` are certified,
``None`` means the radii are too large to decide.
"""

from __future__ import division

import logging
from fractions import Fraction
import numbers

import mpmath


DEFAULT_PREC = 128


class Error(Exception):
    """Base class for ball-arithmetic exceptions."""
    pass


class Undecidable(Error):
    """A predicate could not be decided from the ball radii."""
    pass


class PrecisionExhausted(Error):
    """Retrying at doubled precision did not settle a computation."""
    def __init__(self, prec_cap, msg=''):
        Error.__init__(self)
        self.prec_cap = prec_cap
        self.msg = msg

    def __str__(self):
        return "precision cap of {} bits reached: {}".format(self.prec_cap,
                                                              self.msg)


def mpf_to_fraction(value):
    """Exact Fraction equal to an mpmath real."""
    if not isinstance(value, mpmath.mpf):
        value = mpmath.mpf(value)
    num, den = mpmath.libmp.to_rational(value._mpf_)
    # gmpy2 integers do not mix with Fraction arithmetic
    return Fraction(int(num), int(den))


def _slack(value, prec):
    """Bound on the rounding error of a result computed at `prec` bits."""
    return (abs(value.real) + abs(value.imag)) * mpmath.ldexp(1, 3 - prec)


def _inflate(rad, prec):
    return rad * (1 + mpmath.ldexp(1, 4 - prec))


class ComplexBall(object):
    """Closed disc ``{z : |z - mid| <= rad}``."""
    __slots__ = ('mid', 'rad', 'prec')

    def __init__(self, mid, rad=0, prec=None):
        if prec is None:
            prec = DEFAULT_PREC
        self.prec = prec
        with mpmath.workprec(prec):
            self.mid = mpmath.mpc(mid)
            self.rad = mpmath.mpf(rad)
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def exact(cls, value, prec=None):
        """Enclose an int, Fraction or mpmath number."""
        if prec is None:
            prec = DEFAULT_PREC
        if isinstance(value, ComplexBall):
            return value
        if isinstance(value, Fraction) or isinstance(value, numbers.Integral):
            value = Fraction(value)
            with mpmath.workprec(prec):
                mid = mpmath.mpf(value.numerator) / value.denominator
                if value.denominator == 1 and \
                        mpmath.mpf(value.numerator) == value.numerator:
                    rad = 0
                else:
                    rad = abs(mid) * mpmath.ldexp(1, 2 - prec)
            return cls(mid, rad, prec)
        if isinstance(value, float):
            return cls(mpmath.mpf(value), 0, prec)
        with mpmath.workprec(prec):
            mid = mpmath.mpc(value)
        return cls(mid, 0, prec)

    # Accessors

    @property
    def real(self):
        return ComplexBall(self.mid.real, self.rad, self.prec)

    @property
    def imag(self):
        return ComplexBall(self.mid.imag, self.rad, self.prec)

    def conjugate(self):
        with mpmath.workprec(self.prec):
            mid = self.mid.conjugate()
        return ComplexBall(mid, self.rad, self.prec)

    def lower(self):
        """Lower bound of the real part, computed without rounding."""
        return mpmath.fsub(self.mid.real, self.rad, exact=True)

    def upper(self):
        """Upper bound of the real part, computed without rounding."""
        return mpmath.fadd(self.mid.real, self.rad, exact=True)

    def lower_rational(self):
        """Exact rational lower bound of the real part."""
        return mpf_to_fraction(self.mid.real) - mpf_to_fraction(self.rad)

    def upper_rational(self):
        """Exact rational upper bound of the real part."""
        return mpf_to_fraction(self.mid.real) + mpf_to_fraction(self.rad)

    def _abs_mid(self):
        """Lower and upper bounds of the modulus of the midpoint."""
        with mpmath.workprec(self.prec + 10):
            value = abs(self.mid)
            err = value * mpmath.ldexp(1, -self.prec)
            return value - err, value + err

    def mag(self):
        """Upper bound of the modulus."""
        return mpmath.fadd(self._abs_mid()[1], self.rad, exact=True)

    def mig(self):
        """Lower bound of the modulus."""
        low = mpmath.fsub(self._abs_mid()[0], self.rad, exact=True)
        return max(low, mpmath.mpf(0))

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, ComplexBall):
            return other
        return ComplexBall.exact(other, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        with mpmath.workprec(prec):
            mid = self.mid + other.mid
            rad = _inflate(self.rad + other.rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    __radd__ = __add__

    def __neg__(self):
        with mpmath.workprec(self.prec):
            mid = -self.mid
        return ComplexBall(mid, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        with mpmath.workprec(prec):
            mid = self.mid * other.mid
            rad = (abs(self.mid) * other.rad + abs(other.mid) * self.rad
                   + self.rad * other.rad)
            rad = _inflate(rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    __rmul__ = __mul__

    def inverse(self):
        """Enclosure of 1/z; raises Undecidable if the ball contains 0."""
        prec = self.prec
        absmid = self._abs_mid()[0]
        with mpmath.workprec(prec):
            if absmid <= self.rad:
                raise Undecidable("inverse of a ball containing zero")
            mid = 1 / self.mid
            rad = self.rad / (absmid * (absmid - self.rad))
            rad = _inflate(rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    __div__ = __truediv__

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    __rdiv__ = __rtruediv__

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Integral):
            raise TypeError("only integer powers are supported")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ComplexBall(1, 0, self.prec)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def square(self):
        return self * self

    # Elementary functions

    def exp(self):
        prec = self.prec
        with mpmath.workprec(prec + 10):
            mid = mpmath.exp(self.mid)
            rad = abs(mid) * mpmath.expm1(self.rad)
        with mpmath.workprec(prec):
            mid = +mid
            rad = _inflate(rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    def exp_pi_i(self):
        """Enclosure of exp(i*pi*z)."""
        prec = self.prec
        with mpmath.workprec(prec + 10):
            arg = mpmath.mpc(0, 1) * mpmath.pi * self.mid
            mid = mpmath.exp(arg)
            # pi is rounded at prec + 10 bits
            pi_err = abs(self.mid) * mpmath.ldexp(1, -prec)
            rad = abs(mid) * mpmath.expm1(mpmath.pi * self.rad * 2 + pi_err)
        with mpmath.workprec(prec):
            mid = +mid
            rad = _inflate(rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    def log(self):
        """Principal logarithm; the ball must avoid the branch cut."""
        prec = self.prec
        absmid = self._abs_mid()[0]
        with mpmath.workprec(prec + 10):
            if absmid <= self.rad:
                raise Undecidable("log of a ball containing zero")
            if self.mid.real < 0 and abs(self.mid.imag) <= self.rad:
                raise Undecidable("log of a ball meeting the branch cut")
            mid = mpmath.log(self.mid)
            rad = -mpmath.log1p(-self.rad / absmid)
        with mpmath.workprec(prec):
            mid = +mid
            rad = _inflate(rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    def sqrt(self):
        """Principal square root of a ball inside the right half-plane."""
        prec = self.prec
        with mpmath.workprec(prec + 10):
            if self.mid.real <= self.rad:
                raise Undecidable("sqrt of a ball leaving the right "
                                  "half-plane")
            mid = mpmath.sqrt(self.mid)
            rad = self.rad / mpmath.sqrt(abs(self.mid))
        with mpmath.workprec(prec):
            mid = +mid
            rad = _inflate(rad, prec) + _slack(mid, prec)
        return ComplexBall(mid, rad, prec)

    def abs(self):
        """Real ball enclosing |z|."""
        prec = self.prec
        with mpmath.workprec(prec):
            mid = abs(self.mid)
            rad = _inflate(self.rad, prec) + _slack(mpmath.mpc(mid), prec)
        return ComplexBall(mid, rad, prec)

    def log_abs(self):
        """Real ball enclosing log|z|."""
        return self.abs().log().real

    # Predicates

    def contains(self, value):
        if isinstance(value, ComplexBall):
            with mpmath.workprec(max(self.prec, value.prec)):
                return abs(self.mid - value.mid) + value.rad <= self.rad
        if isinstance(value, Fraction) or isinstance(value, numbers.Integral):
            value = Fraction(value)
            with mpmath.workprec(self.prec + 64):
                point = mpmath.mpf(value.numerator) / value.denominator
                return abs(self.mid - point) <= self.rad
        with mpmath.workprec(self.prec + 64):
            return abs(self.mid - mpmath.mpc(value)) <= self.rad

    def overlaps(self, other):
        other = self._coerce(other)
        with mpmath.workprec(max(self.prec, other.prec)):
            return abs(self.mid - other.mid) <= self.rad + other.rad

    def contains_integer(self):
        """Whether the real segment of the ball meets the integers."""
        with mpmath.workprec(self.prec):
            if abs(self.mid.imag) > self.rad:
                return False
            return mpmath.floor(self.upper()) >= mpmath.ceil(self.lower())

    def gt(self, other):
        """Certified comparison of real parts: self > other."""
        diff = self - self._coerce(other)
        if diff.lower() > 0:
            return True
        if diff.upper() <= 0:
            return False
        return None

    def lt(self, other):
        return self._coerce(other).gt(self)

    def ge(self, other):
        """Certified comparison of real parts: self >= other."""
        diff = self - self._coerce(other)
        if diff.lower() >= 0:
            return True
        if diff.upper() < 0:
            return False
        return None

    def le(self, other):
        return self._coerce(other).ge(self)

    def is_nonzero(self):
        if self.mig() > 0:
            return True
        if self.mid == 0 and self.rad == 0:
            return False
        return None

    # Conversion

    def __complex__(self):
        return complex(self.mid)

    def __float__(self):
        return float(self.mid.real)

    def rel_accuracy_bits(self):
        """Roughly how many bits of the midpoint are correct."""
        if self.rad == 0:
            return self.prec
        if self.mid == 0:
            return -int(mpmath.log(self.rad, 2))
        return int(mpmath.log(abs(self.mid) / self.rad, 2))

    def serialize(self):
        """Decimal-string representation that keeps the enclosure valid."""
        digits = int(self.prec * 0.30103) + 3
        with mpmath.workprec(self.prec):
            return {
                're': mpmath.nstr(self.mid.real, digits),
                'im': mpmath.nstr(self.mid.imag, digits),
                'rad': mpmath.nstr(self.rad * (1 + mpmath.ldexp(1, -20)), 8),
                'prec': self.prec,
            }

    @classmethod
    def deserialize(cls, record):
        prec = int(record['prec'])
        digits = int(prec * 0.30103) + 3
        with mpmath.workprec(prec):
            mid = mpmath.mpc(mpmath.mpf(record['re']),
                             mpmath.mpf(record['im']))
            rad = mpmath.mpf(record['rad'])
            # printing dropped digits beyond `digits`
            rad += (abs(mid.real) + abs(mid.imag)) * \
                mpmath.mpf(10) ** (2 - digits)
        return cls(mid, rad, prec)

    def __repr__(self):
        return "ComplexBall({} +/- {})".format(
            mpmath.nstr(self.mid, 15), mpmath.nstr(self.rad, 3))


def exp_pi_i(q, prec=None):
    """Certified enclosure of exp(i*pi*q).

    Examples
    --------
    >>> abs(complex(exp_pi_i(1)) + 1) < 1e-30
    True
    """
    if not isinstance(q, ComplexBall):
        q = ComplexBall.exact(q, prec)
    return q.exp_pi_i()


def pi_ball(prec=None):
    if prec is None:
        prec = DEFAULT_PREC
    with mpmath.workprec(prec):
        mid = +mpmath.pi
    return ComplexBall(mid, mpmath.ldexp(4, -prec), prec)


def real_ball(value, prec=None):
    """Ball around a real value given as Fraction, int or decimal string."""
    if isinstance(value, str):
        value = Fraction(value)
    return ComplexBall.exact(value, prec)


def with_precision_retry(func, prec, prec_cap):
    """Call ``func(prec)``, doubling `prec` on Undecidable up to `prec_cap`.

    Raises
    ------
    PrecisionExhausted
        If the call is still undecidable at `prec_cap` bits.
    """
    while True:
        try:
            return func(prec)
        except Undecidable as exc:
            if prec >= prec_cap:
                raise PrecisionExhausted(prec_cap, str(exc))
            logging.debug("Undecidable at %d bits (%s), retrying at %d",
                          prec, exc, min(2 * prec, prec_cap))
            prec = min(2 * prec, prec_cap)
