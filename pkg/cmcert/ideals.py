"""
Fractional ideals of quartic fields and prime decomposition.

A :class:`FracIdeal` is ``(1/denom) * L`` where `L` is a full-rank lattice
in integral-basis coordinates, stored as its column-style HNF. Ideals are
kept normalised so equal ideals have identical ``(hnf, denom)`` pairs.
"""

from __future__ import division

from fractions import Fraction
from functools import reduce
import logging
import math

import mpmath
import sympy

from cmcert import intmat
from cmcert.ball import ComplexBall, pi_ball
from cmcert.polymod import ZPoly, factor_mod_p, roots_mod_p


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _common_denominator(vectors):
    return reduce(_lcm, (Fraction(c).denominator
                         for v in vectors for c in v), 1)


class FracIdeal(object):
    """Fractional ideal of the maximal order."""

    __slots__ = ('field', 'hnf', 'denom')

    def __init__(self, field, hnf, denom=1):
        content = reduce(math.gcd, (x for row in hnf for x in row), denom)
        self.field = field
        self.hnf = [[x // content for x in row] for row in hnf]
        self.denom = denom // content

    @classmethod
    def from_lattice(cls, field, vectors):
        """Ideal with the given Z-spanning vectors (already an O-module)."""
        denom = _common_denominator(vectors)
        cols = [[int(Fraction(c) * denom) for c in v] for v in vectors]
        return cls(field, intmat.hnf(intmat.from_columns(cols)), denom)

    @classmethod
    def from_generators(cls, field, elements):
        """O-module generated by the given field elements."""
        basis = field.basis_elements()
        vectors = [(a * w).coords for a in elements for w in basis]
        return cls.from_lattice(field, vectors)

    @classmethod
    def principal(cls, field, element):
        if element.is_zero():
            raise ZeroDivisionError("zero ideal")
        return cls.from_generators(field, [element])

    @classmethod
    def unit(cls, field):
        return cls(field, intmat.identity(4), 1)

    def basis(self):
        """Z-basis as field elements."""
        return [self.field.element([Fraction(c, self.denom) for c in col])
                for col in intmat.columns(self.hnf)]

    def basis_coords(self):
        return [[Fraction(c, self.denom) for c in col]
                for col in intmat.columns(self.hnf)]

    def __mul__(self, other):
        if not isinstance(other, FracIdeal):
            other = FracIdeal.principal(self.field, other)
        vectors = [(a * b).coords for a in self.basis()
                   for b in other.basis()]
        return FracIdeal.from_lattice(self.field, vectors)

    def __eq__(self, other):
        return (isinstance(other, FracIdeal) and self.denom == other.denom
                and self.hnf == other.hnf)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.denom, tuple(tuple(r) for r in self.hnf)))

    def norm(self):
        """Absolute norm as a Fraction."""
        return Fraction(int(intmat.det(self.hnf)), self.denom ** 4)

    def is_integral(self):
        return self.denom == 1

    def contains(self, element):
        vec = [c * self.denom for c in element.coords]
        if any(Fraction(c).denominator != 1 for c in vec):
            return False
        return intmat.lattice_contains(self.hnf, [int(c) for c in vec])

    def dual(self):
        """Trace dual ``{x : Tr(x I) in Z}``."""
        a = intmat.from_columns(self.basis_coords())
        gram_a = intmat.matmul(intmat.transpose(a), self.field.trace_gram)
        return FracIdeal.from_lattice(self.field,
                                      intmat.columns(intmat.inverse(gram_a)))

    def inv(self):
        """Inverse ideal, computed as ``(I * O^dual)^dual``."""
        return (self * self.field.codifferent()).dual()

    def __truediv__(self, other):
        return self * other.inv()

    __div__ = __truediv__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = FracIdeal.unit(self.field)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def apply(self, aut):
        """Image under an automorphism matrix."""
        vectors = [intmat.matvec(aut, v) for v in self.basis_coords()]
        return FracIdeal.from_lattice(self.field, vectors)

    def conj(self):
        return self.apply(self.field.conj)

    def scaled_integral(self):
        """``denom * I`` as an integral ideal."""
        return FracIdeal(self.field, self.hnf, 1)

    def serialize(self):
        return {'hnf': [[str(x) for x in row] for row in self.hnf],
                'denom': str(self.denom)}

    @classmethod
    def deserialize(cls, field, record):
        return cls(field, [[int(x) for x in row] for row in record['hnf']],
                   int(record['denom']))

    def __repr__(self):
        return "FracIdeal(norm={}, hnf={}, denom={})".format(
            self.norm(), self.hnf, self.denom)


class PrimeIdeal(object):
    """Prime ideal above `p` with ramification `e` and inertia `f`."""

    def __init__(self, p, e, f, ideal, anti=None):
        # pylint: disable=too-many-arguments
        self.p = p
        self.e = e
        self.f = f
        self.ideal = ideal
        self._anti = anti

    @property
    def norm(self):
        return self.p ** self.f

    @property
    def anti_uniformizer(self):
        """Element ``y`` of O with ``y P`` inside ``pO`` but ``y`` not."""
        if self._anti is None:
            self._anti = _anti_uniformizer(self.ideal, self.p)
        return self._anti

    def valuation_element(self, x):
        if x.is_zero():
            raise ValueError("valuation of zero")
        d = _common_denominator([x.coords])
        v = -self.e * _p_adic(d, self.p)
        x = x * d
        y = self.anti_uniformizer
        step = x * y * Fraction(1, self.p)
        while step.is_integral():
            v += 1
            x = step
            step = x * y * Fraction(1, self.p)
        return v

    def valuation(self, ideal):
        """Valuation of a fractional ideal at this prime."""
        return min(self.valuation_element(b) for b in ideal.basis())

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.ideal == other.ideal

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.ideal)

    def __repr__(self):
        return "PrimeIdeal(p={}, e={}, f={})".format(self.p, self.e, self.f)


def _p_adic(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _anti_uniformizer(ideal, p):
    field = ideal.field
    cols = [field.element(c) for c in intmat.columns(ideal.hnf)]
    action = []
    for w in field.basis_elements():
        images = []
        for b in cols:
            images.extend(int(c) % p for c in (w * b).coords)
        action.append(images)
    kernel = intmat.kernel_mod_p(intmat.transpose(action), p)
    if not kernel:
        raise ArithmeticError("no anti-uniformizer found")
    return field.element(kernel[0])


def _ideal_from_vectors(field, vectors):
    return FracIdeal(field, intmat.hnf(intmat.from_columns(vectors)), 1)


def _add_generator(ideal, element):
    """``J + element * O`` for an integral ideal J."""
    field = ideal.field
    vectors = intmat.columns(ideal.hnf)
    vectors += [(element * w).int_coords() for w in field.basis_elements()]
    return _ideal_from_vectors(field, vectors)


def p_radical(field, p):
    """Integral ideal ``{x : x^q in pO}`` with ``q = p^j >= 4``."""
    q = p
    while q < 4:
        q *= p
    images = []
    for w in field.basis_elements():
        images.append([int(c) % p for c in (w ** q).coords])
    kernel = intmat.kernel_mod_p(intmat.transpose(images), p)
    vectors = [[p * x for x in e] for e in intmat.identity(4)] + kernel
    return _ideal_from_vectors(field, vectors)


def _frobenius_fixed(ideal, p):
    """Elements x (mod p) with ``x^p - x`` in J."""
    field = ideal.field
    basis = field.basis_elements()
    jcols = [[c % p for c in col] for col in intmat.columns(ideal.hnf)]
    images = [[int(c) % p for c in ((w ** p) - w).coords] for w in basis]
    matrix = intmat.from_columns(images + jcols)
    kernel = intmat.kernel_mod_p(matrix, p)
    return [v[:4] for v in kernel]


def _rank_mod_p(vectors, p):
    if not vectors:
        return 0
    return 4 - len(intmat.kernel_mod_p(vectors, p))


def _split_semisimple(ideal, p):
    """Maximal ideals containing a radical ideal J (pO inside J)."""
    field = ideal.field
    xs = _frobenius_fixed(ideal, p)
    jcols = [[c % p for c in col] for col in intmat.columns(ideal.hnf)]
    base_rank = _rank_mod_p(jcols + [[1, 0, 0, 0]], p)
    splitter = None
    for x in xs:
        if _rank_mod_p(jcols + [[1, 0, 0, 0], x], p) > base_rank:
            splitter = field.element(x)
            break
    if splitter is None:
        return [ideal]
    # Minimal polynomial of the splitter modulo J
    powers = [[1, 0, 0, 0]]
    power = field.one
    while True:
        power = power * splitter
        powers.append([int(c) % p for c in power.coords])
        matrix = intmat.from_columns(powers + jcols)
        kernel = [v for v in intmat.kernel_mod_p(matrix, p)
                  if v[len(powers) - 1] % p]
        if kernel:
            v = kernel[0]
            lead_inv = pow(v[len(powers) - 1], p - 2, p)
            minpoly = ZPoly([(c * lead_inv) % p
                             for c in v[:len(powers)]])
            break
    result = []
    for c in roots_mod_p(minpoly, p):
        sub = _add_generator(ideal, splitter - c)
        result.extend(_split_semisimple(sub, p))
    return result


def split_prime(field, p, seed=0):
    """Decompose ``pO`` into prime ideals.

    Returns
    -------
    list of PrimeIdeal
        Sorted by inertia degree, then HNF.

    Raises
    ------
    ArithmeticError
        If the recovered ramification data does not satisfy ``sum e f = 4``.
    """
    if field.index % p:
        primes = _split_kummer(field, p, seed)
    else:
        primes = _split_general(field, p)
    primes.sort(key=lambda q: (q.f, q.ideal.hnf))
    if sum(q.e * q.f for q in primes) != 4:
        raise ArithmeticError("inconsistent splitting of {}".format(p))
    return primes


def _split_kummer(field, p, seed):
    theta = field.theta
    primes = []
    for g, e in factor_mod_p(field.poly, p, seed=seed):
        gen = g(theta)
        ideal = _add_generator(
            _ideal_from_vectors(field, [[p * x for x in col]
                                        for col in intmat.identity(4)]),
            gen)
        primes.append(PrimeIdeal(p, e, g.degree, ideal))
    return primes


def _split_general(field, p):
    radical = p_radical(field, p)
    primes = []
    for ideal in _split_semisimple(radical, p):
        f = _p_adic(int(intmat.det(ideal.hnf)), p)
        prime = PrimeIdeal(p, 0, f, ideal)
        prime.e = prime.valuation_element(field.from_rational(p))
        primes.append(prime)
    logging.debug("Split index divisor %d into %d primes", p, len(primes))
    return primes


def factor_ideal(ideal, primes_by_p):
    """Exponent map of an ideal over the given primes.

    Parameters
    ----------
    ideal : FracIdeal
    primes_by_p : dict
        Maps a rational prime to the list of primes above it.

    Returns
    -------
    dict or None
        Prime -> exponent, or None if the norm involves other primes.
    """
    norm = ideal.norm()
    rest = norm.numerator * norm.denominator
    candidates = sympy.factorint(rest) if rest > 1 else {}
    exps = {}
    for p in candidates:
        if p not in primes_by_p:
            return None
        for prime in primes_by_p[p]:
            v = prime.valuation(ideal)
            if v:
                exps[prime] = v
    check = Fraction(1)
    for prime, v in exps.items():
        check *= Fraction(prime.norm) ** v
    if check != norm:
        return None
    return exps


def minkowski_bound(field):
    """Certified rational upper bound of ``(3 / (2 pi^2)) sqrt(disc)``.

    Examples
    --------
    >>> class _Disc(object):
    ...     disc = 125
    >>> float(minkowski_bound(_Disc())) > 1.699
    True
    """
    prec = 64
    value = ComplexBall.exact(abs(field.disc), prec).sqrt() * 3 / \
        (pi_ball(prec).square() * 2)
    return value.upper_rational()


def minkowski_float(disc):
    return float(3 * mpmath.sqrt(abs(disc)) / (2 * mpmath.pi ** 2))
