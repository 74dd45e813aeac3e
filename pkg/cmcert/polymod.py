"""
Univariate integer polynomials and factorisation modulo primes.

Coefficient lists run from the constant term upwards. Arithmetic modulo a
prime is delegated to :mod:`sympy.polys.galoistools`, which stores
coefficients from the leading term downwards; the helpers in this module
convert between the two orders.
"""

from __future__ import division

import logging
from fractions import Fraction

import numpy as np
import sympy
from sympy.polys import galoistools as gf
from sympy.polys.domains import ZZ


class CompositeModulus(Exception):
    """Raised when factoring modulo a number that is not prime."""
    def __init__(self, modulus):
        Exception.__init__(self)
        self.modulus = modulus

    def __str__(self):
        return "{} is not prime".format(self.modulus)


_X = sympy.Symbol('x')


class ZPoly(object):
    """Polynomial with integer coefficients, constant term first."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_sympy(cls, poly):
        poly = sympy.Poly(poly, _X)
        return cls(reversed([int(c) for c in poly.all_coeffs()]))

    @property
    def degree(self):
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def is_monic(self):
        return self.leading == 1

    def __eq__(self, other):
        return isinstance(other, ZPoly) and self.coeffs == other.coeffs

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, value):
        """Horner evaluation; works for any ring supporting + and *."""
        result = None
        for c in reversed(self.coeffs):
            result = c if result is None else result * value + c
        return result

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return ZPoly([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ZPoly([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def derivative(self):
        return ZPoly([i * c for i, c in enumerate(self.coeffs)][1:] or [0])

    def to_sympy(self):
        return sympy.Poly(list(reversed(self.coeffs)), _X, domain='ZZ')

    def discriminant(self):
        return int(sympy.discriminant(self.to_sympy()))

    def is_irreducible(self):
        return bool(self.to_sympy().is_irreducible)

    def count_real_roots(self):
        return int(self.to_sympy().count_roots())

    def substitute_scaled(self, a, b):
        """Return the polynomial of ``(x - b) / a`` scaled to be monic.

        That is, the minimal-polynomial transform of ``a*theta + b`` when
        `self` is the minimal polynomial of theta.
        """
        a = Fraction(a)
        b = Fraction(b)
        poly = sympy.Poly(self.to_sympy().as_expr().subs(_X, (_X - b) / a),
                          _X, domain='QQ')
        poly = poly.monic()
        coeffs = [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError("transformed polynomial is not integral")
        return ZPoly(reversed([int(c) for c in coeffs]))

    def mod(self, p):
        """Coefficients modulo p in galoistools order."""
        return gf.gf_from_int_poly(list(reversed(self.coeffs)), p)

    def serialize(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def deserialize(cls, strings):
        return cls(int(s) for s in strings)

    def __repr__(self):
        return "ZPoly({})".format(list(self.coeffs))

    def __str__(self):
        return str(self.to_sympy().as_expr())


def from_gf(coeffs):
    """Convert a galoistools coefficient list to a ZPoly (nonnegative)."""
    return ZPoly(reversed([int(c) for c in coeffs]))


def _random_gf(degree, p, rng):
    coeffs = [int(c) for c in rng.randint(0, p, size=degree + 1)]
    coeffs[0] = 1
    return gf.gf_strip([ZZ(c) for c in coeffs])


def _split_equal_degree(f, d, p, rng):
    """Split a product of distinct monic irreducibles of degree d."""
    n = gf.gf_degree(f)
    if n == d:
        return [f]
    while True:
        a = _random_gf(n - 1, p, rng)
        if p == 2:
            # Trace map a + a^2 + ... + a^(2^(d-1)) modulo f
            term = gf.gf_rem(a, f, p, ZZ)
            acc = term
            for _ in range(d - 1):
                term = gf.gf_pow_mod(term, 2, f, p, ZZ)
                acc = gf.gf_add(acc, term, p, ZZ)
            g = acc
        else:
            e = (p ** d - 1) // 2
            g = gf.gf_sub_ground(gf.gf_pow_mod(a, e, f, p, ZZ), ZZ(1), p, ZZ)
        h = gf.gf_gcd(f, g, p, ZZ)
        if 0 < gf.gf_degree(h) < n:
            break
    h = gf.gf_monic(h, p, ZZ)[1]
    rest = gf.gf_quo(f, h, p, ZZ)
    return (_split_equal_degree(h, d, p, rng)
            + _split_equal_degree(rest, d, p, rng))


def factor_mod_p(f, p, seed=0):
    """Factor an integer polynomial modulo a prime.

    Square-free decomposition, then distinct-degree splitting, then a
    randomised equal-degree split seeded by `seed`.

    Parameters
    ----------
    f : ZPoly
    p : int
        Prime modulus.
    seed : int or :class:`numpy.random.RandomState`

    Returns
    -------
    list of (ZPoly, int)
        Monic irreducible factors (coefficients in ``[0, p)``) with their
        multiplicities, sorted by degree and then coefficients.

    Raises
    ------
    CompositeModulus
        If `p` is not prime.
    ValueError
        If `f` vanishes modulo `p`.

    Examples
    --------
    >>> [(g.coeffs, e) for g, e in factor_mod_p(ZPoly([1, 0, 1]), 2)]
    [((1, 1), 2)]
    """
    if not sympy.isprime(p):
        raise CompositeModulus(p)
    if isinstance(seed, np.random.RandomState):
        rng = seed
    else:
        rng = np.random.RandomState(seed)
    fp = f.mod(p)
    if not fp:
        raise ValueError("polynomial vanishes modulo {}".format(p))
    if gf.gf_degree(fp) == 0:
        return []
    _, sqf = gf.gf_sqf_list(gf.gf_monic(fp, p, ZZ)[1], p, ZZ)
    factors = []
    for part, mult in sqf:
        for block, d in gf.gf_ddf_zassenhaus(part, p, ZZ):
            for g in _split_equal_degree(block, d, p, rng):
                factors.append((from_gf(g), mult))
    factors.sort(key=lambda item: (item[0].degree, item[0].coeffs, item[1]))
    logging.debug("Factored %s mod %d into %d factors", f, p, len(factors))
    return factors


def cyclotomic(n):
    """The n-th cyclotomic polynomial."""
    return ZPoly.from_sympy(sympy.cyclotomic_poly(n, _X))


def roots_mod_p(f, p):
    """Roots of `f` in GF(p), sorted."""
    return sorted((-g.coeffs[0]) % p
                  for g, _ in factor_mod_p(f, p) if g.degree == 1)
