"""
Cyclic quartic CM fields.

A :class:`CMField` is built from a monic irreducible quartic by
:func:`maximal_order`. Elements are :class:`NFElement` objects carrying
exact rational coordinates in the integral basis; multiplication goes
through integer structure constants.

Embeddings are ordered ``(phi, conj phi, phi o sigma, conj phi o sigma)``
where `phi` sends the defining root to the root with the largest imaginary
part and `sigma` generates the Galois group.
"""

from __future__ import division

from collections import namedtuple
from fractions import Fraction
import itertools
import logging

import mpmath
import sympy

from cmcert import intmat
from cmcert import ideals
from cmcert import realquad
from cmcert.ball import ComplexBall, Undecidable
from cmcert.polymod import ZPoly, cyclotomic


class Error(Exception):
    """Base class for number-field exceptions."""
    pass


class NotCM(Error):
    """The defining polynomial has a real root."""
    def __init__(self, poly):
        Error.__init__(self)
        self.poly = poly

    def __str__(self):
        return "{} has a real root".format(self.poly)


class NotCyclic(Error):
    """The field is not a cyclic Galois extension of Q."""
    def __init__(self, poly, msg=''):
        Error.__init__(self)
        self.poly = poly
        self.msg = msg

    def __str__(self):
        return "{} does not define a cyclic quartic field: {}".format(
            self.poly, self.msg)


CMType = namedtuple('CMType', 'a b')

# phi_k o sigma = phi_SIGMA_ON_EMBEDDINGS[k]
SIGMA_ON_EMBEDDINGS = (2, 3, 1, 0)


def _power_mul(a, b, f):
    """Multiply two power-basis coordinate vectors modulo monic `f`."""
    n = len(f.coeffs) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in reversed(range(n, 2 * n - 1)):
        c = prod[d]
        if c:
            for k in range(n + 1):
                prod[d - n + k] -= c * f.coeffs[k]
    return prod[:n]


def _structure_constants(basis, basis_inv, f):
    """``T[i][j]`` = coordinates of ``w_i * w_j`` in the basis."""
    n = len(basis)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            power = _power_mul(basis[i], basis[j], f)
            row.append(intmat.matvec(basis_inv, power))
        table.append(row)
    return table


def _mul_coords(a, b, table):
    n = len(a)
    out = [0] * n
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            xy = x * y
            tij = table[i][j]
            for k in range(n):
                if tij[k]:
                    out[k] += xy * tij[k]
    return out


def _pow_coords_mod(a, e, table, p):
    n = len(a)
    result = [1] + [0] * (n - 1)
    base = [x % p for x in a]
    while e:
        if e & 1:
            result = [x % p for x in _mul_coords(result, base, table)]
        base = [x % p for x in _mul_coords(base, base, table)]
        e >>= 1
    return result


def _int_table(table):
    out = []
    for row in table:
        out_row = []
        for coords in row:
            if any(Fraction(c).denominator != 1 for c in coords):
                raise ArithmeticError("basis does not span an order")
            out_row.append([int(c) for c in coords])
        out.append(out_row)
    return out


def _enlarge_at(basis, table, f, p):
    """One round-2 step at `p`; returns a larger order or None."""
    n = len(basis)
    q = p
    while q < n:
        q *= p
    # p-radical: kernel of the Frobenius power on O/pO
    frob = intmat.transpose([_pow_coords_mod(e, q, table, p)
                             for e in intmat.identity(n)])
    radical = intmat.kernel_mod_p(frob, p)
    gens = [[p * x for x in e] for e in intmat.identity(n)] + radical
    ideal = intmat.hnf(intmat.from_columns(gens))
    ideal_cols = intmat.columns(ideal)

    # Multiplier ring: kernel of O/pO -> End(I/pI)
    action = []
    for e in intmat.identity(n):
        images = []
        for b in ideal_cols:
            coords = intmat.lattice_coordinates(ideal,
                                                _mul_coords(e, b, table))
            images.extend(c % p for c in coords)
        action.append(images)
    rows = intmat.transpose(action)
    kernel = intmat.kernel_mod_p(rows, p)
    if not kernel:
        return None
    gens = [[p * x for x in e] for e in intmat.identity(n)] + kernel
    lattice = intmat.hnf(intmat.from_columns(gens))
    new_basis = []
    for k in range(n):
        vec = [Fraction(0)] * n
        for i in range(n):
            if lattice[i][k]:
                vec = [v + Fraction(lattice[i][k], p) * w
                       for v, w in zip(vec, basis[i])]
        new_basis.append(vec)
    return new_basis


def _order_data(basis, f):
    basis_inv = intmat.inverse(intmat.from_columns(basis))
    table = _int_table(_structure_constants(basis, basis_inv, f))
    return basis_inv, table


def _traces(table):
    n = len(table)
    return [sum(table[k][i][i] for i in range(n)) for k in range(n)]


def _trace_gram(table, traces):
    n = len(table)
    return [[sum(table[i][j][k] * traces[k] for k in range(n))
             for j in range(n)] for i in range(n)]


def integral_basis(f):
    """Round-2 maximal order of ``Q[x]/f`` as power-basis coordinates."""
    n = f.degree
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    _, table = _order_data(basis, f)
    disc_f = f.discriminant()
    for p, e in sorted(sympy.factorint(abs(disc_f)).items()):
        if e < 2:
            continue
        while True:
            bigger = _enlarge_at(basis, table, f, p)
            if bigger is None:
                break
            basis = bigger
            _, table = _order_data(basis, f)
            logging.debug("Enlarged order at p=%d", p)
    return basis


def certified_roots(f, prec):
    """Disjoint complex balls, each containing exactly one root of `f`."""
    n = f.degree
    high_to_low = list(reversed(f.coeffs))
    with mpmath.workprec(prec):
        mids = mpmath.polyroots(high_to_low, maxsteps=100 + prec,
                                extraprec=prec)
    deriv = f.derivative()
    balls = []
    for mid in mids:
        point = ComplexBall(mid, 0, prec)
        value = f(point)
        slope = deriv(point)
        if slope.mig() == 0:
            raise Undecidable("derivative vanishes near a root")
        with mpmath.workprec(prec):
            rad = n * value.mag() / slope.mig() * \
                (1 + mpmath.ldexp(1, 4 - prec))
        balls.append(ComplexBall(mid, rad, prec))
    for a, b in itertools.combinations(balls, 2):
        if a.overlaps(b):
            raise Undecidable("root enclosures overlap")
    return balls


def _order_roots(balls, f):
    """Sort roots as (rho0, conj rho0, rho2, conj rho2)."""
    upper = [b for b in balls if b.mid.imag > 0]
    if len(upper) != 2:
        raise NotCM(f)

    first, second = upper
    gap = first.mid.imag - second.mid.imag
    if abs(gap) <= first.rad + second.rad:
        if second.mid.real > first.mid.real:
            first, second = second, first
    elif gap < 0:
        first, second = second, first

    def partner(ball):
        target = ball.conjugate()
        return min(balls, key=lambda b: abs(b.mid - target.mid))
    return [first, partner(first), second, partner(second)]


class NFElement(object):
    """Element of a quartic field in integral-basis coordinates."""

    __slots__ = ('field', 'coords')

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)

    def _lift(self, other):
        if isinstance(other, NFElement):
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        other = self._lift(other)
        return NFElement(self.field, [a + b for a, b in zip(self.coords,
                                                              other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, NFElement):
            other = Fraction(other)
            return NFElement(self.field, [a * other for a in self.coords])
        return NFElement(self.field, _mul_coords(self.coords, other.coords,
                                                 self.field.table))

    __rmul__ = __mul__

    def mult_matrix(self):
        """Matrix of multiplication by self (columns = images of basis)."""
        cols = [_mul_coords(self.coords, e, self.field.table)
                for e in intmat.identity(4)]
        return intmat.from_columns(cols)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return NFElement(self.field,
                         intmat.solve(self.mult_matrix(), [1, 0, 0, 0]))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    __div__ = __truediv__

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    __rdiv__ = __rtruediv__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, NFElement):
            other = self.field.from_rational(other)
        return self.coords == other.coords

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self):
        if not self.is_integral():
            raise ValueError("element is not integral")
        return [int(c) for c in self.coords]

    def trace(self):
        return sum(c * t for c, t in zip(self.coords, self.field.traces))

    def norm(self):
        return intmat.det(self.mult_matrix())

    def charpoly(self):
        """Characteristic polynomial as a sympy Poly over QQ."""
        matrix = sympy.Matrix(self.mult_matrix())
        return sympy.Poly(matrix.charpoly(sympy.Symbol('x')).as_expr(),
                          sympy.Symbol('x'), domain='QQ')

    def apply(self, aut):
        """Image under an automorphism given as an integer matrix."""
        return NFElement(self.field, intmat.matvec(aut, self.coords))

    def conj(self):
        return self.apply(self.field.conj)

    def embed(self, k, prec):
        """Ball enclosing the image under embedding `k`."""
        table = self.field.basis_embeddings(prec)[k]
        total = ComplexBall(0, 0, prec)
        for c, ball in zip(self.coords, table):
            if c:
                total = total + ball * c
        return total

    def embeddings(self, prec):
        return [self.embed(k, prec) for k in range(4)]

    def serialize(self):
        return [str(c) for c in self.coords]

    def __repr__(self):
        return "NFElement({})".format([str(c) for c in self.coords])


class CMField(object):
    """A quartic field with its maximal order and, if cyclic CM, Galois data.

    Attributes
    ----------
    poly : ZPoly
    basis : list of lists of Fraction
        Integral basis in power-basis coordinates; ``basis[0]`` is 1.
    table : list
        Integer structure constants.
    disc : int
        Field discriminant.
    sigma, conj : list of lists of int
        Generator of the Galois group and complex conjugation as matrices
        acting on coordinate vectors.
    """
    # pylint: disable=too-many-instance-attributes

    def __init__(self, poly, basis):
        self.poly = poly
        self.basis = basis
        self.basis_inv, self.table = _order_data(basis, poly)
        self.traces = _traces(self.table)
        self.trace_gram = _trace_gram(self.table, self.traces)
        self.disc = int(intmat.det(self.trace_gram))
        self.index = _isqrt_exact(abs(Fraction(poly.discriminant(),
                                               self.disc)))
        self._embedding_cache = {}
        self._roots_cache = {}
        self._cache = {}
        self.sigma = None
        self.conj = None
        self.automorphisms = None
        self.subfield = None
        self.sqrt_disc_F = None
        self.eps = None
        self.w = None
        self.zeta = None
        self.unit_index = None
        self.eta = None
        self.conductor = None

    # Element constructors

    def element(self, coords):
        return NFElement(self, coords)

    def from_rational(self, value):
        return NFElement(self, [Fraction(value), 0, 0, 0])

    def from_power(self, coeffs):
        coeffs = list(coeffs) + [0] * (4 - len(coeffs))
        return NFElement(self, intmat.matvec(self.basis_inv,
                                             [Fraction(c) for c in coeffs]))

    @property
    def one(self):
        return self.from_rational(1)

    @property
    def zero(self):
        return self.from_rational(0)

    @property
    def theta(self):
        return self.from_power([0, 1, 0, 0])

    def basis_elements(self):
        return [NFElement(self, e) for e in intmat.identity(4)]

    # Embeddings

    def roots(self, prec):
        if prec not in self._roots_cache:
            balls = certified_roots(self.poly, prec)
            self._roots_cache[prec] = _order_roots(balls, self.poly)
        return self._roots_cache[prec]

    def basis_embeddings(self, prec):
        """``table[k][i]`` encloses the image of basis element i under k."""
        if prec not in self._embedding_cache:
            table = []
            for root in self.roots(prec):
                row = []
                for vec in self.basis:
                    total = ComplexBall(0, 0, prec)
                    power = ComplexBall(1, 0, prec)
                    for c in vec:
                        if c:
                            total = total + power * c
                        power = power * root
                    row.append(total)
                table.append(row)
            self._embedding_cache[prec] = table
        return self._embedding_cache[prec]

    def element_from_embeddings(self, values, prec=128):
        """Integral element with (approximately) the given images, or None.

        `values` are complex numbers for embeddings 0 and 2; embeddings 1
        and 3 are their complex conjugates.
        """
        v0, v2 = values
        targets = [v0, mpmath.conj(v0), v2, mpmath.conj(v2)]
        table = self.basis_embeddings(prec)
        with mpmath.workprec(prec):
            matrix = mpmath.matrix([[table[k][i].mid for i in range(4)]
                                    for k in range(4)])
            try:
                sol = mpmath.lu_solve(matrix, mpmath.matrix(targets))
            except ZeroDivisionError:
                return None
            coords = []
            for i in range(4):
                c = sol[i]
                r = int(mpmath.nint(c.real))
                if abs(c - r) > mpmath.mpf(1) / 4:
                    return None
                coords.append(r)
        return NFElement(self, coords)

    def roots_in_field(self, g, prec=128):
        """All roots in the field of the integer polynomial `g`."""
        with mpmath.workprec(prec):
            candidates = mpmath.polyroots(list(reversed(g.coeffs)),
                                          maxsteps=100 + prec,
                                          extraprec=prec)
        found = []
        for r0, r2 in itertools.product(candidates, repeat=2):
            alpha = self.element_from_embeddings((r0, r2), prec)
            if alpha is not None and g(alpha).is_zero() and \
                    alpha not in found:
                found.append(alpha)
        return found

    def sqrt(self, gamma, prec=128):
        """A square root of `gamma` in the field, or None."""
        with mpmath.workprec(prec):
            s0 = mpmath.sqrt(gamma.embed(0, prec).mid)
            s2 = mpmath.sqrt(gamma.embed(2, prec).mid)
        for a, b in itertools.product((1, -1), repeat=2):
            eta = self.element_from_embeddings((a * s0, b * s2), prec)
            if eta is not None and eta * eta == gamma:
                return eta
        return None

    # Galois structure

    def _init_galois(self):
        prec = 128
        roots = self.roots(prec)
        targets = (roots[2].mid, roots[1].mid)
        alpha = self.element_from_embeddings(targets, prec)
        if alpha is None or not self.poly(alpha).is_zero():
            raise NotCyclic(self.poly, "no automorphism sending phi to "
                                       "phi o sigma")
        powers = [self.one]
        for _ in range(3):
            powers.append(powers[-1] * alpha)
        sigma_cols = []
        for vec in self.basis:
            image = self.zero
            for c, power in zip(vec, powers):
                if c:
                    image = image + power * c
            sigma_cols.append(image.int_coords())
        sigma = intmat.from_columns(sigma_cols)
        sigma2 = intmat.matmul(sigma, sigma)
        sigma4 = intmat.matmul(sigma2, sigma2)
        if sigma2 == intmat.identity(4) or sigma4 != intmat.identity(4):
            raise NotCyclic(self.poly, "Galois group is not cyclic")
        self.sigma = sigma
        self.conj = sigma2
        sigma3 = intmat.matmul(sigma2, sigma)
        # phi_0 o automorphisms[k] = phi_k
        self.automorphisms = [intmat.identity(4), sigma2, sigma, sigma3]
        logging.debug("Galois generator found for %s", self.poly)

    def _init_subfield(self):
        diff = [[self.conj[i][j] - int(i == j) for j in range(4)]
                for i in range(4)]
        kernel = intmat.integer_kernel(diff)
        if len(kernel) != 2:
            raise NotCyclic(self.poly, "fixed field of conjugation has "
                                       "wrong degree")
        beta = next(NFElement(self, v) for v in kernel
                    if NFElement(self, v).coords[1:] != (0, 0, 0))
        beta_bar = beta.apply(self.sigma)
        t = (beta + beta_bar).coords[0]
        n = (beta * beta_bar).coords[0]
        disc_beta = t * t - 4 * n
        num = disc_beta.numerator * disc_beta.denominator
        core = sympy.ntheory.factor_.core(num)
        disc_f = core if core % 4 == 1 else 4 * core
        # (2 beta - t)^2 = disc_beta = s^2 * disc_f
        s_squared = disc_beta / disc_f
        s = Fraction(_isqrt_exact(s_squared.numerator),
                     _isqrt_exact(s_squared.denominator))
        root = (beta * 2 - t) * (1 / s)
        if root.embed(0, 128).mid.real < 0:
            root = -root
        self.sqrt_disc_F = root
        self.subfield = realquad.real_quad_data(disc_f)
        u, v = self.subfield.unit
        self.eps = self.from_rational(u) + root * v

    def _init_units(self):
        self.w, self.zeta = 2, -self.one
        for n in (12, 10, 8, 6, 4):
            roots = self.roots_in_field(cyclotomic(n))
            if roots:
                self.w = n
                self.zeta = roots[0]
                break
        self.unit_index = 1
        self.eta = None
        for gamma in (self.eps, self.zeta * self.eps):
            eta = self.sqrt(gamma)
            if eta is not None:
                self.unit_index = 2
                self.eta = eta
                break

    # Invariants

    def regulator(self, prec=128):
        """Regulator ``R_K = 2 R_F / Q`` as a real ball."""
        return self.subfield.regulator(prec) * Fraction(2, self.unit_index)

    def t2_gram(self):
        """Exact Gram matrix of ``x -> sum_k |phi_k(x)|^2``."""
        if 't2' not in self._cache:
            elems = self.basis_elements()
            self._cache['t2'] = [[(a * b.conj()).trace() for b in elems]
                                   for a in elems]
        return self._cache['t2']

    def dual_basis(self):
        """Trace-dual basis of the maximal order as coordinate columns."""
        return intmat.columns(intmat.inverse(self.trace_gram))

    def codifferent(self):
        if 'codifferent' not in self._cache:
            self._cache['codifferent'] = ideals.FracIdeal.from_generators(
                self, [NFElement(self, c) for c in self.dual_basis()])
        return self._cache['codifferent']

    def different(self):
        return different_ideal(self)

    def cm_types(self):
        return cm_types(self)

    def serialize(self):
        record = {
            'poly': [str(c) for c in self.poly.coeffs],
            'disc_K': str(self.disc),
            'integral_basis': [[str(c) for c in vec] for vec in self.basis],
        }
        if self.subfield is not None:
            record['disc_F'] = str(self.subfield.disc)
        if self.conductor is not None:
            record['conductor_f'] = str(self.conductor)
        return record

    def __repr__(self):
        return "CMField({}, disc={})".format(self.poly, self.disc)


def _isqrt_exact(value):
    value = Fraction(value)
    if value.denominator != 1:
        raise ValueError("not an integer square")
    root, exact = sympy.integer_nthroot(int(value), 2)
    if not exact:
        raise ValueError("{} is not a square".format(value))
    return root


def maximal_order(f, cyclic=True):
    """Build the field defined by the monic quartic `f`.

    Parameters
    ----------
    f : ZPoly
        Monic, irreducible, degree 4, no real roots.
    cyclic : bool
        Compute the Galois, subfield and unit data, requiring the field to
        be cyclic Galois.

    Raises
    ------
    NotCM
        If `f` has a real root.
    NotCyclic
        If `cyclic` and the field is not cyclic Galois.
    ValueError
        If `f` is not monic irreducible of degree 4.
    """
    if f.degree != 4 or not f.is_monic() or not f.is_irreducible():
        raise ValueError("expected a monic irreducible quartic: {}".format(f))
    if f.count_real_roots() > 0:
        raise NotCM(f)
    field = CMField(f, integral_basis(f))
    logging.info("Field %s: disc %d, index %d", f, field.disc, field.index)
    if cyclic:
        field._init_galois()
        field._init_subfield()
        field._init_units()
    return field


def deserialize(record, cyclic=True):
    """Rebuild a field from a database record."""
    f = ZPoly.deserialize(record['poly'])
    basis = [[Fraction(c) for c in vec] for vec in record['integral_basis']]
    field = CMField(f, basis)
    if str(field.disc) != record['disc_K']:
        raise ValueError("record discriminant does not match basis")
    if cyclic:
        field._init_galois()
        field._init_subfield()
        field._init_units()
    if 'conductor_f' in record:
        field.conductor = int(record['conductor_f'])
    return field


def different_ideal(field):
    """The different as an integral ideal, inverse of the codifferent."""
    return field.codifferent().inv()


def cm_types(field):
    """The four CM types, as pairs of embedding indices.

    Examples
    --------
    >>> cm_types(None)
    [CMType(a=0, b=2), CMType(a=0, b=3), CMType(a=1, b=2), CMType(a=1, b=3)]
    """
    # pylint: disable=unused-argument
    return [CMType(a, b) for a in (0, 1) for b in (2, 3)]


def conjugate_type(cm_type):
    """The type made of the complex-conjugate embeddings."""
    return CMType(1 - cm_type.a, 5 - cm_type.b)


def cm_type_classes(field):
    """Types grouped into the two orbits under complex conjugation.

    Conjugation is the action of ``sigma^2``; the generator ``sigma`` itself
    permutes all four types in a single orbit.
    """
    types = cm_types(field)
    classes = []
    for phi in types:
        orbit = sorted({phi, conjugate_type(phi)})
        if orbit not in classes:
            classes.append(orbit)
    return classes


def galois_action_on_type(cm_type):
    """Type obtained by composing every embedding with sigma."""
    a, b = (SIGMA_ON_EMBEDDINGS[cm_type.a], SIGMA_ON_EMBEDDINGS[cm_type.b])
    low, high = sorted((a, b))
    return CMType(low, high)
