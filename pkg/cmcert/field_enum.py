#!/usr/bin/env python

"""
Enumerate cyclic quartic CM fields containing a fixed real quadratic field.

Each field is the fixed field of the kernel of a primitive quartic odd
Dirichlet character whose square is the quadratic character of F. By the
conductor-discriminant formula the field of a character of conductor f has
discriminant ``disc_F * f^2``. Defining polynomials come from Gaussian
periods evaluated in ball arithmetic and rounded once every coefficient is
isolated.

The output is a field database in JSON Lines, one field per line.
"""

from __future__ import division

import argparse
from collections import namedtuple
from fractions import Fraction
import itertools
import json
import logging
import sys

import mpmath
import sympy

from cmcert import numfield
from cmcert import settings
from cmcert.ball import ComplexBall, Undecidable, exp_pi_i, \
    with_precision_retry
from cmcert.polymod import ZPoly
from cmcert.realquad import is_fundamental


class VerificationFailed(Exception):
    """A rounded polynomial failed an exact check."""
    def __init__(self, conductor, msg=''):
        Exception.__init__(self)
        self.conductor = conductor
        self.msg = msg

    def __str__(self):
        return "conductor {}: {}".format(self.conductor, self.msg)


EnumeratedField = namedtuple('EnumeratedField',
                             'character disc_K poly field')

_LocalCharacter = namedtuple('_LocalCharacter', 'modulus dlog exponents')


def kronecker(d, a):
    """Kronecker symbol ``(d / a)`` for ``a > 0``.

    Examples
    --------
    >>> [kronecker(5, a) for a in range(1, 6)]
    [1, -1, -1, 1, 0]
    >>> kronecker(8, 3)
    -1
    """
    if a <= 0:
        raise ValueError("expected a positive argument")
    result = 1
    while a % 2 == 0:
        a //= 2
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
    if a == 1:
        return result
    return result * sympy.jacobi_symbol(d % a, a)


def _dlog_odd(p):
    g = sympy.primitive_root(p)
    table = {}
    value = 1
    for k in range(p - 1):
        table[value] = k
        value = value * g % p
    return table


def _dlog_two(k):
    """Map ``a mod 2^k`` to ``(s, j)`` with ``a = (-1)^s 5^j``."""
    modulus = 2 ** k
    table = {}
    order = max(1, modulus // 4)
    for s in (0, 1):
        value = modulus - 1 if s else 1
        for j in range(order):
            table[value % modulus] = (s, j)
            value = value * 5 % modulus
    return table


def _local_characters(p, k):
    """Primitive characters of ``(Z/p^k)^*`` with values in the 4th roots."""
    modulus = p ** k
    if p != 2:
        if k != 1:
            return []
        table = _dlog_odd(p)
        dlog = {a: (v,) for a, v in table.items()}
        return [_LocalCharacter(modulus, dlog, (t,)) for t in (1, 2, 3)
                if t * (p - 1) % 4 == 0]
    if k not in (2, 3, 4):
        return []
    dlog = _dlog_two(k)
    chars = []
    for s, t in itertools.product((0, 2), range(4)):
        if k == 2 and (s, t) == (2, 0):
            chars.append(_LocalCharacter(modulus, dlog, (s, 0)))
        elif k == 3 and t == 2:
            chars.append(_LocalCharacter(modulus, dlog, (s, t)))
        elif k == 4 and t % 2 == 1:
            chars.append(_LocalCharacter(modulus, dlog, (s, t)))
    return chars


class QuarticCharacter(object):
    """Dirichlet character with values ``i^e`` given by its exponent table.

    Attributes
    ----------
    conductor : int
    table : dict
        Maps each unit ``a mod conductor`` to the exponent ``e`` in Z/4.
    """

    def __init__(self, conductor, table):
        self.conductor = conductor
        self.table = table

    @classmethod
    def from_components(cls, conductor, components):
        table = {}
        for a in range(1, conductor):
            if sympy.gcd(a, conductor) != 1:
                continue
            e = 0
            for comp in components:
                logs = comp.dlog[a % comp.modulus]
                e += sum(x * y for x, y in zip(logs, comp.exponents))
            table[a] = e % 4
        return cls(conductor, table)

    @property
    def modulus(self):
        return self.conductor

    def __call__(self, a):
        """Exponent of ``chi(a)``, or None if `a` is not a unit."""
        return self.table.get(a % self.conductor)

    def order(self):
        exps = set(self.table.values())
        if any(e % 2 for e in exps):
            return 4
        return 2 if 2 in exps else 1

    def is_odd(self):
        return self(-1) == 2

    def square_matches(self, disc_f):
        """Whether ``chi^2`` is the quadratic character of ``Q(sqrt(disc_f))``."""
        for a, e in self.table.items():
            if (1 if 2 * e % 4 == 0 else -1) != kronecker(disc_f, a):
                return False
        return True

    def value_key(self):
        return tuple(self.table[a] for a in sorted(self.table))

    def cube(self):
        return QuarticCharacter(self.conductor,
                                {a: 3 * e % 4 for a, e in self.table.items()})

    def kernel(self):
        return sorted(a for a, e in self.table.items() if e == 0)

    def cosets(self):
        """Units grouped by the value of the character, ``i^0 .. i^3``."""
        groups = [[], [], [], []]
        for a in sorted(self.table):
            groups[self.table[a]].append(a)
        return groups

    def serialize(self):
        return {'conductor': str(self.conductor),
                'values': [[str(a), self.table[a]] for a in sorted(self.table)]}

    @classmethod
    def deserialize(cls, record):
        return cls(int(record['conductor']),
                   {int(a): int(e) for a, e in record['values']})

    def __repr__(self):
        return "QuarticCharacter(conductor={})".format(self.conductor)


def characters_of_conductor(conductor, disc_f=5):
    """Quartic odd primitive characters of the given conductor whose square
    is the character of F, one per pair ``{chi, chi^3}``."""
    local = []
    for p, k in sorted(sympy.factorint(conductor).items()):
        options = _local_characters(p, k)
        if not options:
            return []
        local.append(options)
    found = []
    for components in itertools.product(*local):
        chi = QuarticCharacter.from_components(conductor, components)
        if chi.order() != 4 or not chi.is_odd():
            continue
        if not chi.square_matches(disc_f):
            continue
        if chi.value_key() > chi.cube().value_key():
            continue
        found.append(chi)
    return sorted(found, key=QuarticCharacter.value_key)


def enumerate_characters(disc_bound, disc_f=5):
    """All characters defining fields with ``disc_f * f^2 <= disc_bound``.

    Returns
    -------
    list of QuarticCharacter
        Sorted by discriminant, then by value table.
    """
    if not is_fundamental(disc_f) or disc_f <= 0:
        raise ValueError("{} is not a real quadratic discriminant".format(
            disc_f))
    conductor = disc_f
    found = []
    while disc_f * conductor * conductor <= disc_bound:
        found.extend(characters_of_conductor(conductor, disc_f))
        conductor += disc_f
    logging.info("%d characters with discriminant up to %d", len(found),
                 disc_bound)
    return sorted(found, key=lambda c: (c.conductor, c.value_key()))


def _round_integer(ball):
    """The integer in `ball`, which must be isolated within 1/4."""
    with mpmath.workprec(ball.prec):
        if ball.rad >= mpmath.mpf(1) / 4 or abs(ball.mid.imag) >= \
                mpmath.mpf(1) / 4:
            raise Undecidable("coefficient not isolated")
        value = int(mpmath.nint(ball.mid.real))
        if not ball.contains(value):
            raise Undecidable("coefficient not an integer")
    return value


def _period_sets(chi, k):
    """Exponent sets of the four conjugates of ``Tr(zeta_f^k)``."""
    return [[k * a % chi.conductor for a in coset] for coset in chi.cosets()]


def _period_candidates(chi):
    f = chi.conductor
    for k in range(1, f):
        yield _period_sets(chi, k)
    for k in range(2, f):
        first = _period_sets(chi, 1)
        other = _period_sets(chi, k)
        yield [a + b for a, b in zip(first, other)]


def _conjugates(sets, f, prec):
    roots = {}
    values = []
    for exps in sets:
        total = ComplexBall.exact(0, prec)
        for e in exps:
            if e not in roots:
                roots[e] = exp_pi_i(Fraction(2 * e, f), prec)
            total = total + roots[e]
        values.append(total)
    return values


def _poly_from_conjugates(values):
    """Integer polynomial ``prod (x - v)`` from certified balls."""
    prec = values[0].prec
    one = ComplexBall.exact(1, prec)
    coeffs = [one]
    for v in values:
        shifted = [ComplexBall.exact(0, prec)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - c * v
        coeffs = shifted
    return ZPoly([_round_integer(c) for c in coeffs])


def _distinct(values):
    return all(not a.overlaps(b) for a, b in itertools.combinations(values, 2))


def _periods_poly(chi, prec, tries):
    polys = []
    for sets in _period_candidates(chi):
        values = _conjugates(sets, chi.conductor, prec)
        if not _distinct(values):
            continue
        poly = _poly_from_conjugates(values)
        trace = -poly.coeffs[3]
        shift = int(round(trace / 4))
        if shift:
            poly = poly.substitute_scaled(1, -shift)
        polys.append((max(abs(c) for c in poly.coeffs), len(polys), poly))
        if len(polys) >= tries:
            break
    if not polys:
        raise Undecidable("no primitive period at this precision")
    return min(polys)[2]


def defining_poly_from_character(chi, prec=128, prec_cap=4096, tries=6):
    """Minimal polynomial of a Gaussian period of the field of `chi`.

    Raises
    ------
    PrecisionExhausted
        If the symmetric functions cannot be isolated below `prec_cap`.
    """
    return with_precision_retry(lambda p: _periods_poly(chi, p, tries),
                                prec, prec_cap)


def field_of_character(chi, disc_f=5, prec=128, prec_cap=4096):
    """Build and verify the field cut out by `chi`.

    Raises
    ------
    VerificationFailed
        If the polynomial is reducible, the field discriminant is not
        ``disc_f * f^2`` or the field does not contain ``sqrt(disc_f)``.
    """
    poly = defining_poly_from_character(chi, prec, prec_cap)
    f = chi.conductor
    if not poly.is_irreducible():
        raise VerificationFailed(f, "period polynomial {} is reducible"
                                 .format(poly))
    try:
        field = numfield.maximal_order(poly)
    except numfield.Error as exc:
        raise VerificationFailed(f, str(exc))
    if field.disc != disc_f * f * f:
        raise VerificationFailed(f, "discriminant {} != {}".format(
            field.disc, disc_f * f * f))
    if field.subfield.disc != disc_f or \
            not field.roots_in_field(ZPoly([-disc_f, 0, 1])):
        raise VerificationFailed(f, "field does not contain sqrt({})"
                                 .format(disc_f))
    field.conductor = f
    logging.info("Conductor %d: %s, disc %d", f, poly, field.disc)
    return EnumeratedField(chi, field.disc, poly, field)


def is_isomorphic(field, other):
    """Whether two quartic fields are isomorphic (cross-factoring)."""
    if field.disc != other.disc:
        return False
    return bool(field.roots_in_field(other.poly))


def enumerate_fields(disc_bound, disc_f=5, prec=128, prec_cap=4096):
    """All cyclic quartic CM fields containing F up to `disc_bound`."""
    fields = []
    for chi in enumerate_characters(disc_bound, disc_f):
        entry = field_of_character(chi, disc_f, prec, prec_cap)
        for seen in fields:
            if is_isomorphic(seen.field, entry.field):
                raise VerificationFailed(chi.conductor,
                                         "duplicate of {}".format(seen.poly))
        fields.append(entry)
    return fields


def brute_force_discriminants(disc_bound, box, disc_f=5):
    """Discriminants of fields ``Q(sqrt(-(A + B sqrt(disc_f))))`` found by
    searching ``1 <= A <= box``, ``1 <= |B| <= box``.

    Only candidates that are CM and cyclic are built.
    """
    found = {}
    for a in range(1, box + 1):
        for b in range(1, box + 1):
            norm = a * a - disc_f * b * b
            if norm <= 0:
                continue
            if not sympy.integer_nthroot(norm * disc_f, 2)[1]:
                continue
            poly = ZPoly([norm, 0, 2 * a, 0, 1])
            if not poly.is_irreducible():
                continue
            field = numfield.maximal_order(poly)
            if field.disc > disc_bound:
                continue
            if not any(is_isomorphic(field, seen) for seen in
                       found.get(field.disc, [])):
                found.setdefault(field.disc, []).append(field)
    return {d: len(fields) for d, fields in found.items()}


def field_record(entry):
    record = entry.field.serialize()
    record['character'] = entry.character.serialize()
    return record


def write_fields(entries, stream):
    for entry in entries:
        stream.write(json.dumps(field_record(entry), sort_keys=True) + '\n')


def load_records(stream):
    for line in stream:
        if line.strip():
            yield json.loads(line)


def load_fields(stream):
    """Fields of a JSON Lines database, in file order."""
    for record in load_records(stream):
        yield numfield.deserialize(record)


def _main():
    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--disc-f', type=int, default=5,
                        help="discriminant of the real quadratic subfield "
                             "[default: 5]")
    parser.add_argument('--out', type=argparse.FileType('w'),
                        default=sys.stdout,
                        help="output file (.jsonl) [default: stdout]")
    config, args = settings.load_args(parser, ['disc_bound', 'prec',
                                               'prec_cap'])

    entries = enumerate_fields(config.disc_bound, args.disc_f, config.prec,
                               config.prec_cap)
    write_fields(entries, args.out)
    logging.warning("%d fields with discriminant <= %d", len(entries),
                    config.disc_bound)


if __name__ == '__main__':
    _main()
