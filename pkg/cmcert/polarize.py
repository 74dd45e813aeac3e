#!/usr/bin/env python

"""
Principally polarised CM triples of cyclic quartic CM fields.

A triple ``(I, xi, Phi)`` has ``xi * conj(I) * I`` equal to the inverse
different, ``xi`` totally imaginary and ``Im phi(xi) > 0`` for both
embeddings of the CM type. For each triple the Riemann form
``E(x, y) = -Tr(xi * conj(x) * y)`` is unimodular on I, and a symplectic
Z-basis of I is computed from it.
"""

from __future__ import division

import argparse
from collections import namedtuple
import json
import logging
import sys

from cmcert import classgroup
from cmcert import intmat
from cmcert import numfield
from cmcert import settings
from cmcert.ball import ComplexBall, Undecidable, real_ball, \
    with_precision_retry
from cmcert.ideals import FracIdeal


class NotUnimodular(Exception):
    """The Riemann form restricted to the ideal is not unimodular."""
    def __init__(self, pfaffian):
        Exception.__init__(self)
        self.pfaffian = pfaffian

    def __str__(self):
        return "Pfaffian of the Riemann form is {}".format(self.pfaffian)


class CosetMismatch(Exception):
    """Polarisable classes that do not split into type-norm cosets."""
    def __init__(self, cm_type, size, subgroup_size):
        Exception.__init__(self)
        self.cm_type = cm_type
        self.size = size
        self.subgroup_size = subgroup_size

    def __str__(self):
        return "{} polarisable classes for {} do not split into cosets of " \
            "a subgroup of order {}".format(self.size, self.cm_type,
                                            self.subgroup_size)


CMTriple = namedtuple('CMTriple', 'ideal xi cm_type unit_exponents')

SymplecticBasis = namedtuple('SymplecticBasis', 'triple elements transform')

PolarizableCoset = namedtuple('PolarizableCoset', [
    'cm_type',
    'classes',
    'size',
    'subgroup_size',
    'orbits',
    'triples'])

TypeTraceCheck = namedtuple('TypeTraceCheck', [
    'pair',
    'value',
    'bound',
    'holds'])

STANDARD_J = [[0, 0, 1, 0],
              [0, 0, 0, 1],
              [-1, 0, 0, 0],
              [0, -1, 0, 0]]


def riemann_form(triple, a, b):
    """``E(Phi(a), Phi(b)) = -Tr(xi * conj(a) * b)``, exact."""
    return -(triple.xi * a.conj() * b).trace()


def type_trace(triple, x, prec=128):
    """``Tr_Phi(x) = phi_1(x) + phi_2(x)`` as a ball."""
    cm_type = triple.cm_type
    return x.embed(cm_type.a, prec) + x.embed(cm_type.b, prec)


def hermitian_form(triple, a, b, prec=128):
    """``H(Phi(a), Phi(b)) = -2i Tr_Phi(xi * conj(a) * b)``."""
    value = type_trace(triple, triple.xi * a.conj() * b, prec)
    return value * ComplexBall(-2j, 0, prec)


def inverse_polarization_ideal(ideal):
    """``D^-1 (conj(I) I)^-1``; principal iff I carries a polarisation."""
    field = ideal.field
    return field.codifferent() * (ideal.conj() * ideal).inv()


def _unit_candidates(field, unit_range):
    """Pairs ``((a, m, k), u)`` with ``u = zeta^a eta^m eps^k``.

    ``m`` is nonzero only when the unit index is 2, where ``eta`` is a unit
    with ``eta * conj(eta) = eps``.
    """
    powers = {0: field.one}
    for k in range(1, unit_range + 1):
        powers[k] = powers[k - 1] * field.eps
        powers[-k] = powers[-k + 1] * field.eps.inverse()
    roots = [field.one]
    for _ in range(1, field.w):
        roots.append(roots[-1] * field.zeta)
    extra = [field.one]
    if field.unit_index == 2:
        extra.append(field.eta)
    for k in sorted(powers, key=lambda k: (abs(k), k)):
        for m, eta in enumerate(extra):
            for a, zeta in enumerate(roots):
                yield (a, m, k), zeta * eta * powers[k]


def _equivalence_key(field, exponents):
    """Class of ``zeta^a eta^m eps^k`` modulo the norms ``v * conj(v)``."""
    a, m, k = exponents
    step = 1 if field.unit_index == 2 else 2
    return a % field.w, m, k % step


def _positive_on(xi, cm_type, prec):
    checks = [xi.embed(cm_type.a, prec).imag.gt(0),
              xi.embed(cm_type.b, prec).imag.gt(0)]
    if None in checks:
        raise Undecidable("sign of Im phi(xi)")
    return all(checks)


def polarization_generator(ideal):
    """A generator of ``D^-1 (conj(I) I)^-1``, or None."""
    return classgroup.find_generator(inverse_polarization_ideal(ideal))


def find_polarizations(field, cm_type, ideal, unit_range=4, prec=128,
                       prec_cap=4096, generator=None):
    """All CM triples on `ideal` for the CM type, up to ``xi ~ v conj(v) xi``.

    Candidates ``xi_0 zeta^a eta^m eps^k`` with ``|k| <= unit_range`` are
    tested and kept once per equivalence class, using the smallest ``|k|``.

    Returns
    -------
    list of CMTriple
        Empty if the ideal carries no principal polarisation for the type.
    """
    xi0 = generator
    if xi0 is None:
        xi0 = polarization_generator(ideal)
    if xi0 is None:
        return []
    triples = {}
    tested = set()
    for exponents, unit in _unit_candidates(field, unit_range):
        key = _equivalence_key(field, exponents)
        if key in tested:
            continue
        tested.add(key)
        xi = xi0 * unit
        if xi.conj() != -xi:
            continue
        positive = with_precision_retry(
            lambda p, xi=xi: _positive_on(xi, cm_type, p), prec, prec_cap)
        if positive:
            triples[key] = CMTriple(ideal, xi, cm_type, exponents)
    for triple in triples.values():
        if unit_range and abs(triple.unit_exponents[2]) == unit_range:
            logging.warning("Polarisation with eps^%d at the edge of the "
                            "unit range", triple.unit_exponents[2])
    return [triples[key] for key in sorted(triples)]


def riemann_gram(triple, elements):
    """Exact Gram matrix ``Tr(xi * conj(e_i) * e_j)``."""
    return [[(triple.xi * a.conj() * b).trace() for b in elements]
            for a in elements]


def _bezout(row):
    """Integer vector ``x`` with ``row . x = gcd(row)``."""
    x = [0] * len(row)
    g = 0
    for i, value in enumerate(row):
        if value == 0:
            continue
        if g == 0:
            g, x[i] = abs(value), (1 if value > 0 else -1)
            continue
        # extended gcd of g and value
        old_r, r = g, value
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        x = [c * old_s for c in x]
        x[i] = old_t
        g = old_r
    return g, x


def _form(gram, u, v):
    return sum(u[i] * gram[i][j] * v[j] for i in range(len(u))
               for j in range(len(v)))


def symplectic_transform(gram):
    """Unimodular T with ``T^t G T = J`` for an alternating unimodular G.

    Raises
    ------
    NotUnimodular
        If the Pfaffian of `gram` is not +-1.
    """
    pf = intmat.pfaffian4(gram)
    if abs(pf) != 1:
        raise NotUnimodular(pf)
    e1 = [1, 0, 0, 0]
    row = [sum(e1[i] * gram[i][j] for i in range(4)) for j in range(4)]
    g, f1 = _bezout(row)
    if g != 1:
        raise NotUnimodular(pf)
    constraints = [
        [sum(e1[i] * gram[i][j] for i in range(4)) for j in range(4)],
        [sum(f1[i] * gram[i][j] for i in range(4)) for j in range(4)],
    ]
    kernel = intmat.integer_kernel(constraints)
    if len(kernel) != 2:
        raise NotUnimodular(pf)
    e2, f2 = kernel
    pairing = _form(gram, e2, f2)
    if abs(pairing) != 1:
        raise NotUnimodular(pf)
    if pairing < 0:
        f2 = [-c for c in f2]
    transform = intmat.from_columns([e1, e2, f1, f2])
    check = intmat.matmul(intmat.matmul(intmat.transpose(transform), gram),
                          transform)
    if check != STANDARD_J:
        raise NotUnimodular(pf)
    return transform


def symplectic_basis(triple):
    """Z-basis ``e_1..e_4`` of I with ``Tr(xi conj(e_i) e_j) = J``."""
    basis = triple.ideal.basis()
    gram = riemann_gram(triple, basis)
    if any(x.denominator != 1 for row in gram for x in row):
        raise NotUnimodular(intmat.pfaffian4(gram))
    gram = [[int(x) for x in row] for row in gram]
    transform = symplectic_transform(gram)
    elements = []
    for col in intmat.columns(transform):
        element = triple.ideal.field.zero
        for c, b in zip(col, basis):
            if c:
                element = element + b * c
        elements.append(element)
    return SymplecticBasis(triple, elements, transform)


def type_trace_checks(basis, prec=128):
    """Lower bounds for ``|Tr_Phi(xi conj(e_i) e_j)|`` on basis pairs.

    A nonzero purely imaginary value is at least
    ``min(disc^-1/4, 2 disc^-1/2 / (H(e_i, e_i) + H(e_j, e_j)))``.
    """
    triple = basis.triple
    disc = triple.ideal.field.disc
    root4 = real_ball(disc, prec).sqrt().sqrt()
    first = root4.inverse()
    diag = [hermitian_form(triple, e, e, prec).real for e in basis.elements]
    checks = []
    for i in range(4):
        for j in range(i + 1, 4):
            x = triple.xi * basis.elements[i].conj() * basis.elements[j]
            if x.is_zero() or x.trace() != 0:
                continue
            value = type_trace(triple, x, prec).abs().real
            second = root4.square().inverse() * 2 / (diag[i] + diag[j])
            verdicts = (value.ge(first), value.ge(second))
            if True in verdicts:
                holds = True
            elif None in verdicts:
                holds = None
            else:
                holds = False
            bound = min(float(first), float(second))
            checks.append(TypeTraceCheck((i, j), value, bound, holds))
    return checks


def is_indecomposable(basis, prec=128):
    """``Tr_Phi(xi conj(e_2) e_3) != 0``, certified."""
    triple = basis.triple
    x = triple.xi * basis.elements[1].conj() * basis.elements[2]
    return type_trace(triple, x, prec).is_nonzero()


def polarizable_coset(field, cm_type, group, unit_range=4, prec=128,
                      prec_cap=4096):
    """Classes carrying a principal polarisation for the CM type.

    The polarisable classes are split into the cosets of the image ``H0``
    of the type norm; each coset is one Galois orbit of CM points.

    Raises
    ------
    CosetMismatch
        If the polarisable classes are not a union of cosets of ``H0``.
    """
    classes = []
    triples = {}
    for label in group.elements():
        ideal = group.ideal_of_class(label)
        found = find_polarizations(field, cm_type, ideal, unit_range, prec,
                                   prec_cap)
        if found:
            classes.append(label)
            triples[label] = found
    image = classgroup.type_norm_image(group, cm_type)
    orbits = []
    remaining = set(classes)
    for label in classes:
        if label not in remaining:
            continue
        orbit = sorted(group.add(label, h) for h in image.subgroup)
        if not remaining.issuperset(orbit):
            raise CosetMismatch(cm_type, len(classes), image.size)
        remaining.difference_update(orbit)
        orbits.append(orbit)
    logging.debug("Type %s: %d polarisable classes in %d orbits", cm_type,
                  len(classes), len(orbits))
    return PolarizableCoset(cm_type, classes, len(classes), image.size,
                            orbits, triples)


def orbit_triples(coset, orbit):
    """CM triples of one orbit, grouped by their position in each class.

    Classes with several inequivalent polarisations contribute their k-th
    triple to the k-th group.

    Raises
    ------
    CosetMismatch
        If the classes of the orbit carry different numbers of triples.
    """
    counts = {len(coset.triples[label]) for label in orbit}
    if len(counts) != 1:
        raise CosetMismatch(coset.cm_type, len(coset.classes),
                            coset.subgroup_size)
    return [[coset.triples[label][k] for label in orbit]
            for k in range(counts.pop())]


def positive_type(xi, prec=128):
    """The CM type on which the totally imaginary `xi` is positive."""
    a = xi.embed(0, prec).imag.gt(0)
    b = xi.embed(2, prec).imag.gt(0)
    if a is None or b is None:
        raise Undecidable("sign of Im phi(xi)")
    return numfield.CMType(0 if a else 1, 2 if b else 3)


def transport_triple(triple, aut, prec=128, prec_cap=4096):
    """Image ``(tau I, tau xi)`` of a triple under a field automorphism.

    The image has the type ``Phi o tau^-1`` and the same period lattice,
    so it describes the same abelian surface.
    """
    xi = triple.xi.apply(aut)
    cm_type = with_precision_retry(lambda p: positive_type(xi, p), prec,
                                   prec_cap)
    return CMTriple(triple.ideal.apply(aut), xi, cm_type,
                    triple.unit_exponents)


def triple_record(triple):
    return {
        'ideal': triple.ideal.serialize(),
        'xi': triple.xi.serialize(),
        'cm_type': list(triple.cm_type),
        'unit_exponents': list(triple.unit_exponents),
    }


def triple_from_record(field, record):
    ideal = FracIdeal.deserialize(field, record['ideal'])
    xi = field.element(record['xi'])
    return CMTriple(ideal, xi, numfield.CMType(*record['cm_type']),
                    tuple(record['unit_exponents']))


def _main():
    # pylint: disable=import-outside-toplevel
    from cmcert import field_enum

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
                                               'prec_cap'])

    for field in field_enum.load_fields(args.fields):
        group = classgroup.class_group(field, seed=config.seed,
                                       effort=config.relation_effort)
        for cm_type in numfield.cm_types(field):
            try:
                coset = polarizable_coset(field, cm_type, group,
                                          config.unit_range, config.prec,
                                          config.prec_cap)
            except CosetMismatch as exc:
                logging.warning("Field %d: %s", field.disc, exc)
                continue
            for k, orbit in enumerate(coset.orbits):
                for label in orbit:
                    for triple in coset.triples[label]:
                        row = triple_record(triple)
                        row['disc_K'] = str(field.disc)
                        row['class'] = list(label)
                        row['orbit'] = k
                        args.output.write(
                            json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
