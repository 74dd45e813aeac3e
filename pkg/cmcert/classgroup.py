#!/usr/bin/env python

"""
Compute ideal class groups of cyclic quartic CM fields.

Relations among the primes below the Minkowski bound are collected from
principal ideals of short elements; the Smith normal form of the relation
matrix gives the group structure, which is then certified by checking that
no nontrivial element of prime order is principal.
"""

from __future__ import division

import argparse
from collections import namedtuple
from fractions import Fraction
import itertools
import json
import logging
import sys

import numpy as np
import sympy

from cmcert import intmat
from cmcert import lattice
from cmcert import settings
from cmcert.ball import ComplexBall
from cmcert.ideals import FracIdeal, split_prime, factor_ideal, \
    minkowski_bound


class RelationSearchExhausted(Exception):
    """The relation search did not settle within the allowed effort."""
    def __init__(self, effort, msg=''):
        Exception.__init__(self)
        self.effort = effort
        self.msg = msg

    def __str__(self):
        return "no stable class group after {} relations: {}".format(
            self.effort, self.msg)


ClassRecord = namedtuple('ClassRecord', 'label min_norm min_rep exponents')

TypeNormImage = namedtuple('TypeNormImage', [
    'cm_type',
    'subgroup',
    'size',
    'two_torsion',
    'lower_bound',
    'bound_holds'])


def _t2_gram_of(ideal):
    field = ideal.field
    basis = intmat.from_columns(ideal.basis_coords())
    return lattice.congruent_gram(field.t2_gram(), basis)


def _elements_from(ideal, vectors):
    basis = ideal.basis()
    out = []
    for vec in vectors:
        element = ideal.field.zero
        for c, b in zip(vec, basis):
            if c:
                element = element + b * c
        out.append(element)
    return out


def short_elements(ideal, bound, limit=None):
    """Elements of `ideal` with ``T2 <= bound``, up to sign."""
    gram = _t2_gram_of(ideal)
    vectors = lattice.short_vectors(gram, bound, limit)
    seen = set()
    kept = []
    for _, vec in vectors:
        if tuple(-c for c in vec) in seen:
            continue
        seen.add(vec)
        kept.append(vec)
    return _elements_from(ideal, kept)


def reduce_ideal(ideal):
    """Integral ideal of small norm in the class of `ideal`."""
    inverse = ideal.inv()
    vec = lattice.shortest_vector(_t2_gram_of(inverse))
    alpha = _elements_from(inverse, [vec])[0]
    return ideal * alpha


def principal_bound(ideal):
    """Upper bound for T2 of a suitable generator of a principal ideal.

    Some generator ``alpha`` has ``|phi_0(alpha)|^2`` within a factor
    ``eps`` of ``sqrt(N(I))``, so ``T2(alpha) <= 2 sqrt(N(I)) (eps + 1/eps)``.
    """
    field = ideal.field
    eps = field.eps.embed(0, 64)
    root = ComplexBall.exact(abs(ideal.norm()), 64).sqrt()
    total = (eps + eps.inverse()) * root * 2
    return total.upper_rational() * Fraction(1000001, 1000000)


def find_generator(ideal):
    """A generator of `ideal` if it is principal, else None."""
    norm = abs(ideal.norm())
    for alpha in short_elements(ideal, principal_bound(ideal)):
        if abs(alpha.norm()) == norm:
            return alpha
    return None


def is_principal(ideal):
    return find_generator(ideal) is not None


def factor_base(field, bound, seed=0):
    """All prime ideals of norm at most `bound`."""
    primes = []
    for p in sympy.primerange(2, int(bound) + 1):
        primes.extend(q for q in split_prime(field, p, seed=seed)
                      if q.norm <= bound)
    return primes


class ClassGroup(object):
    """Class group as ``Z/d_1 x ... x Z/d_r`` with discrete logarithms.

    Attributes
    ----------
    divisors : list of int
        Elementary divisors greater than one, ``d_i | d_{i+1}``.
    order : int
    factor_base : list of PrimeIdeal
    """
    # pylint: disable=too-many-instance-attributes

    def __init__(self, field, primes, relations, seed=0):
        self.field = field
        self.factor_base = primes
        self.primes_by_p = {}
        for prime in primes:
            self.primes_by_p.setdefault(prime.p, []).append(prime)
        self.relations = [list(r) for r in relations]
        self.rng = np.random.RandomState(seed)
        self.divisors = []
        self.order = 1
        self._left = []
        self._left_inv = []
        self.update()

    def update(self):
        """Recompute the structure from the current relations."""
        n = len(self.factor_base)
        if n == 0:
            self.divisors, self.order = [], 1
            return
        matrix = intmat.from_columns(self.relations)
        diag, left, _ = intmat.snf(matrix)
        divisors = [diag[i][i] if i < len(diag[0]) else 0 for i in range(n)]
        if 0 in divisors:
            self.divisors, self.order = None, 0
            return
        keep = [i for i, d in enumerate(divisors) if d > 1]
        self.divisors = [divisors[i] for i in keep]
        self.order = 1
        for d in self.divisors:
            self.order *= d
        self._left = [left[i] for i in keep]
        inv = intmat.inverse(left)
        self._left_inv = [[int(inv[r][i]) for r in range(n)] for i in keep]

    @property
    def full_rank(self):
        return self.divisors is not None

    # Group arithmetic on labels

    def zero(self):
        return tuple(0 for _ in self.divisors)

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.divisors))

    def neg(self, a):
        return tuple((-x) % d for x, d in zip(a, self.divisors))

    def scale(self, a, k):
        return tuple((k * x) % d for x, d in zip(a, self.divisors))

    def elements(self):
        return [tuple(e) for e in
                itertools.product(*[range(d) for d in self.divisors])]

    def two_torsion_size(self):
        return 2 ** sum(1 for d in self.divisors if d % 2 == 0)

    def generated_subgroup(self, gens):
        """Closure of `gens` under addition."""
        group = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.add(a, g)
                    if b not in group:
                        group.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(group)

    # Discrete logarithms

    def class_of_exponents(self, exps):
        return tuple(sum(row[j] * exps[j] for j in range(len(exps))) % d
                     for row, d in zip(self._left, self.divisors))

    def fb_class(self, index):
        exps = [0] * len(self.factor_base)
        exps[index] = 1
        return self.class_of_exponents(exps)

    def exponents_of(self, ideal):
        """Exponent vector over the factor base of an integral ideal."""
        factored = factor_ideal(ideal, self.primes_by_p)
        if factored is None:
            return None
        exps = [0] * len(self.factor_base)
        for prime, v in factored.items():
            exps[self.factor_base.index(prime)] = v
        return exps

    def random_exponents(self, count=3, top=2):
        exps = [0] * len(self.factor_base)
        if not self.factor_base:
            return exps
        for j in self.rng.randint(0, len(self.factor_base), size=count):
            exps[int(j)] += int(self.rng.randint(1, top + 1))
        return exps

    def ideal_of_exponents(self, exps):
        """Reduced ideal in the class of the given factor-base product."""
        ideal = FracIdeal.unit(self.field)
        for prime, e in zip(self.factor_base, exps):
            if e:
                ideal = reduce_ideal(ideal * _reduced_power(prime.ideal, e))
        return ideal

    def class_of(self, ideal, attempts=200):
        """Label of the class of a fractional ideal."""
        if not self.divisors:
            return ()
        start = reduce_ideal(ideal)
        exps = self.exponents_of(start)
        if exps is not None:
            return self.class_of_exponents(exps)
        for _ in range(attempts):
            shift = self.random_exponents()
            candidate = reduce_ideal(start * self.ideal_of_exponents(shift))
            exps = self.exponents_of(candidate)
            if exps is not None:
                diff = [a - b for a, b in zip(exps, shift)]
                return self.class_of_exponents(diff)
        raise RelationSearchExhausted(attempts, "ideal did not factor")

    def exponents_of_label(self, label):
        """Factor-base exponents of a product lying in the class `label`."""
        n = len(self.factor_base)
        exps = [0] * n
        for coeff, col in zip(label, self._left_inv):
            for j in range(n):
                exps[j] += coeff * col[j]
        return exps

    def ideal_of_class(self, label):
        """A reduced integral ideal in the class with the given label."""
        return self.ideal_of_exponents(self.exponents_of_label(label))

    def serialize(self):
        return {
            'h_K': str(self.order),
            'divisors': [str(d) for d in self.divisors],
            'factor_base': [[str(q.p), str(q.e), str(q.f)]
                            for q in self.factor_base],
        }


def _reduced_power(ideal, exponent):
    if exponent < 0:
        ideal = ideal.inv()
        exponent = -exponent
    result = FracIdeal.unit(ideal.field)
    base = ideal
    while exponent:
        if exponent & 1:
            result = reduce_ideal(result * base)
        base = reduce_ideal(base * base)
        exponent >>= 1
    return result


def _prime_relations(primes):
    """Relations from ``pO`` for primes p lying entirely in the base."""
    relations = []
    by_p = {}
    for j, prime in enumerate(primes):
        by_p.setdefault(prime.p, []).append(j)
    for _, indices in sorted(by_p.items()):
        if sum(primes[j].e * primes[j].f for j in indices) != 4:
            continue
        vec = [0] * len(primes)
        for j in indices:
            vec[j] = primes[j].e
        relations.append(vec)
    return relations


def _random_relations(group, count):
    """Relations from principal ideals of short elements."""
    found = []
    tries = 0
    while len(found) < count and tries < 20 * count:
        tries += 1
        ideal = group.ideal_of_exponents(group.random_exponents())
        transform, _ = lattice.pair_reduce(_t2_gram_of(ideal))
        cols = intmat.columns(transform)
        combos = [cols[0], cols[1],
                  [a + b for a, b in zip(cols[0], cols[1])],
                  [a - b for a, b in zip(cols[0], cols[2])]]
        for alpha in _elements_from(ideal, combos):
            if alpha.is_zero():
                continue
            relation = group.exponents_of(
                FracIdeal.principal(group.field, alpha))
            if relation is not None and any(relation):
                found.append(relation)
    return found


def _torsion_elements(group, q):
    """Nonzero elements of order `q`."""
    gens = []
    for i, d in enumerate(group.divisors):
        if d % q == 0:
            vec = [0] * len(group.divisors)
            vec[i] = d // q
            gens.append(tuple(vec))
    return [g for g in group.generated_subgroup(gens) if any(g)]


def _certify(group):
    """A relation missing from the lattice, or None if complete.

    If the relation lattice were too small, the kernel of the map onto the
    class group would contain an element of prime order.
    """
    for q in sympy.primefactors(group.order):
        for label in sorted(_torsion_elements(group, q)):
            exps = group.exponents_of_label(label)
            if is_principal(group.ideal_of_exponents(exps)):
                logging.debug("Principal element of order %d found", q)
                return exps
    return None


def class_group(field, seed=0, effort=None, stable_rounds=3):
    """Compute and certify the class group.

    Parameters
    ----------
    field : CMField
    seed : int
        Seed for the relation search.
    effort : int, optional
        Maximal number of random relations; scales with the factor base by
        default.

    Raises
    ------
    RelationSearchExhausted
    """
    bound = minkowski_bound(field)
    primes = factor_base(field, bound, seed)
    relations = _prime_relations(primes)
    group = ClassGroup(field, primes, relations or [[0] * len(primes)], seed)
    if not primes:
        logging.info("Empty factor base (Minkowski bound %.3f): h_K = 1",
                     float(bound))
        return group
    n = len(primes)
    if effort is None:
        effort = 40 * n + 200
    batch = max(8, n // 2)
    used = 0
    history = []
    while True:
        new = _random_relations(group, batch)
        used += len(new)
        group.relations.extend(new)
        group.update()
        history.append(group.order)
        logging.debug("Relation batch %d: order %s", len(history),
                      group.order)
        if group.full_rank and len(history) >= stable_rounds and \
                len(set(history[-stable_rounds:])) == 1:
            missing = _certify(group)
            if missing is None:
                break
            group.relations.append(missing)
            group.update()
            history.append(group.order)
        if used > effort:
            raise RelationSearchExhausted(used, "order history {}".format(
                history[-5:]))
    logging.info("Class group of disc %d: %s (h_K = %d)", field.disc,
                 group.divisors, group.order)
    return group


def integral_ideals_up_to(group, bound):
    """Integral ideals of norm at most `bound` as factor-base exponents."""
    primes = group.factor_base
    results = [([0] * len(primes), 1)]

    def extend(start, exps, norm):
        for j in range(start, len(primes)):
            q = primes[j].norm
            if norm * q > bound:
                continue
            new = list(exps)
            new[j] += 1
            results.append((new, norm * q))
            extend(j, new, norm * q)

    extend(0, [0] * len(primes), 1)
    return results


def min_norms(group, bound=None):
    """Minimal norm of an integral ideal in each class.

    Raises
    ------
    ArithmeticError
        If some class has no integral ideal of norm at most `bound`.
    """
    if bound is None:
        bound = minkowski_bound(group.field)
    best = {}
    for exps, norm in integral_ideals_up_to(group, bound):
        label = group.class_of_exponents(exps)
        if label not in best or (norm, exps) < best[label]:
            best[label] = (norm, exps)
    missing = [g for g in group.elements() if g not in best]
    if missing:
        raise ArithmeticError("classes without small ideal: {}".format(
            missing))
    records = []
    for label in sorted(best):
        norm, exps = best[label]
        ideal = FracIdeal.unit(group.field)
        for prime, e in zip(group.factor_base, exps):
            if e:
                ideal = ideal * (prime.ideal ** e)
        records.append(ClassRecord(label, norm, ideal, exps))
    return records


def _fb_permutation(group, aut):
    perm = []
    for prime in group.factor_base:
        image = prime.ideal.apply(aut)
        perm.append(next(j for j, q in enumerate(group.factor_base)
                         if q.ideal == image))
    return perm


def type_norm_images(group, cm_type):
    """Labels of ``tau_a(P) tau_b(P)`` for every factor-base prime P."""
    field = group.field
    perm_a = _fb_permutation(group, field.automorphisms[cm_type.a])
    perm_b = _fb_permutation(group, field.automorphisms[cm_type.b])
    return [group.add(group.fb_class(perm_a[j]), group.fb_class(perm_b[j]))
            for j in range(len(group.factor_base))]


def type_norm_label(group, cm_type, label):
    """Label of the type norm of the class `label`."""
    images = type_norm_images(group, cm_type)
    result = group.zero()
    for j, e in enumerate(group.exponents_of_label(label)):
        result = group.add(result, group.scale(images[j], e))
    return result


def type_norm_image(group, cm_type):
    """Image ``H0`` of the type norm and the lower bound on its size."""
    subgroup = group.generated_subgroup(type_norm_images(group, cm_type))
    two = group.two_torsion_size()
    h_f = group.field.subfield.class_number
    lower = Fraction(group.order, two * h_f)
    return TypeNormImage(cm_type, subgroup, len(subgroup), two, lower,
                         len(subgroup) >= lower)


def class_group_record(group, records):
    """Report row: structure, Minkowski bound and minimal-norm table."""
    row = group.serialize()
    row['disc_K'] = str(group.field.disc)
    row['minkowski_bound'] = str(float(minkowski_bound(group.field)))
    row['min_norms'] = [{'label': list(r.label), 'min_norm': str(r.min_norm)}
                        for r in records]
    return row


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
    config, args = settings.load_args(parser, ['seed', 'relation_effort'])

    for field in field_enum.load_fields(args.fields):
        group = class_group(field, seed=config.seed,
                            effort=config.relation_effort)
        row = class_group_record(group, min_norms(group))
        args.output.write(json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
