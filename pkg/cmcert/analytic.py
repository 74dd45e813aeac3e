#!/usr/bin/env python

"""
Smoothed ideal sums, the Dedekind zeta residue and the explicit constants
entering the discriminant bound.

Ideals are counted by norm and ideal class with a multiplicative sieve over
prime ideals. With ``f(y) = y^-1/2 exp(-y)`` the smoothed sums are
``S(x, chi) = sum_I chi(I) f(N(I)/x)`` over all integral ideals and
``S_H(x)``, the same sum restricted to ``[I]`` in a coset H and to
``N(I) <= x``.
"""

from __future__ import division

import argparse
from collections import namedtuple
from fractions import Fraction
import itertools
import json
import logging
import math
import sys

import mpmath
import numpy as np
import sympy
from sympy.polys import galoistools
from sympy.polys.domains import ZZ

from cmcert import ideals
from cmcert import realquad
from cmcert import settings
from cmcert.ball import ComplexBall, exp_pi_i, pi_ball, real_ball


S_CONSTANT = 163
S_CONSTANT_TRIVIAL = 393
S_EPSILONS = (Fraction(1, 10), Fraction(1, 2), Fraction(1))
LOUBOUTIN_ROOT = 98
COSET_THRESHOLD = 93 * 10 ** 6
ZETA_CRITICAL_CONSTANT = 13
ZETA_CRITICAL_T_EXPONENT = Fraction(3, 16)


class HypothesisViolated(Exception):
    """Parameters outside the range of the explicit L-function bound."""
    def __init__(self, lam, log_x):
        Exception.__init__(self)
        self.lam = lam
        self.log_x = log_x

    def __str__(self):
        return "log x = {} is below max(2, 2 lambda) for lambda = {}".format(
            self.log_x, self.lam)


IdealCountTable = namedtuple('IdealCountTable', 'disc cutoff counts')

LocalFactor = namedtuple('LocalFactor', 'p e f labels')

ChandeeResult = namedtuple('ChandeeResult', [
    'degree',
    'model',
    'constant',
    'delta_exponent',
    't_exponent',
    'prime_sum'])

KappaReport = namedtuple('KappaReport', [
    'kappa',
    'w',
    'w_exceeds_two',
    'regulator_holds',
    'louboutin_bound',
    'louboutin_holds',
    'louboutin_applies'])

SBound = namedtuple('SBound', [
    'epsilon',
    'character',
    'value',
    'bound',
    'holds'])

CosetSums = namedtuple('CosetSums', [
    'x',
    'restricted',
    'full',
    'fourier',
    'fourier_matches',
    'lower',
    'sandwich_holds'])

AverageBound = namedtuple('AverageBound', [
    'average',
    'coset_size',
    'bound_displayed',
    'holds_displayed',
    'bound_internal',
    'holds_internal',
    'bound_simplified',
    'applies'])

CosetSizeBound = namedtuple('CosetSizeBound', [
    'lhs',
    'rhs',
    'holds',
    'applies'])

MainBound = namedtuple('MainBound', 'branches log_bound dominant')


def _mpf(value):
    """mpf from an int, Fraction, float, string or real ball."""
    if isinstance(value, ComplexBall):
        return value.mid.real
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


# Splitting of rational primes

def _poly_mod(field, p):
    return [int(c) % p for c in reversed(field.poly.coeffs)]


def frobenius_degree(field, p):
    """Residue degree of an unramified prime not dividing the index.

    The smallest k with ``x^(p^k) = x`` modulo the defining polynomial.
    """
    modulus = _poly_mod(field, p)
    x = [1, 0]
    h = x
    for k in range(1, 5):
        h = galoistools.gf_pow_mod(h, p, modulus, p, ZZ)
        if h == x:
            return k
    raise ArithmeticError("no Frobenius degree for {}".format(p))


class GaloisLabels(object):
    """Action of the Galois generator on class labels."""

    def __init__(self, group):
        # pylint: disable=import-outside-toplevel,protected-access
        from cmcert import classgroup
        self.group = group
        perm = classgroup._fb_permutation(group, group.field.sigma)
        self.table = {}
        for label in group.elements():
            image = group.zero()
            for j, e in enumerate(group.exponents_of_label(label)):
                if e:
                    image = group.add(image,
                                      group.scale(group.fb_class(perm[j]), e))
            self.table[label] = image

    def orbit(self, label, length):
        labels = [label]
        for _ in range(length - 1):
            labels.append(self.table[labels[-1]])
        return labels


def local_factor(field, p, group=None, galois=None, cutoff=None):
    """Prime ideals above p: ramification, inertia and class labels.

    Class labels are only computed when ``p^f <= cutoff``.
    """
    trivial = group is None or group.order == 1
    zero = group.zero() if group is not None else ()
    special = field.disc % p == 0 or field.index % p == 0
    if not special:
        f = frobenius_degree(field, p)
        if trivial or (cutoff is not None and p ** f > cutoff):
            return LocalFactor(p, 1, f, [zero] * (4 // f))
    primes = ideals.split_prime(field, p)
    e, f = primes[0].e, primes[0].f
    if trivial or (cutoff is not None and p ** f > cutoff):
        labels = [zero] * len(primes)
    else:
        # primes above p form one Galois orbit
        first = group.class_of(primes[0].ideal)
        labels = galois.orbit(first, len(primes))
    return LocalFactor(p, e, f, labels)


# Ideal counting

class IdealClassTable(object):
    """Number of integral ideals of each norm in each ideal class.

    Attributes
    ----------
    labels : list of tuple
        Class labels; ``labels[0]`` is the trivial class.
    counts : numpy.ndarray
        ``counts[n, j]`` ideals of norm n in class ``labels[j]``.
    """

    def __init__(self, field, group, cutoff, labels, counts):
        self.field = field
        self.group = group
        self.cutoff = cutoff
        self.labels = labels
        self.counts = counts
        self.index = {label: j for j, label in enumerate(labels)}

    def totals(self):
        return self.counts.sum(axis=1)

    def class_totals(self):
        return self.counts.sum(axis=0)


def _local_distributions(factor, cutoff, index, plus):
    """``[(p^(f k), [(label index, count), ...]), ...]`` for k >= 1."""
    q = factor.p ** factor.f
    result = []
    power = q
    k = 1
    while power <= cutoff:
        dist = {}
        for combo in itertools.combinations_with_replacement(
                range(len(factor.labels)), k):
            label_index = 0
            for i in combo:
                label_index = plus[index[factor.labels[i]]][label_index]
            dist[label_index] = dist.get(label_index, 0) + 1
        result.append((power, sorted(dist.items())))
        power *= q
        k += 1
    return result


def ideal_class_table(field, group, cutoff):
    """Sieve the integral ideals of norm at most `cutoff` by class."""
    if group is None or group.order == 1:
        labels = [group.zero() if group is not None else ()]
        galois = None
    else:
        labels = group.elements()
        galois = GaloisLabels(group)
    index = {label: j for j, label in enumerate(labels)}
    h = len(labels)
    # minus[c][j] indexes labels[j] - labels[c], plus[c][j] the sum
    if group is None or group.order == 1:
        minus = np.zeros((1, 1), dtype=np.int64)
        plus = minus
    else:
        minus = np.array([[index[group.add(b, group.neg(a))] for b in labels]
                          for a in labels], dtype=np.int64)
        plus = np.array([[index[group.add(b, a)] for b in labels]
                         for a in labels], dtype=np.int64)
    counts = np.zeros((cutoff + 1, h), dtype=np.int64)
    counts[1, 0] = 1
    for p in sympy.primerange(2, cutoff + 1):
        factor = local_factor(field, p, group, galois, cutoff)
        if p ** factor.f > cutoff:
            continue
        local = _local_distributions(factor, cutoff, index, plus)
        smallest = local[0][0]
        for n in range(cutoff // smallest, 0, -1):
            if n % p == 0:
                continue
            row = counts[n]
            if not row.any():
                continue
            for power, dist in local:
                m = n * power
                if m > cutoff:
                    break
                for c, cnt in dist:
                    counts[m] += cnt * row[minus[c]]
    logging.debug("Sieved ideals of norm <= %d for disc %d", cutoff,
                  field.disc)
    return IdealClassTable(field, group, cutoff, labels, counts)


def ideal_counts(field, cutoff):
    """Number ``a_n`` of integral ideals of norm n, for ``n <= cutoff``.

    ``counts[0]`` is zero and ``counts[1]`` is one.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    table = ideal_class_table(field, None, cutoff)
    return IdealCountTable(field.disc, cutoff,
                           [int(a) for a in table.totals()])


def kappa_trend(table):
    """``sum_(n <= X) a_n / X``, tending to the residue of zeta_K."""
    return Fraction(sum(table.counts), table.cutoff)


# Characters of the class group

def characters(group):
    """Characters as exponent tuples against the elementary divisors."""
    return [tuple(k) for k in
            itertools.product(*[range(d) for d in group.divisors])]


def character_turn(group, character, label):
    """``chi(label) = exp(2 pi i t)``; returns t in [0, 1)."""
    turn = Fraction(0)
    for k, x, d in zip(character, label, group.divisors):
        turn += Fraction(k * x, d)
    return turn - math.floor(turn)


def character_value(group, character, label, prec=128):
    return exp_pi_i(2 * character_turn(group, character, label), prec)


def is_trivial_on(group, character, subgroup):
    return all(character_turn(group, character, g) == 0 for g in subgroup)


def conjugate_character(group, character):
    return tuple((-k) % d for k, d in zip(character, group.divisors))


def orthogonality_sums(group, prec=128):
    """``sum_chi chi(g)`` for every class g, as balls."""
    chars = characters(group)
    result = {}
    for label in group.elements():
        total = ComplexBall(0, 0, prec)
        for chi in chars:
            total = total + character_value(group, chi, label, prec)
        result[label] = total
    return result


# Smoothed sums

def smoothing_weight(n, x, prec):
    """``f(n/x) = (x/n)^(1/2) exp(-n/x)`` at working precision."""
    with mpmath.workprec(prec + 20):
        return mpmath.sqrt(x / n) * mpmath.exp(-n / x)


def tail_bound(x, cutoff):
    """Bound for ``sum_(n > cutoff) a_n f(n/x)`` using ``a_n <= n^2``.

    Valid for ``cutoff + 1 >= 3x``, where consecutive terms of
    ``n^(3/2) exp(-n/x)`` shrink by at least ``exp(-1/(2x))``.
    """
    x = mpmath.mpf(x)
    start = mpmath.mpf(cutoff + 1)
    if start < 3 * x:
        raise ValueError("cutoff below 3x")
    first = mpmath.sqrt(x) * start ** mpmath.mpf(1.5) * mpmath.exp(-start / x)
    return first / (1 - mpmath.exp(-1 / (2 * x)))


def choose_cutoff(x, bits=40):
    """Smallest cutoff, in steps of x from 3x, with tail below 2^-bits."""
    step = int(mpmath.ceil(x))
    cutoff = 3 * step
    target = mpmath.ldexp(1, -bits)
    while tail_bound(x, cutoff) >= target:
        cutoff += step
    return cutoff


def class_weights(table, x, prec=128, upto=None):
    """Per-class sums ``W_j = sum counts[n, j] f(n/x)`` and their radius.

    With `upto` the sum stops at ``n <= upto`` and no tail is added.
    """
    last = table.cutoff if upto is None else min(table.cutoff, upto)
    h = len(table.labels)
    with mpmath.workprec(prec + 20):
        x = mpmath.mpf(x)
        weights = [mpmath.mpf(0)] * h
        for n in range(1, last + 1):
            row = table.counts[n]
            if not row.any():
                continue
            w = smoothing_weight(n, x, prec)
            for j in np.nonzero(row)[0]:
                weights[j] += int(row[j]) * w
        rad = sum(weights) * mpmath.ldexp(1, 8 - prec)
        if upto is None:
            rad += tail_bound(x, table.cutoff)
    return weights, rad


def smoothed_sums(table, x, prec=128):
    """``S(x, chi)`` for every character of the class group.

    Returns
    -------
    dict
        Character tuple to ComplexBall.
    """
    weights, rad = class_weights(table, x, prec)
    group = table.group
    chars = characters(group) if group is not None else [()]
    result = {}
    for chi in chars:
        total = ComplexBall(0, rad, prec)
        for label, weight in zip(table.labels, weights):
            if group is None or group.order == 1:
                value = ComplexBall(1, 0, prec)
            else:
                value = character_value(group, chi, label, prec)
            total = total + value * ComplexBall(weight, 0, prec)
        result[chi] = total
    return result


def smoothed_sum(table, character, x, prec=128):
    """``S(x, chi)`` for one character."""
    return smoothed_sums(table, x, prec)[character]


def _coset_characters(group, subgroup):
    return [chi for chi in characters(group)
            if is_trivial_on(group, chi, subgroup)]


def coset_sum(table, coset, subgroup, x, prec=128):
    """``S_H(x)``, its unrestricted version and the Fourier comparison.

    Parameters
    ----------
    table : IdealClassTable
    coset : iterable of tuple
        Class labels of ``H = h H0``.
    subgroup : iterable of tuple
        Labels of ``H0``.
    x : number

    Returns
    -------
    CosetSums
    """
    coset = set(coset)
    subgroup = set(subgroup)
    group = table.group
    members = [j for j, label in enumerate(table.labels) if label in coset]
    upto = int(mpmath.floor(x))
    restricted_w, restricted_rad = class_weights(table, x, prec, upto)
    full_w, full_rad = class_weights(table, x, prec)
    restricted = ComplexBall(sum(restricted_w[j] for j in members),
                             restricted_rad, prec)
    full = ComplexBall(sum(full_w[j] for j in members), full_rad, prec)

    with mpmath.workprec(prec + 20):
        xm = mpmath.mpf(x)
        lower_mid = mpmath.mpf(0)
        for n in range(1, min(upto, table.cutoff) + 1):
            count = sum(int(table.counts[n, j]) for j in members)
            if count:
                lower_mid += count * mpmath.sqrt(xm / n)
        lower = ComplexBall(lower_mid, lower_mid * mpmath.ldexp(1, 8 - prec),
                            prec)

    if group is None or group.order == 1:
        fourier = full
    else:
        h = min(coset)
        sums = smoothed_sums(table, x, prec)
        chars = _coset_characters(group, subgroup)
        fourier = ComplexBall(0, 0, prec)
        for chi in chars:
            inverse = character_value(group, conjugate_character(group, chi),
                                      h, prec)
            fourier = fourier + inverse * sums[chi]
        fourier = fourier * Fraction(len(subgroup), group.order)
    e = real_ball(1, prec).exp().real
    sandwich = _both(lower.le(restricted * e), (restricted * e).le(
        fourier.real * e))
    return CosetSums(x, restricted, full, fourier, fourier.overlaps(full),
                     lower, sandwich)


def _both(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def s_bounds(table, kappa_hr, epsilons=S_EPSILONS, prec=128):
    """Check ``|S(eps sqrt(D), chi)| <= 163 eps^(7/12) D^(15/32)``.

    For the trivial character the constant is 393 and the residue term
    ``pi^(5/2)/2 eps h_K R_K`` is added; `kappa_hr` is ``h_K R_K``.
    """
    disc = table.field.disc
    root = real_ball(disc, prec).sqrt()
    scale = (real_ball(disc, prec).log().real * Fraction(15, 32)).exp().real
    results = []
    for eps in epsilons:
        x = eps * root
        with mpmath.workprec(prec):
            x_mid = x.mid.real
        sums = smoothed_sums(table, x_mid, prec)
        power = (real_ball(eps, prec).log().real * Fraction(7, 12)).exp().real
        for chi, value in sorted(sums.items()):
            trivial = all(k == 0 for k in chi)
            bound = power * scale * (S_CONSTANT_TRIVIAL if trivial
                                     else S_CONSTANT)
            if trivial:
                pi52 = pi_ball(prec) ** 2 * pi_ball(prec).sqrt()
                bound = bound + pi52 * Fraction(eps) * Fraction(1, 2) * \
                    kappa_hr
            magnitude = value.abs().real
            results.append(SBound(eps, chi, value, bound,
                                  magnitude.le(bound)))
    return results


# Residue of zeta_K

def residue_kappa(field, class_number, prec=128):
    """``kappa_K = 4 pi^2 h_K R_K / (w_K sqrt(D_K))``.

    For ``w_K = 2`` this is ``2 pi^2 h_K R_K / sqrt(D_K)``. The lower
    bound ``2 / (e log D_K)`` is checked and flagged as applicable only
    when ``D_K^(1/4) >= 98``.
    """
    disc = field.disc
    r_k = field.regulator(prec)
    r_f = field.subfield.regulator(prec)
    pi2 = pi_ball(prec).square()
    kappa = pi2 * 4 * class_number * r_k / \
        (real_ball(disc, prec).sqrt() * field.w)
    log_d = real_ball(disc, prec).log().real
    louboutin = (log_d * real_ball(1, prec).exp().real).inverse() * 2
    return KappaReport(kappa, field.w, field.w > 2, r_k.le(r_f * 2),
                       louboutin, kappa.ge(louboutin),
                       disc >= LOUBOUTIN_ROOT ** 4)


# Explicit subconvexity constants

def _von_mangoldt_terms(log_x, model):
    """``(n, Lambda(n) / log n)`` for the prime powers ``n <= e^log_x``."""
    top = int(mpmath.floor(mpmath.exp(log_x)))
    for p in sympy.primerange(2, top + 1):
        yield p, Fraction(1)
        if model == 'prime_powers':
            k, q = 2, p * p
            while q <= top:
                yield q, Fraction(1, k)
                k, q = k + 1, q * p


def chandee_constant(degree, lam=Fraction(1, 2), log_x=4,
                     conductor_coeff=Fraction(7, 10000), model='primes'):
    """Constant in ``|L(1/2 + it)| <= C (1 + |t|)^a D^b`` under GRH.

    The coefficients of ``-L'/L`` are bounded by ``degree * Lambda(n)``
    and the analytic conductor by ``conductor_coeff (1 + |t|)^degree D``.
    The ``model`` is 'primes' (only prime n contribute) or
    'prime_powers'.

    Raises
    ------
    HypothesisViolated
        If ``log x < max(2, 2 lam)``.
    """
    lam = Fraction(lam)
    log_x = Fraction(log_x)
    if log_x < max(2, 2 * lam):
        raise HypothesisViolated(lam, log_x)
    if model not in ('primes', 'prime_powers'):
        raise ValueError("unknown model {!r}".format(model))
    lx = _mpf(log_x)
    lm = _mpf(lam)
    exponent = mpmath.mpf(1) / 2 + lm / lx
    prime_sum = mpmath.mpf(0)
    for n, weight in _von_mangoldt_terms(lx, model):
        prime_sum += degree * _mpf(weight) * (lx - mpmath.log(n)) / \
            (lx * mpmath.mpf(n) ** exponent)
    delta_exponent = (1 + lam) / (2 * log_x)
    rest = (lm ** 2 + lm) * degree / lx ** 2 + \
        degree * mpmath.exp(-lm) / (mpmath.exp(lx / 2) * lx ** 2)
    constant = mpmath.exp(prime_sum + rest) * \
        _mpf(conductor_coeff) ** _mpf(delta_exponent)
    return ChandeeResult(degree, model, constant, delta_exponent,
                         degree * delta_exponent, prime_sum)


def zeta_quotient_conductor():
    """Coefficient of ``(1 + |t|)^3 D`` bounding the conductor of
    ``zeta_K / zeta``: ``|1 + 2it| |3 + 2it|^2 / (4 pi)^3``."""
    return 18 / (4 * mpmath.pi) ** 3


def zeta_aggregate(lam=Fraction(1, 2), log_x=4, model='primes'):
    """Constant for ``|zeta_K(1/2 + it)|`` through ``zeta_K / zeta`` and
    ``|zeta(1/2 + it)| <= 13 (1 + |t|)^(3/16)``."""
    quotient = chandee_constant(3, lam, log_x, zeta_quotient_conductor(),
                                model)
    return ChandeeResult(4, model,
                         quotient.constant * ZETA_CRITICAL_CONSTANT,
                         quotient.delta_exponent,
                         quotient.t_exponent + ZETA_CRITICAL_T_EXPONENT,
                         quotient.prime_sum)


# Elementary lemmas

def distinct_prime_counts(limit):
    """``omega[n]``, the number of distinct prime factors, for n <= limit."""
    omega = np.zeros(limit + 1, dtype=np.int32)
    for p in sympy.primerange(2, limit + 1):
        omega[p::p] += 1
    return omega


def delta_lemma_scan(n_min, n_max):
    """Integers with ``2^omega(N) > N^(1/log log N)`` in the range.

    Borderline cases of the float comparison are decided with mpmath.
    """
    if n_min < 10:
        raise ValueError("the range must start at 10 or above")
    omega = distinct_prime_counts(n_max)
    n = np.arange(n_min, n_max + 1, dtype=np.float64)
    log_n = np.log(n)
    lhs = omega[n_min:] * math.log(2)
    rhs = log_n / np.log(log_n)
    suspects = np.nonzero(lhs > rhs * (1 - 1e-9))[0]
    counterexamples = []
    with mpmath.workprec(200):
        for offset in suspects:
            value = n_min + int(offset)
            log_v = mpmath.log(value)
            if int(omega[value]) * mpmath.log(2) > log_v / mpmath.log(log_v):
                counterexamples.append(value)
    return counterexamples


def coset_size_bound(disc, coset_size, h_f, r_f, prec=128):
    """``D^(1/2) / #H <= 215 h_F^3 R_F log D D^(1/log log D)``.

    Proved for ``D > 9.3e7``; smaller discriminants are informational.
    """
    lhs = real_ball(disc, prec).sqrt() * Fraction(1, coset_size)
    log_d = real_ball(disc, prec).log().real
    power = (log_d / log_d.log().real).exp().real
    rhs = r_f * (215 * h_f ** 3) * log_d * power
    return CosetSizeBound(lhs, rhs, lhs.le(rhs), disc > COSET_THRESHOLD)


def min_norm_average(disc, min_norms, prec=128):
    """``(1/#H) sum (D^(1/2) / N([I]))^(1/2)`` over the given minimal norms."""
    if not min_norms:
        raise ValueError("empty coset")
    root = real_ball(disc, prec).sqrt()
    total = ComplexBall(0, 0, prec)
    for norm in min_norms:
        total = total + (root / norm).sqrt()
    return total * Fraction(1, len(min_norms))


def average_bound(disc, min_norms, class_number, r_f, r_k, prec=128):
    """Compare the minimal-norm average with ``80 D^(15/32)/#H + c'(F)``.

    ``c'(F)`` is evaluated both as ``5800 R_F log D / D^(1/32) + 20 R_F``
    and as ``108 D^(15/32) / h_K + 10 R_K``; ``1.4e5 R_F`` is reported.
    """
    average = min_norm_average(disc, min_norms, prec)
    size = len(min_norms)
    log_d = real_ball(disc, prec).log().real
    main = (log_d * Fraction(15, 32)).exp().real
    root32 = (log_d * Fraction(1, 32)).exp().real
    head = main * Fraction(80, size)
    displayed = head + r_f * 5800 * log_d / root32 + r_f * 20
    internal = head + main * Fraction(108, class_number) + r_k * 10
    return AverageBound(average, size, displayed, average.le(displayed),
                        internal, average.le(internal), r_f * 140000,
                        disc >= LOUBOUTIN_ROOT ** 4)


def main_theorem_bound(h_f, r_f, disc_f=5, gamma_f=2, h0_term=0):
    """Logarithm of the discriminant bound for CM fields over F.

    ``max(e^64, 64 log(144000 h_F^3 R_F),
    10 (h0 + gamma_F/2 + log(D_F)/4 + 8.4 R_F + 1.45))``

    Examples
    --------
    >>> bound = main_theorem_bound(1, 0.48121182505960344)
    >>> bound.dominant
    0
    >>> round(float(bound.branches[2]), 1)
    68.9
    """
    r_f = _mpf(r_f)
    branches = [
        mpmath.exp(64),
        64 * mpmath.log(144000 * h_f ** 3 * r_f),
        10 * (_mpf(h0_term) + _mpf(gamma_f) / 2 + mpmath.log(disc_f) / 4
              + mpmath.mpf('8.4') * r_f + mpmath.mpf('1.45')),
    ]
    dominant = max(range(3), key=lambda k: branches[k])
    return MainBound(branches, branches[dominant], dominant)


def bound_record(name, **values):
    row = {'check': name}
    for key, value in values.items():
        if isinstance(value, ComplexBall):
            row[key] = value.serialize()
        elif isinstance(value, Fraction):
            row[key] = str(value)
        elif isinstance(value, mpmath.mpf):
            row[key] = mpmath.nstr(value, 15)
        else:
            row[key] = value
    return row


CHECKS = ('S-bounds', 'kappa', 'delta-lemma', 'coset-bound', 'main-bound',
          'chandee')


def _main():
    # pylint: disable=import-outside-toplevel
    from cmcert import field_enum
    from cmcert import pipeline

    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('fields', type=argparse.FileType('r'), nargs='?',
                        default=None,
                        help="field database (.jsonl)")
    parser.add_argument('--check', choices=CHECKS, default='chandee',
                        help="quantity to evaluate [default: chandee]")
    parser.add_argument('--max-n', type=int, default=10 ** 6,
                        help="upper end of the delta-lemma scan")
    parser.add_argument('-o', '--output', type=argparse.FileType('w'),
                        default=sys.stdout,
                        help="output file [default: stdout]")
    config, args = settings.load_args(parser, ['seed', 'relation_effort',
                                               'prec', 'gamma_f', 'h0'])

    rows = []
    if args.check == 'chandee':
        for result in (chandee_constant(4), zeta_aggregate(),
                       chandee_constant(4, model='prime_powers')):
            rows.append(bound_record('chandee', degree=result.degree,
                                     model=result.model,
                                     constant=result.constant,
                                     delta_exponent=result.delta_exponent,
                                     t_exponent=result.t_exponent))
    elif args.check == 'delta-lemma':
        bad = delta_lemma_scan(10, args.max_n)
        rows.append(bound_record('delta-lemma', n_max=args.max_n,
                                 counterexamples=bad))
    elif args.check == 'main-bound':
        data = realquad.real_quad_data(5)
        bound = main_theorem_bound(data.class_number,
                                   data.regulator(64).mid.real, 5,
                                   config.gamma_f, config.h0)
        rows.append(bound_record('main-bound', branches=[
            mpmath.nstr(b, 15) for b in bound.branches],
            log_bound=bound.log_bound, dominant=bound.dominant))
    else:
        if args.fields is None:
            parser.error("{} needs a field database".format(args.check))
        cfg = pipeline.PipelineConfig.from_settings(config)
        for field in field_enum.load_fields(args.fields):
            rows.extend(pipeline.analytic_rows(field, cfg, args.check))
    for row in rows:
        args.output.write(json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
