#!/usr/bin/env python

"""
Period matrices of CM triples and their reduction into the Siegel
fundamental domain for Sp4(Z).

A point is a symmetric 2x2 matrix ``Z = X + iY`` held as three complex
balls. Reduction alternates integral translation of X, reduction of Y by
GL2(Z) and inversions ``Z -> M Z`` from a finite family of Sp4(Z) elements
whenever ``|det(CZ + D)| < 1``. The product of the applied matrices is kept
as an exact certificate.
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
import numpy as np

from cmcert import intmat
from cmcert import polarize
from cmcert import settings
from cmcert.ball import ComplexBall, Undecidable, real_ball, \
    with_precision_retry


MAX_STEPS = 10 ** 4


class ReductionDiverged(Exception):
    """Reduction did not terminate within the step cap."""
    def __init__(self, steps):
        Exception.__init__(self)
        self.steps = steps

    def __str__(self):
        return "no reduced point after {} steps".format(self.steps)


Inequality = namedtuple('Inequality', 'name holds slack')


class PeriodPoint(object):
    """Point of the Siegel upper half space with an Sp4(Z) certificate.

    Attributes
    ----------
    z1, z12, z2 : ComplexBall
    matrix : list of lists of int
        Symplectic matrix M with ``self = M * source point``.
    basis : SymplecticBasis or None
        The basis the unreduced point was computed from.
    flags : dict
        Boundary conditions that could not be decided from the radii.
    """

    def __init__(self, z1, z12, z2, matrix=None, basis=None, flags=None):
        self.z1 = z1
        self.z12 = z12
        self.z2 = z2
        self.matrix = matrix if matrix is not None else intmat.identity(4)
        self.basis = basis
        self.flags = flags if flags is not None else {}

    @property
    def prec(self):
        return self.z1.prec

    def entries(self):
        return [[self.z1, self.z12], [self.z12, self.z2]]

    @property
    def y1(self):
        return self.z1.imag

    @property
    def y2(self):
        return self.z2.imag

    @property
    def y12(self):
        return self.z12.imag

    def det_y(self):
        return self.y1 * self.y2 - self.y12.square()

    def trace_y(self):
        return self.y1 + self.y2

    def reduced_basis(self):
        """Symplectic basis whose period matrix is this point."""
        return transform_basis(self.basis, self.matrix)

    def serialize(self):
        return {
            'z1': self.z1.serialize(),
            'z12': self.z12.serialize(),
            'z2': self.z2.serialize(),
            'matrix': [[str(x) for x in row] for row in self.matrix],
            'flags': {k: v for k, v in sorted(self.flags.items())},
        }

    @classmethod
    def deserialize(cls, record):
        return cls(ComplexBall.deserialize(record['z1']),
                   ComplexBall.deserialize(record['z12']),
                   ComplexBall.deserialize(record['z2']),
                   [[int(x) for x in row] for row in record['matrix']],
                   None, dict(record.get('flags', {})))

    def __repr__(self):
        return "PeriodPoint(z1={}, z12={}, z2={})".format(self.z1, self.z12,
                                                          self.z2)


# Symplectic matrices

J4 = [[0, 0, 1, 0],
      [0, 0, 0, 1],
      [-1, 0, 0, 0],
      [0, -1, 0, 0]]


def blocks(m):
    """``(A, B, C, D)`` of a 4x4 matrix."""
    return ([row[:2] for row in m[:2]], [row[2:] for row in m[:2]],
            [row[:2] for row in m[2:]], [row[2:] for row in m[2:]])


def from_blocks(a, b, c, d):
    return [a[0] + b[0], a[1] + b[1], c[0] + d[0], c[1] + d[1]]


def is_symplectic(m):
    """Exact test ``M^t J M = J``."""
    return intmat.matmul(intmat.matmul(intmat.transpose(m), J4), m) == J4


def _inverse2(u):
    det = u[0][0] * u[1][1] - u[0][1] * u[1][0]
    if abs(det) != 1:
        raise ValueError("not unimodular")
    return [[u[1][1] * det, -u[0][1] * det], [-u[1][0] * det, u[0][0] * det]]


def gl2_matrix(u):
    """``diag(U, U^-t)``, acting as ``Z -> U Z U^t``."""
    inv_t = intmat.transpose(_inverse2(u))
    zero = [[0, 0], [0, 0]]
    return from_blocks(u, zero, zero, inv_t)


def translation_matrix(s):
    """``[[1, S], [0, 1]]``, acting as ``Z -> Z + S``."""
    ident = [[1, 0], [0, 1]]
    zero = [[0, 0], [0, 0]]
    return from_blocks(ident, s, zero, ident)


def symplectic_inverse(m):
    """``M^-1 = -J M^t J``."""
    neg_j = [[-x for x in row] for row in J4]
    return intmat.matmul(intmat.matmul(neg_j, intmat.transpose(m)), J4)


def _inversion(s):
    """``[[0, -1], [1, S]]``: ``Z -> -(Z + S)^-1``, ``det(CZ+D) = det(Z+S)``."""
    ident = [[1, 0], [0, 1]]
    neg = [[-1, 0], [0, -1]]
    zero = [[0, 0], [0, 0]]
    return from_blocks(zero, neg, ident, s)


def _embedded_inversion(index, d):
    """Inversion of the coordinate `index`: ``det(CZ+D) = z_index + d``."""
    a = [[1, 0], [0, 1]]
    b = [[0, 0], [0, 0]]
    c = [[0, 0], [0, 0]]
    dd = [[1, 0], [0, 1]]
    a[index][index] = 0
    b[index][index] = -1
    c[index][index] = 1
    dd[index][index] = d
    return from_blocks(a, b, c, dd)


def generator_family():
    """Sp4(Z) elements tested for ``|det(CZ + D)| >= 1``.

    Inversions ``-(Z + S)^-1`` for the 27 symmetric S with entries in
    {-1, 0, 1}, the six embedded SL2 inversions ``z_k -> -1/(z_k + d)`` and
    three inversions along ``z_1 - 2 z_12 + z_2``. This contains the
    classical family of Gottschling.
    """
    family = []
    for s1, s12, s2 in itertools.product((-1, 0, 1), repeat=3):
        family.append(_inversion([[s1, s12], [s12, s2]]))
    for index in (0, 1):
        for d in (-1, 0, 1):
            family.append(_embedded_inversion(index, d))
    shear = gl2_matrix([[1, -1], [0, 1]])
    shear_inv = symplectic_inverse(shear)
    for d in (-1, 0, 1):
        family.append(intmat.matmul(intmat.matmul(
            shear_inv, _embedded_inversion(0, d)), shear))
    return family


# Ball matrices

def _mat_mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)]
            for i in range(2)]


def _mat_det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _mat_inv(a):
    det = _mat_det(a)
    if not det.is_nonzero():
        raise Undecidable("singular 2x2 matrix")
    inv = det.inverse()
    return [[a[1][1] * inv, -a[0][1] * inv], [-a[1][0] * inv, a[0][0] * inv]]


def _lin(int_mat, z, const):
    """``int_mat * z + const`` for integer 2x2 matrices."""
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            value = z[0][j] * int_mat[i][0] + z[1][j] * int_mat[i][1]
            row.append(value + const[i][j])
        out.append(row)
    return out


def cz_plus_d(m, z):
    _, _, c, d = blocks(m)
    return _lin(c, z, d)


def j_factor(m, z):
    """``det(CZ + D)``."""
    return _mat_det(cz_plus_d(m, z))


def act(m, point):
    """``(AZ + B)(CZ + D)^-1`` with the certificate updated."""
    a, b, c, d = blocks(m)
    z = point.entries()
    num = _lin(a, z, b)
    den = _lin(c, z, d)
    w = _mat_mul(num, _mat_inv(den))
    off = (w[0][1] + w[1][0]) * Fraction(1, 2)
    return PeriodPoint(w[0][0], off, w[1][1],
                       intmat.matmul(m, point.matrix), point.basis,
                       dict(point.flags))


# Period matrices

def basis_change(m):
    """Basis transform P matching ``Z -> M Z``.

    If the new basis is ``e'_j = sum_i P_ij e_i`` then the period matrix of
    ``e'`` is ``M`` applied to that of ``e``.
    """
    a, b, c, d = blocks(m)
    return from_blocks(intmat.transpose(d), intmat.transpose(b),
                       intmat.transpose(c), intmat.transpose(a))


def transform_basis(basis, m):
    """Symplectic basis whose period matrix is M applied to that of `basis`."""
    p = basis_change(m)
    field = basis.triple.ideal.field
    elements = []
    for j in range(4):
        element = field.zero
        for i in range(4):
            if p[i][j]:
                element = element + basis.elements[i] * p[i][j]
        elements.append(element)
    return polarize.SymplecticBasis(basis.triple, elements,
                                    intmat.matmul(basis.transform, p))


def _period_matrix(basis, prec):
    cm_type = basis.triple.cm_type
    images = [[e.embed(k, prec) for e in basis.elements]
              for k in (cm_type.a, cm_type.b)]
    omega1 = [[images[0][0], images[0][1]], [images[1][0], images[1][1]]]
    omega2 = [[images[0][2], images[0][3]], [images[1][2], images[1][3]]]
    w = _mat_mul(_mat_inv(omega1), omega2)
    if not w[0][1].overlaps(w[1][0]):
        raise ValueError("period matrix is not symmetric")
    z12 = ((w[0][1] + w[1][0]) * Fraction(1, 2)).conjugate()
    point = PeriodPoint(w[0][0].conjugate(), z12, w[1][1].conjugate(),
                        intmat.identity(4), basis)
    positive = (point.y1.gt(0), point.det_y().gt(0))
    if None in positive:
        raise Undecidable("positivity of Im Z")
    if not all(positive):
        raise ValueError("Im Z is not positive definite")
    return point


def period_matrix(basis, prec=128, prec_cap=4096):
    """Period matrix ``Z`` of a symplectic basis, in the chart with Y > 0.

    ``Omega_1^-1 Omega_2`` has negative definite imaginary part for the sign
    convention ``Tr(xi conj(e_1) e_3) = 1``; its complex conjugate is used.
    """
    return with_precision_retry(lambda p: _period_matrix(basis, p), prec,
                                prec_cap)


# Reduction

def _reduce_y(point):
    """Integral U with ``U Y U^t`` reduced, decided on midpoints."""
    with mpmath.workprec(point.prec):
        y = [[point.y1.mid.real, point.y12.mid.real],
             [point.y12.mid.real, point.y2.mid.real]]
        tol = 4 * (point.y1.rad + point.y2.rad + point.y12.rad)
    u = [[1, 0], [0, 1]]

    def apply(v):
        return [[sum(v[i][k] * y[k][l] * v[j][l] for k in range(2)
                     for l in range(2)) for j in range(2)] for i in range(2)]

    current = apply(u)
    for _ in range(200):
        changed = False
        if current[0][0] > current[1][1] + tol:
            u = [u[1], u[0]]
            changed = True
        current = apply(u)
        if 2 * abs(current[0][1]) > current[0][0] + tol:
            q = int(mpmath.nint(current[0][1] / current[0][0]))
            u = [u[0], [u[1][0] - q * u[0][0], u[1][1] - q * u[0][1]]]
            changed = True
        current = apply(u)
        if not changed:
            break
    if current[0][1] < -tol:
        u = [u[0], [-u[1][0], -u[1][1]]]
    return u


def _translation(point):
    shifts = []
    for z in (point.z1, point.z12, point.z2):
        with mpmath.workprec(point.prec):
            x = z.mid.real
            half = mpmath.mpf(1) / 2
            if -half - z.rad <= x < half + z.rad:
                shifts.append(0)
            else:
                shifts.append(-int(mpmath.floor(x + half)))
    return [[shifts[0], shifts[1]], [shifts[1], shifts[2]]]


def _best_inversion(point, family):
    best, best_mag = None, None
    for m in family:
        det = j_factor(m, point.entries()).abs()
        if det.lt(1):
            mag = det.upper()
            if best is None or mag < best_mag:
                best, best_mag = m, mag
    return best


def _reduce(point, family):
    steps = 0
    while steps < MAX_STEPS:
        steps += 1
        u = _reduce_y(point)
        if u != [[1, 0], [0, 1]]:
            point = act(gl2_matrix(u), point)
        shift = _translation(point)
        if shift != [[0, 0], [0, 0]]:
            point = act(translation_matrix(shift), point)
        inversion = _best_inversion(point, point_family(family))
        if inversion is None:
            logging.debug("Reduced after %d steps", steps)
            return point
        before = point.det_y()
        point = act(inversion, point)
        if not point.det_y().gt(before):
            raise Undecidable("det Y did not grow under an inversion")
    raise ReductionDiverged(steps)


def point_family(family):
    return family if family is not None else generator_family()


def reduce_to_f2(point, prec_cap=4096, family=None):
    """Reduce a point into the fundamental domain.

    Raises
    ------
    ReductionDiverged
        If the step cap is reached.
    PrecisionExhausted
        If the reduction cannot be carried out below `prec_cap` bits.
    """
    family = point_family(family)

    def attempt(prec):
        start = point
        if prec > point.prec and point.basis is not None:
            start = period_matrix(point.basis, prec, prec_cap)
            start = act(point.matrix, start) if point.matrix != \
                intmat.identity(4) else start
        reduced = _reduce(start, family)
        reduced.flags = fundamental_domain_flags(reduced, family)
        return reduced

    return with_precision_retry(attempt, point.prec, prec_cap)


def fundamental_domain_flags(point, family=None):
    """Status of the defining conditions; None marks a boundary case."""
    family = point_family(family)
    half = Fraction(1, 2)
    flags = {}
    for name, z in (('x1', point.z1), ('x12', point.z12), ('x2', point.z2)):
        flags['S1_' + name] = _both(z.real.ge(-half), z.real.le(half))
    y1, y2, y12 = point.y1, point.y2, point.y12
    flags['S2_y12'] = y12.ge(0)
    flags['S2_2y12_y1'] = (y12 * 2).le(y1)
    flags['S2_y1_y2'] = y1.le(y2)
    worst = True
    for m in family:
        verdict = j_factor(m, point.entries()).abs().ge(1)
        worst = _both(worst, verdict)
    flags['S3'] = worst
    return flags


def _both(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def is_reduced(point, family=None):
    flags = fundamental_domain_flags(point, family)
    return _fold(flags.values())


def _fold(verdicts):
    result = True
    for verdict in verdicts:
        result = _both(result, verdict)
    return result


# Inequalities

def check_inequalities(point, disc, min_norm_inv=1):
    """The bounds satisfied by reduced CM points.

    Parameters
    ----------
    point : PeriodPoint
        A reduced point.
    disc : int
        Discriminant of the CM field.
    min_norm_inv : int
        Minimal norm of an integral ideal in the class of ``I^-1``.

    Returns
    -------
    list of Inequality
        ``holds`` is True, False or None (undecidable at this precision);
        ``slack`` is left side minus right side, oriented so that a
        satisfied bound has nonnegative slack.
    """
    prec = point.prec
    det_y = point.det_y()
    root = real_ball(disc, prec).sqrt()
    results = []

    lhs = point.y1 * point.y2
    rhs = det_y * Fraction(4, 3)
    results.append(Inequality('y1y2_le_4_3_detY', lhs.le(rhs), rhs - lhs))

    results.append(Inequality('detY_ge_9_16', det_y.ge(Fraction(9, 16)),
                              det_y - Fraction(9, 16)))
    results.append(Inequality('detY_ge_9_8', det_y.ge(Fraction(9, 8)),
                              det_y - Fraction(9, 8)))

    z12 = point.z12.abs().real
    bound = root.inverse() * Fraction(2, 3)
    results.append(Inequality('abs_z12_ge_2_3_disc', z12.ge(bound),
                              z12 - bound))

    trace = point.trace_y()
    bound = (root / min_norm_inv).sqrt() * Fraction(2, 3)
    results.append(Inequality('trY_le_2_3_root', trace.le(bound),
                              bound - trace))

    y12 = point.y12
    if y12.is_nonzero():
        bound = root.inverse()
        value = y12.abs().real
        results.append(Inequality('abs_y12_ge_disc', value.ge(bound),
                                  value - bound))
    return results


def y_cross_check(point, prec=None):
    """Compare ``Y^-1`` with the Hermitian form on the reduced basis.

    Returns the three pairs ``(from Y, from H)`` for ``y2/det Y``,
    ``y1/det Y`` and ``-y12/det Y``.
    """
    if prec is None:
        prec = point.prec
    basis = point.reduced_basis()
    triple = basis.triple
    e1, e2 = basis.elements[0], basis.elements[1]
    det_y = point.det_y()
    return [
        (point.y2 / det_y,
         polarize.hermitian_form(triple, e1, e1, prec).real),
        (point.y1 / det_y,
         polarize.hermitian_form(triple, e2, e2, prec).real),
        (-point.y12 / det_y,
         polarize.hermitian_form(triple, e1, e2, prec).real),
    ]


# Random spot check

def random_symplectic(rng, height=2, length=6):
    """Product of random translations, GL2 moves and inversions."""
    m = intmat.identity(4)
    for _ in range(length):
        kind = rng.randint(0, 3)
        if kind == 0:
            s1, s12, s2 = (int(x) for x in rng.randint(-height, height + 1,
                                                       size=3))
            g = translation_matrix([[s1, s12], [s12, s2]])
        elif kind == 1:
            q = int(rng.randint(-height, height + 1))
            g = gl2_matrix([[1, q], [0, 1]] if rng.randint(0, 2) else
                           [[0, 1], [1, 0]])
        else:
            g = J4
        m = intmat.matmul(g, m)
    return m


def spot_check(point, count=10000, seed=0, height=2, length=6):
    """Number of random Sp4(Z) elements with ``|det(CZ + D)| < 1``."""
    rng = np.random.RandomState(seed)
    violations = 0
    undecided = 0
    for _ in range(count):
        m = random_symplectic(rng, height, length)
        verdict = j_factor(m, point.entries()).abs().ge(1)
        if verdict is False:
            violations += 1
        elif verdict is None:
            undecided += 1
    if undecided:
        logging.info("%d random elements on the boundary", undecided)
    return violations


def _main():
    # pylint: disable=import-outside-toplevel
    from cmcert import field_enum
    from cmcert import pipeline

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
    cfg = pipeline.PipelineConfig.from_settings(config)

    for field in field_enum.load_fields(args.fields):
        for item in pipeline.field_points(field, cfg):
            row = item.point.serialize()
            row['disc_K'] = str(field.disc)
            row['cm_type'] = list(item.triple.cm_type)
            row['class'] = list(item.label)
            args.output.write(json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
