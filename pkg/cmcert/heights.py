#!/usr/bin/env python

"""
Archimedean parts and Faltings heights of the CM Jacobians of a field.

For the points ``Z`` of one CM type the infinity part is
``h_inf = -1/(10 #H) sum log(|chi_10(Z)| det(Im Z)^5)``, and the height is
``h = h0 + (h_1 + h_2 + h_3 + h_4)/4 - 4/5 log 2 - log pi``.
"""

from __future__ import division

import argparse
from collections import namedtuple
from fractions import Fraction
import json
import logging
import sys

import mpmath

from cmcert import settings
from cmcert.ball import ComplexBall, Error, pi_ball, real_ball


CHI10_LOWER_CONSTANT = Fraction(1, 12500)
HEIGHT_THRESHOLD = 93 * 10 ** 6
LOWER_BOUND_SLOPE_SQUARE = 5

PointHeight = namedtuple('PointHeight', [
    'term',
    'chi10_bound_holds',
    'control'])

HeightReport = namedtuple('HeightReport', [
    'infinity_parts',
    'h0',
    'faltings_height',
    'faltings_height_scaled',
    'lower_bound',
    'lower_bound_holds',
    'archimedean_bound',
    'archimedean_bound_applies',
    'archimedean_bound_holds'])


def point_term(point, chi):
    """``log(|chi_10(Z)| det(Im Z)^5)``."""
    return chi.log_abs() + point.det_y().log().real * 5


def _min_factor(point):
    """``min(1, pi |z12|)^2`` as a real ball."""
    prec = point.prec
    value = point.z12.abs().real * pi_ball(prec)
    if value.ge(1) is True:
        return ComplexBall(1, 0, prec)
    if value.le(1) is True:
        return value.square()
    # straddles 1: enclose both branches
    low = value.square()
    with mpmath.workprec(prec):
        mid = (low.lower() + 1) / 2
        rad = (1 - low.lower()) / 2 + low.rad + mpmath.ldexp(1, 2 - prec)
    return ComplexBall(mid, rad, prec)


def chi10_lower_bound(point):
    """``8e-5 min(1, pi |z12|)^2 exp(-2 pi Tr Y)``."""
    prec = point.prec
    decay = (point.trace_y() * pi_ball(prec) * -2).exp().real
    return _min_factor(point) * decay * CHI10_LOWER_CONSTANT


def pointwise_control(point):
    """Upper bound on ``-1/10 log(|chi_10| det Y^5)`` implied by the
    lower bound on ``|chi_10|``."""
    prec = point.prec
    floor = (_min_factor(point) * CHI10_LOWER_CONSTANT).log().real
    return (point.trace_y() * pi_ball(prec) * 2 - floor
            - point.det_y().log().real * 5) * Fraction(1, 10)


def point_height(point, chi):
    """Term of one point together with its two cross-checks."""
    term = point_term(point, chi)
    holds = chi.abs().real.ge(chi10_lower_bound(point))
    control = pointwise_control(point).ge(term * Fraction(-1, 10))
    return PointHeight(term, holds, control)


def infinity_part(terms):
    """``-1/(10 n) * sum`` over the terms of the n points of a coset.

    Examples
    --------
    >>> from cmcert.ball import ComplexBall
    >>> float(infinity_part([ComplexBall(-10), ComplexBall(-30)]))
    2.0
    """
    if not terms:
        raise ValueError("no points")
    total = terms[0]
    for term in terms[1:]:
        total = total + term
    return total * Fraction(-1, 10 * len(terms))


def scaled_shift(prec):
    """Change of each infinity part when chi_10 carries a 2^-12 factor."""
    return real_ball(2, prec).log().real * Fraction(12, 10)


def assemble_height(infinity_parts, h0=0):
    """``h0 + mean(infinity_parts) - 4/5 log 2 - log pi``."""
    if len(infinity_parts) != 4:
        raise ValueError("expected four infinity parts")
    prec = infinity_parts[0].prec
    total = infinity_parts[0]
    for part in infinity_parts[1:]:
        total = total + part
    log2 = real_ball(2, prec).log().real
    logpi = pi_ball(prec).log().real
    return total * Fraction(1, 4) + Fraction(h0) - log2 * Fraction(4, 5) \
        - logpi


def height_lower_bound(disc_k, disc_f=5, gamma_f=2,
                       gamma_q=Fraction(113243, 200000), prec=128):
    """``-(gamma_F/2 + log(Delta_F)/4 + log(2 pi) + gamma_Q)
    + sqrt(5)/20 log(Delta_K)``.

    Only the constant term depends on F; the slope ``sqrt(5)/20`` holds for
    every cyclic quartic CM field.
    """
    const = Fraction(gamma_f) / 2 + Fraction(gamma_q) \
        + real_ball(disc_f, prec).log().real * Fraction(1, 4) \
        + (pi_ball(prec) * 2).log().real
    slope = real_ball(LOWER_BOUND_SLOPE_SQUARE, prec).sqrt() * \
        Fraction(1, 20)
    return slope * real_ball(disc_k, prec).log().real - const


def archimedean_bound(disc_k, h_f, r_f, prec=128):
    """Upper bound for each infinity part, proved for large discriminants.

    ``0.74 + 8.4 R_F + (1/10 + 7200 h_F^3 R_F / D^(1/32 - 1/log log D)
    + 2430 R_F / D^(1/32)) log D``
    """
    log_d = real_ball(disc_k, prec).log().real
    loglog = log_d.log().real
    r_f = ComplexBall.exact(r_f, prec) if not isinstance(r_f, ComplexBall) \
        else r_f
    power = (log_d * (Fraction(1, 32) - loglog.inverse())).exp().real
    root32 = (log_d * Fraction(1, 32)).exp().real
    inner = Fraction(1, 10) + r_f * (h_f ** 3 * 7200) / power + \
        r_f * 2430 / root32
    return r_f * Fraction(42, 5) + Fraction(37, 50) + inner * log_d


def faltings_height(infinity_parts, disc_k, h_f, r_f, h0=0, disc_f=5,
                    gamma_f=2, gamma_q=Fraction(113243, 200000)):
    """Height of the Jacobians of a field with its bound checks.

    Parameters
    ----------
    infinity_parts : list of ComplexBall
        One per CM type, computed with the unscaled chi_10.
    disc_k : int
    h_f : int
        Class number of the real quadratic subfield.
    r_f : ComplexBall
        Regulator of the real quadratic subfield.
    h0 : Fraction
        Finite part; zero for everywhere good reduction.

    Returns
    -------
    HeightReport
    """
    prec = infinity_parts[0].prec
    height = assemble_height(infinity_parts, h0)
    shift = scaled_shift(prec)
    height_scaled = assemble_height([p + shift for p in infinity_parts], h0)
    lower = height_lower_bound(disc_k, disc_f, gamma_f, gamma_q, prec)
    bound = archimedean_bound(disc_k, h_f, r_f, prec)
    holds = True
    for part in infinity_parts:
        verdict = part.le(bound)
        if verdict is False:
            holds = False
            break
        if verdict is None:
            holds = None
    applies = disc_k >= HEIGHT_THRESHOLD
    if not applies and holds is False:
        logging.info("Archimedean bound fails below its threshold at %d",
                     disc_k)
    return HeightReport(infinity_parts, Fraction(h0), height, height_scaled,
                        lower, height.ge(lower), bound, applies, holds)


def colmez_height(character, disc_k, disc_f=5, prec=128):
    """Averaged Colmez value of the Faltings height for the field of a
    quartic character.

    ``-1/2 sum_psi L'(0, psi)/L(0, psi) - 1/4 log(D_K/D_F) - log(2 pi)
    + log 2`` over the two quartic characters ``psi`` of the field, for the
    metric ``(i/2)^g int w ^ conj(w)``. The values at 0 come from Lerch's
    formula. All CM types of a cyclic quartic field give this height.

    Parameters
    ----------
    character : QuarticCharacter
    disc_k, disc_f : int

    Returns
    -------
    mpmath.mpf
        Not certified; for comparison with the computed heights.
    """
    with mpmath.workprec(prec):
        f = character.conductor
        value = 0
        derivative = 0
        for a, e in character.table.items():
            psi = mpmath.mpc(0, 1) ** e
            x = mpmath.mpf(a) / f
            value += psi * (mpmath.mpf(1) / 2 - x)
            derivative += psi * mpmath.loggamma(x)
        derivative -= mpmath.log(f) * value
        ratio = 2 * mpmath.re(derivative / value)
        return -ratio / 2 - mpmath.log(mpmath.mpf(disc_k) / disc_f) / 4 \
            - mpmath.log(2 * mpmath.pi) + mpmath.log(2)


def height_record(report):
    return {
        'infinity_parts': [p.serialize() for p in report.infinity_parts],
        'h0': str(report.h0),
        'faltings_height': report.faltings_height.serialize(),
        'faltings_height_scaled': report.faltings_height_scaled.serialize(),
        'lower_bound': report.lower_bound.serialize(),
        'lower_bound_holds': report.lower_bound_holds,
        'archimedean_bound': report.archimedean_bound.serialize(),
        'archimedean_bound_applies': report.archimedean_bound_applies,
        'archimedean_bound_holds': report.archimedean_bound_holds,
    }


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
                                               'prec_cap', 'h0', 'gamma_f',
                                               'gamma_q'])
    cfg = pipeline.PipelineConfig.from_settings(config)

    for field in field_enum.load_fields(args.fields):
        row = {'disc_K': str(field.disc)}
        try:
            report = pipeline.field_heights(field, cfg)
        except Error as exc:
            logging.warning("Field %d: %s", field.disc, exc)
            row['error'] = str(exc)
        else:
            row.update(height_record(report))
        args.output.write(json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
