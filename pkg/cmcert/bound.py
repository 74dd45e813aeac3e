#!/usr/bin/env python

"""
Evaluate the discriminant bound for cyclic quartic CM fields containing a
real quadratic field F whose CM Jacobians have everywhere good reduction.

The bound is printed on a logarithmic scale, ``log D_K <= value``, together
with the three competing branches.
"""

from __future__ import division

import argparse
import json
import sys

import mpmath

from cmcert import analytic
from cmcert import realquad
from cmcert import settings


def _main():
    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--disc-f', type=int, default=5,
                        help="discriminant of F [default: 5]")
    parser.add_argument('-o', '--output', type=argparse.FileType('w'),
                        default=sys.stdout,
                        help="output file [default: stdout]")
    config, args = settings.load_args(parser, ['h0', 'gamma_f', 'prec'])

    subfield = realquad.real_quad_data(args.disc_f)
    r_f = subfield.regulator(config.prec)
    result = analytic.main_theorem_bound(subfield.class_number, r_f,
                                         args.disc_f, config.gamma_f,
                                         config.h0)
    row = {
        'disc_F': str(args.disc_f),
        'h_F': str(subfield.class_number),
        'R_F': mpmath.nstr(r_f.mid.real, 20),
        'branches': [mpmath.nstr(b, 20) for b in result.branches],
        'dominant': result.dominant,
        'log_bound': mpmath.nstr(result.log_bound, 20),
    }
    args.output.write(json.dumps(row, sort_keys=True) + '\n')


if __name__ == '__main__':
    _main()
