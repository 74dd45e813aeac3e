#!/usr/bin/env python

"""
Write JSON, CSV and SVG reports from field dossiers.

The JSON report holds the run summary and every dossier; the CSV report has
one row per field; the SVG report plots the slack of the height bounds
against log D_K.
"""

from __future__ import division

import argparse
import csv
import json
import logging
import math
import os

from cmcert import settings


CSV_COLUMNS = [
    'disc_K',
    'h_K',
    'error',
    'integral',
    'faltings_height',
    'lower_bound',
    'lower_bound_holds',
    'archimedean_bound_holds',
    'checks_passed',
    'checks_failed',
    'checks_undecided',
    'status',
]

JSON_NAME = 'report.json'
CSV_NAME = 'report.csv'
SVG_NAME = 'slack.svg'


def _midpoint(record):
    """Float midpoint of a serialised ball, or None."""
    if not record:
        return None
    return float(record['re'])


def csv_row(dossier):
    heights = dossier.sections.get('heights', {})
    group = dossier.sections.get('class_group', {})
    enforced = [c for c in dossier.checks if c.enforced]
    return {
        'disc_K': dossier.disc,
        'h_K': group.get('h_K', ''),
        'error': dossier.error['type'] if dossier.error else '',
        'integral': dossier.integral,
        'faltings_height': _midpoint(heights.get('faltings_height')),
        'lower_bound': _midpoint(heights.get('lower_bound')),
        'lower_bound_holds': heights.get('lower_bound_holds'),
        'archimedean_bound_holds': heights.get('archimedean_bound_holds'),
        'checks_passed': sum(1 for c in enforced if c.holds is True),
        'checks_failed': sum(1 for c in enforced if c.holds is False),
        'checks_undecided': sum(1 for c in enforced if c.holds is None),
        'status': dossier.status(),
    }


def write_json(dossiers, stream, summary=None):
    report = {
        'summary': summary if summary is not None else {},
        'dossiers': [d.serialize() for d in dossiers],
    }
    json.dump(report, stream, sort_keys=True, indent=1)
    stream.write('\n')


def write_csv(dossiers, stream):
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS,
                            lineterminator='\n')
    writer.writeheader()
    for dossier in dossiers:
        writer.writerow(csv_row(dossier))


def slack_series(dossiers):
    """``(log D_K, height slack, archimedean slack)`` per finished field.

    The height slack is ``h - lower bound``; the archimedean slack is the
    bound minus the largest infinity part.
    """
    rows = []
    for dossier in dossiers:
        heights = dossier.sections.get('heights')
        if dossier.error is not None or not heights:
            continue
        h = _midpoint(heights['faltings_height'])
        lower = _midpoint(heights['lower_bound'])
        bound = _midpoint(heights['archimedean_bound'])
        worst = max(_midpoint(p) for p in heights['infinity_parts'])
        rows.append((math.log(dossier.disc), h - lower, bound - worst))
    return sorted(rows)


def write_svg(dossiers, path):
    # pylint: disable=import-outside-toplevel
    from matplotlib.backends.backend_agg import FigureCanvasAgg as \
        FigureCanvas
    from matplotlib.figure import Figure

    rows = slack_series(dossiers)
    fig = Figure(figsize=(8, 4))
    FigureCanvas(fig)
    ax = fig.add_subplot(1, 1, 1)
    if rows:
        log_d, height_slack, arch_slack = zip(*rows)
        ax.plot(log_d, height_slack, 'o-', label="h - lower bound")
        ax.plot(log_d, arch_slack, 's--', label="bound - max h_inf")
        ax.legend(loc='best')
    ax.axhline(0, color='k', linewidth=0.8)
    ax.set_xlabel("log D_K")
    ax.set_ylabel("slack")
    ax.set_title("Slack of the height bounds")
    ax.grid(True)
    fig.tight_layout()
    fig.savefig(path, format='svg')


def emit_report(dossiers, formats, out_dir, summary=None):
    """Write the requested report formats into `out_dir`.

    Returns
    -------
    list of str
        Paths of the written files.
    """
    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)
    paths = []
    if 'json' in formats:
        path = os.path.join(out_dir, JSON_NAME)
        with open(path, 'w') as stream:
            write_json(dossiers, stream, summary)
        paths.append(path)
    if 'csv' in formats:
        path = os.path.join(out_dir, CSV_NAME)
        with open(path, 'w') as stream:
            write_csv(dossiers, stream)
        paths.append(path)
    if 'svg' in formats:
        path = os.path.join(out_dir, SVG_NAME)
        write_svg(dossiers, path)
        paths.append(path)
    logging.info("Report written to %s", ', '.join(paths))
    return paths


def load_report(stream):
    """Summary and dossiers of a JSON report."""
    # pylint: disable=import-outside-toplevel
    from cmcert.pipeline import FieldDossier
    report = json.load(stream)
    return report['summary'], [FieldDossier.deserialize(d)
                               for d in report['dossiers']]


def _main():
    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('report', type=argparse.FileType('r'),
                        help="JSON report written by 'cmcert verify'")
    config, args = settings.load_args(parser, ['out_dir', 'format'])

    summary, dossiers = load_report(args.report)
    emit_report(dossiers, config.format, config.out_dir, summary)


if __name__ == '__main__':
    _main()
