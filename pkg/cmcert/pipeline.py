#!/usr/bin/env python

"""
Run the whole computation for every field and verify the bounds.

For each field: class group and minimal norms, principally polarised CM
triples, reduced period matrices, theta constants, invariants, class
polynomials and heights, followed by the selected verification suites.
Results are collected in one dossier per field; failures are recorded in the
dossier and do not stop the run.

Exit status: 0 if every enforced check passes, 2 if some check is
undecidable or a field failed, 3 if a violation is certified.
"""

from __future__ import division

import argparse
from collections import namedtuple
import hashlib
import json
import logging
import multiprocessing
import os
import sys
import time

import mpmath

from cmcert import __version__
from cmcert import analytic
from cmcert import classgroup
from cmcert import field_enum
from cmcert import heights
from cmcert import invariants
from cmcert import numfield
from cmcert import polarize
from cmcert import settings
from cmcert import siegel
from cmcert import theta
from cmcert.ball import Error, Undecidable, with_precision_retry


MIN_DISC_BOUND = 125
EXIT_OK = 0
EXIT_UNDECIDED = 2
EXIT_VIOLATION = 3

CONFIG_KEYS = [
    'disc_bound', 'prec', 'prec_cap', 'seed', 'jobs', 'out_dir', 'format',
    'suite', 'h0', 'gamma_f', 'gamma_q', 'unit_range', 'denominator_bound',
    'spot_checks', 'relation_effort', 'cache', 'discs',
]

_ConfigBase = namedtuple('PipelineConfig', [
    'disc_bound',
    'prec',
    'prec_cap',
    'seed',
    'jobs',
    'out_dir',
    'formats',
    'suite',
    'h0',
    'gamma_f',
    'gamma_q',
    'unit_range',
    'denominator_bound',
    'spot_checks',
    'relation_effort',
    'cache',
    'discs'])


class PipelineConfig(_ConfigBase):
    """Settings of a pipeline run."""
    __slots__ = ()

    @classmethod
    def from_settings(cls, config):
        """Build from a (possibly partial) settings Namespace.

        Keys missing from `config` take their default values.

        Raises
        ------
        ValueError
            If ``disc_bound < 125`` or ``prec_cap < prec``.
        """
        values = settings.load()
        values.update({k: v for k, v in config.items() if k in CONFIG_KEYS})
        if values['disc_bound'] < MIN_DISC_BOUND:
            raise ValueError("disc_bound must be at least {}".format(
                MIN_DISC_BOUND))
        if values['prec_cap'] < values['prec']:
            raise ValueError("prec_cap is below prec")
        fields = {key: values.get(key) for key in CONFIG_KEYS}
        fields['formats'] = fields.pop('format')
        return cls(**fields)


CMPoint = namedtuple('CMPoint', 'label triple point')

Orbit = namedtuple('Orbit', 'classes points')

FieldInvariants = namedtuple('FieldInvariants', [
    'triples',
    'orbits',
    'unions',
    'polynomials',
    'integral'])

Check = namedtuple('Check', 'name holds enforced detail')


class FieldContext(object):
    """Lazily computed data of one field, shared by the stages."""

    def __init__(self, field, cfg):
        self.field = field
        self.cfg = cfg
        self._group = None
        self._records = None
        self._cosets = None
        self._orbits = None

    @property
    def group(self):
        if self._group is None:
            self._group = classgroup.class_group(
                self.field, seed=self.cfg.seed,
                effort=self.cfg.relation_effort)
        return self._group

    @property
    def records(self):
        if self._records is None:
            self._records = classgroup.min_norms(self.group)
        return self._records

    def min_norm(self, label):
        return next(r.min_norm for r in self.records if r.label == label)

    @property
    def cosets(self):
        if self._cosets is None:
            self._cosets = [
                polarize.polarizable_coset(self.field, cm_type, self.group,
                                           self.cfg.unit_range,
                                           self.cfg.prec, self.cfg.prec_cap)
                for cm_type in numfield.cm_types(self.field)]
        return self._cosets

    def _reduced(self, triple):
        basis = polarize.symplectic_basis(triple)
        point = siegel.period_matrix(basis, self.cfg.prec, self.cfg.prec_cap)
        reduced = siegel.reduce_to_f2(point, self.cfg.prec_cap)
        return CMPoint(self.group.class_of(triple.ideal), triple, reduced)

    @property
    def orbits(self):
        """Galois orbits of reduced CM points, one point list per CM type.

        The orbits are the type-norm cosets of the first type. Their
        triples are carried to the other types by the field automorphisms,
        which keeps the abelian surfaces and changes only the type.
        """
        if self._orbits is None:
            cfg = self.cfg
            types = numfield.cm_types(self.field)
            first = self.cosets[0]
            self._orbits = []
            for labels in first.orbits:
                for triples in polarize.orbit_triples(first, labels):
                    per_type = dict((cm_type, []) for cm_type in types)
                    for triple in triples:
                        for aut in self.field.automorphisms:
                            image = polarize.transport_triple(
                                triple, aut, cfg.prec, cfg.prec_cap)
                            per_type[image.cm_type].append(
                                self._reduced(image))
                    self._orbits.append(
                        Orbit(labels, [per_type[t] for t in types]))
            logging.info("Field %d: %d orbits of size %s", self.field.disc,
                         len(self._orbits),
                         [len(o.points[0]) for o in self._orbits])
        return self._orbits

    @property
    def points(self):
        """Reduced CM points, grouped by CM type."""
        return [[item for orbit in self.orbits for item in orbit.points[k]]
                for k in range(len(numfield.cm_types(self.field)))]

    def lift(self, item, prec):
        """The reduced point of `item` recomputed at precision `prec`."""
        point = item.point
        if prec <= point.prec:
            return point
        start = siegel.period_matrix(point.basis, prec, self.cfg.prec_cap)
        return siegel.act(point.matrix, start)


def field_points(field, cfg, context=None):
    """Reduced CM points of a field, for every CM type."""
    context = context or FieldContext(field, cfg)
    return [item for items in context.points for item in items]


def _thetas(context, item, prec):
    return theta.theta_constants(context.lift(item, prec), prec)


def _triples(context, items, prec):
    return [invariants.igusa_invariants(_thetas(context, item, prec))
            for item in items]


def _unions(context, groups, prec):
    result = invariants.integral_unions(
        [_triples(context, items, prec) for items in groups])
    if result.undecided and not result.unions:
        raise Undecidable("integrality undecided at {} bits".format(prec))
    return result


def field_invariants(field, cfg, context=None):
    """Invariants of the points of the first type and their integral
    class polynomials.

    Every point of the field appears among the first type's orbits. A
    curve has integral invariants when some union of orbits containing its
    point has integral class polynomials; those polynomials are then
    recognised exactly.
    """
    context = context or FieldContext(field, cfg)
    groups = [orbit.points[0] for orbit in context.orbits]
    triples = with_precision_retry(
        lambda p: [_triples(context, items, p) for items in groups],
        cfg.prec, cfg.prec_cap)
    unions = with_precision_retry(lambda p: _unions(context, groups, p),
                                  cfg.prec, cfg.prec_cap).unions
    polynomials = [with_precision_retry(
        lambda p, union=union: invariants.class_polynomials(
            [t for k in union for t in _triples(context, groups[k], p)],
            cfg.denominator_bound), cfg.prec, cfg.prec_cap)
        for union in unions]
    integral = bool(unions)
    logging.info("Field %d: integral unions of orbits: %s", field.disc,
                 unions)
    return FieldInvariants([t for items in triples for t in items],
                           [o.classes for o in context.orbits], unions,
                           polynomials, integral)


def _point_heights(context, items, prec):
    results = []
    for item in items:
        point = context.lift(item, prec)
        chi = theta.chi10(theta.theta_constants(point, prec))
        if not chi.is_nonzero():
            raise Undecidable("chi_10 not certified nonzero")
        results.append((point, chi, heights.point_height(point, chi)))
    return results


def _height_data(context, orbit):
    cfg = context.cfg
    per_type = [with_precision_retry(
        lambda p, items=items: _point_heights(context, items, p),
        cfg.prec, cfg.prec_cap) for items in orbit.points]
    parts = [heights.infinity_part([h.term for _, _, h in rows])
             for rows in per_type]
    subfield = context.field.subfield
    report = heights.faltings_height(
        parts, context.field.disc, subfield.class_number,
        subfield.regulator(parts[0].prec), cfg.h0, subfield.disc,
        cfg.gamma_f, cfg.gamma_q)
    return report, per_type


def field_heights(field, cfg, context=None, orbit=0):
    """HeightReport of the curves in one Galois orbit of a field."""
    context = context or FieldContext(field, cfg)
    return _height_data(context, context.orbits[orbit])[0]


# Checks

def _verdict(holds):
    if holds is None:
        return None
    return bool(holds)


def _inequality_checks(context):
    cfg = context.cfg
    disc = context.field.disc
    checks = []
    for items in context.points:
        for item in items:
            point = item.point
            tag = 'class {}'.format(list(item.label))
            inverse = context.group.neg(item.label)
            for ineq in siegel.check_inequalities(
                    point, disc, context.min_norm(inverse)):
                enforced = ineq.name != 'detY_ge_9_8'
                checks.append(Check(ineq.name, _verdict(ineq.holds),
                                    enforced, tag))
            reduced = siegel.is_reduced(point)
            checks.append(Check('fundamental_domain', reduced, False, tag))
            if cfg.spot_checks:
                bad = siegel.spot_check(point, cfg.spot_checks, cfg.seed)
                checks.append(Check('spot_check', bad == 0, True, tag))
            for from_y, from_h in siegel.y_cross_check(point):
                checks.append(Check('y_cross_check', from_y.overlaps(from_h),
                                    True, tag))
            basis = point.reduced_basis()
            for tt in polarize.type_trace_checks(basis, point.prec):
                checks.append(Check('type_trace_bound', _verdict(tt.holds),
                                    True, '{} pair {}'.format(tag,
                                                              list(tt.pair))))
            checks.append(Check('indecomposable', _verdict(
                polarize.is_indecomposable(basis, point.prec)), True, tag))
    return checks


def _parts_agree(parts):
    for k, part in enumerate(parts):
        for other in parts[k + 1:]:
            if not part.overlaps(other):
                return False
    return True


def _height_checks(report, per_type, tag=''):
    checks = []
    for rows in per_type:
        for point, _, ph in rows:
            where = '{}z12 {}'.format(tag + ' ' if tag else '',
                                      float(point.z12.abs()))
            checks.append(Check('chi10_lower_bound',
                                _verdict(ph.chi10_bound_holds), True, where))
            checks.append(Check('pointwise_control', _verdict(ph.control),
                                False, where))
    checks.append(Check('type_parts_agree',
                        _parts_agree(report.infinity_parts), True, tag))
    checks.append(Check('height_lower_bound',
                        _verdict(report.lower_bound_holds), True, tag))
    checks.append(Check('archimedean_bound',
                        _verdict(report.archimedean_bound_holds),
                        report.archimedean_bound_applies, tag))
    return checks


def _normalization_table(per_type, orbit=0):
    """|chi_10| against its lower bound for both normalisations."""
    rows = []
    for k, items in enumerate(per_type):
        for point, chi, _ in items:
            bound = heights.chi10_lower_bound(point)
            magnitude = chi.abs().real
            scaled = magnitude * theta.SCALED_FACTOR
            rows.append({
                'orbit': orbit,
                'cm_type': k,
                'abs_chi10': magnitude.serialize(),
                'lower_bound': bound.serialize(),
                'plain_holds': _verdict(magnitude.ge(bound)),
                'scaled_holds': _verdict(scaled.ge(bound)),
            })
    return rows


def _analytic_checks(context):
    field = context.field
    cfg = context.cfg
    group = context.group
    prec = min(cfg.prec, 128)
    checks = []
    sections = {}

    kappa = analytic.residue_kappa(field, group.order, prec)
    checks.append(Check('regulator_le_2RF', _verdict(kappa.regulator_holds),
                        True, ''))
    checks.append(Check('louboutin', _verdict(kappa.louboutin_holds),
                        kappa.louboutin_applies, ''))
    sections['kappa'] = analytic.bound_record(
        'kappa', kappa=kappa.kappa, w=kappa.w,
        w_exceeds_two=kappa.w_exceeds_two,
        louboutin_bound=kappa.louboutin_bound,
        louboutin_applies=kappa.louboutin_applies)

    root = float(field.disc) ** 0.5
    cutoff = analytic.choose_cutoff(root)
    table = analytic.ideal_class_table(field, group, cutoff)
    hr = field.regulator(prec) * group.order
    for bound in analytic.s_bounds(table, hr, prec=prec):
        checks.append(Check('S_bound', _verdict(bound.holds), True,
                            'eps {} chi {}'.format(bound.epsilon,
                                                   list(bound.character))))

    averages = []
    for coset in context.cosets:
        image = classgroup.type_norm_image(group, coset.cm_type)
        for k, orbit in enumerate(coset.orbits):
            tag = '{} orbit {}'.format(list(coset.cm_type), k)
            sums = analytic.coset_sum(table, orbit, image.subgroup,
                                      root, prec)
            checks.append(Check('fourier_identity', sums.fourier_matches,
                                True, tag))
            checks.append(Check('coset_sandwich',
                                _verdict(sums.sandwich_holds), True, tag))
            norms = [context.min_norm(label) for label in orbit]
            subgroup_norms = [context.min_norm(label)
                              for label in sorted(image.subgroup)]
            avg = analytic.average_bound(field.disc, norms, group.order,
                                         field.subfield.regulator(prec),
                                         field.regulator(prec), prec)
            checks.append(Check('min_norm_average', _verdict(
                avg.holds_displayed), avg.applies, tag))
            size = analytic.coset_size_bound(
                field.disc, len(orbit), field.subfield.class_number,
                field.subfield.regulator(prec), prec)
            checks.append(Check('coset_size_bound', _verdict(size.holds),
                                size.applies, tag))
            averages.append(analytic.bound_record(
                'min_norm_average', cm_type=list(coset.cm_type), orbit=k,
                coset_size=len(orbit), average=avg.average,
                subgroup_average=analytic.min_norm_average(
                    field.disc, subgroup_norms, prec),
                bound_displayed=avg.bound_displayed,
                bound_internal=avg.bound_internal,
                holds_internal=avg.holds_internal,
                coset_bound_lhs=size.lhs, coset_bound_rhs=size.rhs))
    sections['min_norm_averages'] = averages
    return checks, sections


def constant_checks(delta_max=10 ** 6):
    """Checks independent of the fields: explicit constants and lemmas."""
    checks = []
    quartic = analytic.chandee_constant(4)
    checks.append(Check('chandee_degree_4', quartic.constant <= 263, True,
                        str(quartic.constant)))
    aggregate = analytic.zeta_aggregate()
    checks.append(Check('chandee_aggregate', aggregate.constant <= 839, True,
                        str(aggregate.constant)))
    bad = analytic.delta_lemma_scan(10, delta_max)
    checks.append(Check('delta_lemma', not bad, True, str(bad[:10])))
    return checks


def analytic_rows(field, cfg, check):
    """Rows for the per-field analytic checks of the analytic command."""
    context = FieldContext(field, cfg)
    prec = min(cfg.prec, 128)
    rows = []
    if check == 'kappa':
        kappa = analytic.residue_kappa(field, context.group.order, prec)
        rows.append(analytic.bound_record(
            'kappa', disc_K=str(field.disc), kappa=kappa.kappa, w=kappa.w,
            louboutin_bound=kappa.louboutin_bound,
            louboutin_holds=kappa.louboutin_holds,
            louboutin_applies=kappa.louboutin_applies))
    elif check == 'coset-bound':
        for coset in context.cosets:
            for k, orbit in enumerate(coset.orbits):
                result = analytic.coset_size_bound(
                    field.disc, len(orbit), field.subfield.class_number,
                    field.subfield.regulator(prec), prec)
                rows.append(analytic.bound_record(
                    'coset-bound', disc_K=str(field.disc),
                    cm_type=list(coset.cm_type), orbit=k, lhs=result.lhs,
                    rhs=result.rhs, holds=result.holds,
                    applies=result.applies))
    elif check == 'S-bounds':
        root = float(field.disc) ** 0.5
        table = analytic.ideal_class_table(field, context.group,
                                           analytic.choose_cutoff(root))
        hr = field.regulator(prec) * context.group.order
        for bound in analytic.s_bounds(table, hr, prec=prec):
            rows.append(analytic.bound_record(
                'S-bounds', disc_K=str(field.disc), epsilon=bound.epsilon,
                character=list(bound.character), value=bound.value,
                bound=bound.bound, holds=bound.holds))
    else:
        raise ValueError("unknown per-field check {!r}".format(check))
    return rows


# Dossiers

class FieldDossier(object):
    """Everything computed for one field, as JSON-ready sections."""

    def __init__(self, disc, record, sections=None, checks=None,
                 timing=None, error=None):
        # pylint: disable=too-many-arguments
        self.disc = disc
        self.record = record
        self.sections = sections if sections is not None else {}
        self.checks = checks if checks is not None else []
        self.timing = timing if timing is not None else {}
        self.error = error

    @property
    def integral(self):
        return self.sections.get('invariants', {}).get('integral')

    def status(self):
        """Exit status contributed by this dossier."""
        if self.error is not None:
            return EXIT_UNDECIDED
        enforced = [c for c in self.checks if c.enforced]
        if any(c.holds is False for c in enforced):
            return EXIT_VIOLATION
        if any(c.holds is None for c in enforced):
            return EXIT_UNDECIDED
        return EXIT_OK

    def serialize(self):
        return {
            'disc_K': str(self.disc),
            'field': self.record,
            'sections': self.sections,
            'checks': [list(c) for c in self.checks],
            'timing': self.timing,
            'error': self.error,
        }

    @classmethod
    def deserialize(cls, record):
        return cls(int(record['disc_K']), record['field'],
                   record['sections'],
                   [Check(*c) for c in record['checks']],
                   record['timing'], record['error'])


# Settings that do not change the content of a dossier.
_UNKEYED = ('disc_bound', 'jobs', 'out_dir', 'formats', 'cache', 'discs')


def cache_key(record, cfg):
    """Hash of the field record, the settings that shape a dossier and the
    version."""
    settings_used = {k: v for k, v in cfg._asdict().items()
                     if k not in _UNKEYED}
    payload = json.dumps({'field': record, 'config': settings_used,
                          'version': __version__},
                         sort_keys=True, default=str)
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def _cache_path(record, cfg):
    return os.path.join(cfg.cache, cache_key(record, cfg) + '.json')


def load_cached(record, cfg):
    if cfg.cache is None:
        return None
    path = _cache_path(record, cfg)
    if not os.path.exists(path):
        return None
    with open(path) as stream:
        logging.debug("Dossier loaded from %s", path)
        return FieldDossier.deserialize(json.load(stream))


def store_cached(dossier, cfg):
    if cfg.cache is None or dossier.error is not None:
        return
    if not os.path.isdir(cfg.cache):
        os.makedirs(cfg.cache)
    with open(_cache_path(dossier.record, cfg), 'w') as stream:
        json.dump(dossier.serialize(), stream, sort_keys=True)


def _colmez_record(field, character, report):
    """Computed height against the Colmez value, for both normalisations."""
    character = field_enum.QuarticCharacter.deserialize(character)
    value = heights.colmez_height(character, field.disc, field.subfield.disc)
    return {
        'height': mpmath.nstr(value, 20),
        'plain_difference': float(report.faltings_height) - float(value),
        'scaled_difference': float(report.faltings_height_scaled) -
                             float(value),
    }


def _run_suites(context, dossier):
    cfg = context.cfg
    suites = ('inequalities', 'analytic') if cfg.suite == 'all' else \
        (cfg.suite,)
    clock = time.time()
    group = context.group
    dossier.sections['class_group'] = classgroup.class_group_record(
        group, context.records)
    dossier.sections['points'] = [
        dict(item.point.serialize(), cm_type=list(item.triple.cm_type),
             label=list(item.label))
        for items in context.points for item in items]
    dossier.timing['points'] = round(time.time() - clock, 3)

    clock = time.time()
    result = field_invariants(context.field, cfg, context)
    dossier.sections['invariants'] = {
        'points': [invariants.invariant_record(t) for t in result.triples],
        'orbits': [[list(label) for label in labels]
                   for labels in result.orbits],
        'integral_unions': [list(union) for union in result.unions],
        'integral': result.integral,
        'class_polynomials': [invariants.polynomial_record(p)
                              for p in result.polynomials],
    }
    dossier.timing['invariants'] = round(time.time() - clock, 3)

    clock = time.time()
    primary = result.unions[0][0] if result.unions else 0
    records = []
    reports = []
    normalization = []
    for k, orbit in enumerate(context.orbits):
        report, per_type = _height_data(context, orbit)
        reports.append(report)
        records.append(dict(heights.height_record(report), orbit=k,
                            classes=[list(label) for label in orbit.classes]))
        normalization.extend(_normalization_table(per_type, k))
        dossier.checks.extend(_height_checks(report, per_type,
                                             'orbit {}'.format(k)))
    dossier.sections['heights'] = records[primary]
    dossier.sections['orbit_heights'] = records
    dossier.sections['normalization'] = normalization
    if 'character' in dossier.record:
        dossier.sections['colmez'] = _colmez_record(
            context.field, dossier.record['character'], reports[primary])
    dossier.timing['heights'] = round(time.time() - clock, 3)

    if 'inequalities' in suites:
        clock = time.time()
        dossier.checks.extend(_inequality_checks(context))
        dossier.timing['inequalities'] = round(time.time() - clock, 3)
    if 'analytic' in suites:
        clock = time.time()
        checks, sections = _analytic_checks(context)
        dossier.checks.extend(checks)
        dossier.sections.update(sections)
        dossier.timing['analytic'] = round(time.time() - clock, 3)


def process_field(record, cfg):
    """Dossier of one field record; failures end up in ``error``."""
    cached = load_cached(record, cfg)
    if cached is not None:
        return cached
    disc = int(record['disc_K'])
    dossier = FieldDossier(disc, record)
    try:
        field = numfield.deserialize(record)
        context = FieldContext(field, cfg)
        _run_suites(context, dossier)
    except (Error, ArithmeticError, ValueError,
            invariants.DecomposablePoint, siegel.ReductionDiverged,
            polarize.NotUnimodular, polarize.CosetMismatch,
            classgroup.RelationSearchExhausted) \
            as exc:
        logging.warning("Field %d failed: %s: %s", disc,
                        type(exc).__name__, exc)
        dossier.error = {'type': type(exc).__name__, 'message': str(exc)}
    store_cached(dossier, cfg)
    return dossier


def _process_star(args):
    return process_field(*args)


def run_pipeline(cfg, records=None):
    """Dossiers of all fields, in enumeration order.

    Parameters
    ----------
    cfg : PipelineConfig
    records : list of dict, optional
        Serialised fields; enumerated up to ``cfg.disc_bound`` if omitted.
        Only the discriminants in ``cfg.discs`` are kept when it is set.
    """
    if records is None:
        entries = field_enum.enumerate_fields(cfg.disc_bound, 5, cfg.prec,
                                              cfg.prec_cap)
        records = [field_enum.field_record(e) for e in entries]
    if cfg.discs:
        records = [r for r in records if int(r['disc_K']) in cfg.discs]
    logging.info("Running the pipeline on %d fields", len(records))
    tasks = [(record, cfg) for record in records]
    if cfg.jobs > 1 and len(tasks) > 1:
        pool = multiprocessing.Pool(processes=min(cfg.jobs, len(tasks)))
        try:
            dossiers = pool.map(_process_star, tasks)
        finally:
            pool.close()
            pool.join()
    else:
        dossiers = [_process_star(task) for task in tasks]
    return dossiers


def shortlist(dossiers):
    """Discriminants of the fields with integral class polynomials."""
    return [d.disc for d in dossiers if d.integral is True]


def summary(dossiers, cfg):
    status = exit_status(dossiers)
    return {
        'fields': len(dossiers),
        'failed': [d.disc for d in dossiers if d.error is not None],
        'shortlist': shortlist(dossiers),
        'suite': cfg.suite,
        'status': status,
    }


def exit_status(dossiers, constants=()):
    statuses = [d.status() for d in dossiers]
    if any(c.enforced and c.holds is False for c in constants):
        statuses.append(EXIT_VIOLATION)
    if any(c.enforced and c.holds is None for c in constants):
        statuses.append(EXIT_UNDECIDED)
    if EXIT_VIOLATION in statuses:
        return EXIT_VIOLATION
    if EXIT_UNDECIDED in statuses:
        return EXIT_UNDECIDED
    return EXIT_OK


def _main():
    # pylint: disable=import-outside-toplevel
    from cmcert import report

    parser = argparse.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('fields', type=argparse.FileType('r'), nargs='?',
                        default=None,
                        help="field database (.jsonl) [default: enumerate "
                             "up to --disc-bound]")
    config, args = settings.load_args(parser, CONFIG_KEYS)
    cfg = PipelineConfig.from_settings(config)

    records = None
    if args.fields is not None:
        records = list(field_enum.load_records(args.fields))
    dossiers = []
    if cfg.suite != 'constants':
        dossiers = run_pipeline(cfg, records)
    constants = []
    if cfg.suite in ('constants', 'all'):
        constants = constant_checks()
    status = exit_status(dossiers, constants)

    info = summary(dossiers, cfg)
    info['status'] = status
    info['constants'] = [list(c) for c in constants]
    report.emit_report(dossiers, cfg.formats, cfg.out_dir, info)
    logging.warning("%d fields, shortlist %s, status %d", len(dossiers),
                    info['shortlist'], status)
    sys.exit(status)


if __name__ == '__main__':
    _main()
