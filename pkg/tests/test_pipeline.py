"""
Unit tests for pipeline module.
"""

import pytest

from cmcert import field_enum
from cmcert import heights
from cmcert import pipeline
from cmcert.pipeline import Check, FieldDossier


RECORD = {'disc_K': '125', 'poly': [1, 1, 1, 1, 1]}


def _config(**values):
    return pipeline.PipelineConfig.from_settings(values)


def _dossier(checks=(), error=None, integral=True):
    sections = {'invariants': {'integral': integral}}
    return FieldDossier(125, RECORD, sections, list(checks), {'points': 0.5},
                        error)


def test_config_defaults():
    """Missing keys take their default values."""
    cfg = _config()
    assert cfg.disc_bound == 4 * 10 ** 6
    assert cfg.prec == 256
    assert cfg.suite == 'all'
    assert cfg.discs == []


@pytest.mark.parametrize("values", [
    {'disc_bound': 100},
    {'prec': 1024, 'prec_cap': 512},
])
def test_config_invalid(values):
    """Too small a bound or a cap below the precision are refused."""
    with pytest.raises(ValueError):
        _config(**values)


def test_config_ignores_unrelated_keys():
    """Settings that the pipeline does not use are dropped."""
    cfg = _config(verbose=True, disc_bound=1000)
    assert cfg.disc_bound == 1000


@pytest.mark.parametrize("checks,error,expected", [
    ([], None, pipeline.EXIT_OK),
    ([Check('a', True, True, '')], None, pipeline.EXIT_OK),
    ([Check('a', False, False, '')], None, pipeline.EXIT_OK),
    ([Check('a', None, True, '')], None, pipeline.EXIT_UNDECIDED),
    ([Check('a', False, True, ''), Check('b', None, True, '')], None,
     pipeline.EXIT_VIOLATION),
    ([], {'type': 'PrecisionExhausted', 'message': ''},
     pipeline.EXIT_UNDECIDED),
])
def test_dossier_status(checks, error, expected):
    """Only enforced checks decide the status."""
    assert _dossier(checks, error).status() == expected


def test_exit_status_constants():
    """Failing constant checks are violations."""
    dossiers = [_dossier()]
    assert pipeline.exit_status(dossiers) == pipeline.EXIT_OK
    bad = [Check('chandee_degree_4', False, True, '')]
    assert pipeline.exit_status(dossiers, bad) == pipeline.EXIT_VIOLATION
    unknown = [Check('delta_lemma', None, True, '')]
    assert pipeline.exit_status([], unknown) == pipeline.EXIT_UNDECIDED


def test_dossier_roundtrip():
    """Serialised dossiers deserialise to the same record."""
    dossier = _dossier([Check('a', True, True, 'detail')])
    copy = FieldDossier.deserialize(dossier.serialize())
    assert copy.serialize() == dossier.serialize()
    assert copy.checks[0].name == 'a'
    assert copy.integral is True


def test_shortlist_and_summary():
    """Only fields with integral class polynomials are shortlisted."""
    dossiers = [_dossier(), FieldDossier(8000, {}, {}, [], {}, None),
                _dossier(error={'type': 'X', 'message': ''},
                         integral=False)]
    dossiers[2].disc = 1525
    assert pipeline.shortlist(dossiers) == [125]
    info = pipeline.summary(dossiers, _config())
    assert info['fields'] == 3
    assert info['failed'] == [1525]
    assert info['status'] == pipeline.EXIT_UNDECIDED


def test_cache_key():
    """The key depends on the record and on the precision."""
    cfg = _config()
    key = pipeline.cache_key(RECORD, cfg)
    assert len(key) == 64
    assert key == pipeline.cache_key(dict(RECORD), cfg)
    assert key != pipeline.cache_key(RECORD, _config(prec=512))
    assert key != pipeline.cache_key({'disc_K': '1525'}, cfg)


@pytest.mark.parametrize("values", [
    {'h0': 1},
    {'unit_range': 6},
    {'denominator_bound': 2 ** 20},
    {'gamma_f': 3},
    {'relation_effort': 7},
])
def test_cache_key_covers_settings(values):
    """Every setting that shapes a dossier changes the key."""
    assert pipeline.cache_key(RECORD, _config()) != \
        pipeline.cache_key(RECORD, _config(**values))


def test_cache_key_ignores_scheduling():
    """Worker count and output location do not change the key."""
    cfg = _config()
    assert pipeline.cache_key(RECORD, cfg) == \
        pipeline.cache_key(RECORD, cfg._replace(jobs=8, out_dir='elsewhere'))


def test_cache_store_load(tmpdir):
    """Finished dossiers are cached, failed ones are not."""
    cfg = _config(cache=str(tmpdir.join('cache')))
    assert pipeline.load_cached(RECORD, cfg) is None
    dossier = _dossier([Check('a', True, True, '')])
    pipeline.store_cached(dossier, cfg)
    loaded = pipeline.load_cached(RECORD, cfg)
    assert loaded.serialize() == dossier.serialize()

    other = {'disc_K': '8000'}
    failed = FieldDossier(8000, other, error={'type': 'X', 'message': ''})
    pipeline.store_cached(failed, cfg)
    assert pipeline.load_cached(other, cfg) is None


def test_cache_disabled():
    """Without a cache directory nothing is loaded."""
    cfg = _config()._replace(cache=None)
    assert pipeline.load_cached(RECORD, cfg) is None


def test_constant_checks():
    """Explicit constants and the omega lemma on a short range."""
    checks = pipeline.constant_checks(delta_max=2000)
    assert [c.name for c in checks] == ['chandee_degree_4',
                                        'chandee_aggregate', 'delta_lemma']
    assert all(c.holds and c.enforced for c in checks)


def test_analytic_rows_unknown(zeta5):
    """Unknown per-field checks are refused."""
    with pytest.raises(ValueError):
        pipeline.analytic_rows(zeta5, _config(), 'bogus')


def test_analytic_rows_kappa(zeta5):
    """Residue row of Q(zeta_5)."""
    rows = pipeline.analytic_rows(zeta5, _config(), 'kappa')
    assert len(rows) == 1
    assert rows[0]['disc_K'] == '125'
    assert rows[0]['w'] == 10


def test_run_pipeline_filters_discs():
    """Fields outside the requested discriminants are skipped."""
    cfg = _config(discs=[8000])._replace(cache=None)
    assert pipeline.run_pipeline(cfg, [RECORD]) == []


@pytest.mark.slow
def test_run_smallest_field(tmpdir):
    """Full run over the fields of discriminant at most 125."""
    cfg = _config(disc_bound=125, spot_checks=100, suite='inequalities',
                  cache=str(tmpdir.join('cache')))
    dossiers = pipeline.run_pipeline(cfg)
    assert [d.disc for d in dossiers] == [125]
    dossier = dossiers[0]
    assert dossier.error is None
    assert dossier.integral is True
    assert pipeline.shortlist(dossiers) == [125]
    assert dossier.sections['heights']['lower_bound_holds'] is True
    assert dossier.sections['invariants']['orbits'] == [[[]]]
    assert len(dossier.sections['orbit_heights']) == 1
    assert 'plain_difference' in dossier.sections['colmez']

    again = pipeline.run_pipeline(cfg)
    assert again[0].serialize() == dossier.serialize()


@pytest.mark.slow
def test_shortlist_up_to_four_million():
    """Among the 45 fields below 4e6 only 125 and 8000 have integral class
    polynomials."""
    cfg = _config(suite='inequalities', spot_checks=0)._replace(cache=None)
    entries = field_enum.enumerate_fields(cfg.disc_bound)
    assert len(entries) == 45
    records = [field_enum.field_record(e) for e in entries]
    dossiers = pipeline.run_pipeline(cfg, records)
    assert sorted(pipeline.shortlist(dossiers)) == [125, 8000]


@pytest.mark.slow
def test_heights_against_colmez():
    """The two good-reduction curves differ from their Colmez values by the
    same normalisation constant."""
    cfg = _config(prec=256)._replace(cache=None)
    offsets = []
    for entry in field_enum.enumerate_fields(8000):
        context = pipeline.FieldContext(entry.field, cfg)
        result = pipeline.field_invariants(entry.field, cfg, context)
        assert result.integral is True
        orbit = result.unions[0][0]
        report = pipeline.field_heights(entry.field, cfg, context, orbit)
        value = heights.colmez_height(entry.character, entry.field.disc)
        offsets.append(float(report.faltings_height) - float(value))
    assert len(offsets) == 2
    assert offsets[0] == pytest.approx(offsets[1], abs=1e-5)
