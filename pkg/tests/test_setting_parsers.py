"""
Unit tests for setting parsers module.
"""

from fractions import Fraction

import pytest

from cmcert import setting_parsers


@pytest.mark.parametrize("string,expected", [
    ('2', Fraction(2)),
    ('0.566215', Fraction(113243, 200000)),
    ('-1/3', Fraction(-1, 3)),
    (' 3 / 16 ', Fraction(3, 16)),
    ('8e-5', Fraction(1, 12500)),
    ('9.3e7', Fraction(93000000)),
    ('.5', Fraction(1, 2)),
])
def test_exact_rational(string, expected):
    """Decimal and rational strings are parsed exactly."""
    assert setting_parsers.exact_rational(string) == expected


@pytest.mark.parametrize("string", ['garbage', '1/2/3', '0x10', ''])
def test_exact_rational_invalid(string):
    """Reject strings that are not rationals."""
    with pytest.raises(ValueError):
        setting_parsers.exact_rational(string)


def test_metric_int():
    """Test metric_int parser with valid values"""
    tests = [
        ('125', 125),
        ('4M', 4000000),
        ('100k', 100000),
        ('10K', 10000),
        ('1.5k', 1500),
        ('2^60', 2 ** 60),
        ('4e6', 4000000),
    ]
    for string, expected in tests:
        assert setting_parsers.metric_int(string) == expected


def test_metric_int_invalid():
    """Test metric_int parser with invalid values"""
    tests = ['garbage', '1.5', '0.0001k', '3X']
    for test in tests:
        with pytest.raises(ValueError):
            setting_parsers.metric_int(test)


def test_bits():
    """Precisions with and without suffix."""
    assert setting_parsers.bits('256') == 256
    assert setting_parsers.bits('1000b') == 1000
    assert setting_parsers.bits('64 bits') == 64


@pytest.mark.parametrize("string", ['8', 'many', '-256'])
def test_bits_invalid(string):
    """Reject tiny or malformed precisions."""
    with pytest.raises(ValueError):
        setting_parsers.bits(string)


def test_int_list():
    """Comma-separated integer lists."""
    assert setting_parsers.int_list('125, 8000') == [125, 8000]
    assert setting_parsers.int_list('1k,2k') == [1000, 2000]
    assert setting_parsers.int_list(' ') == []


def test_optional_values():
    """'auto' and 'none' map to None."""
    assert setting_parsers.optional_int('auto') is None
    assert setting_parsers.optional_int('none') is None
    assert setting_parsers.optional_int('300') == 300
    assert setting_parsers.optional_path('none') is None
    assert setting_parsers.optional_path(' cache ') == 'cache'


def test_suite():
    """Suite names are case-insensitive."""
    assert setting_parsers.suite('ALL') == 'all'
    assert setting_parsers.suite('analytic') == 'analytic'
    with pytest.raises(ValueError):
        setting_parsers.suite('everything')


def test_output_format():
    """Report format lists."""
    assert setting_parsers.output_format('json') == ['json']
    assert setting_parsers.output_format('JSON, svg') == ['json', 'svg']
    for string in ['', 'pdf', 'json,pdf']:
        with pytest.raises(ValueError):
            setting_parsers.output_format(string)
