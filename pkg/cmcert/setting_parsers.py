"""
Helper functions for converting setting strings to values.

Numeric settings are parsed exactly: nothing goes through a float unless
the setting is a float by nature.
"""

from fractions import Fraction
import re


_RATIONAL_REGEX = r'[-+]?\d+\s*/\s*\d+'
_DECIMAL_REGEX = r'[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?'
_RATIONAL_PATTERN = re.compile(r'^({0})$'.format(_RATIONAL_REGEX))
_DECIMAL_PATTERN = re.compile(r'^({0})$'.format(_DECIMAL_REGEX))
_POWER_PATTERN = re.compile(r'^(\d+)\s*\^\s*(\d+)$')
_BITS_PATTERN = re.compile(r'^(\d+)\s*(?:b|bits?)?$', re.IGNORECASE)

_INT_PREFIXES = {
    'k': 10 ** 3,
    'K': 10 ** 3,
    'M': 10 ** 6,
    'G': 10 ** 9,
    'T': 10 ** 12,
}

SUITES = ('inequalities', 'analytic', 'constants', 'all')
OUTPUT_FORMATS = ('json', 'csv', 'svg')


def exact_rational(string):
    """Parse a decimal, scientific or ``p/q`` string into a Fraction.

    Examples
    --------
    >>> exact_rational('0.566215')
    Fraction(113243, 200000)
    >>> exact_rational('3/16')
    Fraction(3, 16)
    >>> exact_rational('8e-5')
    Fraction(1, 12500)
    """
    string = string.strip()
    if _RATIONAL_PATTERN.match(string):
        num, den = string.split('/')
        return Fraction(int(num), int(den))
    if _DECIMAL_PATTERN.match(string):
        return Fraction(string)
    raise ValueError('Invalid rational: {}'.format(string))


def metric_int(string):
    """Parse an integer with an optional metric prefix as suffix.

    Powers written as ``a^b`` are accepted as well.

    Examples
    --------
    >>> metric_int('4M')
    4000000
    >>> metric_int('100k')
    100000
    >>> metric_int('2^60') == 2 ** 60
    True
    """
    string = string.strip()
    match = _POWER_PATTERN.match(string)
    if match:
        return int(match.group(1)) ** int(match.group(2))
    multiplier = 1
    if len(string) > 0 and string[-1] in _INT_PREFIXES:
        string, multiplier = string[:-1], _INT_PREFIXES[string[-1]]
    value = exact_rational(string) * multiplier
    if value.denominator != 1:
        raise ValueError('Not an integer: {}'.format(string))
    return int(value)


def bits(string):
    """Parse a precision in bits, with an optional ``b`` suffix.

    Examples
    --------
    >>> bits('256')
    256
    >>> bits('1000b')
    1000
    """
    match = _BITS_PATTERN.match(string.strip())
    if not match:
        raise ValueError('Invalid precision: {}'.format(string))
    value = int(match.group(1))
    if value < 16:
        raise ValueError('Precision too small: {}'.format(value))
    return value


def int_list(string):
    """Parse a comma-separated list of integers.

    Examples
    --------
    >>> int_list('125, 8000')
    [125, 8000]
    >>> int_list('')
    []
    """
    if not string.strip():
        return []
    return [metric_int(item) for item in string.split(',')]


def optional_int(string):
    """Parse an integer, or ``none`` / empty for no value."""
    if string is None or string.strip().lower() in ('', 'none', 'auto'):
        return None
    return metric_int(string)


def optional_path(string):
    if string is None or string.strip().lower() in ('', 'none'):
        return None
    return string.strip()


def suite(string):
    """Parse the name of a verification suite.

    Examples
    --------
    >>> suite('Inequalities')
    'inequalities'
    """
    value = string.strip().lower()
    if value not in SUITES:
        raise ValueError('Unknown suite: {}'.format(string))
    return value


def output_format(string):
    """Parse a comma-separated list of report formats.

    Examples
    --------
    >>> output_format('json,csv')
    ['json', 'csv']
    """
    formats = [s.strip().lower() for s in string.split(',') if s.strip()]
    if not formats:
        raise ValueError('Empty format list')
    for fmt in formats:
        if fmt not in OUTPUT_FORMATS:
            raise ValueError('Unknown format: {}'.format(fmt))
    return formats
