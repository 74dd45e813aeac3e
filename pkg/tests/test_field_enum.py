"""
Unit tests for field enumeration module.
"""

import io

import pytest

from cmcert import field_enum
from cmcert.field_enum import QuarticCharacter


@pytest.mark.parametrize("d,a,expected", [
    (5, 2, -1),
    (5, 4, 1),
    (5, 10, 0),
    (8, 3, -1),
    (8, 7, 1),
    (-4, 3, -1),
    (12, 1, 1),
])
def test_kronecker(d, a, expected):
    """Kronecker symbols, including even moduli."""
    assert field_enum.kronecker(d, a) == expected


def test_kronecker_invalid():
    """The lower argument must be positive."""
    with pytest.raises(ValueError):
        field_enum.kronecker(5, 0)


def test_conductor_five_character():
    """The quartic character of conductor 5."""
    chars = field_enum.enumerate_characters(125)
    assert len(chars) == 1
    chi = chars[0]
    assert chi.conductor == 5
    assert chi.order() == 4
    assert chi.is_odd()
    assert chi.square_matches(5)
    assert chi.kernel() == [1]
    assert [len(c) for c in chi.cosets()] == [1, 1, 1, 1]
    assert chi(10) is None


def test_character_serialize():
    """Characters survive JSON records."""
    chi = field_enum.enumerate_characters(125)[0]
    copy = QuarticCharacter.deserialize(chi.serialize())
    assert copy.conductor == chi.conductor
    assert copy.value_key() == chi.value_key()
    assert chi.cube().cube().value_key() == chi.value_key()


def test_characters_up_to_8000():
    """Only conductors 5 and 40 occur below discriminant 8000."""
    chars = field_enum.enumerate_characters(8000)
    assert [c.conductor for c in chars] == [5, 40]


def test_character_count():
    """There are 45 fields with discriminant up to 4 million."""
    chars = field_enum.enumerate_characters(4 * 10 ** 6)
    assert len(chars) == 45
    assert all(5 * c.conductor ** 2 <= 4 * 10 ** 6 for c in chars)


def test_invalid_subfield():
    """The real quadratic discriminant must be fundamental."""
    with pytest.raises(ValueError):
        field_enum.enumerate_characters(1000, disc_f=4)


def test_enumerate_small_fields(zeta5):
    """The fields of discriminant 125 and 8000."""
    entries = field_enum.enumerate_fields(8000)
    assert [e.disc_K for e in entries] == [125, 8000]
    assert field_enum.is_isomorphic(entries[0].field, zeta5)
    assert all(e.poly.degree == 4 and e.poly.is_monic() for e in entries)
    assert entries[1].field.conductor == 40


def test_brute_force_cross_check():
    """A box search over Q(sqrt(-(A + B sqrt 5))) finds the same fields."""
    assert field_enum.brute_force_discriminants(8000, 5) == {125: 1,
                                                             8000: 1}


def test_database_roundtrip():
    """Records written as JSON Lines load back into fields."""
    entries = field_enum.enumerate_fields(125)
    stream = io.StringIO()
    field_enum.write_fields(entries, stream)
    stream.seek(0)
    records = list(field_enum.load_records(stream))
    assert len(records) == 1
    assert records[0]['disc_K'] == '125'
    assert records[0]['conductor_f'] == '5'
    assert records[0]['character']['conductor'] == '5'
    stream.seek(0)
    fields = list(field_enum.load_fields(stream))
    assert fields[0].disc == 125
    assert fields[0].conductor == 5
