"""
Unit tests for lattice module.
"""

from fractions import Fraction

import pytest

from cmcert import intmat
from cmcert import lattice


def test_quadratic_form():
    """Evaluation of x^t G x."""
    assert lattice.quadratic_form([[2, 1], [1, 2]], (1, -1)) == 2
    assert lattice.quadratic_form([[Fraction(1, 2), 0], [0, 3]],
                                  (2, 1)) == 5


def test_pair_reduce():
    """A skewed basis of Z^2 reduces to an orthonormal one."""
    gram = [[1, 5], [5, 26]]
    transform, reduced = lattice.pair_reduce(gram)
    assert reduced == [[1, 0], [0, 1]]
    assert intmat.is_unimodular(transform)
    assert lattice.congruent_gram(gram, transform) == reduced


def test_short_vectors_hexagonal():
    """The hexagonal lattice has six minimal vectors."""
    found = lattice.short_vectors([[2, 1], [1, 2]], 2)
    assert len(found) == 6
    assert all(norm == 2 for norm, _ in found)


def test_short_vectors_exact_boundary():
    """Vectors of norm exactly equal to the bound are kept."""
    gram = [[3, 1, 0], [1, 3, 1], [0, 1, 3]]
    found = lattice.short_vectors(gram, 3)
    for norm, vec in found:
        assert norm == lattice.quadratic_form(gram, vec) <= 3
    assert len(found) == 6


def test_short_vectors_overflow():
    """The enumeration limit is enforced."""
    with pytest.raises(lattice.EnumerationOverflow):
        lattice.short_vectors([[2, 1], [1, 2]], 2, limit=2)


def test_shortest_vector():
    """Shortest vector of a skewed basis."""
    gram = [[1, 5], [5, 26]]
    vec = lattice.shortest_vector(gram)
    assert lattice.quadratic_form(gram, vec) == 1
