"""
Unit tests for intmat module.
"""

from fractions import Fraction

import pytest

from cmcert import intmat


def test_hnf_transform():
    """The transform matrix maps the input onto its Hermite form."""
    m = [[4, 6, 2], [3, 9, 6]]
    h, u = intmat.hnf(m, transform=True)
    assert intmat.is_unimodular(u)
    product = intmat.matmul(m, u)
    assert [row[:2] for row in product] == h
    assert all(row[2] == 0 for row in product)
    assert h[1][0] == 0
    assert 0 <= h[0][1] < h[0][0]


def test_hnf_rank_deficient():
    """Rank-deficient input is rejected."""
    with pytest.raises(ValueError):
        intmat.hnf([[1, 2], [2, 4]])


def test_lattice_membership():
    """Membership and coordinates in an HNF basis."""
    h = [[2, 1], [0, 1]]
    assert intmat.lattice_contains(h, [1, 1])
    assert not intmat.lattice_contains(h, [1, 0])
    assert intmat.lattice_coordinates(h, [3, 1]) == [1, 1]
    assert intmat.lattice_coordinates(h, [1, 0]) is None


@pytest.mark.parametrize("m,divisors", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[4, 2], [2, 4]], [2, 6]),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_snf(m, divisors):
    """Smith form diagonal and its unimodular transforms."""
    d, left, right = intmat.snf(m)
    assert intmat.elementary_divisors(m) == divisors
    assert intmat.matmul(intmat.matmul(left, m), right) == d
    assert intmat.is_unimodular(left)
    assert intmat.is_unimodular(right)


def test_integer_kernel():
    """Kernel vectors are annihilated and independent."""
    m = [[1, 1, 1]]
    kernel = intmat.integer_kernel(m)
    assert len(kernel) == 2
    for v in kernel:
        assert intmat.matvec(m, v) == [0]
    assert intmat.rank(kernel) == 2


def test_rational_routines():
    """Determinant, solve and inverse over Q."""
    m = [[1, 2], [3, 4]]
    assert intmat.det(m) == -2
    assert intmat.det([[1, 2], [2, 4]]) == 0
    assert intmat.solve(m, [5, 6]) == [Fraction(-4), Fraction(9, 2)]
    inv = intmat.inverse(m)
    assert intmat.matmul(m, inv) == intmat.identity(2)
    with pytest.raises(ZeroDivisionError):
        intmat.solve([[1, 2], [2, 4]], [1, 1])


def test_kernel_mod_p():
    """Kernel over GF(p)."""
    m = [[1, 2], [2, 4]]
    basis = intmat.kernel_mod_p(m, 5)
    assert len(basis) == 1
    assert all(x % 5 == 0 for x in intmat.matvec(m, basis[0]))
    assert intmat.kernel_mod_p([[1, 2], [3, 4]], 5) == []


def test_pfaffian4():
    """Pfaffian of the standard symplectic form."""
    j = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    assert intmat.pfaffian4(j) ** 2 == intmat.det(j)
    assert abs(intmat.pfaffian4(j)) == 1
