"""
Unit tests for analytic module.
"""

from collections import namedtuple
from fractions import Fraction

import mpmath
import pytest

from cmcert import analytic
from cmcert.ball import ComplexBall, real_ball
from cmcert.classgroup import ClassGroup


_Prime = namedtuple('_Prime', 'p e f')


def _cyclic6():
    primes = [_Prime(2, 1, 1), _Prime(3, 1, 1)]
    return ClassGroup(None, primes, [[2, 0], [0, 3]])


def test_chandee_degree_four():
    """Constant and exponents of the degree-4 L-function bound."""
    result = analytic.chandee_constant(4)
    assert result.delta_exponent == Fraction(3, 16)
    assert result.t_exponent == Fraction(3, 4)
    assert 100 < result.constant <= 263


def test_zeta_aggregate():
    """The route through zeta_K / zeta stays below 839."""
    result = analytic.zeta_aggregate()
    assert result.degree == 4
    assert result.t_exponent == Fraction(3, 4)
    assert result.constant <= 839


def test_prime_power_model_is_larger():
    """Prime powers only add positive terms."""
    primes = analytic.chandee_constant(4)
    powers = analytic.chandee_constant(4, model='prime_powers')
    assert powers.prime_sum > primes.prime_sum


@pytest.mark.parametrize("lam,log_x", [
    (Fraction(1, 2), 1),
    (3, 4),
])
def test_chandee_hypothesis(lam, log_x):
    """log x must be at least max(2, 2 lambda)."""
    with pytest.raises(analytic.HypothesisViolated):
        analytic.chandee_constant(4, lam, log_x)


def test_chandee_unknown_model():
    """Only two coefficient models exist."""
    with pytest.raises(ValueError):
        analytic.chandee_constant(4, model='zeros')


def test_main_theorem_bound():
    """The e^64 branch dominates over Q(sqrt 5)."""
    bound = analytic.main_theorem_bound(1, 0.48121182505960344)
    assert bound.dominant == 0
    assert bound.log_bound == mpmath.exp(64)
    assert float(bound.branches[2]) == pytest.approx(68.945, abs=1e-2)


def test_delta_lemma_small_range():
    """No integer in a small range violates the omega inequality."""
    assert analytic.delta_lemma_scan(10, 5000) == []


@pytest.mark.slow
def test_delta_lemma_up_to_a_million():
    """No integer up to 10^6 violates the omega inequality."""
    assert analytic.delta_lemma_scan(10, 10 ** 6) == []


def test_delta_lemma_range_check():
    """The inequality is only stated from 10 on."""
    with pytest.raises(ValueError):
        analytic.delta_lemma_scan(3, 100)


def test_distinct_prime_counts():
    """omega of small integers."""
    omega = analytic.distinct_prime_counts(30)
    assert [int(omega[n]) for n in (1, 2, 12, 30)] == [0, 1, 2, 3]


def test_ideal_counts_zeta5(zeta5):
    """Ideals of small norm in Q(zeta_5)."""
    table = analytic.ideal_counts(zeta5, 20)
    counts = table.counts
    assert counts[0] == 0
    assert counts[1] == 1
    assert counts[2] == 0
    assert counts[5] == 1
    assert counts[11] == 4
    assert counts[16] == 1
    assert sum(counts) == 7
    assert analytic.kappa_trend(table) == Fraction(7, 20)


def test_ideal_counts_cutoff():
    """The cutoff must be positive."""
    with pytest.raises(ValueError):
        analytic.ideal_counts(None, 0)


def test_frobenius_degree(zeta5):
    """Residue degree is the order of p modulo 5."""
    assert analytic.frobenius_degree(zeta5, 11) == 1
    assert analytic.frobenius_degree(zeta5, 19) == 2
    assert analytic.frobenius_degree(zeta5, 2) == 4


def test_character_orthogonality():
    """Summing all characters isolates the trivial class."""
    group = _cyclic6()
    sums = analytic.orthogonality_sums(group)
    for label, total in sums.items():
        if label == group.zero():
            assert total.contains(group.order)
        else:
            assert total.contains(0)


def test_conjugate_character():
    """A character times its conjugate is trivial."""
    group = _cyclic6()
    for chi in analytic.characters(group):
        conj = analytic.conjugate_character(group, chi)
        for label in group.elements():
            turn = analytic.character_turn(group, chi, label) + \
                analytic.character_turn(group, conj, label)
            assert turn.denominator == 1


def test_tail_bound_range():
    """The tail estimate needs cutoff + 1 >= 3x."""
    with pytest.raises(ValueError):
        analytic.tail_bound(10, 20)


def test_choose_cutoff():
    """The adaptive cutoff reaches the requested tail."""
    cutoff = analytic.choose_cutoff(10)
    assert cutoff >= 30
    assert cutoff % 10 == 0
    assert analytic.tail_bound(10, cutoff) < mpmath.ldexp(1, -40)
    assert analytic.tail_bound(10, cutoff - 10) >= mpmath.ldexp(1, -40)


def test_s_bounds_zeta5(zeta5, zeta5_group):
    """Smoothed sums of the smallest field respect the bound."""
    x_max = mpmath.sqrt(125)
    table = analytic.ideal_class_table(zeta5, zeta5_group,
                                       analytic.choose_cutoff(x_max))
    results = analytic.s_bounds(table, zeta5.regulator(128))
    assert len(results) == len(analytic.S_EPSILONS)
    assert all(result.holds is True for result in results)


def test_coset_sum_zeta5(zeta5, zeta5_group):
    """Restricted and full sums of the trivial coset."""
    table = analytic.ideal_class_table(zeta5, zeta5_group,
                                       analytic.choose_cutoff(11))
    zero = zeta5_group.zero()
    sums = analytic.coset_sum(table, [zero], [zero], 11)
    assert sums.fourier_matches
    assert sums.sandwich_holds is True
    assert sums.full.gt(sums.restricted) is True


def test_residue_kappa(zeta5):
    """Residue of the Dedekind zeta function of Q(zeta_5)."""
    report = analytic.residue_kappa(zeta5, 1)
    assert float(report.kappa) == pytest.approx(0.339837, abs=1e-4)
    assert report.w_exceeds_two
    assert report.louboutin_holds is True
    assert report.louboutin_applies is False


def test_min_norm_average():
    """Average of (D^(1/2) / N)^(1/2)."""
    with pytest.raises(ValueError):
        analytic.min_norm_average(125, [])
    value = analytic.min_norm_average(625, [1, 25])
    assert value.contains(3)


def test_coset_size_bound_small():
    """Below its threshold the bound is only informational."""
    result = analytic.coset_size_bound(125, 1, 1, real_ball(1))
    assert result.applies is False
    assert result.holds is True


def test_average_bound_forms():
    """Both forms of the constant are reported."""
    r_f = ComplexBall.exact(Fraction(48121, 100000))
    result = analytic.average_bound(125, [1], 1, r_f, r_f * 2)
    assert result.coset_size == 1
    assert result.holds_displayed is True
    assert result.holds_internal is True
    assert result.bound_simplified.contains(Fraction(48121, 100000) * 140000)


def test_bound_record():
    """Records are JSON friendly."""
    row = analytic.bound_record('x', a=Fraction(1, 3), b=3,
                                c=mpmath.mpf(2))
    assert row == {'check': 'x', 'a': '1/3', 'b': 3, 'c': '2.0'}
