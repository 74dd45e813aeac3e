"""
Unit tests for classgroup module.
"""

from collections import namedtuple

import pytest

from cmcert import classgroup
from cmcert.classgroup import ClassGroup
from cmcert.ideals import FracIdeal
from cmcert.numfield import CMType


_Prime = namedtuple('_Prime', 'p e f')


def _cyclic_six():
    primes = [_Prime(2, 1, 1), _Prime(3, 1, 1)]
    return ClassGroup(None, primes, [[2, 0], [0, 3]])


def test_structure_from_relations():
    """Relations 2a = 3b = 0 give a cyclic group of order six."""
    group = _cyclic_six()
    assert group.full_rank
    assert group.divisors == [6]
    assert group.order == 6
    assert len(group.elements()) == 6
    assert group.elements()[0] == group.zero()
    assert group.two_torsion_size() == 2


def test_rank_deficient_relations():
    """Too few relations leave the group infinite."""
    primes = [_Prime(2, 1, 1), _Prime(3, 1, 1)]
    group = ClassGroup(None, primes, [[1, 0]])
    assert not group.full_rank
    assert group.order == 0


def test_label_arithmetic():
    """Addition, negation and scaling of labels."""
    group = _cyclic_six()
    assert group.add((4,), (5,)) == (3,)
    assert group.neg((1,)) == (5,)
    assert group.scale((5,), 3) == (3,)
    assert group.generated_subgroup([(2,)]) == frozenset([(0,), (2,),
                                                          (4,)])
    assert group.generated_subgroup([]) == frozenset([group.zero()])


def test_discrete_logarithms():
    """Relations map to zero and labels lift to exponent vectors."""
    group = _cyclic_six()
    assert group.class_of_exponents([2, 0]) == group.zero()
    assert group.class_of_exponents([0, 3]) == group.zero()
    generated = group.generated_subgroup([group.fb_class(0),
                                          group.fb_class(1)])
    assert len(generated) == 6
    for label in group.elements():
        exps = group.exponents_of_label(label)
        assert group.class_of_exponents(exps) == label


def test_trivial_group(zeta5_group):
    """Q(zeta_5) has class number one and an empty factor base."""
    assert zeta5_group.order == 1
    assert zeta5_group.divisors == []
    assert zeta5_group.factor_base == []
    assert zeta5_group.elements() == [()]


def test_min_norms_trivial(zeta5_group):
    """The only class contains the unit ideal."""
    records = classgroup.min_norms(zeta5_group)
    assert len(records) == 1
    assert records[0].label == ()
    assert records[0].min_norm == 1
    assert records[0].min_rep == FracIdeal.unit(zeta5_group.field)


def test_type_norm_image_trivial(zeta5_group):
    """For h_K = 1 the type-norm image is trivial."""
    image = classgroup.type_norm_image(zeta5_group, CMType(0, 2))
    assert image.size == 1
    assert image.two_torsion == 1
    assert image.bound_holds


def test_principal_generator(zeta5):
    """(1 - zeta) is found to be principal."""
    prime = FracIdeal.principal(zeta5, 1 - zeta5.theta)
    alpha = classgroup.find_generator(prime)
    assert alpha is not None
    assert abs(alpha.norm()) == 5
    assert FracIdeal.principal(zeta5, alpha) == prime


def test_reduce_ideal_same_class(zeta5):
    """Reduction keeps an integral ideal of at most Minkowski norm."""
    big = FracIdeal.principal(zeta5, zeta5.from_rational(7)) * \
        FracIdeal.principal(zeta5, 1 - zeta5.theta)
    small = classgroup.reduce_ideal(big)
    assert small.is_integral()
    assert classgroup.is_principal(small)


def test_class_group_record(zeta5_group):
    """Report row of the trivial class group."""
    records = classgroup.min_norms(zeta5_group)
    row = classgroup.class_group_record(zeta5_group, records)
    assert row['h_K'] == '1'
    assert row['disc_K'] == '125'
    assert row['min_norms'] == [{'label': [], 'min_norm': '1'}]


@pytest.fixture(scope='module')
def group8000(field8000):
    return classgroup.class_group(field8000)


def test_class_group_consistency(group8000):
    """Structure, minimal norms and type norms of the disc-8000 field."""
    group = group8000
    product = 1
    for d in group.divisors:
        product *= d
    assert product == group.order
    assert all(b % a == 0 for a, b in zip(group.divisors,
                                          group.divisors[1:]))
    records = classgroup.min_norms(group)
    assert sorted(r.label for r in records) == sorted(group.elements())
    assert records[0].min_norm == 1
    bound = classgroup.minkowski_bound(group.field)
    assert all(r.min_norm <= bound for r in records)
    for cm_type in group.field.cm_types():
        image = classgroup.type_norm_image(group, cm_type)
        assert group.order % image.size == 0
        assert image.bound_holds


def test_class_of_factor_base(group8000):
    """Every factor-base prime is classified consistently."""
    group = group8000
    for index, prime in enumerate(group.factor_base):
        assert group.class_of(prime.ideal) == group.fb_class(index)
