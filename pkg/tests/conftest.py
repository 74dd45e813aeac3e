"""Shared pytest options and fixtures."""

import pytest


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help="run slow tests")


def pytest_configure(config):
    config.addinivalue_line('markers', "slow: long-running computation")


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def zeta5():
    """The fifth cyclotomic field, the smallest cyclic quartic CM field."""
    # pylint: disable=import-outside-toplevel
    from cmcert import numfield
    from cmcert.polymod import cyclotomic
    return numfield.maximal_order(cyclotomic(5))


@pytest.fixture(scope='session')
def zeta5_group(zeta5):
    """Class group of the fifth cyclotomic field."""
    # pylint: disable=import-outside-toplevel
    from cmcert import classgroup
    return classgroup.class_group(zeta5)


@pytest.fixture(scope='session')
def field8000():
    """The cyclic quartic CM field of discriminant 8000."""
    # pylint: disable=import-outside-toplevel
    from cmcert import numfield
    from cmcert.polymod import ZPoly
    return numfield.maximal_order(ZPoly([20, 0, 10, 0, 1]))


@pytest.fixture(scope='session')
def zeta5_point(zeta5):
    """Reduced period point of Q(zeta_5) for the type (0, 2)."""
    # pylint: disable=import-outside-toplevel
    from cmcert import polarize
    from cmcert import siegel
    from cmcert.ideals import FracIdeal
    from cmcert.numfield import CMType
    triple = polarize.find_polarizations(zeta5, CMType(0, 2),
                                         FracIdeal.unit(zeta5))[0]
    basis = polarize.symplectic_basis(triple)
    return siegel.reduce_to_f2(siegel.period_matrix(basis))
