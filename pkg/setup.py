#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Setuptools-based setup module."""

from setuptools import setup, find_packages

INSTALL_REQUIRES = ['numpy',
                    'scipy',
                    'mpmath',
                    'sympy']

SETUP_REQUIRE = ['pytest-runner']

TESTS_REQUIRE = ['pytest>=2.8']

EXTRAS_REQUIRE = {'analysis': ['matplotlib']}

setup(
    name='cmcert',
    version='0.1.0',
    description='Certified genus-2 CM computations for cyclic quartic CM '
                'fields',
    install_requires=INSTALL_REQUIRES,
    setup_requires=SETUP_REQUIRE,
    tests_require=TESTS_REQUIRE,
    extras_require=EXTRAS_REQUIRE,
    packages=find_packages(exclude=('tests', 'docs')),
    entry_points={
        'console_scripts': [
            'cmcert = cmcert.cli:_main'
        ]
    },
)
