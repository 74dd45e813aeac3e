"""
Small positive-definite lattices: pairwise reduction and short vectors.

Gram matrices are exact (ints or Fractions). Enumeration runs in floating
point through a Cholesky factorisation and every candidate is re-checked
exactly, so the output is exact.
"""

from __future__ import division

from fractions import Fraction
import logging
import math

import numpy as np
import scipy.linalg

from cmcert import intmat


class EnumerationOverflow(Exception):
    """Raised when enumeration exceeds the requested number of vectors."""
    pass


def quadratic_form(gram, x):
    n = len(x)
    return sum(gram[i][j] * x[i] * x[j] for i in range(n) for j in range(n))


def congruent_gram(gram, transform):
    """``T^t G T``."""
    return intmat.matmul(intmat.matmul(intmat.transpose(transform), gram),
                         transform)


def pair_reduce(gram):
    """Pairwise (Gauss-style) reduction of a basis.

    Returns
    -------
    transform : list of lists of int
        Unimodular matrix whose columns express the new basis.
    reduced : list of lists
        The Gram matrix of the new basis, sorted by increasing norm.
    """
    n = len(gram)
    transform = intmat.identity(n)
    current = [list(row) for row in gram]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j or 2 * abs(current[i][j]) <= current[j][j]:
                    continue
                q = int(round(Fraction(current[i][j]) / current[j][j]))
                for row in transform:
                    row[i] -= q * row[j]
                current = congruent_gram(gram, transform)
                changed = True
    order = sorted(range(n), key=lambda k: current[k][k])
    transform = [[row[k] for k in order] for row in transform]
    return transform, congruent_gram(gram, transform)


def _enumerate(gram, bound, limit):
    n = len(gram)
    matrix = np.array([[float(x) for x in row] for row in gram])
    upper = scipy.linalg.cholesky(matrix, lower=False)
    diag = np.diag(upper) ** 2
    mu = upper / np.diag(upper)[:, None]
    slack = float(bound) * 1e-9 + 1e-9
    found = []
    x = [0] * n

    def recurse(level, remaining):
        center = -sum(mu[level][j] * x[j] for j in range(level + 1, n))
        radius = math.sqrt(max(remaining, 0.0) / diag[level])
        low = int(math.ceil(center - radius - 1e-9))
        high = int(math.floor(center + radius + 1e-9))
        for value in range(low, high + 1):
            x[level] = value
            used = diag[level] * (value - center) ** 2
            if used > remaining + slack:
                continue
            if level == 0:
                if any(x):
                    norm = quadratic_form(gram, x)
                    if norm <= bound:
                        found.append((Fraction(norm), tuple(x)))
                        if limit is not None and len(found) > limit:
                            raise EnumerationOverflow(
                                "more than {} vectors".format(limit))
            else:
                recurse(level - 1, remaining - used)
        x[level] = 0

    recurse(n - 1, float(bound) + slack)
    return found


def short_vectors(gram, bound, limit=None):
    """All nonzero integer vectors ``x`` with ``x^t G x <= bound``.

    Parameters
    ----------
    gram : list of lists
        Exact positive-definite Gram matrix.
    bound : Fraction or int
    limit : int, optional
        Raise :class:`EnumerationOverflow` beyond this many vectors.

    Returns
    -------
    list of (Fraction, tuple)
        Norm and coordinates, sorted by norm; ``x`` and ``-x`` both appear.

    Examples
    --------
    >>> [v for _, v in short_vectors([[2, 1], [1, 2]], 2)]
    [(-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0)]
    """
    transform, reduced = pair_reduce(gram)
    found = []
    for norm, y in _enumerate(reduced, bound, limit):
        found.append((norm, tuple(intmat.matvec(transform, list(y)))))
    found.sort()
    logging.debug("Enumerated %d vectors of norm <= %s", len(found),
                  float(bound))
    return found


def shortest_vector(gram):
    """A shortest nonzero vector of the lattice."""
    transform, reduced = pair_reduce(gram)
    bound = reduced[0][0]
    candidates = short_vectors(gram, bound)
    if not candidates:
        return tuple(row[0] for row in transform)
    return candidates[0][1]
