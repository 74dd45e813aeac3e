"""
Exact integer and rational matrix routines.

Matrices are lists of rows holding Python ints (or Fractions for the
rational routines). Lattices are spanned by the *columns* of a matrix.
"""

from __future__ import division

from fractions import Fraction


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def copy(m):
    return [list(row) for row in m]


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    """Matrix product of two list-of-rows matrices."""
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def columns(m):
    return transpose(m)


def from_columns(cols):
    return transpose(cols)


def is_diagonal(m):
    return all(m[i][j] == 0
               for i in range(len(m)) for j in range(len(m[0])) if i != j)


def _hnf_columns(cols, n, with_transform):
    """Column-style HNF on a list of (column, transform-column) pairs."""
    work = [(list(c), list(t)) for c, t in cols]
    pivots = [None] * n

    def _sub(target, source, q):
        return ([x - q * y for x, y in zip(target[0], source[0])],
                [x - q * y for x, y in zip(target[1], source[1])])

    for i in reversed(range(n)):
        while True:
            nonzero = [k for k, (c, _) in enumerate(work) if c[i] != 0]
            if not nonzero:
                raise ValueError("matrix does not have full row rank")
            if len(nonzero) == 1:
                break
            best = min(nonzero, key=lambda k: abs(work[k][0][i]))
            for k in nonzero:
                if k == best:
                    continue
                q = work[k][0][i] // work[best][0][i]
                work[k] = _sub(work[k], work[best], q)
        k = nonzero[0]
        col, trans = work.pop(k)
        if col[i] < 0:
            col = [-x for x in col]
            trans = [-x for x in trans]
        pivots[i] = (col, trans)

    # Reduce entries to the right of each pivot
    for j in range(n):
        for i in reversed(range(j)):
            q = pivots[j][0][i] // pivots[i][0][i]
            if q:
                pivots[j] = _sub(pivots[j], pivots[i], q)

    h = from_columns([c for c, _ in pivots])
    if not with_transform:
        return h
    transform = from_columns([t for _, t in pivots] + [t for _, t in work])
    return h, transform


def hnf(m, transform=False):
    """Hermite normal form of the lattice spanned by the columns of `m`.

    The result is square, upper triangular, with positive diagonal and
    ``0 <= H[i][j] < H[i][i]`` for ``j > i``.

    Parameters
    ----------
    m : list of lists of int
        An ``n x k`` matrix of full row rank ``n``.
    transform : bool
        If true, also return a unimodular ``k x k`` matrix ``U`` such that
        ``m U = [H | 0]``.

    Raises
    ------
    ValueError
        If `m` does not have full row rank.

    Examples
    --------
    >>> hnf([[2, 1], [0, 1]])
    [[2, 1], [0, 1]]
    >>> hnf([[2, 0, 3], [0, 2, 1]])
    [[2, 1], [0, 1]]
    """
    n = len(m)
    k = len(m[0])
    cols = columns(m)
    if transform:
        eye = identity(k)
        pairs = [(cols[j], eye[j]) for j in range(k)]
    else:
        pairs = [(c, []) for c in cols]
    return _hnf_columns(pairs, n, transform)


def lattice_contains(h, v):
    """Whether the integer vector `v` lies in the column span of HNF `h`."""
    v = list(v)
    n = len(h)
    for i in reversed(range(n)):
        if v[i] % h[i][i]:
            return False
        c = v[i] // h[i][i]
        if c:
            for r in range(i + 1):
                v[r] -= c * h[r][i]
    return True


def lattice_coordinates(h, v):
    """Integer coordinates of `v` in the columns of HNF `h`, or None."""
    v = list(v)
    n = len(h)
    coords = [0] * n
    for i in reversed(range(n)):
        if v[i] % h[i][i]:
            return None
        c = v[i] // h[i][i]
        coords[i] = c
        if c:
            for r in range(i + 1):
                v[r] -= c * h[r][i]
    return coords


def snf(m):
    """Smith normal form.

    Returns
    -------
    d : list of lists of int
        Diagonal matrix with ``d[i][i] | d[i+1][i+1]`` and nonnegative
        diagonal.
    left, right : list of lists of int
        Unimodular matrices with ``left * m * right = d``.

    Examples
    --------
    >>> snf([[2, 0], [0, 3]])[0]
    [[1, 0], [0, 6]]
    >>> snf([[4, 2], [2, 4]])[0]
    [[2, 0], [0, 6]]
    """
    # pylint: disable=too-many-branches
    a = copy(m)
    n = len(a)
    k = len(a[0]) if n else 0
    left = identity(n)
    right = identity(k)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for mat in (a, right):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(target, source, q):
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        left[target] = [x + q * y for x, y in zip(left[target],
                                                   left[source])]

    def add_col(target, source, q):
        for mat in (a, right):
            for row in mat:
                row[target] += q * row[source]

    for t in range(min(n, k)):
        entries = [(abs(a[i][j]), i, j)
                   for i in range(t, n) for j in range(t, k) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, n):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, k):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, n) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, k) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = [i for i in range(t + 1, n)
                   if any(a[i][j] % a[t][t] for j in range(t + 1, k))]
            if bad:
                add_row(t, bad[0], 1)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    return a, left, right


def elementary_divisors(m):
    """Nonzero diagonal of the Smith normal form."""
    d = snf(m)[0]
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


def integer_kernel(m):
    """Basis (as columns) of the integer kernel ``{x : m x = 0}``."""
    d, _, right = snf(m)
    k = len(m[0])
    rank = sum(1 for i in range(min(len(d), k)) if d[i][i])
    return [[right[r][j] for r in range(k)] for j in range(rank, k)]


# Rational linear algebra

def _to_fractions(m):
    return [[Fraction(x) for x in row] for row in m]


def _echelon(m):
    """Row-echelon form over Q; returns (matrix, pivot columns, sign)."""
    a = _to_fractions(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    sign = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots, sign


def rank(m):
    return len(_echelon(m)[1])


def det(m):
    """Exact determinant as a Fraction (an int for integer input)."""
    n = len(m)
    a, pivots, sign = _echelon(m)
    if len(pivots) < n:
        return Fraction(0)
    result = Fraction(sign)
    for i in range(n):
        result *= a[i][i]
    return result


def solve(m, b):
    """Solve ``m x = b`` exactly for square nonsingular `m`."""
    n = len(m)
    aug = [list(row) + [bi] for row, bi in zip(_to_fractions(m),
                                                 [Fraction(x) for x in b])]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def inverse(m):
    """Exact inverse over Q."""
    n = len(m)
    cols = [solve(m, e) for e in identity(n)]
    return from_columns(cols)


def kernel_mod_p(m, p):
    """Basis of the right kernel of `m` over GF(p), as lists of ints."""
    a = [[x % p for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * cols
        v[fcol] = 1
        for row, pcol in enumerate(pivots):
            v[pcol] = (-a[row][fcol]) % p
        basis.append(v)
    return basis


def pfaffian4(a):
    """Pfaffian of a 4x4 alternating matrix."""
    return a[0][1] * a[2][3] - a[0][2] * a[1][3] + a[0][3] * a[1][2]


def is_unimodular(m):
    return abs(det(m)) == 1
