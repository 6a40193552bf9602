"""Small dense matrices over the coefficient field, stored as tuples of rows."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .errors import DimensionMismatch, DivisionByZero
from .scalars import as_scalar, field_inv, format_scalar, parse_scalar

ZERO = Fraction(0)
ONE = Fraction(1)


def to_matrix(rows):
    """Coerce a nested sequence (ints, Fractions, scalar strings...) to a square matrix."""
    m = tuple(tuple(as_scalar(x) for x in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise DimensionMismatch("matrix must be square and nonempty")
    return m


def identity(n):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diag(*entries):
    n = len(entries)
    return tuple(tuple(as_scalar(entries[i]) if i == j else ZERO for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a))


def matmul(a, b):
    if len(a[0]) != len(b):
        raise DimensionMismatch("incompatible matrix shapes")
    cols = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = ZERO
            for x, y in zip(row, col):
                if x != 0 and y != 0:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def inverse(a):
    """Gauss-Jordan inverse; raises DivisionByZero for singular input."""
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = field_inv(aug[col][col])
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(a):
    n = len(a)
    m = [list(row) for row in a]
    sign = ONE
    acc = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        acc = acc * p
        inv = field_inv(p)
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return sign * acc


def is_invertible(a):
    return det(a) != 0


def matpow(a, k):
    """Integer power; negative exponents go through the inverse."""
    if k < 0:
        a = inverse(a)
        k = -k
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def is_diagonal(a):
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a)) if i != j)


def permutation_support(a):
    """For a generalized permutation matrix, the map row -> column of its nonzero entry.

    Returns ``None`` when some row or column does not hold exactly one nonzero.
    """
    n = len(a)
    perm = []
    for i in range(n):
        nz = [j for j in range(n) if a[i][j] != 0]
        if len(nz) != 1:
            return None
        perm.append(nz[0])
    if sorted(perm) != list(range(n)):
        return None
    return tuple(perm)


def is_generalized_permutation(a):
    return permutation_support(a) is not None


def coxeter_length(perm):
    """Number of inversions of a permutation given as a sequence."""
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def all_permutations(n):
    return list(permutations(range(n)))


def format_matrix(a):
    return [[format_scalar(x) for x in row] for row in a]


def parse_matrix(rows):
    return to_matrix([[parse_scalar(x) if isinstance(x, str) else x for x in row] for row in rows])
