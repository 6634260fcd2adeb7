"""Slow, obviously-correct reference computations used to pin expected values.

Nothing here imports the package's arithmetic; these only share the
lexicographic convention (itertools.product order, x1 varying slowest).
"""

from fractions import Fraction
from itertools import product


def points(m):
    return list(product((0, 1), repeat=m))


def dot(u, x):
    return sum(a * b for a, b in zip(u, x)) % 2


def anf_table(monomials, m):
    """monomials: list of tuples of 1-based variable indices; () is the constant 1."""
    return [sum(all(x[k - 1] for k in mono) for mono in monomials) % 2 for x in points(m)]


def walsh_direct(table, m):
    pts = points(m)
    return [sum((-1) ** ((table[i] + dot(u, x)) % 2) for i, x in enumerate(pts)) for u in pts]


def derivative_direct(table, m, a):
    pts = points(m)
    index = {x: i for i, x in enumerate(pts)}
    total = 0
    for i, x in enumerate(pts):
        y = tuple((xi + ai) % 2 for xi, ai in zip(x, a))
        total += (-1) ** ((table[i] + table[index[y]]) % 2)
    return total


def hadamard_direct(m):
    pts = points(m)
    return [[(-1) ** dot(u, x) for x in pts] for u in pts]


# GF(2)[x] by long division on coefficient lists (index = degree)

def poly_divmod_rem(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] ^= c
    while a and a[-1] == 0:
        a.pop()
    return a


def int_to_coeffs(v):
    return [(v >> k) & 1 for k in range(v.bit_length())]


def coeffs_to_int(c):
    return sum(b << k for k, b in enumerate(c))


def irreducible_by_trial_division(v):
    n = v.bit_length() - 1
    f = int_to_coeffs(v)
    for d in range(2, 1 << (n // 2 + 1)):
        if not poly_divmod_rem(f, int_to_coeffs(d)):
            return False
    return True


def smallest_irreducible(n):
    for v in range(1 << n, 1 << (n + 1)):
        if irreducible_by_trial_division(v):
            return v


def poly_mulmod(a, b, modulus):
    prod = [0] * (a.bit_length() + b.bit_length())
    for i, x in enumerate(int_to_coeffs(a)):
        for j, y in enumerate(int_to_coeffs(b)):
            prod[i + j] ^= x & y
    return coeffs_to_int(poly_divmod_rem(prod, int_to_coeffs(modulus)))


def rank_fractions(rows):
    """Rank over Q by textbook Gaussian elimination on Fractions."""
    A = [[Fraction(v) for v in row] for row in rows]
    rank, ncols = 0, len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def inner(a, b):
    """Hermitian inner product on Python complex numbers."""
    return sum(x * complex(y).conjugate() for x, y in zip(a, b))


def constraint_entry(tables, m, j, u, x, y):
    """(-1)^(g_j(x) + g_j(y) + u.(x + y)) with u, x, y given as point tuples."""
    pts = points(m)
    index = {p: i for i, p in enumerate(pts)}
    s = (tables[j][index[x]] + tables[j][index[y]]
         + dot(u, tuple((a + b) % 2 for a, b in zip(x, y)))) % 2
    return (-1) ** s
