"""Independent brute-force oracles used by the tests.

Nothing here calls the library's greedy or polytope code: the degree-m piece
of an ideal is rebuilt from generators with sympy, and Plücker coordinates
are tested one by one as exact determinants.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

import sympy


def monomials(m: int) -> list:
    return [(a, b, m - a - b) for a in range(m, -1, -1) for b in range(m - a, -1, -1)]


def degree_piece(generators, m: int) -> sympy.Matrix:
    """Rows spanning I_m, from generator times monomial products (sympy rank reduction)."""
    mons = monomials(m)
    idx = {e: i for i, e in enumerate(mons)}
    rows = []
    for g in generators:
        if g.degree > m:
            continue
        for e in monomials(m - g.degree):
            row = [0] * len(mons)
            for ge, c in g.terms.items():
                row[idx[(ge[0] + e[0], ge[1] + e[1], ge[2] + e[2])]] += sympy.Rational(c.numerator, c.denominator)
            rows.append(row)
    M = sympy.Matrix(rows) if rows else sympy.zeros(0, len(mons))
    R, piv = M.rref()
    return R[: len(piv), :]


def _det(rows) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def _det_int(rows) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for k in range(c + 1, n):
                a[r][k] = (a[r][k] * a[c][c] - a[r][c] * a[c][k]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def _integer_rows(A) -> list:
    out = []
    for row in A:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def plucker_mu(generators, m: int, weights) -> Fraction:
    """min over nonzero Plücker coordinates of the lambda-weight, by exhaustive search.

    A column set S of I_m has a nonzero maximal minor iff its complement T
    carries a nonzero maximal minor of the annihilator; T runs over all
    subsets in order of increasing weight of S until the first nonzero.
    """
    P = degree_piece(generators, m)
    mons = monomials(m)
    N = len(mons)
    ann = P.nullspace()
    # annihilator of the row space: vectors a with P a = 0, viewed as functionals
    A = [[Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec] for vec in ann]
    k = len(A)
    wq = [Fraction(x) for x in weights]
    den = 1
    for x in wq:
        den = den * x.denominator // gcd(den, x.denominator)
    wi = [int(x * den) for x in wq]
    w = [wi[0] * e[0] + wi[1] * e[1] + wi[2] * e[2] for e in mons]
    total = sum(w)
    Ai = _integer_rows(A)
    zero_cols = {j for j in range(N) if not any(row[j] for row in Ai)}
    subsets = sorted(combinations(range(N), k), key=lambda T: -sum(w[j] for j in T))
    for T in subsets:
        if zero_cols.intersection(T):
            continue
        if _det_int([[row[j] for j in T] for row in Ai]) != 0:
            return Fraction(total - sum(w[j] for j in T), den)
    raise AssertionError("no nonzero Plücker coordinate")


def hilbert_dim(generators, m: int) -> int:
    return degree_piece(generators, m).rows


def vanishes_at(poly, point) -> bool:
    return poly.evaluate(point) == 0
