"""Exact rational polynomials in x, y, z and sparse rational linear algebra.

Vectors are sparse dicts ``{column: Fraction}``.  Columns of a degree-``d``
coefficient vector index the monomials of degree ``d`` in graded-lex order
with x > y > z (see :func:`monomials`).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Q = Fraction
Mono = tuple  # (i, j, k) exponent triple
Matrix = tuple  # 3x3 tuple of tuples of Fraction

VARS = ("x", "y", "z")


class ParseError(ValueError):
    pass


class InhomogeneousError(ValueError):
    def __init__(self, degrees):
        self.degrees = sorted(degrees)
        super().__init__(f"inhomogeneous polynomial: degrees {self.degrees}")


class SingularMatrixError(ValueError):
    pass


def to_q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use int, str or Fraction")
    return Fraction(value)


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple:
    """All exponent triples of degree ``d``, graded-lex with x > y > z."""
    return tuple((i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict:
    return {e: k for k, e in enumerate(monomials(d))}


def num_monomials(d: int) -> int:
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def mono_mul(a: Mono, b: Mono) -> Mono:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def mono_str(e: Mono) -> str:
    parts = []
    for v, p in zip(VARS, e):
        if p == 1:
            parts.append(v)
        elif p > 1:
            parts.append(f"{v}^{p}")
    return "*".join(parts)


class Poly:
    """Homogeneous polynomial with an explicit degree (also for zero)."""

    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, degree: int, terms: Mapping | None = None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(t) for t in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValueError(f"monomial {e} does not have degree {degree}")
            c = to_q(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.degree = degree
        self.terms = clean
        self._hash = None

    @staticmethod
    def var(name: str) -> "Poly":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return Poly(1, {tuple(e): 1})

    @staticmethod
    def monomial(e: Mono, c=1) -> "Poly":
        return Poly(sum(e), {tuple(e): c})

    @staticmethod
    def zero(degree: int) -> "Poly":
        return Poly(degree)

    @staticmethod
    def linear(a, b, c) -> "Poly":
        return Poly(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Mono) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def _check(self, other: "Poly"):
        if self.degree != other.degree:
            raise InhomogeneousError({self.degree, other.degree})

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.degree, t)

    def __neg__(self):
        return Poly(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            t: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = mono_mul(e1, e2)
                    t[e] = t.get(e, 0) + c1 * c2
            return Poly(self.degree + other.degree, t)
        c = to_q(other)
        return Poly(self.degree, {e: c * v for e, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = Poly(0, {(0, 0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence) -> Fraction:
        p = [to_q(v) for v in point]
        total = Fraction(0)
        for (i, j, k), c in self.terms.items():
            total += c * p[0] ** i * p[1] ** j * p[2] ** k
        return total

    def weight_of(self, e: Mono, lam: Sequence) -> Fraction:
        return sum(to_q(a) * b for a, b in zip(lam, e))

    def to_vector(self) -> dict:
        idx = monomial_index(self.degree)
        return {idx[e]: c for e, c in self.terms.items()}

    @staticmethod
    def from_vector(degree: int, vec: Mapping) -> "Poly":
        mons = monomials(degree)
        return Poly(degree, {mons[k]: c for k, c in vec.items()})

    def sorted_terms(self):
        idx = monomial_index(self.degree)
        return sorted(self.terms.items(), key=lambda t: idx[t[0]])

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            m = mono_str(e)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = m
            else:
                body = f"{a}*{m}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Poly({self.degree}, {str(self)!r})"


X, Y, Z = Poly.var("x"), Poly.var("y"), Poly.var("z")

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[xyz])|(?P<op>[-+*^]))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


def parse_polynomial(text: str) -> Poly:
    """Parse ``[sign][rational '*'] var_power ('*' var_power)*`` terms."""
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    terms: dict = {}
    first = True
    while pos < len(toks):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {val!r}")
        first = False
        coeff = Fraction(sign)
        exps = [0, 0, 0]
        kind, val = peek()
        have_factor = False
        if kind == "num":
            den_ok = True
            try:
                coeff *= Fraction(val)
            except ZeroDivisionError:
                den_ok = False
            if not den_ok:
                raise ParseError(f"zero denominator in {val!r}")
            pos += 1
            have_factor = True
            kind, val = peek()
            if kind == "op" and val == "*":
                pos += 1
                kind, val = peek()
                if kind != "var":
                    raise ParseError("expected a variable after '*'")
            elif kind not in (None, "op") or (kind == "op" and val not in "+-"):
                raise ParseError(f"unexpected token {val!r} after coefficient")
        while True:
            kind, val = peek()
            if kind != "var":
                break
            pos += 1
            p = 1
            k2, v2 = peek()
            if k2 == "op" and v2 == "^":
                pos += 1
                k3, v3 = peek()
                if k3 != "num" or "/" in v3:
                    raise ParseError("exponent must be a non-negative integer")
                p = int(v3)
                pos += 1
            exps[VARS.index(val)] += p
            have_factor = True
            k2, v2 = peek()
            if k2 == "op" and v2 == "*":
                pos += 1
                k3, _ = peek()
                if k3 != "var":
                    raise ParseError("expected a variable after '*'")
                continue
            break
        if not have_factor:
            raise ParseError(f"expected a term near token {pos}")
        kind, val = peek()
        if kind is not None and not (kind == "op" and val in "+-"):
            raise ParseError(f"unexpected token {val!r}")
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        raise InhomogeneousError(degrees)
    d = degrees.pop()
    return Poly(d, terms)


# ---------------------------------------------------------------- matrices

def matrix(rows) -> Matrix:
    m = tuple(tuple(to_q(v) for v in r) for r in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("expected a 3x3 matrix")
    return m


def identity() -> Matrix:
    return matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def diag(a, b, c) -> Matrix:
    return matrix([[a, 0, 0], [0, b, 0], [0, 0, c]])


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def det3(A: Matrix) -> Fraction:
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def inverse3(A: Matrix) -> Matrix:
    d = det3(A)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    cof = [[(A[(j + 1) % 3][(i + 1) % 3] * A[(j + 2) % 3][(i + 2) % 3]
             - A[(j + 1) % 3][(i + 2) % 3] * A[(j + 2) % 3][(i + 1) % 3]) / d
            for j in range(3)] for i in range(3)]
    return matrix(cof)


def transpose(A: Matrix) -> Matrix:
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def substitute(f: Poly, A) -> Poly:
    """Return ``A . f`` where ``(A . f)(v) = f(A^T v)``."""
    A = matrix(A)
    if det3(A) == 0:
        raise SingularMatrixError("substitution matrix is singular")
    # variable i is replaced by row i of A^T, i.e. column i of A
    images = [Poly.linear(A[0][i], A[1][i], A[2][i]) for i in range(3)]
    powers = [[Poly(0, {(0, 0, 0): 1})] for _ in range(3)]
    for i in range(3):
        for _ in range(f.degree):
            powers[i].append(powers[i][-1] * images[i])
    out = Poly(f.degree)
    for (a, b, c), coef in f.terms.items():
        out = out + powers[0][a] * powers[1][b] * powers[2][c] * coef
    return out


# ---------------------------------------------------------- linear algebra

def _axpy(v: dict, c: Fraction, row: Mapping) -> None:
    """v -= c * row, in place."""
    for k, a in row.items():
        nv = v.get(k, 0) - c * a
        if nv:
            v[k] = nv
        else:
            v.pop(k, None)


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space.

    Pivots are the smallest column index of each row; every stored row has a
    unit entry at its pivot and zeros at all other pivots.
    """

    def __init__(self, ncols: int, rows: Iterable[Mapping] = ()):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> dict:
        v = {k: to_q(c) for k, c in v.items() if c}
        for p in [c for c in v if c in self.rows]:
            c = v.get(p)
            if c:
                _axpy(v, c, self.rows[p])
        return v

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                _axpy(row, c, r)
        self.rows[p] = r
        return True

    def pivots(self) -> list:
        return sorted(self.rows)

    def basis(self) -> list:
        return [self.rows[p] for p in sorted(self.rows)]

    def copy(self) -> "Echelon":
        e = Echelon(self.ncols)
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        return e

    def nullspace(self) -> list:
        """Basis of the annihilator {w : <w, r> = 0 for every row r}."""
        out = []
        piv = self.rows
        for j in range(self.ncols):
            if j in piv:
                continue
            w = {j: Fraction(1)}
            for p, row in piv.items():
                c = row.get(j)
                if c:
                    w[p] = -c
            out.append(w)
        return out


class RREF:
    """Result of :func:`row_reduce`."""

    def __init__(self, rows: list, pivots: list, ncols: int):
        self.rows = rows
        self.pivots = pivots
        self.ncols = ncols

    @property
    def rank(self) -> int:
        return len(self.rows)

    def dense(self) -> list:
        return [[r.get(j, Fraction(0)) for j in range(self.ncols)] for r in self.rows]


def row_reduce(vectors: Sequence, ncols: int | None = None) -> RREF:
    """Reduced row-echelon form of dense (list) or sparse (dict) rows."""
    rows = []
    for v in vectors:
        if isinstance(v, Mapping):
            rows.append(dict(v))
        else:
            rows.append({k: to_q(c) for k, c in enumerate(v) if c})
    if ncols is None:
        lengths = {len(v) for v in vectors if not isinstance(v, Mapping)}
        if len(lengths) > 1:
            raise ValueError("rows have different lengths")
        ncols = lengths.pop() if lengths else max((max(r) + 1 for r in rows if r), default=0)
    e = Echelon(ncols, rows)
    piv = e.pivots()
    return RREF([e.rows[p] for p in piv], piv, ncols)


class Subspace:
    """A subspace of Q^N kept as an RREF basis, with a cached annihilator."""

    def __init__(self, ncols: int, rows: Iterable[Mapping] = (), *, _ech: Echelon | None = None):
        self.ncols = ncols
        self.ech = _ech if _ech is not None else Echelon(ncols, rows)
        self._ann: Subspace | None = None

    @staticmethod
    def from_annihilator(ncols: int, functionals: Iterable[Mapping]) -> "Subspace":
        ann = Subspace(ncols, functionals)
        out = Subspace(ncols, ann.ech.nullspace())
        out._ann = ann
        return out

    @property
    def dim(self) -> int:
        return self.ech.rank

    def basis(self) -> list:
        return self.ech.basis()

    def annihilator(self) -> "Subspace":
        if self._ann is None:
            self._ann = Subspace(self.ncols, self.ech.nullspace())
            self._ann._ann = self
        return self._ann

    def contains(self, v: Mapping) -> bool:
        return self.ech.contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis())

    def intersect(self, other: "Subspace") -> "Subspace":
        a = self.annihilator().ech.copy()
        for r in other.annihilator().basis():
            a.add(r)
        return Subspace.from_annihilator(self.ncols, a.basis())

    def __add__(self, other: "Subspace") -> "Subspace":
        e = self.ech.copy()
        for r in other.basis():
            e.add(r)
        return Subspace(self.ncols, _ech=e)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ncols == other.ncols and self.ech.rows == other.ech.rows

    def __hash__(self):
        return hash((self.ncols, self.dim))


def rank_mod_p(rows: Sequence[Sequence], p: int = 1_000_003) -> int:
    """Rank over GF(p); an independent check for exact ranks."""
    m = []
    for r in rows:
        row = []
        for c in r:
            c = to_q(c)
            row.append(c.numerator * pow(c.denominator, -1, p) % p)
        m.append(row)
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank

