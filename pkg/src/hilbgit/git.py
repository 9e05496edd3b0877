"""Hilbert points, state polytopes and Hilbert-Mumford indices."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .exact import (
    Echelon, Poly, identity, matrix, monomials, num_monomials, substitute, to_q,
)
from .ideals import Cycle, PointScheme, line_through, normalize_point


class HilbertPointUndefined(ValueError):
    pass


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


class _Indeterminate:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INDETERMINATE"

    __str__ = __repr__


INF = _Infinity()
INDETERMINATE = _Indeterminate()


def parse_m(text) -> Fraction | _Infinity:
    if text is INF or (isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    return to_q(text)


class AsymptoticSlope(Fraction):
    """Slope mu_{d+1} - mu_d returned for m = infinity.

    Stability at m = infinity is decided by :func:`chow_stability`.
    """

    at_infinity = True


@dataclass(frozen=True)
class OneParamSubgroup:
    weights: tuple

    def __init__(self, *w):
        if len(w) == 1 and not isinstance(w[0], (int, Fraction, str)):
            w = tuple(w[0])
        w = tuple(to_q(v) for v in w)
        if len(w) != 3 or sum(w) != 0:
            raise ValueError(f"weights {w} must be three rationals summing to zero")
        object.__setattr__(self, "weights", w)

    @staticmethod
    def ab(a, b) -> "OneParamSubgroup":
        a, b = to_q(a), to_q(b)
        return OneParamSubgroup(a, b, -a - b)

    @staticmethod
    def normalized(r) -> "OneParamSubgroup":
        r = to_q(r)
        return OneParamSubgroup(1, r, -1 - r)

    def inverse(self) -> "OneParamSubgroup":
        return OneParamSubgroup(*(-w for w in self.weights))

    def permuted(self, perm: Sequence[int]) -> "OneParamSubgroup":
        return OneParamSubgroup(*(self.weights[p] for p in perm))

    def is_trivial(self) -> bool:
        return not any(self.weights)

    def weight(self, e) -> Fraction:
        return self.weights[0] * e[0] + self.weights[1] * e[1] + self.weights[2] * e[2]

    def __iter__(self):
        return iter(self.weights)

    def __str__(self):
        return ",".join(str(w) for w in self.weights)


def lam_r(r) -> OneParamSubgroup:
    return OneParamSubgroup.normalized(r)


def lam_ab(a, b) -> OneParamSubgroup:
    return OneParamSubgroup.ab(a, b)


def _as_lambda(lam) -> OneParamSubgroup:
    return lam if isinstance(lam, OneParamSubgroup) else OneParamSubgroup(*lam)


# ------------------------------------------------------------ Hilbert points

def hilbert_point_defined(Z: PointScheme, m: int) -> bool:
    N = num_monomials(m)
    return Z.length < N and Z.ideal.dim(m) == N - Z.length


def _piece(Z: PointScheme, m: int):
    if m < 1 or not hilbert_point_defined(Z, m):
        raise HilbertPointUndefined(f"the {m}-th Hilbert point is not defined (n = {Z.length})")
    return Z.ideal.graded_piece(m)


def _column_greedy(vectors_by_col: dict, order: Sequence[int], rank: int, dim: int) -> list:
    """Pick columns greedily in ``order`` until ``rank`` independent ones are found."""
    ech = Echelon(dim)
    chosen = []
    for j in order:
        v = vectors_by_col.get(j)
        if v and ech.add(v):
            chosen.append(j)
            if len(chosen) == rank:
                break
    return chosen


def _columns(rows: list) -> dict:
    cols: dict = {}
    for i, r in enumerate(rows):
        for j, c in r.items():
            cols.setdefault(j, {})[i] = c
    return cols


def _basis_weight(m: int, cols: Sequence[int]) -> tuple:
    mons = monomials(m)
    return tuple(sum(mons[j][t] for j in cols) for t in range(3))


def lex_min_basis(Z: PointScheme, m: int, keys) -> tuple:
    """Weight vector of the lexicographically key-minimal monomial basis.

    ``keys`` is a list of linear functionals on exponents; monomials are
    compared by the tuple of their values.  Uses the dual matroid: a column
    set is a basis of H^0(I(m)) iff its complement is a basis of the
    annihilator, so the complement of a key-maximal dual basis is returned.
    """
    piece = _piece(Z, m)
    ann = piece.annihilator().basis()
    mons = monomials(m)
    N = len(mons)

    qkeys = [tuple(to_q(v) for v in c) for c in keys]

    def key(j):
        e = mons[j]
        return tuple(c[0] * e[0] + c[1] * e[1] + c[2] * e[2] for c in qkeys) + (j,)

    order = sorted(range(N), key=key, reverse=True)
    T = _column_greedy(_columns(ann), order, len(ann), len(ann))
    if len(T) != len(ann):
        raise AssertionError("annihilator columns do not have full rank")
    total = _basis_weight(m, range(N))
    tw = _basis_weight(m, T)
    return tuple(a - b for a, b in zip(total, tw))


def mu_integer(Z: PointScheme, m: int, lam) -> Fraction:
    """min over the state polytope of <lambda, v>, by matroid greedy."""
    lam = _as_lambda(lam)
    if lam.is_trivial():
        _piece(Z, m)
        return Fraction(0)
    v = lex_min_basis(Z, m, [lam.weights])
    return lam.weight(v)


def mu_integer_primal(Z: PointScheme, m: int, lam) -> Fraction:
    """Greedy over the columns of H^0(I(m)) itself (independent cross-check)."""
    lam = _as_lambda(lam)
    piece = _piece(Z, m)
    rows = piece.basis()
    mons = monomials(m)
    order = sorted(range(len(mons)), key=lambda j: (lam.weight(mons[j]), j))
    S = _column_greedy(_columns(rows), order, len(rows), len(rows))
    return sum((lam.weight(mons[j]) for j in S), Fraction(0))


# ------------------------------------------------------------ state polytope

@dataclass(frozen=True)
class StatePolytope:
    degree: int
    dim: int
    vertices: tuple

    def mu(self, lam) -> Fraction:
        lam = _as_lambda(lam)
        return min(lam.weight(v) for v in self.vertices)

    def to_json(self) -> dict:
        return {"degree": self.degree, "dim": self.dim, "vertices": [list(v) for v in self.vertices]}


def state_polytope(Z: PointScheme, m: int) -> StatePolytope:
    """Vertices of State_m, found by 2D quickhull over a linear-optimization oracle."""
    dim = _piece(Z, m).dim
    cache: dict = {}

    def support(c, c2):
        k = (tuple(c), tuple(c2))
        if k not in cache:
            cache[k] = lex_min_basis(Z, m, [c, c2])
        return cache[k]

    A = support((1, 0, 0), (0, 1, 0))
    B = support((-1, 0, 0), (0, -1, 0))
    if A == B:
        return StatePolytope(m, dim, (A,))

    def expand(P, Q):
        di, dj = Q[0] - P[0], Q[1] - P[1]
        nrm = (dj, -di, 0)
        R = support(nrm, (di, dj, 0))
        if nrm[0] * R[0] + nrm[1] * R[1] < nrm[0] * P[0] + nrm[1] * P[1]:
            return expand(P, R) + [R] + expand(R, Q)
        return []

    verts = [A] + expand(A, B) + [B] + expand(B, A)
    return StatePolytope(m, dim, tuple(sorted(set(verts))))


# ------------------------------------------------------------ affine in m

def default_base_degree(Z: PointScheme) -> int:
    d = max(Z.length - 1, 1)
    while not (hilbert_point_defined(Z, d) and hilbert_point_defined(Z, d + 1)):
        d += 1
    return d


def mu(Z: PointScheme, m, lam, d: int | None = None) -> Fraction:
    """mu_m = (d + 1 - m) mu_d + (m - d) mu_{d+1}; slope when m is infinite."""
    d = default_base_degree(Z) if d is None else d
    m = parse_m(m)
    a, b = mu_integer(Z, d, lam), mu_integer(Z, d + 1, lam)
    if m is INF:
        return AsymptoticSlope(b - a)
    return (d + 1 - m) * a + (m - d) * b


def interpolate(m, d: int, mu_d, mu_d1):
    m = parse_m(m)
    if m is INF:
        return AsymptoticSlope(mu_d1 - mu_d)
    return (d + 1 - m) * mu_d + (m - d) * mu_d1


def m_zero_from(mu_d, mu_d1, d: int):
    mu_d, mu_d1 = to_q(mu_d), to_q(mu_d1)
    if mu_d == mu_d1:
        return INDETERMINATE if mu_d == 0 else INF
    return d + mu_d / (mu_d - mu_d1)


def m_zero(Z: PointScheme, lam, d: int):
    """The unique m with mu_m(Z, lambda) = 0."""
    return m_zero_from(mu_integer(Z, d, lam), mu_integer(Z, d + 1, lam), d)


# ------------------------------------------------------------ destabilizing

@dataclass
class Certificate:
    lam: OneParamSubgroup
    conjugation: tuple
    mu: Fraction
    base_degree: int
    m: object

    def replay(self, Z: PointScheme) -> Fraction:
        W = Z if self.conjugation == identity() else Z.transform(self.conjugation)
        return mu(W, self.m, self.lam, self.base_degree)

    def to_json(self) -> dict:
        return {
            "lambda": [str(w) for w in self.lam.weights],
            "conjugation": [[str(v) for v in row] for row in self.conjugation],
            "mu": str(self.mu),
            "base_degree": self.base_degree,
            "m": str(self.m),
        }


@dataclass
class DiagonalScan:
    max_mu: Fraction
    argmax: OneParamSubgroup
    certificate: Certificate | None
    m: object
    base_degree: int
    conjugation: tuple = field(default_factory=identity)

    @property
    def unstable(self) -> bool:
        return self.certificate is not None

    @property
    def boundary(self) -> bool:
        """max = 0: strictly semistable against the diagonal torus."""
        return self.max_mu == 0


PERMS = tuple(permutations(range(3)))
R_LO, R_HI = Fraction(-1, 2), Fraction(1)


def _affine_pieces(P: StatePolytope, perm) -> list:
    """mu_d(lambda_r^perm) as affine functions alpha + beta r, one per vertex."""
    out = []
    base = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(-1), Fraction(-1))]
    # lambda_r^perm has weight base[perm^-1(i)] at coordinate i
    inv = [perm.index(i) for i in range(3)]
    for v in P.vertices:
        alpha = sum(base[inv[i]][0] * v[i] for i in range(3))
        beta = sum(base[inv[i]][1] * v[i] for i in range(3))
        out.append((alpha, beta))
    return out


def _permuted_lambda(r, perm) -> OneParamSubgroup:
    w = (Fraction(1), r, -1 - r)
    inv = [perm.index(i) for i in range(3)]
    return OneParamSubgroup(*(w[inv[i]] for i in range(3)))


def _envelope_breaks(fs: list) -> set:
    """Breakpoints in (R_LO, R_HI) of r -> min(a + b r), walking the lower envelope."""
    r = R_LO
    a, b = min(fs, key=lambda f: (f[0] + f[1] * r, f[1]))
    out = set()
    while True:
        nxt = None
        for a2, b2 in fs:
            if b2 < b:
                t = (a2 - a) / (b - b2)
                if t > r and (nxt is None or t < nxt[0] or (t == nxt[0] and b2 < nxt[2])):
                    nxt = (t, a2, b2)
        if nxt is None or nxt[0] >= R_HI:
            return out
        r, a, b = nxt
        out.add(r)


def scan_polytopes(P_d: StatePolytope, P_d1: StatePolytope, m, d: int):
    """Exact maximum over r in [-1/2, 1] and all coordinate permutations."""
    m = parse_m(m)
    best = None
    for perm in PERMS:
        fa = _affine_pieces(P_d, perm)
        fb = _affine_pieces(P_d1, perm)
        cands = {R_LO, R_HI} | _envelope_breaks(fa) | _envelope_breaks(fb)
        for r in sorted(cands):
            mu_d = min(a + b * r for a, b in fa)
            mu_d1 = min(a + b * r for a, b in fb)
            val = interpolate(m, d, mu_d, mu_d1)
            if best is None or val > best[0]:
                best = (Fraction(val), _permuted_lambda(r, perm))
    return best


def destabilize_diagonal(Z: PointScheme, m, d: int | None = None, conjugation=None) -> DiagonalScan:
    """Maximize mu_m(Z, lambda) over all diagonal one-parameter subgroups."""
    d = default_base_degree(Z) if d is None else d
    m = parse_m(m)
    conj = identity() if conjugation is None else matrix(conjugation)
    W = Z if conj == identity() else Z.transform(conj)
    best, lam = scan_polytopes(state_polytope(W, d), state_polytope(W, d + 1), m, d)
    cert = Certificate(lam, conj, best, d, m) if best > 0 else None
    return DiagonalScan(best, lam, cert, m, d, conj)


def shear_matrix(s, which: str = "upper"):
    """x -> x, y -> s x + y (upper) or y -> y, z -> s y + z (lower) under f(A^T v)."""
    s = to_q(s)
    if which == "upper":
        return matrix([[1, s, 0], [0, 1, 0], [0, 0, 1]])
    if which == "lower":
        return matrix([[1, 0, 0], [0, 1, s], [0, 0, 1]])
    raise ValueError("which must be 'upper' or 'lower'")


def check_shear_tori(Z: PointScheme, m, samples: Sequence, which: str = "upper",
                     d: int | None = None) -> Certificate | None:
    for s in samples:
        scan = destabilize_diagonal(Z, m, d, conjugation=shear_matrix(s, which))
        if scan.certificate is not None:
            return scan.certificate
    return None


# ------------------------------------------------------------ Chow and curves

@dataclass
class ChowResult:
    status: str  # stable | strictly-semistable | unstable
    witness: dict | None = None


def chow_stability(c: Cycle) -> ChowResult:
    """Lines must carry < 2n/3 and points < n/3 (<= for semistability)."""
    n = c.total
    pts = [(normalize_point(p), k) for p, k in c.points]
    merged: dict = {}
    for p, k in pts:
        merged[p] = merged.get(p, 0) + k
    items = list(merged.items())
    worst = None  # (excess, kind, data)

    def consider(amount, bound, kind, data):
        nonlocal worst
        excess = Fraction(amount) - bound
        if worst is None or excess > worst[0]:
            worst = (excess, kind, data, amount)

    for p, k in items:
        consider(k, Fraction(n, 3), "point", {"point": [str(v) for v in p]})
    seen = set()
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            ell = line_through(items[i][0], items[j][0])
            key = normalize_point([ell.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
            if key in seen:
                continue
            seen.add(key)
            load = sum(k for p, k in items if ell.evaluate(p) == 0)
            consider(load, Fraction(2 * n, 3), "line", {"line": str(ell)})
    if worst is None or worst[0] < 0:
        return ChowResult("stable", None)
    wit = {"kind": worst[1], "load": worst[3], **worst[2]}
    return ChowResult("unstable" if worst[0] > 0 else "strictly-semistable", wit)


def multiplicity_at(f: Poly, P: Sequence) -> int:
    """Order of vanishing of f at the point P."""
    P = normalize_point(P)
    k = next(i for i in range(3) if P[i] != 0)
    others = [i for i in range(3) if i != k]
    # columns: e_a, e_b, P  so that M (0,0,1) = P
    M = [[Fraction(0)] * 3 for _ in range(3)]
    M[others[0]][0] = Fraction(1)
    M[others[1]][1] = Fraction(1)
    for i in range(3):
        M[i][2] = P[i]
    A = tuple(tuple(M[j][i] for j in range(3)) for i in range(3))  # A = M^T
    g = substitute(f, A)
    if g.is_zero():
        raise ValueError("zero polynomial")
    return min(e[0] + e[1] for e in g.terms)


def curve_criterion(Z: PointScheme, m: int, basis: Sequence[Poly] | None = None,
                    points: Sequence | None = None) -> dict | None:
    """A point where prod f_i has multiplicity > 2 m r / 3, if any."""
    if basis is None:
        basis = Z.ideal.basis_polys(m)
    r = len(basis)
    if points is None:
        points = [h.point for h in Z.support]
    bound = Fraction(2 * m * r, 3)
    for P in points:
        mult = sum(multiplicity_at(f, P) for f in basis)
        if mult > bound:
            return {"point": tuple(P), "multiplicity": mult, "bound": bound}
    return None
