"""Homogeneous ideals in Q[x, y, z] evaluated degree by degree."""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from .exact import (
    Poly, Subspace, X, Y, Z, Echelon, inverse3, matrix, monomial_index,
    monomials, num_monomials, parse_polynomial, substitute, to_q, transpose,
)


class NotZeroDimensional(ValueError):
    pass


class DegenerateParameters(ValueError):
    pass


class HintsMissing(ValueError):
    pass


def shift(f: Poly, mono: tuple) -> dict:
    """Coefficient vector of ``f * x^mono`` in degree ``f.degree + |mono|``."""
    idx = monomial_index(f.degree + sum(mono))
    a, b, c = mono
    return {idx[(i + a, j + b, k + c)]: v for (i, j, k), v in f.terms.items()}


def eval_vector(point: Sequence, m: int) -> dict:
    """The functional f -> f(point) on degree-m forms."""
    p = [to_q(v) for v in point]
    powers = [[Fraction(1)] for _ in range(3)]
    for i in range(3):
        for _ in range(m):
            powers[i].append(powers[i][-1] * p[i])
    out = {}
    for k, (a, b, c) in enumerate(monomials(m)):
        v = powers[0][a] * powers[1][b] * powers[2][c]
        if v:
            out[k] = v
    return out


class HomogeneousIdeal:
    """Ideal given by generators, or by an exact rule for its graded pieces.

    When ``piece_fn`` is supplied, graded pieces come from it and the
    generator list is recovered lazily up to ``gen_bound``.
    """

    def __init__(self, generators: Iterable = (), *, piece_fn: Callable | None = None,
                 gen_bound: int | None = None):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = parse_polynomial(g)
            if not g.is_zero():
                gens.append(g)
        self._gens = tuple(gens) if piece_fn is None else None
        self._piece_fn = piece_fn
        self._gen_bound = gen_bound
        self._pieces: dict[int, Subspace] = {}
        self._lock = threading.Lock()

    # generators --------------------------------------------------------
    @property
    def generators(self) -> tuple:
        if self._gens is None:
            bound = self._gen_bound
            if bound is None:
                raise ValueError("ideal defined by graded pieces needs a generator bound")
            self._gens = tuple(minimal_generators(self, bound))
        return self._gens

    def max_generator_degree(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    # graded pieces -----------------------------------------------------
    def _compute_piece(self, m: int) -> Subspace:
        if self._piece_fn is not None:
            return self._piece_fn(m)
        N = num_monomials(m)
        ech = Echelon(N)
        for g in self._gens:
            k = m - g.degree
            if k < 0:
                continue
            for mono in monomials(k):
                if ech.rank == N:
                    break
                ech.add(shift(g, mono))
        return Subspace(N, _ech=ech)

    def graded_piece(self, m: int) -> Subspace:
        if m < 0:
            raise ValueError("degree must be non-negative")
        piece = self._pieces.get(m)
        if piece is None:
            with self._lock:
                piece = self._pieces.get(m)
                if piece is None:
                    piece = self._compute_piece(m)
                    self._pieces[m] = piece
        return piece

    def dim(self, m: int) -> int:
        return self.graded_piece(m).dim

    def hilbert_function(self, m: int) -> int:
        """Colength C(m+2, 2) - dim I_m."""
        return num_monomials(m) - self.dim(m)

    def colength(self, start: int | None = None, cap: int = 40) -> int:
        """Stabilized colength over a window of three consecutive degrees."""
        m = start if start is not None else 0
        if self._gens is not None:
            m = max(m, self.max_generator_degree())
        vals = [self.hilbert_function(m + i) for i in range(3)]
        while True:
            if vals[0] == vals[1] == vals[2]:
                return vals[0]
            m += 1
            if m + 2 > cap:
                raise NotZeroDimensional(f"Hilbert function does not stabilize by degree {cap}")
            vals = vals[1:] + [self.hilbert_function(m + 2)]

    def contains(self, f: Poly) -> bool:
        return self.graded_piece(f.degree).contains(f.to_vector())

    def basis_polys(self, m: int) -> list:
        return [Poly.from_vector(m, r) for r in self.graded_piece(m).basis()]

    def transform(self, A) -> "HomogeneousIdeal":
        return HomogeneousIdeal([substitute(g, A) for g in self.generators])

    def equal_up_to(self, other: "HomogeneousIdeal", d: int) -> bool:
        return all(self.graded_piece(m) == other.graded_piece(m) for m in range(d + 1))

    def __repr__(self):
        if self._gens is None:
            return "HomogeneousIdeal(<graded>)"
        return "HomogeneousIdeal(" + ", ".join(str(g) for g in self._gens) + ")"


def minimal_generators(I: HomogeneousIdeal, bound: int) -> list:
    """Polynomials generating I in every degree up to ``bound``."""
    gens = []
    prev: Subspace | None = None
    for m in range(bound + 1):
        piece = I.graded_piece(m)
        N = num_monomials(m)
        ech = Echelon(N)
        if prev is not None:
            for r in prev.basis():
                f = Poly.from_vector(m - 1, r)
                for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    ech.add(shift(f, v))
                    if ech.rank == piece.dim:
                        break
                if ech.rank == piece.dim:
                    break
        for r in piece.basis():
            if ech.rank == piece.dim:
                break
            if ech.add(r):
                gens.append(Poly.from_vector(m, r))
        prev = piece
    return gens


def graded(piece_fn: Callable, gen_bound: int) -> HomogeneousIdeal:
    return HomogeneousIdeal(piece_fn=piece_fn, gen_bound=gen_bound)


def graded_piece(I: HomogeneousIdeal, m: int) -> Subspace:
    return I.graded_piece(m)


def hilbert_function(I: HomogeneousIdeal, m: int) -> int:
    return I.hilbert_function(m)


def colength(I: HomogeneousIdeal) -> int:
    return I.colength()


def intersect(I: HomogeneousIdeal, J: HomogeneousIdeal, up_to: int) -> HomogeneousIdeal:
    """Degree-wise intersection; generators are recovered up to ``up_to``."""
    return graded(lambda m: I.graded_piece(m).intersect(J.graded_piece(m)), up_to)


def intersect_all(ideals: Sequence[HomogeneousIdeal], up_to: int) -> HomogeneousIdeal:
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J, up_to)
    return out


def ideal_of_points(points: Sequence[Sequence], gen_bound: int | None = None) -> HomogeneousIdeal:
    """Vanishing ideal of distinct reduced points."""
    pts = [tuple(to_q(v) for v in p) for p in points]
    n = len(pts)
    bound = gen_bound if gen_bound is not None else max(n, 1)
    return graded(lambda m: Subspace.from_annihilator(num_monomials(m), [eval_vector(p, m) for p in pts]),
                  bound)


def _colon_piece(I: HomogeneousIdeal, g: Poly, m: int) -> Subspace:
    """{f in S_m : f * g in I_{m + deg g}}."""
    d = m + g.degree
    ann = I.graded_piece(d).annihilator().basis()
    rows = []
    for phi in ann:
        row = {}
        for k, e in enumerate(monomials(m)):
            v = sum((phi.get(j, 0) * c for j, c in shift(g, e).items()), Fraction(0))
            if v:
                row[k] = v
        if row:
            rows.append(row)
    return Subspace.from_annihilator(num_monomials(m), rows)


def residual(I: HomogeneousIdeal, ell: Poly, bound: int | None = None) -> HomogeneousIdeal:
    """Colon ideal I : ell, degree-wise."""
    if ell.degree != 1 or ell.is_zero():
        raise ValueError("residual expects a nonzero linear form")
    b = bound if bound is not None else I.max_generator_degree() + 2
    return graded(lambda m: _colon_piece(I, ell, m), b)


def saturate(I: HomogeneousIdeal, expected_length: int, cap: int | None = None) -> HomogeneousIdeal:
    """Saturation with respect to (x, y, z) of an ideal of colength n at large degree."""
    n = expected_length
    if cap is None:
        cap = n + 3
        if I._gens is not None:
            cap = max(cap, I.max_generator_degree() + 3)
    d0 = max(n - 1, 0)
    d = None
    for cand in range(d0, cap + 1):
        if all(I.hilbert_function(cand + i) == n for i in range(3)):
            d = cand
            break
    if d is None:
        raise NotZeroDimensional(f"colength does not settle at {n} by degree {cap + 2}")
    top = I.graded_piece(d).annihilator().basis()

    def piece(m: int) -> Subspace:
        if m >= d:
            P = I.graded_piece(m)
            if num_monomials(m) - P.dim != n:
                raise NotZeroDimensional(f"colength at degree {m} differs from {n}")
            return P
        rows = []
        for mu in monomials(d - m):
            for phi in top:
                row = {}
                for k, e in enumerate(monomials(m)):
                    v = phi.get(monomial_index(d)[(e[0] + mu[0], e[1] + mu[1], e[2] + mu[2])])
                    if v:
                        row[k] = v
                if row:
                    rows.append(row)
        return Subspace.from_annihilator(num_monomials(m), rows)

    return graded(piece, d + 1)


def contained_in_conic(I: HomogeneousIdeal) -> bool:
    return I.dim(2) >= 1


def power_of_maximal(k: int, vars_: Sequence[Poly]) -> list:
    """All degree-k products of the given linear forms."""
    out = [Poly(0, {(0, 0, 0): 1})]
    for _ in range(k):
        nxt = {}
        for f in out:
            for v in vars_:
                g = f * v
                nxt[frozenset(g.terms.items())] = g
        out = list(nxt.values())
    return out


# ----------------------------------------------------------- point schemes

@dataclass(frozen=True)
class SupportHint:
    point: tuple
    mult: int = 1
    tangent: Poly | None = None


@dataclass
class PointScheme:
    """A saturated zero-dimensional ideal of known length with support hints."""

    ideal: HomogeneousIdeal
    length: int
    support: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.support = [h if isinstance(h, SupportHint) else SupportHint(*h) for h in self.support]

    def validate(self) -> "PointScheme":
        c = self.ideal.colength(start=max(self.length - 1, 0))
        if c != self.length:
            raise DegenerateParameters(f"colength {c} differs from declared length {self.length}")
        return self

    def transform(self, A) -> "PointScheme":
        """Image under A, with ideal A.I and points moved by (A^T)^{-1}."""
        A = matrix(A)
        M = transpose(inverse3(A))
        hints = []
        for h in self.support:
            p = tuple(sum(M[i][j] * h.point[j] for j in range(3)) for i in range(3))
            t = substitute(h.tangent, A) if h.tangent is not None else None
            hints.append(SupportHint(normalize_point(p), h.mult, t))
        return PointScheme(self.ideal.transform(A), self.length, hints, self.name)

    @property
    def has_hints(self) -> bool:
        return bool(self.support) and sum(h.mult for h in self.support) == self.length

    def is_reduced(self) -> bool:
        if not self.has_hints:
            raise HintsMissing("reducedness needs support hints")
        return all(h.mult == 1 for h in self.support)

    def cycle(self) -> "Cycle":
        if not self.has_hints:
            raise HintsMissing("the cycle needs support hints")
        return Cycle([(h.point, h.mult) for h in self.support])


@dataclass
class Cycle:
    points: list  # (point, multiplicity)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.points)


def normalize_point(p: Sequence) -> tuple:
    p = [to_q(v) for v in p]
    for v in p:
        if v:
            return tuple(c / v for c in p)
    raise ValueError("the zero vector is not a projective point")


def line_through(p: Sequence, q: Sequence) -> Poly:
    a = (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])
    if not any(a):
        raise ValueError("points coincide")
    return Poly.linear(*a)


def scheme_line_length(Z: PointScheme, ell: Poly) -> int:
    """Length of the intersection of Z with the line ell = 0."""
    R = residual(Z.ideal, ell)
    top = Z.length + 1
    return Z.length - R.hilbert_function(top)


def candidate_lines(Z: PointScheme) -> list:
    pts = [h.point for h in Z.support]
    lines = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            ell = line_through(pts[i], pts[j])
            lines[_line_key(ell)] = ell
    for h in Z.support:
        if h.tangent is not None:
            lines[_line_key(h.tangent)] = h.tangent
        if h.mult > 1 and h.tangent is None:
            for ell in _lines_through(h.point):
                lines[_line_key(ell)] = ell
    return list(lines.values())


def _lines_through(p) -> list:
    out = []
    for q in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)):
        try:
            out.append(line_through(p, q))
        except ValueError:
            pass
    return out


def _line_key(ell: Poly) -> tuple:
    v = [ell.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    return normalize_point(v)


@dataclass
class CollinearProfile:
    length: int
    line: Poly | None
    exact: bool
    warning: str = ""


def collinear_profile(Z: PointScheme, lines: Sequence[Poly] | None = None) -> CollinearProfile:
    """Largest length of Z on a candidate line."""
    exact = True
    warning = ""
    if lines is None:
        if not Z.support:
            raise HintsMissing("no candidate lines and no support hints")
        lines = candidate_lines(Z)
        if not Z.has_hints:
            exact = False
            warning = "support hints incomplete: result is a lower bound"
    if not lines:
        raise ValueError("candidate_lines must be nonempty")
    best, best_line = -1, None
    for ell in lines:
        k = scheme_line_length(Z, ell)
        if k > best:
            best, best_line = k, ell
    return CollinearProfile(best, best_line, exact, warning)


# ------------------------------------------------------------ constructors

def random_rational(rng: random.Random, size: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-size, size), rng.randint(1, 4))
        if v or not nonzero:
            return v


def reduced_points(points: Sequence[Sequence], name: str = "reduced points") -> PointScheme:
    pts = [normalize_point(p) for p in points]
    if len(set(pts)) != len(pts):
        raise DegenerateParameters("points must be distinct")
    return PointScheme(ideal_of_points(pts), len(pts), [SupportHint(p, 1) for p in pts], name)


def collinear_points(line: Poly, form: Poly, points: Sequence[Sequence] | None = None,
                     name: str = "collinear points") -> PointScheme:
    """Subscheme cut out by a line and a form of degree l (length l)."""
    I = HomogeneousIdeal([line, form])
    hints = []
    if points is not None:
        for p in points:
            if line.evaluate(p) or form.evaluate(p):
                raise DegenerateParameters(f"{p} is not on the scheme")
            hints.append(SupportHint(normalize_point(p), 1))
    return PointScheme(I, form.degree, hints, name).validate()


def points_on_line_form(line_var: str, roots: Sequence) -> tuple:
    """Points on a coordinate line and the binary form vanishing on them.

    For line x=0 a root r stands for (0 : r : 1) and ``"inf"`` for (0 : 1 : 0);
    the other lines use the analogous cyclic convention.
    """
    order = {"x": (1, 2), "y": (0, 2), "z": (0, 1)}[line_var]
    u, v = [(X, Y, Z)[i] for i in order]
    form = None
    pts = []
    for r in roots:
        p = [Fraction(0)] * 3
        if r == "inf":
            fac = v
            p[order[0]] = Fraction(1)
        else:
            r = to_q(r)
            fac = u - v * r
            p[order[0]], p[order[1]] = r, Fraction(1)
        form = fac if form is None else form * fac
        pts.append(tuple(p))
    return form, pts


def curvilinear_fat_point(length: int, q: Sequence[Poly] | None = None) -> PointScheme:
    """Curvilinear point of given length at (0:0:1): ((x,y)^k + (p)), saturated.

    ``p = z^{k-2} q_1 + ... + q_{k-1}`` with forms q_i in x, y of degree i and
    q_1 != 0; the default is p = z^{k-2} x + y^{k-1}.
    """
    k = length
    if k == 1:
        return PointScheme(HomogeneousIdeal([X, Y]), 1, [SupportHint((0, 0, 1), 1)], "point")
    if q is None:
        q = [X] + [Poly(i) for i in range(2, k - 1)] + ([Y ** (k - 1)] if k > 2 else [])
    if q[0].is_zero():
        raise DegenerateParameters("q_1 must be nonzero")
    p = Poly(k - 1)
    for i, qi in enumerate(q, start=1):
        p = p + qi * Z ** (k - 1 - i)
    gens = power_of_maximal(k, [X, Y]) + [p]
    I = saturate(HomogeneousIdeal(gens), k)
    I = HomogeneousIdeal(I.generators)
    return PointScheme(I, k, [SupportHint((Fraction(0), Fraction(0), Fraction(1)), k, q[0])],
                       "curvilinear point").validate()


def union(schemes: Sequence[PointScheme], name: str = "") -> PointScheme:
    """Disjoint union (ideal intersection), generators recovered up to n + 1."""
    n = sum(s.length for s in schemes)
    I = intersect_all([s.ideal for s in schemes], n + 1)
    hints = [h for s in schemes for h in s.support]
    I = HomogeneousIdeal(I.generators)
    return PointScheme(I, n, hints, name)


def from_generators(gens: Sequence, n: int, support=(), name: str = "") -> PointScheme:
    I = HomogeneousIdeal(gens)
    return PointScheme(I, n, list(support), name).validate()


def parse_ideal_file(text: str) -> PointScheme:
    """Read the line-oriented ideal format (``n = <int>``, generators, hints)."""
    from .exact import ParseError
    n = None
    gens = []
    hints = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("support:"):
                hints.append(_parse_hint(body[len("support:"):].strip()))
            continue
        if line.replace(" ", "").startswith("n="):
            try:
                n = int(line.split("=", 1)[1])
            except ValueError as exc:
                raise ParseError(f"bad header {line!r}") from exc
            continue
        gens.append(parse_polynomial(line))
    if n is None:
        raise ParseError("missing 'n = <int>' header")
    if not gens:
        raise ParseError("no generators")
    return PointScheme(HomogeneousIdeal(gens), n, hints, "file").validate()


def _parse_hint(body: str) -> SupportHint:
    from .exact import ParseError
    try:
        pt_txt, rest = body.split(")", 1)
        coords = tuple(Fraction(c.strip()) for c in pt_txt.strip().lstrip("(").split(":"))
        rest = rest.strip()
        tangent = None
        if "tangent:" in rest:
            rest, tan = rest.split("tangent:", 1)
            tangent = parse_polynomial(tan.strip())
        rest = rest.strip()
        mult = int(rest.lstrip("x").strip()) if rest else 1
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad support hint {body!r}") from exc
    return SupportHint(normalize_point(coords), mult, tangent)


def format_ideal_file(Z: PointScheme) -> str:
    lines = [f"n = {Z.length}"]
    lines += [str(g) for g in Z.ideal.generators]
    for h in Z.support:
        pt = ":".join(str(c) for c in h.point)
        s = f"# support: ({pt}) x {h.mult}"
        if h.tangent is not None:
            s += f" tangent: {h.tangent}"
        lines.append(s)
    return "\n".join(lines) + "\n"


def generic_points(count: int, rng: random.Random, avoid_lines: bool = True) -> list:
    """Seeded points (1 : p : q) with no three collinear and no two equal."""
    pts: list = []
    while len(pts) < count:
        p = (Fraction(1), random_rational(rng), random_rational(rng))
        if p in pts:
            continue
        if avoid_lines and any(
                line_through(a, b).evaluate(p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
            continue
        pts.append(p)
    return pts


def binomial(a: int, b: int) -> int:
    return comb(a, b) if a >= 0 and 0 <= b <= a else 0
