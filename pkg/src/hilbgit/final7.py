"""The n = 7 final model P(H^0(Omega(4))) = P^14: basis, action, weights and loci."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Poly, X, Y, Z, det3, diag, matrix, monomial_index, num_monomials, row_reduce, substitute, to_q
from .exact import SingularMatrixError
from .ideals import (
    DegenerateParameters, HomogeneousIdeal, NotZeroDimensional, PointScheme, intersect_all,
    saturate, scheme_line_length,
)

CHECK_DEGREE = 10
LENGTH = 7


class EulerViolation(ValueError):
    pass


@dataclass(frozen=True)
class Section:
    f: Poly
    g: Poly
    h: Poly

    def __iter__(self):
        return iter((self.f, self.g, self.h))

    def euler(self) -> Poly:
        return X * self.f + Y * self.g + Z * self.h

    def validate(self) -> "Section":
        if not self.euler().is_zero():
            raise EulerViolation(f"x f + y g + z h = {self.euler()}")
        return self

    def __add__(self, other: "Section") -> "Section":
        return Section(self.f + other.f, self.g + other.g, self.h + other.h)

    def scale(self, c) -> "Section":
        c = to_q(c)
        return Section(self.f * c, self.g * c, self.h * c)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self)

    def __str__(self):
        return f"({self.f}, {self.g}, {self.h})"


_O = Poly(3)


def basis() -> list:
    x, y, z = X, Y, Z
    triples = [
        (x**2 * y, -x**3, _O), (x * y**2, -x**2 * y, _O), (y**3, -x * y**2, _O), (x**2 * z, _O, -x**3),
        (x * z**2, _O, -x**2 * z), (z**3, _O, -x * z**2), (x * y * z, -x**2 * z, _O), (x * y * z, _O, -x**2 * y),
        (y**2 * z, -x * y * z, _O), (y**2 * z, _O, -x * y**2), (y * z**2, -x * z**2, _O), (y * z**2, _O, -x * y * z),
        (_O, y**2 * z, -y**3), (_O, y * z**2, -y**2 * z), (_O, z**3, -y * z**2),
    ]
    return [Section(*t).validate() for t in triples]


BASIS = basis()


def weights(r) -> list:
    r = to_q(r)
    return [r + 3, 2 * r + 2, 3 * r + 1, -r + 2, -2 * r, -3 * r - 2, Fraction(1), Fraction(1), r, r,
            -r - 1, -r - 1, 2 * r - 1, Fraction(-2), -2 * r - 3]


weight_table = weights


def act(A, s: Section) -> Section:
    """A . (f, g, h) = A (A.f, A.g, A.h)^T with (A.f)(v) = f(A^T v)."""
    A = matrix(A)
    if det3(A) == 0:
        raise SingularMatrixError("matrix is singular")
    sub = [substitute(p, A) for p in s]
    out = []
    for i in range(3):
        acc = Poly(3)
        for j in range(3):
            if A[i][j]:
                acc = acc + sub[j] * A[i][j]
        out.append(acc)
    return Section(*out).validate()


def section(coords: Sequence) -> Section:
    coords = [to_q(c) for c in coords]
    if len(coords) != 15:
        raise ValueError("need 15 coordinates")
    out = Section(Poly(3), Poly(3), Poly(3))
    for c, e in zip(coords, BASIS):
        if c:
            out = out + e.scale(c)
    return out


def _flat(s: Section) -> list:
    idx = monomial_index(3)
    N = num_monomials(3)
    v = [Fraction(0)] * (3 * N)
    for k, p in enumerate(s):
        for e, c in p.terms.items():
            v[k * N + idx[e]] = c
    return v


def coordinates(s: Section) -> list:
    """Coefficients (a_0, ..., a_14) of a section in the basis."""
    s.validate()
    cols = [_flat(e) for e in BASIS]
    target = _flat(s)
    rows = [[cols[j][i] for j in range(15)] + [target[i]] for i in range(len(target))]
    R = row_reduce(rows, 16)
    if 15 in R.pivots:
        raise EulerViolation("section is not in the span of the basis")
    out = [Fraction(0)] * 15
    for row, p in zip(R.rows, R.pivots):
        out[p] = row.get(15, Fraction(0))
    return out


def proportional(u: Sequence, v: Sequence) -> bool:
    u = [to_q(a) for a in u]
    v = [to_q(a) for a in v]
    k = next((i for i, a in enumerate(u) if a), None)
    if k is None or not v[k]:
        return False
    c = v[k] / u[k]
    return all(b == c * a for a, b in zip(u, v))


# ------------------------------------------------------------ numerical criterion

R_LO, R_HI = Fraction(-1, 2), Fraction(1)


def _affine(i: int) -> tuple:
    w0, w1 = weights(0)[i], weights(1)[i]
    return w0, w1 - w0  # weight = alpha + beta r


def mu14(coords: Sequence, r=None):
    """min weight over the support; with r None, the max over r in [-1/2, 1] and its argmax."""
    supp = [i for i, a in enumerate(coords) if to_q(a) != 0]
    if not supp:
        raise ValueError("zero vector")
    if r is not None:
        w = weights(r)
        return min(w[i] for i in supp)
    lines = [_affine(i) for i in supp]
    cands = {R_LO, R_HI}
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            (a1, b1), (a2, b2) = lines[i], lines[j]
            if b1 != b2:
                x = (a2 - a1) / (b1 - b2)
                if R_LO <= x <= R_HI:
                    cands.add(x)
    best = max(cands, key=lambda t: (min(a + b * t for a, b in lines), -t))
    return min(a + b * best for a, b in lines), best


def unstable_pattern(coords: Sequence) -> str:
    """Support test for instability in the given coordinates."""
    a = [to_q(c) for c in coords]
    if any(a[i] for i in (5, 10, 11, 13, 14)):
        return "inconclusive"
    if (a[8] == a[9] == a[12] == 0) or a[4] == 0:
        return "unstable"
    if a[12] == 0:
        return "non-stable"
    return "inconclusive"


# ------------------------------------------------------------ ideals

@dataclass
class NonIdealFlag:
    generators: list
    reason: str

    @property
    def ideal(self) -> HomogeneousIdeal:
        return HomogeneousIdeal(self.generators)

    def matches(self, other: HomogeneousIdeal, lo: int = 3, hi: int = CHECK_DEGREE) -> bool:
        mine = self.ideal
        return all(mine.graded_piece(m) == other.graded_piece(m) for m in range(lo, hi + 1))


def ideal_of_section(s: Section, cap: int = 14):
    """PointScheme of length 7 cut out by (f, g, h), or NonIdealFlag."""
    s.validate()
    gens = [p for p in s if not p.is_zero()]
    if not gens:
        raise ValueError("zero section")
    I = HomogeneousIdeal(gens)
    try:
        c = I.colength(cap=cap)
    except NotZeroDimensional as exc:
        return NonIdealFlag(gens, f"positive-dimensional: {exc}")
    if c != LENGTH:
        return NonIdealFlag(gens, f"colength {c}")
    sat = saturate(I, LENGTH, cap=CHECK_DEGREE)
    return PointScheme(HomogeneousIdeal(sat.generators), LENGTH, [], "section ideal")


def same_graded(I: HomogeneousIdeal, J: HomogeneousIdeal, top: int = CHECK_DEGREE) -> bool:
    return all(I.graded_piece(m) == J.graded_piece(m) for m in range(0, top + 1))


def _intersection(ideals: Sequence[HomogeneousIdeal]) -> HomogeneousIdeal:
    return intersect_all(list(ideals), CHECK_DEGREE)


def _ideal(*gens) -> HomogeneousIdeal:
    return HomogeneousIdeal(list(gens))


@dataclass
class FamilyMember:
    which: str
    params: tuple
    coords: list
    components: dict
    ideal: HomogeneousIdeal
    section_ideal: object
    agrees: bool

    def to_json(self) -> dict:
        return {"family": self.which, "params": [str(p) for p in self.params],
                "coords": [str(c) for c in self.coords],
                "components": {k: [str(g) for g in v.generators] for k, v in self.components.items()},
                "agrees_up_to_degree_10": self.agrees}


def _member(which, params, coords, comps: dict) -> FamilyMember:
    I = _intersection(list(comps.values()))
    J = ideal_of_section(section(coords))
    if isinstance(J, NonIdealFlag):
        raise DegenerateParameters(f"{which}{params}: section is not an ideal ({J.reason})")
    return FamilyMember(which, params, coords, comps, I, J, same_graded(J.ideal, I))


def family_x1(u) -> FamilyMember:
    u = to_q(u)
    coords = [u, 0, 1, 0, 1, 0, 1] + [0] * 8
    comps = {"J": _ideal(X**2, X * Y**2, Y**3 + X * Y * Z + X * Z**2), "K": _ideal(Z, u * X**2 + Y**2)}
    return _member("x1", (u,), coords, comps)


def family_x2(t, u) -> FamilyMember:
    t, u = to_q(t), to_q(u)
    if t == 0 or u == 0 or t + u == 0:
        raise DegenerateParameters("need t, u and t + u nonzero")
    coords = [0, 0, 1, 1, 0, 0, 0, 1, t, u] + [0] * 5
    c = t + u
    comps = {"J": _ideal(X * Y, X**2 + c * Y**2), "K": _ideal(X, Y + c * Z),
             "L": _ideal(Y + t * Z, X**2 + X * Y + u * Y**2)}
    return _member("x2", (t, u), coords, comps)


def family_x3(u, v, w) -> FamilyMember:
    u, v, w = to_q(u), to_q(v), to_q(w)
    if v + w == 0:
        raise DegenerateParameters("need v + w nonzero")
    coords = [1, 0, 1, 1, u, 0, 0, 0, v, w] + [0] * 5
    comps = {"J": _ideal(X * Y, X**2, u * X * Z + (v + w) * Y**2), "K": _ideal(X, Y + (v + w) * Z),
             "L": _ideal(X**2 + Y**2 + v * Y * Z, X**2 + u * X * Z + w * Y**2,
                         (1 - w) * X * Y + v * X * Z + u * Y * Z + u * v * Z**2)}
    return _member("x3", (u, v, w), coords, comps)


def triple_point_line_length(member: FamilyMember) -> int:
    """Length of the intersection of the J-component with the line x = 0."""
    J = member.components["J"]
    return scheme_line_length(PointScheme(J, J.colength(), [], "J"), X)


# ------------------------------------------------------------ minimal orbits

INF_W = "inf"


def s_coords(w) -> list:
    out = [Fraction(0)] * 15
    out[4] = Fraction(1)
    if w == INF_W:
        out[9] = Fraction(1)
    else:
        out[8] = Fraction(1)
        out[9] = to_q(w)
    return out


def printed_decomposition(w) -> HomogeneousIdeal:
    if w == INF_W:
        return _intersection([_ideal(Y**2 + X * Z), _ideal(X, Z)])
    w = to_q(w)
    J = _ideal(X * Y, X**2, (w + 1) * Y**2 + X * Z)
    if w == 0:
        return _intersection([_ideal(Z), J])
    K = _ideal(Y * Z, Z**2, w * Y**2 + X * Z)
    if w == -1:
        return _intersection([_ideal(X), K])
    return _intersection([J, K, _ideal(X, Z)])


@dataclass
class OrbitReport:
    w: object
    coords: list
    ideal: object
    matches_printed: bool
    max_mu: Fraction

    def to_json(self) -> dict:
        return {"w": str(self.w), "coords": [str(c) for c in self.coords],
                "ideal": "non-ideal" if isinstance(self.ideal, NonIdealFlag) else
                [str(g) for g in self.ideal.ideal.generators],
                "matches_printed_decomposition": self.matches_printed, "max_mu": str(self.max_mu)}


def minimal_orbit(w) -> OrbitReport:
    coords = s_coords(w)
    res = ideal_of_section(section(coords))
    ref = printed_decomposition(w)
    if isinstance(res, NonIdealFlag):
        ok = res.matches(ref)
    else:
        ok = same_graded(res.ideal, ref)
    return OrbitReport(w, coords, res, ok, mu14(coords)[0])


T_MATRIX = matrix([[0, 0, 1], [0, -1, 0], [-1, 0, 0]])
S_MATRIX = matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def lambda0(t):
    t = to_q(t)
    return diag(t, 1, 1 / t)


def lambda_r_at(r, u) -> tuple:
    """lambda_r(u^q) for r = p/q: integral exponents (q, p, -p-q)."""
    r, u = to_q(r), to_q(u)
    p, q = r.numerator, r.denominator
    return diag(u ** q, u ** p, u ** (-p - q)), q


def orbit_target(A, w):
    """w' with A.[s_w] = [s_{w'}], or None."""
    img = coordinates(act(A, section(s_coords(w))))
    if any(img[i] for i in range(15) if i not in (4, 8, 9)) or not img[4]:
        return None
    if img[8] == 0:
        return INF_W
    return img[9] / img[8] if proportional(s_coords(img[9] / img[8]), img) else None


def stabilizer_check(w, A, expected) -> bool:
    return orbit_target(A, w) == (expected if expected == INF_W else to_q(expected))
