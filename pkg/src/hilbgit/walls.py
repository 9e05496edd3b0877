"""Closed-form GIT walls, their witness ideals, verification, and n = 5 verdicts."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Poly, X, Y, Z, inverse3, matrix, transpose, to_q
from .git import (
    INF, Certificate, HilbertPointUndefined, OneParamSubgroup, destabilize_diagonal, mu, shear_matrix,
)
from .ideals import (
    HintsMissing, HomogeneousIdeal, PointScheme, SupportHint, _colon_piece, collinear_profile,
    curvilinear_fat_point, from_generators, generic_points, line_through, normalize_point,
    power_of_maximal, random_rational, reduced_points, union,
)


class DomainError(ValueError):
    pass


class DivisibleByThree(ValueError):
    pass


class VerificationFailed(AssertionError):
    pass


class WrongLength(ValueError):
    pass


def triangular(s: int) -> int:
    return s * (s + 1) // 2


def triangular_root(k: int) -> int | None:
    s = 0
    while triangular(s) < k:
        s += 1
    return s if triangular(s) == k else None


# ------------------------------------------------------------ closed forms

def m_curvilinear(n: int, l: int) -> Fraction:
    if not (2 * l >= n and 3 * l < 2 * n):
        raise DomainError(f"need n/2 <= l < 2n/3, got n={n}, l={l}")
    return Fraction(3 * (n - l) * (n - l - 1), 2 * (2 * n - 3 * l))


def m_collinear(n: int, l: int, s: int) -> Fraction:
    if s < 1 or n - l != triangular(s) or not (s * s <= l < 2 * triangular(s)):
        raise DomainError(f"need n - l = Delta(s) and s^2 <= l < 2 Delta(s), got {(n, l, s)}")
    return Fraction(s * (s + 1) * (s - 1), s * s + s - l)


def m_conic(n: int) -> Fraction:
    if n < 1:
        raise DomainError("n must be positive")
    return Fraction(n - 1, 2)


@dataclass(frozen=True)
class LargestWall:
    n: int
    l: int
    m: Fraction
    interior: bool  # strictly inside the ample cone spanned by D_{n-1} and H


def largest_git_wall(n: int) -> LargestWall:
    if n % 3 == 0:
        raise DivisibleByThree(f"n = {n} is divisible by three")
    if n < 2:
        raise DomainError("n must be at least 2")
    l = (2 * n) // 3
    m = m_curvilinear(n, l)
    return LargestWall(n, l, m, m > n - 1)


# ------------------------------------------------------------ records

LAMBDA_1 = OneParamSubgroup(1, 1, -2)
LAMBDA_0 = OneParamSubgroup(1, 0, -1)
LAMBDA_HALF = OneParamSubgroup(1, Fraction(-1, 2), Fraction(-1, 2))


@dataclass(frozen=True)
class WallRecord:
    name: str  # curvilinear | collinear | conic | largest
    n: int
    m_star: Fraction
    destabilizer: OneParamSubgroup
    base_degree: int
    positive_side: str  # side of m_star where the destabilizer has mu > 0
    l: int | None = None
    s: int | None = None
    case: str = "i"

    def to_json(self) -> dict:
        return {"name": self.name, "n": self.n, "l": self.l, "s": self.s, "case": self.case,
                "m": str(self.m_star), "destabilizer": [str(w) for w in self.destabilizer.weights],
                "base_degree": self.base_degree}


def curvilinear_record(n: int, l: int, case: str = "i", name: str = "curvilinear") -> WallRecord:
    return WallRecord(name, n, m_curvilinear(n, l), LAMBDA_1, l, "above", l=l, case=case)


def collinear_record(n: int, l: int, s: int, case: str = "i") -> WallRecord:
    return WallRecord("collinear", n, m_collinear(n, l, s), LAMBDA_HALF, l, "below", l=l, s=s, case=case)


def conic_record(n: int) -> WallRecord:
    if n < 5:
        raise DomainError("conic witnesses need n >= 5")
    k = n // 2 if n % 2 == 0 else (n + 1) // 2
    return WallRecord("conic", n, m_conic(n), LAMBDA_0, k, "above", case="even" if n % 2 == 0 else "odd")


def wall_records(n: int) -> list:
    """Every closed-form wall available for length n."""
    out = []
    for l in range(1, n):
        if 2 * l >= n and 3 * l < 2 * n:
            out.append(curvilinear_record(n, l))
    for s in range(2, n):
        l = n - triangular(s)
        if l < 1:
            break
        if s * s <= l < 2 * triangular(s):
            out.append(collinear_record(n, l, s))
    if n >= 5:
        out.append(conic_record(n))
    if n % 3 and n >= 2:
        lw = largest_git_wall(n)
        out.append(curvilinear_record(n, lw.l, name="largest"))
    return out


# ------------------------------------------------------------ witnesses

def _distinct_nonzero(rng: random.Random, k: int, avoid=()) -> list:
    out: list = []
    while len(out) < k:
        v = random_rational(rng, nonzero=True)
        if v not in out and v not in avoid:
            out.append(v)
    return out


def curvilinear_witness(n: int, l: int, roots: Sequence, case: str = "i") -> PointScheme:
    """(xz, y^{n-l} z, r_l) with r_l = prod (y - a x) (times y in case ii)."""
    if case == "i":
        if len(roots) != l or any(a == 0 for a in roots):
            raise DomainError("case (i) needs l nonzero roots")
        r = Poly(0, {(0, 0, 0): 1})
        pts = []
    else:
        if len(roots) != l - 1 or any(a == 0 for a in roots):
            raise DomainError("case (ii) needs l - 1 nonzero roots")
        r = Y
        pts = [(Fraction(1), Fraction(0), Fraction(0))]
    for a in roots:
        r = r * (Y - to_q(a) * X)
        pts.append((Fraction(1), to_q(a), Fraction(0)))
    k = n - l
    hints = [SupportHint(p, 1) for p in pts]
    hints.append(SupportHint((Fraction(0), Fraction(0), Fraction(1)), k, X if k > 1 else None))
    return from_generators([X * Z, Y ** k * Z, r], n, hints, f"curvilinear witness ({n},{l})")


def collinear_witness(n: int, l: int, s: int, roots: Sequence, case: str = "i") -> PointScheme:
    """(x y^s, ..., x z^s, p_l(y, z)) with p_l = prod (y - c z) (times z in case ii)."""
    if case == "i":
        if len(roots) != l:
            raise DomainError("case (i) needs l roots")
        p = Poly(0, {(0, 0, 0): 1})
        pts = []
    else:
        if len(roots) != l - 1:
            raise DomainError("case (ii) needs l - 1 roots")
        p = Z
        pts = [(Fraction(0), Fraction(1), Fraction(0))]
    if any(c == 0 for c in roots) or len(set(roots)) != len(roots):
        raise DomainError("roots must be distinct and nonzero")
    for c in roots:
        p = p * (Y - to_q(c) * Z)
        pts.append((Fraction(0), to_q(c), Fraction(1)))
    gens = [X * g for g in power_of_maximal(s, [Y, Z])] + [p]
    hints = [SupportHint(q, 1) for q in pts]
    hints.append(SupportHint((Fraction(1), Fraction(0), Fraction(0)), triangular(s)))
    return from_generators(gens, n, hints, f"collinear witness ({n},{l},{s})")


def conic_witness(n: int) -> PointScheme:
    conic = Y ** 2 + X * Z
    P = (Fraction(0), Fraction(0), Fraction(1))
    if n % 2 == 0:
        k = n // 2
        gens = [conic, X ** k]
    else:
        k = (n + 1) // 2
        gens = [conic, X ** k, X ** (k - 1) * Y]
    return from_generators(gens, n, [SupportHint(P, n, X)], f"conic witness n={n}")


def witness(record: WallRecord, seed: int = 0) -> PointScheme:
    rng = random.Random(seed)
    if record.name in ("curvilinear", "largest"):
        k = record.l if record.case == "i" else record.l - 1
        return curvilinear_witness(record.n, record.l, _distinct_nonzero(rng, k), record.case)
    if record.name == "collinear":
        k = record.l if record.case == "i" else record.l - 1
        return collinear_witness(record.n, record.l, record.s, _distinct_nonzero(rng, k), record.case)
    if record.name == "conic":
        return conic_witness(record.n)
    raise DomainError(f"unknown wall family {record.name}")


def special_triple_point_7(seed: int = 0) -> PointScheme:
    """(y^2 + xz, xy, x^2) at (0:0:1), the point (0:1:0), and three generic points."""
    rng = random.Random(seed)
    trip = from_generators([Y ** 2 + X * Z, X * Y, X ** 2], 3,
                           [SupportHint((Fraction(0), Fraction(0), Fraction(1)), 3, X)], "triple point")
    pt = reduced_points([(0, 1, 0)])
    while True:
        others = reduced_points(generic_points(3, rng))
        Zs = union([trip, pt, others], "special triple point")
        try:
            return Zs.validate()
        except ValueError:
            continue


# ------------------------------------------------------------ verification

@dataclass
class WallReport:
    record: WallRecord
    mu_at_wall: Fraction
    probes: list  # (m, mu) pairs
    scan_max: Fraction
    shear_maxima: list
    ok: bool
    problems: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"record": self.record.to_json(), "mu_at_wall": str(self.mu_at_wall),
                "probes": [[str(m), str(v)] for m, v in self.probes], "scan_max": str(self.scan_max),
                "shear_maxima": [str(v) for v in self.shear_maxima], "ok": self.ok,
                "problems": self.problems}


def _shear_samples(record: WallRecord, W: PointScheme) -> tuple:
    if record.name in ("curvilinear", "largest"):
        roots = [h.point[1] for h in W.support if h.mult == 1 and h.point[0] == 1 and h.point[1] != 0]
        return "upper", [Fraction(1), Fraction(-1), Fraction(2)] + roots[:1]
    if record.name == "collinear":
        roots = [h.point[1] for h in W.support if h.mult == 1 and h.point[2] == 1]
        return "lower", [Fraction(1), Fraction(-1), Fraction(2)] + [1 / r for r in roots[:1] if r]
    return None, []


def verify_wall(record: WallRecord, W: PointScheme, deltas: Sequence = (Fraction(1, 10), Fraction(1, 100)),
                strict: bool = True) -> WallReport:
    """Zero of mu at the wall, sign change across it, and no diagonal destabilizer there."""
    lam, d, m0 = record.destabilizer, record.base_degree, record.m_star
    problems = []
    at = mu(W, m0, lam, d)
    if at != 0:
        problems.append(f"mu at m*={m0} is {at}, expected 0")
    probes = []
    for delta in deltas:
        delta = to_q(delta)
        for sign in (1, -1):
            m = m0 + sign * delta
            v = mu(W, m, lam, d)
            probes.append((m, v))
            positive = (sign > 0) == (record.positive_side == "above")
            if (v > 0) != positive or v == 0:
                problems.append(f"mu at m={m} is {v}, expected {'> 0' if positive else '< 0'}")
    scan = destabilize_diagonal(W, m0, d)
    if scan.max_mu > 0:
        problems.append(f"diagonal scan at m* reaches {scan.max_mu} via {scan.argmax}")
    which, samples = _shear_samples(record, W)
    shear_max = []
    for s in samples:
        sc = destabilize_diagonal(W, m0, d, conjugation=shear_matrix(s, which))
        shear_max.append(sc.max_mu)
        if sc.max_mu > 0:
            problems.append(f"sheared scan (s={s}) reaches {sc.max_mu}")
    rep = WallReport(record, at, probes, scan.max_mu, shear_max, not problems, problems)
    if strict and problems:
        raise VerificationFailed("; ".join(problems))
    return rep


# ------------------------------------------------------------ printed closed forms

def _fat_plus_line(case: str, n, l, a, b) -> tuple:
    A = a < b
    if case == "i":
        if A:
            mu_l = -a / 2 * (4 * l * l - 4 * l * n + n * n - n) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + 3 * l - 2 * n)
            mu_l1 = -a / 2 * (4 * l * l - 4 * l * n + n * n + 2 * l - 3 * n) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + 7 * l - 4 * n)
        else:
            mu_l = -a / 2 * (4 * l * l - 4 * l * n + n * n + 2 * l - n) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + l - 2 * n)
            mu_l1 = -a / 2 * (4 * l * l - 4 * l * n + n * n + 6 * l - 3 * n) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + 3 * l - 4 * n)
    else:
        if A:
            mu_l = -a / 2 * (4 * l * l - 4 * l * n + n * n - n + 2) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + 3 * l - 2 * n - 2)
            mu_l1 = -a / 2 * (4 * l * l - 4 * l * n + n * n + 2 * l - 3 * n + 4) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + 7 * l - 4 * n - 4)
        else:
            mu_l = -a / 2 * (4 * l * l - 4 * l * n + n * n + 2 * l - n) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + l - 2 * n)
            mu_l1 = -a / 2 * (4 * l * l - 4 * l * n + n * n + 6 * l - 3 * n) - b / 2 * (5 * l * l - 6 * l * n + 2 * n * n + 3 * l - 4 * n)
    return mu_l, mu_l1


def _fat_plus_line_at_wall(case: str, n, l, a, b) -> Fraction:
    den = 2 * (2 * n - 3 * l)
    if a < b:
        if case == "i":
            num = 3 * l ** 3 - l * l * n - 2 * l * n * n + n ** 3 - 3 * l * l + 3 * l * n - n * n
        else:
            num = (3 * l ** 3 - l * l * n - 2 * l * n * n + n ** 3 - 12 * l * l + 13 * l * n - 4 * n * n
                   + 3 * l - n)
        return Fraction(num, den) * (a - b)
    return -Fraction((2 * l - n) * (3 * l * l - 3 * l * n + n * n - n), den) * (a - b)


def _collinear(case: str, l, s, a, b) -> tuple:
    base = s ** 3 - l * s * s + l * l - l * s
    if a + 2 * b >= 0:
        return a / 2 * (base - l - s) - b * l, a / 2 * (base - s * s - l - 2 * s) - 2 * b * l
    if case == "i":
        return a / 2 * (base + l - s) + b * l, a / 2 * (base - s * s + 3 * l - 2 * s) + 2 * b * l
    return (a / 2 * (base + l - s - 2) + b * (l - 2),
            a / 2 * (base - s * s + 3 * l - 2 * s - 4) + 2 * b * (l - 2))


def _conic(case: str, k, a, b) -> tuple:
    if case == "even":
        if b >= 0:
            return -Fraction(1, 2) * k * (b * k - b - 2 * a), -Fraction(1, 2) * (b * k * k + b * k - 6 * b - 6 * a * k)
        return k * (b * k - b + a), k * (b * k + b + 3 * a)
    if b >= 0:
        return (-Fraction(1, 2) * b * k * k + 2 * a * k + Fraction(1, 2) * b * k - a + b,
                -Fraction(1, 2) * b * k * k + 4 * a * k - Fraction(1, 2) * b * k - 2 * a + 6 * b)
    return b * k * k + 2 * a * k - b * k - a + b, b * k * k + 4 * a * k + b * k - 2 * a


def mu_closed_forms(family: str, case: str = "i", a=None, b=None, *, n=None, l=None, s=None, k=None):
    """Printed piecewise formulas, evaluated exactly.

    Families: ``fat_plus_line`` and ``collinear`` and ``conic`` return the pair
    (mu at the base degree, mu at the next degree) for lambda(a, b);
    ``fat_plus_line_wall`` gives mu at m_l; ``wall_from_collinear`` gives
    mu_l(lambda_{-1/2}) for (s, k, l); ``largest`` gives the branch value of
    that quantity for n = 1 or 2 mod 3 (``case`` "1" or "2").
    """
    a = to_q(a) if a is not None else None
    b = to_q(b) if b is not None else None
    if family == "fat_plus_line":
        if not (2 * l >= n and 3 * l < 2 * n):
            raise DomainError("need n/2 <= l < 2n/3")
        return _fat_plus_line(case, n, l, a, b)
    if family == "fat_plus_line_wall":
        if not (2 * l >= n and 3 * l < 2 * n):
            raise DomainError("need n/2 <= l < 2n/3")
        return _fat_plus_line_at_wall(case, n, l, a, b)
    if family == "collinear":
        if n - l != triangular(s) or not (s * s <= l < 2 * triangular(s)):
            raise DomainError("need n - l = Delta(s) and s^2 <= l < 2 Delta(s)")
        return _collinear(case, l, s, a, b)
    if family == "conic":
        if k < 3:
            raise DomainError("need k >= 3")
        return _conic(case, k, a, b)
    if family == "wall_from_collinear":
        if not (s >= 1 and 0 <= k <= s and l >= s + 1):
            raise DomainError("need s >= 1, 0 <= k <= s, l >= s + 1")
        return Fraction(s ** 3 - l * s * s + 3 * k * s - l * s - s + l * l - 2 * k * l, 2)
    if family == "largest":
        if s < 0 or not 0 <= k <= s:
            raise DomainError("need 0 <= k <= s")
        if case == "1":
            return Fraction(s ** 3 + 3 * k * s + s * s + 2 * k + 1, 2)
        if case == "2":
            return Fraction(s ** 3 + 3 * k * s + 2 * s * s + 4 * k + s + 4, 2)
        raise DomainError("case must be '1' or '2' (n mod 3)")
    raise DomainError(f"unknown family {family}")


def state_closed_forms(family: str, case: str = "i", *, n=None, l=None, s=None, k=None) -> tuple:
    """Printed vertex sets of the two state polytopes for each witness family."""
    F = Fraction
    if family == "fat_plus_line":
        nx, mx = F(l ** 3 - l, 6), F(l ** 3 + 3 * l * l + 2 * l, 6)
        ny = F(l ** 3 - 3 * l * l + 6 * l * n - 3 * n * n - 4 * l + 3 * n, 6)
        my = F(l ** 3 + 6 * l * n - 3 * n * n - l + 3 * n, 6)
        nz = F(l ** 3 + 12 * l * l - 12 * l * n + 3 * n * n + 5 * l - 3 * n, 6)
        mz = F(l ** 3 + 15 * l * l - 12 * l * n + 3 * n * n + 20 * l - 9 * n + 6, 6)
        if case == "i":
            P = {(nx + l, ny, nz), (nx, ny + l, nz)}
            Q = {(mx + 2 * l + 1, my + 1, mz), (mx + 1, my + 2 * l + 1, mz)}
        else:
            P = {(nx + l - 1, ny + 1, nz), (nx, ny + l, nz)}
            Q = {(mx + 2 * l - 1, my + 3, mz), (mx + 1, my + 2 * l + 1, mz)}
        return P, Q
    if family == "collinear":
        nx = F((l + 2 * s + 2) * (l - s + 1) * (l - s), 6)
        mx = F((l + 2 * s + 3) * (l - s + 2) * (l - s + 1), 6)
        nyz = F(l ** 3 - l - s ** 3 + s, 6)
        myz = F(l ** 3 + 3 * l * l + 2 * l - s ** 3 + s, 6)
        if case == "i":
            P = {(nx, nyz + l, nyz), (nx, nyz, nyz + l)}
            Q = {(mx, myz + 2 * l + 1, myz + 1), (mx, myz + 1, myz + 2 * l + 1)}
        else:
            P = {(nx, nyz + l - 1, nyz + 1), (nx, nyz, nyz + l)}
            Q = {(mx, myz + 2 * l - 1, myz + 3), (mx, myz + 1, myz + 2 * l + 1)}
        return P, Q
    if family == "conic":
        if case == "even":
            P = {(F(k * (k * k + 5), 6), F(k * (k - 1) * (k - 2), 6), F(k * (k - 1) * (k + 1), 6)),
                 (F(k * (k * k - 3 * k + 8), 6), F(k * (k - 1) * (k + 4), 6), F(k * (k - 1) * (k - 2), 6))}
            Q = {(F(k * (k * k + 3 * k + 20), 6), F(k ** 3 - k + 18, 6), F(k * (k + 1) * (k + 2), 6)),
                 (F(k ** 3 + 17 * k + 6, 6), F(k ** 3 + 6 * k * k + 5 * k + 6, 6),
                  F((k + 2) * (k * k - 2 * k + 3), 6))}
        else:
            P = {(F(k ** 3 + 11 * k - 6, 6), F((k + 1) * (k * k - 4 * k + 6), 6), F(k * (k - 1) * (k + 1), 6)),
                 (F(k ** 3 - 3 * k * k + 14 * k - 6, 6), F(k ** 3 + 3 * k * k - 4 * k + 6, 6),
                  F(k * (k - 1) * (k - 2), 6))}
            Q = {(F(k ** 3 + 3 * k * k + 26 * k - 12, 6), F(k ** 3 - k + 36, 6), F(k * (k + 1) * (k + 2), 6)),
                 (F(k * (k * k + 23), 6), F(k ** 3 + 6 * k * k + 5 * k + 12, 6), F(k ** 3 - k + 12, 6))}
        return P, Q
    if family == "wall_from_collinear":
        nx = F((l - s) * (l * l + l * s - 2 * s * s - 6 * k + 3 * l + 2), 6)
        ny = F(l ** 3 - s ** 3 - 3 * k * k + 3 * k - l + s, 6)
        nz = F(l ** 3 - s ** 3 + 3 * k * k - 6 * k * s - 3 * k - l + s, 6)
        return {(nx, ny + l, nz), (nx, ny, nz + l)}, None
    raise DomainError(f"unknown family {family}")


def wall_from_collinear_scheme(s: int, k: int, l: int, roots: Sequence) -> PointScheme:
    """(m_0, ..., m_s) cap (x, p_l(y, z)) with the corner-cut monomials m_i."""
    if len(roots) != l:
        raise DomainError("need l roots")
    mons = []
    for i in range(s + 1):
        mons.append(Y ** (s - i) * Z ** i if i <= s - k else Y ** (s - i) * Z ** (i + 1))
    p = Poly(0, {(0, 0, 0): 1})
    pts = []
    for c in roots:
        p = p * (Y - to_q(c) * Z)
        pts.append(SupportHint((Fraction(0), to_q(c), Fraction(1)), 1))
    n = triangular(s) + k + l
    pts.append(SupportHint((Fraction(1), Fraction(0), Fraction(0)), triangular(s) + k))
    return from_generators([X * g for g in mons] + [p], n, pts, "corner cut plus line")


# ------------------------------------------------------------ degenerating configurations

def curvilinear_configuration(n: int, l: int, seed: int = 0, case: str = "i") -> tuple:
    """Generic configurations of the curvilinear wall and the subgroup degenerating them.

    Case "i": a curvilinear point of length n - l at (0:0:1) tangent to x = 0
    plus l points (1 : a_i : b_i); its lambda_1 limit is the witness with
    r_l = prod (y - a_i x).  Case "ii": l points on z = 0 and n - l on x = 0;
    the lambda_1^{-1} limit is the witness with r_l = p_l.
    Returns (Z, lambda, expected limit).
    """
    rng = random.Random(seed)
    k = n - l
    if case == "i":
        a = _distinct_nonzero(rng, l)
        pts = [(Fraction(1), ai, random_rational(rng, nonzero=True)) for ai in a]
        fat = curvilinear_fat_point(k) if k > 1 else reduced_points([(0, 0, 1)])
        Zs = union([fat, reduced_points(pts)], "fat point plus generic points").validate()
        return Zs, LAMBDA_1, curvilinear_witness(n, l, a, "i")
    a = _distinct_nonzero(rng, l)
    c = _distinct_nonzero(rng, k)
    on_z = [(Fraction(1), ai, Fraction(0)) for ai in a]
    on_x = [(Fraction(0), ci, Fraction(1)) for ci in c]
    Zs = union([reduced_points(on_z), reduced_points(on_x)], "two collinear groups").validate()
    return Zs, LAMBDA_1.inverse(), curvilinear_witness(n, l, a, "i")


def collinear_configuration(n: int, l: int, s: int, seed: int = 0, case: str = "i") -> tuple:
    """Case "i": Delta(s) generic points plus l points on x = 0, under lambda_{-1/2}.
    Case "ii": (y, z)^s plus l generic points, under lambda_{-1/2}^{-1}."""
    rng = random.Random(seed)
    if case == "i":
        c = _distinct_nonzero(rng, l)
        line_pts = reduced_points([(0, ci, 1) for ci in c])
        while True:
            gen = reduced_points(generic_points(triangular(s), rng))
            try:
                Zs = union([gen, line_pts], "generic plus collinear").validate()
                break
            except ValueError:
                continue
        return Zs, LAMBDA_HALF, collinear_witness(n, l, s, c, "i")
    pts = []
    ratios = set()
    while len(pts) < l:
        p = (Fraction(1), random_rational(rng, nonzero=True), random_rational(rng, nonzero=True))
        if p[1] / p[2] in ratios:
            continue
        ratios.add(p[1] / p[2])
        pts.append(p)
    fat = from_generators(power_of_maximal(s, [Y, Z]), triangular(s),
                          [SupportHint((Fraction(1), Fraction(0), Fraction(0)), triangular(s))], "fat point")
    Zs = union([fat, reduced_points(pts)], "fat point plus generic points").validate()
    # limit points (0 : a : b) are the roots c = a / b of prod (y - c z)
    return Zs, LAMBDA_HALF.inverse(), collinear_witness(n, l, s, [p[1] / p[2] for p in pts], "i")


# ------------------------------------------------------------ n = 5

CHAMBER_HIGH = "(3,inf)"
CHAMBER_LOW = "(2,3)"
CHAMBER_SAMPLE = {CHAMBER_HIGH: Fraction(4), CHAMBER_LOW: Fraction(5, 2)}


def _chamber(ch) -> str:
    if isinstance(ch, str):
        key = ch.replace(" ", "").replace("∞", "inf")
        if not key.startswith("("):
            key = f"({key})"
    else:
        lo, hi = ch
        key = f"({lo},{'inf' if hi is INF or hi == float('inf') or hi == 'inf' else hi})"
    if key not in CHAMBER_SAMPLE:
        raise ValueError(f"unknown chamber {ch!r}; expected (3,inf) or (2,3)")
    return key


def tangent_at(Zs: PointScheme, P: Sequence) -> Poly | None:
    """Tangent line of the component of Z at P when that component is curvilinear of length >= 2."""
    P = normalize_point(P)
    lin = _lines_through_point(P)
    gens = list(Zs.ideal.generators) + [a * b for a in lin for b in lin]
    J = HomogeneousIdeal(gens)
    g = Poly(0, {(0, 0, 0): 1})
    for h in Zs.support:
        q = normalize_point(h.point)
        if q == P:
            continue
        g = g * _line_avoiding(q, P)
    piece = _colon_piece(J, g, 1)
    if piece.dim != 1:
        return None
    return Poly.from_vector(1, piece.basis()[0])


def _lines_through_point(P) -> list:
    k = next(i for i in range(3) if P[i] != 0)
    out = []
    for j in range(3):
        if j == k:
            continue
        c = [Fraction(0)] * 3
        c[j] = Fraction(1) * P[k]
        c[k] = -P[j]
        out.append(Poly.linear(*c))
    return out


def _line_avoiding(q, P) -> Poly:
    for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 2, 3), (3, 1, 2)):
        try:
            ell = line_through(q, cand)
        except ValueError:
            continue
        if ell.evaluate(P) != 0:
            return ell
    raise ValueError("no line found")


def _frame_from_points(p1, p2, p3):
    """Conjugation A with (A^T)^{-1} sending p1, p2, p3 to the coordinate points."""
    C = matrix([[p1[i], p2[i], p3[i]] for i in range(3)])
    M = inverse3(C)
    return transpose(inverse3(M))


def _frame_flag(P, tangent: Poly | None):
    """Send P to (0:0:1) and the tangent line (if any) to x = 0."""
    P = normalize_point(P)
    lines = _lines_through_point(P)
    t = tangent if tangent is not None else lines[0]
    row0 = [t.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    row1 = None
    for ell in lines:
        r = [ell.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        cross = (row0[1] * r[2] - row0[2] * r[1], row0[2] * r[0] - row0[0] * r[2], row0[0] * r[1] - row0[1] * r[0])
        if any(cross):
            row1 = r
            break
    k = next(i for i in range(3) if P[i] != 0)
    row2 = [Fraction(0)] * 3
    row2[k] = Fraction(1)
    M = matrix([row0, row1, row2])
    return transpose(inverse3(M))


@dataclass
class N5Verdict:
    status: str  # stable | unstable | undetermined
    chamber: str
    m: Fraction
    reason: str
    certificate: Certificate | None = None
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "chamber": self.chamber, "m": str(self.m), "reason": self.reason,
                "certificate": self.certificate.to_json() if self.certificate else None,
                "evidence": {k: str(v) for k, v in self.evidence.items()}}


def _candidate_frames(Zs: PointScheme, fat: list, line_info) -> list:
    frames = []
    for h in fat:
        frames.append(_frame_flag(h.point, tangent_at(Zs, h.point)))
    prof_len, ell = line_info
    if ell is not None and prof_len >= 3:
        on = [h.point for h in Zs.support if ell.evaluate(h.point) == 0]
        off = [h.point for h in Zs.support if ell.evaluate(h.point) != 0]
        if len(on) >= 2 and off:
            frames.append(_frame_from_points(off[0], on[0], on[1]))
        elif on:
            frames.append(_frame_flag(on[0], ell))
    return frames


def n5_classify(Zs: PointScheme, chamber, seed: int = 0, extra_frames: int = 4) -> N5Verdict:
    """Stability of a length-5 scheme in one of the two chambers, with evidence."""
    if Zs.length != 5:
        raise WrongLength(f"expected length 5, got {Zs.length}")
    if not Zs.has_hints:
        raise HintsMissing("n = 5 classification needs complete support hints")
    ch = _chamber(chamber)
    m = CHAMBER_SAMPLE[ch]
    fat = [h for h in Zs.support if h.mult > 1]
    lines = {}
    pts = [h.point for h in Zs.support]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            ell = line_through(pts[i], pts[j])
            lines[str(ell)] = ell
    for h in fat:
        t = h.tangent if h.tangent is not None else tangent_at(Zs, h.point)
        if t is not None:
            lines[str(t)] = t
        else:
            for ell in _lines_through_point(normalize_point(h.point)):
                lines[str(ell)] = ell
    prof = collinear_profile(Zs, list(lines.values())) if lines else None
    p = prof.length if prof else 1
    top = max(h.mult for h in Zs.support)
    reduced = top == 1
    if ch == CHAMBER_HIGH:
        stable = reduced and p < 4
        reason = "reduced, no four collinear" if stable else (
            "non-reduced" if not reduced else "four collinear")
    else:
        stable = p < 3 and top < 3
        reason = "no length-3 collinear, no point of length 3" if stable else (
            "point of length >= 3" if top >= 3 else "three collinear")
    evidence = {"collinear_profile": p, "max_multiplicity": top}
    frames = _candidate_frames(Zs, fat, (p, prof.line if prof else None))
    rng = random.Random(seed)
    for _ in range(extra_frames):
        A = matrix([[random_rational(rng) for _ in range(3)] for _ in range(3)])
        try:
            inverse3(A)
        except ValueError:
            continue
        frames.append(A)
    best = None
    for A in [None] + frames:
        try:
            sc = destabilize_diagonal(Zs, m, conjugation=A)
        except HilbertPointUndefined:
            continue
        if best is None or sc.max_mu > best.max_mu:
            best = sc
        if sc.certificate is not None and not stable:
            return N5Verdict("unstable", ch, m, reason, sc.certificate, evidence)
    if best is not None:
        evidence["max_diagonal_mu"] = best.max_mu
    if stable:
        if best is not None and best.max_mu > 0:
            return N5Verdict("undetermined", ch, m, "criterion says stable but a destabilizer was found",
                             best.certificate, evidence)
        return N5Verdict("stable", ch, m, reason, None, evidence)
    return N5Verdict("undetermined", ch, m, reason + " (no certificate found)", None, evidence)


def n5_sample(kind: str, seed: int) -> PointScheme:
    """Seeded length-5 configurations for each class of the n = 5 classification."""
    rng = random.Random(seed)
    if kind == "generic":
        return reduced_points(generic_points(5, rng), "five generic points")
    if kind == "four_collinear":
        while True:
            A = _random_invertible(rng)
            ts = _distinct_nonzero(rng, 4)
            base = [(0, t, 1) for t in ts] + [(1, random_rational(rng), random_rational(rng))]
            Zs = reduced_points(base, "four collinear").transform(A)
            return reduced_points([h.point for h in Zs.support], "four collinear")
    if kind == "three_collinear":
        while True:
            ts = _distinct_nonzero(rng, 3)
            others = generic_points(2, rng)
            base = [(0, t, 1) for t in ts] + others
            Zs = reduced_points(base, "three collinear")
            prof = collinear_profile(Zs)
            if prof.length == 3 and all(o[0] != 0 for o in others):
                A = _random_invertible(rng)
                W = Zs.transform(A)
                return reduced_points([h.point for h in W.support], "three collinear")
    if kind == "non_reduced":
        while True:
            A = _random_invertible(rng)
            dbl = from_generators([X, Y ** 2], 2, [SupportHint((0, 0, 1), 2, X)], "double point")
            others = reduced_points(generic_points(3, rng))
            try:
                Zs = union([dbl, others], "double point plus three").validate()
            except ValueError:
                continue
            W = Zs.transform(A)
            if _no_three_on_line(W):
                return W
    if kind == "fat_triple":
        curvilinear = rng.random() < 0.5
        A = _random_invertible(rng)
        if curvilinear:
            trip = from_generators([X ** 2, X * Y, Y ** 2 + X * Z], 3, [SupportHint((0, 0, 1), 3, X)],
                                   "curvilinear triple point")
        else:
            trip = from_generators([X ** 2, X * Y, Y ** 2], 3, [SupportHint((0, 0, 1), 3)], "fat triple point")
        while True:
            others = reduced_points(generic_points(2, rng))
            try:
                Zs = union([trip, others], "triple point plus two").validate()
                return Zs.transform(A)
            except ValueError:
                continue
    raise ValueError(f"unknown configuration class {kind}")


def _random_invertible(rng):
    while True:
        A = matrix([[random_rational(rng) for _ in range(3)] for _ in range(3)])
        try:
            inverse3(A)
            return A
        except ValueError:
            continue


def _no_three_on_line(Zs: PointScheme) -> bool:
    lines = []
    pts = [h.point for h in Zs.support]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            lines.append(line_through(pts[i], pts[j]))
    for h in Zs.support:
        if h.tangent is not None:
            lines.append(h.tangent)
    return collinear_profile(Zs, lines).length < 3


N5_CLASSES = ("generic", "four_collinear", "non_reduced", "three_collinear", "fat_triple")

EXPECTED_N5 = {
    "generic": {CHAMBER_HIGH: "stable", CHAMBER_LOW: "stable"},
    "four_collinear": {CHAMBER_HIGH: "unstable", CHAMBER_LOW: "unstable"},
    "non_reduced": {CHAMBER_HIGH: "unstable", CHAMBER_LOW: "stable"},
    "three_collinear": {CHAMBER_HIGH: "stable", CHAMBER_LOW: "unstable"},
    "fat_triple": {CHAMBER_HIGH: "unstable", CHAMBER_LOW: "unstable"},
}


# ------------------------------------------------------------ wall table

# Boundary of the movable cone (not a GIT wall of the Hilbert scheme itself)
MOVABLE_BOUNDARY = {5: Fraction(2), 6: Fraction(5, 2), 7: Fraction(5, 2)}


def _scan_row(rec: WallRecord, seed: int) -> dict:
    W = witness(rec, seed)
    rep = verify_wall(rec, W, strict=False)
    return {"family": rec.name, "m": rec.m_star, "record": rec.to_json(),
            "witness": [str(g) for g in W.ideal.generators], "verified": rep.ok,
            "problems": rep.problems, "source": "computed"}


def wall_scan(n: int, seed: int = 0, jobs: int = 1) -> list:
    """All closed-form walls for length n with witness and verification status, largest m first.

    With jobs > 1 the records are verified in a process pool; the row order does not depend on it.
    """
    recs = wall_records(n)
    if jobs > 1 and len(recs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_scan_row, recs, [seed] * len(recs)))
    else:
        rows = [_scan_row(rec, seed) for rec in recs]
    if n in MOVABLE_BOUNDARY:
        rows.append({"family": "movable-boundary", "m": MOVABLE_BOUNDARY[n], "record": None,
                     "witness": None, "verified": None, "problems": [], "source": "literature"})
    rows.sort(key=lambda r: (-r["m"], r["family"]))
    return rows
