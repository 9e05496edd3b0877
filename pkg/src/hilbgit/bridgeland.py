"""Numerical Bridgeland walls for the Chern character (1, 0, -n)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .exact import to_q
from .ideals import HintsMissing, PointScheme, collinear_profile, contained_in_conic


class DivisionByZero(ZeroDivisionError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ChernCharacter:
    ch0: Fraction
    ch1: Fraction
    ch2: Fraction

    def __init__(self, ch0, ch1, ch2):
        object.__setattr__(self, "ch0", to_q(ch0))
        object.__setattr__(self, "ch1", to_q(ch1))
        object.__setattr__(self, "ch2", to_q(ch2))

    def __iter__(self):
        return iter((self.ch0, self.ch1, self.ch2))


def ch(v) -> ChernCharacter:
    return v if isinstance(v, ChernCharacter) else ChernCharacter(*v)


def ideal_character(n) -> ChernCharacter:
    return ChernCharacter(1, 0, -to_q(n))


def line_bundle(d) -> ChernCharacter:
    d = to_q(d)
    return ChernCharacter(1, d, d * d / 2)


def twisted_ideal_minus_one(length) -> ChernCharacter:
    """ch(I_W(-1)) for W of the given length."""
    return ChernCharacter(1, -1, Fraction(1, 2) - to_q(length))


def twisted_chern(v, beta) -> tuple:
    v, b = ch(v), to_q(beta)
    return (v.ch0, v.ch1 - b * v.ch0, v.ch2 - b * v.ch1 + b * b / 2 * v.ch0)


class _PosInf:
    def __repr__(self):
        return "+inf"

    __str__ = __repr__


POS_INF = _PosInf()


def tilt_slope(v, alpha, beta, alpha_sq=None):
    """nu_{alpha,beta}(v); pass ``alpha_sq`` to work with irrational alpha."""
    a2 = to_q(alpha_sq) if alpha_sq is not None else to_q(alpha) ** 2
    if a2 <= 0 and alpha_sq is None:
        raise ValueError("alpha must be positive")
    c0, c1, c2 = twisted_chern(v, beta)
    if c1 == 0:
        return POS_INF
    return (c2 - a2 / 2 * c0) / c1


def tilt_numerator(v, alpha_sq, beta) -> Fraction:
    c0, _, c2 = twisted_chern(v, beta)
    return c2 - to_q(alpha_sq) / 2 * c0


def bogomolov(v) -> Fraction:
    v = ch(v)
    return v.ch1 ** 2 - 2 * v.ch0 * v.ch2


@dataclass(frozen=True)
class NumericalWall:
    kind: str  # semicircle | vertical | empty | everything
    center: Fraction | None = None
    radius_sq: Fraction | None = None
    beta: Fraction | None = None
    label: str = ""

    @property
    def divisor_m(self) -> Fraction | None:
        return wall_divisor(self) if self.kind == "semicircle" else None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "label": self.label}
        if self.kind == "semicircle":
            out.update(center=str(self.center), radius_sq=str(self.radius_sq),
                       divisor_m=str(self.divisor_m))
        elif self.kind == "vertical":
            out["beta"] = str(self.beta)
        return out


def numerical_wall(v, w, label: str = "") -> NumericalWall:
    """W(v, w) = {nu(v) = nu(w)}, from the identity

    (cR - Cr)(alpha^2 + beta^2)/2 - beta (dR - Dr) + (dC - Dc) = 0.
    """
    r, c, d = ch(v)
    R, C, D = ch(w)
    A = c * R - C * r
    B = d * R - D * r
    K = d * C - D * c
    if A != 0:
        s = B / A
        rho2 = s * s - 2 * K / A
        if rho2 <= 0:
            return NumericalWall("empty", label=label)
        return NumericalWall("semicircle", s, rho2, label=label)
    if B == 0:
        return NumericalWall("everything" if K == 0 else "empty", label=label)
    return NumericalWall("vertical", beta=K / B, label=label)


def wall_divisor(wall: NumericalWall) -> Fraction:
    """Divisor slope m = -s - 3/2 induced along a semicircular wall."""
    if wall.kind != "semicircle":
        raise ValueError("only semicircular walls induce a divisor D_m")
    return -wall.center - Fraction(3, 2)


def radius_bound(delta, r_f, r_g) -> Fraction:
    """Upper bound Delta/(4 r_F (r_F - r_G)) for the squared radius of a wall."""
    den = 4 * to_q(r_f) * (to_q(r_f) - to_q(r_g))
    if den == 0:
        raise DivisionByZero("r_F = 0 or r_F = r_G")
    if den < 0:
        raise ValueError("denominators must be positive")
    return to_q(delta) / den


@dataclass(frozen=True)
class CatalogWall:
    wall: NumericalWall
    l: int | None  # None for the O(-2) wall
    destabilizers: tuple

    @property
    def divisor_m(self) -> Fraction:
        return self.wall.divisor_m

    def to_json(self) -> dict:
        return {"l": self.l, "center": str(self.wall.center), "radius_sq": str(self.wall.radius_sq),
                "divisor_m": str(self.divisor_m), "destabilizers": list(self.destabilizers)}


def walls_catalog(n: int) -> list:
    """Walls from O(-2) and I_W(-1), l = ceil((n+1)/2) .. n, largest first."""
    v = ideal_character(n)
    out: dict = {}
    w0 = numerical_wall(v, line_bundle(-2), "O(-2)")
    out[(w0.center, w0.radius_sq)] = CatalogWall(w0, None, ("O(-2)",))
    lo = -(-(n + 1) // 2)
    for l in range(lo, n + 1):
        w = numerical_wall(v, twisted_ideal_minus_one(n - l), f"I_W(-1), l={l}")
        if w.kind != "semicircle":
            continue
        key = (w.center, w.radius_sq)
        if key in out:
            prev = out[key]
            out[key] = CatalogWall(prev.wall, l, prev.destabilizers + (f"I_W(-1) l={l}",))
        else:
            out[key] = CatalogWall(w, l, (f"I_W(-1) l={l}",))
    return sorted(out.values(), key=lambda c: c.divisor_m, reverse=True)


def walls_intersect(w1: NumericalWall, w2: NumericalWall) -> bool:
    """Whether two distinct semicircles meet in the upper half plane."""
    if w1.kind != "semicircle" or w2.kind != "semicircle":
        raise ValueError("semicircles expected")
    if (w1.center, w1.radius_sq) == (w2.center, w2.radius_sq):
        return True
    if w1.center == w2.center:
        return False
    # radical axis: beta = (rho1^2 - rho2^2 + s2^2 - s1^2) / (2 (s2 - s1))
    b = (w1.radius_sq - w2.radius_sq + w2.center ** 2 - w1.center ** 2) / (2 * (w2.center - w1.center))
    alpha_sq = w1.radius_sq - (b - w1.center) ** 2
    return alpha_sq > 0


def d2_effective(n: int) -> str:
    """Position of D_2 relative to the effective cone: outside | boundary | undetermined.

    Every wall has center s < -sqrt(2n); D_2 would need s = -7/2, which is
    excluded as soon as 2n >= 49/4.  The values n = 5, 6 are the known
    boundary cases.
    """
    if Fraction(2 * n) >= Fraction(49, 4):
        return "outside"
    if n in (5, 6):
        return "boundary"
    return "undetermined"


def d2_outside_effective(n: int) -> bool:
    return d2_effective(n) == "outside"


@dataclass
class BridgelandVerdict:
    status: str  # stable | strictly-semistable | unstable-at-this-divisor
    clause: str
    profile: int
    in_conic: bool


def ideal_bridgeland_class(Z: PointScheme, m, below: bool = False) -> BridgelandVerdict:
    """Classify I_Z at the divisor D_m (or just below it when ``below``)."""
    n = Z.length
    if not Z.support:
        raise HintsMissing("collinearity analysis needs support hints")
    m = to_q(m) if not (isinstance(m, str) and m == "inf") else None
    p = collinear_profile(Z).length
    conic = contained_in_conic(Z.ideal)
    half = Fraction(n - 1, 2)

    def verdict(stable: bool, clause: str, semistable: bool = False) -> BridgelandVerdict:
        status = "stable" if stable else ("strictly-semistable" if semistable else "unstable-at-this-divisor")
        return BridgelandVerdict(status, clause, p, conic)

    if m is None or m > n - 1:
        return verdict(True, "(i)")
    if below and m == half:
        return verdict(not conic and 2 * p < n + 1, "(iv)")
    if m == half:
        if 2 * p > n + 1:
            return verdict(False, "O(-2) wall")
        if (conic and 2 * p <= n + 1) or 2 * p == n + 1:
            return verdict(False, "O(-2) wall", semistable=True)
        return verdict(True, "O(-2) wall")
    if m > half:
        if m.denominator == 1 and 2 * (m + 1) > n + 1:
            l = int(m) + 1
            if below:
                return verdict(p < l, "(ii)")
            if p > l:
                return verdict(False, f"wall W_{l}")
            if p == l:
                return verdict(False, f"wall W_{l}", semistable=True)
            return verdict(True, f"wall W_{l}")
        if n % 2 == 0 and m < Fraction(n, 2):
            return verdict(2 * p < n + 2, "(iii)")
        l = int(m) + 2  # l - 2 < m < l - 1
        return verdict(p < l, "(ii)")
    if half - m <= Fraction(1, 2):
        return verdict(not conic and 2 * p < n + 1, "(iv)")
    raise DomainError(f"m = {m} lies below the range described by the wall classification")
