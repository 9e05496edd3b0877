"""Replayable verification suites: every printed value recomputed from scratch."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import final7 as f7
from .exact import X, Y, Z, mat_mul
from .git import lam_r, m_zero, mu_integer, state_polytope
from .ideals import PointScheme, from_generators
from .walls import curvilinear_record, verify_wall, witness


@dataclass
class Check:
    id: str
    paper_ref: str
    expected: object
    computed: object
    ok: bool

    def to_json(self) -> dict:
        return {"id": self.id, "paper_ref": self.paper_ref, "expected": _enc(self.expected),
                "computed": _enc(self.computed), "ok": self.ok}


def _enc(v):
    if isinstance(v, (set, frozenset)):
        return sorted(_enc(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _enc(x) for k, x in v.items()}
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


def _check(id_, ref, expected, computed) -> Check:
    return Check(id_, ref, expected, computed, expected == computed)


# ------------------------------------------------------------ n = 5 ideals

def n5_ideals() -> dict:
    """Normalized ideals of the unstable n = 5 configurations, keyed by name."""
    return {
        "triple_point": (X * Z + Y**2, X**2 * Y + X * Y * Z, X**3 + X**2 * Z),
        "four_collinear": (X * Y, X * Z, Y**4 + 2 * Y**3 * Z - Y**2 * Z**2 + 3 * Y * Z**3 + Z**4),
        "three_collinear": (X * Y, Y * Z * (Y + 2 * Z), X * Z * (X + Z)),
        "special_I": (X * Y, X**2 * Z, Y**2 * Z + Y * Z**2),
        "special_II": (X**2 + X * Y, Y * Z**2, X * Y * Z),
        "special_III": (X**2, Y**2 * Z + Y * Z**2, X * Y * Z),
        "minimal_orbit": (X * Z, X * Y**2, Y**2 * Z),
    }


def n5_scheme(name: str) -> PointScheme:
    return from_generators(list(n5_ideals()[name]), 5, [], name)


N5_STATES = {
    "triple_point": {3: {(9, 2, 4), (5, 6, 4), (6, 8, 1), (4, 8, 3)},
                     4: {(20, 10, 10), (19, 10, 11), (13, 16, 11), (16, 18, 6), (12, 18, 10)}},
    "four_collinear": {4: {(16, 14, 10), (16, 10, 14)}, 5: {(30, 29, 21), (30, 21, 29)}},
    "three_collinear": {3: {(5, 5, 5), (5, 6, 4), (6, 5, 4), (6, 6, 3)},
                        4: {(13, 13, 14), (15, 15, 10), (13, 15, 12), (15, 13, 12)}},
    "special_I": {3: {(6, 6, 3), (6, 5, 4)}, 4: {(15, 15, 10), (15, 13, 12)}},
    "special_II": {3: {(8, 3, 4), (6, 5, 4)}, 4: {(18, 10, 12), (15, 13, 12)}},
    "special_III": {3: {(8, 4, 3), (8, 3, 4)}, 4: {(18, 12, 10), (18, 10, 12)}},
    "minimal_orbit": {3: {(5, 5, 5)}},
}

N5_MU = {  # (lambda parameter r, base degree, mu_d, mu_{d+1})
    "triple_point": (Fraction(0), 3, Fraction(1), Fraction(2)),
    "three_collinear": (Fraction(-1, 2), 3, Fraction(0), Fraction(-1, 2)),
    "special_I": (Fraction(-1, 2), 3, Fraction(3, 2), Fraction(5, 2)),
    "special_II": (Fraction(1), 3, Fraction(3), Fraction(4)),
    "special_III": (Fraction(0), 3, Fraction(4), Fraction(6)),
}

REF = {
    "triple_point": "n5.triple-point",
    "four_collinear": "n5.four-collinear",
    "three_collinear": "n5.three-collinear",
    "special_I": "n5.special-configuration-I",
    "special_II": "n5.special-configuration-II",
    "special_III": "n5.special-configuration-III",
    "minimal_orbit": "n5.minimal-orbit",
}


def four_collinear_printed(r) -> tuple:
    """Printed closed forms (mu_4, mu_5, m_0) for lambda_r."""
    r = Fraction(r)
    return 2 - 4 * r, 1 - 8 * r, (6 + 12 * r) / (1 + 4 * r)


def suite_n5() -> list:
    out = []
    schemes = {k: n5_scheme(k) for k in n5_ideals()}
    for name, states in N5_STATES.items():
        for d, verts in states.items():
            got = set(state_polytope(schemes[name], d).vertices)
            out.append(_check(f"{name}.state{d}", REF[name] + ".state", verts, got))
    for name, (r, d, a, b) in N5_MU.items():
        lam = lam_r(r)
        got = (mu_integer(schemes[name], d, lam), mu_integer(schemes[name], d + 1, lam))
        out.append(_check(f"{name}.mu", REF[name] + ".mu", (a, b), got))
    out.append(_check("triple_point.m0", REF["triple_point"] + ".m0", Fraction(2),
                      m_zero(schemes["triple_point"], lam_r(0), 3)))
    W = schemes["four_collinear"]
    for r in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(-1, 2)):
        m4, m5, m0 = four_collinear_printed(r)
        got = (mu_integer(W, 4, lam_r(r)), mu_integer(W, 5, lam_r(r)), m_zero(W, lam_r(r), 4))
        out.append(_check(f"four_collinear.mu.r={r}", REF["four_collinear"] + ".mu", (m4, m5, m0), got))
    # non-reduced schemes are unstable above m = 3: the curvilinear wall for (5, 3)
    rec = curvilinear_record(5, 3)
    rep = verify_wall(rec, witness(rec, 0), strict=False)
    out.append(_check("non_reduced.wall", "n5.non-reduced.wall-at-3", True, rep.ok))
    return out


# ------------------------------------------------------------ final model

def suite_final7() -> list:
    out = []
    out.append(_check("basis.count", "final7.basis", 15, len(f7.BASIS)))
    out.append(_check("basis.euler", "final7.basis.euler", True,
                      all(e.euler().is_zero() for e in f7.BASIS)))
    for r in (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(1, 3)):
        A, q = f7.lambda_r_at(r, 2)
        ok = True
        for i, e in enumerate(f7.BASIS):
            c = f7.coordinates(f7.act(A, e))
            exp = [Fraction(0)] * 15
            exp[i] = Fraction(2) ** (q * f7.weights(r)[i])
            ok = ok and c == exp
        out.append(_check(f"weights.r={r}", "final7.weights", True, ok))
    for w in (Fraction(2), Fraction(1, 2), Fraction(-3)):
        rep = f7.minimal_orbit(w)
        out.append(_check(f"orbit.w={w}.decomposition", "final7.minimal-orbit.decomposition", True,
                          isinstance(rep.ideal, PointScheme) and rep.matches_printed))
        out.append(_check(f"orbit.w={w}.max_mu", "final7.minimal-orbit.semistable", Fraction(0), rep.max_mu))
        out.append(_check(f"orbit.w={w}.T", "final7.involution", -w - 1, f7.orbit_target(f7.T_MATRIX, w)))
        out.append(_check(f"orbit.w={w}.lambda0", "final7.stabilizer", w, f7.orbit_target(f7.lambda0(3), w)))
    for w in (Fraction(0), Fraction(-1), f7.INF_W):
        rep = f7.minimal_orbit(w)
        out.append(_check(f"orbit.w={w}.non-ideal", "final7.minimal-orbit.non-ideal", True,
                          isinstance(rep.ideal, f7.NonIdealFlag) and rep.matches_printed))
    out.append(_check("orbit.inf.S", "final7.stabilizer.S", f7.INF_W, f7.orbit_target(f7.S_MATRIX, f7.INF_W)))
    out.append(_check("orbit.T.lambda0", "final7.stabilizer.lambda0-T", Fraction(-3),
                      f7.orbit_target(mat_mul(f7.lambda0(Fraction(1, 2)), f7.T_MATRIX), Fraction(2))))
    x1 = f7.family_x1(Fraction(1))
    x2 = f7.family_x2(Fraction(1), Fraction(1))
    x3 = f7.family_x3(Fraction(1), Fraction(1), Fraction(1))
    for m in (x1, x2, x3):
        out.append(_check(f"family.{m.which}.ideal", f"final7.family-{m.which}", True, m.agrees))
    out.append(_check("family.x1.pattern", "final7.stability-lemma", "unstable", f7.unstable_pattern(x1.coords)))
    out.append(_check("family.x2.pattern", "final7.stability-lemma", "unstable", f7.unstable_pattern(x2.coords)))
    out.append(_check("family.x3.line", "final7.family-x3.line", 2, f7.triple_point_line_length(x3)))
    x1_support = [1, 1, 1, 1, 1, 0, 1, 1] + [0] * 7
    ok = all(f7.mu14(x1_support, r) > 0 for r in (Fraction(-1, 4), Fraction(-1, 6), Fraction(-1, 10)))
    out.append(_check("x1-support.positive", "final7.stability-lemma.case-i", True, ok))
    return out


SUITES = {"n5": suite_n5, "final7": suite_final7}
