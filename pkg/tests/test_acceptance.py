"""Acceptance criteria, one test each.

Every test collects named sub-checks, records a PASS/FAIL line (printed in the
terminal summary by conftest.py) and fails if any sub-check fails.
Run ``python3 tests/test_acceptance.py`` to get only the PASS/FAIL lines.
"""
import random
import sys
import time
from fractions import Fraction

from hilbgit import bridgeland as br
from hilbgit import final7 as f7
from hilbgit import quiver as qv
from hilbgit.degeneration import (
    EPSILON, chart_weight, corner_cut, corner_cut_ideal, flat_limit, lambda_below_half, same_ideal,
)
from hilbgit.exact import X, Y, Z, mat_mul, monomial_index
from hilbgit.git import destabilize_diagonal, lam_r, m_zero, mu, mu_integer, state_polytope
from hilbgit.ideals import PointScheme, from_generators, generic_points, reduced_points
from hilbgit.walls import (
    CHAMBER_HIGH, CHAMBER_LOW, DivisibleByThree, EXPECTED_N5, LAMBDA_0, LAMBDA_1, N5_CLASSES,
    collinear_configuration, collinear_record, collinear_witness, conic_witness, curvilinear_configuration,
    curvilinear_record, largest_git_wall, m_collinear, m_conic, m_curvilinear, n5_classify, n5_sample,
    witness,
)

from oracles import plucker_mu

RESULTS = {}

TITLES = {
    1: "n=5 state polytopes",
    2: "mu and m0 formulas",
    3: "wall tables",
    4: "wall witnesses",
    5: "corner-cut property suite",
    6: "Bridgeland numerics",
    7: "quiver suite",
    8: "final model n=7",
    9: "n=5 classification",
}


class Checks:
    def __init__(self, k):
        self.k = k
        self.items = []
        self.t0 = time.perf_counter()

    def add(self, label, ok):
        self.items.append((label, bool(ok)))

    def finish(self):
        elapsed = time.perf_counter() - self.t0
        failed = [lab for lab, ok in self.items if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"{status} criterion {self.k}: {TITLES[self.k]} ({len(self.items) - len(failed)}/{len(self.items)} checks, {elapsed:.1f}s)"
        if failed:
            line += "; failing: " + ", ".join(failed[:8]) + (" ..." if len(failed) > 8 else "")
        RESULTS[self.k] = line
        print(line)
        assert not failed, line


def _ideal(*gens, n=5):
    return from_generators(list(gens), n, [], "normalized ideal")


# ------------------------------------------------------------ 1

STATES = {  # vertex sets as printed for the normalized n = 5 ideals
    "triple point": ((X * Z + Y**2, X**2 * Y + X * Y * Z, X**3 + X**2 * Z),
                     {3: {(9, 2, 4), (5, 6, 4), (6, 8, 1), (4, 8, 3)},
                      4: {(20, 10, 10), (19, 10, 11), (13, 16, 11), (16, 18, 6), (12, 18, 10)}}),
    "four collinear": ((X * Y, X * Z, Y**4 + 2 * Y**3 * Z - Y**2 * Z**2 + 3 * Y * Z**3 + Z**4),
                       {4: {(16, 14, 10), (16, 10, 14)}, 5: {(30, 29, 21), (30, 21, 29)}}),
    "three collinear": ((X * Y, Y * Z * (Y + 2 * Z), X * Z * (X + Z)),
                        {3: {(5, 5, 5), (5, 6, 4), (6, 5, 4), (6, 6, 3)},
                         4: {(13, 13, 14), (15, 15, 10), (13, 15, 12), (15, 13, 12)}}),
    "special I": ((X * Y, X**2 * Z, Y**2 * Z + Y * Z**2), {3: {(6, 6, 3), (6, 5, 4)}, 4: {(15, 15, 10), (15, 13, 12)}}),
    "special II": ((X**2 + X * Y, Y * Z**2, X * Y * Z), {3: {(8, 3, 4), (6, 5, 4)}, 4: {(18, 10, 12), (15, 13, 12)}}),
    "special III": ((X**2, Y**2 * Z + Y * Z**2, X * Y * Z), {3: {(8, 4, 3), (8, 3, 4)}, 4: {(18, 12, 10), (18, 10, 12)}}),
    "minimal orbit": ((X * Z, X * Y**2, Y**2 * Z), {3: {(5, 5, 5)}}),
}


def test_criterion_1_state_polytopes():
    c = Checks(1)
    for name, (gens, states) in STATES.items():
        Zs = _ideal(*gens)
        for d, verts in states.items():
            t = time.perf_counter()
            got = set(state_polytope(Zs, d).vertices)
            c.add(f"{name} State_{d}", got == verts)
            c.add(f"{name} State_{d} < 1s", time.perf_counter() - t < 1)
    c.finish()


# ------------------------------------------------------------ 2

def test_criterion_2_mu_and_m0():
    c = Checks(2)
    W = _ideal(*STATES["four collinear"][0])
    gens = W.ideal.generators
    for r in (Fraction(-3, 4), Fraction(0), Fraction(1, 2), Fraction(1)):
        lam = lam_r(r)
        printed = (2 - 4 * r, 1 - 8 * r, (6 + 12 * r) / (1 + 4 * r))
        got = (mu_integer(W, 4, lam), mu_integer(W, 5, lam), m_zero(W, lam, 4))
        # the computed values are themselves cross-checked against the Pluecker brute force
        c.add(f"four collinear r={r} brute force", got[:2] == (plucker_mu(gens, 4, lam.weights),
                                                             plucker_mu(gens, 5, lam.weights)))
        c.add(f"four collinear r={r} printed={tuple(map(str, printed))} computed={tuple(map(str, got))}",
              got == printed)
    for k in (3, 4, 5):
        Wc = conic_witness(2 * k)
        c.add(f"conic k={k} mu_k = k", mu_integer(Wc, k, LAMBDA_0) == k)
        c.add(f"conic k={k} mu_k+1 = 3k", mu_integer(Wc, k + 1, LAMBDA_0) == 3 * k)
        c.add(f"conic k={k} mu at k-1/2 = 0", mu(Wc, k - Fraction(1, 2), LAMBDA_0, k) == 0)
    c.finish()


# ------------------------------------------------------------ 3

def test_criterion_3_wall_tables():
    c = Checks(3)
    c.add("m_curvilinear(5,3) = 3", m_curvilinear(5, 3) == 3)
    c.add("m_curvilinear(7,4) = 9/2", m_curvilinear(7, 4) == Fraction(9, 2))
    c.add("m_collinear(7,4,2) = 3", m_collinear(7, 4, 2) == 3)
    c.add("m_conic(7) = 3", m_conic(7) == 3)
    c.add("m_conic(5) = 2", m_conic(5) == 2)
    for n in (5, 7, 8, 10, 11):
        lw = largest_git_wall(n)
        l = (2 * n) // 3
        c.add(f"largest n={n} value", lw.l == l and lw.m == Fraction(3 * (n - l) * (n - l - 1), 2 * (2 * n - 3 * l)))
        c.add(f"largest n={n} interior flag", lw.interior == (n >= 11 or n == 8))
    for n in (6, 9, 12):
        try:
            largest_git_wall(n)
            c.add(f"n={n} divisible by three errors", False)
        except DivisibleByThree:
            c.add(f"n={n} divisible by three errors", True)
    c.finish()


# ------------------------------------------------------------ 4

def test_criterion_4_wall_witnesses():
    c = Checks(4)
    tenth = Fraction(1, 10)
    for n, l in [(5, 3), (7, 4), (8, 4), (9, 5)]:
        m_l = m_curvilinear(n, l)
        W = witness(curvilinear_record(n, l), seed=n)
        c.add(f"({n},{l}) mu at m_l = 0", mu(W, m_l, LAMBDA_1, l) == 0)
        # (i): curvilinear plus generic points is unstable above the wall
        Zs, lam, expected = curvilinear_configuration(n, l, seed=n, case="i")
        c.add(f"({n},{l}) (i) unstable above", mu(Zs, m_l + tenth, lam, l) > 0 > mu(Zs, m_l - tenth, lam, l))
        c.add(f"({n},{l}) (i) semistable at wall", mu(Zs, m_l, lam, l) == 0)
        c.add(f"({n},{l}) (i) flat limit is the witness", same_ideal(flat_limit(Zs, lam), expected))
        # (ii): two collinear groups are unstable below the wall
        Zs, lam, expected = curvilinear_configuration(n, l, seed=n, case="ii")
        c.add(f"({n},{l}) (ii) unstable below", mu(Zs, m_l - tenth, lam, l) > 0 > mu(Zs, m_l + tenth, lam, l))
        c.add(f"({n},{l}) (ii) semistable at wall", mu(Zs, m_l, lam, l) == 0)
        c.add(f"({n},{l}) (iii) common limit", same_ideal(flat_limit(Zs, lam), expected))
    rec = collinear_record(7, 4, 2)
    W = collinear_witness(7, 4, 2, [1, 2, 3, 4])
    lam = rec.destabilizer
    c.add("(7,4,2) mu at wall = 0", mu(W, rec.m_star, lam, 4) == 0)
    c.add("(7,4,2) sign change", mu(W, rec.m_star - tenth, lam, 4) > 0 > mu(W, rec.m_star + tenth, lam, 4))
    for case in ("i", "ii"):
        Zs, lam_c, expected = collinear_configuration(7, 4, 2, seed=5, case=case)
        c.add(f"(7,4,2) case {case} flat limit", same_ideal(flat_limit(Zs, lam_c), expected))
    c.finish()


# ------------------------------------------------------------ 5

def _lowest_cells(w, n):
    pts = sorted((a * w[0] + b * w[1], (a, b)) for a in range(n + 1) for b in range(n + 1))
    return {p for _, p in pts[:n]}


def _standard_cells(Zs, D):
    idx = monomial_index(D)
    piece = Zs.ideal.graded_piece(D)
    return {(a, b) for a in range(D + 1) for b in range(D + 1 - a)
            if not piece.contains({idx[(D - a - b, a, b)]: 1})}


def test_criterion_5_corner_cut():
    c = Checks(5)
    w = chart_weight(Fraction(-1, 2) - EPSILON)
    lam = lambda_below_half()
    for n in range(3, 9):
        M = corner_cut(w, n)
        I = corner_cut_ideal(M)
        c.add(f"n={n} corner cut matches sorted lattice points", set(M.cells) == _lowest_cells(w, n))
        c.add(f"n={n} corner-cut ideal has those standard monomials", _standard_cells(I, n + 1) == set(M.cells))
        for seed in range(20):
            Zs = reduced_points(generic_points(n, random.Random(1000 * n + seed)))
            F = flat_limit(Zs, lam)
            c.add(f"n={n} seed={seed} limit", same_ideal(F, I))
            c.add(f"n={n} seed={seed} colength", F.ideal.colength() == n)
    c.add("under 60s", time.perf_counter() - c.t0 < 60)
    c.finish()


# ------------------------------------------------------------ 6

def test_criterion_6_bridgeland():
    c = Checks(6)
    c.add("catalog(5) slopes {4,3,2}", {w.divisor_m for w in br.walls_catalog(5)} == {4, 3, 2})
    for n in range(5, 11):
        v = br.ideal_character(n)
        w0 = br.numerical_wall(v, br.line_bundle(-2))
        c.add(f"n={n} O(-2) wall center", w0.center == Fraction(-n, 2) - 1)
        c.add(f"n={n} O(-2) wall radius", w0.radius_sq == Fraction(n * n, 4) - n + 1)
        for l in range((n + 2) // 2, n + 1):
            wall = br.numerical_wall(v, br.twisted_ideal_minus_one(n - l))
            c.add(f"n={n} l={l} center", wall.center == -l - Fraction(1, 2))
        for cw in br.walls_catalog(n):
            s, rho2 = cw.wall.center, cw.wall.radius_sq
            c.add(f"n={n} m={cw.divisor_m} rho^2+s^2=2n (computed {rho2 + s * s})", rho2 + s * s == 2 * n)
    for n, expected in ((5, "boundary"), (6, "boundary"), (7, "outside"), (20, "outside")):
        c.add(f"d2_effective({n})", br.d2_effective(n) == expected)
    c.finish()


# ------------------------------------------------------------ 7

def test_criterion_7_quiver():
    c = Checks(7)
    for n in range(4, 11):
        t1, t2 = qv.characters(n)
        printed = {1: (n * (n - 1), (n - 3) * (n - 1)), 2: (n * n - 4 * n + 6, (n - 3) * (n - 4)),
                   3: (n * n - 7 * n + 15, n * n - 10 * n + 27)}
        for locus in (1, 2, 3):
            if locus == 3 and n < 6:
                continue
            rep = qv.locus_report(locus, n)
            c.add(f"n={n} locus {locus} relations", rep.rep.relations_hold())
            c.add(f"n={n} locus {locus} fixed by lambda'", rep.fixed)
            lam = qv.lambda_prime(locus, n)
            c.add(f"n={n} locus {locus} pairings", (qv.mu_quiver(t1, lam), qv.mu_quiver(t2, lam)) == printed[locus])
        th2 = -Fraction((n * n - 10 * n + 18) * (n - 1), 6 * (n - 2))
        r2 = qv.locus_report(2, n).threshold
        c.add(f"n={n} locus 2 threshold", r2 == th2 and r2 < 2)
        if n >= 6:
            th3 = -Fraction((n * n - 13 * n + 39) * (n - 1), 6 * (n - 4))
            r3 = qv.locus_report(3, n).threshold
            c.add(f"n={n} locus 3 threshold", r3 == th3 and r3 < 2)
    c.finish()


# ------------------------------------------------------------ 8

PRINTED_WEIGHTS = [
    lambda r: r + 3, lambda r: 2 * r + 2, lambda r: 3 * r + 1, lambda r: -r + 2, lambda r: -2 * r,
    lambda r: -3 * r - 2, lambda r: 1, lambda r: 1, lambda r: r, lambda r: r, lambda r: -r - 1,
    lambda r: -r - 1, lambda r: 2 * r - 1, lambda r: -2, lambda r: -2 * r - 3,
]


def test_criterion_8_final_model():
    c = Checks(8)
    c.add("15 sections", len(f7.BASIS) == 15)
    c.add("Euler relation", all(e.euler().is_zero() for e in f7.BASIS))
    for r in (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(1, 3)):
        A, q = f7.lambda_r_at(r, 2)
        ok = True
        for i, e in enumerate(f7.BASIS):
            img = f7.coordinates(f7.act(A, e))
            exp = [Fraction(0)] * 15
            exp[i] = Fraction(2) ** (q * PRINTED_WEIGHTS[i](r))
            ok = ok and img == exp
        c.add(f"weights via the action r={r}", ok)
    for w in (Fraction(2), Fraction(1, 2), Fraction(-3)):
        rep = f7.minimal_orbit(w)
        c.add(f"I_w decomposition w={w}", isinstance(rep.ideal, PointScheme) and rep.matches_printed)
        c.add(f"max mu14(s_w) = 0 w={w}", rep.max_mu == 0)
        c.add(f"T-involution w={w}", f7.orbit_target(f7.T_MATRIX, w) == -w - 1)
        c.add(f"lambda_0 stabilizes w={w}", f7.orbit_target(f7.lambda0(3), w) == w)
    for w in (Fraction(0), Fraction(-1), f7.INF_W):
        rep = f7.minimal_orbit(w)
        c.add(f"s_{w} non-ideal with printed decomposition", isinstance(rep.ideal, f7.NonIdealFlag) and rep.matches_printed)
    c.add("S stabilizes s_inf", f7.orbit_target(f7.S_MATRIX, f7.INF_W) == f7.INF_W)
    c.add("lambda_0 T maps s_2 to s_-3",
          f7.orbit_target(mat_mul(f7.lambda0(Fraction(1, 2)), f7.T_MATRIX), Fraction(2)) == Fraction(-3))
    c.add("unstable_pattern on x1", f7.unstable_pattern(f7.family_x1(1).coords) == "unstable")
    c.add("unstable_pattern on x2", f7.unstable_pattern(f7.family_x2(1, 2).coords) == "unstable")
    support = [1, 1, 1, 1, 1, 0, 1, 1] + [0] * 7
    for k in range(1, 12):
        r = Fraction(-1, 3) + Fraction(k, 36)
        branch = min(r + 3, 2 * r + 2, 3 * r + 1, -r + 2, -2 * r, 1, 1)
        c.add(f"branch on (-1/3,0) r={r}", f7.mu14(support, r) == branch > 0)
    best, arg = f7.mu14(support)
    c.add("diagonal scan positive inside (-1/3,0)", best > 0 and Fraction(-1, 3) < arg < 0)
    c.finish()


# ------------------------------------------------------------ 9

def _greedy_matches_pluecker(W, lam, d):
    gens = W.ideal.generators
    return all(mu_integer(W, m, lam) == plucker_mu(gens, m, lam.weights) for m in (d, d + 1))


def test_criterion_9_classification():
    c = Checks(9)
    for kind in N5_CLASSES:
        for seed in range(20):
            Zs = n5_sample(kind, seed)
            for ch in (CHAMBER_HIGH, CHAMBER_LOW):
                v = n5_classify(Zs, ch, seed=seed)
                tag = f"{kind} seed={seed} {ch}"
                c.add(f"{tag} verdict", v.status == EXPECTED_N5[kind][ch])
                if v.status == "unstable":
                    cert = v.certificate
                    c.add(f"{tag} certificate replays", cert is not None and cert.replay(Zs) == cert.mu > 0)
                    W = Zs.transform(cert.conjugation)
                    c.add(f"{tag} greedy = Pluecker", _greedy_matches_pluecker(W, cert.lam, cert.base_degree))
                else:
                    # stable verdicts carry scan evidence; replay it in the identity frame
                    sc = destabilize_diagonal(Zs, v.m)
                    c.add(f"{tag} scan replays", sc.max_mu < 0 and sc.max_mu <= v.evidence["max_diagonal_mu"])
                    c.add(f"{tag} greedy = Pluecker", _greedy_matches_pluecker(Zs, sc.argmax, sc.base_degree))
    c.add("under 120s", time.perf_counter() - c.t0 < 120)
    c.finish()


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    bad = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            bad += 1
    sys.exit(1 if bad else 0)
