import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbgit.exact import X, Y, Z, identity
from hilbgit.git import (
    INDETERMINATE, INF, HilbertPointUndefined, OneParamSubgroup, chow_stability,
    curve_criterion, destabilize_diagonal, lam_ab, lam_r, m_zero, mu, mu_integer, mu_integer_primal,
    multiplicity_at, parse_m, scan_polytopes, shear_matrix, state_polytope,
)
from hilbgit.ideals import Cycle, from_generators, generic_points, reduced_points

from oracles import plucker_mu

TRIPLE = [X * Z + Y ** 2, X ** 2 * Y + X * Y * Z, X ** 3 + X ** 2 * Z]


def _schemes():
    rng = random.Random(11)
    return [
        from_generators(TRIPLE, 5, name="triple point"),
        reduced_points(generic_points(5, rng), "generic"),
        reduced_points([(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 0, 1), (1, 1, 0)], "three collinear"),
        from_generators([X, Y ** 3 - Z ** 3], 3, name="three on a line"),
    ]


SCHEMES = _schemes()
rats = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@pytest.mark.parametrize("Zs", SCHEMES, ids=lambda s: s.name)
@pytest.mark.parametrize("m", [4, 5])
def test_greedy_mu_equals_plucker_minimum(Zs, m):
    for w in [(1, 0, -1), (1, 1, -2), (2, -1, -1), (Fraction(1, 3), Fraction(1, 2), Fraction(-5, 6)), (-1, 3, -2)]:
        lam = OneParamSubgroup(*w)
        expect = plucker_mu(Zs.ideal.generators, m, lam.weights)
        assert mu_integer(Zs, m, lam) == expect
        assert mu_integer_primal(Zs, m, lam) == expect


@given(a=rats, b=rats)
@settings(max_examples=40, deadline=None)
def test_dual_and_primal_greedy_agree(a, b):
    Zs = SCHEMES[0]
    lam = lam_ab(a, b)
    assert mu_integer(Zs, 4, lam) == mu_integer_primal(Zs, 4, lam)


@given(a=rats, b=rats)
@settings(max_examples=40, deadline=None)
def test_state_polytope_support_function(a, b):
    Zs = SCHEMES[2]
    P = state_polytope(Zs, 4)
    lam = lam_ab(a, b)
    assert P.mu(lam) == mu_integer(Zs, 4, lam)


def test_state_polytope_of_triple_point():
    # coordinates of each vertex sum to m * dim H^0(I(m))
    Zs = SCHEMES[0]
    P = state_polytope(Zs, 3)
    assert set(P.vertices) == {(9, 2, 4), (5, 6, 4), (6, 8, 1), (4, 8, 3)}
    for v in P.vertices:
        assert sum(v) == 3 * P.dim


def test_hilbert_point_undefined():
    Zs = SCHEMES[0]
    with pytest.raises(HilbertPointUndefined):
        mu_integer(Zs, 1, lam_r(0))


def test_mu_interpolation_and_m0():
    Zs = SCHEMES[0]
    lam = lam_r(0)
    a, b = mu_integer(Zs, 3, lam), mu_integer(Zs, 4, lam)
    assert mu(Zs, Fraction(7, 2), lam, 3) == (a + b) / 2
    assert mu(Zs, "inf", lam, 3) == b - a
    assert m_zero(Zs, lam, 3) == 3 + a / (a - b)
    assert mu(Zs, m_zero(Zs, lam, 3), lam, 3) == 0


def test_m0_special_values():
    Zs = reduced_points([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert m_zero(Zs, OneParamSubgroup(0, 0, 0), 2) is INDETERMINATE
    assert parse_m("inf") is INF and parse_m("5/2") == Fraction(5, 2)


def _pairwise_scan(P_d, P_d1, m, d):
    """Exhaustive oracle: every pairwise crossing of vertex functionals is a candidate."""
    best = None
    for perm in permutations(range(3)):
        cands = {Fraction(-1, 2), Fraction(1)}
        funcs = []
        for P in (P_d, P_d1):
            fs = []
            for v in P.vertices:
                def f(r, v=v, perm=perm):
                    w = (Fraction(1), r, -1 - r)
                    return sum(w[perm.index(i)] * v[i] for i in range(3))
                fs.append((f(Fraction(0)), f(Fraction(1)) - f(Fraction(0))))
            funcs.append(fs)
            for i in range(len(fs)):
                for j in range(i + 1, len(fs)):
                    (a1, b1), (a2, b2) = fs[i], fs[j]
                    if b1 != b2:
                        r = (a2 - a1) / (b1 - b2)
                        if Fraction(-1, 2) <= r <= 1:
                            cands.add(r)
        for r in cands:
            ma = min(a + b * r for a, b in funcs[0])
            mb = min(a + b * r for a, b in funcs[1])
            val = (d + 1 - m) * ma + (m - d) * mb
            best = val if best is None else max(best, val)
    return best


@pytest.mark.parametrize("Zs", SCHEMES[:3], ids=lambda s: s.name)
@pytest.mark.parametrize("m", [Fraction(5, 2), Fraction(4), Fraction(9, 2), Fraction(6)])
def test_scan_matches_pairwise_oracle(Zs, m):
    d = 4
    P, Q = state_polytope(Zs, d), state_polytope(Zs, d + 1)
    best, lam = scan_polytopes(P, Q, m, d)
    assert best == _pairwise_scan(P, Q, m, d)
    assert mu(Zs, m, lam, d) == best


def test_certificate_replays_after_conjugation():
    Zs = SCHEMES[0]
    A = [[Fraction(v) for v in r] for r in ([1, 2, 0], [0, 1, 0], [3, 0, 1])]
    W = Zs.transform(A)
    sc = destabilize_diagonal(W, 4, 4, conjugation=[[Fraction(v) for v in r] for r in ([1, -2, 0], [0, 1, 0], [-3, 6, 1])])
    # the conjugation undoes A, so the triple point is back in normal form and unstable
    assert sc.certificate is not None
    assert sc.certificate.replay(W) == sc.max_mu > 0
    js = sc.certificate.to_json()
    assert set(js) == {"lambda", "conjugation", "mu", "base_degree", "m"}


def test_generic_points_have_no_diagonal_destabilizer_at_large_m():
    Zs = SCHEMES[1]
    sc = destabilize_diagonal(Zs, 6, 4)
    assert sc.max_mu < 0 and sc.certificate is None


def test_shear_matrix_shapes():
    assert shear_matrix(0) == identity()
    U = shear_matrix(Fraction(2), "upper")
    L = shear_matrix(Fraction(2), "lower")
    assert U != L


def test_chow_criterion():
    c = Cycle([((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1)])
    assert chow_stability(c).status == "strictly-semistable"
    c = Cycle([((0, 1, 1), 1), ((0, 2, 1), 1), ((0, 3, 1), 1)])
    assert chow_stability(c).status == "unstable"
    pts = generic_points(5, random.Random(3))
    assert chow_stability(Cycle([(p, 1) for p in pts])).status == "stable"
    c = Cycle([((0, 0, 1), 2), ((1, 0, 0), 1), ((0, 1, 0), 1), ((1, 1, 1), 1)])
    assert chow_stability(c).status == "unstable"


def test_multiplicity_and_curve_criterion():
    assert multiplicity_at(X * Y + Z ** 2, (1, 0, 0)) == 1
    assert multiplicity_at(X * Y * Z, (0, 0, 1)) == 2
    fat = from_generators([X ** 2, X * Y, Y ** 2], 3, [((0, 0, 1), 3)])
    hit = curve_criterion(fat, 2)
    assert hit is not None and hit["multiplicity"] > hit["bound"]
