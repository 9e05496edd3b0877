from fractions import Fraction

import pytest

from hilbgit.quiver import (
    QuiverRep, TooLarge, ZeroExtension, characters, fixes, identity_param, lambda_prime, locus_report,
    mu_quiver, pair, rep_ideal_point, rep_line_bundle_shift, rep_locus1, rep_locus2, rep_locus3,
    subrep_check, threshold_m,
)


def expected_pairings(locus, n):
    return {1: (n * (n - 1), (n - 3) * (n - 1)),
            2: (n * n - 4 * n + 6, (n - 3) * (n - 4)),
            3: (n * n - 7 * n + 15, n * n - 10 * n + 27)}[locus]


def expected_threshold(locus, n):
    if locus == 2:
        return -Fraction((n * n - 10 * n + 18) * (n - 1), 6 * (n - 2))
    return -Fraction((n * n - 13 * n + 39) * (n - 1), 6 * (n - 4))


def loci(n):
    out = [1, 2]
    if n >= 6:
        out.append(3)
    return out


@pytest.mark.parametrize("n", range(4, 11))
def test_relations_and_fixed_points(n):
    assert rep_line_bundle_shift(n).relations_hold()
    for locus in loci(n):
        rep = locus_report(locus, n).rep
        assert rep.relations_hold()
        assert rep.dims == (n, n - 1, n - 3)
        assert fixes(rep, lambda_prime(locus, n))


def test_relations_hold_for_other_extension_vectors():
    assert rep_locus2(7, [2, 0, -1, 5]).relations_hold()
    assert rep_locus3(8, [0, 3, Fraction(1, 2), 1]).relations_hold()


@pytest.mark.parametrize("n", range(4, 11))
def test_pairings(n):
    t1, t2 = characters(n)
    assert pair(t1, (n, n - 1, n - 3)) == 0 and pair(t2, (n, n - 1, n - 3)) == 0
    for locus in loci(n):
        lam = lambda_prime(locus, n)
        assert (mu_quiver(t1, lam), mu_quiver(t2, lam)) == expected_pairings(locus, n)


@pytest.mark.parametrize("n", range(4, 11))
def test_thresholds_below_two(n):
    for locus in loci(n):
        if locus == 1:
            continue
        rep = locus_report(locus, n)
        assert rep.threshold == expected_threshold(locus, n)
        assert rep.threshold < 2


def test_threshold_interpolation_vanishes():
    n = 7
    hi, lo = expected_pairings(2, n)
    # with mu at D_{n-1} and D_{(n-1)/2} known, the interpolated index vanishes at the threshold
    m = threshold_m(n, hi, lo)
    a = (m - Fraction(n - 1, 2)) / (Fraction(n - 1) - Fraction(n - 1, 2))
    assert a * hi + (1 - a) * lo == 0


def test_trivial_lambda_fixes_everything():
    rep = rep_locus2(6, [1, 1, 1])
    assert fixes(rep, identity_param(rep.dims))


@pytest.mark.parametrize("n", [6, 7, 8])
def test_each_lambda_fixes_only_its_own_locus(n):
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            if a != b:
                assert not fixes(locus_report(a, n).rep, lambda_prime(b, n))


def test_zero_extension_rejected():
    with pytest.raises(ZeroExtension):
        rep_locus2(6, [0, 0, 0])
    with pytest.raises(ValueError):
        rep_locus3(7, [1, 1])


def test_non_commuting_rep_detected():
    one = [[Fraction(1)]]
    zero = [[Fraction(0)]]
    rep = QuiverRep((1, 1, 1), (one, zero, zero), (zero, one, zero))
    assert not rep.relations_hold()


# King stability on small examples with hand-derived subrepresentation lattices

def test_ideal_point_is_stable():
    rep = rep_ideal_point()
    # subreps: 0, (0,1,0), (1,1,0); theta = (1,-1,0) pairs to 0, -1, 0
    assert subrep_check(rep, (1, -1, 0)) is None
    assert subrep_check(rep, (1, -1, 0), strict=True) is None


def test_kernel_of_a_gives_vertex_one_subrep():
    zero = [[Fraction(0)]]
    rep = QuiverRep((1, 1, 0), (zero, zero, zero), ([], [], []))
    hit = subrep_check(rep, (1, -1, 0))
    assert hit is not None and hit.dims == (1, 0, 0)


def test_locus1_at_four():
    rep = rep_locus1(4)
    t1, t2 = characters(4)
    assert subrep_check(rep, t1) is None
    hit = subrep_check(rep, t2)
    assert hit is not None and hit.dims == (0, 1, 0) and hit.theta_value == 1


def test_subrep_limit():
    with pytest.raises(TooLarge):
        subrep_check(rep_locus1(6), characters(6)[0])
