from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbgit import final7 as f7
from hilbgit.exact import SingularMatrixError, mat_mul, matrix
from hilbgit.ideals import DegenerateParameters, PointScheme

rats = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def oracle_weight(e: f7.Section, r) -> Fraction:
    """Weight of a monomial section: lambda . exponent plus the weight of its slot."""
    lam = (Fraction(1), Fraction(r), -1 - Fraction(r))
    for k, p in enumerate(e):
        if not p.is_zero():
            (exp, _), = list(p.terms.items())[:1]
            return sum(a * b for a, b in zip(lam, exp)) + lam[k]
    raise AssertionError("zero section")


def test_basis_is_fifteen_euler_sections():
    assert len(f7.BASIS) == 15
    assert all(e.euler().is_zero() for e in f7.BASIS)
    # linearly independent: coordinates of each basis element are the unit vectors
    for i, e in enumerate(f7.BASIS):
        assert f7.coordinates(e) == [Fraction(int(j == i)) for j in range(15)]


@pytest.mark.parametrize("r", [Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(2, 5), Fraction(-1, 3)])
def test_weights_match_oracle(r):
    assert f7.weights(r) == [oracle_weight(e, r) for e in f7.BASIS]


@pytest.mark.parametrize("r", [Fraction(1, 2), Fraction(-1, 3)])
def test_weights_via_the_action(r):
    A, q = f7.lambda_r_at(r, 3)
    for i, e in enumerate(f7.BASIS):
        c = f7.coordinates(f7.act(A, e))
        assert c[i] == Fraction(3) ** (q * f7.weights(r)[i])
        assert sum(1 for x in c if x) == 1


def test_euler_violation_and_singular_action():
    with pytest.raises(f7.EulerViolation):
        f7.Section(f7.X, f7.Y, f7.Z).validate()
    with pytest.raises(SingularMatrixError):
        f7.act(matrix([[1, 0, 0], [0, 0, 0], [0, 0, 1]]), f7.BASIS[0])
    with pytest.raises(ValueError):
        f7.section([1, 2, 3])


@given(st.lists(rats, min_size=15, max_size=15))
@settings(max_examples=25, deadline=None)
def test_coordinates_roundtrip(cs):
    assert f7.coordinates(f7.section(cs)) == [Fraction(c) for c in cs]


def test_action_is_a_group_action():
    A = matrix([[1, 2, 0], [0, 1, -1], [1, 0, 1]])
    B = matrix([[2, 0, 1], [1, 1, 0], [0, 3, 1]])
    s = f7.section(list(range(1, 16)))
    assert f7.coordinates(f7.act(A, f7.act(B, s))) == f7.coordinates(f7.act(mat_mul(A, B), s))


def test_mu14_against_dense_grid():
    coords = [1, 1, 1, 1, 1, 0, 1, 1] + [0] * 7
    best, arg = f7.mu14(coords)
    assert f7.mu14(coords, arg) == best
    grid = [Fraction(-1, 2) + Fraction(k, 240) for k in range(361)]
    assert max(f7.mu14(coords, r) for r in grid) <= best


def test_mu14_zero_vector():
    with pytest.raises(ValueError):
        f7.mu14([0] * 15)


def test_unstable_pattern_support_test():
    assert f7.unstable_pattern([1] * 5 + [0] * 10) == "unstable"
    assert f7.unstable_pattern([0] * 14 + [1]) == "inconclusive"
    a = [0] * 15
    a[4] = a[8] = 1
    assert f7.unstable_pattern(a) == "non-stable"


@pytest.mark.parametrize("w", [Fraction(2), Fraction(1, 2), Fraction(-3), Fraction(5, 7)])
def test_minimal_orbit_generic_w(w):
    rep = f7.minimal_orbit(w)
    assert isinstance(rep.ideal, PointScheme) and rep.matches_printed
    assert rep.max_mu == 0
    assert f7.orbit_target(f7.T_MATRIX, w) == -w - 1
    assert f7.orbit_target(f7.lambda0(Fraction(5)), w) == w


@pytest.mark.parametrize("w", [Fraction(0), Fraction(-1), f7.INF_W])
def test_minimal_orbit_non_ideal(w):
    rep = f7.minimal_orbit(w)
    assert isinstance(rep.ideal, f7.NonIdealFlag) and rep.matches_printed


def test_s_fixes_infinity_and_t_is_an_involution():
    assert f7.orbit_target(f7.S_MATRIX, f7.INF_W) == f7.INF_W
    T2 = mat_mul(f7.T_MATRIX, f7.T_MATRIX)
    assert f7.orbit_target(T2, Fraction(3)) == Fraction(3)


@pytest.mark.parametrize("u", [Fraction(1), Fraction(-2), Fraction(3, 4)])
def test_family_x1(u):
    m = f7.family_x1(u)
    assert m.agrees
    assert f7.unstable_pattern(m.coords) == "unstable"


@pytest.mark.parametrize("t,u", [(1, 1), (2, -1), (Fraction(1, 3), 4)])
def test_family_x2(t, u):
    assert f7.family_x2(t, u).agrees


@pytest.mark.parametrize("u,v,w", [(1, 1, 1), (2, 3, -1), (-1, Fraction(1, 2), 2)])
def test_family_x3(u, v, w):
    m = f7.family_x3(u, v, w)
    assert m.agrees
    assert f7.triple_point_line_length(m) == 2


def test_family_degenerate_parameters():
    with pytest.raises(DegenerateParameters):
        f7.family_x2(0, 1)
    with pytest.raises(DegenerateParameters):
        f7.family_x2(1, -1)
    with pytest.raises(DegenerateParameters):
        f7.family_x3(1, 2, -2)
