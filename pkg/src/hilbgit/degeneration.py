"""Flat limits under diagonal one-parameter subgroups, and corner cuts."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Echelon, Poly, Subspace, Y, Z, monomials, to_q
from .git import OneParamSubgroup, _as_lambda
from .ideals import (
    HomogeneousIdeal, NotZeroDimensional, PointScheme, SupportHint, graded,
    normalize_point, saturate,
)


class WallWeight(ValueError):
    pass


class NotTriangular(ValueError):
    pass


EPSILON = Fraction(1, 100)


def initial_form(f: Poly, lam) -> Poly:
    """Terms of f of minimal lambda-weight."""
    lam = _as_lambda(lam)
    if f.is_zero():
        raise ValueError("initial form of the zero polynomial")
    w = {e: lam.weight(e) for e in f.terms}
    low = min(w.values())
    return Poly(f.degree, {e: c for e, c in f.terms.items() if w[e] == low})


def _initial_rows(rows: Sequence[dict], weights: Sequence[Fraction], lowest: bool) -> list:
    """Weight-block echelon: leading blocks of a row space.

    Columns are ordered by weight (ascending for ``lowest``), the rows are
    brought to echelon form in that order and each row is replaced by its
    projection onto the weight block containing its pivot.
    """
    N = len(weights)
    order = sorted(range(N), key=lambda j: (weights[j], j), reverse=not lowest)
    pos = {j: p for p, j in enumerate(order)}
    ech = Echelon(N, ({pos[j]: c for j, c in r.items()} for r in rows))
    out = []
    for p, row in ech.rows.items():
        wp = weights[order[p]]
        out.append({order[q]: c for q, c in row.items() if weights[order[q]] == wp})
    return out


def initial_subspace(S: Subspace, weights: Sequence[Fraction]) -> Subspace:
    """Limit of t . S as t -> 0 where column j scales by t^{weights[j]}.

    Computed on whichever of S and its annihilator is smaller; the limit of
    the annihilator is taken with highest weights.
    """
    if S.dim <= S.ncols - S.dim:
        return Subspace(S.ncols, _initial_rows(S.basis(), weights, lowest=True))
    ann = _initial_rows(S.annihilator().basis(), weights, lowest=False)
    return Subspace.from_annihilator(S.ncols, ann)


def degree_weights(m: int, lam: OneParamSubgroup) -> list:
    return [lam.weight(e) for e in monomials(m)]


def limit_point(p: Sequence, lam: OneParamSubgroup) -> tuple:
    """lim lambda(t) . p; points scale by t^{-lambda_i}."""
    p = normalize_point(p)
    top = max(w for w, c in zip(lam.weights, p) if c != 0)
    return normalize_point([c if (c != 0 and w == top) else 0 for w, c in zip(lam.weights, p)])


def flat_limit(Z: PointScheme, lam, cap: int | None = None) -> PointScheme:
    """Saturated flat limit of Z under lambda(t), t -> 0."""
    lam = _as_lambda(lam)
    if lam.is_trivial():
        raise ValueError("flat limit needs a nontrivial subgroup")
    n = Z.length
    cap = n + 3 if cap is None else cap
    src = Z.ideal
    pieces: dict = {}

    def piece(m: int) -> Subspace:
        if m not in pieces:
            pieces[m] = initial_subspace(src.graded_piece(m), degree_weights(m, lam))
        return pieces[m]

    raw = graded(piece, cap)
    try:
        sat = saturate(raw, n, cap=cap)
    except NotZeroDimensional as exc:
        raise NotZeroDimensional(f"flat limit lost flatness: {exc}") from exc
    I = HomogeneousIdeal(sat.generators)
    merged: dict = {}
    for h in Z.support:
        q = limit_point(h.point, lam)
        merged[q] = merged.get(q, 0) + h.mult
    hints = [SupportHint(p, k) for p, k in merged.items()]
    return PointScheme(I, n, hints, f"limit of {Z.name}".strip())


# ------------------------------------------------------------ corner cuts

@dataclass(frozen=True)
class CornerCut:
    n: int
    cells: frozenset
    weight: tuple

    def staircase(self) -> list:
        """Minimal lattice points of the complement, by increasing z-exponent."""
        cols: dict = {}
        for a, b in self.cells:
            cols[b] = cols.get(b, 0) + 1
        out = []
        prev = None
        b = 0
        while True:
            a = cols.get(b, 0)
            if prev is None or a < prev:
                out.append((a, b))
            if a == 0:
                break
            prev = a
            b += 1
        return out


def is_order_ideal(cells) -> bool:
    s = set(cells)
    return all((a - 1, b) in s for a, b in s if a > 0) and all((a, b - 1) in s for a, b in s if b > 0)


def corner_cut(w: Sequence, n: int) -> CornerCut:
    """The n lowest-weight lattice points, if strictly separated from the rest."""
    w1, w2 = (to_q(v) for v in w)
    if w1 < 0 or w2 < 0:
        raise ValueError("corner-cut weights must be non-negative")
    if n < 1:
        raise ValueError("n must be positive")
    pts = sorted(((a * w1 + b * w2, (a, b)) for a in range(n + 1) for b in range(n + 1)))
    if pts[n - 1][0] == pts[n][0]:
        raise WallWeight(f"weight {w1},{w2} ties at the cut for n = {n}")
    cells = frozenset(p for _, p in pts[:n])
    if not is_order_ideal(cells):
        raise WallWeight("lowest-weight cells do not form an order ideal")
    return CornerCut(n, cells, (w1, w2))


def chart_weight(r) -> tuple:
    """Affine weight (1 - r, r + 2) of lambda_r in the chart x != 0."""
    r = to_q(r)
    return (1 - r, r + 2)


def monomial_point_scheme(gens: Sequence[Poly], n: int, name: str) -> PointScheme:
    I = HomogeneousIdeal(gens)
    Zs = PointScheme(I, n, [SupportHint((Fraction(1), Fraction(0), Fraction(0)), n)], name)
    return Zs.validate()


def corner_cut_ideal(M: CornerCut) -> PointScheme:
    """Monomial ideal in y, z (supported at (1:0:0)) generated by the staircase."""
    gens = [Y ** a * Z ** b for a, b in M.staircase()]
    return monomial_point_scheme(gens, M.n, "corner cut")


def triangular_decomposition(n: int) -> tuple:
    """n = Delta(s) + k with 0 <= k <= s."""
    s = 0
    while (s + 1) * (s + 2) // 2 <= n:
        s += 1
    return s, n - s * (s + 1) // 2


def generic_limit(n: int, eps=EPSILON) -> PointScheme:
    """Limit of n generic points under lambda_{-1/2 - eps} (eps > 0) or lambda_{-1/2}."""
    s, k = triangular_decomposition(n)
    if to_q(eps) == 0 and k != 0:
        raise NotTriangular(f"{n} is not a triangular number")
    gens = []
    for i in range(s + 1):
        if i <= s - k:
            gens.append(Y ** (s - i) * Z ** i)
        else:
            gens.append(Y ** (s - i) * Z ** (i + 1))
    return monomial_point_scheme(gens, n, "generic limit")


def lambda_below_half(eps=EPSILON) -> OneParamSubgroup:
    """lambda_{-1/2 - eps}."""
    return OneParamSubgroup.normalized(Fraction(-1, 2) - to_q(eps))


def same_ideal(A: PointScheme, B: PointScheme, up_to: int | None = None) -> bool:
    d = up_to if up_to is not None else max(A.length, B.length) + 1
    return A.ideal.equal_up_to(B.ideal, d)
