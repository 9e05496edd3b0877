"""Representations of the Beilinson quiver and their King-stability pairings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Echelon, to_q
from .git import INDETERMINATE, INF


class ZeroExtension(ValueError):
    pass


class TooLarge(ValueError):
    pass


SL3_WEIGHTS = (Fraction(-1), Fraction(-1), Fraction(2))
VARS = ("x", "y", "z")


def zeros(r: int, c: int) -> list:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(A: list, B: list, inner: int) -> list:
    rows, cols = len(A), (len(B[0]) if B else 0)
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(rows)]


@dataclass
class QuiverRep:
    dims: tuple
    A: tuple  # (A_x, A_y, A_z), each d2 x d1
    B: tuple  # (B_x', B_y', B_z'), each d3 x d2

    def __post_init__(self):
        d1, d2, d3 = self.dims
        for M in self.A:
            if len(M) != d2 or any(len(r) != d1 for r in M):
                raise ValueError("A matrices must be d2 x d1")
        for M in self.B:
            if len(M) != d3 or any(len(r) != d2 for r in M):
                raise ValueError("B matrices must be d3 x d2")

    def relations(self) -> dict:
        """Residuals of y'x - x'y, z'x - x'z, z'y - y'z (as matrices)."""
        d2 = self.dims[1]
        out = {}
        for (i, j), name in (((1, 0), "y'x=x'y"), ((2, 0), "z'x=x'z"), ((2, 1), "z'y=y'z")):
            P = matmul(self.B[i], self.A[j], d2)
            Q = matmul(self.B[j], self.A[i], d2)
            out[name] = [[p - q for p, q in zip(rp, rq)] for rp, rq in zip(P, Q)]
        return out

    def relations_hold(self) -> bool:
        return all(v == 0 for R in self.relations().values() for row in R for v in row)

    def to_json(self) -> dict:
        def enc(M):
            return [[str(v) for v in row] for row in M]
        return {"dims": list(self.dims),
                "A": {v: enc(M) for v, M in zip(VARS, self.A)},
                "B": {v + "'": enc(M) for v, M in zip(VARS, self.B)}}


def _bidiagonal(rows: int, cols: int) -> tuple:
    X = zeros(rows, cols)
    Y = zeros(rows, cols)
    for i in range(rows):
        X[i][i] = Fraction(1)
        Y[i][i + 1] = Fraction(1)
    return X, Y


def rep_line_bundle_shift(n: int) -> QuiverRep:
    """O_L(-n)[1] for L = {z = 0}: bidiagonal x/y blocks, dims (n, n-1, n-2)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    Ax, Ay = _bidiagonal(n - 1, n)
    Bx, By = _bidiagonal(n - 2, n - 1)
    return QuiverRep((n, n - 1, n - 2), (Ax, Ay, zeros(n - 1, n)), (Bx, By, zeros(n - 2, n - 1)))


def rep_ideal_point() -> QuiverRep:
    """I_P(-1)[1] for P = (0:0:1)."""
    return QuiverRep((1, 1, 0), (zeros(1, 1), zeros(1, 1), [[Fraction(1)]]), ([], [], []))


def rep_locus1(n: int) -> QuiverRep:
    """Extension of O(-1) by O_L(-n): O_L(-n)[1] with the last B row removed."""
    if n < 4:
        raise ValueError("n must be at least 4")
    L = rep_line_bundle_shift(n)
    return QuiverRep((n, n - 1, n - 3), L.A, tuple(M[: n - 3] for M in L.B))


def _embed(M: list, rows: int, cols: int, r0: int = 0, c0: int = 0) -> list:
    out = zeros(rows, cols)
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            out[r0 + i][c0 + j] = v
    return out


def _check_a(a: Sequence, length: int) -> list:
    a = [to_q(v) for v in a]
    if len(a) != length:
        raise ValueError(f"extension vector must have length {length}")
    if not any(a):
        raise ZeroExtension("the extension vector must be nonzero")
    return a


def rep_locus2(n: int, a: Sequence) -> QuiverRep:
    """Extension of I_P(-1) by O_L(-n+1), P = (0:0:1), L = {z = 0}."""
    if n < 4:
        raise ValueError("n must be at least 4")
    a = _check_a(a, n - 3)
    L = rep_line_bundle_shift(n - 1)
    d1, d2, d3 = n, n - 1, n - 3
    A = [_embed(M, d2, d1) for M in L.A]
    A[2][d2 - 1][d1 - 1] = Fraction(1)
    B = [_embed(M, d3, d2) for M in L.B]
    for i in range(d3):
        B[2][i][d2 - 1] = a[i]
    return QuiverRep((d1, d2, d3), tuple(A), tuple(B))


def rep_locus3(n: int, a: Sequence) -> QuiverRep:
    """Extension of I_W(-1) by O_L(-n+2) with I_W = (x, y^2)."""
    if n < 6:
        raise ValueError("n must be at least 6")
    a = _check_a(a, n - 4)
    L = rep_line_bundle_shift(n - 2)
    d1, d2, d3 = n, n - 1, n - 3
    A = [_embed(M, d2, d1) for M in L.A]
    A[2][n - 3][n - 2] = Fraction(1)
    A[1][n - 2][n - 2] = Fraction(1)
    A[2][n - 2][n - 1] = Fraction(1)
    B = [_embed(M, d3, d2) for M in L.B]
    for i in range(n - 4):
        B[2][i][n - 3] = a[i]
    B[1][n - 4][n - 3] = Fraction(1)
    B[2][n - 4][n - 2] = Fraction(1)
    return QuiverRep((d1, d2, d3), tuple(A), tuple(B))


def characters(n: int) -> tuple:
    return (n - 1, -n, 0), (0, n - 3, -n + 1)


def pair(theta: Sequence, d: Sequence) -> int:
    return sum(t * v for t, v in zip(theta, d))


@dataclass(frozen=True)
class BlockOneParam:
    blocks: tuple  # three tuples of weights
    sl3: tuple = SL3_WEIGHTS

    def sums(self) -> tuple:
        return tuple(sum(b, Fraction(0)) for b in self.blocks)


def _bop(b1, b2, b3, sl3=SL3_WEIGHTS) -> BlockOneParam:
    return BlockOneParam((tuple(map(to_q, b1)), tuple(map(to_q, b2)), tuple(map(to_q, b3))),
                         tuple(map(to_q, sl3)))


def lambda_prime(locus: int, n: int) -> BlockOneParam:
    if locus == 1:
        return _bop([-1] * n, [0] * (n - 1), [1] * (n - 3))
    if locus == 2:
        return _bop([-1] * (n - 1) + [5], [0] * (n - 2) + [3], [1] * (n - 3))
    if locus == 3:
        return _bop([-1] * (n - 2) + [5, 8], [0] * (n - 3) + [3, 6], [1] * (n - 4) + [4])
    raise ValueError("locus must be 1, 2 or 3")


def identity_param(dims: Sequence) -> BlockOneParam:
    return _bop([0] * dims[0], [0] * dims[1], [0] * dims[2], (0, 0, 0))


def fixes(rep: QuiverRep, lam: BlockOneParam) -> bool:
    """Every nonzero entry of weight w_v from vertex j to vertex i has g_i - g_j + w_v = 0."""
    g1, g2, g3 = lam.blocks
    if (len(g1), len(g2), len(g3)) != tuple(rep.dims):
        raise ValueError("block lengths must match the dimension vector")
    for src, tgt, mats in ((g1, g2, rep.A), (g2, g3, rep.B)):
        for w, M in zip(lam.sl3, mats):
            for i, row in enumerate(M):
                for j, v in enumerate(row):
                    if v != 0 and tgt[i] - src[j] + w != 0:
                        return False
    return True


def mu_quiver(theta: Sequence, lam: BlockOneParam) -> Fraction:
    return -sum((to_q(t) * s for t, s in zip(theta, lam.sums())), Fraction(0))


def threshold_m(n: int, mu_high, mu_low):
    """m with a D_{n-1} + b D_{(n-1)/2} = D_m, a + b = 1, and vanishing interpolated index."""
    mu_high, mu_low = to_q(mu_high), to_q(mu_low)
    if mu_high == mu_low:
        return INDETERMINATE if mu_high == 0 else INF
    a = mu_low / (mu_low - mu_high)
    b = -mu_high / (mu_low - mu_high)
    return a * (n - 1) + b * Fraction(n - 1, 2)


@dataclass
class LocusReport:
    locus: int
    n: int
    rep: QuiverRep
    relations_hold: bool
    fixed: bool
    mu_theta1: Fraction
    mu_theta2: Fraction
    threshold: object

    def to_json(self) -> dict:
        return {"locus": self.locus, "n": self.n, "dims": list(self.rep.dims),
                "relations_hold": self.relations_hold, "fixed_by_lambda_prime": self.fixed,
                "mu_theta1": str(self.mu_theta1), "mu_theta2": str(self.mu_theta2),
                "threshold_m": str(self.threshold), "matrices": self.rep.to_json()}


def locus_report(locus: int, n: int, a: Sequence | None = None) -> LocusReport:
    if locus == 1:
        rep = rep_locus1(n)
    elif locus == 2:
        rep = rep_locus2(n, a if a is not None else [1] * (n - 3))
    elif locus == 3:
        rep = rep_locus3(n, a if a is not None else [1] * (n - 4))
    else:
        raise ValueError("locus must be 1, 2 or 3")
    lam = lambda_prime(locus, n)
    t1, t2 = characters(n)
    m1, m2 = mu_quiver(t1, lam), mu_quiver(t2, lam)
    return LocusReport(locus, n, rep, rep.relations_hold(), fixes(rep, lam), m1, m2, threshold_m(n, m1, m2))


# ------------------------------------------------------------ subrepresentations

SUBREP_LIMIT = (4, 4, 4)


def _apply(M: list, v: dict, cols: int) -> dict:
    out = {}
    for i, row in enumerate(M):
        s = sum((row[j] * c for j, c in v.items()), Fraction(0))
        if s:
            out[i] = s
    return out


def _span(vectors, ncols: int) -> Echelon:
    return Echelon(ncols, vectors)


def _preimage_dim(mats: Sequence, W: Echelon, d_src: int, d_tgt: int) -> int:
    """dim of {v : M v in W for all M}."""
    if d_src == 0:
        return 0
    rows = []
    comp = _complement_functionals(W, d_tgt)
    for M in mats:
        for f in comp:
            # f(M v) = sum_i f_i sum_j M_ij v_j
            row = {}
            for i, c in f.items():
                for j in range(d_src):
                    if M[i][j]:
                        row[j] = row.get(j, Fraction(0)) + c * M[i][j]
            row = {j: c for j, c in row.items() if c}
            if row:
                rows.append(row)
    return d_src - Echelon(d_src, rows).rank


def _complement_functionals(W: Echelon, n: int) -> list:
    """Functionals vanishing exactly on W."""
    return Echelon(n, W.basis()).nullspace() if W.rank else [{i: Fraction(1)} for i in range(n)]


@dataclass
class Subrep:
    dims: tuple
    theta_value: int
    basis2: list

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "theta": self.theta_value,
                "W2": [{str(k): str(v) for k, v in b.items()} for b in self.basis2]}


def _candidate_vectors(rep: QuiverRep) -> list:
    d1, d2, d3 = rep.dims
    pool = [{i: Fraction(1)} for i in range(d2)]
    for M in rep.A:
        for j in range(d1):
            v = _apply(M, {j: Fraction(1)}, d1)
            if v:
                pool.append(v)
    if d3:
        ker_all = Echelon(d2, [{j: M[i][j] for j in range(d2) if M[i][j]} for M in rep.B for i in range(d3)])
        pool.extend(ker_all.nullspace())
        for M in rep.B:
            pool.extend(Echelon(d2, [{j: M[i][j] for j in range(d2) if M[i][j]} for i in range(d3)]).nullspace())
    uniq = {}
    for v in pool:
        key = tuple(sorted(v.items()))
        if v and key not in uniq:
            uniq[key] = v
    return list(uniq.values())


def subrep_check(rep: QuiverRep, theta: Sequence, strict: bool = False) -> Subrep | None:
    """Search for a subrepresentation violating King (semi)stability.

    Semistable means theta(d_W) <= 0 for every subrepresentation W; with
    ``strict`` a proper nonzero W with theta(d_W) >= 0 also violates. For each
    candidate W2 the best W1 and W3 are the largest subspace mapped into W2
    and the smallest containing B(W2), or their extremes when theta favours
    them. Candidates for W2 are spans of coordinate vectors, images of A and
    kernels of B, so the search is complete only on that lattice.
    """
    d = tuple(rep.dims)
    if any(x > y for x, y in zip(d, SUBREP_LIMIT)):
        raise TooLarge(f"dimension vector {d} exceeds {SUBREP_LIMIT}")
    theta = tuple(int(t) for t in theta)
    d1, d2, d3 = d
    pool = _candidate_vectors(rep)
    seen = set()
    best = None
    spaces = [Echelon(d2)]
    for k in range(1, d2 + 1):
        for combo in combinations(pool, k):
            E = Echelon(d2, combo)
            spaces.append(E)
    for E in spaces:
        rkey = (E.rank, _canon(E, d2))
        if rkey in seen:
            continue
        seen.add(rkey)
        w2 = E.rank
        w1_max = _preimage_dim(rep.A, E, d1, d2)
        img = [_apply(M, b, d2) for M in rep.B for b in E.basis()]
        w3_min = Echelon(d3, [v for v in img if v]).rank if d3 else 0
        for w1 in range(w1_max + 1):
            for w3 in range(w3_min, d3 + 1):
                dims = (w1, w2, w3)
                val = pair(theta, dims)
                proper = dims != (0, 0, 0) and dims != d
                bad = val > 0 or (strict and proper and val >= 0)
                if bad and (best is None or val > best.theta_value):
                    best = Subrep(dims, val, E.basis())
    return best


def _canon(E: Echelon, n: int) -> tuple:
    """Reduced row echelon key of a subspace."""
    from .exact import row_reduce
    R = row_reduce(E.basis(), n)
    return tuple(tuple(sorted(r.items())) for r in R.rows)
