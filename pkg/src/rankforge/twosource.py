"""Bilinear two-source rank condensers and rank-metric codes.

A bilinear condenser is a t x nm matrix E.  Row k, reshaped row-major into an
n x m matrix E_k, gives coordinate k of f(v, w) = E (v ⊗ w) = v^T E_k w.  The
claim (r, s, eps) asks that for every r-dimensional A <= F^n and s-dimensional
B <= F^m the image E(A ⊗ B) has dimension at least ceil((1 - eps) r s).
Flags ``le_r``/``le_s`` extend the claim to all smaller dimensions of A or B.

Codes and lossless condensers are dual: the kernel of E, read as n x m
matrices, is a code in which every nonzero matrix has rank > min(r, s).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import ceil
from typing import Optional, Tuple

import numpy as np

from .errors import BudgetExceeded
from .gf import Field, find_element_of_order, make_field
from .linalg import FMatrix, batch_rank, kernel, orthogonal_complement, row_space_basis
from .seeded import _powers, _wronskian_array


@dataclass(frozen=True, eq=False)
class BilinearCondenser:
    field: Field
    n: int
    m: int
    E: FMatrix
    r: int
    s: int
    eps: Fraction = Fraction(0)
    le_r: bool = False
    le_s: bool = False

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.E.cols != self.n * self.m:
            raise ValueError("E must have n*m columns")
        if not 0 <= self.eps < 1:
            raise ValueError("need 0 <= eps < 1")
        if not (0 <= self.r <= self.n and 0 <= self.s <= self.m):
            raise ValueError("claim dimensions out of range")

    @property
    def t(self) -> int:
        return self.E.rows

    @property
    def slices(self) -> np.ndarray:
        return self.E.array.reshape(self.t, self.n, self.m)

    def with_claim(self, r: int, s: int, eps=0, le_r: bool = False, le_s: bool = False):
        return replace(self, r=r, s=s, eps=Fraction(eps), le_r=le_r, le_s=le_s)

    def __eq__(self, other):
        return (isinstance(other, BilinearCondenser) and self.E == other.E
                and (self.n, self.m, self.r, self.s, self.eps, self.le_r, self.le_s)
                == (other.n, other.m, other.r, other.s, other.eps, other.le_r, other.le_s))


def bilinear_eval(B: BilinearCondenser, v, w) -> np.ndarray:
    """f(v, w): coordinate k equals v^T E_k w."""
    F = B.field
    v = np.asarray(v, dtype=np.int64).reshape(1, 1, B.n)
    w = np.asarray(w, dtype=np.int64).reshape(1, B.m, 1)
    return F.matmul(F.matmul(v, B.slices), w).reshape(B.t)


def _first_nonzero(F: Field, count: int) -> np.ndarray:
    if count > F.q - 1:
        raise ValueError(f"field of order {F.q} has fewer than {count} nonzero elements")
    return np.arange(1, count + 1, dtype=np.int64)


def condense_tensor_lossless(F: Field, n: int, m: int, r: int, s: int) -> BilinearCondenser:
    """Stack W_r(a) ⊗ W_s(a) over the first r(n-r)+s(m-s)+1 nonzero points a; claim (r, s, 0)."""
    omega = find_element_of_order(F, max(n, m))
    pts = _first_nonzero(F, r * (n - r) + s * (m - s) + 1)
    blocks = []
    for a in pts:
        A = _wronskian_array(F, omega.value, r, n, int(a)).array
        Bw = _wronskian_array(F, omega.value, s, m, int(a)).array
        blocks.append(F.mul(A[:, None, :, None], Bw[None, :, None, :]).reshape(r * s, n * m))
    E = FMatrix(F, np.vstack(blocks), shape=(len(pts) * r * s, n * m))
    return BilinearCondenser(F, n, m, E, r, s, Fraction(0))


def pruned_lossless(F: Field, n: int, m: int, r: int, s: int) -> BilinearCondenser:
    """Rows indexed by (k, b) with -r < k < s and b among the first n+m-1 nonzero points.

    Entry at (a, c) is b^(a+c) w^(k c); output length (r+s-1)(n+m-1)."""
    if r < 1 or s < 1:
        raise ValueError("need r, s >= 1")
    omega = find_element_of_order(F, max(n, m))
    pts = _first_nonzero(F, n + m - 1)
    a_idx = np.arange(n)[:, None]
    c_idx = np.arange(m)[None, :]
    rows = []
    for k in range(-r + 1, s):
        wk = F.power(omega.value, k)
        for b in pts:
            bp = _powers(F, int(b), n + m - 1)
            wp = _powers(F, int(wk), m)
            rows.append(F.mul(bp[a_idx + c_idx], wp[c_idx]).reshape(n * m))
    E = FMatrix(F, np.array(rows, dtype=np.int64), shape=(len(rows), n * m))
    return BilinearCondenser(F, n, m, E, r, s, Fraction(0))


# --- rank-metric codes ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RankMetricCode:
    field: Field
    n: int
    m: int
    basis: np.ndarray   # (dim, n, m), rows of the flattened basis in RREF
    distance: int

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.int64).reshape(-1, self.n, self.m)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @classmethod
    def from_vectors(cls, F: Field, n: int, m: int, vectors: np.ndarray, distance: int):
        vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, n * m)
        if vecs.shape[0]:
            vecs = row_space_basis(FMatrix(F, vecs)).array
        return cls(F, n, m, vecs.reshape(-1, n, m), distance)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def flat(self) -> FMatrix:
        return FMatrix(self.field, self.basis.reshape(self.dim, self.n * self.m), shape=(self.dim, self.n * self.m))

    def matrices(self) -> Tuple[FMatrix, ...]:
        return tuple(FMatrix(self.field, b) for b in self.basis)

    def __eq__(self, other):
        return (isinstance(other, RankMetricCode) and self.field == other.field
                and (self.n, self.m, self.distance) == (other.n, other.m, other.distance)
                and np.array_equal(self.basis, other.basis))


def gabidulin_code(q: int, m: int, n: int, r: int) -> RankMetricCode:
    """Matrices over F_q of the maps x -> sum_{i < m-r} b_i x^(q^i) on F_{q^m}, restricted to n rows.

    Column c of a map's matrix holds the coordinates of f(z^c); the code keeps
    the combinations whose last m-n rows vanish.  Dimension m(n-r), distance r+1."""
    if not 1 <= n <= m:
        raise ValueError("need 1 <= n <= m")
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    base = make_field(q, 1)
    if r == n:
        return RankMetricCode(base, n, m, np.zeros((0, n, m), dtype=np.int64), n + 1)
    K = make_field(q, m)
    zc = np.array([q**c for c in range(m)], dtype=np.int64)      # z^c
    mats = []
    for i in range(m - r):
        frob = K.power(zc, q**i)                                  # (z^c)^(q^i)
        for b in range(m):
            images = K.mul(q**b, frob)                            # f(z^c) for f = z^b x^(q^i)
            mats.append(np.transpose(K.digits(images)))           # m x m, column c = phi(f(z^c))
    stack = np.array(mats, dtype=np.int64)
    if n < m:
        tail = stack[:, n:, :].reshape(len(stack), -1)            # must vanish
        coeffs = kernel(FMatrix(base, tail.T)).array.T            # (dim, len(stack))
        stack = base.matmul(coeffs, stack.reshape(len(stack), -1)).reshape(-1, m, m)
    return RankMetricCode.from_vectors(base, n, m, stack[:, :n, :], r + 1)


def roth_code(F: Field, n: int, m: int, r: int) -> RankMetricCode:
    """Diagonal construction: along each anti-diagonal i + j = const of length l the
    entries form a codeword of the [l, l - r] code with parity checks a_j^i
    (i < r, a_j the first l field elements).  Dimension (n-r)(m-r), distance > r."""
    if not 0 <= r <= min(n, m):
        raise ValueError("need 0 <= r <= min(n, m)")
    if min(n, m) > F.q:
        raise ValueError(f"field of order {F.q} has fewer than {min(n, m)} elements")
    vecs = []
    for k in range(n + m - 1):
        cells = [(i, k - i) for i in range(n) if 0 <= k - i < m]
        ell = len(cells)
        if ell <= r:
            continue
        nodes = np.arange(ell, dtype=np.int64)
        H = np.array([F.power(nodes, i) for i in range(r)], dtype=np.int64).reshape(r, ell)
        K = kernel(FMatrix(F, H, shape=(r, ell))).array              # ell x (ell - r)
        for col in K.T:
            M = np.zeros((n, m), dtype=np.int64)
            for (i, j), val in zip(cells, col):
                M[i, j] = val
            vecs.append(M.reshape(-1))
    vecs = np.array(vecs, dtype=np.int64).reshape(-1, n * m)
    return RankMetricCode.from_vectors(F, n, m, vecs, r + 1)


def zero_code_distance(n: int, m: int) -> int:
    return min(n, m) + 1


def code_to_condenser(C: RankMetricCode) -> BilinearCondenser:
    """E has rows spanning the dual of C; t = nm - dim.  Claim (d-1, d-1, 0)."""
    F = C.field
    nm = C.n * C.m
    if C.dim == 0:
        E = FMatrix.identity(F, nm)
    else:
        E = row_space_basis(orthogonal_complement(C.flat)) if C.dim < nm else FMatrix.zeros(F, 0, nm)
    r = min(C.distance - 1, C.n, C.m)
    if E.rows == 0 and r >= 1:
        raise ValueError("the full space has rank distance 1; no lossless claim is possible")
    return BilinearCondenser(F, C.n, C.m, E, r, r, Fraction(0))


def implied_claims(B: BilinearCondenser):
    """The (d-1, m, 0) and (n, d-1, 0) claims that a code of distance d also yields."""
    return [(B.r, B.m), (B.n, B.r)]


def condenser_to_code(B: BilinearCondenser) -> RankMetricCode:
    """Kernel of E, reshaped to n x m matrices; distance min(r, s) + 1."""
    if B.eps != 0:
        raise ValueError("only lossless condensers give codes")
    K = kernel(B.E).array.T
    dist = zero_code_distance(B.n, B.m) if K.shape[0] == 0 else min(B.r, B.s) + 1
    return RankMetricCode.from_vectors(B.field, B.n, B.m, K, dist)


def min_rank_distance(C: RankMetricCode, budget: int = 10**7, chunk: int = 1 << 15) -> int:
    """Smallest rank of a nonzero codeword, by enumerating all of them."""
    if C.dim == 0:
        return zero_code_distance(C.n, C.m)
    F = C.field
    total = F.q ** C.dim - 1
    if total > budget:
        raise BudgetExceeded(total, budget, "minimum rank distance")
    flat = C.basis.reshape(C.dim, -1)
    pw = F.q ** np.arange(C.dim - 1, -1, -1, dtype=np.int64)
    best = min(C.n, C.m)
    for lo in range(1, total + 1, chunk):
        idx = np.arange(lo, min(total + 1, lo + chunk), dtype=np.int64)
        coeffs = (idx[:, None] // pw) % F.q
        words = F.matmul(coeffs, flat).reshape(-1, C.n, C.m)
        best = min(best, int(batch_rank(F, words).min()))
    return best


def singleton_dim_bound(n: int, m: int, r: int) -> int:
    """Largest possible dimension of an n x m code with distance r + 1."""
    return max(n, m) * (min(n, m) - r)


def output_lower_bound(m: int, s: int, eps) -> Fraction:
    """Any (1, s, eps) bilinear condenser has output length at least m - eps s."""
    return m - Fraction(eps) * s


def closed_field_output_bound(n: int, r: int) -> int:
    """Output length r(2n - r) forced for n x n lossless condensers over algebraically closed fields."""
    return r * (2 * n - r)


# --- lossy composition ----------------------------------------------------------

def lossy_outer_point_count(n: int, t: int, r: int, eps) -> int:
    return ceil(Fraction(2 * n) / (Fraction(eps) * (t - r + 1)))


def lossy_outer_inner(F: Field, n: int, r: int, eps, inner: BilinearCondenser) -> BilinearCondenser:
    """Condense both sources to F^t with folded Wronskians, then apply ``inner`` on F^t x F^t.

    Claim (r, r, 1 - (1 - eps)^3)."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    t = inner.n
    if inner.m != t:
        raise ValueError("inner condenser must act on F^t x F^t")
    if not 1 <= r <= min(t, n):
        raise ValueError("need 1 <= r <= min(t, n)")
    need = ceil((1 - eps) * r)
    if inner.r < need or inner.s < need or inner.eps > eps:
        raise ValueError(f"inner condenser must be claimed ({need}, {need}, <= {eps})")
    count = lossy_outer_point_count(n, t, r, eps)
    omega = find_element_of_order(F, max(n, t * count))
    step = int(F.power(omega.value, t))
    rows = []
    for a in _powers(F, step, count):
        W = _wronskian_array(F, omega.value, t, n, int(a)).array
        WW = F.mul(W[:, None, :, None], W[None, :, None, :]).reshape(t * t, n * n)
        rows.append(F.matmul(inner.E.array, WW))
    E = FMatrix(F, np.vstack(rows), shape=(count * inner.t, n * n))
    return BilinearCondenser(F, n, n, E, r, r, 1 - (1 - eps) ** 3)


@dataclass(frozen=True)
class SearchResult:
    found: bool
    condenser: Optional[BilinearCondenser]
    attempts: int


def inner_condenser_search(F: Field, t: int, t_out: int, r: int, s: int, eps, seed: int,
                           budget: int = 1000, m: Optional[int] = None) -> SearchResult:
    """Draw random t_out x (t*m) matrices until one verifies as an (r, s, eps) condenser."""
    from .verify import verify_two_source
    m = t if m is None else m
    if t_out < ceil((1 - Fraction(eps)) * r * s):
        return SearchResult(False, None, 0)   # output too short for the required rank
    rng = np.random.default_rng(seed)
    for attempt in range(1, budget + 1):
        E = FMatrix(F, F.random(rng, (t_out, t * m)), shape=(t_out, t * m))
        cand = BilinearCondenser(F, t, m, E, r, s, Fraction(eps))
        if verify_two_source(cand).passed:
            return SearchResult(True, cand, attempt)
    return SearchResult(False, None, budget)
