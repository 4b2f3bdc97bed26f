"""Seeded rank condensers built from folded Wronskians, and subspace designs.

A seeded condenser is a list of t x n matrices.  Its claim says how badly the
list may collapse an r-dimensional subspace V:

* ``weak``:   at most floor(L) matrices drop rank on V;
* ``strong``: the total rank lost, summed over the list, is at most floor(L);
* ``lossy``:  some matrix keeps rank at least ceil((1 - eps) * dim V), either
  for dim V = r only (mode ``eq``) or for every 1 <= dim V <= r (mode ``le``).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from math import ceil, floor
from typing import Optional, Sequence, Tuple

import numpy as np

from .gf import FElem, Field, FieldError, element_order, find_element_of_order
from .linalg import FMatrix, orthogonal_complement, rank, row_space_basis

LOSSLESS_KINDS = ("weak", "strong")


@dataclass(frozen=True)
class Claim:
    kind: str                       # weak | strong | lossy
    r: int
    L: Optional[Fraction] = None    # lossless kinds
    eps: Optional[Fraction] = None  # lossy
    mode: Optional[str] = None      # eq | le, lossy only

    def __post_init__(self):
        if self.kind in LOSSLESS_KINDS:
            if self.L is None or self.L < 0:
                raise ValueError("lossless claims need a non-negative L")
        elif self.kind == "lossy":
            if self.eps is None or not 0 <= self.eps < 1:
                raise ValueError("lossy claims need 0 <= eps < 1")
            if self.mode not in ("eq", "le"):
                raise ValueError("lossy mode must be 'eq' or 'le'")
        else:
            raise ValueError(f"unknown claim kind {self.kind!r}")
        if self.r < 0:
            raise ValueError("r must be non-negative")

    @property
    def is_lossless(self) -> bool:
        return self.kind in LOSSLESS_KINDS


def strong(r: int, L) -> Claim:
    return Claim("strong", r, L=Fraction(L))


def weak(r: int, L) -> Claim:
    return Claim("weak", r, L=Fraction(L))


def lossy(r: int, eps, mode: str = "eq") -> Claim:
    return Claim("lossy", r, eps=Fraction(eps), mode=mode)


@dataclass(frozen=True, eq=False)
class SeededCondenser:
    field: Field
    n: int
    t: int
    stack: np.ndarray   # (count, t, n)
    claim: Claim
    note: Optional[str] = dc_field(default=None, compare=False)

    def __post_init__(self):
        s = np.asarray(self.stack, dtype=np.int64).reshape(-1, self.t, self.n)
        s.setflags(write=False)
        object.__setattr__(self, "stack", s)

    @classmethod
    def from_matrices(cls, F: Field, n: int, t: int, mats: Sequence[FMatrix], claim: Claim, note=None):
        for m in mats:
            if m.shape != (t, n) or m.field != F:
                raise ValueError("every matrix must be t x n over the collection's field")
        stack = np.array([m.array for m in mats], dtype=np.int64).reshape(len(mats), t, n)
        return cls(F, n, t, stack, claim, note)

    @property
    def matrices(self) -> Tuple[FMatrix, ...]:
        return tuple(FMatrix(self.field, m) for m in self.stack)

    def __len__(self):
        return self.stack.shape[0]

    def with_claim(self, claim: Claim) -> "SeededCondenser":
        return replace(self, claim=claim)

    def __eq__(self, other):
        return (isinstance(other, SeededCondenser) and self.field == other.field
                and (self.n, self.t) == (other.n, other.t) and self.claim == other.claim
                and np.array_equal(self.stack, other.stack))


@dataclass(frozen=True, eq=False)
class SubspaceDesign:
    """Subspaces H_1, ..., H_M of F^n, each held as an RREF row basis."""
    field: Field
    n: int
    subspaces: Tuple[FMatrix, ...]
    claim: Claim

    def __eq__(self, other):
        return (isinstance(other, SubspaceDesign) and self.field == other.field
                and self.n == other.n and self.claim == other.claim
                and self.subspaces == other.subspaces)


def folded_wronskian(F: Field, omega: FElem, t: int, n: int, alpha: FElem) -> FMatrix:
    """The t x n matrix whose (i, j) entry is (omega^i * alpha)^j."""
    if alpha.is_zero():
        raise ValueError("alpha must be nonzero")
    if n > 1 and element_order(omega) < n:
        raise ValueError(f"omega must have order at least n={n}")
    return _wronskian_array(F, omega.value, t, n, alpha.value)


def _wronskian_array(F: Field, omega: int, t: int, n: int, alpha: int) -> FMatrix:
    points = F.mul(_powers(F, omega, t), alpha)
    out = np.ones((t, n), dtype=np.int64)
    for j in range(1, n):
        out[:, j] = F.mul(out[:, j - 1], points)
    return FMatrix(F, out, shape=(t, n))


def _powers(F: Field, x: int, count: int) -> np.ndarray:
    """1, x, x^2, ..., x^(count-1)."""
    out = np.ones(count, dtype=np.int64)
    for i in range(1, count):
        out[i] = F.mul(out[i - 1], x)
    return out


def lossless_collection(F: Field, n: int, t: int, r: int) -> SeededCondenser:
    """Wronskians at 1, w^t, w^2t, ... for a primitive w; strong claim L = r(n-r)/(t-r+1)."""
    if F.q <= n:
        raise ValueError(f"field of order {F.q} is too small: need q > n = {n}")
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    if t < r:
        raise ValueError("need t >= r")
    omega = find_element_of_order(F, F.q - 1)
    step = int(F.power(omega.value, t))
    count = (F.q - 1) // t
    alphas = _powers(F, step, count)
    mats = [_wronskian_array(F, omega.value, t, n, int(a)) for a in alphas]
    L = Fraction(r * (n - r), t - r + 1)
    return SeededCondenser.from_matrices(F, n, t, mats, strong(r, L))


def lossy_point_count(n: int, t: int, r: int, eps: Fraction) -> int:
    """min(ceil(n / (eps (t - r + 1))), n^2): how many evaluation points the lossy list uses."""
    eps = Fraction(eps)
    return min(ceil(Fraction(n) / (eps * (t - r + 1))), n * n)


def _lossy_margin_ok(distinct: int, n: int, t: int, r: int, eps: Fraction) -> bool:
    """With `distinct` well-separated points, does the strong bound force a good matrix
    for every dimension 1..r?  (Enough points beat s(n-s)/((floor(eps s)+1)(t-s+1)).)"""
    for s in range(1, r + 1):
        if distinct * (floor(eps * s) + 1) * (t - s + 1) <= s * (n - s):
            return False
    return True


def lossy_collection(F: Field, n: int, t: int, r: int, eps, size: Optional[int] = None) -> SeededCondenser:
    """Wronskians at (w^t)^j for j < N, zero-padded to ``size`` matrices; claim lossy(r, eps, le)."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    if not 1 <= r <= t:
        raise ValueError("need 1 <= r <= t")
    if r > n:
        raise ValueError("need r <= n")
    count = lossy_point_count(n, t, r, eps)
    if size is None:
        size = count
    if size < count:
        raise ValueError(f"requested {size} matrices but the construction needs {count}")
    need = t * count
    if F.q - 1 >= need:
        omega = find_element_of_order(F, need)
    else:
        # The field cannot separate all `count` points.  Fall back to a primitive
        # element: the first floor((q-1)/t) points stay separated, and we accept
        # only if those alone already give the lossy guarantee.
        if F.q - 1 < n:
            raise FieldError(f"field of order {F.q} has no element of order >= n = {n}")
        separated = (F.q - 1) // t
        if not _lossy_margin_ok(separated, n, t, r, eps):
            raise FieldError(
                f"field of order {F.q} cannot host the evaluation points (need order {need})")
        omega = find_element_of_order(F, F.q - 1)
    step = int(F.power(omega.value, t))
    alphas = _powers(F, step, count)
    mats = [_wronskian_array(F, omega.value, t, n, int(a)) for a in alphas]
    mats += [FMatrix.zeros(F, t, n)] * (size - count)
    return SeededCondenser.from_matrices(F, n, t, mats, lossy(r, eps, "le"))


def design_from_condenser(C: SeededCondenser) -> SubspaceDesign:
    """H_i = orthogonal complement of the row space of E_i; same weak/strong claim."""
    if not C.claim.is_lossless:
        raise ValueError("only lossless condensers correspond to subspace designs")
    subs = []
    for E in C.matrices:
        basis = row_space_basis(E)
        subs.append(row_space_basis(orthogonal_complement(basis)) if basis.rows < C.n
                    else FMatrix.zeros(C.field, 0, C.n))
    return SubspaceDesign(C.field, C.n, tuple(subs), C.claim)


def condenser_from_design(D: SubspaceDesign, t: int) -> SeededCondenser:
    """E_i has rows spanning the complement of H_i, padded with zero rows to t."""
    mats = []
    for H in D.subspaces:
        if H.rows < D.n - t:
            raise ValueError(f"subspace of dimension {H.rows} needs more than t={t} rows")
        if H.rows:
            comp = row_space_basis(orthogonal_complement(H))
        else:
            comp = FMatrix.identity(D.field, D.n)
        pad = np.zeros((t - comp.rows, D.n), dtype=np.int64)
        mats.append(FMatrix(D.field, np.vstack([comp.array, pad]), shape=(t, D.n)))
    return SeededCondenser.from_matrices(D.field, D.n, t, mats, D.claim)


def compose_with_projection(C: SeededCondenser, n_in: int) -> SeededCondenser:
    """Precompose every matrix with the coordinate projection F^n_in -> F^n (drop the tail).

    The claim is reset to a lossy one that the caller is expected to re-verify."""
    if n_in < C.n:
        raise ValueError("projection must go from a larger space")
    pad = np.zeros((len(C), C.t, n_in - C.n), dtype=np.int64)
    stack = np.concatenate([C.stack, pad], axis=2)
    return SeededCondenser(C.field, n_in, C.t, stack, C.claim)


def wronskian_det_poly(F: Field, omega: FElem, M: FMatrix):
    """det(W(x) M) as a polynomial in x, where W(x) is the r x n folded Wronskian at x.

    M is n x r.  Returns coefficient encodings, lowest degree first."""
    from .polynomials import field_poly_det, trim
    n, r = M.shape
    wp = _powers(F, omega.value, r)
    entries = []
    for i in range(r):
        row = []
        for c in range(r):
            # sum_j (w^i x)^j M[j, c] -> coefficient of x^j is w^{ij} M[j, c]
            coeffs = [int(F.mul(F.power(int(wp[i]), j), M.array[j, c])) for j in range(n)]
            row.append(trim(coeffs))
        entries.append(row)
    return field_poly_det(F, entries)


def deficient_points(F: Field, omega: FElem, M: FMatrix, t: Optional[int] = None):
    """Nonzero alpha with rank(Wr_t(alpha) M) < rank M (t defaults to the column count)."""
    t = M.cols if t is None else t
    target = rank(M)
    bad = []
    for a in range(1, F.q):
        W = _wronskian_array(F, omega.value, t, M.rows, a)
        if rank(W @ M) < target:
            bad.append(a)
    return bad
