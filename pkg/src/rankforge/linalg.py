"""Exact linear algebra over a :class:`~rankforge.gf.Field`.

Matrices wrap read-only ``int64`` arrays of element encodings.  Besides the
single-matrix routines there is :func:`batch_rank`, which eliminates a whole
stack of small matrices at once, and :class:`SubspaceIter`, which walks every
r-dimensional subspace of F^n through its reduced row echelon basis.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .gf import FElem, Field


class FMatrix:
    __slots__ = ("field", "_a")

    def __init__(self, field: Field, data, shape: Optional[Tuple[int, int]] = None):
        a = np.array(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        if a.ndim != 2:
            raise ValueError("FMatrix data must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= field.q):
            raise ValueError("entry outside the field's element range")
        a.setflags(write=False)
        self.field = field
        self._a = a

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "FMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> "FMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> Tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def T(self) -> "FMatrix":
        return FMatrix(self.field, self._a.T)

    def __getitem__(self, ij) -> FElem:
        return FElem(self.field, int(self._a[ij]))

    def _check(self, other: "FMatrix"):
        if not isinstance(other, FMatrix) or other.field != self.field:
            raise ValueError("matrices must share a field")

    def __matmul__(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FMatrix(self.field, self.field.matmul(self._a, other._a))

    def __add__(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        return FMatrix(self.field, self.field.add(self._a, other._a))

    def __sub__(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        return FMatrix(self.field, self.field.sub(self._a, other._a))

    def __neg__(self) -> "FMatrix":
        return FMatrix(self.field, self.field.neg(self._a))

    def scale(self, c) -> "FMatrix":
        return FMatrix(self.field, self.field.mul(self._a, int(c)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, FMatrix) and other.field == self.field
                and other.shape == self.shape and bool(np.array_equal(other._a, self._a)))

    def __hash__(self):
        return hash((self.field, self.shape, self._a.tobytes()))

    def to_lists(self) -> List[List[int]]:
        return self._a.tolist()

    def rank(self) -> int:
        return rank(self)

    def __repr__(self):
        return f"FMatrix({self.field!r}, {self.to_lists()})"


def vstack(mats: Sequence[FMatrix]) -> FMatrix:
    F = mats[0].field
    return FMatrix(F, np.vstack([m.array for m in mats]))


def hstack(mats: Sequence[FMatrix]) -> FMatrix:
    F = mats[0].field
    return FMatrix(F, np.hstack([m.array for m in mats]))


# --- single-matrix elimination ------------------------------------------------

def rref(M: FMatrix) -> Tuple[FMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    F = M.field
    a = M.array.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = F.mul(a[r], F.inv(a[r, c]))
        factors = a[:, c].copy()
        factors[r] = 0
        a = F.sub(a, F.mul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return FMatrix(F, a), tuple(pivots)


def rank(M: FMatrix) -> int:
    return int(batch_rank(M.field, M.array))


def row_space_basis(M: FMatrix) -> FMatrix:
    """Canonical (RREF) basis of the row space, as rows."""
    R, piv = rref(M)
    return FMatrix(M.field, R.array[: len(piv)], shape=(len(piv), M.cols))


def kernel(M: FMatrix) -> FMatrix:
    """Basis of {x : Mx = 0}, one vector per column."""
    F = M.field
    n = M.cols
    R, piv = rref(M)
    free = [c for c in range(n) if c not in piv]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for col, f in enumerate(free):
        K[f, col] = 1
        for i, pc in enumerate(piv):
            K[pc, col] = int(F.neg(R.array[i, f]))
    return FMatrix(F, K, shape=(n, len(free)))


def orthogonal_complement(B: FMatrix) -> FMatrix:
    """Rows spanning {x : <b, x> = 0 for every row b of B}.  Rows of B must be independent."""
    if rank(B) != B.rows:
        raise ValueError("orthogonal_complement needs linearly independent rows")
    return kernel(B).T


def tensor(A: FMatrix, B: FMatrix) -> FMatrix:
    """Kronecker product; entry ((i, k), (j, l)) sits at row i*B.rows+k, column j*B.cols+l."""
    if A.field != B.field:
        raise ValueError("matrices must share a field")
    F = A.field
    prod = F.mul(A.array[:, None, :, None], B.array[None, :, None, :])
    return FMatrix(F, prod.reshape(A.rows * B.rows, A.cols * B.cols))


def same_row_space(A: FMatrix, B: FMatrix) -> bool:
    return row_space_basis(A) == row_space_basis(B)


# --- batched elimination ------------------------------------------------------

def batch_rank(F: Field, stack) -> np.ndarray:
    """Ranks of every matrix in an array of shape (..., rows, cols)."""
    a = np.asarray(stack, dtype=np.int64)
    lead = a.shape[:-2]
    R, C = a.shape[-2:]
    if R == 0 or C == 0:
        return np.zeros(lead, dtype=np.int64)
    if C > R:
        a = np.swapaxes(a, -1, -2)
        R, C = C, R
    a = a.reshape(-1, R, C).copy()
    nb = a.shape[0]
    rk = np.zeros(nb, dtype=np.int64)
    rows = np.arange(R)
    for c in range(C):
        cand = (a[:, :, c] != 0) & (rows[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = slice(None) if has.all() else np.nonzero(has)[0]
        piv = cand[sel].argmax(axis=1)
        tgt = rk[sel]
        sub = a[sel][:, :, c:]
        if isinstance(sel, slice):
            sub = sub.copy()
        prow = sub[np.arange(len(sub)), piv].copy()
        swap = piv != tgt
        if swap.any():
            idx = np.nonzero(swap)[0]
            sub[idx, piv[idx]] = sub[idx, tgt[idx]]
            sub[idx, tgt[idx]] = prow[idx]
        prow = F.mul(prow, F.inv(prow[:, 0])[:, None])
        below = rows[None, :] > tgt[:, None]
        factor = np.where(below, sub[:, :, 0], 0)
        sub = F.sub(sub, F.mul(factor[:, :, None], prow[:, None, :]))
        a[sel, :, c:] = sub
        rk[sel] += 1
    return rk.reshape(lead)


# --- subspace enumeration -----------------------------------------------------

def count_subspaces(F: Field, n: int, r: int) -> int:
    """Number of r-dimensional subspaces of F^n (the Gaussian binomial)."""
    if r < 0 or r > n:
        return 0
    q = F.q
    num = den = 1
    for i in range(r):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


class SubspaceIter:
    """Every r-dimensional subspace of F^n, as an r x n RREF basis.

    Subspaces are grouped by pivot pattern (patterns in lexicographic order);
    inside a pattern the free entries, read row by row, count up in base q
    with the last free entry varying fastest.  ``start``/``stop`` select a
    contiguous slice of this order, which is how work is sharded.
    """

    def __init__(self, F: Field, n: int, r: int, start: int = 0, stop: Optional[int] = None):
        if not 0 <= r <= n:
            raise ValueError(f"no {r}-dimensional subspaces of F^{n}")
        self.field, self.n, self.r = F, n, r
        self._patterns = []
        offset = 0
        for piv in combinations(range(n), r):
            pset = set(piv)
            free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, n) if j not in pset]
            size = F.q ** len(free)
            self._patterns.append((offset, size, piv, free))
            offset += size
        self.total = offset
        self.start = max(0, start)
        self.stop = self.total if stop is None else min(stop, self.total)

    def __len__(self):
        return max(0, self.stop - self.start)

    def _fill(self, pattern, local: np.ndarray) -> np.ndarray:
        _, _, piv, free = pattern
        q = self.field.q
        out = np.zeros((len(local), self.r, self.n), dtype=np.int64)
        for i, p in enumerate(piv):
            out[:, i, p] = 1
        f = len(free)
        for u, (i, j) in enumerate(free):
            out[:, i, j] = (local // q ** (f - 1 - u)) % q
        return out

    def batches(self, size: int = 1 << 15) -> Iterator[np.ndarray]:
        """Yield arrays of shape (B, r, n) covering the slice in order."""
        pos = self.start
        while pos < self.stop:
            hi = min(self.stop, pos + size)
            parts = []
            for pat in self._patterns:
                off, sz = pat[0], pat[1]
                lo_, hi_ = max(pos, off), min(hi, off + sz)
                if lo_ < hi_:
                    parts.append(self._fill(pat, np.arange(lo_ - off, hi_ - off, dtype=np.int64)))
            yield np.concatenate(parts) if len(parts) > 1 else parts[0]
            pos = hi

    def unrank(self, index: int) -> FMatrix:
        for pat in self._patterns:
            off, sz = pat[0], pat[1]
            if off <= index < off + sz:
                arr = self._fill(pat, np.array([index - off], dtype=np.int64))[0]
                return FMatrix(self.field, arr, shape=(self.r, self.n))
        raise IndexError(index)

    def __iter__(self) -> Iterator[FMatrix]:
        for batch in self.batches():
            for b in batch:
                yield FMatrix(self.field, b, shape=(self.r, self.n))

    def split(self, parts: int) -> List["SubspaceIter"]:
        n = len(self)
        bounds = [self.start + n * i // parts for i in range(parts + 1)]
        return [SubspaceIter(self.field, self.n, self.r, bounds[i], bounds[i + 1]) for i in range(parts)]
