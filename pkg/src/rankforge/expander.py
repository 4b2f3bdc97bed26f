"""Dimension expanders: collections of n x n matrices A_1..A_D such that every
subspace V with dim V <= eps*n satisfies dim(A_1 V + ... + A_D V) >= alpha dim V.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional, Tuple

import numpy as np

from .gf import Field
from .linalg import FMatrix
from .seeded import SeededCondenser


@dataclass(frozen=True, eq=False)
class DimExpander:
    field: Field
    n: int
    stack: np.ndarray   # (degree, n, n)
    eps: Fraction
    alpha: Fraction

    def __post_init__(self):
        s = np.asarray(self.stack, dtype=np.int64).reshape(-1, self.n, self.n)
        s.setflags(write=False)
        object.__setattr__(self, "stack", s)
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "alpha", Fraction(self.alpha))

    @property
    def degree(self) -> int:
        return self.stack.shape[0]

    @property
    def matrices(self) -> Tuple[FMatrix, ...]:
        return tuple(FMatrix(self.field, m) for m in self.stack)

    def __eq__(self, other):
        return (isinstance(other, DimExpander) and self.field == other.field and self.n == other.n
                and (self.eps, self.alpha) == (other.eps, other.alpha)
                and np.array_equal(self.stack, other.stack))


def tensor_maps(F: Field, n: int, d: int) -> Tuple[FMatrix, ...]:
    """d matrices of shape nd x n; the i-th copies F^n into coordinate block i."""
    out = []
    for i in range(d):
        T = np.zeros((n * d, n), dtype=np.int64)
        T[i * n:(i + 1) * n, :] = np.eye(n, dtype=np.int64)
        out.append(FMatrix(F, T))
    return tuple(out)


def _expander_r(C: SeededCondenser, d: int, gamma: Fraction) -> int:
    """Largest r whose required condenser rank ceil((1-gamma) r d) fits C's claim."""
    n = C.n // d
    best = 0
    for r in range(1, n + 1):
        if ceil((1 - gamma) * r * d) <= C.claim.r:
            best = r
    return best


def tensor_then_condense(C: SeededCondenser, d: int, gamma, r: Optional[int] = None) -> DimExpander:
    """Expander {E T_i : E in C, i < d} on F^n, where C condenses F^(nd) to F^n."""
    gamma = Fraction(gamma)
    if C.claim.kind != "lossy" or C.claim.mode != "le":
        raise ValueError("tensor-then-condense needs a lossy condenser with mode 'le'")
    if C.n % d or C.n // d != C.t:
        raise ValueError("condenser must map F^(nd) to F^n")
    if not 0 <= gamma < 1:
        raise ValueError("need 0 <= gamma < 1")
    n = C.t
    if r is None:
        r = _expander_r(C, d, gamma)
    if r < 1 or ceil((1 - gamma) * r * d) > C.claim.r:
        raise ValueError(f"condenser rank {C.claim.r} is below ceil((1-gamma) r d) for r={r}")
    maps = tensor_maps(C.field, n, d)
    mats = [E @ T for E in C.matrices for T in maps]
    stack = np.array([m.array for m in mats], dtype=np.int64).reshape(len(mats), n, n)
    alpha = (1 - gamma) * (1 - C.claim.eps) * d
    return DimExpander(C.field, n, stack, Fraction(r, n), alpha)


@dataclass(frozen=True)
class ExpanderParams:
    d: int
    gamma: Fraction
    delta: Fraction
    condenser_size: int
    degree: int
    eps: Fraction
    alpha: Fraction
    field_size_needed: Optional[int] = None


def expander_params_gamma0(n: int, d: int, eps, delta) -> ExpanderParams:
    """Lossless tensoring: condenser size ceil(d / (delta (1 - eps d))), degree d times that."""
    eps, delta = Fraction(eps), Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("need 0 < delta < 1")
    if not 0 < eps * d < 1:
        raise ValueError("need 0 < eps*d < 1")
    size = ceil(Fraction(d) / (delta * (1 - eps * d)))
    return ExpanderParams(d=d, gamma=Fraction(0), delta=delta, condenser_size=size, degree=d * size,
                          eps=eps, alpha=(1 - delta) * d, field_size_needed=d * d * n**3 + 1)


def expander_params_general(eps, eta) -> ExpanderParams:
    """Pick d, gamma, delta so the expansion becomes eta/eps, with degree d * ceil(2(1+eta)d/(1-eta)^2)."""
    eps, eta = Fraction(eps), Fraction(eta)
    if not 0 < eps < 1:
        raise ValueError("need 0 < eps < 1")
    if not 0 < eta < 1:
        raise ValueError("need 0 < eta < 1")
    d = ceil((1 + eta) / (2 * eps))
    gamma = 1 - (1 + eta) / (2 * eps * d)
    delta = (1 - eta) / (1 + eta)
    size = ceil(2 * (1 + eta) * d / (1 - eta) ** 2)
    return ExpanderParams(d=d, gamma=gamma, delta=delta, condenser_size=size, degree=d * size,
                          eps=eps, alpha=eta / eps)


def expander_from_two_source(B) -> DimExpander:
    """A_i is the matrix of v -> f(v, e_i), padded with zero rows to n x n."""
    if B.t > B.n:
        raise ValueError("two-source condenser output must not exceed n")
    slices = B.slices                              # (t, n, m)
    rows = np.transpose(slices, (2, 0, 1))         # (m, t, n): A_i[k, a] = E_k[a, i]
    pad = np.zeros((B.m, B.n - B.t, B.n), dtype=np.int64)
    stack = np.concatenate([rows, pad], axis=1)
    return DimExpander(B.field, B.n, stack, Fraction(B.r, B.n), (1 - B.eps) * B.m)
