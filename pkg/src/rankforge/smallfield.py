"""Moving constructions from an extension field F_{q^k} down to its prime field F_q.

Every entry of a matrix over F_{q^k} is replaced by its k coordinates over F_q
(polynomial basis, lowest degree first), stacked vertically.  Rank over the
base field never drops below the rank over the extension, so condenser claims
carry over unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional

import numpy as np

from .gf import Field, make_field
from .linalg import FMatrix
from .seeded import SeededCondenser, lossy_collection


def min_extension_degree(q: int, bound: int) -> int:
    """Smallest k with q**k >= bound (an exact ceil(log_q bound))."""
    if q < 2:
        raise ValueError("q must be at least 2")
    k, power = 0, 1
    while power < bound:
        power *= q
        k += 1
    return k


def _check_base(F: Field, base: Optional[Field]) -> Field:
    sub = F.prime_subfield
    if base is not None and base != sub:
        raise ValueError(f"can only lift {F!r} to its prime field {sub!r}")
    return sub


def phi_lift_matrix(E: FMatrix, base: Optional[Field] = None) -> FMatrix:
    """Replace each entry by its coordinate column: t x n over F_{q^k} becomes kt x n over F_q."""
    F = E.field
    sub = _check_base(F, base)
    digits = F.digits(E.array)                     # (t, n, k)
    t, n = E.shape
    lifted = np.transpose(digits, (0, 2, 1)).reshape(t * F.k, n)
    return FMatrix(sub, lifted)


def lift_condenser(C: SeededCondenser, base: Optional[Field] = None) -> SeededCondenser:
    F = C.field
    sub = _check_base(F, base)
    mats = [phi_lift_matrix(E, sub) for E in C.matrices]
    note = f"lifted-from p={F.p} k={F.k}"
    return SeededCondenser.from_matrices(sub, C.n, C.t * F.k, mats, C.claim, note=note)


def lossy_extension_degree(q: int, n: int, t: int) -> int:
    """k = ceil(log_q(t n^2 + 1)): enough room for the lossy evaluation points."""
    return min_extension_degree(q, t * n * n + 1)


def small_field_lossy(p: int, n: int, t: int, r: int, eps, size: Optional[int] = None) -> SeededCondenser:
    """Lossy condenser over the prime field F_p, built in F_{p^k} and lifted."""
    k = lossy_extension_degree(p, n, t)
    ext = make_field(p, k)
    return lift_condenser(lossy_collection(ext, n, t, r, eps, size))


@dataclass(frozen=True)
class SmallFieldExpanderParams:
    k: int
    condenser_size: int
    degree: int
    alpha: Fraction


def small_field_expander_params(q: int, n: int, d: int, eps, delta) -> SmallFieldExpanderParams:
    """k = ceil(log_q(d^2 n^3 + 1)) and condenser size ceil(dk / (delta (1 - eps d k)))."""
    eps, delta = Fraction(eps), Fraction(delta)
    k = min_extension_degree(q, d * d * n**3 + 1)
    if eps * d * k >= 1:
        raise ValueError(f"eps*d*k = {eps * d * k} must be below 1")
    if not 0 < delta < 1:
        raise ValueError("need 0 < delta < 1")
    size = ceil(Fraction(d * k) / (delta * (1 - eps * d * k)))
    return SmallFieldExpanderParams(k=k, condenser_size=size, degree=d * size, alpha=(1 - delta) * d)
