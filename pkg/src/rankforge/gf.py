"""Exact arithmetic in prime fields and their extensions.

Elements are stored as non-negative integers whose base-``p`` digits are the
polynomial-basis coefficients, lowest degree first.  So in F_4 built on
``x^2 + x + 1`` the integer 2 is ``z`` and 3 is ``1 + z``.  All bulk
operations act element-wise on numpy ``int64`` arrays; :class:`FElem` wraps a
single element for convenient scalar work.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from . import polynomials as P

DEFAULT_MAX_ORDER = 2**20


class FieldError(ValueError):
    pass


class Field:
    """The finite field of order ``p**k``.  Compare with ``==``; instances are hashable."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None,
                 max_order: int = DEFAULT_MAX_ORDER):
        if not P.is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be at least 1")
        q = p**k
        if q > max_order:
            raise FieldError(f"field order {q} exceeds the ceiling {max_order}")
        self.p, self.k, self.q = p, k, q
        if k == 1:
            self.modulus: Optional[Tuple[int, ...]] = None
        else:
            if modulus is None:
                modulus = smallest_irreducible(p, k)
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError("modulus must be monic of the extension degree")
            if not P.is_irreducible(modulus, p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
        self._pw = np.array([p**i for i in range(k)], dtype=np.int64)
        self._exp: Optional[np.ndarray] = None
        self._log: Optional[np.ndarray] = None
        self._add_table: Optional[np.ndarray] = None
        self._inv_table: Optional[np.ndarray] = None

    # identity ------------------------------------------------------------------
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __getstate__(self):
        return {"p": self.p, "k": self.k, "modulus": self.modulus}

    def __setstate__(self, state):
        self.__init__(state["p"], state["k"], state["modulus"], max_order=max(state["p"] ** state["k"], DEFAULT_MAX_ORDER))

    def header(self) -> str:
        if self.k == 1:
            return f"field p={self.p} k=1"
        return f"field p={self.p} k={self.k} modulus={','.join(map(str, self.modulus))}"

    @property
    def prime_subfield(self) -> "Field":
        return make_field(self.p, 1)

    # element conversion --------------------------------------------------------
    def __call__(self, x) -> "FElem":
        if isinstance(x, FElem):
            if x.field != self:
                raise FieldError("element belongs to a different field")
            return x
        if isinstance(x, (list, tuple)):
            return FElem(self, self.from_coeffs(x))
        x = int(x)
        if self.k == 1:
            return FElem(self, x % self.p)
        if not 0 <= x < self.q:
            raise FieldError(f"{x} is not an element encoding for {self}")
        return FElem(self, x)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise FieldError("too many coefficients")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def coeffs(self, a: int) -> Tuple[int, ...]:
        return tuple((int(a) // self.p**i) % self.p for i in range(self.k))

    def digits(self, a) -> np.ndarray:
        """Coefficient arrays, shape ``a.shape + (k,)``."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def undigits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) * self._pw).sum(axis=-1)

    def elements(self) -> Iterator["FElem"]:
        for a in range(self.q):
            yield FElem(self, a)

    def zero(self) -> "FElem":
        return FElem(self, 0)

    def one(self) -> "FElem":
        return FElem(self, 1)

    def format_element(self, a: int) -> str:
        if self.k == 1:
            return str(int(a))
        return ",".join(map(str, self.coeffs(a)))

    def parse_element(self, text: str) -> int:
        parts = text.split(",")
        if len(parts) != self.k:
            raise FieldError(f"element {text!r} needs {self.k} coefficients")
        vals = [int(s) for s in parts]
        if any(not 0 <= v < self.p for v in vals):
            raise FieldError(f"coefficient out of range in {text!r}")
        return self.from_coeffs(vals)

    # tables --------------------------------------------------------------------
    def _slow_mul(self, a: int, b: int) -> int:
        prod = P.mod_p_mul(self.coeffs(a), self.coeffs(b), self.p)
        rem = P.mod_p_divmod(prod, self.modulus, self.p)[1]
        return self.from_coeffs(rem)

    def _slow_pow(self, a: int, e: int) -> int:
        res = P.mod_p_powmod(list(self.coeffs(a)), e, self.modulus, self.p)
        return self.from_coeffs(res)

    def _mul_by_matrix(self, c: int) -> np.ndarray:
        """k x k matrix over F_p of multiplication by ``c`` on coefficient vectors."""
        cols = [self.coeffs(self._slow_mul(c, self.p**i)) for i in range(self.k)]
        return np.array(cols, dtype=np.int64).T

    def _build_tables(self):
        if self._exp is not None:
            return
        q, p = self.q, self.p
        if self.k == 1:
            g = primitive_root_mod(p)
            exp = np.empty(q - 1, dtype=np.int64)
            acc = 1
            for i in range(q - 1):
                exp[i] = acc
                acc = acc * g % p
        else:
            factors = P.prime_factors(q - 1)
            g = next(c for c in range(2 if q > 2 else 1, q)
                     if all(self._slow_pow(c, (q - 1) // f) != 1 for f in factors))
            # Grow the power table by doubling: multiplying a block by g^len is linear.
            exp = np.array([1], dtype=np.int64)
            while len(exp) < q - 1:
                shift = self._slow_pow(g, len(exp))
                mat = self._mul_by_matrix(shift)
                block = self.undigits((self.digits(exp) @ mat.T) % p)
                exp = np.concatenate([exp, block])
            exp = exp[: q - 1]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._exp, self._log = exp, log

    @property
    def primitive_element(self) -> int:
        self._build_tables()
        return int(self._exp[1 % (self.q - 1)]) if self.q > 2 else 1

    # vectorised arithmetic -----------------------------------------------------
    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.q <= 4096:
            if self._add_table is None:
                e = np.arange(self.q)
                self._add_table = self.undigits((self.digits(e)[:, None, :] + self.digits(e)[None, :, :]) % self.p)
            return self._add_table[a, b]
        return self.undigits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        return self.undigits((-self.digits(a)) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        self._build_tables()
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        if self.k == 1:
            if self._inv_table is None:
                self._inv_table = _powmod_array(np.arange(self.p, dtype=np.int64), self.p - 2, self.p)
            return self._inv_table[a]
        self._build_tables()
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def power(self, a, e: int):
        """Element-wise ``a**e`` for a non-negative exponent, with ``0**0 == 1``."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.power(self.inv(a), -e)
        if e == 0:
            return np.ones_like(a)
        if self.k == 1:
            return _powmod_array(a, e, self.p)
        self._build_tables()
        out = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def matmul(self, A, B):
        """Broadcasting matrix product over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.k == 1:
            if A.shape[-1] * (self.p - 1) ** 2 < 2**62:
                return np.matmul(A, B) % self.p
        inner = A.shape[-1]
        shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
        out = np.zeros(shape, dtype=np.int64)
        for i in range(inner):
            out = self.add(out, self.mul(A[..., :, i, None], B[..., None, i, :]))
        return out

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # scalar helpers used by polynomial code -----------------------------------
    def add_scalar(self, a: int, b: int) -> int:
        return int(self.add(a, b))

    def neg_scalar(self, a: int) -> int:
        return int(self.neg(a))

    def mul_scalar(self, a: int, b: int) -> int:
        return int(self.mul(a, b))


def _powmod_array(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def primitive_root_mod(p: int) -> int:
    if p == 2:
        return 1
    factors = P.prime_factors(p - 1)
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // f, p) != 1 for f in factors))


def smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Monic irreducible of degree ``k`` whose coefficient tuple (c_0, ..., c_{k-1})
    is lexicographically smallest, comparing the constant term first."""
    for low in product(range(p), repeat=k):
        if low[0] == 0:
            continue  # divisible by x
        cand = tuple(low) + (1,)
        if P.is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int, max_order: int) -> Field:
    return Field(p, k, max_order=max_order)


def make_field(p: int, k: int = 1, max_order: int = DEFAULT_MAX_ORDER) -> Field:
    """Field of order ``p**k`` with the canonical modulus; instances are shared."""
    return _cached_field(int(p), int(k), int(max_order))


def parse_field_spec(text: str) -> Field:
    """Parse ``p^k`` (or just ``p``) into a field."""
    if "^" in text:
        p_s, k_s = text.split("^", 1)
    else:
        p_s, k_s = text, "1"
    try:
        p, k = int(p_s), int(k_s)
    except ValueError as exc:
        raise FieldError(f"cannot parse field {text!r}") from exc
    return make_field(p, k)


@dataclass(frozen=True)
class FElem:
    field: Field
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FElem):
            if other.field != self.field:
                raise FieldError("mixing elements of different fields")
            return other.value
        if isinstance(other, int) and self.field.k == 1:
            return other % self.field.p
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def _wrap(self, v) -> "FElem":
        return FElem(self.field, int(v))

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "FElem":
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FElem(self.field, o).inverse()

    def __pow__(self, e: int):
        return self._wrap(self.field.power(self.value, int(e)))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.field.format_element(self.value)})"


def element_order(a: FElem) -> int:
    """Multiplicative order, found by walking the powers of ``a``."""
    if a.is_zero():
        raise FieldError("zero has no multiplicative order")
    F = a.field
    x, n = a.value, 1
    while x != 1:
        x = int(F.mul(x, a.value))
        n += 1
    return n


def element_orders(F: Field) -> np.ndarray:
    """Orders of 1, 2, ..., q-1 (index i holds the order of element i; index 0 unused)."""
    if F.q == 2:
        return np.array([0, 1], dtype=np.int64)
    F._build_tables()
    logs = F._log[1:]
    g = np.gcd(logs, F.q - 1)
    return np.concatenate([[0], (F.q - 1) // g])


def find_element_of_order(F: Field, N: int) -> FElem:
    """First nonzero element, in ascending encoding, whose order is at least ``N``."""
    if N > F.q - 1:
        raise FieldError(f"no element of order >= {N} in {F!r} (largest order is {F.q - 1})")
    orders = element_orders(F)
    idx = int(np.argmax(orders >= max(N, 1)))
    return FElem(F, idx)


def phi(a: FElem) -> Tuple[FElem, ...]:
    """Coordinates of ``a`` over the prime subfield in the basis 1, z, ..., z^(k-1)."""
    base = a.field.prime_subfield
    return tuple(FElem(base, c) for c in a.coeffs)


def phi_inverse(F: Field, coords: Sequence[FElem]) -> FElem:
    return FElem(F, F.from_coeffs([int(c) for c in coords]))

