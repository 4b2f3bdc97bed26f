"""Dense univariate polynomials as coefficient lists, lowest degree first.

Two flavours live here: plain integer coefficients modulo a prime (used to
find irreducible moduli), and coefficients drawn from an arbitrary
:class:`~rankforge.gf.Field` (used for symbolic determinants).
"""
from __future__ import annotations

from itertools import permutations
from typing import List, Sequence

Poly = List[int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> List[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def trim(a: Sequence[int]) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


# --- polynomials over the prime field Z/p ------------------------------------

def mod_p_sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim([(x - y) % p for x, y in zip(a, b)])


def mod_p_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def mod_p_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        c = rem[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            rem[i + shift] = (rem[i + shift] - c * y) % p
        rem = trim(rem)
    return trim(quot), rem


def mod_p_gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod_p_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def mod_p_powmod(base: Sequence[int], e: int, modulus: Sequence[int], p: int) -> Poly:
    result: Poly = [1]
    base = mod_p_divmod(base, modulus, p)[1]
    while e:
        if e & 1:
            result = mod_p_divmod(mod_p_mul(result, base, p), modulus, p)[1]
        base = mod_p_divmod(mod_p_mul(base, base, p), modulus, p)[1]
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over Z/p."""
    f = trim(f)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if mod_p_sub(mod_p_powmod(x, p**k, f, p), x, p):
        return False
    for ell in prime_factors(k):
        h = mod_p_sub(mod_p_powmod(x, p ** (k // ell), f, p), x, p)
        if len(mod_p_gcd(f, h, p)) != 1:
            return False
    return True


# --- polynomials with coefficients in a Field ---------------------------------

def field_poly_add(F, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim([F.add_scalar(x, y) for x, y in zip(a, b)])


def field_poly_neg(F, a: Sequence[int]) -> Poly:
    return [F.neg_scalar(x) for x in a]


def field_poly_mul(F, a: Sequence[int], b: Sequence[int]) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add_scalar(out[i + j], F.mul_scalar(x, y))
    return trim(out)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def field_poly_det(F, mat: Sequence[Sequence[Poly]]) -> Poly:
    """Leibniz expansion; intended for the small square sizes used in checks."""
    n = len(mat)
    total: Poly = []
    for perm in permutations(range(n)):
        term: Poly = [1]
        for i, j in enumerate(perm):
            term = field_poly_mul(F, term, mat[i][j])
            if not term:
                break
        if not term:
            continue
        if _perm_sign(perm) < 0:
            term = field_poly_neg(F, term)
        total = field_poly_add(F, total, term)
    return total


def field_poly_eval(F, a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add_scalar(F.mul_scalar(acc, x), c)
    return acc
