"""Lower bounds on degree / seed length / output length for random-like objects.

Thresholds mix an exact rational part with the transcendental term
c * q / ((q - 1)^2 ln q).  The rational part is kept as a Fraction; the whole
threshold is enclosed in an mpmath interval and widened in precision until its
ceiling is unambiguous, so the reported minimal integer is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Dict, Optional

from mpmath import iv, mp


@dataclass(frozen=True)
class ThresholdReport:
    name: str
    inputs: Dict[str, str]
    expression: str
    applicable: bool
    minimal: Optional[int] = None
    lower: Optional[str] = None
    upper: Optional[str] = None
    reason: str = ""

    def line(self) -> str:
        if not self.applicable:
            return f"bound inapplicable: {self.reason}"
        var = {"dim-exp": "d", "lossy": "k", "two-source": "t"}[self.name]
        return f"{var} >= {self.minimal}"


def _ivq(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def q_term(q: int, scale: int = 1):
    """Interval enclosing scale * q / ((q-1)^2 ln q)."""
    return iv.mpf(scale * q) / (iv.mpf((q - 1) ** 2) * iv.log(iv.mpf(q)))


def _min_integer(build: Callable[[], "iv.mpf"]):
    """Smallest integer >= the enclosed value, with the interval endpoints as strings."""
    for dps in (30, 60, 120, 240):
        iv.dps = dps
        val = build()
        lo, hi = ceil(mp.mpf(val.a)), ceil(mp.mpf(val.b))
        if lo == hi:
            return int(hi), mp.nstr(mp.mpf(val.a), 20), mp.nstr(mp.mpf(val.b), 20)
    raise ArithmeticError("could not settle the ceiling of the threshold")


def _report(name, inputs, expr, rational: Fraction, term=None, denom=None) -> ThresholdReport:
    """Threshold rational + term (or (rational + term) / denom when denom is given)."""
    ins = {k: str(v) for k, v in inputs.items()}
    if term is None and denom is None:
        return ThresholdReport(name, ins, expr, True, ceil(rational), str(rational), str(rational))
    minimal, lo, hi = _min_integer(lambda: (_ivq(rational) + (term() if term else 0))
                                   / (denom() if denom else 1))
    return ThresholdReport(name, ins, expr, True, minimal, lo, hi)


def bound_dim_expander(q: int, alpha, eps) -> ThresholdReport:
    """Degree a random collection needs to be an (eps, alpha) dimension expander."""
    alpha, eps = Fraction(alpha), Fraction(eps)
    inputs = {"q": q, "alpha": alpha, "eps": eps}
    if alpha < 1 or not 0 < eps or alpha * eps >= 1:
        return ThresholdReport("dim-exp", {k: str(v) for k, v in inputs.items()}, "", False,
                               reason="need alpha >= 1, eps > 0 and alpha*eps < 1")
    base = alpha + 1 / (1 - alpha * eps)
    if q >= 4:
        return _report("dim-exp", inputs, "alpha + 1/(1-alpha eps) + 1", base + 1)
    return _report("dim-exp", inputs, "alpha + 1/(1-alpha eps) + 2q/((q-1)^2 ln q)", base,
                   term=lambda: q_term(q, 2))


def bound_lossy_seeded(q: int, n: int, t: int, r: int, eps, mode: str = "le") -> ThresholdReport:
    """Number of random t x n matrices needed for an (r, eps) lossy seeded condenser."""
    eps = Fraction(eps)
    inputs = {"q": q, "n": n, "t": t, "r": r, "eps": eps, "mode": mode}
    ins = {k: str(v) for k, v in inputs.items()}
    if mode not in ("eq", "le"):
        raise ValueError("mode must be 'eq' or 'le'")
    if not 0 < eps < 1:
        return ThresholdReport("lossy", ins, "", False, reason="need 0 < eps < 1")
    slack = t - (1 - eps) * r
    if mode == "le":
        num, den = Fraction(n), eps * slack
        expr = "(n + c) / (eps (t - (1-eps) r) - c)"
    else:
        num, den = Fraction(r * n), slack * (floor(eps * r) + 1)
        expr = "(r n + c) / ((t - (1-eps) r)(floor(eps r) + 1) - c)"
    if q >= 4:
        if den - 1 <= 0:
            return ThresholdReport("lossy", ins, expr, False, reason="nonpositive denominator")
        return _report("lossy", inputs, expr.replace("c", "1"), (num + 1) / (den - 1))
    iv.dps = 30
    if (_ivq(den) - q_term(q)).a <= 0:
        return ThresholdReport("lossy", ins, expr, False, reason="nonpositive denominator")
    return _report("lossy", inputs, expr, num, term=lambda: q_term(q),
                   denom=lambda: _ivq(den) - q_term(q))


def bound_two_source(q: int, n: int, m: int, r: int, s: int, eps=0, mode: str = "lossless") -> ThresholdReport:
    """Output length a random bilinear map needs to be an (r, s, eps) two-source condenser.

    ``eq``: exact dimensions r and s; ``le``: every dimension up to r in the first source."""
    eps = Fraction(eps)
    inputs = {"q": q, "n": n, "m": m, "r": r, "s": s, "eps": eps, "mode": mode}
    ins = {k: str(v) for k, v in inputs.items()}
    if mode == "lossless":
        if eps != 0:
            return ThresholdReport("two-source", ins, "", False, reason="lossless mode needs eps = 0")
        rational = Fraction(r * n + s * m + r * s - 1)
        expr = "r n + s m + r s + 2q/((q-1)^2 ln q) - 1"
    elif mode in ("eq", "le"):
        if not 0 < eps < 1:
            return ThresholdReport("two-source", ins, "", False, reason="lossy modes need 0 < eps < 1")
        second = Fraction(m) / (eps * r) if mode == "eq" else Fraction(m) / eps
        rational = Fraction(n) / (eps * s) + second + (1 - eps) * r * s
        expr = ("n/(eps s) + m/(eps r)" if mode == "eq" else "n/(eps s) + m/eps") \
            + " + (1-eps) r s + 2q/((q-1)^2 ln q)"
    else:
        raise ValueError("mode must be 'lossless', 'eq' or 'le'")
    return _report("two-source", inputs, expr, rational, term=lambda: q_term(q, 2))


def subspace_count_bound(q: int, n: int, r: int):
    """Interval enclosing e^(q/(q-1)^2) * q^(r(n-r)), an upper bound on the number of r-subspaces."""
    iv.dps = 30
    return iv.exp(iv.mpf(q) / iv.mpf((q - 1) ** 2)) * iv.mpf(q) ** (r * (n - r))
