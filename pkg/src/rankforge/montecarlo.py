"""Seeded sampling of random objects.

Trials are processed in fixed-size blocks and block ``b`` draws from
``SeedSequence(seed, spawn_key=(b,))``, so the outcome depends only on the
master seed and the trial count, never on how many workers run the blocks.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Dict, Optional

import numpy as np

from .expander import DimExpander
from .gf import Field
from .linalg import FMatrix, batch_rank
from .seeded import Claim, SeededCondenser
from .twosource import BilinearCondenser

BLOCK = 4096
KINDS = ("matrix-rank", "dim-expander", "lossy", "two-source")


@dataclass(frozen=True)
class MonteCarloReport:
    kind: str
    params: Dict[str, str]
    seed: int
    trials: int
    successes: int

    @property
    def frequency(self) -> Optional[float]:
        return self.successes / self.trials if self.trials else None

    @property
    def stderr(self) -> Optional[float]:
        f = self.frequency
        if f is None:
            return None
        return sqrt(max(f * (1 - f), 0.0) / self.trials)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params, "seed": self.seed, "trials": self.trials,
                "successes": self.successes, "frequency": self.frequency, "stderr": self.stderr}


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def _trial_success(kind: str, F: Field, p: dict, rng: np.random.Generator) -> bool:
    from .verify import verify_expander, verify_seeded, verify_two_source
    if kind == "dim-expander":
        stack = F.random(rng, (p["d"], p["n"], p["n"]))
        return verify_expander(DimExpander(F, p["n"], stack, p["eps"], p["alpha"])).passed
    if kind == "lossy":
        stack = F.random(rng, (p["size"], p["t"], p["n"]))
        claim = Claim("lossy", p["r"], eps=Fraction(p["eps"]), mode=p.get("mode", "eq"))
        return verify_seeded(SeededCondenser(F, p["n"], p["t"], stack, claim)).passed
    if kind == "two-source":
        E = FMatrix(F, F.random(rng, (p["t"], p["n"] * p["m"])), shape=(p["t"], p["n"] * p["m"]))
        B = BilinearCondenser(F, p["n"], p["m"], E, p["r"], p["s"], Fraction(p.get("eps", 0)))
        return verify_two_source(B).passed
    raise ValueError(f"unknown kind {kind!r}")


def _run_block(kind: str, F: Field, params: dict, seed: int, block: int, count: int) -> int:
    rng = _block_rng(seed, block)
    if kind == "matrix-rank":
        mats = F.random(rng, (count, params["rows"], params["cols"]))
        return int((batch_rank(F, mats) <= params["max_rank"]).sum())
    return sum(_trial_success(kind, F, params, rng) for _ in range(count))


def montecarlo_random_object(kind: str, F: Field, params: dict, trials: int, seed: int,
                             jobs: int = 1) -> MonteCarloReport:
    """Fraction of uniformly random objects of ``kind`` that satisfy the property in ``params``.

    matrix-rank: rows, cols, max_rank (success means rank <= max_rank).
    dim-expander: n, d, eps, alpha.   lossy: n, t, r, eps, size[, mode].
    two-source: n, m, t, r, s[, eps].  Success means exhaustive verification passes."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    blocks = [(b, min(BLOCK, trials - b * BLOCK)) for b in range((trials + BLOCK - 1) // BLOCK)]
    if jobs <= 1 or len(blocks) == 1:
        hits = sum(_run_block(kind, F, params, seed, b, c) for b, c in blocks)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(_run_block, *zip(*[(kind, F, params, seed, b, c) for b, c in blocks])))
    shown = {k: str(v) for k, v in params.items()}
    shown["field"] = f"{F.p}^{F.k}"
    return MonteCarloReport(kind, shown, seed, trials, hits)


def random_search_seeded(F: Field, n: int, t: int, size: int, claim: Claim, seed: int,
                         budget: int = 1000) -> Optional[SeededCondenser]:
    """First random collection of ``size`` t x n matrices that verifies against ``claim``."""
    from .verify import verify_seeded
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        cand = SeededCondenser(F, n, t, F.random(rng, (size, t, n)), claim)
        if verify_seeded(cand).passed:
            return cand
    return None
