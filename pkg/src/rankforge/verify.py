"""Exhaustive and sampled checkers for every object's claim.

Each checker reduces its property to a per-subspace integer statistic, scans
all subspaces (or seeded random ones), and reports the worst value together
with the first subspace attaining it.  Scans shard over contiguous index
ranges; the witness is always the lowest-index worst case, so results do not
depend on the number of workers.
"""
from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import ceil, floor
from typing import Any, Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BudgetExceeded
from .expander import DimExpander
from .gf import Field
from .linalg import FMatrix, SubspaceIter, batch_rank, count_subspaces, row_space_basis
from .seeded import SeededCondenser, SubspaceDesign
from .twosource import BilinearCondenser, RankMetricCode, min_rank_distance

DEFAULT_BUDGET = 10**8
_CELLS_PER_BATCH = 1 << 22


@dataclass
class VerifyReport:
    object_id: str
    property: str
    mode: str
    worst: int
    threshold: int
    passed: bool
    witness: Any
    checked: int
    seed: Optional[int] = None
    details: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        line = (f"{verdict} {self.property} mode={self.mode} worst={self.worst} "
                f"threshold={self.threshold} checked={self.checked}")
        if not self.passed and self.witness is not None:
            line += f" witness={json.dumps(self.witness)}"
        return line


def object_id(obj) -> str:
    from .fileio import dumps
    return hashlib.sha256(dumps(obj).encode()).hexdigest()[:16]


# --- statistics -------------------------------------------------------------------

def _as_cols(batch: np.ndarray) -> np.ndarray:
    return np.swapaxes(batch, 1, 2)


class _SeededStat:
    def __init__(self, F: Field, stack: np.ndarray, s: int, kind: str):
        self.F, self.stack, self.s, self.kind = F, stack, s, kind
        self.sense = "min" if kind == "lossy" else "max"
        self.cells = max(1, stack.shape[0] * stack.shape[1] * max(s, 1))

    def __call__(self, batch: np.ndarray) -> np.ndarray:
        if self.stack.shape[0] == 0:
            return np.zeros(len(batch), dtype=np.int64)
        imgs = self.F.matmul(self.stack[None], _as_cols(batch)[:, None])
        rk = batch_rank(self.F, imgs)
        if self.kind == "weak":
            return (rk < self.s).sum(axis=1)
        if self.kind == "strong":
            return (self.s - rk).sum(axis=1)
        return rk.max(axis=1)


class _DesignStat:
    def __init__(self, F: Field, subspaces: Sequence[np.ndarray], s: int, kind: str):
        self.F, self.subs, self.s, self.kind = F, list(subspaces), s, kind
        self.sense = "max"
        self.cells = max(1, sum(h.shape[0] + s for h in self.subs) * max(s, 1))

    def __call__(self, batch: np.ndarray) -> np.ndarray:
        out = np.zeros(len(batch), dtype=np.int64)
        for H in self.subs:
            h = H.shape[0]
            stacked = np.concatenate([np.broadcast_to(H, (len(batch),) + H.shape), batch], axis=1)
            inter = h + self.s - batch_rank(self.F, stacked)
            out += (inter > 0) if self.kind == "weak" else inter
        return out


class _ExpanderStat:
    def __init__(self, F: Field, stack: np.ndarray, s: int):
        self.F, self.stack, self.s = F, stack, s
        self.sense = "min"
        self.cells = max(1, stack.shape[0] * stack.shape[1] * max(s, 1))

    def __call__(self, batch: np.ndarray) -> np.ndarray:
        B = len(batch)
        imgs = self.F.matmul(self.stack[None], _as_cols(batch)[:, None])   # (B, D, n, s)
        n = self.stack.shape[1]
        flat = np.transpose(imgs, (0, 2, 1, 3)).reshape(B, n, -1)
        return batch_rank(self.F, flat)


class _PairStat:
    sense = "min"

    def __init__(self, F: Field, slices: np.ndarray, r: int, s: int):
        self.F, self.slices, self.r, self.s = F, slices, r, s

    def __call__(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        t = self.slices.shape[0]
        Y = self.F.matmul(self.slices[None], _as_cols(B)[:, None])        # (Bb, t, n, s)
        Z = self.F.matmul(A[:, None, None], Y[None])                      # (Ba, Bb, t, r, s)
        Z = Z.reshape(len(A), len(B), t, self.r * self.s)
        return batch_rank(self.F, Z)


# --- scanning -----------------------------------------------------------------------

def _better(v, best, sense) -> bool:
    if best is None:
        return True
    return v > best if sense == "max" else v < best


def _scan_range(F: Field, n: int, s: int, stat, lo: int, hi: int) -> Tuple[int, int]:
    size = max(1, min(1 << 15, _CELLS_PER_BATCH // stat.cells))
    best, where, pos = None, -1, lo
    for batch in SubspaceIter(F, n, s, lo, hi).batches(size):
        vals = stat(batch)
        j = int(np.argmax(vals) if stat.sense == "max" else np.argmin(vals))
        if _better(int(vals[j]), best, stat.sense):
            best, where = int(vals[j]), pos + j
        pos += len(batch)
    return best, where


def _scan_pair_range(F: Field, dims: Tuple[int, int, int, int], stat: _PairStat, lo: int, hi: int):
    n, r, m, s = dims
    b_all = np.concatenate(list(SubspaceIter(F, m, s).batches(1 << 16)))
    nb = len(b_all)
    per = max(1, stat.slices.shape[0] * max(r * s, 1))
    b_chunk = max(1, min(nb, _CELLS_PER_BATCH // per))
    a_chunk = max(1, _CELLS_PER_BATCH // (per * b_chunk))
    best, where, pos = None, -1, lo
    for A in SubspaceIter(F, n, r, lo, hi).batches(a_chunk):
        for b0 in range(0, nb, b_chunk):
            vals = stat(A, b_all[b0:b0 + b_chunk])
            flat = int(np.argmin(vals))
            ia, ib = divmod(flat, vals.shape[1])
            v = int(vals[ia, ib])
            idx = (pos + ia) * nb + b0 + ib
            if best is None or v < best or (v == best and idx < where):
                best, where = v, idx
        pos += len(A)
    return best, where


def _combine(parts: Sequence[Tuple[int, int]], sense: str) -> Tuple[int, int]:
    best, where = None, -1
    for v, i in parts:
        if v is None:
            continue
        if _better(v, best, sense) or (v == best and i < where):
            best, where = v, i
    return best, where


def _sharded(fn: Callable, total: int, jobs: int, sense: str, *args):
    if jobs <= 1 or total < 2 * jobs:
        return fn(*args, 0, total)
    bounds = [total * i // jobs for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(fn, *args, bounds[i], bounds[i + 1]) for i in range(jobs)]
        parts = [f.result() for f in futs]
    return _combine(parts, sense)


def _random_bases(F: Field, n: int, s: int, rng: np.random.Generator, count: int) -> np.ndarray:
    out = []
    have = 0
    while have < count:
        cand = F.random(rng, (count - have, s, n))
        ok = batch_rank(F, cand) == s
        out.append(cand[ok])
        have += int(ok.sum())
    return np.concatenate(out)[:count]


def _pass(value: int, threshold: int, sense: str) -> bool:
    return value <= threshold if sense == "max" else value >= threshold


def _margin(value: int, threshold: int, sense: str) -> int:
    return threshold - value if sense == "max" else value - threshold


def _check_dims(F: Field, n: int, jobs_spec: List[Tuple[int, Any, int]], property_name: str,
                obj, mode: str, budget: int, jobs: int, trials: int, seed: Optional[int]) -> VerifyReport:
    """jobs_spec: (dimension, statistic, threshold) triples, checked in order."""
    if mode not in ("exhaustive", "sampled"):
        raise ValueError("mode must be 'exhaustive' or 'sampled'")
    details = []
    if mode == "exhaustive":
        work = sum(count_subspaces(F, n, s) for s, _, _ in jobs_spec)
        if work > budget:
            raise BudgetExceeded(work, budget, property_name)
    else:
        if seed is None:
            raise ValueError("sampled verification needs an explicit seed")
        rng = np.random.default_rng(seed)
    checked = 0
    for s, stat, thr in jobs_spec:
        if mode == "exhaustive":
            total = count_subspaces(F, n, s)
            value, idx = _sharded(_scan_range, total, jobs, stat.sense, F, n, s, stat)
            witness = SubspaceIter(F, n, s).unrank(idx).to_lists()
            checked += total
        else:
            bases = _random_bases(F, n, s, rng, trials)
            vals = stat(bases)
            j = int(np.argmax(vals) if stat.sense == "max" else np.argmin(vals))
            value = int(vals[j])
            witness = row_space_basis(FMatrix(F, bases[j])).to_lists()
            checked += trials
        details.append({"dim": s, "worst": value, "threshold": thr,
                        "pass": _pass(value, thr, stat.sense), "witness": witness})
    sense = jobs_spec[0][1].sense
    failing = [d for d in details if not d["pass"]]
    pick = failing[0] if failing else min(details, key=lambda d: _margin(d["worst"], d["threshold"], sense))
    return VerifyReport(object_id(obj), property_name, mode, pick["worst"], pick["threshold"],
                        not failing, pick["witness"], checked, seed if mode == "sampled" else None, details)


# --- public checkers -------------------------------------------------------------

def _seeded_dims(claim) -> List[int]:
    if claim.kind == "lossy" and claim.mode == "le":
        return list(range(1, claim.r + 1))
    return [claim.r]


def _seeded_threshold(claim, s: int) -> int:
    if claim.kind == "lossy":
        return ceil((1 - claim.eps) * s)
    return floor(claim.L)


def _seeded_property(claim) -> str:
    return f"lossy-{claim.mode}" if claim.kind == "lossy" else f"{claim.kind}-lossless"


def verify_seeded(C: SeededCondenser, mode: str = "exhaustive", *, seed: Optional[int] = None,
                  trials: int = 10_000, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> VerifyReport:
    spec = [(s, _SeededStat(C.field, C.stack, s, C.claim.kind), _seeded_threshold(C.claim, s))
            for s in _seeded_dims(C.claim)]
    return _check_dims(C.field, C.n, spec, _seeded_property(C.claim), C, mode, budget, jobs, trials, seed)


def verify_design(D: SubspaceDesign, mode: str = "exhaustive", *, seed: Optional[int] = None,
                  trials: int = 10_000, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> VerifyReport:
    if not D.claim.is_lossless:
        raise ValueError("subspace designs carry weak or strong claims")
    subs = [H.array for H in D.subspaces]
    s = D.claim.r
    spec = [(s, _DesignStat(D.field, subs, s, D.claim.kind), floor(D.claim.L))]
    return _check_dims(D.field, D.n, spec, f"design-{D.claim.kind}", D, mode, budget, jobs, trials, seed)


def verify_expander(X: DimExpander, mode: str = "exhaustive", *, seed: Optional[int] = None,
                    trials: int = 10_000, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> VerifyReport:
    top = floor(X.eps * X.n)
    if top < 1:
        raise ValueError("eps * n < 1: no subspace dimension to check")
    spec = [(s, _ExpanderStat(X.field, X.stack, s), ceil(X.alpha * s)) for s in range(1, top + 1)]
    return _check_dims(X.field, X.n, spec, "dim-expander", X, mode, budget, jobs, trials, seed)


def _two_source_pairs(B: BilinearCondenser) -> List[Tuple[int, int]]:
    rs = range(1, B.r + 1) if B.le_r else [B.r]
    ss = range(1, B.s + 1) if B.le_s else [B.s]
    return [(r, s) for r in rs for s in ss]


def verify_two_source(B: BilinearCondenser, mode: str = "exhaustive", *, seed: Optional[int] = None,
                      trials: int = 10_000, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> VerifyReport:
    F = B.field
    pairs = _two_source_pairs(B)
    if mode == "exhaustive":
        work = sum(count_subspaces(F, B.n, r) * count_subspaces(F, B.m, s) for r, s in pairs)
        if work > budget:
            raise BudgetExceeded(work, budget, "two-source")
    elif seed is None:
        raise ValueError("sampled verification needs an explicit seed")
    else:
        rng = np.random.default_rng(seed)
    details, checked = [], 0
    for r, s in pairs:
        stat = _PairStat(F, B.slices, r, s)
        thr = ceil((1 - B.eps) * r * s)
        if mode == "exhaustive":
            na = count_subspaces(F, B.n, r)
            nb = count_subspaces(F, B.m, s)
            value, idx = _sharded(_scan_pair_range, na, jobs, "min", F, (B.n, r, B.m, s), stat)
            ia, ib = divmod(idx, nb)
            witness = {"A": SubspaceIter(F, B.n, r).unrank(ia).to_lists(),
                       "B": SubspaceIter(F, B.m, s).unrank(ib).to_lists()}
            checked += na * nb
        else:
            A = _random_bases(F, B.n, r, rng, trials)
            Bb = _random_bases(F, B.m, s, rng, trials)
            vals = np.array([stat(A[i:i + 1], Bb[i:i + 1])[0, 0] for i in range(trials)])
            j = int(np.argmin(vals))
            value = int(vals[j])
            witness = {"A": row_space_basis(FMatrix(F, A[j])).to_lists(),
                       "B": row_space_basis(FMatrix(F, Bb[j])).to_lists()}
            checked += trials
        details.append({"dims": [r, s], "worst": value, "threshold": thr,
                        "pass": value >= thr, "witness": witness})
    failing = [d for d in details if not d["pass"]]
    pick = failing[0] if failing else min(details, key=lambda d: d["worst"] - d["threshold"])
    return VerifyReport(object_id(B), "two-source", mode, pick["worst"], pick["threshold"], not failing,
                        pick["witness"], checked, seed if mode == "sampled" else None, details)


def verify_code(C: RankMetricCode, *, budget: int = DEFAULT_BUDGET) -> VerifyReport:
    d = min_rank_distance(C, budget=budget)
    return VerifyReport(object_id(C), "rank-distance", "exhaustive", d, C.distance, d >= C.distance,
                        None, C.field.q ** C.dim - 1)


def verify(obj, mode: str = "exhaustive", **kw) -> VerifyReport:
    if isinstance(obj, SeededCondenser):
        return verify_seeded(obj, mode, **kw)
    if isinstance(obj, SubspaceDesign):
        return verify_design(obj, mode, **kw)
    if isinstance(obj, DimExpander):
        return verify_expander(obj, mode, **kw)
    if isinstance(obj, BilinearCondenser):
        return verify_two_source(obj, mode, **kw)
    if isinstance(obj, RankMetricCode):
        return verify_code(obj, budget=kw.get("budget", DEFAULT_BUDGET))
    raise TypeError(f"cannot verify {type(obj).__name__}")


def witness_violates(obj, report: VerifyReport) -> bool:
    """Recompute the statistic on a failing report's witness and confirm it breaks the claim."""
    w = report.witness
    if isinstance(obj, BilinearCondenser):
        A = np.array(w["A"], dtype=np.int64)[None]
        B = np.array(w["B"], dtype=np.int64)[None]
        v = int(_PairStat(obj.field, obj.slices, A.shape[1], B.shape[1])(A, B)[0, 0])
        return v < ceil((1 - obj.eps) * A.shape[1] * B.shape[1])
    basis = np.array(w, dtype=np.int64)[None]
    s = basis.shape[1]
    if isinstance(obj, SeededCondenser):
        stat = _SeededStat(obj.field, obj.stack, s, obj.claim.kind)
        thr = _seeded_threshold(obj.claim, s)
    elif isinstance(obj, SubspaceDesign):
        stat = _DesignStat(obj.field, [H.array for H in obj.subspaces], s, obj.claim.kind)
        thr = floor(obj.claim.L)
    elif isinstance(obj, DimExpander):
        stat = _ExpanderStat(obj.field, obj.stack, s)
        thr = ceil(obj.alpha * s)
    else:
        raise TypeError(type(obj).__name__)
    return not _pass(int(stat(basis)[0]), thr, stat.sense)
