"""Plain-text file formats.

Every file opens with a ``rankforge-<kind> v1`` magic line and a field header
``field p=<p> k=<k> [modulus=<c0,...,ck>]``.  Elements are written as their
base-p coefficients joined by commas (just the integer for prime fields) and
rationals always as ``a/b``.  Lines starting with ``#`` are comments.
Serialization is deterministic, so write-then-read reproduces objects exactly.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .expander import DimExpander
from .gf import Field, FieldError
from .linalg import FMatrix
from .seeded import Claim, SeededCondenser, SubspaceDesign
from .twosource import BilinearCondenser, RankMetricCode


class FormatError(ValueError):
    pass


_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Exact rational from ``a/b`` or an integer; decimals are refused."""
    text = text.strip()
    if not _RATIONAL.match(text):
        raise FormatError(f"{text!r} is not a rational of the form a/b")
    try:
        return Fraction(text)
    except ZeroDivisionError as exc:
        raise FormatError(f"{text!r} has a zero denominator") from exc


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# --- writing -----------------------------------------------------------------------

def _matrix_lines(M: FMatrix) -> List[str]:
    F = M.field
    lines = ["rankforge-matrix v1", F.header(), f"rows={M.rows} cols={M.cols}"]
    for row in M.array:
        lines.append(" ".join(F.format_element(x) for x in row))
    return lines


def _kv(**items) -> str:
    return " ".join(f"{k}={v}" for k, v in items.items())


def dumps(obj) -> str:
    if isinstance(obj, FMatrix):
        lines = _matrix_lines(obj)
    elif isinstance(obj, SeededCondenser):
        c = obj.claim
        lines = ["rankforge-collection v1", obj.field.header()]
        if obj.note:
            lines.append(f"# {obj.note}")
        if c.kind == "lossy":
            kv = _kv(kind=c.kind, n=obj.n, t=obj.t, r=c.r, eps=format_rational(c.eps), mode=c.mode, count=len(obj))
        else:
            kv = _kv(kind=c.kind, n=obj.n, t=obj.t, r=c.r, L=format_rational(c.L), count=len(obj))
        lines.append(kv)
        for M in obj.matrices:
            lines += _matrix_lines(M)
    elif isinstance(obj, SubspaceDesign):
        c = obj.claim
        lines = ["rankforge-design v1", obj.field.header(),
                 _kv(kind=c.kind, n=obj.n, r=c.r, L=format_rational(c.L), count=len(obj.subspaces))]
        for H in obj.subspaces:
            lines += _matrix_lines(H)
    elif isinstance(obj, DimExpander):
        lines = ["rankforge-expander v1", obj.field.header(),
                 _kv(n=obj.n, degree=obj.degree, eps=format_rational(obj.eps), alpha=format_rational(obj.alpha))]
        for M in obj.matrices:
            lines += _matrix_lines(M)
    elif isinstance(obj, RankMetricCode):
        lines = ["rankforge-code v1", obj.field.header(),
                 _kv(n=obj.n, m=obj.m, dim=obj.dim, dist=obj.distance)]
        for M in obj.matrices():
            lines += _matrix_lines(M)
    elif isinstance(obj, BilinearCondenser):
        kv = _kv(n=obj.n, m=obj.m, t=obj.t, r=obj.r, s=obj.s, eps=format_rational(obj.eps))
        le = ("r" if obj.le_r else "") + ("s" if obj.le_s else "")
        if le:
            kv += f" le={le}"
        lines = ["rankforge-bilinear v1", obj.field.header(), kv] + _matrix_lines(obj.E)
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def write_file(path: str, obj) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(obj))


# --- reading -----------------------------------------------------------------------

class _Reader:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        if self.lines and self.lines[-1] == "":
            self.lines.pop()
        self.pos = 0
        self.notes: List[str] = []

    def next_header(self) -> str:
        """Next non-blank, non-comment line (comments are collected)."""
        while self.pos < len(self.lines):
            line = self.lines[self.pos].strip()
            self.pos += 1
            if line.startswith("#"):
                self.notes.append(line[1:].strip())
            elif line:
                return line
        raise FormatError("unexpected end of file")

    def raw(self) -> str:
        if self.pos >= len(self.lines):
            raise FormatError("unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def done(self):
        while self.pos < len(self.lines):
            line = self.lines[self.pos].strip()
            if line and not line.startswith("#"):
                raise FormatError(f"trailing content: {line!r}")
            self.pos += 1


def _parse_kv(line: str, keys: Tuple[str, ...], optional: Tuple[str, ...] = ()) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for tok in line.split():
        if "=" not in tok:
            raise FormatError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        if k in out:
            raise FormatError(f"duplicate key {k!r}")
        out[k] = v
    missing = [k for k in keys if k not in out]
    extra = [k for k in out if k not in keys and k not in optional]
    if missing or extra:
        raise FormatError(f"header {line!r}: missing {missing}, unexpected {extra}")
    return out


def _int(v: str) -> int:
    if not re.match(r"^\d+$", v):
        raise FormatError(f"{v!r} is not a non-negative integer")
    return int(v)


def _parse_field(line: str) -> Field:
    if not line.startswith("field "):
        raise FormatError(f"expected a field header, got {line!r}")
    kv = _parse_kv(line[len("field "):], ("p", "k"), ("modulus",))
    p, k = _int(kv["p"]), _int(kv["k"])
    try:
        if k == 1:
            if "modulus" in kv:
                raise FormatError("prime fields take no modulus")
            return Field(p, 1)
        if "modulus" not in kv:
            raise FormatError("extension fields need a modulus")
        modulus = [_int(c) for c in kv["modulus"].split(",")]
        if any(c >= p for c in modulus):
            raise FormatError("modulus coefficient out of range")
        return Field(p, k, modulus)
    except FieldError as exc:
        raise FormatError(str(exc)) from exc


def _expect_magic(rd: _Reader, kind: str):
    line = rd.next_header()
    if line != f"rankforge-{kind} v1":
        raise FormatError(f"expected 'rankforge-{kind} v1', got {line!r}")


def _read_matrix(rd: _Reader, field: Field = None) -> FMatrix:
    _expect_magic(rd, "matrix")
    F = _parse_field(rd.next_header())
    if field is not None and F != field:
        raise FormatError("matrix field differs from the enclosing object's field")
    kv = _parse_kv(rd.next_header(), ("rows", "cols"))
    rows, cols = _int(kv["rows"]), _int(kv["cols"])
    data = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        toks = rd.raw().split()
        if len(toks) != cols:
            raise FormatError(f"row {i} has {len(toks)} entries, expected {cols}")
        try:
            data[i] = [F.parse_element(tok) for tok in toks]
        except (FieldError, ValueError) as exc:
            raise FormatError(str(exc)) from exc
    return FMatrix(F, data)


def _read_many(rd: _Reader, F: Field, count: int, shape=None) -> List[FMatrix]:
    mats = [_read_matrix(rd, F) for _ in range(count)]
    if shape is not None:
        for M in mats:
            if M.shape != shape:
                raise FormatError(f"matrix shape {M.shape}, expected {shape}")
    return mats


def loads(text: str):
    rd = _Reader(text)
    magic = rd.next_header()
    rd.pos = 0
    rd.notes = []
    try:
        obj = _dispatch(rd, magic)
    except FormatError:
        raise
    except (ValueError, KeyError, IndexError) as exc:
        raise FormatError(str(exc)) from exc
    rd.done()
    return obj


def _dispatch(rd: _Reader, magic: str):
    if magic == "rankforge-matrix v1":
        return _read_matrix(rd)
    kind = magic.split()[0].replace("rankforge-", "", 1) if magic.startswith("rankforge-") else None
    if kind not in ("collection", "design", "expander", "code", "bilinear") or magic.split()[-1] != "v1":
        raise FormatError(f"unknown file type {magic!r}")
    _expect_magic(rd, kind)
    F = _parse_field(rd.next_header())
    header = rd.next_header()
    if kind == "collection":
        kv = _parse_kv(header, ("kind", "n", "t", "r", "count"), ("L", "eps", "mode"))
        n, t, r, count = (_int(kv[k]) for k in ("n", "t", "r", "count"))
        if kv["kind"] == "lossy":
            if "eps" not in kv or "mode" not in kv or "L" in kv:
                raise FormatError("lossy collections need eps and mode")
            claim = Claim("lossy", r, eps=parse_rational(kv["eps"]), mode=kv["mode"])
        else:
            if "L" not in kv or "eps" in kv or "mode" in kv:
                raise FormatError("lossless collections need L")
            claim = Claim(kv["kind"], r, L=parse_rational(kv["L"]))
        mats = _read_many(rd, F, count, (t, n))
        note = next((x for x in rd.notes if x.startswith("lifted-from")), None)
        return SeededCondenser.from_matrices(F, n, t, mats, claim, note=note)
    if kind == "design":
        kv = _parse_kv(header, ("kind", "n", "r", "L", "count"))
        n = _int(kv["n"])
        claim = Claim(kv["kind"], _int(kv["r"]), L=parse_rational(kv["L"]))
        subs = _read_many(rd, F, _int(kv["count"]))
        if any(H.cols != n for H in subs):
            raise FormatError("design subspaces must live in F^n")
        return SubspaceDesign(F, n, tuple(subs), claim)
    if kind == "expander":
        kv = _parse_kv(header, ("n", "degree", "eps", "alpha"))
        n = _int(kv["n"])
        mats = _read_many(rd, F, _int(kv["degree"]), (n, n))
        stack = np.array([M.array for M in mats], dtype=np.int64).reshape(len(mats), n, n)
        return DimExpander(F, n, stack, parse_rational(kv["eps"]), parse_rational(kv["alpha"]))
    if kind == "code":
        kv = _parse_kv(header, ("n", "m", "dim", "dist"))
        n, m = _int(kv["n"]), _int(kv["m"])
        mats = _read_many(rd, F, _int(kv["dim"]), (n, m))
        basis = np.array([M.array for M in mats], dtype=np.int64).reshape(len(mats), n, m)
        return RankMetricCode(F, n, m, basis, _int(kv["dist"]))
    kv = _parse_kv(header, ("n", "m", "t", "r", "s", "eps"), ("le",))
    n, m, t = _int(kv["n"]), _int(kv["m"]), _int(kv["t"])
    E = _read_matrix(rd, F)
    if E.shape != (t, n * m):
        raise FormatError(f"bilinear matrix shape {E.shape}, expected {(t, n * m)}")
    le = kv.get("le", "")
    if le not in ("", "r", "s", "rs"):
        raise FormatError(f"bad le flag {le!r}")
    return BilinearCondenser(F, n, m, E, _int(kv["r"]), _int(kv["s"]), parse_rational(kv["eps"]),
                             le_r="r" in le, le_s="s" in le)


def read_file(path: str):
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())
