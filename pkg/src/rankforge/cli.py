"""Command-line front end: construct, verify, convert, bounds, montecarlo.

Exit codes: 0 success / claim verified, 1 malformed input or usage error,
2 claim refuted, 3 work budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import ceil, floor

from . import fileio
from .bounds import bound_dim_expander, bound_lossy_seeded, bound_two_source
from .errors import BudgetExceeded
from .expander import tensor_then_condense
from .gf import FieldError, parse_field_spec
from .montecarlo import KINDS, montecarlo_random_object
from .seeded import (SeededCondenser, condenser_from_design, design_from_condenser,
                     lossless_collection, lossy_collection)
from .smallfield import lift_condenser
from .twosource import (BilinearCondenser, RankMetricCode, code_to_condenser, condenser_to_code,
                        condense_tensor_lossless, gabidulin_code, inner_condenser_search,
                        lossy_outer_inner, pruned_lossless, roth_code)
from .verify import DEFAULT_BUDGET, verify

EXIT_OK, EXIT_MALFORMED, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return fileio.parse_rational(text)
    except fileio.FormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _field(text: str):
    try:
        return parse_field_spec(text)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _construct(args):
    F, what = args.field, args.what
    if what == "lossless":
        _need(args, "n", "t", "r")
        obj = lossless_collection(F, args.n, args.t, args.r)
    elif what == "lossy":
        _need(args, "n", "t", "r", "eps")
        obj = lossy_collection(F, args.n, args.t, args.r, args.eps, args.size)
    elif what == "expander":
        _need(args, "n", "d", "eps", "delta")
        gamma = args.gamma or Fraction(0)
        r = floor(args.eps * args.n)
        if r < 1:
            raise UsageError("eps * n must be at least 1")
        rc = ceil((1 - gamma) * r * args.d)
        C = lossy_collection(F, args.n * args.d, args.n, rc, args.delta)
        obj = tensor_then_condense(C, args.d, gamma, r)
    elif what == "two-source":
        _need(args, "n", "m", "r", "s")
        if args.variant == "tensor":
            obj = condense_tensor_lossless(F, args.n, args.m, args.r, args.s)
        elif args.variant == "pruned":
            obj = pruned_lossless(F, args.n, args.m, args.r, args.s)
        else:
            _need(args, "eps", "t", "inner_t")
            if args.n != args.m or args.r != args.s:
                raise UsageError("the lossy variant needs n = m and r = s")
            need = ceil((1 - args.eps) * args.r)
            found = inner_condenser_search(F, args.t, args.inner_t, need, need, args.eps,
                                           seed=args.seed or 0, budget=args.budget or 1000)
            if not found.found:
                raise UsageError("no inner condenser found within the search budget")
            obj = lossy_outer_inner(F, args.n, args.r, args.eps, found.condenser)
    elif what == "gabidulin":
        _need(args, "n", "m", "r")
        if F.k != 1:
            raise UsageError("gabidulin codes are built over a prime field")
        obj = gabidulin_code(F.p, args.m, args.n, args.r)
    else:
        _need(args, "n", "m", "r")
        obj = roth_code(F, args.n, args.m, args.r)
    fileio.write_file(args.out, obj)
    print(f"wrote {type(obj).__name__} to {args.out}")
    return EXIT_OK


def _verify(args):
    obj = fileio.read_file(args.infile)
    kw = {"budget": args.budget}
    if not isinstance(obj, RankMetricCode):
        kw.update(seed=args.seed, trials=args.trials, jobs=args.jobs)
    report = verify(obj, args.mode, **kw)
    print(report.to_json() if args.json else report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def _convert(args):
    obj = fileio.read_file(args.infile)
    how = args.how
    if how == "design-from-condenser":
        if not isinstance(obj, SeededCondenser):
            raise UsageError("expected a collection file")
        out = design_from_condenser(obj)
    elif how == "condenser-from-design":
        _need(args, "t")
        out = condenser_from_design(obj, args.t)
    elif how == "condenser-to-code":
        if not isinstance(obj, BilinearCondenser):
            raise UsageError("expected a bilinear file")
        out = condenser_to_code(obj)
    elif how == "code-to-condenser":
        if not isinstance(obj, RankMetricCode):
            raise UsageError("expected a code file")
        out = code_to_condenser(obj)
    else:
        if not isinstance(obj, SeededCondenser):
            raise UsageError("expected a collection file")
        out = lift_condenser(obj, args.base)
    fileio.write_file(args.out, out)
    print(f"wrote {type(out).__name__} to {args.out}")
    return EXIT_OK


def _bounds(args):
    if args.which == "dim-exp":
        _need(args, "q", "alpha", "eps")
        rep = bound_dim_expander(args.q, args.alpha, args.eps)
    elif args.which == "lossy":
        _need(args, "q", "n", "t", "r", "eps")
        rep = bound_lossy_seeded(args.q, args.n, args.t, args.r, args.eps, args.mode or "le")
    else:
        _need(args, "q", "n", "m", "r", "s")
        rep = bound_two_source(args.q, args.n, args.m, args.r, args.s, args.eps or 0,
                               args.mode or ("lossless" if not args.eps else "eq"))
    print(rep.line())
    if args.json:
        print(json.dumps(rep.__dict__, sort_keys=True))
    return EXIT_OK if rep.applicable else EXIT_MALFORMED


def _montecarlo(args):
    keys = {"matrix-rank": ("rows", "cols", "max_rank"), "dim-expander": ("n", "d", "eps", "alpha"),
            "lossy": ("n", "t", "r", "eps", "size"), "two-source": ("n", "m", "t", "r", "s")}[args.kind]
    _need(args, *keys)
    params = {k: getattr(args, k) for k in keys}
    if args.kind == "lossy":
        params["mode"] = args.mode or "eq"
    if args.kind == "two-source" and args.eps is not None:
        params["eps"] = args.eps
    rep = montecarlo_random_object(args.kind, args.field, params, args.trials, args.seed, args.jobs)
    print(json.dumps(rep.to_dict(), sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rankforge", description="Rank condensers, dimension expanders and rank-metric codes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build an object and write it to a file")
    c.add_argument("what", choices=["lossless", "lossy", "expander", "two-source", "gabidulin", "roth"])
    c.add_argument("--field", type=_field, required=True, help="field as p^k, e.g. 13^1")
    for name in ("n", "m", "t", "r", "s", "d", "size", "inner-t", "seed", "budget"):
        c.add_argument("--" + name, type=int)
    for name in ("eps", "delta", "gamma"):
        c.add_argument("--" + name, type=_rational)
    c.add_argument("--variant", choices=["pruned", "tensor", "lossy"], default="pruned")
    c.add_argument("--out", required=True)
    c.set_defaults(func=_construct)

    v = sub.add_parser("verify", help="check the claim stored in a file")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    v.add_argument("--seed", type=int)
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_verify)

    cv = sub.add_parser("convert", help="move between equivalent descriptions")
    cv.add_argument("how", choices=["design-from-condenser", "condenser-from-design", "condenser-to-code",
                                    "code-to-condenser", "lift"])
    cv.add_argument("--in", dest="infile", required=True)
    cv.add_argument("--out", required=True)
    cv.add_argument("--base", type=_field, help="target prime field for lift, e.g. 2^1")
    cv.add_argument("--t", type=int)
    cv.set_defaults(func=_convert)

    b = sub.add_parser("bounds", help="thresholds for random constructions")
    b.add_argument("which", choices=["dim-exp", "lossy", "two-source"])
    for name in ("q", "n", "m", "t", "r", "s"):
        b.add_argument("--" + name, type=int)
    for name in ("alpha", "eps"):
        b.add_argument("--" + name, type=_rational)
    b.add_argument("--mode", choices=["eq", "le", "lossless"])
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=_bounds)

    mc = sub.add_parser("montecarlo", help="estimate how often random objects succeed")
    mc.add_argument("kind", choices=list(KINDS))
    mc.add_argument("--field", type=_field, required=True)
    mc.add_argument("--trials", type=int, required=True)
    mc.add_argument("--seed", type=int, required=True)
    mc.add_argument("--jobs", type=int, default=1)
    for name in ("rows", "cols", "max-rank", "n", "m", "t", "r", "s", "d", "size"):
        mc.add_argument("--" + name, type=int)
    for name in ("eps", "alpha"):
        mc.add_argument("--" + name, type=_rational)
    mc.add_argument("--mode", choices=["eq", "le"])
    mc.set_defaults(func=_montecarlo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, fileio.FormatError, FieldError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
