"""Command line: ``qha roots|kac|shuffle|gkm|verify``.

Exit codes: 0 success, 1 check failure, 2 usage or parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import gkm
from .cache import CountCache
from .quiver import (NAMED_QUIVERS, Quiver, QuiverError, dims_below, named_quiver, positive_roots,
                     validate_weighting)
from .repcount import CountingError, InterpolationError, ResourceLimitError, kac_polynomial
from .ffield import FieldError, FiniteField
from .report import FORMATS, ResultTable
from .shuffle import ShuffleAlgebra, ShuffleError, expand, residue
from .shuffle.parse import parse_poly
from .shuffle.poly import MultiPoly, PolyError, parse_var_name, tvar
from .suites import SUITES, run_suite

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
THREADS_ENV = "QHA_THREADS"


class UsageError(Exception):
    pass


def parse_vector(text: str, what: str = "vector") -> tuple[int, ...]:
    try:
        out = tuple(int(p) for p in text.replace(" ", "").split(",") if p != "")
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}; expected comma-separated integers") from None
    if not out or any(x < 0 for x in out):
        raise UsageError(f"{what} {text!r} must be a nonempty list of nonnegative integers")
    return out


def split_pair(texts: list[str] | None, n: int, what: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two vectors from ``--x a --x b``, ``--x a/b`` or one list of ``2n`` entries."""
    if not texts:
        raise UsageError(f"--{what} is required")
    if len(texts) == 2:
        parts = texts
    elif "/" in texts[0]:
        parts = texts[0].split("/", 1)
    else:
        v = parse_vector(texts[0], what)
        if len(v) != 2 * n:
            raise UsageError(f"--{what} {texts[0]!r}: give two vectors of length {n}")
        return v[:n], v[n:]
    a, b = parse_vector(parts[0], what), parse_vector(parts[1], what)
    if len(a) != n or len(b) != n:
        raise UsageError(f"--{what}: vectors must have {n} entries")
    return a, b


def load_quiver(arg: str | None) -> Quiver:
    if not arg:
        raise UsageError("--quiver is required")
    if not Path(arg).exists() and arg in NAMED_QUIVERS:
        return named_quiver(arg)
    return Quiver.load(arg)


def threads_from(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from None
    return 1


def single_vector(args, n: int, attr: str = "dim") -> tuple[int, ...]:
    vals = getattr(args, attr)
    if not vals:
        raise UsageError(f"--{attr} is required")
    v = parse_vector(vals[0], attr)
    if len(v) != n:
        raise UsageError(f"--{attr} {vals[0]!r} has {len(v)} entries for {n} vertices")
    return v


# -- commands ------------------------------------------------------------------------

def cmd_roots(args) -> ResultTable:
    Q = load_quiver(args.quiver)
    bound = single_vector(args, Q.num_vertices, "bound")
    roots = positive_roots(Q, bound)
    t = ResultTable(["d", "class", "primitive"], title=f"positive roots up to {','.join(map(str, bound))}")
    for d, cls in roots.roots.items():
        t.add(",".join(map(str, d)), cls, d in roots.primitive)
    return t


def cmd_kac(args) -> ResultTable:
    Q = load_quiver(args.quiver)
    d = single_vector(args, Q.num_vertices)
    cache = CountCache(args.cache) if not args.no_cache else None
    fields = None
    if args.primes:
        try:
            fields = [FiniteField(p) for p in parse_vector(args.primes, "primes")]
        except FieldError as exc:
            raise UsageError(str(exc)) from None
    poly = kac_polynomial(Q, d, sample_fields=fields, threads=threads_from(args), cache=cache)
    t = ResultTable(["q", "count", "polynomial_value"], title=f"Kac polynomial d={','.join(map(str, d))}")
    t.summary["polynomial"] = str(poly)
    for q, c in sorted(poly.counts.items()):
        t.add(q, c, poly(q))
    return t


def _shuffle_setup(args):
    Q = load_quiver(args.quiver)
    S = ShuffleAlgebra(Q, require_symmetric=not args.allow_asymmetric)
    tripled = Q.star_pairing is not None and Q.loop_marks is not None
    if tripled and Q.weighting is not None and validate_weighting(Q, Q.weighting):
        h = S.hbar()
    else:
        h = MultiPoly.var(tvar(1))  # no validated hbar: 'h' names t[1]
    return Q, S, h


def cmd_shuffle(args) -> ResultTable:
    Q, S, h = _shuffle_setup(args)
    n = Q.num_vertices
    exprs = [parse_poly(e, h) for e in args.exprs]
    op = args.op
    t = ResultTable([], title=f"shuffle {op}")
    if op == "mul":
        if len(exprs) != 2:
            raise UsageError("mul takes two expressions")
        da, db = split_pair(args.dim, n, "dim")
        a, b = S.element(da, exprs[0]), S.element(db, exprs[1])
        out = S.mul(a, b, args.method)
        t.summary["result"] = str(out.poly)
        return t
    if len(exprs) != 1:
        raise UsageError(f"{op} takes one expression")
    if op in ("expand", "residue") and args.den:
        # expand a polynomial divided by explicit linear factors
        dens = [parse_poly(e, h) for e in args.den]
        target = (exprs[0], dens)
    else:
        d1, d2 = split_pair(args.split, n, "split")
        c = S.element(tuple(x + y for x, y in zip(d1, d2)), exprs[0])
        target = S.comul(c, d1, d2)
        if op == "comul":
            t.summary["result"] = str(target)
            return t
    if op == "comul":
        raise UsageError("comul needs --split")
    if not args.var:
        raise UsageError(f"{op} needs --var")
    try:
        var = parse_var_name(args.var)
    except PolyError as exc:
        raise UsageError(str(exc)) from None
    series = expand(target, var, args.order)
    t.summary["result"] = str(residue(series) if op == "residue" else series)
    return t


def _datum_or_quiver(arg: str):
    if arg and Path(arg).exists():
        try:
            doc = json.loads(Path(arg).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{arg}: invalid JSON ({exc})") from None
        if isinstance(doc, dict) and "generators" in doc:
            return gkm.GkmDatum.from_json(doc)
    return load_quiver(arg)


def cmd_gkm(args) -> ResultTable:
    obj = _datum_or_quiver(args.quiver)
    Q = obj.quiver if isinstance(obj, gkm.GkmDatum) else obj
    n = Q.num_vertices
    op = args.op
    if op in ("dims", "lie-dims"):
        datum = obj if isinstance(obj, gkm.GkmDatum) else gkm.GkmDatum.kac_moody(Q)
        cutoff = single_vector(args, n, "cutoff")
        dims = gkm.associative_dims(datum, cutoff) if op == "dims" else gkm.lie_dims(datum, cutoff)
        t = ResultTable(["degree", "coh_degree", "dim"], title=f"gkm {op} cutoff {','.join(map(str, cutoff))}")
        if op == "lie-dims":
            for d in dims_below(cutoff):
                if any(d):
                    ks = sorted({k for (e, k) in dims if e == d}) or [0]
                    for k in ks:
                        t.add(",".join(map(str, d)), k, dims.at(d, k))
        else:
            for d, k, v in dims.rows():
                t.add(",".join(map(str, d)), k, v)
        return t
    if op == "root-mult":
        d = single_vector(args, n)
        t = ResultTable([], title=f"root multiplicity d={','.join(map(str, d))}")
        t.summary["result"] = gkm.km_root_mult(Q, d)
        return t
    cache = CountCache(args.cache) if not args.no_cache else None
    threads = threads_from(args)
    if op == "bps-char":
        d = single_vector(args, n)
        kac = kac_polynomial(Q, d, threads=threads, cache=cache)
        t = ResultTable([], title=f"BPS character d={','.join(map(str, d))}")
        t.summary["result"] = str(gkm.bps_character(Q, d, kac))
        return t
    if op == "pbw-char":
        cutoff = single_vector(args, n, "cutoff")
        # every degree with a nonzero Kac polynomial, real non-primitive roots included
        family = {}
        for d in dims_below(cutoff):
            kac = kac_polynomial(Q, d, threads=threads, cache=cache)
            if not kac.is_zero():
                family[d] = kac
        chars = gkm.pbw_character(Q, family, cutoff, args.u_truncation)
        t = ResultTable(["degree", "character"], title=f"PBW character cutoff {','.join(map(str, cutoff))}")
        for d, chi in sorted(chars.items()):
            t.add(",".join(map(str, d)), str(chi))
        return t
    raise UsageError(f"unknown gkm operation {op!r}")


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help="quiver or GKM datum JSON file, or a built-in name "
                                         f"({', '.join(NAMED_QUIVERS)})")
    common.add_argument("--dim", action="append", help="dimension vector a,b,... (repeatable)")
    common.add_argument("--bound", action="append")
    common.add_argument("--cutoff", action="append")
    common.add_argument("--primes")
    common.add_argument("--order", type=int, default=2)
    common.add_argument("--format", choices=FORMATS, default="pretty")
    common.add_argument("--cache", help="count cache file (default: $QHA_CACHE or ~/.qha/cache.jsonl)")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--threads", type=int)

    p = argparse.ArgumentParser(prog="qha", description="Exact computations for quiver representation theory.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("roots", parents=[common], help="positive roots up to a bound")
    sub.add_parser("kac", parents=[common], help="Kac polynomial by point counting")
    sh = sub.add_parser("shuffle", parents=[common], help="shuffle algebra operations")
    sh.add_argument("op", choices=("mul", "comul", "expand", "residue"))
    sh.add_argument("exprs", nargs="+", metavar="EXPR")
    sh.add_argument("--split", action="append", help="d',d'' as 'a,b/c,d' or repeated")
    sh.add_argument("--var", help="expansion variable, e.g. x[2,1,1]")
    sh.add_argument("--den", action="append", help="linear denominator factor (repeatable)")
    sh.add_argument("--method", choices=("divide", "alternant"), default="divide")
    sh.add_argument("--allow-asymmetric", action="store_true")
    g = sub.add_parser("gkm", parents=[common], help="GKM dimensions and characters")
    g.add_argument("op", choices=("dims", "lie-dims", "root-mult", "bps-char", "pbw-char"))
    g.add_argument("--u-truncation", type=int, default=1)
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=0)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "verify":
            cache = CountCache(args.cache) if not args.no_cache else None
            rep = run_suite(args.suite, threads=threads_from(args), seed=args.seed, cache=cache)
            out.write(rep.render(args.format))
            return EXIT_OK if rep.passed else EXIT_CHECK
        table = {"roots": cmd_roots, "kac": cmd_kac, "shuffle": cmd_shuffle, "gkm": cmd_gkm}[args.command](args)
        out.write(table.render(args.format))
        return EXIT_OK
    except ResourceLimitError as exc:
        print(f"qha: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InterpolationError, CountingError) as exc:
        print(f"qha: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (UsageError, QuiverError, PolyError, ShuffleError, gkm.GkmError, FieldError, OSError) as exc:
        print(f"qha: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
