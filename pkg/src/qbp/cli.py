"""``qbp`` command-line front end.

Exit codes: 0 success/valid/equivalent, 1 semantic negative (invalid
program, not equivalent), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import analysis, io, sim, transpile, zoo
from .model import NqbpProgram, validate
from .sim import BooleanTable

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prob(p: float) -> str:
    return f"{p:.12f}"


def _load(path: str):
    try:
        return io.load(path)
    except io.ParseError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _require_program(obj, what: str):
    if isinstance(obj, BooleanTable):
        raise UsageError(f"{what} needs a program or circuit document, got a table")
    return obj


def _report_invalid(obj) -> int | None:
    rep = validate(obj)
    if rep.ok:
        return None
    for v in rep.violations:
        print(v)
    return NEGATIVE


def _table(obj) -> BooleanTable:
    try:
        return sim.truth_table(obj)
    except sim.EnumerationCapError as exc:
        raise UsageError(f"{exc} (raise it with QBP_MAX_N)") from exc


def _emit(obj, out: str | None) -> None:
    if out is None or out == "-":
        print(io.dumps(obj))
    else:
        io.save(obj, out)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_validate(args) -> int:
    obj = _require_program(_load(args.path), "validate")
    rep = validate(obj)
    if rep.ok:
        print("ok")
        return OK
    for v in rep.violations:
        print(v)
    return NEGATIVE


def cmd_run(args) -> int:
    obj = _require_program(_load(args.path), "run")
    try:
        bits = sim.as_bits(args.input, obj.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    bad = _report_invalid(obj)
    if bad is not None:
        return bad
    if isinstance(obj, NqbpProgram):
        out = sim.run_nqbp(obj, bits)
        print(_prob(out.p_acc))
        print(f"p_acc={_prob(out.p_acc)} p_rej={_prob(out.p_rej)} p_residual={_prob(out.p_residual)}")
    else:
        print(_prob(sim.acceptance(obj, bits)))
    return OK


def cmd_table(args) -> int:
    obj = _load(args.path)
    if not isinstance(obj, BooleanTable):
        bad = _report_invalid(obj)
        if bad is not None:
            return bad
    t = _table(obj)
    if args.json:
        print(io.dumps(t))
    else:
        for k, p in enumerate(t.values):
            print(sim.bitstring(k, t.n), _prob(p))
    return OK


def cmd_transpile(args) -> int:
    obj = _require_program(_load(args.path), "transpile")
    bad = _report_invalid(obj)
    if bad is not None:
        return bad
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", transpile.EarlyHaltWarning)
            out, cert = transpile.transpile(obj, args.to, remove_dummies=args.remove_dummies)
    except transpile.UnsupportedTranspile as exc:
        raise UsageError(str(exc)) from exc
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(cert)
    if args.output:
        _emit(out, args.output)
    return OK


def cmd_gen(args) -> int:
    fam = args.family
    try:
        if fam == "parity":
            obj = zoo.build_parity(args.n)
        elif fam == "maj3":
            obj = zoo.build_maj3()
        elif fam == "dj":
            obj = zoo.build_dj(args.n)
        elif fam == "random-gqbp":
            obj = zoo.random_phase_gqbp(args.w, args.l, args.n, args.seed)
        else:
            obj = zoo.random_aqbp(args.d, args.l, args.n, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(obj, args.output)
    return OK


def cmd_degree(args) -> int:
    path = args.table or args.path
    if path is None:
        raise UsageError("degree needs a document path or --table PATH")
    obj = _load(path)
    if not isinstance(obj, BooleanTable):
        bad = _report_invalid(obj)
        if bad is not None:
            return bad
    t = _table(obj)
    deg = analysis.exact_degree(t)
    if t.is_boolean():
        print(f"degree={deg} length_lower_bound={analysis.length_lower_bound(t)}")
    else:
        # a non-Boolean acceptance table has a degree but no exact-computation bound
        print(f"degree={deg} length_lower_bound=n/a")
    return OK


def cmd_equiv(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if a.n != b.n:
        raise UsageError(f"input lengths differ: n={a.n} vs n={b.n}")
    for obj in (a, b):
        if not isinstance(obj, BooleanTable):
            bad = _report_invalid(obj)
            if bad is not None:
                return bad
    _table(a)  # cap check
    res = analysis.equivalent(a, b, args.tol)
    print(f"{'equivalent' if res.equivalent else 'not equivalent'} max_deviation={res.max_deviation:.3e}")
    if res.witness is not None:
        print(f"witness={res.witness}")
    return OK if res.equivalent else NEGATIVE


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qbp", description="Quantum branching program simulator and transpiler.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check structural and unitarity conditions")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("run", help="acceptance probability on one input")
    s.add_argument("path")
    s.add_argument("--input", required=True, help="bit string, x_0 first")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("table", help="acceptance probability on every input")
    s.add_argument("path")
    s.add_argument("--json", action="store_true", help="emit a table document")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("transpile", help="convert between models")
    s.add_argument("path")
    s.add_argument("--to", required=True, choices=transpile.TARGETS)
    s.add_argument("--remove-dummies", action="store_true")
    s.add_argument("-o", "--output", help="write the result here ('-' for stdout)")
    s.set_defaults(func=cmd_transpile)

    s = sub.add_parser("gen", help="write a zoo construction or random instance")
    s.add_argument("family", choices=("parity", "maj3", "dj", "random-gqbp", "random-aqbp"))
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--w", type=int, default=2)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("degree", help="exact degree and length lower bound")
    s.add_argument("path", nargs="?")
    s.add_argument("--table", help="table document")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("equiv", help="compare acceptance on every input")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--tol", type=float, default=sim.TOL)
    s.set_defaults(func=cmd_equiv)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qbp: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
