"""Command-line front end: ``explicit-mertens <command> ...``.

Exit codes: 0 when every check passes, 2 when a reproduction check fails,
3 for bad input or configuration (including usage errors).
"""
import argparse
import csv
import dataclasses
import enum
import io
import json
import os
import sys
from decimal import Decimal

import mpmath
from mpmath import mpf

from . import bounds, checks, constants as C, exact_mertens, piecewise, reciprocal, zeros_db
from .errors import (ConstraintError, CrossoverNotFound, EmptyTableError, ParseError, PrecisionError,
                     RangeError, TableLookupError)

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 2, 3
INPUT_ERRORS = (RangeError, ParseError, EmptyTableError, ConstraintError, TableLookupError,
                PrecisionError, OSError, ValueError)


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def to_jsonable(v):
    if isinstance(v, mpmath.mpf):
        return float(v)
    if isinstance(v, mpmath.mpc):
        return [float(v.real), float(v.imag)]
    if isinstance(v, Decimal):
        return str(v)
    if isinstance(v, enum.Enum):
        return v.value
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        return {f.name: to_jsonable(getattr(v, f.name)) for f in dataclasses.fields(v)}
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_jsonable(x) for x in v]
    if hasattr(v, "item"):          # numpy scalars
        return v.item()
    return v


def dump_json(payload):
    payload = dict(payload, schema=SCHEMA)
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2) + "\n"


def emit(args, text):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def fmt(v, digits=10):
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, digits)
    if isinstance(v, enum.Enum):
        return v.value
    return str(v)


def human(pairs):
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k:<{width}}  {fmt(v)}\n" for k, v in pairs)


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _parse_w3(text):
    if text.lower() in ("z3", "default"):
        return C.mp(C.Z3)
    if text.lower() in ("none", "line", "0"):
        return None
    return C.mp(text)


def _parse_log_t0(text):
    if text.lower() in ("hhat", "riemann-height"):
        return mpmath.log(C.H_HAT)
    return C.mp(text)


# -- commands ------------------------------------------------------------------------

def cmd_sieve(args):
    points, rep = exact_mertens.sieve_report(args.xmax, args.checkpoint_every, threads=args.threads)
    if args.json:
        emit(args, dump_json({"command": "sieve", "source": "derived", "report": rep,
                              "checkpoints": [[p.x, p.m] for p in points]}))
    else:
        emit(args, to_csv(["x", "M"], [[p.x, p.m] for p in points]))
        sys.stderr.write(human([
            ("max |M| on [1,32]", rep.max_abs_small), ("at x", rep.argmax_small),
            ("max |M|/sqrt(x)", rep.max_ratio), ("at x", rep.argmax_ratio),
            ("pass", rep.passed)]))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_zeros(args):
    gmax = C.H() if args.gamma_max is None else C.mp(args.gamma_max)
    zeros = zeros_db.load_zeros(args.file, gmax, allow_empty=True)
    out = {"command": "zeros", "gamma_max": gmax, "count": len(zeros),
           "first": zeros[0].gamma if zeros else None, "last": zeros[-1].gamma if zeros else None}
    ok = True
    if args.check_count:
        out["main_term"] = zeros_db.riemann_von_mangoldt(gmax)
        out["count_ok"] = ok = zeros_db.count_check(zeros, gmax)
    emit(args, dump_json(out) if args.json else human(list(out.items())))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_shortsum(args):
    r = checks.shortsum(args.file, threads=args.threads)
    keys = ("sum_mid", "sum_upper", "zero_count", "main_term", "max_term_gamma",
            "tail_fraction", "pass_2_4", "count_ok")
    out = {k: r[k] for k in keys}
    emit(args, dump_json(dict(out, command="shortsum")) if args.json else human(list(out.items())))
    return EXIT_OK if r["pass"] else EXIT_FAIL


def cmd_r3(args):
    W3 = _parse_w3(args.w3)
    with mpmath.workprec(C.WORKPREC):
        lt = _parse_log_t0(args.log_t0)
        if args.optimize or args.d1 is None:
            p, value = reciprocal.optimize_r3(W3, lt)
        else:
            if args.omega is None:
                raise UsageError("--d1 needs --omega")
            if W3 is None:
                p = reciprocal.ReciprocalParams(mpf(0), C.mp(args.d1), C.mp(args.omega), lt)
            else:
                p = reciprocal.ReciprocalParams.from_w3(W3, C.mp(args.d1), C.mp(args.omega), lt)
            value = reciprocal.r3_formula(p)
        out = {"command": "r3", "d": p.d, "d1": p.d1, "omega": p.omega, "log_t0": p.log_t0,
               "R3": value, "margins": p.margins()}
    emit(args, dump_json(out) if args.json else human([(k, v) for k, v in out.items() if k != "margins"]))
    return EXIT_OK


def cmd_constants(args):
    r1 = bounds.R1_H if args.r1_strict else bounds.R1_TABLE_T
    with mpmath.workprec(C.WORKPREC):
        L = C.mp(args.log_x0)
        if args.theorem == "1":
            k = bounds.c1_c2(L, r1_T=r1)
            out = {"ell1": k.ell1, "ell2": k.ell2, "ell3": k.ell3, "c1": k.c1, "c2": k.c2}
        else:
            lT0 = None if args.log_t0 is None else _parse_log_t0(args.log_t0)
            k = bounds.c3_c4(L, log_T0=lT0)
            out = {"c3": k.c3, "c4": k.c4, "terms": k.terms}
    out.update(command="constants", theorem=args.theorem, log_x0=args.log_x0)
    emit(args, dump_json(out) if args.json else
         human([(k, v) for k, v in out.items() if k != "terms"]))
    return EXIT_OK


def _table_csv(rows, names):
    header = ["log_x0"] + names + ["abs_err"]
    body = []
    for row in rows:
        cells = [row["log_x0"]]
        errs = []
        for n in names:
            cell = row[n]
            if cell is None:
                cells.append("-")
                continue
            cells.append(str(cell["rounded"]))
            errs.append(cell["abs_err"])
        cells.append(f"{float(max(errs)):.2e}")
        body.append(cells)
    return to_csv(header, body)


def cmd_tables(args):
    if args.which == "1":
        res = checks.table1()
        text = _table_csv(res["rows"], ["c1", "c2", "c3", "c4"])
    elif args.which == "4":
        res = checks.table4(args.r1_strict)
        text = _table_csv(res["rows"], ["ell1", "ell2", "ell3", "c1", "c2"])
    else:
        rows = reciprocal.r3_table_rows()
        res = {"rows": rows, "pass": all(r["abs_err"] <= checks.R3_TOL for r in rows)}
        text = to_csv(["W3", "log_t0", "d1", "omega", "R3", "abs_err"],
                      [[r["W3"], r["log_t0"], r["d1"], r["omega"], mpmath.nstr(r["value"], 8),
                        mpmath.nstr(r["abs_err"], 3)] for r in rows])
    if args.json:
        text = dump_json(dict(res, command="tables", which=args.which))
    emit(args, text)
    return EXIT_OK if res["pass"] else EXIT_FAIL


def cmd_piecewise(args):
    if args.x is not None:
        b = piecewise.best_bound(int(args.x), daval=args.daval)
    elif args.log_x is not None:
        b = piecewise.best_bound(log_x=C.mp(args.log_x), daval=args.daval)
    else:
        raise UsageError("piecewise needs --log-x or --x")
    out = {"command": "piecewise", "log_x": args.log_x, "x": args.x, "daval": args.daval,
           "branch": b.branch, "log_bound": b.log_value,
           "log10_bound": b.log_value / mpmath.log(10)}
    emit(args, dump_json(out) if args.json else human([(k, v) for k, v in out.items() if v is not None]))
    return EXIT_OK


def cmd_crossover(args):
    try:
        a, b = args.pair.split(",")
    except ValueError:
        raise UsageError("--pair expects two branch names separated by a comma") from None
    value = piecewise.find_crossover(a.strip(), b.strip(), args.start, args.step)
    out = {"command": "crossover", "pair": args.pair, "start": args.start, "step": args.step,
           "crossover": value}
    emit(args, dump_json(out) if args.json else f"{value}\n")
    return EXIT_OK


def cmd_verify(args):
    results = checks.run_suite(args.suite, threads=args.threads, zeros_path=args.zeros_file,
                               sieve_max=args.sieve_max, r1_strict=args.r1_strict)
    ok = all(r["pass"] for r in results)
    if args.json:
        emit(args, dump_json({"command": "verify", "suite": args.suite, "results": results, "pass": ok}))
    else:
        emit(args, "".join(f"{'PASS' if r['pass'] else 'FAIL'}  {r['check']}\n" for r in results))
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------

def build_parser():
    common = Parser(add_help=False)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes (default: all cores)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = Parser(prog="explicit-mertens", description="Explicit Mertens-function bounds toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    s = sub.add_parser("sieve", parents=[common], help="exact M(x) and small-x bound checks")
    s.add_argument("--xmax", type=int, required=True)
    s.add_argument("--checkpoint-every", type=int, default=exact_mertens.CHECKPOINT_EVERY)
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("zeros", parents=[common], help="load and count zeta-zero ordinates")
    s.add_argument("--file", default=None, help=f"zeros table (default: ${zeros_db.ZEROS_ENV} or bundled)")
    s.add_argument("--gamma-max", default=None, help="cutoff ordinate (default: H)")
    s.add_argument("--check-count", action="store_true")
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("shortsum", parents=[common], help="certified sum over zeros below H")
    s.add_argument("--file", default=None)
    s.set_defaults(func=cmd_shortsum)

    s = sub.add_parser("r3", parents=[common], help="evaluate or optimise the R3 bound")
    s.add_argument("--w3", default="Z3", help="zero-free constant W3, 'Z3', or 'none' for sigma = 1")
    s.add_argument("--log-t0", default="Hhat", help="log t0, or 'Hhat'")
    s.add_argument("--optimize", action="store_true")
    s.add_argument("--d1")
    s.add_argument("--omega")
    s.set_defaults(func=cmd_r3)

    s = sub.add_parser("constants", parents=[common], help="c1, c2 (classical) or c3, c4 (Korobov)")
    s.add_argument("--theorem", choices=("1", "2"), required=True)
    s.add_argument("--log-x0", required=True)
    s.add_argument("--log-t0", default=None, help="log T0 for the Korobov constants (default: log Hhat)")
    s.add_argument("--r1-strict", action="store_true", help="use R1 = 3.422 inside l2")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("tables", parents=[common], help="reproduce a published table as CSV")
    s.add_argument("--which", choices=("1", "2", "4"), required=True)
    s.add_argument("--r1-strict", action="store_true")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("piecewise", parents=[common], help="best piecewise bound at x")
    s.add_argument("--log-x")
    s.add_argument("--x")
    s.add_argument("--daval", action="store_true")
    s.set_defaults(func=cmd_piecewise)

    s = sub.add_parser("crossover", parents=[common], help="first grid point where branch b beats a")
    s.add_argument("--pair", required=True, help="e.g. Ramare,Classical")
    s.add_argument("--start", required=True)
    s.add_argument("--step", default="0.001")
    s.set_defaults(func=cmd_crossover)

    s = sub.add_parser("verify", parents=[common], help="run reproduction checks")
    s.add_argument("--suite", default="all", choices=("all",) + tuple(checks.SUITES))
    s.add_argument("--zeros-file", default=None)
    s.add_argument("--sieve-max", type=int, default=checks.SIEVE_MAX)
    s.add_argument("--r1-strict", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_INPUT
    except CrossoverNotFound as e:
        sys.stderr.write(f"crossover not found: {e}\n")
        return EXIT_FAIL
    except INPUT_ERRORS as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
