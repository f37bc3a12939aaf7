"""Reproduction checks shared by the ``verify`` command and the acceptance tests.

Each check returns a plain dict with a boolean ``pass`` and the values it
compared. Nothing timing-dependent goes into the dicts, so the same inputs
always serialize to the same JSON.
"""
from decimal import Decimal

import mpmath
from mpmath import mpf

from . import bounds, constants as C, exact_mertens, piecewise, reciprocal, short_sum, zeros_db
from .zeta_numerics import contour_constant_report

TABLE_TOL = Decimal("1e-4")
HEADLINE = {"c3": ("5.61432", "1e-4"), "c4": ("0.00319", "1e-5")}
R3_TOL = mpf("1e-3")
R3_TARGET = "40.944"
CROSSOVERS = (
    ("Linear4345", "Ramare", "36", False, "45.123"),
    ("Ramare", "Classical", "363.11", False, "1772.504"),
    ("Daval", "Classical", "363.11", True, "1806.498"),
)
SIEVE_MAX = 10**8
M_1E6 = 212


def table1():
    rows = bounds.table1_rows()
    err = bounds.max_abs_err(rows)
    return {"check": "table1", "source": "published", "rows": rows,
            "max_abs_err": err, "pass": err <= TABLE_TOL}


def table4(r1_strict=False):
    r1_T = bounds.R1_H if r1_strict else bounds.R1_TABLE_T
    rows = bounds.table4_rows(r1_T=r1_T)
    err = bounds.max_abs_err(rows)
    return {"check": "table4", "source": "published", "r1_T": r1_T, "rows": rows,
            "max_abs_err": err, "pass": err <= TABLE_TOL}


def headline():
    k = bounds.c3_c4(C.mp("1e5"))
    out = {"check": "headline", "source": "published", "log_x0": "1e5", "pass": True}
    for name, (pub, tol) in HEADLINE.items():
        value = getattr(k, name)
        ok = abs(value - mpf(pub)) <= mpf(tol)
        out[name] = {"value": value, "published": pub, "tol": tol, "pass": ok}
        out["pass"] = out["pass"] and ok
    return out


def r3():
    rows = reciprocal.r3_table_rows()
    for row in rows:
        row["pass"] = row["abs_err"] <= R3_TOL
    with mpmath.workprec(C.WORKPREC):
        params, value = reciprocal.optimize_r3(C.mp(C.Z3), mpmath.log(C.H_HAT))
    opt = {"d1": params.d1, "omega": params.omega, "value": value,
           "target": R3_TARGET, "pass": value <= mpf(R3_TARGET)}
    return {"check": "r3", "source": "published", "rows": rows, "optimum": opt,
            "pass": all(r["pass"] for r in rows) and opt["pass"]}


def shortsum(path=None, threads=1):
    zeros = zeros_db.load_to_H(path)
    res = short_sum.short_sum(zeros, threads=threads)
    count_ok = zeros_db.count_check(zeros, C.H())
    return {"check": "shortsum", "source": "published",
            "sum_mid": res.sum_mid, "sum_upper": res.upper, "zero_count": res.zero_count,
            "main_term": zeros_db.riemann_von_mangoldt(C.H()),
            "max_term_gamma": res.max_term_gamma, "tail_fraction": res.tail_fraction,
            "pass_2_4": res.passes(), "count_ok": count_ok,
            "pass": res.passes() and count_ok}


def contour():
    rows = contour_constant_report()
    return {"check": "contour", "source": "published", "rows": rows,
            "pass": all(r["pass"] and r["slack"] > 0 for r in rows)}


def crossovers():
    rows = []
    for a, b, start, daval, expected in CROSSOVERS:
        got = piecewise.find_crossover(a, b, start)
        rows.append({"pair": f"{a},{b}", "start": start, "daval": daval, "value": got,
                     "expected": expected, "pass": got == Decimal(expected)})
    return {"check": "crossovers", "source": "published", "rows": rows,
            "pass": all(r["pass"] for r in rows)}


def sieve(x_max=SIEVE_MAX, threads=1):
    m = exact_mertens.mertens(10**6, threads=threads).m
    rep = exact_mertens.verify_small_bounds(x_max, threads=threads)
    return {"check": "sieve", "source": "derived", "M_1e6": m, "M_1e6_expected": M_1E6,
            "x_max": x_max, "max_abs_small": rep.max_abs_small, "argmax_small": rep.argmax_small,
            "max_ratio": rep.max_ratio, "argmax_ratio": rep.argmax_ratio,
            "pass_small": rep.pass_small, "pass_ratio": rep.pass_ratio,
            "pass": m == M_1E6 and rep.max_abs_small == C.SMALL_X_BOUND and rep.passed}


def majorant(grid_points=1000):
    u = piecewise.verify_u_majorizes(grid_points)
    ranges = piecewise.range_assertions(grid_points)
    return {"check": "majorant", "source": "published", "u": u, "ranges": ranges,
            "pass": u["pass"] and all(r["pass"] for r in ranges.values())}


SUITES = {
    "tables": lambda o: [table1(), table4(o.get("r1_strict", False))],
    "headline": lambda o: [headline()],
    "r3": lambda o: [r3()],
    "shortsum": lambda o: [shortsum(o.get("zeros_path"), o.get("threads", 1))],
    "contour": lambda o: [contour()],
    "crossover": lambda o: [crossovers()],
    "sieve": lambda o: [sieve(o.get("sieve_max", SIEVE_MAX), o.get("threads", 1))],
    "piecewise": lambda o: [crossovers(), majorant()],
    "majorant": lambda o: [majorant()],
}
ALL_ORDER = ("tables", "headline", "r3", "shortsum", "contour", "crossover", "sieve", "majorant")


def run_suite(name, **opts):
    """Run one named suite (or ``"all"``) and return its list of check dicts."""
    if name == "all":
        return [c for n in ALL_ORDER for c in SUITES[n](opts)]
    return SUITES[name](opts)
