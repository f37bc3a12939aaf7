"""The ten acceptance criteria, each at its stated tolerance and time limit.

Every test records a single ``PASS``/``FAIL`` line, collected in the
``acceptance criteria`` section at the end of the pytest run.
"""
import os
import time

import mpmath
import pytest

from explicit_mertens import checks, cli

N_THREADS = max(4, os.cpu_count() or 1)
_cache = {}


def timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


def cached(name, fn, **kw):
    """Run a check once per session at ``N_THREADS`` workers."""
    if name not in _cache:
        _cache[name] = timed(fn, **kw)
    return _cache[name]


def verdict(report_line, n, title, ok, detail, seconds=None, limit=None):
    within = limit is None or seconds < limit
    timing = "" if seconds is None else f" [{seconds:.2f} s" + (f" < {limit:g} s" if limit else "") + "]"
    status = "PASS" if ok and within else "FAIL"
    report_line(f"criterion {n}: {status}  {title}: {detail}{timing}")
    return ok and within


def test_criterion_01_table1(report_line):
    res, dt = cached("table1", checks.table1)
    nulls = all(r["c3"] is None and r["c4"] is None for r in res["rows"][:1])
    ok = res["pass"] and nulls and len(res["rows"]) == 11
    assert verdict(report_line, 1, "Table 1", ok,
                   f"{len(res['rows'])} rows, max abs err {float(res['max_abs_err']):.1e} <= 1e-4",
                   dt, 1)


def test_criterion_02_table4(report_line):
    res, dt = cached("table4", checks.table4)
    ok = res["pass"] and len(res["rows"]) == 8
    assert verdict(report_line, 2, "Table 4", ok,
                   f"{len(res['rows'])} rows, max abs err {float(res['max_abs_err']):.1e} <= 1e-4",
                   dt, 1)


def test_criterion_03_headline(report_line):
    res, _ = cached("headline", checks.headline)
    c3, c4 = res["c3"]["value"], res["c4"]["value"]
    assert verdict(report_line, 3, "headline constants", res["pass"],
                   f"c3 = {mpmath.nstr(c3, 8)} (5.61432 +- 1e-4), c4 = {mpmath.nstr(c4, 6)} (0.00319 +- 1e-5)")


def test_criterion_04_r3(report_line):
    res, dt = cached("r3", checks.r3)
    rows = ", ".join(f"{mpmath.nstr(r['value'], 8)} vs {mpmath.nstr(r['published'], 8)}" for r in res["rows"])
    bad = [i for i, r in enumerate(res["rows"]) if not r["pass"]]
    opt = res["optimum"]["value"]
    detail = (f"rows {rows}; off by > 1e-3: {bad or 'none'}; "
              f"optimum {mpmath.nstr(opt, 8)} <= 40.944")
    assert verdict(report_line, 4, "R3 rows and optimum", res["pass"], detail, dt, 10)


@pytest.mark.slow
def test_criterion_05_short_sum(report_line):
    res, dt = cached("shortsum", checks.shortsum, threads=N_THREADS)
    detail = (f"upper {mpmath.nstr(res['sum_upper'], 8)} <= 2.4, {res['zero_count']} zeros vs "
              f"main term {mpmath.nstr(res['main_term'], 7)} (+-2)")
    assert verdict(report_line, 5, "short sum", res["pass"], detail, dt, 300)


def test_criterion_06_contour(report_line):
    res, dt = cached("contour", checks.contour)
    detail = "; ".join(f"{r['name']} {mpmath.nstr(r['value'] + r['radius'], 8)} <= {mpmath.nstr(r['bound'], 6)} "
                       f"slack {mpmath.nstr(r['slack'], 3)}" for r in res["rows"])
    assert verdict(report_line, 6, "contour constants", res["pass"], detail, dt, 60)


def test_criterion_07_crossovers(report_line):
    res, dt = cached("crossovers", checks.crossovers)
    detail = ", ".join(f"{r['pair']}{' (daval)' if r['daval'] else ''} -> {r['value']}"
                       for r in res["rows"])
    assert verdict(report_line, 7, "crossovers", res["pass"], detail, dt, 1)


@pytest.mark.slow
def test_criterion_08_sieve(report_line):
    res, dt = cached("sieve", checks.sieve, threads=N_THREADS)
    detail = (f"M(1e6) = {res['M_1e6']} (212), max |M| on [1,32] = {res['max_abs_small']}, "
              f"max |M|/sqrt(x) on [33, 1e8] = {res['max_ratio']:.5f} at x = {res['argmax_ratio']} "
              f"(<= 0.571)")
    assert verdict(report_line, 8, "exact Mertens to 1e8", res["pass"], detail, dt, 120)


def test_criterion_09_majorant(report_line):
    res, _ = cached("majorant", checks.majorant)
    ranges = ", ".join(f"{k} {'ok' if v['pass'] else 'violated'}" for k, v in res["ranges"].items())
    detail = f"u(x) min slack {mpmath.nstr(res['u']['min_slack'], 4)} > 0; ranges {ranges}"
    assert verdict(report_line, 9, "majorant and ranges", res["pass"], detail)


@pytest.mark.slow
def test_criterion_10_determinism(report_line):
    """Serialized results at one worker equal those at ``N_THREADS`` workers."""
    runs = {
        "table1": lambda t: checks.table1(),
        "table4": lambda t: checks.table4(),
        "headline": lambda t: checks.headline(),
        "r3": lambda t: checks.r3(),
        "shortsum": lambda t: checks.shortsum(threads=t),
        "contour": lambda t: checks.contour(),
        "crossovers": lambda t: checks.crossovers(),
        "sieve": lambda t: checks.sieve(threads=t),
        "majorant": lambda t: checks.majorant(),
    }
    differ = []
    for name, fn in runs.items():
        many = cached(name, lambda: fn(N_THREADS))[0]
        one = fn(1)
        if cli.dump_json(one) != cli.dump_json(many):
            differ.append(name)
    assert verdict(report_line, 10, "determinism", not differ,
                   f"JSON at 1 vs {N_THREADS} workers differs for: {differ or 'none'}")
