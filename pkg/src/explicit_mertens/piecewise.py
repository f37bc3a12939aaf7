"""Piecewise best bound for ``|M(x)|`` over all ``x >= 1``.

Six branches cover ``[1, inf)``: a constant for ``x <= 32``, ``0.571 sqrt(x)``
up to ``10^16``, ``x/4345``, Ramare's ``x/log x`` bound, the classical
``exp(-c sqrt(log x))`` bound with the majorant ``u(x)``, and the
Korobov--Vinogradov bound with frozen constants. Everything is evaluated as
``log |bound|`` in terms of ``L = log x``, so ``x = exp(e^{36.821})`` and
beyond cause no trouble.

The breakpoints are found by :func:`find_crossover`, which steps ``L`` along
an exact decimal grid and returns the first grid point where the incoming
branch is strictly smaller.
"""
import enum
from dataclasses import dataclass
from decimal import Decimal

import mpmath
import numpy as np
from mpmath import mpf

from . import bounds
from . import constants as C
from .errors import CrossoverNotFound, RangeError

KOROBOV_C3 = "5.09591"
KOROBOV_C4 = "0.02196"

# u(x) = U0 + (TAU + U_AMP exp(-U_RATE / y)) / y with y = log log x
U0, TAU, U_AMP, U_RATE = "0.09798", "0.0055", "20.8944", "0.4037"
U_LOGLOG_RANGE = ("7.480", "36.821")

CLASSICAL_FLOOR = "1772.504"
RAMARE_FLOOR = "45.123"
DAVAL_FLOOR = "1806.498"
KOROBOV_LOGLOG = "36.821"


class Branch(str, enum.Enum):
    CONST4 = "Const4"
    SQRT0571 = "Sqrt0571"
    LINEAR4345 = "Linear4345"
    RAMARE = "Ramare"
    CLASSICAL = "Classical"
    KOROBOV = "Korobov"
    DAVAL = "Daval"


@dataclass(frozen=True)
class PiecewiseSegment:
    """Branch active for ``log_x_lo < log x <= log_x_hi`` (first segment closed at 0)."""

    log_x_lo: mpf
    log_x_hi: mpf
    branch: Branch
    params: dict


def _mp(s):
    return C.mp(s)


def segments(daval=False):
    with mpmath.workprec(C.WORKPREC):
        inf = mpmath.inf
        top = mpmath.exp(_mp(KOROBOV_LOGLOG))
        segs = [
            PiecewiseSegment(mpf(0), mpmath.log(33), Branch.CONST4, {"bound": C.SMALL_X_BOUND}),
            PiecewiseSegment(mpmath.log(33), 16 * mpmath.log(10), Branch.SQRT0571,
                             {"coeff": C.HURST_COEFF}),
        ]
        if daval:
            segs += [
                PiecewiseSegment(16 * mpmath.log(10), _mp(DAVAL_FLOOR), Branch.DAVAL,
                                 {"denominator": C.DAVAL_DENOMINATOR}),
                PiecewiseSegment(_mp(DAVAL_FLOOR), top, Branch.CLASSICAL, {"u": (U0, TAU, U_AMP, U_RATE)}),
            ]
        else:
            segs += [
                PiecewiseSegment(16 * mpmath.log(10), _mp(RAMARE_FLOOR), Branch.LINEAR4345,
                                 {"denominator": C.CDE_DENOMINATOR}),
                PiecewiseSegment(_mp(RAMARE_FLOOR), _mp(CLASSICAL_FLOOR), Branch.RAMARE,
                                 {"a": C.RAMARE_A, "b": C.RAMARE_B}),
                PiecewiseSegment(_mp(CLASSICAL_FLOOR), top, Branch.CLASSICAL, {"u": (U0, TAU, U_AMP, U_RATE)}),
            ]
        segs.append(PiecewiseSegment(top, inf, Branch.KOROBOV, {"c3": KOROBOV_C3, "c4": KOROBOV_C4}))
        return segs


# -- branch formulas (mpmath) ---------------------------------------------------------

def u_majorant(loglog_x, form="printed"):
    """``u(x)`` as a function of ``y = log log x``.

    ``form="printed"`` uses ``exp(-0.4037/y)``; ``form="sharp"`` uses
    ``exp(-0.4037 y)``, which tracks ``c1`` to within about ``1e-5``.
    """
    y = mpf(loglog_x)
    decay = mpmath.exp(-_mp(U_RATE) / y) if form == "printed" else mpmath.exp(-_mp(U_RATE) * y)
    return _mp(U0) + (_mp(TAU) + _mp(U_AMP) * decay) / y


def classical_c2(L):
    return bounds.c2_of(L, _mp(C.Z1))


def log_branch(branch, L, *, classical="u", korobov="frozen", u_form="printed"):
    """``log`` of ``branch``'s bound at ``log x = L``.

    ``classical="c1"`` uses ``c1(x)`` computed at ``x0 = x`` in place of ``u(x)``;
    ``korobov="computed"`` likewise uses ``c3(x), c4(x)``.
    """
    with mpmath.workprec(C.WORKPREC):
        L = mpf(L)
        b = Branch(branch)
        if b is Branch.CONST4:
            return mpmath.log(C.SMALL_X_BOUND)
        if b is Branch.SQRT0571:
            return mpmath.log(_mp(C.HURST_COEFF)) + L / 2
        if b is Branch.LINEAR4345:
            return L - mpmath.log(C.CDE_DENOMINATOR)
        if b is Branch.DAVAL:
            return L - mpmath.log(C.DAVAL_DENOMINATOR)
        if b is Branch.RAMARE:
            return L + mpmath.log(_mp(C.RAMARE_A) / L - _mp(C.RAMARE_B) / L ** 2)
        if b is Branch.CLASSICAL:
            if classical == "c1":
                k = bounds.c1_c2(L)
                return mpmath.log(k.c1) + L - k.c2 * mpmath.sqrt(L)
            return (mpmath.log(u_majorant(mpmath.log(L), u_form)) + L
                    - classical_c2(L) * mpmath.sqrt(L))
        if b is Branch.KOROBOV:
            P = bounds.korobov_exponent(L)
            if korobov == "computed":
                k = bounds.c3_c4(L)
                return mpmath.log(k.c3) + L - k.c4 * P
            return mpmath.log(_mp(KOROBOV_C3)) + L - _mp(KOROBOV_C4) * P
        raise ValueError(branch)


# -- best bound -------------------------------------------------------------------------

@dataclass(frozen=True)
class BestBound:
    log_value: mpf
    branch: Branch

    @property
    def value(self):
        """The bound itself as a float; raises OverflowError when not representable."""
        v = float(mpmath.exp(self.log_value))
        if v == float("inf"):
            raise OverflowError("bound exceeds the binary64 range; use log_value")
        return v


def best_bound(x=None, *, log_x=None, daval=False, u_form="printed"):
    """The piecewise bound at ``x`` (or at ``log x``) and the active branch."""
    with mpmath.workprec(C.WORKPREC):
        if (x is None) == (log_x is None):
            raise ValueError("pass exactly one of x and log_x")
        if x is not None:
            if x < 1:
                raise RangeError("best_bound needs x >= 1")
            # decide the integer breakpoints without rounding
            if x < 33:
                return BestBound(mpmath.log(C.SMALL_X_BOUND), Branch.CONST4)
            if x <= 10**16:
                L = mpmath.log(mpmath.mpmathify(x))
                return BestBound(log_branch(Branch.SQRT0571, L), Branch.SQRT0571)
            L = mpmath.log(mpmath.mpmathify(x))
        else:
            L = mpf(log_x)
            if L < 0:
                raise RangeError("best_bound needs x >= 1")
        segs = segments(daval)
        if L < segs[0].log_x_hi:
            seg = segs[0]
        else:
            seg = next(s for s in segs[1:] if s.log_x_lo <= L <= s.log_x_hi
                       and (L > s.log_x_lo or s.branch is Branch.SQRT0571))
        return BestBound(log_branch(seg.branch, L, u_form=u_form), seg.branch)


# -- crossover search -------------------------------------------------------------------

def _np_log_branch(branch, L, classical, korobov):
    b = Branch(branch)
    if b is Branch.CONST4:
        return np.full_like(L, np.log(C.SMALL_X_BOUND))
    if b is Branch.SQRT0571:
        return np.log(float(C.HURST_COEFF)) + L / 2
    if b is Branch.LINEAR4345:
        return L - np.log(C.CDE_DENOMINATOR)
    if b is Branch.DAVAL:
        return L - np.log(C.DAVAL_DENOMINATOR)
    if b is Branch.RAMARE:
        return L + np.log(float(C.RAMARE_A) / L - float(C.RAMARE_B) / L ** 2)
    if b is Branch.CLASSICAL:
        Z1 = float(C.Z1)
        sL = np.sqrt(L)
        inv = 1 / L
        c2 = 1 / np.sqrt(Z1) - np.log(L) / sL
        if classical == "c1":
            lT = sL / np.sqrt(Z1)
            q = np.exp(lT - L / 2)
            ell1 = float(bounds.R1_H) / (2 * np.pi * Z1)
            # 4 e^c e^{-1/L} / (2L) = 2e/L exactly
            ell2 = (2 * np.e + (float(bounds.R1_TABLE_T) * np.e / (np.pi * np.sqrt(Z1)) + 2 * np.e) * inv
                    + 4 * np.exp(1 + inv) * inv * (q * np.exp(-L / 2) + np.e * lT))
            logH = np.e ** 2 + np.log(2)
            ell3 = (float(C.SHORT_SUM_BOUND) * q + float(C.I35_BOUND)
                    - float(bounds.R1_H) * logH ** 2 / (2 * np.pi))
            coeff = ell1 + ell2 / sL + np.maximum(ell3, 0) * inv
        else:
            y = np.log(L)
            coeff = float(U0) + (float(TAU) + float(U_AMP) * np.exp(-float(U_RATE) / y)) / y
        return np.log(coeff) + L - c2 * sL
    if b is Branch.KOROBOV:
        LL = np.log(L)
        P = L ** 0.6 / LL ** 0.2
        if korobov == "computed":
            return None
        return np.log(float(KOROBOV_C3)) + L - float(KOROBOV_C4) * P
    raise ValueError(branch)


def find_crossover(branch_a, branch_b, log_start, step="0.001", *, max_steps=5_000_000,
                   classical="c1", korobov="computed", chunk=1 << 16):
    """First grid point ``log_start + k*step`` where ``branch_b < branch_a`` strictly.

    The grid is exact (decimal arithmetic). A vectorised binary64 pass
    discards grid points where ``b - a`` is clearly positive; every point it
    cannot decide is compared again at 128 bits, and only that comparison
    decides. Returns the crossover as a :class:`~decimal.Decimal`.
    """
    a, b = Branch(branch_a), Branch(branch_b)
    start, h = Decimal(str(log_start)), Decimal(str(step))
    if h <= 0:
        raise ValueError("step must be positive")
    if a is b:
        raise CrossoverNotFound(f"{a.value} never strictly improves on itself")
    opts = {"classical": classical, "korobov": korobov}

    def exact_less(k):
        L = mpf(str(start + k * h))
        with mpmath.workprec(C.WORKPREC):
            return log_branch(b, L, **opts) < log_branch(a, L, **opts)

    k0 = 0
    while k0 < max_steps:
        k = np.arange(k0, min(k0 + chunk, max_steps), dtype=np.int64)
        L = float(start) + k * float(h)
        with np.errstate(all="ignore"):
            fa = _np_log_branch(a, L, **opts)
            fb = _np_log_branch(b, L, **opts)
        if fa is None or fb is None:
            undecided = k
        else:
            slack = 1e-9 * (np.abs(fa) + np.abs(fb) + 1)
            undecided = k[~((fb - fa) > slack)]
        for kk in undecided:
            if exact_less(int(kk)):
                return start + int(kk) * h
        k0 += chunk
    raise CrossoverNotFound(
        f"{b.value} does not drop below {a.value} within {max_steps} steps of {step} from {log_start}")


# -- verification sweeps ---------------------------------------------------------------------

def _loglog_grid(lo, hi, n):
    with mpmath.workprec(C.WORKPREC):
        lo, hi = mpf(lo), mpf(hi)
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def verify_u_majorizes(grid_points=1000, u_form="printed"):
    """Check ``c1(x) <= u(x)`` on an even grid in ``log log x`` over the stated range."""
    if grid_points < 1000:
        raise ValueError("use at least 1000 grid points")
    worst = None
    with mpmath.workprec(C.WORKPREC):
        for y in _loglog_grid(*U_LOGLOG_RANGE, grid_points):
            slack = u_majorant(y, u_form) - bounds.classical_c1(mpmath.exp(y))
            if worst is None or slack < worst[0]:
                worst = (slack, y)
    return {"pass": worst[0] > 0, "min_slack": worst[0], "at_loglog_x": worst[1],
            "grid_points": grid_points, "u_form": u_form}


RANGE_CLAIMS = {
    "c1": ("0.09797", "0.23427"),
    "c2": ("0.24647", "0.42415"),
    "c3": (None, KOROBOV_C3),
    "c4": (KOROBOV_C4, None),
}

KOROBOV_SWEEP_TOP = "100"   # log log x; the claims concern all larger x as well


def range_assertions(grid_points=1000):
    """Sweep ``c1, c2`` over the classical branch and ``c3, c4`` over the
    Korobov branch and test the stated open intervals."""
    report = {}
    with mpmath.workprec(C.WORKPREC):
        lo = mpmath.log(_mp(CLASSICAL_FLOOR))
        classical = [bounds.c1_c2(mpmath.exp(y)) for y in _loglog_grid(lo, _mp(KOROBOV_LOGLOG), grid_points)]
        korobov = [bounds.c3_c4(mpmath.exp(y)) for y in
                   _loglog_grid(_mp(KOROBOV_LOGLOG), _mp(KOROBOV_SWEEP_TOP), grid_points)]
        samples = {
            "c1": [(k.c1, k.log_x0) for k in classical],
            "c2": [(k.c2, k.log_x0) for k in classical],
            "c3": [(k.c3, k.log_x0) for k in korobov],
            "c4": [(k.c4, k.log_x0) for k in korobov],
        }
        for name, values in samples.items():
            lo_claim, hi_claim = RANGE_CLAIMS[name]
            vmin = min(values, key=lambda p: p[0])
            vmax = max(values, key=lambda p: p[0])
            ok = True
            witness = None
            if lo_claim is not None and not vmin[0] > _mp(lo_claim):
                ok, witness = False, vmin
            if hi_claim is not None and not vmax[0] < _mp(hi_claim):
                ok, witness = False, vmax
            report[name] = {
                "pass": ok, "min": vmin[0], "max": vmax[0],
                "claim": (lo_claim, hi_claim), "witness_log_x": None if witness is None else witness[1],
            }
    return report
