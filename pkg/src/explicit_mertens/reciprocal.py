"""Explicit upper bounds for ``1/|zeta(s)|`` near the line ``sigma = 1``.

Three ingredients are provided:

* the published constants ``R1(Z1, t0)`` for bounds of shape ``R1 log t``
  (lookup only, nothing is interpolated);
* the envelope ``|zeta(sigma+it)| <= A_omega (log t)^{B_omega}`` valid to the
  right of ``sigma_t = 1 - omega (log log t / log t)^{2/3}``;
* the closed form ``R3(d, d1, omega)`` for bounds of shape
  ``R3 (log t)^{2/3} (log log t)^{1/4}`` in the Korobov--Vinogradov region,
  together with its feasibility conditions and an optimiser over
  ``(d1, omega)``.

Heights are passed as ``log t0`` so that ``t0 = exp(72775.43)`` and friends
can be handled without overflow.
"""
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mpf
from scipy.optimize import minimize

from . import constants as C
from .errors import ConstraintError, RangeError, TableLookupError

# Relative slack when testing d Z3 against the radius ratio. For d = 1/Z3 the
# two sides differ by about R_max / (t0 log t0) < 1e-14, far below the
# resolution of the five-digit literal Z3; see optimize_r3 for how this is
# reported.
RADIUS_RTOL = mpf("1e-12")
# W3 given as a binary64 number (e.g. 53.989) must still count as W3 >= Z3.
LITERAL_RTOL = mpf("1e-15")

D1_MIN = 1e-4
GRID_SIZE = 200

# -- R1 ------------------------------------------------------------------------

R1_TABLE = {
    ("Z1", "10"): "8.101",
    ("Z1", "1e2"): "4.339",
    ("Z1", "1e3"): "3.632",
    ("Z1", "1e4"): "3.264",
    ("Z1", "1e5"): "3.021",
    ("Z1", "1e7"): "2.711",
    ("Z1", "1e9"): "2.518",
    ("Z1", "Hhat"): "2.307",
    ("Z1", "H"): "3.422",
    ("Z1", "e^40"): "2.134",
}

_T0_ALIASES = {
    "10": 10, "1e1": 10, "1e2": 10**2, "100": 10**2, "1e3": 10**3, "1000": 10**3,
    "1e4": 10**4, "1e5": 10**5, "1e7": 10**7, "1e9": 10**9,
}


def _t0_key(t0):
    if isinstance(t0, str):
        token = t0.strip()
        if token in ("Hhat", "H_hat", str(C.H_HAT)):
            return "Hhat"
        if token in ("H", "e^40"):
            return token
        if token in _T0_ALIASES:
            t0 = _T0_ALIASES[token]
        else:
            raise TableLookupError(f"unknown t0 label {t0!r}")
    with mpmath.workprec(C.WORKPREC):
        value = mpmath.mpmathify(t0)
        exact = {10**k: ("10" if k == 1 else f"1e{k}") for k in (1, 2, 3, 4, 5, 7, 9)}
        exact[C.H_HAT] = "Hhat"
        if value == int(value) and int(value) in exact:
            return exact[int(value)]
        for key, ref in (("H", C.H()), ("e^40", mpmath.exp(40))):
            if abs(value / ref - 1) < mpf("1e-12"):
                return key
    raise TableLookupError(f"t0 = {t0} is not a published R1 height")


def _w_key(W):
    if isinstance(W, str) and W.strip() == "Z1":
        return "Z1"
    if mpf(W) == C.mp(C.Z1):
        return "Z1"
    raise TableLookupError(f"W = {W} has no published R1 values")


def r1_lookup(W, t0):
    """Published ``R1(W, t0)``; only ``W = Z1`` and the tabulated heights exist."""
    key = (_w_key(W), _t0_key(t0))
    try:
        return C.mp(R1_TABLE[key])
    except KeyError:
        raise TableLookupError(f"no R1 value for {key}") from None


# -- A_omega, B_omega ----------------------------------------------------------

def omega_cap():
    return mpmath.exp(mpf(2) / 3) / 2


def a_zero(log_t0):
    """``A_0 = 58.096 q (1 + log q / log t0)`` with ``q = sqrt(1 + 16/t0^2)``."""
    lt = mpf(log_t0)
    q = mpmath.sqrt(1 + 16 * mpmath.exp(-2 * lt))
    return C.mp(C.ONE_LINE_ZETA) * q * (1 + mpmath.log(q) / lt)


def a_b_omega(omega, t0=None, *, log_t0=None):
    """``(A_omega, B_omega)`` of the envelope ``|zeta| <= A (log t)^B``."""
    with mpmath.workprec(C.WORKPREC):
        omega = mpf(omega)
        if omega < 0:
            raise RangeError("omega must be nonnegative")
        if omega > omega_cap():
            raise ConstraintError("omega_cap", f"omega = {omega} exceeds e^(2/3)/2")
        B = mpf(2) / 3 + C.mp(C.RICHERT_EXPONENT) * omega ** mpf(1.5)
        if omega > 0:
            return C.mp(C.A_OMEGA_POSITIVE), B
        if log_t0 is None:
            if t0 is None:
                raise RangeError("A_0 depends on t0")
            log_t0 = mpmath.log(t0)
        if log_t0 < 1:
            raise RangeError("need t0 >= e^e")
        return a_zero(log_t0), B


def sigma_t(omega, t):
    """Left edge ``1 - omega (log log t / log t)^{2/3}`` of the envelope's range."""
    lt = mpmath.log(t)
    return 1 - mpf(omega) * (mpmath.log(lt) / lt) ** (mpf(2) / 3)


# -- R3 ------------------------------------------------------------------------

@dataclass(frozen=True)
class ReciprocalParams:
    """``d = 1/W3`` (0 on the line sigma = 1), ``d1``, ``omega`` and ``log t0``."""

    d: mpf
    d1: mpf
    omega: mpf
    log_t0: mpf

    @classmethod
    def from_w3(cls, W3, d1, omega, log_t0):
        d = mpf(0) if W3 is None or mpmath.isinf(W3) else 1 / mpf(W3)
        return cls(d, mpf(d1), mpf(omega), mpf(log_t0))

    @property
    def W3(self):
        return mpmath.inf if self.d == 0 else 1 / self.d

    @property
    def loglog_t0(self):
        return mpmath.log(self.log_t0)

    @property
    def r_max(self):
        lt = self.log_t0
        return self.omega * (mpmath.log(lt) / lt) ** (mpf(2) / 3)

    def radius_ratio(self):
        """Right side of the ``d Z3`` condition."""
        lt, llt = self.log_t0, self.loglog_t0
        lt_r = lt + mpmath.log1p(self.r_max * mpmath.exp(-lt))
        return (lt / lt_r) ** (mpf(2) / 3) * (llt / mpmath.log(lt_r)) ** (mpf(1) / 3)

    def d1_cap(self):
        lt, llt = self.log_t0, self.loglog_t0
        return (2 - self.r_max) * lt ** (mpf(2) / 3) * llt ** (mpf(1) / 3)

    def margins(self):
        """Signed slack of every condition (positive means satisfied)."""
        with mpmath.workprec(C.WORKPREC):
            z3 = C.mp(C.Z3)
            return {
                "t0_floor": self.log_t0 * (1 + LITERAL_RTOL) - mpmath.log(C.H_HAT),
                "w3_floor": (1 + LITERAL_RTOL) / z3 - self.d,
                "omega_cap": omega_cap() - self.omega,
                "omega_floor": self.omega - self.d / self.loglog_t0,
                "radius": self.radius_ratio() * (1 + RADIUS_RTOL) - self.d * z3,
                "d1_cap": self.d1_cap() - self.d1,
            }

    def check(self):
        """Raise :class:`ConstraintError` naming the first violated condition."""
        if self.d < 0 or self.d1 <= 0 or self.omega <= 0:
            raise ConstraintError("positivity", "d >= 0, d1 > 0 and omega > 0 are required")
        m = self.margins()
        strict = {"omega_floor", "d1_cap"}
        for name, slack in m.items():
            if slack < 0 or (name in strict and slack == 0):
                raise ConstraintError(name, f"violated by {mpmath.nstr(-slack, 5)}")
        return self


def r3_formula(p, check=True):
    """Closed-form ``R3(d, d1, omega)`` at height ``t0 = exp(p.log_t0)``."""
    with mpmath.workprec(C.WORKPREC):
        if check:
            p.check()
        lt, llt = p.log_t0, p.loglog_t0
        A, B = a_b_omega(p.omega, log_t0=lt)
        a0 = a_zero(lt)
        growth = mpmath.log1p(mpmath.log1p(p.r_max * mpmath.exp(-lt)) / lt)
        inner = B + B / llt * growth + mpmath.log(A) / llt
        exponent = (3 * mpmath.euler * p.d1 / (4 * lt ** (mpf(2) / 3) * llt ** (mpf(1) / 3))
                    + 4 * (p.d1 + p.d) / (mpmath.pi * (p.omega - p.d / llt)) * inner)
        return ((a0 / p.d1 ** 3) ** mpf(0.25) * (1 + mpmath.log(2) / lt) ** (mpf(1) / 6)
                * mpmath.exp(exponent))


def _r3_numpy(d, d1, omega, lt):
    """Vectorised float64 twin of :func:`r3_formula` used only for searching."""
    llt = np.log(lt)
    q = np.sqrt(1 + 16 * np.exp(-2 * lt))
    a0 = float(C.ONE_LINE_ZETA) * q * (1 + np.log(q) / lt)
    B = 2 / 3 + float(C.RICHERT_EXPONENT) * omega ** 1.5
    r_max = omega * (llt / lt) ** (2 / 3)
    inner = B + B / llt * np.log1p(np.log1p(r_max * np.exp(-lt)) / lt) \
        + np.log(float(C.A_OMEGA_POSITIVE)) / llt
    exponent = (3 * float(mpmath.euler) * d1 / (4 * lt ** (2 / 3) * llt ** (1 / 3))
                + 4 * (d1 + d) / (np.pi * (omega - d / llt)) * inner)
    return (a0 / d1 ** 3) ** 0.25 * (1 + np.log(2) / lt) ** (1 / 6) * np.exp(exponent)


def _search_box(d, lt):
    llt = math.log(lt)
    cap = float(omega_cap())
    w_lo = d / llt
    r_max_hi = cap * (llt / lt) ** (2 / 3)
    d1_hi = (2 - r_max_hi) * lt ** (2 / 3) * llt ** (1 / 3)
    return w_lo, cap, d1_hi


def _grid(d, lt, n):
    w_lo, cap, d1_hi = _search_box(d, lt)
    d1 = np.geomspace(D1_MIN, d1_hi, n + 1)[:-1]
    omega = np.linspace(w_lo, cap, n + 1)[1:]
    D1, OM = np.meshgrid(d1, omega, indexing="ij")
    with np.errstate(over="ignore", invalid="ignore"):
        vals = _r3_numpy(d, D1, OM, lt)
    vals[~np.isfinite(vals)] = np.inf
    # argmin returns the first minimum in row-major order: lowest d1, then lowest omega
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    return d1[i], omega[j], vals[i, j]


def optimize_r3(W3, log_t0, grid=GRID_SIZE):
    """Minimise ``R3`` over ``(d1, omega)`` for fixed ``W3`` and ``t0``.

    A ``grid x grid`` feasibility grid (log-spaced in ``d1``, linear in
    ``omega``) is refined by Nelder--Mead in ``(log d1, omega)``; points
    outside the feasible box are rejected outright. The final parameters are
    re-checked and evaluated in extended precision. ``W3=None`` (or inf)
    gives the line ``sigma = 1`` (``d = 0``).

    Returns ``(ReciprocalParams, R3)``.
    """
    with mpmath.workprec(C.WORKPREC):
        log_t0 = mpf(log_t0)
        if log_t0 < mpmath.log(C.H_HAT):
            raise RangeError("t0 must be at least the Riemann height")
        d = 0.0 if W3 is None or mpmath.isinf(W3) else float(1 / mpf(W3))
        if d and mpf(W3) < C.mp(C.Z3) * (1 - LITERAL_RTOL):
            raise RangeError("W3 must be at least Z3")
    lt = float(log_t0)
    w_lo, cap, d1_hi = _search_box(d, lt)
    d1_0, om_0, best_grid = _grid(d, lt, grid)
    if not np.isfinite(best_grid):
        raise ConstraintError("empty", "no feasible grid point")

    def objective(v):
        d1, om = math.exp(v[0]), v[1]
        if not (w_lo < om <= cap and D1_MIN <= d1 < d1_hi):
            return math.inf
        return float(_r3_numpy(d, d1, om, lt))

    res = minimize(objective, [math.log(d1_0), om_0], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000})
    x = res.x if res.fun <= best_grid else [math.log(d1_0), om_0]
    with mpmath.workprec(C.WORKPREC):
        p = ReciprocalParams(mpf(d) if d == 0 else 1 / mpf(W3), mpf(math.exp(x[0])),
                             mpf(x[1]), log_t0)
        value = r3_formula(p)
    return p, value


def r3_one_line(log_t0):
    """Optimised ``R3`` on the line ``sigma = 1`` (``d = 0``)."""
    return optimize_r3(None, log_t0)[1]


# Published parameter rows: (W3, log t0, d1, omega, R3).
R3_ROWS = (
    ("Z3", "Hhat", "0.09172", "0.92377", "40.943"),
    ("Z3", "72775.43", "0.11335", "0.60942", "33.812"),
    ("54", "Hhat", "0.09172", "0.92377", "40.941"),
    ("100", "Hhat", "0.09198", "0.91867", "38.109"),
)


def _resolve_w3(label):
    return C.mp(C.Z3) if label == "Z3" else C.mp(label)


def _resolve_log_t0(label):
    return mpmath.log(C.H_HAT) if label == "Hhat" else C.mp(label)


def r3_table_rows():
    """Evaluate :func:`r3_formula` at every published parameter row."""
    rows = []
    with mpmath.workprec(C.WORKPREC):
        for w3, lt, d1, om, published in R3_ROWS:
            p = ReciprocalParams.from_w3(_resolve_w3(w3), C.mp(d1), C.mp(om), _resolve_log_t0(lt))
            value = r3_formula(p)
            rows.append({
                "W3": w3, "log_t0": lt, "d1": d1, "omega": om,
                "value": value, "published": C.mp(published),
                "abs_err": abs(value - C.mp(published)),
            })
    return rows
