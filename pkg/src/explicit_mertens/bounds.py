"""Constants of the explicit bounds ``|M(x)| < c1 x exp(-c2 sqrt(log x))`` and
``|M(x)| < c3 x exp(-c4 (log x)^{3/5} (log log x)^{-1/5})``.

Every function takes ``log x`` (written ``L``) rather than ``x``: the
interesting range starts around ``x = e^{363}`` and goes far beyond binary64.
mpmath numbers have an unbounded exponent, so ``x`` itself is formed only
where a right-hand side is requested explicitly.
"""
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal

import mpmath
from mpmath import mpf

from . import constants as C
from .errors import ConstraintError, RangeError
from .quadrature import integrate

# Default inputs of the two calculators.
R1_H = "3.422"          # R1(Z1, H)
R1_TABLE_T = "2.134"    # R1(Z1, e^40), reproduces the published l2 column
R3_DEFAULT = "40.944"   # upper bound for R3(Z3, t) on t >= Hhat


def _m(v):
    return v if isinstance(v, mpf) else mpmath.mpmathify(v)


def _log_H():
    return mpmath.log(C.H())


# -- contour abscissae and Perron error -----------------------------------------

def sigma1(t, W, *, log_t=None):
    """``1 - 1/(W log t)``."""
    with mpmath.workprec(C.WORKPREC):
        lt = _m(log_t) if log_t is not None else mpmath.log(_m(t))
        if lt < mpmath.log(3):
            raise RangeError("sigma1 needs t >= 3")
        return 1 - 1 / (_m(W) * lt)


def sigma2(t, W3, *, log_t=None):
    """``1 - 1/(W3 (log t)^{2/3} (log log t)^{1/3})``."""
    with mpmath.workprec(C.WORKPREC):
        lt = _m(log_t) if log_t is not None else mpmath.log(_m(t))
        if lt < mpmath.log(3):
            raise RangeError("sigma2 needs t >= 3")
        return 1 - 1 / (_m(W3) * lt ** (mpf(2) / 3) * mpmath.log(lt) ** (mpf(1) / 3))


def nu1(log_x, *, T=None, log_T=None, rearranged=False):
    """Perron truncation factor ``nu1(x, T)``.

    ``2ec + (4e^c/log x)(T/x + e log T)`` with ``c = 1 + 1/log x``; the
    ``rearranged`` form ``2e + (4e^c/log x)(e^{-1/log x}/2 + T/x + e log T)``
    is algebraically identical and kept as an independent cross-check.
    """
    with mpmath.workprec(C.WORKPREC):
        L = _m(log_x)
        if L <= 0:
            raise RangeError("nu1 needs x > 1")
        lT = _m(log_T) if log_T is not None else mpmath.log(_m(T))
        if lT <= 0:
            raise RangeError("nu1 needs T > 1")
        c = 1 + 1 / L
        T_over_x = mpmath.exp(lT - L)
        e = mpmath.e
        if rearranged:
            return 2 * e + 4 * mpmath.exp(c) / L * (mpmath.exp(-1 / L) / 2 + T_over_x + e * lT)
        return 2 * e * c + 4 * mpmath.exp(c) / L * (T_over_x + e * lT)


# -- classical constants -----------------------------------------------------------

def log_x_w(W):
    """``max{W (e^2 + log 2)^2, 16 log 10}``, the classical validity floor."""
    with mpmath.workprec(C.WORKPREC):
        return max(_m(W) * (mpmath.e ** 2 + mpmath.log(2)) ** 2, 16 * mpmath.log(10))


@dataclass(frozen=True)
class BoundConstants:
    variant: str
    log_x0: mpf
    ell1: mpf = None
    ell2: mpf = None
    ell3: mpf = None
    c1: mpf = None
    c2: mpf = None
    c3: mpf = None
    c4: mpf = None
    terms: dict = field(default_factory=dict, compare=False)


def ell_constants(log_x0, W=C.Z1, r1_H=R1_H, r1_T=R1_TABLE_T):
    """``(l1, l2(x0), l3(x0))`` with ``T = T_x``, ``log T_x = sqrt(log x0 / W)``."""
    with mpmath.workprec(C.WORKPREC):
        L, W = _m(log_x0), C.mp(W)
        r1_H, r1_T = C.mp(r1_H), C.mp(r1_T)
        floor = log_x_w(W)
        if L < floor:
            raise RangeError(f"log x0 = {mpmath.nstr(L, 10)} is below log x_W = {mpmath.nstr(floor, 10)}")
        e, pi = mpmath.e, mpmath.pi
        c = 1 + 1 / L
        lT = mpmath.sqrt(L / W)
        ell1 = r1_H / (2 * pi * W)
        ell2 = (2 * e + r1_T * e / (pi * mpmath.sqrt(W) * L)
                + 4 * mpmath.exp(c) / L * (mpmath.exp(-1 / L) / 2 + mpmath.exp(lT - L) + e * lT))
        # (2.4 + 41.155/x) x^{-1/2} e^{log T}, formed in log space
        contour = (C.mp(C.SHORT_SUM_BOUND) + C.mp(C.I4_BOUND) * mpmath.exp(-L)) * mpmath.exp(lT - L / 2)
        ell3 = contour + C.mp(C.I35_BOUND) - r1_H * _log_H() ** 2 / (2 * pi)
        return ell1, ell2, ell3


def unit_step(y):
    return 1 if y >= 0 else 0


def c1_of(L, ell1, ell2, ell3):
    return ell1 + ell2 / mpmath.sqrt(L) + unit_step(ell3) * ell3 / L


def c2_of(L, W):
    return 1 / mpmath.sqrt(W) - mpmath.log(L) / mpmath.sqrt(L)


def c1_c2(log_x0, W=C.Z1, r1_H=R1_H, r1_T=R1_TABLE_T):
    """Classical constants ``c1(x0), c2(x0)`` as :class:`BoundConstants`."""
    with mpmath.workprec(C.WORKPREC):
        L, W = _m(log_x0), C.mp(W)
        ell1, ell2, ell3 = ell_constants(L, W, r1_H, r1_T)
        return BoundConstants("classical", L, ell1, ell2, ell3,
                              c1=c1_of(L, ell1, ell2, ell3), c2=c2_of(L, W))


def classical_c1(log_x, W=C.Z1, r1_H=R1_H, r1_T=R1_TABLE_T):
    return c1_c2(log_x, W, r1_H, r1_T).c1


# -- Korobov--Vinogradov constants ------------------------------------------------

def log_x1():
    return mpmath.log(C.mp(C.X1))


def korobov_exponent(log_x):
    """``P(x) = (log x)^{3/5} (log log x)^{-1/5}`` (also ``log T_x``)."""
    L = _m(log_x)
    return L ** (mpf(3) / 5) / mpmath.log(L) ** (mpf(1) / 5)


def k_functions(log_x, W3=C.Z3):
    """``(k0, k1, k2)`` at ``x``; requires ``x >= x1``."""
    with mpmath.workprec(C.WORKPREC):
        L = _m(log_x)
        if L < log_x1():
            raise RangeError("k-functions need x >= x1 = 2.12216e22")
        k0 = mpmath.log(L) ** (mpf(6) / 5) / L ** (mpf(3) / 5)
        k2 = (mpf(5) / 3) ** (mpf(1) / 3) / C.mp(W3) - k0
        return k0, 1 - k0, k2


def t0_ratio_ok(log_T0, W1, W3):
    """``log T0 / log log T0 <= (W3/W1)^3`` (so that ``sigma1(T0) <= sigma2(T0)``)."""
    lT0 = _m(log_T0)
    return lT0 / mpmath.log(lT0) <= (C.mp(W3) / C.mp(W1)) ** 3


def t0_korobov_cap(log_x, W1):
    """Largest admissible ``log T0``: ``(log x)^{2/5} (log log x)^{1/5} / W1``."""
    L = _m(log_x)
    return L ** (mpf(2) / 5) * mpmath.log(L) ** (mpf(1) / 5) / C.mp(W1)


def c3_c4(log_x0, log_T0=None, W1=C.Z1, W3=C.Z3, r1_H=R1_H, r1_T0=R1_H,
          r3_T0=R3_DEFAULT, r3_Tx0=R3_DEFAULT):
    """Korobov--Vinogradov constants ``c3(x0), c4(x0)``.

    ``log_T0`` defaults to ``log Hhat``. Each hypothesis is checked and a
    :class:`ConstraintError` names the first one that fails.
    """
    with mpmath.workprec(C.WORKPREC):
        L = _m(log_x0)
        lT0 = mpmath.log(C.H_HAT) if log_T0 is None else _m(log_T0)
        W1, W3 = C.mp(W1), C.mp(W3)
        r1_H, r1_T0, r3_T0, r3_Tx0 = (C.mp(v) for v in (r1_H, r1_T0, r3_T0, r3_Tx0))
        k0, k1, k2 = k_functions(L, W3)
        P = korobov_exponent(L)
        if k2 <= 0:
            raise ConstraintError("c4_positive", f"k2(x0, W3) = {mpmath.nstr(k2, 6)} <= 0")
        if lT0 < mpmath.log(C.H_HAT) * (1 - mpf("1e-15")):
            raise ConstraintError("t0_floor", "T0 must be at least Hhat")
        if not t0_ratio_ok(lT0, W1, W3):
            raise ConstraintError("t0_ratio", "log T0 / log log T0 exceeds (W3/W1)^3")
        if lT0 > t0_korobov_cap(L, W1):
            raise ConstraintError(
                "t0_korobov", f"log T0 exceeds (log x0)^(2/5)(log log x0)^(1/5)/W1 = "
                f"{mpmath.nstr(t0_korobov_cap(L, W1), 8)}")
        if P < lT0:
            raise ConstraintError("tx_ge_t0", "T_{x0} is below T0")

        e, pi = mpmath.e, mpmath.pi
        LL = mpmath.log(L)
        ratio = mpmath.exp((k2 - k1) * P)              # E1(x0) / E2(x0)
        T0 = mpmath.exp(lT0)
        s1, s2 = sigma1(None, W1, log_t=lT0), sigma2(None, W3, log_t=lT0)
        terms = {
            "perron": (nu1(L, log_T=P)
                       + (C.mp(C.SHORT_SUM_BOUND) + C.mp(C.I4_BOUND) * mpmath.exp(-L))
                       * mpmath.exp(P - L / 2)) * ratio,
            "horizontal": (r3_Tx0 * (mpf(3) / 5) ** (mpf(1) / 4) * e * LL ** (mpf(7) / 60)
                           / (pi * L ** (mpf(8) / 5)) * ratio),
            "vertical": (mpf(3) / 5) ** (mpf(5) / 4) * r3_T0 / (pi * LL ** (mpf(1) / 12)),
            "bridge": r1_T0 * (s2 - s1) * lT0 / (pi * T0 * L),
            "classical": ((r1_H * (lT0 ** 2 - _log_H() ** 2) / (2 * pi) + C.mp(C.I35_BOUND))
                          * mpmath.exp((k2 - 1) * P)),
        }
        c3 = sum(terms.values())
        return BoundConstants("korobov", L, c3=c3, c4=k2, terms=terms)


# -- contour right-hand sides -----------------------------------------------------

@dataclass(frozen=True)
class ContourConfig:
    """Geometry of the Korobov--Vinogradov contour (heights as logarithms)."""

    W1: mpf
    W3: mpf
    log_T0: mpf
    log_T: mpf
    log_x: mpf

    @property
    def c(self):
        return 1 + 1 / self.log_x

    def check(self):
        lH = _log_H()
        if self.W1 < C.mp(C.Z1) or self.W3 < C.mp(C.Z3):
            raise ConstraintError("zero_free", "need W1 >= Z1 and W3 >= Z3")
        if self.log_T0 <= lH or self.log_T <= lH:
            raise ConstraintError("height", "T0 and T must exceed H")
        if not t0_ratio_ok(self.log_T0, self.W1, self.W3):
            raise ConstraintError("t0_ratio", "log T0 / log log T0 exceeds (W3/W1)^3")
        if self.log_T < self.log_T0:
            raise ConstraintError("height", "need T >= T0")
        return self


def classical_contour_rhs(log_x, log_T, W=C.Z1, r1_W_T=R1_TABLE_T, r1_W_H=R1_H):
    """Classical contour bound: distance between the Perron integral and the short sum."""
    with mpmath.workprec(C.WORKPREC):
        L, lT, W = _m(log_x), _m(log_T), C.mp(W)
        if L < 0:
            raise RangeError("need x >= 1")
        if lT <= _log_H():
            raise RangeError("need T > H")
        x = mpmath.exp(L)
        first = C.mp(r1_W_T) * mpmath.e * x * lT / (mpmath.pi * mpmath.exp(lT) * L) if L > 0 else mpf(0)
        second = C.mp(C.I4_BOUND) / mpmath.sqrt(x)
        third = ((C.mp(r1_W_H) * (lT ** 2 - _log_H() ** 2) / (2 * mpmath.pi) + C.mp(C.I35_BOUND))
                 * x ** sigma1(None, W, log_t=lT))
        return first + second + third


def korobov_contour_integral(cfg, tol="1e-9"):
    """``int_{T0}^{T} x^{sigma2(t)-1} (log t)^{2/3} (log log t)^{1/4} dt/t`` as an enclosure.

    The substitution ``u = log t`` removes the ``dt/t``.
    """
    L, W3 = cfg.log_x, cfg.W3

    def integrand(u):
        return (mpmath.exp(-L / (W3 * u ** (mpf(2) / 3) * mpmath.log(u) ** (mpf(1) / 3)))
                * u ** (mpf(2) / 3) * mpmath.log(u) ** (mpf(1) / 4))

    with mpmath.workprec(C.WORKPREC):
        return integrate(integrand, cfg.log_T0, cfg.log_T, tol, relative=True)


def korobov_contour_rhs(cfg, r3_T=R3_DEFAULT, r3_T0=R3_DEFAULT, r1_T0=R1_H, r1_H=R1_H):
    """Korobov--Vinogradov contour bound; the integral enters through its upper end."""
    with mpmath.workprec(C.WORKPREC):
        cfg.check()
        L, lT, lT0 = cfg.log_x, cfg.log_T, cfg.log_T0
        x = mpmath.exp(L)
        pi, e = mpmath.pi, mpmath.e
        first = (C.mp(r3_T) * lT ** (mpf(2) / 3) * mpmath.log(lT) ** (mpf(1) / 4) * e * x
                 / (pi * mpmath.exp(lT) * L))
        integral = korobov_contour_integral(cfg)
        second = C.mp(r3_T0) * x / pi * integral.upper()
        s1 = sigma1(None, cfg.W1, log_t=lT0)
        s2 = sigma2(None, cfg.W3, log_t=lT0)
        third = C.mp(r1_T0) * (s2 - s1) * lT0 / (pi * mpmath.exp(lT0)) * x ** s2
        fourth = (C.mp(C.I4_BOUND) / mpmath.sqrt(x)
                  + (C.mp(r1_H) * (lT0 ** 2 - _log_H() ** 2) / (2 * pi) + C.mp(C.I35_BOUND)) * x ** s1)
        return first + second + third + fourth


# names used by the operation catalogue
lemma41_rhs = classical_contour_rhs
lemma42_rhs = korobov_contour_rhs


def log_theorem_bound(log_x, variant, log_x0, **kwargs):
    """Logarithm of the bound on ``|M(x)|`` from constants computed at ``x0``."""
    with mpmath.workprec(C.WORKPREC):
        L, L0 = _m(log_x), _m(log_x0)
        if L < L0:
            raise RangeError("need x >= x0")
        if variant == "classical":
            k = c1_c2(L0, **kwargs)
            return mpmath.log(k.c1) + L - k.c2 * mpmath.sqrt(L)
        if variant == "korobov":
            if L0 < C.mp(C.LOG_X_KOROBOV_FLOOR):
                raise RangeError("Korobov constants are computed only for log x0 >= 95191.34")
            k = c3_c4(L0, **kwargs)
            return mpmath.log(k.c3) + L - k.c4 * korobov_exponent(L)
        raise ValueError(f"unknown variant {variant!r}")


def theorem_bound(log_x, variant, log_x0, **kwargs):
    """The bound on ``|M(x)|`` itself (an mpf, whose exponent range is unbounded)."""
    with mpmath.workprec(C.WORKPREC):
        return mpmath.exp(log_theorem_bound(log_x, variant, log_x0, **kwargs))


# -- published tables ---------------------------------------------------------------

TABLE1 = (
    ("363.11", "0.4188", "0.1148", None, None),
    ("1.0e5", "0.1154", "0.3876", "5.6144", "0.0031"),
    ("2.0e5", "0.1103", "0.3968", "5.5871", "0.0086"),
    ("3.0e5", "0.1080", "0.4010", "5.5719", "0.0110"),
    ("4.0e5", "0.1067", "0.4036", "5.5615", "0.0125"),
    ("5.0e5", "0.1058", "0.4055", "5.5535", "0.0135"),
    ("6.0e5", "0.1051", "0.4069", "5.5472", "0.0142"),
    ("7.0e5", "0.1046", "0.4080", "5.5418", "0.0148"),
    ("8.0e5", "0.1042", "0.4088", "5.5373", "0.0153"),
    ("9.0e5", "0.1038", "0.4096", "5.5333", "0.0157"),
    ("1.0e6", "0.1035", "0.4102", "5.5298", "0.0160"),
)

TABLE4 = (
    ("363.11", "0.09798", "6.11339", "-35.57620", "0.41880", "0.11480"),
    ("489.15", "0.09798", "6.01725", "-35.57620", "0.37005", "0.14415"),
    ("607.78", "0.09798", "5.95613", "-35.57620", "0.33957", "0.16415"),
    ("864.36", "0.09798", "5.87065", "-35.57620", "0.29766", "0.19414"),
    ("1474.63", "0.09798", "5.76746", "-35.57620", "0.24817", "0.23414"),
    ("3364.98", "0.09798", "5.65458", "-35.57620", "0.19546", "0.28414"),
    ("14305.32", "0.09798", "5.54182", "-35.57620", "0.14431", "0.34414"),
    ("79589.39", "0.09798", "5.48108", "-35.57620", "0.11741", "0.38414"),
)


def to_decimal(v, digits=30):
    return Decimal(mpmath.nstr(v, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))


def round_decimal(v, places):
    q = Decimal(1).scaleb(-places)
    return to_decimal(v).quantize(q, rounding=ROUND_HALF_EVEN)


def admissible_round(v, places, direction):
    """Round a constant the way the published tables do.

    Constants that must not be understated (``c1``, ``c3``) are moved up by
    one unit in the last place before rounding, those that must not be
    overstated (``c2``, ``c4``) down by one unit.
    """
    unit = Decimal(1).scaleb(-places)
    d = to_decimal(v)
    d = d + unit if direction == "up" else d - unit
    return d.quantize(unit, rounding=ROUND_HALF_EVEN)


_T1_DIRECTIONS = {"c1": "up", "c2": "down", "c3": "up", "c4": "down"}


def table1_rows():
    """Reproduce the ``(c1, c2, c3, c4)`` table; dashes become ``None``."""
    rows = []
    with mpmath.workprec(C.WORKPREC):
        for label, *published in TABLE1:
            L = C.mp(label)
            computed = {"c1": None, "c2": None, "c3": None, "c4": None}
            k = c1_c2(L)
            computed["c1"], computed["c2"] = k.c1, k.c2
            if published[2] is not None:
                kk = c3_c4(L)
                computed["c3"], computed["c4"] = kk.c3, kk.c4
            row = {"log_x0": label}
            for name, pub in zip(("c1", "c2", "c3", "c4"), published):
                raw = computed[name]
                if pub is None:
                    row[name] = None
                    continue
                rounded = admissible_round(raw, 4, _T1_DIRECTIONS[name])
                row[name] = {
                    "raw": raw, "rounded": rounded, "published": Decimal(pub),
                    "abs_err": abs(rounded - Decimal(pub)),
                    "raw_err": abs(to_decimal(raw) - Decimal(pub)),
                }
            rows.append(row)
    return rows


def table4_rows(r1_T=R1_TABLE_T):
    """Reproduce the ``(l1, l2, l3, c1, c2)`` table with ``W = Z1``."""
    rows = []
    with mpmath.workprec(C.WORKPREC):
        for label, *published in TABLE4:
            k = c1_c2(C.mp(label), r1_T=r1_T)
            row = {"log_x0": label}
            for name, raw, pub in zip(("ell1", "ell2", "ell3", "c1", "c2"),
                                      (k.ell1, k.ell2, k.ell3, k.c1, k.c2), published):
                row[name] = {
                    "raw": raw, "rounded": round_decimal(raw, 5), "published": Decimal(pub),
                    "abs_err": abs(to_decimal(raw) - Decimal(pub)),
                }
            rows.append(row)
    return rows


def max_abs_err(rows, key="abs_err"):
    errs = [cell[key] for row in rows for name, cell in row.items()
            if isinstance(cell, dict)]
    return max(errs)
