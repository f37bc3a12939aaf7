"""Numerical literals used throughout the bound pipeline.

Literals are kept as decimal strings and converted with :func:`mp` at the
caller's working precision, so that nothing is rounded through binary64
before it reaches an extended-precision computation.
"""
from dataclasses import dataclass

import mpmath
from mpmath import mpf

#: Working precision (bits) for every enclosure and constant computation.
#: 128 bits comfortably exceeds double-double (106 bits).
WORKPREC = 128


def mp(literal):
    """Convert a decimal literal (str, int or mpf) to an mpf without loss."""
    if isinstance(literal, float):
        raise TypeError("pass decimal literals as strings, not floats")
    return mpf(literal)


@dataclass(frozen=True)
class ZeroFreeConstants:
    """Constants of the classical, log-log and Korobov--Vinogradov zero-free regions.

    ``Z2`` is carried for completeness; no downstream formula consumes it.
    """

    Z1: str = "5.558691"
    Z2: str = "21.233"
    Z3: str = "53.989"


@dataclass(frozen=True)
class RiemannConstants:
    """``H = 2 exp(e^2)`` and the height below which RH has been verified."""

    H_hat: int = 3_000_175_332_800

    @property
    def H(self):
        return 2 * mpmath.exp(mpmath.exp(2))


ZERO_FREE = ZeroFreeConstants()
RIEMANN = RiemannConstants()

Z1 = ZERO_FREE.Z1
Z2 = ZERO_FREE.Z2
Z3 = ZERO_FREE.Z3
H_HAT = RIEMANN.H_hat


def H():
    """``2 e^{e^2} = 3236.35598...`` at the current precision."""
    return RIEMANN.H


# Contour and short-sum constants (bounds on |I_4|, |I_3|+|I_5| and the
# sum over zeros with |gamma| <= H, all with sqrt(x) or x^sigma factored out).
I4_BOUND = "41.155"
I35_BOUND = "1.26e-5"
SHORT_SUM_BOUND = "2.4"

# Bounds on |zeta| used by the reciprocal estimates.
A_OMEGA_POSITIVE = "70.6995"
ONE_LINE_ZETA = "58.096"
RICHERT_EXPONENT = "4.43795"
A_OMEGA_ZERO_CAP = "60.8301"

# Validity floors. Each is the two-decimal rounding (upwards) of the root of
# a defining inequality; tests re-derive them.
#   log x_W  = max{Z1 (e^2 + log 2)^2, 16 log 10}   (classical floor)
LOG_X_W = "363.11"
#   (5/3)^{1/3}/Z3 - k0(x) > 0                      (c4 positive)
LOG_X_C4_POSITIVE = "72775.43"
#   log H_hat <= (log x)^{2/5} (log log x)^{1/5} / Z1  (T0 = H_hat admissible)
LOG_X_KOROBOV_FLOOR = "95191.34"
#   (log x)^{3/5} (log log x)^{-1/5} > log H        (T_x exceeds H)
X1 = "2.12216e22"
#   k0(x) <= K0_CAP for x >= X1
K0_CAP = "0.48763"

# Explicit bounds of other authors used by the piecewise bound.
CDE_DENOMINATOR = 4345            # |M(x)| < x/4345,  x >= 2 160 535
CDE_FLOOR = 2_160_535
RAMARE_A = "0.013"                # |M(x)| < 0.013x/log x - 0.118x/log^2 x
RAMARE_B = "0.118"
RAMARE_FLOOR = 1_078_853
DAVAL_DENOMINATOR = 160_383       # |M(x)| < x/160383, x >= 8.4e9 (preprint)
HURST_COEFF = "0.571"             # |M(x)| <= 0.571 sqrt(x), 33 <= x <= 1e16
HURST_LOG_MAX = "16"              # log10 of Hurst's verified range
SMALL_X_BOUND = 4                 # |M(x)| <= 4, 1 <= x <= 32


def euler_gamma():
    return +mpmath.euler
