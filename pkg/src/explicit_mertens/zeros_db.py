"""Loading tables of nontrivial zeta-zero ordinates.

Tables follow Odlyzko's ``zeros1`` layout: one positive decimal ordinate
per line, ascending, no header. Ordinates are parsed straight from the
decimal string at working precision (no binary64 round trip), and the
number of supplied decimals is kept so that callers can propagate the
table's own rounding error.
"""
import gzip
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import mpmath
from mpmath import mpf

from . import constants as C
from .errors import EmptyTableError, ParseError

ZEROS_ENV = "MERTENS_ZEROS_PATH"
BUNDLED_TABLE = "zeros_to_H.txt"
COUNT_TOLERANCE = 2


@dataclass(frozen=True)
class ZeroOrdinate:
    gamma: mpf
    source_precision: int

    @property
    def uncertainty(self):
        """One unit in the last supplied decimal place."""
        return mpf(10) ** (-self.source_precision)


def default_zeros_path():
    """``$MERTENS_ZEROS_PATH`` if set, otherwise the table shipped with the package."""
    env = os.environ.get(ZEROS_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("explicit_mertens") / "data" / BUNDLED_TABLE))


def _open(path):
    path = Path(path)
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="ascii")
    return open(path, encoding="ascii")


def _parse_line(text, lineno):
    token = text.strip()
    try:
        whole, _, frac = token.partition(".")
        if not whole.isdigit() or (frac and not frac.isdigit()):
            raise ValueError
        value = mpf(token)
    except ValueError:
        raise ParseError(lineno, f"not a positive decimal: {token!r}") from None
    if value <= 0:
        raise ParseError(lineno, f"ordinate must be positive: {token!r}")
    return value, len(frac)


def load_zeros(path=None, gamma_max=None, *, allow_empty=False):
    """Read ordinates ``0 < gamma <= gamma_max`` from a zeros table.

    Blank lines are skipped. A non-numeric line or a non-increasing
    ordinate raises :class:`ParseError` with the offending line number.
    An empty result raises :class:`EmptyTableError` unless ``allow_empty``.
    """
    path = default_zeros_path() if path is None else path
    with mpmath.workprec(C.WORKPREC):
        cutoff = None if gamma_max is None else mpmath.mpmathify(gamma_max)
        zeros = []
        previous = None
        with _open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                gamma, digits = _parse_line(line, lineno)
                if previous is not None and gamma <= previous:
                    raise ParseError(lineno, "ordinates must be strictly increasing")
                previous = gamma
                if cutoff is not None and gamma > cutoff:
                    break
                zeros.append(ZeroOrdinate(gamma, digits))
    if not zeros and not allow_empty:
        raise EmptyTableError(f"no ordinates <= {gamma_max} in {path}")
    return zeros


def riemann_von_mangoldt(T):
    """Main term ``(T/2pi) log(T/(2 pi e)) + 7/8`` of the zero-counting function."""
    with mpmath.workprec(C.WORKPREC):
        T = mpmath.mpmathify(T)
        two_pi = 2 * mpmath.pi
        return T / two_pi * mpmath.log(T / (two_pi * mpmath.e)) + mpf(7) / 8


def count_check(zeros, gamma_max, tolerance=COUNT_TOLERANCE):
    """True when ``len(zeros)`` is within ``tolerance`` of the main term at ``gamma_max``."""
    expected = riemann_von_mangoldt(gamma_max)
    return abs(len(zeros) - expected) <= tolerance


def load_to_H(path=None):
    """Ordinates up to ``H = 2 exp(e^2)``."""
    with mpmath.workprec(C.WORKPREC):
        return load_zeros(path, C.H())
