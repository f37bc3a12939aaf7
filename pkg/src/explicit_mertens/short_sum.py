"""Certified upper bound for the sum over zeta zeros below ``H``.

    S = 2 * sum_{0 < gamma <= H} 1 / (sqrt(1/4 + gamma^2) |zeta'(1/2 + i gamma)|)

Every term is bounded above by replacing ``|zeta'|`` with the lower end of
its enclosure and ``gamma`` with ``gamma - delta``, where ``delta`` is the
table's last-digit uncertainty. Terms are evaluated in chunks (optionally in
worker processes) and reduced with a fixed-shape pairwise sum, so the result
does not depend on the number of workers.
"""
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath
from mpmath import mpf

from . import constants as C
from .enclosure import Enclosure, pairwise_sum
from .errors import PrecisionError
from .zeta_numerics import zeta_prime_critical

CHUNK = 64
TARGET = "2.4"


@dataclass(frozen=True)
class ShortSumResult:
    value: Enclosure
    zero_count: int
    max_term_gamma: mpf
    sum_mid: mpf
    tail_mid: mpf

    @property
    def tail_fraction(self):
        """Share of the midpoint sum from ordinates in ``(H/2, H]``."""
        return self.tail_mid / self.sum_mid

    @property
    def upper(self):
        return self.value.upper()

    def passes(self, bound=TARGET):
        return self.upper <= mpf(bound)


def _term(gamma, digits):
    """Enclosure of one term (without the symmetry factor) whose upper end
    bounds the true term."""
    with mpmath.workprec(C.WORKPREC):
        delta = mpf(10) ** (-digits)
        dz = zeta_prime_critical(gamma, ordinate_error=delta)
        lo = dz.abs_lower()
        if lo <= 0:
            raise PrecisionError(
                f"zeta' at gamma = {mpmath.nstr(gamma, 15)} is not separated from zero")
        quarter = mpf(1) / 4
        mid = 1 / (mpmath.sqrt(quarter + gamma ** 2) * abs(dz.value))
        g_lo = gamma - delta
        up = 1 / (mpmath.sqrt(quarter + g_lo ** 2) * lo)
        up += up * mpmath.ldexp(1, -C.WORKPREC + 4)
        return Enclosure(mid, up - mid)


def _chunk_terms(items):
    return [_term(g, d) for g, d in items]


def short_sum_terms(zeros, threads=1):
    """Per-zero term enclosures in table order."""
    items = [(z.gamma, z.source_precision) for z in zeros]
    chunks = [items[i:i + CHUNK] for i in range(0, len(items), CHUNK)]
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(chunks) <= 1:
        parts = [_chunk_terms(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_chunk_terms, chunks))
    return [t for part in parts for t in part]


def short_sum(zeros, threads=1):
    """Certified enclosure of ``S`` over the supplied ordinates."""
    if not zeros:
        raise ValueError("short_sum needs at least one zero")
    terms = short_sum_terms(zeros, threads)
    with mpmath.workprec(C.WORKPREC):
        total = pairwise_sum(terms)
        total = Enclosure(2 * total.value, 2 * total.radius)
        sum_mid = 2 * pairwise_sum([t.value for t in terms])
        half = C.H() / 2
        tail = [t.value for z, t in zip(zeros, terms) if z.gamma > half]
        tail_mid = 2 * pairwise_sum(tail) if tail else mpf(0)
        k = max(range(len(terms)), key=lambda i: terms[i].upper())
    return ShortSumResult(total, len(terms), zeros[k].gamma, sum_mid, tail_mid)
