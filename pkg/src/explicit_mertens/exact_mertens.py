"""Exact Moebius values and Mertens sums by a segmented sieve.

Each segment multiplies together the primes ``p <= sqrt(hi)`` dividing each
``n`` (its small radical) while flipping a sign per prime, zeroes multiples
of ``p^2``, and finally flips the sign once more wherever the small radical
falls short of ``n`` (exactly one prime factor above ``sqrt(hi)`` remains).
All arithmetic is integer, so serial and parallel runs agree exactly.
"""
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import constants as C
from .errors import RangeError

SEGMENT = 1 << 20
CHECKPOINT_EVERY = 10**6
DEFAULT_MAX = 10**9
U64_MAX = (1 << 64) - 1
SMALL_RANGE = 32
HURST_NUM, HURST_DEN = 571, 1000


@dataclass(frozen=True)
class MobiusSegment:
    lo: int
    hi: int
    values: np.ndarray


@dataclass(frozen=True)
class MertensCheckpoint:
    x: int
    m: int


@dataclass(frozen=True)
class SmallBoundsReport:
    x_max: int
    max_abs_small: int
    argmax_small: int
    max_ratio: float
    argmax_ratio: int
    pass_small: bool
    pass_ratio: bool
    squarefree_count: int

    @property
    def passed(self):
        return self.pass_small and self.pass_ratio


def primes_up_to(n):
    """Primes ``<= n`` by a plain Eratosthenes sieve."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _mobius_block(lo, hi, primes):
    n = hi - lo + 1
    mu = np.ones(n, dtype=np.int8)
    rad = np.ones(n, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p * p > hi:
            break
        start = (-lo) % p
        mu[start::p] *= -1
        rad[start::p] *= p
        q = p * p
        mu[(-lo) % q::q] = 0
    big = rad != np.arange(lo, hi + 1, dtype=np.int64)
    mu[big] *= -1
    return mu


def _check_range(lo, hi):
    if lo < 1 or hi < lo:
        raise RangeError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > U64_MAX:
        raise RangeError(f"hi = {hi} does not fit in 64 bits")
    if hi > np.iinfo(np.int64).max:
        raise RangeError(f"hi = {hi} exceeds the signed 64-bit sieve limit")


def mobius_range(lo, hi):
    """Exact ``mu(n)`` for ``lo <= n <= hi``."""
    lo, hi = int(lo), int(hi)
    _check_range(lo, hi)
    primes = primes_up_to(math.isqrt(hi))
    values = np.concatenate([
        _mobius_block(a, min(a + SEGMENT - 1, hi), primes)
        for a in range(lo, hi + 1, SEGMENT)
    ])
    return MobiusSegment(lo, hi, values)


def _segments(x):
    return [(a, min(a + SEGMENT - 1, x)) for a in range(1, x + 1, SEGMENT)]


def _segment_sum(args):
    lo, hi, primes = args
    mu = _mobius_block(lo, hi, primes)
    return int(mu.sum(dtype=np.int64))


def _segment_scan(args):
    """Checkpoints and bound statistics for one segment, given ``M(lo - 1)``."""
    lo, hi, primes, offset, every = args
    mu = _mobius_block(lo, hi, primes)
    m = np.cumsum(mu, dtype=np.int64) + offset
    xs = np.arange(lo, hi + 1, dtype=np.int64)
    stats = {"sum": int(m[-1] - offset), "squarefree": int(np.count_nonzero(mu))}
    if every:
        first = -(-lo // every) * every
        pos = np.arange(first, hi + 1, every, dtype=np.int64)
        stats["checkpoints"] = [(int(x), int(m[x - lo])) for x in pos]
    small = xs <= SMALL_RANGE
    if small.any():
        a = np.abs(m[small])
        k = int(np.argmax(a))
        stats["small"] = (int(a[k]), int(xs[small][k]))
    big = ~small
    if big.any():
        mb, xb = m[big], xs[big]
        sq = mb * mb
        ratio = sq / xb
        k = int(np.argmax(ratio))
        # |M| <= 0.571 sqrt(x)  <=>  1000^2 M^2 <= 571^2 x, exact in int64
        ok = bool(np.all(HURST_DEN**2 * sq <= HURST_NUM**2 * xb))
        stats["ratio"] = (float(math.sqrt(ratio[k])), int(xb[k]), ok)
    return stats


def _scan(x, every, threads):
    """Per-segment statistics in ascending order; deterministic in ``threads``."""
    primes = primes_up_to(math.isqrt(x))
    segs = _segments(x)
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(segs) <= 1:
        offset = 0
        for lo, hi in segs:
            s = _segment_scan((lo, hi, primes, offset, every))
            offset += s["sum"]
            yield s
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        sums = list(pool.map(_segment_sum, [(lo, hi, primes) for lo, hi in segs]))
        offsets = np.concatenate([[0], np.cumsum(sums[:-1], dtype=np.int64)])
        jobs = [(lo, hi, primes, int(off), every) for (lo, hi), off in zip(segs, offsets)]
        yield from pool.map(_segment_scan, jobs)


def _check_x(x, x_max):
    x = int(x)
    if x < 1:
        raise RangeError(f"x must be >= 1, got {x}")
    if x > x_max:
        raise RangeError(f"x = {x} exceeds the configured maximum {x_max}")
    return x


def mertens(x, *, x_max=DEFAULT_MAX, threads=1):
    """Exact ``M(x) = sum_{n <= x} mu(n)``."""
    x = _check_x(x, x_max)
    m = sum(s["sum"] for s in _scan(x, 0, threads))
    return MertensCheckpoint(x, m)


def iter_checkpoints(x, every=CHECKPOINT_EVERY, *, x_max=DEFAULT_MAX, threads=1):
    """Yield ``M`` at every multiple of ``every`` up to ``x``, then at ``x``."""
    x = _check_x(x, x_max)
    last, total = None, 0
    for s in _scan(x, every, threads):
        for cx, cm in s["checkpoints"]:
            last = cx
            yield MertensCheckpoint(cx, cm)
        total += s["sum"]
    if last != x:
        yield MertensCheckpoint(x, total)


def sieve_report(x_max, every=CHECKPOINT_EVERY, *, limit=DEFAULT_MAX, threads=1):
    """One pass to ``x_max``: the checkpoint list and the small-range bound report."""
    x_max = _check_x(x_max, limit)
    small, ratio, ok, sqfree, total = (0, 1), (0.0, 0), True, 0, 0
    points = []
    for s in _scan(x_max, every, threads):
        points += [MertensCheckpoint(cx, cm) for cx, cm in s.get("checkpoints", ())]
        total += s["sum"]
        sqfree += s["squarefree"]
        if "small" in s and s["small"][0] > small[0]:
            small = s["small"]
        if "ratio" in s:
            r, at, seg_ok = s["ratio"]
            ok = ok and seg_ok
            if r > ratio[0]:
                ratio = (r, at)
    if every and (not points or points[-1].x != x_max):
        points.append(MertensCheckpoint(x_max, total))
    report = SmallBoundsReport(
        x_max=x_max,
        max_abs_small=small[0],
        argmax_small=small[1],
        max_ratio=ratio[0],
        argmax_ratio=ratio[1],
        pass_small=small[0] <= C.SMALL_X_BOUND,
        pass_ratio=ok,
        squarefree_count=sqfree,
    )
    return points, report


def verify_small_bounds(x_max, *, limit=DEFAULT_MAX, threads=1):
    """Check ``|M(x)| <= 4`` on ``[1, 32]`` and ``|M(x)| <= 0.571 sqrt(x)`` on ``[33, x_max]``."""
    return sieve_report(x_max, 0, limit=limit, threads=threads)[1]
