import mpmath
import pytest
from mpmath import mpf

from explicit_mertens import constants as C, short_sum
from explicit_mertens.errors import PrecisionError
from explicit_mertens.zeros_db import ZeroOrdinate

# 2 / (sqrt(1/4 + g^2) |zeta'(1/2 + i g)|) at the first zero, with zeta' from
# mpmath.zeta(zetazero(1), derivative=1) at 40 digits (modulus 0.79316043...)
FIRST_TERM = "0.178283042"


def test_single_zero(zeros_to_H):
    r = short_sum.short_sum(zeros_to_H[:1])
    assert abs(r.value.value - mpf(FIRST_TERM)) < mpf("1e-9")
    assert r.zero_count == 1
    assert r.value.radius > 0
    assert r.upper >= r.sum_mid


def test_prefix_monotone(zeros_to_H):
    prev = mpf(0)
    for k in range(1, 40):
        r = short_sum.short_sum(zeros_to_H[:k])
        assert r.upper > prev
        prev = r.upper


def test_parallel_matches_serial(zeros_to_H):
    zs = zeros_to_H[:300]
    a = short_sum.short_sum(zs, threads=1)
    b = short_sum.short_sum(zs, threads=3)
    assert a.value.value == b.value.value and a.value.radius == b.value.radius
    assert a.sum_mid == b.sum_mid


def test_doubled_precision_stays_below_bound(zeros_to_H):
    zs = zeros_to_H[:50]
    r = short_sum.short_sum(zs)
    with mpmath.workdps(60):
        total = mpf(0)
        for z in zs:
            d = mpmath.zeta(mpmath.mpc(0.5, z.gamma), derivative=1)
            total += 2 / (mpmath.sqrt(mpf(1) / 4 + z.gamma ** 2) * abs(d))
        assert total <= r.upper


def test_ambiguous_denominator_rejected():
    # with a huge ordinate uncertainty the zeta' enclosure cannot be separated from zero
    z = ZeroOrdinate(mpf("14.134725142"), 0)
    with pytest.raises(PrecisionError, match="14.134725142"):
        short_sum.short_sum([z])


@pytest.mark.slow
def test_full_table(zeros_to_H):
    r = short_sum.short_sum(zeros_to_H)
    assert r.zero_count == len(zeros_to_H)
    assert r.upper <= mpf(C.SHORT_SUM_BOUND)
    assert r.tail_fraction < mpf("0.15")
    assert mpmath.nstr(r.max_term_gamma, 12) == "14.134725142"
