import random

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpc, mpf

from explicit_mertens import constants as C, reciprocal
from explicit_mertens.errors import PoleError, PrecisionError, RangeError
from explicit_mertens.zeta_numerics import (
    EmParameters, derivative_sup_bound, i3_i5_constant, i3_i5_integrand, i4_constant, i4_integrand,
    i4_prefactor, zeta, zeta_derivatives, zeta_prime_critical)

# zeta(3/2) from mpmath.zeta at 60 digits, frozen
ZETA_3_2 = "2.61237534868548834334856756792407163057080065240006340757333"
# first zero and zeta' there, from mpmath.zetazero(1) and mpmath.zeta(rho, derivative=1) at 40 digits
GAMMA1_TRUE = "14.13472514173469379045725198356247027078"
ZETA_PRIME_RHO1 = ("0.7832965118670309286496572092390650747961", "0.1246998297481710894099284915089053728433")


def test_zeta_at_two():
    with mpmath.workprec(C.WORKPREC):
        assert zeta(2).contains(mpmath.pi ** 2 / 6)


def test_zeta_at_zero():
    with mpmath.workprec(C.WORKPREC):
        assert zeta(0).contains(mpf(-1) / 2)


def test_zeta_at_three_halves():
    enc = zeta(mpf(3) / 2)
    with mpmath.workprec(C.WORKPREC):
        assert abs(enc.value - mpf(ZETA_3_2)) <= enc.radius + mpf("1e-37")
        assert enc.radius <= mpf("1e-20")


def test_pole_and_domain():
    with pytest.raises(PoleError):
        zeta(1)
    with pytest.raises(RangeError):
        zeta(mpc(5, 1))
    with pytest.raises(RangeError):
        zeta(mpc(0.5, 2e5))


def test_unreachable_radius():
    with pytest.raises(PrecisionError):
        zeta(mpc(0.5, 100), target_radius="1e-60")


def test_em_parameters_validation():
    with pytest.raises(ValueError):
        EmParameters(1, 12)
    with pytest.raises(ValueError):
        EmParameters(32, 0)


sigmas = st.floats(min_value=-1, max_value=4, allow_nan=False)
heights = st.floats(min_value=-1000, max_value=1000, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(sigmas, heights)
def test_enclosure_soundness_against_doubled_precision(sigma, t):
    s = mpc(sigma, t)
    if abs(s - 1) < 1e-3:
        return
    enc = zeta(s, "1e-18")
    with mpmath.workprec(2 * C.WORKPREC):
        oracle = mpmath.zeta(s)
        assert abs(oracle - enc.value) <= enc.radius


@settings(max_examples=30, deadline=None)
@given(sigmas, st.floats(min_value=1, max_value=1000))
def test_conjugate_moduli_agree(sigma, t):
    a = zeta(mpc(sigma, t), "1e-18")
    b = zeta(mpc(sigma, -t), "1e-18")
    with mpmath.workprec(C.WORKPREC):
        assert abs(a.value) == abs(b.value)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-0.5, max_value=3), st.floats(min_value=5, max_value=500))
def test_derivatives_against_mpmath(sigma, t):
    s = mpc(sigma, t)
    encs = zeta_derivatives(s, order=2, target_radius="1e-15")
    with mpmath.workprec(2 * C.WORKPREC):
        for j, enc in enumerate(encs):
            assert abs(mpmath.zeta(s, derivative=j) - enc.value) <= enc.radius


def test_zeta_prime_at_first_zero():
    enc = zeta_prime_critical("14.134725142")
    with mpmath.workprec(C.WORKPREC):
        true = mpc(*ZETA_PRIME_RHO1)
        assert abs(true - enc.value) <= enc.radius
        assert abs(abs(enc.value) - mpf("0.79316")) < mpf("1e-5")
        assert abs(mpf(GAMMA1_TRUE) - mpf("14.134725142")) < mpf("1e-9")


def test_zeta_prime_conjugate_symmetry():
    g = mpf("21.022039639")
    up = zeta_derivatives(mpc(0.5, g), order=1, target_radius="1e-20")[1]
    down = zeta_derivatives(mpc(0.5, -g), order=1, target_radius="1e-20")[1]
    with mpmath.workprec(C.WORKPREC):
        assert abs(up.value - mpmath.conj(down.value)) <= up.radius + down.radius


def test_zeta_prime_against_central_difference():
    with mpmath.workprec(C.WORKPREC):
        g, h = mpf("21.022039639"), mpf("1e-6")
        s = mpc(mpf(1) / 2, g)
        plus = zeta(s + mpc(0, h), "1e-30")
        minus = zeta(s - mpc(0, h), "1e-30")
        fd = (plus.value - minus.value) / mpc(0, 2 * h)
        # Taylor remainder of the symmetric quotient: h^2/6 * sup |zeta'''|
        fd_radius = (plus.radius + minus.radius) / (2 * h) + h ** 2 / 6 * derivative_sup_bound(s, 3, h)
        enc = zeta_prime_critical(g, target_radius="1e-20", ordinate_error=0)
        assert abs(fd - enc.value) <= fd_radius + enc.radius


def test_zeta_prime_range():
    with pytest.raises(RangeError):
        zeta_prime_critical(4000)
    with pytest.raises(RangeError):
        zeta_prime_critical(-1)


def test_table_ordinates_are_zeros(zeros_to_H):
    sample = zeros_to_H[::27]
    for z in sample:
        enc = zeta(mpc(mpf(1) / 2, z.gamma), "1e-12")
        assert enc.abs_upper() <= mpf("1e-6"), z.gamma


@pytest.mark.slow
def test_every_table_ordinate_is_a_zero(zeros_to_H):
    for z in zeros_to_H:
        enc = zeta(mpc(mpf(1) / 2, z.gamma), "1e-12")
        assert enc.abs_upper() <= mpf("1e-6"), z.gamma


def _envelope_check(n, t_hi, seed):
    rng = random.Random(seed)
    A, B = reciprocal.a_b_omega("0.5")
    with mpmath.workprec(C.WORKPREC):
        for _ in range(n):
            t = mpf(rng.uniform(1e3, t_hi))
            lo = reciprocal.sigma_t("0.5", t)
            sigma = lo + (3 - lo) * mpf(rng.random())
            enc = zeta(mpc(sigma, t), "1e-10")
            assert enc.abs_upper() <= A * mpmath.log(t) ** B


def test_envelope_consistency_quick():
    _envelope_check(10, 1e4, seed=1)


@pytest.mark.slow
def test_envelope_consistency_full():
    _envelope_check(100, 1e5, seed=2)


def test_i4_integrand_at_zero():
    with mpmath.workprec(C.WORKPREC):
        assert abs(i4_integrand(mpf(0)) - 3 * mpmath.pi) < mpf("1e-35")


def test_i4_constant_against_oracle():
    enc = i4_constant()
    with mpmath.workprec(C.WORKPREC):
        H = C.H()
        oracle = 2 * i4_prefactor() * mpmath.quad(i4_integrand, [0, 1, 10, 100, 1000, H])
        assert abs(oracle - enc.value) <= enc.radius + mpf("1e-20")
        assert enc.upper() <= mpf(C.I4_BOUND)
        assert mpf(C.I4_BOUND) - enc.upper() > 0


def test_i4_refinement_consistency():
    coarse = i4_constant("1e-7")
    fine = i4_constant("5e-8")
    with mpmath.workprec(C.WORKPREC):
        assert abs(coarse.value - fine.value) <= coarse.radius + fine.radius


def test_i3_i5_integrand_positive():
    for y in ("-0.5", "0", "0.25", "1"):
        assert i3_i5_integrand(mpf(y)).lower() > 0


def test_i3_i5_constant():
    enc = i3_i5_constant()
    with mpmath.workprec(C.WORKPREC):
        H = C.H()
        mpmath.mp.dps = 30
        oracle = mpmath.quad(lambda y: 1 / (mpmath.sqrt(y * y + H * H) * abs(mpmath.zeta(mpc(y, H)))),
                             [-0.5, 0, 0.5, 1]) / mpmath.pi
    assert abs(oracle - enc.value) < mpf("1e-16")
    assert enc.upper() <= mpf(C.I35_BOUND)
