import mpmath
from mpmath import mpf

from explicit_mertens import constants as C
from explicit_mertens.quadrature import integrate


def test_polynomial_exact():
    with mpmath.workprec(C.WORKPREC):
        enc = integrate(lambda t: t ** 7 - 3 * t ** 2, mpf(0), mpf(2), mpf("1e-20"))
        assert enc.contains(mpf(2) ** 8 / 8 - 8)


def test_against_mpmath_quad():
    with mpmath.workprec(C.WORKPREC):
        f = lambda t: 1 / (mpf(1) / 4 + t * t)
        enc = integrate(f, mpf(0), mpf(50), mpf("1e-15"))
        oracle = 2 * mpmath.atan(100)
        assert abs(enc.value - oracle) <= enc.radius + mpf("1e-25")
        assert enc.radius <= mpf("1e-15")
