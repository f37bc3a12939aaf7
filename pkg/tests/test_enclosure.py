import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from explicit_mertens import constants as C
from explicit_mertens.enclosure import Enclosure, pairwise_sum
from explicit_mertens.errors import PrecisionError

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
radius = st.floats(min_value=0, max_value=1e-3)
offset = st.floats(min_value=-1, max_value=1)


def _sample(mid, rad, u):
    """A point inside the enclosure ``mid +/- rad`` (exact rational arithmetic)."""
    return mpf(mid) + mpf(rad) * mpf(u)


@settings(max_examples=200, deadline=None)
@given(finite, radius, finite, radius, offset, offset, st.sampled_from("+-*/"))
def test_arithmetic_contains_every_member(a, ra, b, rb, ua, ub, op):
    with mpmath.workprec(C.WORKPREC):
        A, B = Enclosure(mpf(a), mpf(ra)), Enclosure(mpf(b), mpf(rb))
        if op == "/" and abs(b) <= rb:
            with pytest.raises(PrecisionError):
                A / B
            return
        out = {"+": A + B, "-": A - B, "*": A * B, "/": A / B if op == "/" else None}[op]
        x, y = _sample(a, ra, ua), _sample(b, rb, ub)
    with mpmath.workprec(4 * C.WORKPREC):
        exact = {"+": x + y, "-": x - y, "*": x * y, "/": x / y if op == "/" else None}[op]
        assert abs(exact - out.value) <= out.radius


@settings(max_examples=100, deadline=None)
@given(finite, radius, finite, radius)
def test_radius_never_shrinks(a, ra, b, rb):
    with mpmath.workprec(C.WORKPREC):
        A, B = Enclosure(mpf(a), mpf(ra)), Enclosure(mpf(b), mpf(rb))
        for out in (A + B, A - B, A * B, abs(A), -A):
            assert out.radius >= 0
        assert (A + B).radius >= max(ra, rb)


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        Enclosure(mpf(1), mpf(-1))


def test_require_nonzero():
    Enclosure(mpf(1), mpf("0.5")).require_nonzero()
    with pytest.raises(PrecisionError):
        Enclosure(mpf(1), mpf(2)).require_nonzero()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(min_value=-1e3, max_value=1e3, allow_nan=False), min_size=1, max_size=300),
       st.integers(min_value=1, max_value=64))
def test_pairwise_sum_is_exactly_reproducible(values, chunk):
    with mpmath.workprec(C.WORKPREC):
        items = [Enclosure(mpf(v), mpf(0)) for v in values]
        serial = pairwise_sum(items)
        # regroup into chunks the way a worker pool would hand them back
        chunks = [items[i:i + chunk] for i in range(0, len(items), chunk)]
        again = pairwise_sum([x for c in chunks for x in c])
        assert serial.value == again.value and serial.radius == again.radius
        assert abs(serial.value - mpmath.fsum(mpf(v) for v in values)) <= serial.radius


def test_pairwise_sum_empty():
    with pytest.raises(ValueError):
        pairwise_sum([])
