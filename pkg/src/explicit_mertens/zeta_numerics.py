"""Euler--Maclaurin evaluation of zeta and its derivatives with error radii.

For ``s = sigma + it`` and truncation parameters ``N`` (partial-sum length)
and ``K`` (number of Bernoulli corrections),

    zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
              + sum_{k=1}^{K} B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1} + R_K(s)

with Backlund's remainder bound

    |R_K(s)| <= |s+2K+1| / (sigma+2K+1) * |T_{K+1}(s)|,

valid for ``sigma > -2K-1``, where ``T_{K+1}`` is the first omitted term.
Derivatives are obtained by differentiating every term analytically
(truncated Taylor jets in ``s``); the remainder of the ``j``-th Taylor
coefficient is bounded by Cauchy's estimate on a circle of radius
``1/log N`` around ``s``.

All arithmetic runs at :data:`~explicit_mertens.constants.WORKPREC` bits.
"""
from dataclasses import dataclass
from math import ceil, factorial

import mpmath
from mpmath import mpc, mpf

from . import constants as C
from .enclosure import Enclosure
from .errors import PoleError, PrecisionError, RangeError
from .quadrature import integrate

SIGMA_MIN, SIGMA_MAX = -1, 4
T_MAX = 10**5
K_DEFAULT = 12
K_MAX = 96
N_MIN = 32


@dataclass(frozen=True)
class EmParameters:
    """Truncation of the Euler--Maclaurin formula."""

    n_terms: int
    k_bernoulli: int

    def __post_init__(self):
        if self.n_terms < 2 or self.k_bernoulli < 1:
            raise ValueError("need n_terms >= 2 and k_bernoulli >= 1")


def default_parameters(s):
    return EmParameters(max(ceil(abs(mpmath.im(s)) / 2), N_MIN), K_DEFAULT)


# -- cached Dirichlet tables --------------------------------------------------

_LOGS = {}
_WEIGHTS = {}


def _logs(n_max, prec):
    table = _LOGS.setdefault(prec, [mpf(0), mpf(0)])
    if len(table) <= n_max:
        with mpmath.workprec(prec):
            table.extend(mpmath.log(n) for n in range(len(table), n_max + 1))
    return table


def _weights(sigma, order, n_max, prec):
    """``w[j][n] = n^-sigma (-log n)^j / j!`` for ``j <= order``, ``1 <= n <= n_max``."""
    key = (mpmath.nstr(sigma, 40), order, prec)
    logs = _logs(n_max, prec)
    table = _WEIGHTS.setdefault(key, [[mpf(0)] for _ in range(order + 1)])
    start = len(table[0])
    if start <= n_max:
        with mpmath.workprec(prec):
            for n in range(start, n_max + 1):
                ln = logs[n]
                base = mpmath.power(n, -sigma)
                term = base
                for j in range(order + 1):
                    if j:
                        term = -term * ln / j
                    table[j].append(term)
    return table


def clear_caches():
    _LOGS.clear()
    _WEIGHTS.clear()


# -- jets ---------------------------------------------------------------------

def _jet_mul(a, b):
    m = len(a)
    return [mpmath.fsum(a[i] * b[k - i] for i in range(k + 1)) for k in range(m)]


def _jet_npow(N, logN, s, shift, m):
    """Taylor coefficients of ``N^{shift - (s+e)}`` in ``e``."""
    base = mpmath.exp((shift - s) * logN)
    out, term = [], base
    for j in range(m):
        if j:
            term = -term * logN / j
        out.append(term)
    return out


def _jet_inv_linear(a, m):
    """Taylor coefficients of ``1/(a + e)``."""
    return [(-1) ** j / a ** (j + 1) for j in range(m)]


# -- bounds -------------------------------------------------------------------

def _bernoulli_ratio(k):
    """``|B_{2k}| / (2k)!`` as an mpf."""
    return abs(mpmath.bernoulli(2 * k)) / mpmath.factorial(2 * k)


def _backlund(s, N, K, rho=0):
    """Upper bound on ``max |R_K(z)|`` over ``|z - s| <= rho``."""
    sigma = mpmath.re(s) - rho
    if sigma + 2 * K + 1 <= 0:
        raise RangeError("Euler-Maclaurin remainder bound needs sigma > -2K-1")
    prod = mpf(1)
    for i in range(2 * K + 1):
        prod *= abs(s + i) + rho
    lead = (abs(s + 2 * K + 1) + rho) / (sigma + 2 * K + 1)
    return lead * _bernoulli_ratio(K + 1) * prod * mpmath.power(N, -sigma - 2 * K - 1)


def _tail_modulus(s, N, K, rho):
    """Upper bound on the modulus of every non-partial-sum piece (including
    the remainder) over ``|z - s| <= rho``."""
    sigma = mpmath.re(s) - rho
    dist = abs(s - 1) - rho
    if dist <= 0:
        raise RangeError("disk around s reaches the pole at 1")
    total = mpmath.power(N, 1 - sigma) / dist + mpmath.power(N, -sigma) / 2
    prod = mpf(1)
    for k in range(1, K + 1):
        if k == 1:
            prod = abs(s) + rho
        else:
            prod *= (abs(s + 2 * k - 3) + rho) * (abs(s + 2 * k - 2) + rho)
        total += _bernoulli_ratio(k) * prod * mpmath.power(N, -sigma - 2 * k + 1)
    return total + _backlund(s, N, K, rho)


def _partial_abs_bound(sigma, N, j, logN):
    """Upper bound on ``sum_{n<N} n^-sigma (log n)^j``."""
    if sigma >= 1:
        mass = 1 + logN if sigma == 1 else 1 + 1 / (sigma - 1)
    elif sigma >= 0:
        mass = 1 + (mpmath.power(N, 1 - sigma) - 1) / (1 - sigma)
    else:
        mass = N * mpmath.power(N, -sigma)
    return mass * logN ** j


def _rounding_bound(s, N, order, logN):
    """Accumulated rounding error of the partial sums (all orders)."""
    eps = mpmath.ldexp(1, -mpmath.mp.prec + 4)
    scale = abs(s) * logN + 4
    sigma = mpmath.re(s)
    return [eps * scale * _partial_abs_bound(sigma, N, j, logN) / factorial(j) + eps
            for j in range(order + 1)]


# -- core evaluation ------------------------------------------------------------

def _check_domain(s):
    sigma, t = mpmath.re(s), mpmath.im(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if not (SIGMA_MIN <= sigma <= SIGMA_MAX) or abs(t) > T_MAX:
        raise RangeError(f"s = {mpmath.nstr(s, 10)} outside -1 <= Re s <= 4, |Im s| <= 1e5")


def _jet(s, order, params):
    """Taylor coefficients ``c_j`` (``f(s+e) = sum c_j e^j``) of the truncated
    formula together with per-coefficient remainder bounds."""
    N, K = params.n_terms, params.k_bernoulli
    m = order + 1
    sigma, t = mpmath.re(s), mpmath.im(s)
    prec = mpmath.mp.prec
    logs = _logs(N, prec)
    logN = logs[N]
    weights = _weights(sigma, order, N - 1, prec)

    cos_list, sin_list = [], []
    for n in range(1, N):
        c, sn = mpmath.cos_sin(t * logs[n])
        cos_list.append(c)
        sin_list.append(sn)
    coeffs = []
    for j in range(m):
        w = weights[j][1:N]
        coeffs.append(mpc(mpmath.fdot(w, cos_list), -mpmath.fdot(w, sin_list)))

    # N^{1-s}/(s-1) + N^{-s}/2
    tail = _jet_mul(_jet_npow(N, logN, s, 1, m), _jet_inv_linear(s - 1, m))
    half = _jet_npow(N, logN, s, 0, m)
    tail = [a + b / 2 for a, b in zip(tail, half)]
    # Bernoulli corrections, rising factorial s(s+1)...(s+2k-2) built incrementally
    rising = [s] + [mpf(1)] + [mpf(0)] * (m - 2) if m > 1 else [s]
    for k in range(1, K + 1):
        if k > 1:
            for i in (2 * k - 3, 2 * k - 2):
                lin = [s + i, mpf(1)] + [mpf(0)] * (m - 2) if m > 1 else [s + i]
                rising = _jet_mul(rising, lin)
        coef = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k)
        npow = _jet_npow(N, logN, s, 1 - 2 * k, m)
        term = _jet_mul(rising, npow)
        tail = [a + coef * b for a, b in zip(tail, term)]
    coeffs = [a + b for a, b in zip(coeffs, tail)]

    bounds = [_backlund(s, N, K)]
    if order:
        r = 1 / logN
        cauchy = _backlund(s, N, K, r)
        bounds += [cauchy / r ** j for j in range(1, m)]
    rounding = _rounding_bound(s, N, order, logN)
    return coeffs, [b + e for b, e in zip(bounds, rounding)]


def _choose_parameters(s, order, target):
    params = default_parameters(s)
    N, K = params.n_terms, params.k_bernoulli
    while True:
        logN = mpmath.log(N)
        b = _backlund(s, N, K, 0 if order == 0 else 1 / logN)
        if order:
            b /= (1 / logN) ** order
            b *= factorial(order)
        if b <= target / 4:
            return EmParameters(N, K)
        if K < K_MAX:
            K = min(2 * K, K_MAX)
        else:
            N *= 2
            if N > 64 * max(abs(mpmath.im(s)), N_MIN):
                raise PrecisionError("Euler-Maclaurin parameters exhausted")


def zeta_derivatives(s, order=1, target_radius="1e-20", params=None):
    """Enclosures of ``zeta^{(j)}(s)`` for ``j = 0..order``."""
    with mpmath.workprec(C.WORKPREC):
        s = mpmath.mpmathify(s)
        _check_domain(s)
        target = mpf(target_radius)
        explicit = params is not None
        if not explicit:
            params = _choose_parameters(s, order, target)
        coeffs, bounds = _jet(s, order, params)
        out = [Enclosure(c * factorial(j), b * factorial(j))
               for j, (c, b) in enumerate(zip(coeffs, bounds))]
        worst = max(e.radius for e in out)
        if not explicit and worst > target:
            raise PrecisionError(
                f"derivative radius {mpmath.nstr(worst, 3)} exceeds target "
                f"{mpmath.nstr(target, 3)} at working precision"
            )
        return out


def zeta(s, target_radius="1e-20"):
    """Enclosure of ``zeta(s)`` for ``-1 <= Re s <= 4``, ``|Im s| <= 1e5``."""
    with mpmath.workprec(C.WORKPREC):
        s = mpmath.mpmathify(s)
        _check_domain(s)
        target = mpf(target_radius)
        params = _choose_parameters(s, 0, target)
        coeffs, bounds = _jet(s, 0, params)
        value = coeffs[0]
        if mpmath.im(s) == 0:
            value = mpmath.re(value)
        enc = Enclosure(value, bounds[0])
        if enc.radius > target:
            raise PrecisionError(
                f"zeta radius {mpmath.nstr(enc.radius, 3)} exceeds target {mpmath.nstr(target, 3)}"
            )
        return enc


def derivative_sup_bound(s, order, rho):
    """Upper bound on ``|zeta^{(order)}(z)|`` for all ``|z - s| <= rho``."""
    with mpmath.workprec(C.WORKPREC):
        s = mpmath.mpmathify(s)
        params = default_parameters(mpc(mpmath.re(s), abs(mpmath.im(s)) + rho))
        N, K = params.n_terms, params.k_bernoulli
        logN = mpmath.log(N)
        r = 1 / logN
        partial = _partial_abs_bound(mpmath.re(s) - rho, N, order, logN)
        tail = _tail_modulus(s, N, K, r + rho)
        return partial + factorial(order) * tail / r ** order


def zeta_prime_critical(gamma, target_radius="1e-15", ordinate_error="1e-9"):
    """Enclosure of ``zeta'(1/2 + i gamma_true)`` where ``gamma_true`` is within
    ``ordinate_error`` of the supplied ordinate.

    The radius adds ``delta * sup |zeta''|`` over the segment
    ``[gamma - delta, gamma + delta]`` on the critical line, with the sup
    bounded by ``|zeta''(1/2 + i gamma)| + delta * sup |zeta'''|``.
    """
    with mpmath.workprec(C.WORKPREC):
        gamma = mpmath.mpmathify(gamma)
        if not 0 < gamma <= C.H():
            raise RangeError(f"gamma = {mpmath.nstr(gamma, 12)} outside (0, H]")
        delta = mpf(ordinate_error)
        s = mpc(mpf(1) / 2, gamma)
        _, d1, d2 = zeta_derivatives(s, order=2, target_radius=target_radius)
        if delta:
            third = derivative_sup_bound(s, 3, delta)
            d1 = d1.widen(delta * (d2.abs_upper() + delta * third))
        return d1


# -- contour constants -------------------------------------------------------

def i4_integrand(t):
    pi = mpmath.pi
    return mpmath.sqrt(9 * pi ** 2 / 16 + pi ** 2 * t ** 2 / 4) / (mpf(1) / 4 + t ** 2)


def i4_prefactor():
    return mpf("0.28861") * mpmath.sqrt(2 ** 5 / mpmath.pi) * mpf(6) / 5


def i4_constant(tol="1e-9"):
    """Enclosure of ``0.28861 (2^5/pi)^{1/2} (6/5) int_{-H}^{H} sqrt(9pi^2/16 + pi^2 t^2/4)/(1/4 + t^2) dt``.

    The published bound on the ``Re s = -1/2`` contour piece is 41.155.
    """
    with mpmath.workprec(C.WORKPREC):
        H = C.H()
        pre = i4_prefactor()
        tol = mpf(tol) / (2 * pre)
        cuts = [mpf(0), mpf(1), mpf(10), mpf(100), mpf(1000), H]
        share = tol / (len(cuts) - 1)
        pieces = [integrate(i4_integrand, a, b, share) for a, b in zip(cuts, cuts[1:])]
        total = pieces[0]
        for p in pieces[1:]:
            total = total + p
        return total * (2 * pre)


def i3_i5_integrand(y, target_radius="1e-22"):
    H = C.H()
    z = zeta(mpc(y, H), target_radius)
    return Enclosure.exact(1) / (abs(z) * mpmath.sqrt(y * y + H * H))


def i3_i5_constant(tol="1e-12"):
    """Enclosure of ``(1/pi) int_{-1/2}^{1} dy / (sqrt(y^2 + H^2) |zeta(y + iH)|)``.

    The published bound on the horizontal contour pieces at height H is
    1.26e-5.
    """
    with mpmath.workprec(C.WORKPREC):
        tol = mpf(tol) * mpmath.pi
        cuts = [mpf(-1) / 2, mpf(0), mpf(1) / 2, mpf(1)]
        share = tol / 3
        total = None
        for a, b in zip(cuts, cuts[1:]):
            piece = integrate(i3_i5_integrand, a, b, share)
            total = piece if total is None else total + piece
        return total / mpmath.pi


def contour_constant_report():
    """Values, radii and slack against the published bounds."""
    i4 = i4_constant()
    i35 = i3_i5_constant()
    rows = []
    for name, enc, bound in (("i4", i4, C.I4_BOUND), ("i3_i5", i35, C.I35_BOUND)):
        upper = enc.value + enc.radius
        rows.append({
            "name": name,
            "value": enc.value,
            "radius": enc.radius,
            "bound": mpf(bound),
            "slack": mpf(bound) - upper,
            "pass": upper <= mpf(bound),
        })
    return rows
