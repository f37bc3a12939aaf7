"""
Zeta zeros and the short sum
============================

Load the ordinates below H, compare their number with the
Riemann-von Mangoldt main term, and bound the sum of
1 / (|rho| |zeta'(rho)|) from above.
"""

import mpmath
from explicit_mertens import constants as C, short_sum, zeros_db
from explicit_mertens.zeta_numerics import zeta_prime_critical

zeros = zeros_db.load_to_H()
print("zeros below H:", len(zeros))
print("main term:   ", mpmath.nstr(zeros_db.riemann_von_mangoldt(C.H()), 8))

# zeta' at the first zero, as an enclosure
d = zeta_prime_critical(zeros[0].gamma)
print("|zeta'(rho_1)| =", mpmath.nstr(abs(d.value), 10), "+-", mpmath.nstr(d.radius, 3))

# the first terms dominate; the full sum takes about a minute
head = short_sum.short_sum(zeros[:200])
print("first 200 zeros, upper bound:", mpmath.nstr(head.upper, 8))

full = short_sum.short_sum(zeros, threads=4)
print("all zeros below H, upper bound:", mpmath.nstr(full.upper, 8), "<= 2.4:", full.passes())
print("share from gamma > H/2:", mpmath.nstr(full.tail_fraction, 4))
