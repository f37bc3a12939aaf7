"""
Constants for the explicit bounds
=================================

The 1/zeta constant R3, the classical pair (c1, c2) and the
Korobov-Vinogradov pair (c3, c4), reproduced from their ingredients.
"""

import mpmath
from explicit_mertens import bounds, constants as C, reciprocal

# R3 at the published parameter rows, then the optimiser
for row in reciprocal.r3_table_rows():
    print(row["W3"], row["log_t0"], mpmath.nstr(row["value"], 8),
          "published", mpmath.nstr(row["published"], 8))

with mpmath.workprec(C.WORKPREC):
    params, value = reciprocal.optimize_r3(C.mp(C.Z3), mpmath.log(C.H_HAT))
print("optimal R3:", mpmath.nstr(value, 8), "at d1 =", mpmath.nstr(params.d1, 5),
      "omega =", mpmath.nstr(params.omega, 5))

# classical constants near the start of their range
k = bounds.c1_c2(C.mp("363.11"))
print("c1, c2 at log x0 = 363.11:", mpmath.nstr(k.c1, 6), mpmath.nstr(k.c2, 6))

# Korobov-Vinogradov constants at log x0 = 1e5
k = bounds.c3_c4(C.mp("1e5"))
print("c3, c4 at log x0 = 1e5:", mpmath.nstr(k.c3, 7), mpmath.nstr(k.c4, 5))

# the whole table, with admissible rounding
for row in bounds.table1_rows():
    cells = [row[n]["rounded"] if row[n] else "-" for n in ("c1", "c2", "c3", "c4")]
    print(row["log_x0"], *cells)
