"""
The piecewise best bound
========================

Which explicit bound for |M(x)| is sharpest depends on x. The branches
hand over at computed crossover points.
"""

import mpmath
from explicit_mertens import piecewise

for seg in piecewise.segments():
    print(f"{seg.branch.value:>11}  log x in [{mpmath.nstr(seg.log_x_lo, 8)}, {mpmath.nstr(seg.log_x_hi, 8)})")

for L in ("3", "30", "40", "100", "5000", "1e17"):
    b = piecewise.best_bound(log_x=mpmath.mpf(L))
    print(f"log x = {L:>5}: log10 |M| bound = {mpmath.nstr(b.log_value / mpmath.log(10), 8)}"
          f" ({b.branch.value})")

# the breakpoints are the first grid points where the next branch wins
print(piecewise.find_crossover("Ramare", "Classical", "363.11"))

# u(x) majorises c1 on its range
rep = piecewise.verify_u_majorizes(1000)
print("u majorises c1:", rep["pass"], "min slack", mpmath.nstr(rep["min_slack"], 4))
