"""
Exact values of the Mertens function
====================================

The segmented sieve gives mu(n) exactly, so M(x) and the small-range
bounds can be checked with integer arithmetic only.
"""

import numpy as np
from explicit_mertens import exact_mertens

# mu on a short window, and the running sum
seg = exact_mertens.mobius_range(1, 30)
print("mu(1..30) =", seg.values.tolist())
print("M(1..30)  =", np.cumsum(seg.values).tolist())

# a window far out: roughly 6/pi^2 of the integers are squarefree
far = exact_mertens.mobius_range(10**9 - 10**5, 10**9)
print("squarefree share near 1e9:", np.count_nonzero(far.values) / far.values.size)

# checkpoints of M(x)
for p in exact_mertens.iter_checkpoints(10**6, every=2 * 10**5):
    print(f"M({p.x}) = {p.m}")

# |M(x)| <= 4 up to 32, then |M(x)| <= 0.571 sqrt(x)
rep = exact_mertens.verify_small_bounds(10**7)
print("max |M| on [1, 32]:", rep.max_abs_small, "at", rep.argmax_small)
print(f"max |M|/sqrt(x) on [33, 1e7]: {rep.max_ratio:.5f} at x = {rep.argmax_ratio}")
print("holds:", rep.passed)
