"""Explicit bounds for the Mertens function.

Exact sieving of M(x), a certified sum over zeta zeros, explicit bounds for
1/zeta, the classical and Korobov-Vinogradov constants, and the piecewise
best bound with its crossover search.
"""
from .enclosure import Enclosure, pairwise_sum
from .errors import (ConstraintError, CrossoverNotFound, EmptyTableError, ParseError, PoleError,
                     PrecisionError, RangeError, TableLookupError)
from .exact_mertens import mertens, mobius_range, verify_small_bounds
from .zeros_db import count_check, load_zeros
from .zeta_numerics import i3_i5_constant, i4_constant, zeta, zeta_prime_critical
from .reciprocal import a_b_omega, optimize_r3, r1_lookup, r3_formula, ReciprocalParams
from .bounds import c1_c2, c3_c4, nu1, lemma41_rhs, lemma42_rhs
from .piecewise import Branch, best_bound, find_crossover, range_assertions, verify_u_majorizes

__version__ = "0.1.0"
