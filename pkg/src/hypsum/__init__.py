"""Exact evaluation and verification of terminating hypergeometric sums.

Covers the Knuth / Reed-Dawson and Riordan alternating binomial sums, their
generalization to an arbitrary shift ``i``, Gauss's second summation theorem
and the closed forms for ``2F1(-2n or -2n-1, alpha; 2alpha+i; 2)``.
"""

from hypsum.exact import BigRational, HalfInt, PiVal, binomial, pochhammer, rgamma_half
from hypsum.hypergeom import EvalMode, SeriesSpec, gauss_second, hyp2f1_terminating, master_even, master_odd
from hypsum.identities import Grid, Identity, Parity, corollary_rhs, knuth_lhs, theorem_rhs, verify

__version__ = "0.1.0"

__all__ = [
    "BigRational",
    "EvalMode",
    "Grid",
    "HalfInt",
    "Identity",
    "Parity",
    "PiVal",
    "SeriesSpec",
    "binomial",
    "corollary_rhs",
    "gauss_second",
    "hyp2f1_terminating",
    "knuth_lhs",
    "master_even",
    "master_odd",
    "pochhammer",
    "rgamma_half",
    "theorem_rhs",
    "verify",
]
