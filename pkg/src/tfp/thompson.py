"""Thompson metric on the positive definite cone.

The metric is d(A, B) = max(log W(A/B), log W(B/A)) where the order-ratio
functional W(A/B) is the largest eigenvalue of B^{-1/2} A B^{-1/2}.  Both
ratios are computed independently through one code path; at the dimensions
this package targets the extra eigensolve is irrelevant next to clarity.
"""

from __future__ import annotations

import math

import numpy as np

from . import hpd_core
from .errors import DimensionMismatch, NotPositiveDefinite

# Distances below this are reported as exact equality by the test oracles.
ZERO_TOL = 1e-10


def w_ratio(a, b) -> float:
    """The ratio functional W(A/B) = lambda_max(B^{-1/2} A B^{-1/2}).

    Equals inf{delta > 0 : A <= delta * B} for positive definite A and B.
    """
    a_arr = hpd_core.require_hermitian(a, "w_ratio numerator")
    b_arr = hpd_core.require_hermitian(b, "w_ratio denominator")
    if a_arr.shape != b_arr.shape:
        raise DimensionMismatch(f"w_ratio shapes differ: {a_arr.shape} vs {b_arr.shape}")
    b_inv_half = hpd_core.matrix_power(b_arr, -0.5)
    dec = hpd_core.eig_hermitian(hpd_core.congruence(b_inv_half, a_arr))
    top = float(dec.eigenvalues[-1])
    if dec.eigenvalues[0] <= hpd_core.pd_floor(dec.eigenvalues):
        raise NotPositiveDefinite("w_ratio numerator is not positive definite")
    return top


def distance(a, b) -> float:
    """Thompson distance between two positive definite matrices."""
    return max(math.log(w_ratio(a, b)), math.log(w_ratio(b, a)), 0.0)


def distance_to_identity(a) -> float:
    """d(A, I), computed directly as max(|log lambda_i(A)|).

    One eigendecomposition instead of the four the generic path needs;
    the ball-membership checks lean on this heavily.
    """
    dec = hpd_core.eig_hermitian(a)
    lam = dec.eigenvalues
    if lam[0] <= hpd_core.pd_floor(lam):
        raise NotPositiveDefinite("distance_to_identity requires a positive definite input")
    return float(np.abs(np.log(lam)).max())
