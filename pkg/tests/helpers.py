"""Seeded random matrix generators shared by the test modules."""

import numpy as np

from tfp import hpd_core


def random_hermitian(rng, n, scale=3.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return hpd_core.symmetrize(scale * z)


def random_pd(rng, n, radius=1.5):
    return hpd_core.random_pd_in_ball(n, radius, rng)


def random_nonsingular(rng, n, max_cond=1e6):
    while True:
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(z) < max_cond:
            return z
