"""Engine tests on scalar toy spaces, where brute-force simulation is the oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfp import psi_family
from tfp.errors import MapDomainError, MaxIterationsExceeded
from tfp.fixpoint_engine import (
    MetricSpace,
    StoppingRule,
    error_bound,
    iterate_pair,
    verify_contraction,
)

REAL_LINE = MetricSpace(distance=lambda x, y: abs(x - y))


class TestErrorBound:
    def test_degenerate_alpha(self):
        assert error_bound(0.0, 0.7, 1) == pytest.approx(0.7)
        assert error_bound(0.0, 0.7, 2) == 0.0
        assert error_bound(0.0, 0.7, 5) == 0.0

    def test_direct_formula(self):
        assert error_bound(0.5, 0.5, 3) == pytest.approx(0.25)

    @settings(max_examples=60, deadline=None)
    @given(
        alpha=st.floats(min_value=1e-6, max_value=0.99),
        d01=st.floats(min_value=0.0, max_value=1e6),
        n=st.integers(min_value=1, max_value=50),
    )
    def test_step_identity(self, alpha, d01, n):
        assert error_bound(alpha, d01, n + 1) == pytest.approx(alpha * error_bound(alpha, d01, n))

    def test_validation(self):
        with pytest.raises(ValueError):
            error_bound(1.0, 1.0, 1)
        with pytest.raises(ValueError):
            error_bound(0.5, -1.0, 1)
        with pytest.raises(ValueError):
            error_bound(0.5, 1.0, 0)


class TestIteratePair:
    def test_constant_maps(self):
        trace = iterate_pair(REAL_LINE, lambda x: 3.0, lambda x: 3.0, 0.0, 10.0)
        assert trace.points[1] == 3.0
        assert trace.points[-1] == 3.0
        assert trace.stop_reason == "gap_tol"
        assert trace.gaps[-1] == 0.0

    def test_halving_maps_geometric(self):
        trace = iterate_pair(REAL_LINE, lambda x: x / 2, lambda x: x / 2, 0.5, 1.0)
        for k, point in enumerate(trace.points):
            assert point == pytest.approx(2.0**-k)
        # a-priori bound: d(u_n, 0) <= 2**-(n-1)
        for n in range(1, len(trace.points)):
            assert abs(trace.points[n]) <= error_bound(0.5, trace.gaps[0], n) + 1e-15
            assert trace.bounds[n - 1] == pytest.approx(2.0 ** -(n - 1))

    def test_alternation_order(self):
        calls = []
        trace = iterate_pair(
            REAL_LINE,
            lambda x: calls.append("t1") or x / 4,
            lambda x: calls.append("t2") or x / 5,
            0.5,
            1.0,
            StoppingRule(gap_tol=1e-4),
        )
        assert calls[:4] == ["t1", "t2", "t1", "t2"]
        assert trace.points[1] == 0.25

    def test_matches_brute_force_simulation(self):
        trace = iterate_pair(REAL_LINE, lambda x: x / 4, lambda x: x / 5, 7 / 12, 1.0)
        value = 1.0
        for k in range(1, len(trace.points)):
            value = value / 4 if k % 2 == 1 else value / 5
            assert trace.points[k] == pytest.approx(value, abs=1e-14)
        assert trace.points[-1] == pytest.approx(0.0, abs=1e-12)

    def test_trace_shape_invariants(self):
        trace = iterate_pair(REAL_LINE, lambda x: x / 3, lambda x: x / 2, 0.5, 8.0)
        assert len(trace.gaps) == len(trace.points) - 1
        assert len(trace.bounds) == len(trace.gaps)
        assert all(b2 <= b1 for b1, b2 in zip(trace.bounds, trace.bounds[1:]))

    def test_gap_contraction_with_certified_alpha(self):
        alpha = psi_family.alpha_effective(psi_family.linear(0.0, 1 / 3, 1 / 4))
        trace = iterate_pair(REAL_LINE, lambda x: x / 4, lambda x: x / 5, alpha, 1.0)
        for g1, g2 in zip(trace.gaps, trace.gaps[1:]):
            assert g2 <= alpha * g1 + 1e-12

    def test_max_iterations_carries_partial_trace(self):
        with pytest.raises(MaxIterationsExceeded) as excinfo:
            iterate_pair(
                REAL_LINE,
                lambda x: x * 0.99,
                lambda x: x * 0.99,
                0.99,
                1.0,
                StoppingRule(gap_tol=1e-12, max_iter=5),
            )
        trace = excinfo.value.trace
        assert trace.stop_reason == "max_iter"
        assert len(trace.points) == 6

    def test_bound_tol_stop(self):
        trace = iterate_pair(
            REAL_LINE,
            lambda x: x / 2,
            lambda x: x / 2,
            0.5,
            1.0,
            StoppingRule(gap_tol=0.0, max_iter=200, bound_tol=1e-3),
        )
        assert trace.stop_reason == "bound_tol"
        assert trace.bounds[-1] <= 1e-3

    def test_map_domain_error_propagates(self):
        def rejecting(x):
            raise MapDomainError("outside domain")

        with pytest.raises(MapDomainError):
            iterate_pair(REAL_LINE, rejecting, lambda x: x, 0.5, 1.0)

    def test_alpha_validated(self):
        with pytest.raises(ValueError):
            iterate_pair(REAL_LINE, lambda x: x, lambda x: x, 1.0, 1.0)

    def test_order_identity_on_toy(self):
        fwd = iterate_pair(REAL_LINE, lambda x: x / 4, lambda x: x / 5, 0.6, 1.0)
        rev = iterate_pair(REAL_LINE, lambda x: x / 5, lambda x: x / 4, 0.6, 1.0)
        assert abs(fwd.points[-1] - rev.points[-1]) <= 1e-9


class TestVerifyContraction:
    def test_constant_maps_pass_any_psi(self):
        pairs = [(float(x), float(y)) for x in range(3) for y in range(3)]
        report = verify_contraction(
            REAL_LINE, lambda x: 2.0, lambda x: 2.0, psi_family.scaled_first(0.0), pairs
        )
        assert report.passed
        assert report.checked == 9

    def test_scalar_toy_passes_on_seeded_pairs(self):
        # |x/4 - y/5| <= (1/3)|x - x/4| + (1/4)|y - y/5| = x/4 + y/5 for x, y >= 0,
        # and by the triangle inequality for arbitrary signs
        rng = np.random.default_rng(44)
        pairs = [tuple(rng.uniform(-10, 10, 2)) for _ in range(1000)]
        report = verify_contraction(
            REAL_LINE,
            lambda x: x / 4,
            lambda x: x / 5,
            psi_family.linear(0.0, 1 / 3, 1 / 4),
            pairs,
        )
        assert report.passed

    def test_expanding_map_fails_with_witness(self):
        report = verify_contraction(
            REAL_LINE,
            lambda x: 2 * x,
            lambda x: x,
            psi_family.scaled_first(0.9),
            [(1.0, 1.0), (0.5, 0.5)],
        )
        assert not report.passed
        x, y = report.worst_pair
        # recompute both sides at the witness to confirm the failure is genuine
        lhs = abs(2 * x - y)
        rhs = 0.9 * abs(x - y)
        assert lhs > rhs
        assert report.worst_margin == pytest.approx(lhs - rhs)

    def test_empty_sample_rejected(self):
        with pytest.raises(ValueError):
            verify_contraction(REAL_LINE, lambda x: x, lambda x: x, psi_family.scaled_first(0.5), [])
