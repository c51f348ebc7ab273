"""Alternating common-fixed-point iteration for a pair of self-maps.

Given two maps on a complete metric space whose cross-application is a
psi-contraction, the sequence u1 = T1(u0), u2 = T2(u1), u3 = T1(u2), ...
(odd steps through T1, even steps through T2) converges to their unique
common fixed point, with the a-priori error bound

    d(u_n, z) <= alpha**(n-1) / (1 - alpha) * d(u0, u1).

The engine takes alpha as data; it never derives it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Generic, Sequence, TypeVar

from . import psi_family
from .errors import MaxIterationsExceeded

T = TypeVar("T")

STOP_GAP_TOL = "gap_tol"
STOP_BOUND_TOL = "bound_tol"
STOP_MAX_ITER = "max_iter"


@dataclass(frozen=True)
class MetricSpace(Generic[T]):
    """A point type together with its distance function."""

    distance: Callable[[T, T], float]


@dataclass(frozen=True)
class StoppingRule:
    gap_tol: float = 1e-12
    max_iter: int = 500
    bound_tol: float | None = None


@dataclass
class IterationTrace(Generic[T]):
    """Per-step record of an alternating run.

    ``points`` holds u0..uN, ``gaps[k]`` is d(u_k, u_{k+1}) and
    ``bounds[k]`` the a-priori bound for u_{k+1}, so both lists are one
    shorter than ``points``.
    """

    points: list[T] = field(default_factory=list)
    gaps: list[float] = field(default_factory=list)
    bounds: list[float] = field(default_factory=list)
    stop_reason: str = ""

    @property
    def iterations(self) -> int:
        return len(self.gaps)


def error_bound(alpha: float, d01: float, n: int) -> float:
    """A-priori bound alpha**(n-1) * d01 / (1 - alpha) for iterate n >= 1."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    if d01 < 0.0:
        raise ValueError(f"d01 must be nonnegative, got {d01}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    return alpha ** (n - 1) * d01 / (1.0 - alpha)


def iterate_pair(
    space: MetricSpace[T],
    t1: Callable[[T], T],
    t2: Callable[[T], T],
    alpha: float,
    u0: T,
    stop: StoppingRule = StoppingRule(),
) -> IterationTrace[T]:
    """Run the alternating scheme until the gap or bound tolerance is met.

    Raises ``MaxIterationsExceeded`` (carrying the partial trace) when the
    step budget runs out first; ``MapDomainError`` raised by a map
    propagates unchanged.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    if stop.max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {stop.max_iter}")

    trace: IterationTrace[T] = IterationTrace(points=[u0])
    u = u0
    for k in range(1, stop.max_iter + 1):
        u_next = t1(u) if k % 2 == 1 else t2(u)
        gap = space.distance(u, u_next)
        trace.points.append(u_next)
        trace.gaps.append(gap)
        trace.bounds.append(error_bound(alpha, trace.gaps[0], k))
        u = u_next
        if gap <= stop.gap_tol:
            trace.stop_reason = STOP_GAP_TOL
            return trace
        if stop.bound_tol is not None and trace.bounds[-1] <= stop.bound_tol:
            trace.stop_reason = STOP_BOUND_TOL
            return trace
    trace.stop_reason = STOP_MAX_ITER
    raise MaxIterationsExceeded(
        f"no convergence within {stop.max_iter} iterations "
        f"(last gap {trace.gaps[-1]:.3e}, gap tolerance {stop.gap_tol:.3e})",
        trace=trace,
    )


@dataclass(frozen=True)
class ContractionReport:
    """Outcome of sampling the contraction hypothesis on concrete pairs."""

    checked: int
    failures: int
    worst_margin: float
    worst_pair: tuple | None

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify_contraction(
    space: MetricSpace[T],
    t1: Callable[[T], T],
    t2: Callable[[T], T],
    psi: psi_family.PsiSpec,
    sample_pairs: Sequence[tuple[T, T]],
) -> ContractionReport:
    """Check d(T1 x, T2 y) <= psi(d(x,y), d(x,T1 x), d(y,T2 y)) per pair.

    Report-only diagnostic: the worst margin is max(lhs - rhs) over the
    sample, and the pair attaining it is returned as a witness.
    """
    if not sample_pairs:
        raise ValueError("sample_pairs must be nonempty")
    slack = 1e-12
    failures = 0
    worst_margin = float("-inf")
    worst_pair = None
    for x, y in sample_pairs:
        t1x = t1(x)
        t2y = t2(y)
        lhs = space.distance(t1x, t2y)
        rhs = psi_family.evaluate(
            psi, space.distance(x, y), space.distance(x, t1x), space.distance(y, t2y)
        )
        margin = lhs - rhs
        if margin > worst_margin:
            worst_margin = margin
            worst_pair = (x, y)
        if lhs > rhs + slack:
            failures += 1
    return ContractionReport(
        checked=len(sample_pairs),
        failures=failures,
        worst_margin=worst_margin,
        worst_pair=worst_pair,
    )
