"""Single-period stopping behavior on one task.

Two benefit shapes are covered. With smooth decreasing returns the agent
keeps revising an overoptimistic plan downward and ends up stopping at
the unbiased optimum anyway. With an all-or-nothing reward the relevant
object is the perceived remaining cost of finishing: the agent works
while that stays below the reward, and the first crossing (if any) is
where she abandons the task for good.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .numerics import Bracket, MaxIterExceeded, Tolerance, bisect
from .preference import Agent, Disutility, NegativeEffort

_TOL = Tolerance(abs_x=1e-12, abs_f=1e-12, max_iter=300)

# Grid density used to locate sign changes before handing over to
# bisection. The curves scanned are smooth and low-degree, so this cannot
# straddle-miss a crossing at the problem sizes this package targets.
AON_SCAN_POINTS = 1024

_PATH_SAMPLES = 33


@dataclass(frozen=True)
class SmoothBenefit:
    """Linear or concave benefit B(e) = k*e - (m/2)*e^2.

    With m > 0 the marginal benefit k - m*e hits zero at e = k/m; the
    sensible operating range is to the left of that point.
    """

    k: float
    m: float = 0.0

    def __post_init__(self) -> None:
        if self.k < 0.0:
            raise ValueError("benefit slope k must be nonnegative")
        if self.m < 0.0:
            raise ValueError("benefit concavity m must be nonnegative")

    def b(self, e: float) -> float:
        return self.k * e - 0.5 * self.m * e * e

    def bprime(self, e: float) -> float:
        return self.k - self.m * e


@dataclass(frozen=True)
class AonTask:
    """Task paying ``b0`` only if at least ``e0`` hours get done."""

    e0: float
    b0: float

    def __post_init__(self) -> None:
        if self.e0 <= 0.0:
            raise ValueError("required hours e0 must be positive")
        if self.b0 <= 0.0:
            raise ValueError("reward b0 must be positive")


@dataclass(frozen=True)
class StopResult:
    """Outcome of a single-period run.

    ``planned_path`` samples (tiredness, planned total hours) pairs from
    the start of the period to the stopping point. ``completed`` is only
    meaningful for all-or-nothing tasks and is None otherwise.
    """

    actual: float
    planned_path: Tuple[Tuple[float, float], ...]
    completed: Optional[bool] = None


def _expand_to_positive(fn, start: float) -> float:
    hi = max(start, 1.0)
    for _ in range(200):
        if fn(hi) > 0.0:
            return hi
        hi *= 2.0
    raise MaxIterExceeded("could not bracket a sign change by doubling")


def _plan_root(agent: Agent, ben: SmoothBenefit, s: float) -> float:
    # Unique root of perceived-marginal-cost minus marginal-benefit; the
    # gap is strictly increasing in e, so expand then bisect.
    def gap(e: float) -> float:
        return agent.perceived_dprime(e, s) - ben.bprime(e)

    if gap(0.0) >= 0.0:
        return 0.0
    hi = _expand_to_positive(gap, 1.0)
    return bisect(gap, Bracket(0.0, hi), _TOL)


def plan_at(agent: Agent, ben: SmoothBenefit, s: float) -> float:
    """Total hours the agent plans to work, as seen after ``s`` hours.

    Solves perceived marginal cost = marginal benefit. When stopping
    already looks optimal the plan is ``s`` itself, which encodes "stop
    immediately" uniformly.
    """
    if s < 0.0:
        raise NegativeEffort(f"tiredness must be nonnegative, got {s}")
    return max(s, _plan_root(agent, ben, s))


def unbiased_optimum(dis: Disutility, ben: SmoothBenefit) -> float:
    """Hours at which the true marginal cost meets the marginal benefit,
    or zero if work is never worth starting."""

    def gap(e: float) -> float:
        return dis.dprime(e) - ben.bprime(e)

    if gap(0.0) >= 0.0:
        return 0.0
    hi = _expand_to_positive(gap, 1.0)
    return bisect(gap, Bracket(0.0, hi), _TOL)


def _linspace(lo: float, hi: float, n: int) -> Tuple[float, ...]:
    if n < 2:
        return (lo,)
    step = (hi - lo) / (n - 1)
    return tuple(hi if i == n - 1 else lo + i * step for i in range(n))


def simulate_smooth(agent: Agent, ben: SmoothBenefit) -> StopResult:
    """Run the momentary stopping rule on a smooth-benefit task.

    The agent stops at the fixed point where her current plan equals the
    hours already worked; the fixed point is found by bisection on
    plan(s) - s, which is positive while she still wants to continue and
    turns negative past the stop.
    """

    def overshoot(s: float) -> float:
        return _plan_root(agent, ben, s) - s

    if overshoot(0.0) <= 0.0:
        actual = 0.0
    else:
        hi = max(_plan_root(agent, ben, 0.0), 1.0)
        for _ in range(200):
            if overshoot(hi) < 0.0:
                break
            hi *= 2.0
        else:
            raise MaxIterExceeded("stopping point escaped the doubling bracket")
        actual = bisect(overshoot, Bracket(0.0, hi), _TOL)
    path = tuple((s, plan_at(agent, ben, s)) for s in _linspace(0.0, actual, _PATH_SAMPLES))
    return StopResult(actual=actual, planned_path=path, completed=None)


def aon_simulate(agent: Agent, task: AonTask, scan_points: int = AON_SCAN_POINTS) -> StopResult:
    """Start/quit/finish dynamics on an all-or-nothing task.

    The agent works while the perceived remaining cost of finishing stays
    below the reward and quits for good at the first crossing. Exact
    indifference counts as working, so stopping needs a strict excess;
    the crossing is located by a fixed scan followed by bisection, which
    keeps edge cases deterministic.
    """

    def margin(s: float) -> float:
        return agent.perceived_remaining(task.e0, s) - task.b0

    if margin(0.0) >= 0.0:
        return StopResult(actual=0.0, planned_path=((0.0, 0.0),), completed=False)

    stop = None
    prev = 0.0
    for i in range(1, scan_points + 1):
        s = task.e0 * i / scan_points
        if margin(s) >= 0.0:
            stop = bisect(margin, Bracket(prev, s), _TOL)
            break
        prev = s

    if stop is None:
        actual, completed = task.e0, True
    else:
        actual, completed = stop, False
    path = tuple(
        (s, task.e0 if margin(min(s, task.e0)) < 0.0 else s)
        for s in _linspace(0.0, actual, _PATH_SAMPLES)
    )
    return StopResult(actual=actual, planned_path=path, completed=completed)


def aon_rmax(
    agent: Agent, total: float, scan_points: int = AON_SCAN_POINTS
) -> Tuple[float, float]:
    """Worst perceived remaining cost over a task of length ``total``, and
    the tiredness at which it occurs.

    For an unbiased agent the worst point is always the start. With bias
    the remaining work can look worst after some hours, so the derivative
    of the remaining-cost curve is scanned for sign changes and each
    candidate peak is refined by bisection.
    """
    if total <= 0.0:
        raise ValueError("task length must be positive")
    dis = agent.disutility
    alpha = agent.alpha
    if alpha == 0.0:
        return 0.0, dis.d(total)

    def slope(s: float) -> float:
        # d/ds of perceived_remaining(total, s)
        return alpha * dis.dsecond(s) * (total - s) - dis.dprime(s)

    best_s = 0.0
    best_r = agent.perceived_remaining(total, 0.0)
    prev_s, prev_g = 0.0, slope(0.0)
    for i in range(1, scan_points + 1):
        s = total * i / scan_points
        g = slope(s)
        if prev_g > 0.0 and g <= 0.0:
            s_star = bisect(slope, Bracket(prev_s, s), _TOL)
            r = agent.perceived_remaining(total, s_star)
            if r > best_r:
                best_s, best_r = s_star, r
        r_grid = agent.perceived_remaining(total, s)
        if r_grid > best_r:
            best_s, best_r = s, r_grid
        prev_s, prev_g = s, g
    return best_s, best_r


def threshold_EH(agent: Agent) -> float:
    """Smallest task size above which some reward level produces a
    start-then-abandon outcome.

    Below the threshold the worst perceived remaining cost sits at the
    very start, so every started task gets finished. The excess of the
    interior worst case over the start grows with the task size, which
    makes the indicator monotone and bisectable. Returns 0 when the first
    instant of work is free (dprime(0) = 0) and +inf for an unbiased
    agent, whose worst case is always at the start.
    """
    dis = agent.disutility
    if agent.alpha == 0.0:
        return math.inf
    if dis.a == 0.0:
        return 0.0

    def interior_worse(total: float) -> bool:
        _, rmax = aon_rmax(agent, total)
        return rmax > agent.perceived_remaining(total, 0.0) + 1e-12

    lo, hi = 0.0, 1.0
    for _ in range(200):
        if interior_worse(hi):
            break
        lo = hi
        hi *= 2.0
    else:
        return math.inf
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if interior_worse(mid):
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-10 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)
