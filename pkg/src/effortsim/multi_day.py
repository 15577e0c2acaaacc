"""Continuous multi-day dynamics for a deadline task with a lump reward.

Time runs over the unit interval; the state is the work remaining E_x at
day-fraction x. Each instant the agent compares the reward against
g_cost, her perceived cost of finishing the remainder at a constant pace,
and lands in one of three branches: idle (even fresh, finishing looks too
expensive), full pace E_x / (1 - x) (even at full tilt it looks worth it),
or a partial day that ends at the tiredness where the perceived cost
crosses the reward. Idle and full are absorbing, and the integrator
exploits that: entering idle freezes the remaining work, entering full
switches to the exact pace line E_y = E_x * (1 - y) / (1 - x).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from .preference import Agent

# The pace E/(1-x) is singular at the deadline itself, so integration
# stops this close to x = 1; true completions are carried by the full
# branch closed form, which reaches zero exactly at the deadline.
EPS_DEADLINE = 1e-6

# Remaining work at or below this fraction of the initial requirement
# counts as done when no branch has settled the question.
COMPLETION_FRACTION = 1e-6

_trapezoid = getattr(np, "trapezoid", None) or np.trapz


class XAtDeadline(ValueError):
    """Day fraction must satisfy 0 <= x < 1."""


class CompletionNotMonotone(RuntimeError):
    """The completion pre-scan found more than one flip across the reward band."""


class Branch(str, enum.Enum):
    IDLE = "Idle"
    PARTIAL = "Partial"
    FULL = "Full"


class Regime(enum.Enum):
    NEVER_START = "never-start"
    START_THEN_QUIT = "start-then-quit"
    SLOW_THEN_FINISH = "slow-then-finish"
    EFFICIENT_THROUGHOUT = "efficient-throughout"


@dataclass(frozen=True)
class MultiDayTask:
    """Requirement ``e0`` (average-daily units) paying ``b0`` at the deadline."""

    e0: float
    b0: float

    def __post_init__(self) -> None:
        if self.e0 <= 0.0:
            raise ValueError("required effort e0 must be positive")
        if self.b0 <= 0.0:
            raise ValueError("reward b0 must be positive")


@dataclass
class Trajectory:
    """Sampled (x, effort, remaining) path with a branch tag per node."""

    grid: np.ndarray
    effort: np.ndarray
    remaining: np.ndarray
    regime_at: List[Branch]
    completed: bool


@dataclass(frozen=True)
class RegimeReport:
    tau0: float
    tauF: float
    completed: bool
    utility: float
    regime: Regime


@dataclass(frozen=True)
class Thresholds:
    """Reward levels separating never-start, start-then-quit,
    slow-then-finish, and efficient-throughout."""

    b_l: float
    b_c: float
    b_h: float


def g_cost(agent: Agent, x: float, s: float, remaining: float) -> float:
    """Cost, perceived at tiredness ``s`` on day-fraction ``x``, of
    finishing ``remaining`` work at the constant pace remaining/(1-x).

    Strictly increasing in x for fixed positive remaining: squeezing the
    same work into less time raises the average cost per unit.
    """
    if not 0.0 <= x < 1.0:
        raise XAtDeadline(f"day fraction must be in [0, 1), got {x}")
    if remaining < 0.0:
        raise ValueError("remaining work must be nonnegative")
    if remaining == 0.0:
        return 0.0
    horizon = 1.0 - x
    return agent.perceived_d(remaining / horizon, s) * horizon


def effort_rate(agent: Agent, x: float, remaining: float, reward: float) -> float:
    """Flow effort chosen at state (x, remaining): zero when finishing
    already looks too expensive fresh, the full pace when it looks worth
    it even at the day's end, otherwise the tiredness at which the
    perceived finishing cost reaches the reward."""
    if not 0.0 <= x < 1.0:
        raise XAtDeadline(f"day fraction must be in [0, 1), got {x}")
    _, rate = _branch_and_rate(agent, x, remaining, reward)
    return rate


def _branch_and_rate(agent: Agent, x: float, remaining: float, reward: float):
    if remaining <= 0.0:
        return Branch.FULL, 0.0
    dis = agent.disutility
    alpha = agent.alpha
    horizon = 1.0 - x
    pace = remaining / horizon
    base = (1.0 - alpha) * horizon * dis.d(pace)
    if alpha == 0.0:
        if base >= reward:
            return Branch.IDLE, 0.0
        return Branch.FULL, pace
    # g_cost(x, s, remaining) = base + alpha * dprime(s) * remaining, so the
    # cost-equals-reward tiredness is dprime_inv of this target level.
    target = (reward - base) / (alpha * remaining)
    if target <= dis.dprime(0.0):
        return Branch.IDLE, 0.0
    if target >= dis.dprime(pace):
        return Branch.FULL, pace
    return Branch.PARTIAL, dis.dprime_inv(target)


def integrate_task(agent: Agent, task: MultiDayTask, steps: int) -> Trajectory:
    """March the remaining-work state across the horizon on a uniform grid.

    Fourth-order steps are taken only while the partial branch is active;
    branch membership is decided at each node and held through the step.
    An idle node freezes the state for the rest of the horizon, a full
    node switches to the closed-form pace line (so completion is decided
    by branch logic, never by the integrator grazing zero).
    """
    if steps < 100:
        raise ValueError("steps must be at least 100")

    dis = agent.disutility
    alpha = agent.alpha
    a, b, c, gam = dis.a, dis.b, dis.c, dis.gamma
    one_m = 1.0 - alpha
    reward = task.b0
    inv_gamma_exp = 1.0 / (gam - 1.0)

    def cost(u: float) -> float:
        v = a * u + 0.5 * b * u * u
        if c > 0.0:
            v += (c / gam) * u**gam
        return v

    def rate(x: float, rem: float) -> float:
        # Same branch rule as effort_rate, written as one clamped
        # expression so it stays continuous across branch boundaries
        # inside a step.
        if rem <= 0.0:
            return 0.0
        horizon = 1.0 - x
        pace = rem / horizon
        base = one_m * horizon * cost(pace)
        if alpha == 0.0:
            return 0.0 if base >= reward else pace
        target = (reward - base) / (alpha * rem)
        if target <= a:
            return 0.0
        rest = target - a
        if c == 0.0:
            e = rest / b
        elif b == 0.0:
            e = (rest / c) ** inv_gamma_exp
        else:
            e = dis.dprime_inv(target)
        return e if e < pace else pace

    n = steps
    x_end = 1.0 - EPS_DEADLINE
    h = x_end / n
    xs = [i * h for i in range(n + 1)]
    xs[-1] = x_end
    efforts = [0.0] * (n + 1)
    remaining = [0.0] * (n + 1)
    branches: List[Branch] = [Branch.PARTIAL] * (n + 1)
    eps_done = COMPLETION_FRACTION * task.e0

    rem = task.e0
    completed = False
    i = 0
    while i <= n:
        x = xs[i]
        branch, e = _branch_and_rate(agent, x, rem, reward)
        if branch is Branch.IDLE:
            for j in range(i, n + 1):
                remaining[j] = rem
                branches[j] = Branch.IDLE
            completed = rem <= eps_done
            break
        if branch is Branch.FULL:
            pace = e
            scale = rem / (1.0 - x) if rem > 0.0 else 0.0
            for j in range(i, n + 1):
                remaining[j] = scale * (1.0 - xs[j])
                efforts[j] = pace
                branches[j] = Branch.FULL
            completed = True
            break
        remaining[i] = rem
        efforts[i] = e
        branches[i] = Branch.PARTIAL
        if i == n:
            completed = rem <= eps_done
            break
        k1 = e
        k2 = rate(x + 0.5 * h, rem - 0.5 * h * k1)
        k3 = rate(x + 0.5 * h, rem - 0.5 * h * k2)
        k4 = rate(x + h, rem - h * k3)
        rem -= (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        if rem < 0.0:
            rem = 0.0
        i += 1

    return Trajectory(
        grid=np.asarray(xs),
        effort=np.asarray(efforts),
        remaining=np.asarray(remaining),
        regime_at=branches,
        completed=completed,
    )


def _cost_of_efforts(agent: Agent, efforts: np.ndarray) -> np.ndarray:
    dis = agent.disutility
    values = dis.a * efforts + 0.5 * dis.b * efforts * efforts
    if dis.c > 0.0:
        values = values + (dis.c / dis.gamma) * efforts**dis.gamma
    return values


def regime_report(agent: Agent, task: MultiDayTask, steps: int) -> RegimeReport:
    """Classify a run and score it.

    ``tau0`` / ``tauF`` are the horizon fractions, measured back from the
    deadline, spent in the terminal idle / full stretch. Utility is the
    reward (if earned) minus the integrated flow cost of effort.
    """
    traj = integrate_task(agent, task, steps)
    tags = traj.regime_at

    def terminal_fraction(tag: Branch) -> float:
        if tags[-1] is not tag:
            return 0.0
        start = len(tags) - 1
        while start > 0 and tags[start - 1] is tag:
            start -= 1
        return 1.0 - float(traj.grid[start])

    tau0 = terminal_fraction(Branch.IDLE)
    tauF = terminal_fraction(Branch.FULL)

    costs = _cost_of_efforts(agent, traj.effort)
    # extend the clipped grid to the deadline itself; effort is constant
    # on the final sliver in every absorbed branch
    waste = float(_trapezoid(costs, traj.grid)) + float(costs[-1]) * (1.0 - float(traj.grid[-1]))
    utility = (task.b0 if traj.completed else 0.0) - waste

    if traj.completed:
        regime = Regime.EFFICIENT_THROUGHOUT if tags[0] is Branch.FULL else Regime.SLOW_THEN_FINISH
    else:
        regime = Regime.NEVER_START if tags[0] is Branch.IDLE else Regime.START_THEN_QUIT
    return RegimeReport(tau0=tau0, tauF=tauF, completed=traj.completed, utility=utility, regime=regime)


def thresholds(agent: Agent, e0: float, steps: int, scan_points: int = 50) -> Thresholds:
    """Reward levels bounding the four regimes for a task of size ``e0``.

    The outer two are closed forms (the fresh idle and fresh full
    conditions at the start of the horizon). The completion boundary in
    between is bisected on the completion flag, after a scan across the
    band verifies the flag flips exactly once; a non-monotone scan aborts
    with CompletionNotMonotone rather than reporting a bogus threshold.
    """
    if e0 <= 0.0:
        raise ValueError("required effort e0 must be positive")
    dis = agent.disutility
    alpha = agent.alpha
    b_l = (1.0 - alpha) * dis.d(e0) + alpha * dis.dprime(0.0) * e0
    b_h = (1.0 - alpha) * dis.d(e0) + alpha * dis.dprime(e0) * e0
    if alpha == 0.0:
        return Thresholds(b_l=b_l, b_c=b_l, b_h=b_h)
    if dis.b <= 0.0:
        raise ValueError("threshold analysis requires a curvature floor (b > 0)")

    def completes(reward: float) -> bool:
        return integrate_task(agent, MultiDayTask(e0, reward), steps).completed

    flags = []
    for i in range(scan_points):
        reward = b_l + (b_h - b_l) * (i + 1) / (scan_points + 1)
        flags.append(completes(reward))
    if flags != sorted(flags):
        raise CompletionNotMonotone(
            "completion is not single-crossing across the reward band; no threshold reported"
        )

    lo, hi = b_l, b_h
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if completes(mid):
            hi = mid
        else:
            lo = mid
    return Thresholds(b_l=b_l, b_c=0.5 * (lo + hi), b_h=b_h)
