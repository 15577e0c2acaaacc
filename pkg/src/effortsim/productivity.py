"""Spreading a fixed output requirement across days of shifting productivity.

Here the payoff of working today is having less to do later, so what the
agent projects is how costly that future work will feel. Each morning she
replans the whole remainder, works until today's planned hours equal the
hours already done, and the final day absorbs whatever requirement is
left. Exponential discounting of the work's unpleasantness maps onto a
geometric productivity profile, see discount_adapter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .numerics import Bracket, MaxIterExceeded, Tolerance, bisect
from .preference import Agent, Disutility

_TOL = Tolerance(abs_x=1e-13, abs_f=1e-12, max_iter=300)


class InfeasibleConstraint(ValueError):
    """The final day's residual effort exceeds the configured cap."""


class DegenerateClosedForm(ValueError):
    """The two-day as-if-productivity shortcut divides by zero here."""


@dataclass(frozen=True)
class ProductivityProfile:
    """Output units produced per hour of effort, one entry per day."""

    p: Tuple[float, ...]

    def __init__(self, p: Sequence[float]) -> None:
        object.__setattr__(self, "p", tuple(float(v) for v in p))
        if len(self.p) < 2:
            raise ValueError("a productivity profile needs at least two days")
        if any(v <= 0.0 for v in self.p):
            raise ValueError("productivities must be positive")

    def __len__(self) -> int:
        return len(self.p)

    @property
    def is_increasing(self) -> bool:
        return all(x < y for x, y in zip(self.p, self.p[1:]))

    @property
    def is_decreasing(self) -> bool:
        return all(x > y for x, y in zip(self.p, self.p[1:]))


@dataclass(frozen=True)
class AllocationResult:
    """Realized schedule plus everything the agent believed along the way.

    ``planned[t][u]`` is the effort planned for day u as of the end of day
    t (zero for u < t); the diagonal equals ``actual``. Cumulative columns
    are in output units. ``multipliers[t]`` is the shadow value of output
    in the day-t plan at its stopping state.
    """

    actual: Tuple[float, ...]
    planned: Tuple[Tuple[float, ...], ...]
    optimal: Tuple[float, ...]
    cumulative_actual: Tuple[float, ...]
    cumulative_optimal: Tuple[float, ...]
    multipliers: Tuple[float, ...]


def _solve_allocation(efforts_at, weights: Sequence[float], target: float) -> Tuple[List[float], float]:
    # Bisect the shadow value until the weighted efforts meet the target.
    # Clamped corners keep the residual monotone in the multiplier.
    def residual(lam: float) -> float:
        return sum(w * e for w, e in zip(weights, efforts_at(lam))) - target

    hi = 1.0
    for _ in range(300):
        if residual(hi) >= 0.0:
            break
        hi *= 2.0
    else:
        raise MaxIterExceeded("allocation multiplier escaped the doubling bracket")
    lam = bisect(residual, Bracket(0.0, hi), _TOL) if residual(0.0) < 0.0 else 0.0
    return efforts_at(lam), lam


def _optimal_with_multiplier(
    dis: Disutility, total_output: float, weights: Sequence[float]
) -> Tuple[List[float], float]:
    def efforts_at(lam: float) -> List[float]:
        return [dis.dprime_inv(lam * w) if lam * w > dis.a else 0.0 for w in weights]

    return _solve_allocation(efforts_at, weights, total_output)


def optimal_allocation(dis: Disutility, total_output: float, prof: ProductivityProfile) -> List[float]:
    """Cost-minimizing schedule meeting the output target: the true
    marginal cost per unit of output is equalized across active days."""
    if total_output <= 0.0:
        raise ValueError("output requirement must be positive")
    efforts, _ = _optimal_with_multiplier(dis, total_output, prof.p)
    return efforts


def _biased_with_multiplier(
    agent: Agent, remaining_output: float, weights: Sequence[float], s: float
) -> Tuple[List[float], float]:
    dis = agent.disutility
    alpha = agent.alpha
    if alpha == 0.0:
        return _optimal_with_multiplier(dis, remaining_output, weights)
    slope_now = dis.dprime(s)
    one_m = 1.0 - alpha

    def efforts_at(lam: float) -> List[float]:
        out = []
        for w in weights:
            # perceived first-order condition rearranged for the true slope
            level = (lam * w - alpha * slope_now) / one_m
            out.append(dis.dprime_inv(level) if level > dis.a else 0.0)
        return out

    return _solve_allocation(efforts_at, weights, remaining_output)


def biased_plan(
    agent: Agent, remaining_output: float, prof_tail: ProductivityProfile, s: float
) -> List[float]:
    """Schedule for the remaining days as perceived at today's tiredness
    ``s``; the first entry is today. Future days' marginal costs are
    projected from the current one, so tired planners shift work toward
    high-productivity days."""
    if remaining_output <= 0.0:
        raise ValueError("remaining output must be positive")
    if s < 0.0:
        raise ValueError("tiredness must be nonnegative")
    efforts, _ = _biased_with_multiplier(agent, remaining_output, prof_tail.p, s)
    return efforts


def simulate_days(
    agent: Agent,
    total_output: float,
    prof: ProductivityProfile,
    effort_cap: Optional[float] = None,
) -> AllocationResult:
    """Day-by-day realization with morning replanning.

    Each day's stop is the fixed point where the plan's entry for today
    equals the hours already worked, located by bisection (the overshoot
    is positive while she wants to continue). The last day has no
    intertemporal margin: effort is the residual requirement divided by
    that day's productivity, cap permitting.
    """
    if total_output <= 0.0:
        raise ValueError("output requirement must be positive")
    p = prof.p
    days = len(p)
    dis = agent.disutility

    actual: List[float] = []
    planned: List[Tuple[float, ...]] = []
    multipliers: List[float] = []
    remaining = total_output

    for t in range(days - 1):
        tail = p[t:]

        def today(s: float) -> float:
            return _biased_with_multiplier(agent, remaining, tail, s)[0][0]

        if remaining <= 0.0 or today(0.0) <= 0.0:
            stop = 0.0
            plan, lam = (
                ([0.0] * len(tail), 0.0)
                if remaining <= 0.0
                else _biased_with_multiplier(agent, remaining, tail, 0.0)
            )
        else:
            hi = max(1.0, today(0.0))
            for _ in range(200):
                if today(hi) - hi < 0.0:
                    break
                hi *= 2.0
            else:
                raise MaxIterExceeded("daily stopping point escaped the doubling bracket")
            stop = bisect(lambda s: today(s) - s, Bracket(0.0, hi), _TOL)
            plan, lam = _biased_with_multiplier(agent, remaining, tail, stop)
        row = [0.0] * days
        row[t] = stop
        for u, e in enumerate(plan[1:], start=t + 1):
            row[u] = e
        actual.append(stop)
        planned.append(tuple(row))
        multipliers.append(lam)
        remaining = max(0.0, remaining - p[t] * stop)

    last = remaining / p[-1]
    if effort_cap is not None and last > effort_cap:
        raise InfeasibleConstraint(
            f"final-day effort {last} exceeds the cap {effort_cap}; the output target cannot be met"
        )
    actual.append(last)
    planned.append(tuple([0.0] * (days - 1) + [last]))
    multipliers.append(dis.dprime(last) / p[-1])

    optimal = optimal_allocation(dis, total_output, prof)

    def cumulative(efforts: Sequence[float]) -> Tuple[float, ...]:
        out = []
        acc = 0.0
        for w, e in zip(p, efforts):
            acc += w * e
            out.append(acc)
        return tuple(out)

    return AllocationResult(
        actual=tuple(actual),
        planned=tuple(planned),
        optimal=tuple(optimal),
        cumulative_actual=cumulative(actual),
        cumulative_optimal=cumulative(optimal),
        multipliers=tuple(multipliers),
    )


def discount_adapter(delta: float, days: int) -> ProductivityProfile:
    """Productivity profile equivalent to discounting the work's
    unpleasantness by ``delta`` per day: p_t = delta^-(t-1)."""
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must be in (0, 1]")
    if days < 2:
        raise ValueError("need at least two days")
    return ProductivityProfile([delta ** (-t) for t in range(days)])


def as_if_productivity(alpha: float, p: float) -> float:
    """Two-day diagnostic: a biased stopper behaves as if day-1
    productivity were (1 - alpha) * p / (1 - alpha * p).

    Reports the degeneracy at alpha * p >= 1 instead of dividing by zero.
    The simulator never evaluates this expression; it always solves the
    fixed point, which stays finite through corner solutions.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must be in [0, 1)")
    if p <= 0.0:
        raise ValueError("productivity must be positive")
    if alpha * p >= 1.0:
        raise DegenerateClosedForm(
            f"as-if productivity is undefined at alpha * p = {alpha * p:g} (>= 1)"
        )
    return (1.0 - alpha) * p / (1.0 - alpha * p)
