"""Two consecutive tasks inside one work block.

The agent works the tasks in their given order, tiring across both. The
interesting object is the switch time: when she leaves task 1 she still
overestimates how long she will last on task 2, so she leaves too late,
and the second task then gets squeezed by the tiredness already sunk.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .numerics import Bracket, MaxIterExceeded, Tolerance, bisect
from .preference import Agent, Disutility
from .single_task import SmoothBenefit

_TOL = Tolerance(abs_x=1e-12, abs_f=1e-12, max_iter=300)


@dataclass(frozen=True)
class TwoTaskInstance:
    agent: Agent
    ben1: SmoothBenefit
    ben2: SmoothBenefit

    def __post_init__(self) -> None:
        if self.ben1.m <= 0.0 or self.ben2.m <= 0.0:
            raise ValueError("two-task analysis requires strictly concave benefits (m > 0)")


@dataclass(frozen=True)
class TwoTaskResult:
    e1_actual: float
    e2_actual: float
    e2_planned_at_switch: float
    e1_opt: float
    e2_opt: float
    continuation_at_switch: float


def _demand(ben: SmoothBenefit, mu: float) -> float:
    # Effort at which the marginal benefit falls to mu, floored at zero.
    return max(0.0, (ben.k - mu) / ben.m)


def unbiased_two_task(
    dis: Disutility, ben1: SmoothBenefit, ben2: SmoothBenefit
) -> Tuple[float, float]:
    """Jointly optimal split: a common marginal value mu equates the true
    marginal cost of total effort with each active task's marginal benefit.

    Found by bisection on mu; tasks whose marginal benefit starts below mu
    sit at the zero corner.
    """
    if ben1.m <= 0.0 or ben2.m <= 0.0:
        raise ValueError("unbiased_two_task requires strictly concave benefits (m > 0)")
    k_max = max(ben1.k, ben2.k)
    if dis.dprime(0.0) >= k_max:
        return 0.0, 0.0

    def residual(mu: float) -> float:
        return dis.dprime(_demand(ben1, mu) + _demand(ben2, mu)) - mu

    mu_star = bisect(residual, Bracket(0.0, k_max), _TOL)
    return _demand(ben1, mu_star), _demand(ben2, mu_star)


def perceived_plan(
    agent: Agent, s: float, sunk: float, bens: Sequence[SmoothBenefit]
) -> List[float]:
    """Efforts the agent, at tiredness ``s`` with ``sunk`` hours locked in,
    perceives as optimal for the remaining tasks.

    Same bisection as the unbiased split, with the perceived marginal cost
    in place of the true one.
    """
    if not bens:
        return []
    k_max = max(ben.k for ben in bens)
    if agent.perceived_dprime(sunk, s) >= k_max:
        return [0.0] * len(bens)

    def residual(mu: float) -> float:
        total = sunk + sum(_demand(ben, mu) for ben in bens)
        return agent.perceived_dprime(total, s) - mu

    mu_star = bisect(residual, Bracket(0.0, k_max), _TOL)
    return [_demand(ben, mu_star) for ben in bens]


def continuation_value(
    agent: Agent,
    e_prev: float,
    s: float,
    plan: Sequence[float],
    bens: Sequence[SmoothBenefit],
) -> float:
    """Perceived value, at tiredness ``s``, of carrying out ``plan``
    instead of stopping immediately.

    ``plan[i]`` is the additional hours on the i-th remaining task; the
    first entry is the task currently in progress, of which s - e_prev
    hours are already done (``e_prev`` being the effort locked into
    earlier tasks). The value of the empty or all-zero plan is zero by
    construction, and benefits already banked cancel out.
    """
    if s < e_prev:
        raise ValueError("current tiredness cannot be below the effort on past tasks")
    if len(plan) != len(bens):
        raise ValueError("plan and benefit lists must have equal length")
    if any(e < 0.0 for e in plan):
        raise ValueError("planned efforts must be nonnegative")
    done_current = s - e_prev
    value = 0.0
    for i, (extra, ben) in enumerate(zip(plan, bens)):
        base = done_current if i == 0 else 0.0
        value += ben.b(base + extra) - ben.b(base)
    total_extra = sum(plan)
    value -= agent.perceived_d(s + total_extra, s) - agent.perceived_d(s, s)
    return value


def switch_time(inst: TwoTaskInstance) -> Tuple[float, float]:
    """Moment the agent leaves task 1, and how long she then plans to
    spend on task 2.

    At the switch the perceived marginal cost of the whole planned block
    equals task 1's current marginal benefit, which also pins the planned
    task 2 effort through the equal-marginal-benefit condition. The
    residual of that condition is strictly increasing in the candidate
    switch time, so a doubling bracket plus bisection finds it.
    """
    agent, ben1, ben2 = inst.agent, inst.ben1, inst.ben2

    def planned_second(t: float) -> float:
        return max(0.0, (ben2.k - ben1.bprime(t)) / ben2.m)

    def residual(t: float) -> float:
        return agent.perceived_dprime(t + planned_second(t), t) - ben1.bprime(t)

    if residual(0.0) >= 0.0:
        return 0.0, planned_second(0.0)
    hi = 1.0
    for _ in range(200):
        if residual(hi) > 0.0:
            break
        hi *= 2.0
    else:
        raise MaxIterExceeded("switch time escaped the doubling bracket")
    t_star = bisect(residual, Bracket(0.0, hi), _TOL)
    return t_star, planned_second(t_star)


def simulate_two_tasks(inst: TwoTaskInstance) -> TwoTaskResult:
    """Full run: switch out of task 1, then stop on task 2 where the true
    marginal cost of total effort meets task 2's marginal benefit (the
    single-task stopping logic, conditional on the sunk first-task hours).
    """
    agent = inst.agent
    dis = agent.disutility
    e1, e2_planned = switch_time(inst)

    def gap(e2: float) -> float:
        return dis.dprime(e1 + e2) - inst.ben2.bprime(e2)

    if gap(0.0) >= 0.0:
        e2 = 0.0
    else:
        hi = 1.0
        for _ in range(200):
            if gap(hi) > 0.0:
                break
            hi *= 2.0
        else:
            raise MaxIterExceeded("second-task stop escaped the doubling bracket")
        e2 = bisect(gap, Bracket(0.0, hi), _TOL)

    e1_opt, e2_opt = unbiased_two_task(dis, inst.ben1, inst.ben2)
    cont = continuation_value(agent, e1, e1, (e2_planned,), (inst.ben2,))
    return TwoTaskResult(
        e1_actual=e1,
        e2_actual=e2,
        e2_planned_at_switch=e2_planned,
        e1_opt=e1_opt,
        e2_opt=e2_opt,
        continuation_at_switch=cont,
    )
