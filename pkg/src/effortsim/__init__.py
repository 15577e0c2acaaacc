"""Deterministic solvers and a scenario CLI for projection-biased effort
choices: what a biased worker plans, when she actually stops, whether
all-or-nothing tasks get started, abandoned, or completed, and how effort
spreads across tasks and days."""

from .numerics import (
    Bracket,
    MaxIterExceeded,
    NoSignChange,
    NonFiniteRate,
    NumericsError,
    TargetBelowRange,
    Tolerance,
    bisect,
    integrate_ivp,
    invert_monotone,
)
from .preference import Agent, Disutility, NegativeEffort, SOutOfRange
from .single_task import (
    AonTask,
    SmoothBenefit,
    StopResult,
    aon_rmax,
    aon_simulate,
    plan_at,
    simulate_smooth,
    threshold_EH,
    unbiased_optimum,
)
from .multi_task import (
    TwoTaskInstance,
    TwoTaskResult,
    continuation_value,
    perceived_plan,
    simulate_two_tasks,
    switch_time,
    unbiased_two_task,
)
from .multi_day import (
    Branch,
    CompletionNotMonotone,
    MultiDayTask,
    Regime,
    RegimeReport,
    Thresholds,
    Trajectory,
    XAtDeadline,
    effort_rate,
    g_cost,
    integrate_task,
    regime_report,
    thresholds,
)
from .productivity import (
    AllocationResult,
    DegenerateClosedForm,
    InfeasibleConstraint,
    ProductivityProfile,
    as_if_productivity,
    biased_plan,
    discount_adapter,
    optimal_allocation,
    simulate_days,
)
from .cli import ParseError, Scenario, SweepSpec, ValidationError, parse_config, run_scenario

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "AllocationResult",
    "AonTask",
    "Bracket",
    "Branch",
    "CompletionNotMonotone",
    "DegenerateClosedForm",
    "Disutility",
    "InfeasibleConstraint",
    "MaxIterExceeded",
    "MultiDayTask",
    "NegativeEffort",
    "NoSignChange",
    "NonFiniteRate",
    "NumericsError",
    "ParseError",
    "ProductivityProfile",
    "Regime",
    "RegimeReport",
    "Scenario",
    "SmoothBenefit",
    "SOutOfRange",
    "StopResult",
    "SweepSpec",
    "TargetBelowRange",
    "Thresholds",
    "Tolerance",
    "Trajectory",
    "TwoTaskInstance",
    "TwoTaskResult",
    "ValidationError",
    "XAtDeadline",
    "aon_rmax",
    "aon_simulate",
    "as_if_productivity",
    "biased_plan",
    "bisect",
    "continuation_value",
    "discount_adapter",
    "effort_rate",
    "g_cost",
    "integrate_ivp",
    "integrate_task",
    "invert_monotone",
    "optimal_allocation",
    "parse_config",
    "perceived_plan",
    "plan_at",
    "regime_report",
    "run_scenario",
    "simulate_days",
    "simulate_smooth",
    "simulate_two_tasks",
    "switch_time",
    "thresholds",
    "threshold_EH",
    "unbiased_optimum",
    "unbiased_two_task",
]
