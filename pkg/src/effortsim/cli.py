"""Config-driven scenario runner with deterministic CSV output.

Configs are flat INI-style documents: a [scenario] section naming the
kind, an [agent] section, and one section named after the kind holding
its parameters (see the configs/ directory and README for the schema).
Runs are pure functions of the config, so repeated runs produce
byte-identical files; values are written with 12 decimal places and rows
follow the input grid order.

Exit codes: 0 success, 2 parse or validation failure, 3 solver failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import configparser
import math
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .multi_day import MultiDayTask, regime_report, integrate_task
from .numerics import NumericsError
from .preference import Agent, Disutility
from .productivity import ProductivityProfile, discount_adapter, simulate_days
from .single_task import AonTask, SmoothBenefit, aon_simulate, simulate_smooth
from .multi_task import TwoTaskInstance, simulate_two_tasks

SCHEMA_VERSION = 1

KINDS = (
    "single-smooth",
    "single-aon",
    "two-task",
    "multi-day",
    "sweep-B",
    "productivity",
    "discounting",
)

_SWEEP_KIND = "sweep-B"


class ParseError(Exception):
    """The config document is not well-formed."""


class ValidationError(Exception):
    """The config document violates a schema constraint."""


@dataclass(frozen=True)
class SweepSpec:
    b_min: float
    b_max: float
    points: int
    log_scale: bool = False


@dataclass
class Scenario:
    kind: str
    agent: Agent
    params: Dict[str, object]
    output_path: Optional[str] = None
    steps: Optional[int] = None


_AGENT_KEYS = {"alpha", "a", "b", "c", "gamma"}

_KIND_KEYS: Dict[str, set] = {
    "single-smooth": {"k", "m"},
    "single-aon": {"E0", "B0"},
    "two-task": {"k1", "m1", "k2", "m2"},
    "multi-day": {"E0", "B0", "steps"},
    "sweep-B": {"E0", "B_min", "B_max", "points", "log_scale", "steps"},
    "productivity": {"E", "p"},
    "discounting": {"E", "delta", "T"},
}


def _get_float(section: configparser.SectionProxy, name: str, key: str, default=None) -> float:
    if key not in section:
        if default is None:
            raise ValidationError(f"[{name}] missing required key '{key}'")
        return default
    raw = section[key]
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"[{name}] {key} must be a decimal number (got '{raw}')") from None


def _get_int(section: configparser.SectionProxy, name: str, key: str, default=None) -> int:
    if key not in section:
        if default is None:
            raise ValidationError(f"[{name}] missing required key '{key}'")
        return default
    raw = section[key]
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"[{name}] {key} must be an integer (got '{raw}')") from None


def _get_bool(section: configparser.SectionProxy, name: str, key: str, default: bool) -> bool:
    if key not in section:
        return default
    raw = section[key].strip().lower()
    if raw in ("true", "yes", "1", "on"):
        return True
    if raw in ("false", "no", "0", "off"):
        return False
    raise ValidationError(f"[{name}] {key} must be a boolean (got '{section[key]}')")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _reject_unknown(section: configparser.SectionProxy, name: str, allowed: set) -> None:
    for key in section:
        if key not in allowed:
            raise ValidationError(f"[{name}] unknown key '{key}'")


def parse_config(text: str) -> Scenario:
    """Parse and fully validate a config document.

    Raises ParseError for malformed documents and ValidationError with a
    diagnostic naming the offending key and constraint otherwise.
    """
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keys like E0 and B_min are case-sensitive
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"malformed config: {exc}") from None

    if "scenario" not in cp:
        raise ValidationError("missing [scenario] section")
    sc = cp["scenario"]
    _reject_unknown(sc, "scenario", {"schema_version", "kind", "output", "steps"})
    version = _get_int(sc, "scenario", "schema_version")
    _require(version == SCHEMA_VERSION, f"[scenario] schema_version must be {SCHEMA_VERSION}")
    if "kind" not in sc:
        raise ValidationError("[scenario] missing required key 'kind'")
    kind = sc["kind"].strip()
    _require(kind in KINDS, f"[scenario] kind must be one of {', '.join(KINDS)} (got '{kind}')")
    output_path = sc["output"].strip() if "output" in sc else None
    steps_override = _get_int(sc, "scenario", "steps", default=-1)
    steps: Optional[int] = None if steps_override == -1 else steps_override

    if "agent" not in cp:
        raise ValidationError("missing [agent] section")
    ag = cp["agent"]
    _reject_unknown(ag, "agent", _AGENT_KEYS)
    alpha = _get_float(ag, "agent", "alpha")
    a = _get_float(ag, "agent", "a", 0.0)
    b = _get_float(ag, "agent", "b", 0.0)
    c = _get_float(ag, "agent", "c", 0.0)
    gamma = _get_float(ag, "agent", "gamma", 3.0)
    _require(0.0 <= alpha < 1.0, f"[agent] alpha must be in [0,1) (got {alpha})")
    _require(a >= 0.0 and b >= 0.0 and c >= 0.0, "[agent] a, b, c must be nonnegative")
    _require(b + c > 0.0, "[agent] b + c must be positive (strictly convex cost)")
    _require(gamma > 2.0, f"[agent] gamma must exceed 2 (got {gamma})")
    agent = Agent(alpha=alpha, disutility=Disutility(a=a, b=b, c=c, gamma=gamma))

    if kind not in cp:
        raise ValidationError(f"missing [{kind}] section")
    ks = cp[kind]
    _reject_unknown(ks, kind, _KIND_KEYS[kind])
    params: Dict[str, object] = {}

    if kind == "single-smooth":
        k = _get_float(ks, kind, "k")
        m = _get_float(ks, kind, "m", 0.0)
        _require(k >= 0.0, f"[{kind}] k must be nonnegative (got {k})")
        _require(m >= 0.0, f"[{kind}] m must be nonnegative (got {m})")
        params.update(k=k, m=m)
    elif kind == "single-aon":
        e0 = _get_float(ks, kind, "E0")
        b0 = _get_float(ks, kind, "B0")
        _require(e0 > 0.0, f"[{kind}] E0 must be positive (got {e0})")
        _require(b0 > 0.0, f"[{kind}] B0 must be positive (got {b0})")
        params.update(E0=e0, B0=b0)
    elif kind == "two-task":
        k1 = _get_float(ks, kind, "k1")
        m1 = _get_float(ks, kind, "m1")
        k2 = _get_float(ks, kind, "k2")
        m2 = _get_float(ks, kind, "m2")
        _require(k1 >= 0.0 and k2 >= 0.0, f"[{kind}] k1 and k2 must be nonnegative")
        _require(m1 > 0.0 and m2 > 0.0, f"[{kind}] m1 and m2 must be positive (strictly concave)")
        params.update(k1=k1, m1=m1, k2=k2, m2=m2)
    elif kind == "multi-day":
        e0 = _get_float(ks, kind, "E0")
        b0 = _get_float(ks, kind, "B0")
        kind_steps = _get_int(ks, kind, "steps", 10000)
        _require(e0 > 0.0, f"[{kind}] E0 must be positive (got {e0})")
        _require(b0 > 0.0, f"[{kind}] B0 must be positive (got {b0})")
        _require(kind_steps >= 100, f"[{kind}] steps must be at least 100 (got {kind_steps})")
        params.update(E0=e0, B0=b0, steps=kind_steps)
    elif kind == "sweep-B":
        e0 = _get_float(ks, kind, "E0")
        b_min = _get_float(ks, kind, "B_min")
        b_max = _get_float(ks, kind, "B_max")
        points = _get_int(ks, kind, "points")
        log_scale = _get_bool(ks, kind, "log_scale", False)
        kind_steps = _get_int(ks, kind, "steps", 10000)
        _require(e0 > 0.0, f"[{kind}] E0 must be positive (got {e0})")
        _require(b_min < b_max, f"[{kind}] B_min must be below B_max (got {b_min} >= {b_max})")
        _require(b_min > 0.0, f"[{kind}] B_min must be positive (got {b_min})")
        _require(points >= 2, f"[{kind}] points must be at least 2 (got {points})")
        _require(kind_steps >= 100, f"[{kind}] steps must be at least 100 (got {kind_steps})")
        params.update(
            E0=e0, sweep=SweepSpec(b_min=b_min, b_max=b_max, points=points, log_scale=log_scale),
            steps=kind_steps,
        )
    elif kind == "productivity":
        total = _get_float(ks, kind, "E")
        if "p" not in ks:
            raise ValidationError(f"[{kind}] missing required key 'p'")
        raw_items = [item.strip() for item in ks["p"].split(",")]
        try:
            p_list = [float(item) for item in raw_items]
        except ValueError:
            raise ValidationError(f"[{kind}] p must be a comma-separated list of decimals") from None
        _require(total > 0.0, f"[{kind}] E must be positive (got {total})")
        _require(len(p_list) >= 2, f"[{kind}] p needs at least two entries")
        _require(all(v > 0.0 for v in p_list), f"[{kind}] every productivity must be positive")
        params.update(E=total, p=tuple(p_list))
    elif kind == "discounting":
        total = _get_float(ks, kind, "E")
        delta = _get_float(ks, kind, "delta")
        days = _get_int(ks, kind, "T")
        _require(total > 0.0, f"[{kind}] E must be positive (got {total})")
        _require(0.0 < delta <= 1.0, f"[{kind}] delta must be in (0,1] (got {delta})")
        _require(days >= 2, f"[{kind}] T must be at least 2 (got {days})")
        params.update(E=total, delta=delta, T=days)

    return Scenario(kind=kind, agent=agent, params=params, output_path=output_path, steps=steps)


def _fmt(value: float) -> str:
    return f"{value:.12f}"


def _fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def _rows_single_smooth(agent: Agent, params) -> Tuple[List[str], List[List[str]]]:
    result = simulate_smooth(agent, SmoothBenefit(k=params["k"], m=params["m"]))
    rows = [[_fmt(s), _fmt(plan)] for s, plan in result.planned_path]
    return ["s", "planned"], rows

def _rows_single_aon(agent: Agent, params) -> Tuple[List[str], List[List[str]]]:
    result = aon_simulate(agent, AonTask(e0=params["E0"], b0=params["B0"]))
    return ["actual", "completed"], [[_fmt(result.actual), _fmt_bool(bool(result.completed))]]


def _rows_two_task(agent: Agent, params) -> Tuple[List[str], List[List[str]]]:
    inst = TwoTaskInstance(
        agent=agent,
        ben1=SmoothBenefit(k=params["k1"], m=params["m1"]),
        ben2=SmoothBenefit(k=params["k2"], m=params["m2"]),
    )
    r = simulate_two_tasks(inst)
    header = [
        "e1_actual",
        "e2_actual",
        "e2_planned_at_switch",
        "e1_opt",
        "e2_opt",
        "continuation_at_switch",
    ]
    row = [
        _fmt(r.e1_actual),
        _fmt(r.e2_actual),
        _fmt(r.e2_planned_at_switch),
        _fmt(r.e1_opt),
        _fmt(r.e2_opt),
        _fmt(r.continuation_at_switch),
    ]
    return header, [row]


def _rows_multi_day(agent: Agent, params, steps: int) -> Tuple[List[str], List[List[str]]]:
    traj = integrate_task(agent, MultiDayTask(e0=params["E0"], b0=params["B0"]), steps)
    rows = [
        [_fmt(x), _fmt(e), _fmt(rem), tag.value]
        for x, e, rem, tag in zip(traj.grid, traj.effort, traj.remaining, traj.regime_at)
    ]
    return ["x", "e_x", "E_x", "branch"], rows


def _sweep_grid(spec: SweepSpec) -> List[float]:
    n = spec.points
    if spec.log_scale:
        lo, hi = math.log(spec.b_min), math.log(spec.b_max)
        return [math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(n)]
    return [spec.b_min + (spec.b_max - spec.b_min) * i / (n - 1) for i in range(n)]


def _rows_sweep(agent: Agent, params, steps: int) -> Tuple[List[str], List[List[str]]]:
    spec: SweepSpec = params["sweep"]
    rows = []
    for b0 in _sweep_grid(spec):
        report = regime_report(agent, MultiDayTask(e0=params["E0"], b0=b0), steps)
        rows.append(
            [
                _fmt(b0),
                _fmt(report.tau0),
                _fmt(report.tauF),
                _fmt_bool(report.completed),
                _fmt(report.utility),
            ]
        )
    return ["B0", "tau0", "tauF", "completed", "utility"], rows


def _rows_allocation(agent: Agent, total: float, profile: ProductivityProfile):
    result = simulate_days(agent, total, profile)
    days = len(profile)
    header = [
        "day",
        "p_t",
        "actual",
        "planned_next",
        "optimal",
        "cumulative_actual",
        "cumulative_optimal",
    ]
    rows = []
    for t in range(days):
        planned_next = _fmt(result.planned[t][t + 1]) if t + 1 < days else ""
        rows.append(
            [
                str(t + 1),
                _fmt(profile.p[t]),
                _fmt(result.actual[t]),
                planned_next,
                _fmt(result.optimal[t]),
                _fmt(result.cumulative_actual[t]),
                _fmt(result.cumulative_optimal[t]),
            ]
        )
    return header, rows


def run_scenario(sc: Scenario, out_path: Optional[str] = None, steps: Optional[int] = None) -> str:
    """Dispatch a validated scenario and write its CSV; returns the path.

    ``out_path`` and ``steps`` override the config. Identical inputs give
    byte-identical files.
    """
    effective_steps = steps if steps is not None else sc.steps
    if sc.kind == "single-smooth":
        header, rows = _rows_single_smooth(sc.agent, sc.params)
    elif sc.kind == "single-aon":
        header, rows = _rows_single_aon(sc.agent, sc.params)
    elif sc.kind == "two-task":
        header, rows = _rows_two_task(sc.agent, sc.params)
    elif sc.kind == "multi-day":
        header, rows = _rows_multi_day(sc.agent, sc.params, effective_steps or sc.params["steps"])
    elif sc.kind == _SWEEP_KIND:
        header, rows = _rows_sweep(sc.agent, sc.params, effective_steps or sc.params["steps"])
    elif sc.kind == "productivity":
        header, rows = _rows_allocation(sc.agent, sc.params["E"], ProductivityProfile(sc.params["p"]))
    elif sc.kind == "discounting":
        profile = discount_adapter(sc.params["delta"], sc.params["T"])
        header, rows = _rows_allocation(sc.agent, sc.params["E"], profile)
    else:  # unreachable after validation
        raise ValidationError(f"unknown scenario kind '{sc.kind}'")

    path = out_path or sc.output_path or f"{sc.kind}.csv"
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    return path


def _load(path: str) -> Scenario:
    try:
        with open(path, "r") as fh:
            text = fh.read()
    except OSError as exc:
        raise exc
    return parse_config(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="effortsim",
        description="Deterministic scenario runner for biased effort planning",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "run a scalar scenario and write its CSV"),
        ("sweep", "run a sweep-B scenario and write its CSV"),
        ("validate", "parse and validate a config without running it"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("config", help="path to the config document")
        if name != "validate":
            sp.add_argument("--steps", type=int, default=None, help="override the grid steps")
            sp.add_argument("--out", default=None, help="override the output path")
            sp.add_argument(
                "--seed",
                default=None,
                help="reserved flag: the engine is deterministic and rejects it",
            )

    args = parser.parse_args(argv)

    try:
        scenario = _load(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 4
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "validate":
        print(f"ok: {scenario.kind} scenario is valid")
        return 0

    if getattr(args, "seed", None) is not None:
        print("error: --seed is reserved; the engine is deterministic", file=sys.stderr)
        return 2
    if args.command == "run" and scenario.kind == _SWEEP_KIND:
        print("error: sweep-B scenarios run under the 'sweep' subcommand", file=sys.stderr)
        return 2
    if args.command == "sweep" and scenario.kind != _SWEEP_KIND:
        print(f"error: 'sweep' needs a sweep-B scenario (got {scenario.kind})", file=sys.stderr)
        return 2
    if args.steps is not None and args.steps < 100:
        print(f"error: --steps must be at least 100 (got {args.steps})", file=sys.stderr)
        return 2

    try:
        path = run_scenario(scenario, out_path=args.out, steps=args.steps)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    except (NumericsError, ValueError, RuntimeError) as exc:
        print(f"error while solving {scenario.kind} scenario: {exc}", file=sys.stderr)
        return 3
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
