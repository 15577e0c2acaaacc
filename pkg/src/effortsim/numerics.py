"""Scalar root finding, monotone inversion, and fixed-grid ODE stepping.

Every solver in this package funnels its numeric work through the three
routines here, so tolerances and failure modes are uniform across modules.
All functions are pure and deterministic: identical inputs produce
bit-identical outputs, and nothing here keeps state between calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Tuple


class NumericsError(Exception):
    """Base class for numeric failures raised by this package."""


class NoSignChange(NumericsError):
    """The bracket endpoints do not straddle a root."""


class MaxIterExceeded(NumericsError):
    """Neither tolerance was met within the iteration budget."""


class TargetBelowRange(NumericsError):
    """Requested inverse value lies below the function's range."""


class NonFiniteRate(NumericsError):
    """An ODE rate evaluated to NaN or infinity."""


@dataclass(frozen=True)
class Bracket:
    """Interval [lo, hi] expected to straddle the target of a search."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Tolerance:
    """Stopping rule shared by the bracketing searches.

    A search stops as soon as the residual is within ``abs_f`` or the
    bracket width is within ``abs_x``, whichever happens first.
    """

    abs_x: float = 1e-10
    abs_f: float = 1e-10
    max_iter: int = 200

    def __post_init__(self) -> None:
        if self.abs_x <= 0.0 or self.abs_f <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_TOL = Tolerance()


def bisect(f: Callable[[float], float], bracket: Bracket, tol: Tolerance = DEFAULT_TOL) -> float:
    """Locate a root of ``f`` inside ``bracket`` by plain bisection.

    ``f`` must be continuous with opposite signs at the endpoints (an
    endpoint already within ``tol.abs_f`` of zero is returned directly).
    Plain halving is used on purpose: it is branch-predictable and gives
    the same answer on every platform, which the CSV golden files rely on.
    """
    lo, hi = bracket.lo, bracket.hi
    flo = f(lo)
    fhi = f(hi)
    if abs(flo) <= tol.abs_f:
        return lo
    if abs(fhi) <= tol.abs_f:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NoSignChange(f"f({lo}) = {flo} and f({hi}) = {fhi} have the same sign")
    for _ in range(tol.max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if abs(fmid) <= tol.abs_f or (hi - lo) <= tol.abs_x:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    raise MaxIterExceeded(f"no convergence within {tol.max_iter} bisection steps")


def invert_monotone(
    f: Callable[[float], float],
    target: float,
    seed_hi: float = 1.0,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Solve f(x) = target for x >= 0 when ``f`` is strictly increasing.

    The upper bound starts at ``seed_hi`` and doubles until it clears the
    target, then the bracket [0, hi] is bisected. Doubling always
    terminates for the cost functions used here because their slopes are
    unbounded.
    """
    if seed_hi <= 0.0:
        raise ValueError("seed_hi must be positive")
    f0 = f(0.0)
    if target < f0 - tol.abs_f:
        raise TargetBelowRange(f"target {target} is below f(0) = {f0}")
    if target <= f0:
        return 0.0
    hi = seed_hi
    for _ in range(tol.max_iter):
        if f(hi) >= target:
            break
        hi *= 2.0
    else:
        raise MaxIterExceeded(f"could not bracket target {target} by doubling from {seed_hi}")
    return bisect(lambda x: f(x) - target, Bracket(0.0, hi), tol)


def integrate_ivp(
    rate: Callable[[float, float], float],
    y0: float,
    x0: float,
    x1: float,
    steps: int,
) -> List[Tuple[float, float]]:
    """Integrate y' = rate(x, y) from x0 to x1 with classical RK4.

    Returns ``steps + 1`` evenly spaced (x, y) samples including both
    endpoints. The grid is fixed rather than adaptive: callers know where
    their fields stop being smooth and handle those points themselves,
    and a fixed grid makes refinement studies exactly reproducible.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if not x1 > x0:
        raise ValueError("x1 must exceed x0")
    h = (x1 - x0) / steps
    samples: List[Tuple[float, float]] = [(x0, y0)]
    y = y0
    for i in range(steps):
        x = x0 + i * h
        k1 = rate(x, y)
        k2 = rate(x + 0.5 * h, y + 0.5 * h * k1)
        k3 = rate(x + 0.5 * h, y + 0.5 * h * k2)
        k4 = rate(x + h, y + h * k3)
        if not (math.isfinite(k1) and math.isfinite(k2) and math.isfinite(k3) and math.isfinite(k4)):
            raise NonFiniteRate(f"rate is not finite near x = {x}")
        y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        x_next = x1 if i + 1 == steps else x0 + (i + 1) * h
        samples.append((x_next, y))
    return samples
