"""Convex effort-cost family and the projection-biased agent.

The cost family is D(e) = a*e + (b/2)*e^2 + (c/gamma)*e^gamma. It is the
single source of truth for the cost level, its slope, the slope's inverse,
and the biased perceptions built from them. The linear coefficient ``a``
is the marginal cost of the very first instant of work, ``b`` puts a
uniform floor under the curvature, and the power term (exponent above 2)
adds faster-than-quadratic growth where a scenario needs it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numerics import TargetBelowRange, Tolerance, invert_monotone


class NegativeEffort(ValueError):
    """Effort arguments must be nonnegative."""


class SOutOfRange(ValueError):
    """Current tiredness cannot exceed the total effort under evaluation."""


_INV_TOL = Tolerance(abs_x=1e-12, abs_f=1e-12, max_iter=400)


@dataclass(frozen=True)
class Disutility:
    """Strictly convex cost of cumulative effort within one work block."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    gamma: float = 3.0

    def __post_init__(self) -> None:
        if self.a < 0.0 or self.b < 0.0 or self.c < 0.0:
            raise ValueError("disutility coefficients a, b, c must be nonnegative")
        if self.b + self.c <= 0.0:
            raise ValueError("b + c must be positive so the cost is strictly convex")
        if not self.gamma > 2.0:
            raise ValueError("gamma must exceed 2 (use b for quadratic behavior)")

    def d(self, e: float) -> float:
        """Total cost of working ``e`` hours."""
        if e < 0.0:
            raise NegativeEffort(f"effort must be nonnegative, got {e}")
        value = self.a * e + 0.5 * self.b * e * e
        if self.c > 0.0:
            value += (self.c / self.gamma) * e**self.gamma
        return value

    def dprime(self, e: float) -> float:
        """Marginal cost after ``e`` hours, i.e. the instantaneous cost of
        continuing to work at that point."""
        if e < 0.0:
            raise NegativeEffort(f"effort must be nonnegative, got {e}")
        value = self.a + self.b * e
        if self.c > 0.0:
            value += self.c * e ** (self.gamma - 1.0)
        return value

    def dsecond(self, e: float) -> float:
        """Curvature of the cost; bounded below by ``b``."""
        if e < 0.0:
            raise NegativeEffort(f"effort must be nonnegative, got {e}")
        value = self.b
        if self.c > 0.0:
            value += self.c * (self.gamma - 1.0) * e ** (self.gamma - 2.0)
        return value

    def dprime_inv(self, m: float) -> float:
        """Hours at which the marginal cost reaches ``m``.

        Closed forms cover the pure-quadratic and pure-power cases; the
        mixed family falls back to doubling-plus-bisection.
        """
        if m < self.a - 1e-12:
            raise TargetBelowRange(f"marginal cost {m} is below dprime(0) = {self.a}")
        if m <= self.a:
            return 0.0
        rest = m - self.a
        if self.c == 0.0:
            return rest / self.b
        if self.b == 0.0:
            return (rest / self.c) ** (1.0 / (self.gamma - 1.0))
        return invert_monotone(
            lambda e: self.b * e + self.c * e ** (self.gamma - 1.0), rest, 1.0, _INV_TOL
        )


@dataclass(frozen=True)
class Agent:
    """Worker whose forecast of future marginal cost is pulled toward the
    marginal cost she feels right now.

    ``alpha`` is the weight on the current feeling; alpha = 0 reproduces
    the unbiased worker in every downstream operation. The only behavioral
    state is cumulative effort so far.
    """

    alpha: float
    disutility: Disutility

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must be in [0, 1), got {self.alpha}")

    def perceived_dprime(self, e: float, s: float) -> float:
        """Forecast, made at tiredness ``s``, of the marginal cost at hours ``e``:
        a convex combination of the true slope and the current slope."""
        dis = self.disutility
        return (1.0 - self.alpha) * dis.dprime(e) + self.alpha * dis.dprime(s)

    def perceived_d(self, e: float, s: float) -> float:
        """Forecast total cost of ``e`` hours, made at tiredness ``s``."""
        dis = self.disutility
        return (1.0 - self.alpha) * dis.d(e) + self.alpha * dis.dprime(s) * e

    def perceived_remaining(self, total: float, s: float) -> float:
        """Perceived cost still to be paid to reach ``total`` hours, given
        ``s`` hours already worked.

        Equals perceived_d(total, s) - perceived_d(s, s) algebraically.
        """
        if s > total:
            raise SOutOfRange(f"tiredness {s} exceeds the total effort {total}")
        dis = self.disutility
        return (1.0 - self.alpha) * (dis.d(total) - dis.d(s)) + self.alpha * dis.dprime(s) * (
            total - s
        )
