"""Safeguarded Newton-Raphson iteration with a complete step trace.

Each update moves to the x-intercept of the tangent line at the current
iterate; the trace records every quantity involved so downstream code
(and tests) can audit the chain.  Iteration never raises: every way it
can end is a :class:`Termination` carried on the trace.  The lone
primitive that does raise is :func:`newton_step`, which refuses to
divide by a vanishing derivative or to build a step from nonfinite
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .expressions import Expression, evaluate

DERIVATIVE_EPSILON = 1e-12


class Termination(str, Enum):
    """Why an iteration stopped, in priority order of detection."""

    NONFINITE_VALUE = "nonfinite-value"
    DERIVATIVE_VANISHED = "derivative-vanished"
    REACHED_TARGET = "reached-target"
    RESIDUAL_SMALL = "residual-small"
    STEP_SMALL = "step-small"
    OVERSHOOT_CLAMPED = "overshoot-clamped"
    MAX_ITERATIONS = "max-iterations"


class NewtonError(Exception):
    """Base class for hard failures of a Newton step."""


class DerivativeVanishedError(NewtonError):
    """|f'(x)| was at or below the derivative epsilon; no step possible."""

    def __init__(self, x: float, df: float, epsilon: float) -> None:
        super().__init__(f"derivative vanished at x = {x!r} (|f'(x)| = {abs(df)!r} <= {epsilon!r})")
        self.x = x
        self.df = df


class NonfiniteValueError(NewtonError):
    """f or f' evaluated to NaN or infinity."""

    def __init__(self, x: float, f: float, df: float) -> None:
        super().__init__(f"nonfinite value at x = {x!r} (f = {f!r}, f' = {df!r})")
        self.x = x
        self.f = f
        self.df = df


@dataclass(frozen=True)
class NewtonStep:
    """One tangent step: ``step = f_k/df_k`` and ``x_next = x_k - step`` exactly."""

    x_k: float
    f_k: float
    df_k: float
    step: float
    x_next: float


@dataclass(frozen=True)
class NewtonTrace:
    """Ordered record of the steps taken, why it stopped, and where it ended.

    ``final_x`` is the last accepted iterate; after an overshoot clamp it
    is the target itself.
    """

    steps: tuple[NewtonStep, ...]
    termination: Termination
    final_x: float


@dataclass(frozen=True)
class StoppingCriteria:
    """Stopping configuration for :func:`newton_iterate`.

    ``tol_f = None`` resolves at iteration start to ``1e-9 * max(1, |f(x0)|)``
    so the residual test is scale-aware.  ``target``, when set, is the
    point the iterates are expected to approach from above.
    """

    target: float | None = None
    tol_x: float = 1e-6
    tol_f: float | None = None
    tol_step: float = 1e-12
    max_iter: int = 100
    derivative_epsilon: float = DERIVATIVE_EPSILON

    def __post_init__(self) -> None:
        if self.target is not None and not math.isfinite(self.target):
            raise ValueError(f"target must be finite, got {self.target!r}")
        if not self.tol_x > 0:
            raise ValueError(f"tol_x must be positive, got {self.tol_x!r}")
        if self.tol_f is not None and not self.tol_f > 0:
            raise ValueError(f"tol_f must be positive, got {self.tol_f!r}")
        if not self.tol_step > 0:
            raise ValueError(f"tol_step must be positive, got {self.tol_step!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter!r}")
        if not self.derivative_epsilon > 0:
            raise ValueError(f"derivative_epsilon must be positive, got {self.derivative_epsilon!r}")


def newton_step(
    f: Expression,
    df: Expression,
    x: float,
    derivative_epsilon: float = DERIVATIVE_EPSILON,
) -> NewtonStep:
    """Take one Newton step from ``x``.

    The returned ``x_next`` is the x-intercept of the tangent drawn at
    ``(x, f(x))``, i.e. the solution of ``0 - f(x) = f'(x) * (x1 - x)``.

    Raises:
        DerivativeVanishedError: if ``|f'(x)| <= derivative_epsilon``.
        NonfiniteValueError: if ``f(x)`` or ``f'(x)`` is NaN or infinite.
    """
    f_k = evaluate(f, x)
    df_k = evaluate(df, x)
    if not (math.isfinite(f_k) and math.isfinite(df_k)):
        raise NonfiniteValueError(x, f_k, df_k)
    if abs(df_k) <= derivative_epsilon:
        raise DerivativeVanishedError(x, df_k, derivative_epsilon)
    step = f_k / df_k
    return NewtonStep(x_k=x, f_k=f_k, df_k=df_k, step=step, x_next=x - step)


def newton_iterate(
    f: Expression,
    df: Expression,
    x0: float,
    stop: StoppingCriteria | None = None,
) -> NewtonTrace:
    """Iterate Newton steps from ``x0`` until a stopping criterion holds.

    Criteria are checked in a fixed priority order so traces are
    deterministic: nonfinite-value, derivative-vanished, reached-target,
    residual-small, step-small, overshoot-clamped, max-iterations.  The
    overshoot clamp fires only when a target is set, the iteration is
    descending towards it from above, and a step lands below it; the
    trace then ends with ``final_x`` clamped to the target.

    All failure modes are reported as terminations on the returned trace;
    this function does not raise.
    """
    stop = stop if stop is not None else StoppingCriteria()
    tol_f = stop.tol_f
    if tol_f is None:
        tol_f = 1e-9 * max(1.0, abs(evaluate(f, x0)))
    descending = stop.target is not None and x0 > stop.target

    steps: list[NewtonStep] = []
    x = x0
    for _ in range(stop.max_iter):
        try:
            step = newton_step(f, df, x, stop.derivative_epsilon)
        except NonfiniteValueError:
            return NewtonTrace(tuple(steps), Termination.NONFINITE_VALUE, x)
        except DerivativeVanishedError:
            return NewtonTrace(tuple(steps), Termination.DERIVATIVE_VANISHED, x)
        steps.append(step)
        if not math.isfinite(step.x_next):
            return NewtonTrace(tuple(steps), Termination.NONFINITE_VALUE, x)
        if stop.target is not None and abs(step.x_next - stop.target) <= stop.tol_x:
            return NewtonTrace(tuple(steps), Termination.REACHED_TARGET, step.x_next)
        f_next = evaluate(f, step.x_next)
        if math.isfinite(f_next) and abs(f_next) <= tol_f:
            return NewtonTrace(tuple(steps), Termination.RESIDUAL_SMALL, step.x_next)
        if abs(step.step) <= stop.tol_step:
            return NewtonTrace(tuple(steps), Termination.STEP_SMALL, step.x_next)
        if descending and step.x_next < stop.target:
            return NewtonTrace(tuple(steps), Termination.OVERSHOOT_CLAMPED, stop.target)
        x = step.x_next
    return NewtonTrace(tuple(steps), Termination.MAX_ITERATIONS, x)
