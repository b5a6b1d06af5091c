"""Trapezoid quadrature on a Newton-Raphson partition.

Approximates the integral of an increasing function f over [a, b], where
f has its root at the lower limit a, by running Newton's method from
x0 = b towards a and summing the trapezoid panels spanned by consecutive
iterates.  Each panel's width is the Newton step f(x_k)/f'(x_k), which
equals |x_k - x_{k+1}| by construction, and its parallel sides are
f(x_k) and f(x_{k+1}):

    area_k = 1/2 * (f(x_k)/f'(x_k)) * (f(x_k) + f(x_{k+1}))

The final panel is nearly a triangle because f at the last iterate is
close to f(a) = 0.  The sliver between the last iterate and a is ignored
by default and can be covered by an optional closing triangle.

Because the partition is fixed by the Newton steps (the panels near b
never refine as tolerances shrink), the rule carries an irreducible
chord-above-curve excess on convex integrands; see the package README
for measured figures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .expressions import Expression, differentiate, evaluate, simplify
from .newton import (
    DERIVATIVE_EPSILON,
    DerivativeVanishedError,
    NewtonTrace,
    NonfiniteValueError,
    StoppingCriteria,
    Termination,
    newton_iterate,
)

VALIDATION_SAMPLES = 64


class QuadStatus(str, Enum):
    OK = "ok"
    CLAMPED = "clamped"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class Interval:
    """Integration bounds with ``a < b``; ``a`` is where the root lives."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"interval bounds must be finite, got [{self.a!r}, {self.b!r}]")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a!r}, {self.b!r}]")


@dataclass(frozen=True)
class NrQuadSettings:
    """Knobs for :func:`nr_integrate`.

    Stopping follows proximity to ``a`` (``tol_x``) or a small residual
    (``tol_f``; ``None`` means scale-aware ``1e-9 * max(1, |f(b)|)``).
    ``closing_triangle`` appends ``1/2 * (x_last - a) * f(x_last)`` for the
    leftover sliver.  ``validate`` runs :func:`validate_problem` first.
    """

    tol_x: float = 1e-6
    tol_f: float | None = None
    max_iter: int = 100
    closing_triangle: bool = False
    validate: bool = True

    def __post_init__(self) -> None:
        if not self.tol_x > 0:
            raise ValueError(f"tol_x must be positive, got {self.tol_x!r}")
        if self.tol_f is not None and not self.tol_f > 0:
            raise ValueError(f"tol_f must be positive, got {self.tol_f!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter!r}")


@dataclass(frozen=True)
class Panel:
    """One trapezoid panel anchored at the iterate ``x_k``."""

    x_k: float
    width: float
    area: float


@dataclass(frozen=True)
class QuadResult:
    """Outcome of :func:`nr_integrate`.

    ``value`` is the panel areas plus ``closing_area``, summed in
    construction order.  ``residual_gap`` is ``|x_last - a|``, the width
    of the uncovered sliver (zero after a clamp).
    """

    value: float
    panels: tuple[Panel, ...]
    closing_area: float
    residual_gap: float
    trace: NewtonTrace
    status: QuadStatus


@dataclass(frozen=True)
class ValidationReport:
    """Sampled precondition checks; heuristic, not a proof."""

    monotone_increasing: bool
    root_at_a: bool
    derivative_positive_at_b: bool
    samples: int
    messages: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.monotone_increasing and self.root_at_a and self.derivative_positive_at_b


class ValidationError(Exception):
    """Raised when validation is enabled and the problem fails its checks."""

    def __init__(self, report: ValidationReport) -> None:
        super().__init__("; ".join(report.messages) or "validation failed")
        self.report = report


def panel_area(f_k: float, df_k: float, f_next: float) -> float:
    """Area of one trapezoid panel: ``1/2 * (f_k/df_k) * (f_k + f_next)``.

    The caller guarantees ``df_k != 0``.
    """
    return 0.5 * (f_k / df_k) * (f_k + f_next)


def validate_problem(f: Expression, interval: Interval) -> ValidationReport:
    """Check, by sampling, that the problem fits the rule's hypotheses.

    Samples f at 64 equally spaced points and reports whether the values
    are nondecreasing, whether |f(a)| is small relative to |f(b)|, and
    whether f'(b) > 0.  Findings are returned, never raised.
    """
    a, b = interval.a, interval.b
    h = (b - a) / (VALIDATION_SAMPLES - 1)
    xs = [a + i * h for i in range(VALIDATION_SAMPLES - 1)] + [b]
    values = [evaluate(f, x) for x in xs]
    messages: list[str] = []

    monotone = True
    for i in range(len(values) - 1):
        if not (math.isfinite(values[i]) and math.isfinite(values[i + 1])):
            monotone = False
            bad = xs[i] if not math.isfinite(values[i]) else xs[i + 1]
            messages.append(f"f is not finite at sampled point x = {bad!r}")
            break
        if values[i + 1] < values[i]:
            monotone = False
            messages.append(
                f"f is not nondecreasing: f({xs[i]!r}) = {values[i]!r} "
                f"> f({xs[i + 1]!r}) = {values[i + 1]!r}"
            )
            break

    f_a, f_b = values[0], values[-1]
    root_at_a = math.isfinite(f_a) and abs(f_a) <= 1e-6 * max(1.0, abs(f_b))
    if not root_at_a:
        messages.append(f"f(a) = {f_a!r} is not negligible; the rule needs the root at a")

    df_b = evaluate(simplify(differentiate(f)), b)
    derivative_positive = math.isfinite(df_b) and df_b > 0.0
    if not derivative_positive:
        messages.append(f"f'(b) = {df_b!r} is not positive")

    return ValidationReport(
        monotone_increasing=monotone,
        root_at_a=root_at_a,
        derivative_positive_at_b=derivative_positive,
        samples=VALIDATION_SAMPLES,
        messages=tuple(messages),
    )


def nr_integrate(
    f: Expression,
    interval: Interval,
    settings: NrQuadSettings | None = None,
) -> QuadResult:
    """Integrate f over the interval using the Newton-partition rule.

    Runs :func:`newton_iterate` from ``x0 = b`` with target ``a``,
    accumulating one trapezoid panel per step.  If the final iterate was
    clamped to ``a`` the last panel uses ``f(a)`` as its far side so the
    rule never samples outside the interval.

    Raises:
        DerivativeVanishedError / NonfiniteValueError: hard failures at
            the start point or during iteration.
        ValidationError: when ``settings.validate`` and the sampled checks
            fail.  A vanishing or nonfinite derivative at ``b`` is
            detected before validation, so it wins over a validation
            failure when both apply.

    Running out of iterations is not an error: the result then carries
    status ``budget-exhausted``.
    """
    settings = settings if settings is not None else NrQuadSettings()
    a, b = interval.a, interval.b
    df = simplify(differentiate(f))

    f_b = evaluate(f, b)
    df_b = evaluate(df, b)
    if not (math.isfinite(f_b) and math.isfinite(df_b)):
        raise NonfiniteValueError(b, f_b, df_b)
    if abs(df_b) <= DERIVATIVE_EPSILON:
        raise DerivativeVanishedError(b, df_b, DERIVATIVE_EPSILON)

    if settings.validate:
        report = validate_problem(f, interval)
        if not report.passed:
            raise ValidationError(report)

    stop = StoppingCriteria(
        target=a,
        tol_x=settings.tol_x,
        tol_f=settings.tol_f,
        max_iter=settings.max_iter,
    )
    trace = newton_iterate(f, df, b, stop)
    if trace.termination is Termination.DERIVATIVE_VANISHED:
        raise DerivativeVanishedError(trace.final_x, evaluate(df, trace.final_x), DERIVATIVE_EPSILON)
    if trace.termination is Termination.NONFINITE_VALUE:
        raise NonfiniteValueError(trace.final_x, evaluate(f, trace.final_x), evaluate(df, trace.final_x))

    clamped = trace.termination is Termination.OVERSHOOT_CLAMPED
    f_final = evaluate(f, a) if clamped else evaluate(f, trace.final_x)

    panels: list[Panel] = []
    value = 0.0
    for i, step in enumerate(trace.steps):
        f_next = trace.steps[i + 1].f_k if i + 1 < len(trace.steps) else f_final
        area = panel_area(step.f_k, step.df_k, f_next)
        panels.append(Panel(x_k=step.x_k, width=step.step, area=area))
        value += area

    closing_area = 0.0
    if settings.closing_triangle:
        closing_area = 0.5 * (trace.final_x - a) * f_final
        value += closing_area

    if clamped:
        status = QuadStatus.CLAMPED
    elif trace.termination is Termination.MAX_ITERATIONS:
        status = QuadStatus.BUDGET_EXHAUSTED
    else:
        status = QuadStatus.OK

    return QuadResult(
        value=value,
        panels=tuple(panels),
        closing_area=closing_area,
        residual_gap=abs(trace.final_x - a),
        trace=trace,
        status=status,
    )
