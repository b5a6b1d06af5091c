"""Error comparison: the Newton-partition rule against the classical rules.

Reproduces the worked-example table (three subintervals for the baseline
rules) and then shows how the classical rules converge as the partition
refines while the Newton-partition rule does not.

Run:  python demos/04_method_comparison.py
"""

import math

from nrquad import (
    Interval,
    NrQuadSettings,
    error_stats,
    left_riemann,
    midpoint,
    nr_integrate,
    parse,
    reference_integral,
    right_riemann,
    simpson,
    trapezoid,
)

SOURCE = "2*x^2+3*x+1"
INTERVAL = Interval(-0.5, 1.0)

f = parse(SOURCE)
reference = reference_integral(f, INTERVAL)

print(f"Integrand: {SOURCE} on [{INTERVAL.a}, {INTERVAL.b}], reference = {reference}")
print()
print("Method comparison (baselines with n = 3 subintervals):")
print(f"  {'method':<14}  {'value':>9}  {'abs error':>9}  {'rel error %':>11}")

rows = [
    ("nr (tol 0.01)", nr_integrate(f, INTERVAL, NrQuadSettings(tol_x=0.01)).value),
    ("midpoint", midpoint(f, INTERVAL, 3)),
    ("trapezoid", trapezoid(f, INTERVAL, 3)),
    ("left-riemann", left_riemann(f, INTERVAL, 3)),
    ("right-riemann", right_riemann(f, INTERVAL, 3)),
]
for name, value in rows:
    stats = error_stats(value, reference)
    print(f"  {name:<14}  {value:>9.6f}  {stats.abs_error:>9.6f}  {stats.rel_error_pct:>11.4f}")
print()
print("(Simpson needs an even subinterval count; with n = 2 it is already")
print(f" exact on this quadratic: {simpson(f, INTERVAL, 2)})")
print()

print("Refining the partition helps the classical rules, not the Newton rule:")
print(f"  {'n':>4}  {'midpoint %':>10}  {'trapezoid %':>11}  {'simpson %':>10}")
for n in (2, 4, 8, 16, 32):
    m = error_stats(midpoint(f, INTERVAL, n), reference).rel_error_pct
    t = error_stats(trapezoid(f, INTERVAL, n), reference).rel_error_pct
    s = error_stats(simpson(f, INTERVAL, n), reference).rel_error_pct
    print(f"  {n:>4}  {m:>10.4f}  {t:>11.4f}  {s:>10.4f}")
nr_fine = nr_integrate(f, INTERVAL, NrQuadSettings(tol_x=1e-10, closing_triangle=True)).value
print(f"  nr at tol_x = 1e-10: {error_stats(nr_fine, reference).rel_error_pct:.4f} %")
print()

print("Convergence orders on exp(x) over [0, 1] (error ratio when doubling n):")
exp = parse("exp(x)")
unit = Interval(0.0, 1.0)
exact = math.e - 1.0
for name, rule in (("midpoint", midpoint), ("trapezoid", trapezoid), ("simpson", simpson)):
    e8 = abs(rule(exp, unit, 8) - exact)
    e16 = abs(rule(exp, unit, 16) - exact)
    print(f"  {name:<10} errors {e8:.3e} -> {e16:.3e}, ratio {e8 / e16:.2f}")
