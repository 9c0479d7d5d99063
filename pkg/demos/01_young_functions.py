#!/usr/bin/env python3
# Young functions: the growth gauges that everything else is calibrated
# against.  Build the two closed-form families plus a tabulated one, look
# at their growth, and watch the schedule pick the pair count n from N.

import numpy as np

from roughkernel import (
    Arc,
    ArcFunction,
    YoungFunction,
    lemma_orlicz_check,
    luxemburg_norm,
    modular,
    schedule_n,
)

half = YoungFunction.power_log(0.5)        # t sqrt(log(e + t))
one = YoungFunction.power_log(1.0)         # t log(e + t)
quotient = YoungFunction.log_quotient()    # t log(e+t) / log(e + log(e+t))

print("growth of the three gauges")
print(f"{'t':>10}  {'power_log 1/2':>14}  {'power_log 1':>12}  {'log_quotient':>13}")
for t in (0.1, 1.0, 10.0, 1e3, 1e6):
    print(f"{t:>10g}  {half.phi(t):>14.6g}  {one.phi(t):>12.6g}  {quotient.phi(t):>13.6g}")

# A tabulated gauge: sample one of the closed forms on a knot grid and
# rebuild it by monotone interpolation of the density.  Useful when the
# gauge arrives as measurements instead of a formula.
knots = np.concatenate([[0.0], np.geomspace(1e-4, 1e7, 400)])
dens = one.density(knots)
dens[0] = 1.0  # density right-limit at 0 for this family
table = YoungFunction.custom_table(knots, dens)
for t in (0.5, 20.0, 1e5):
    print(f"table vs formula at t={t:g}: {table.phi(t):.6g} vs {one.phi(t):.6g}")

# Orlicz size of the simplest mean-zero step function: +1 on the right
# half circle, -1 on the left, written as four quarter arcs.
split = ArcFunction(
    (
        (Arc(np.pi / 4, np.pi / 2), 1.0),
        (Arc(3 * np.pi / 4, np.pi / 2), -1.0),
        (Arc(5 * np.pi / 4, np.pi / 2), -1.0),
        (Arc(7 * np.pi / 4, np.pi / 2), 1.0),
    )
)
print()
for phi in (half, one, quotient):
    m = modular(phi, split)
    k = luxemburg_norm(phi, split)
    print(f"{phi.label:<16} modular = {m:.6f}   luxemburg = {k:.6f}   "
          f"norm<=1+tol when modular<norm: {lemma_orlicz_check(phi, split)}")

# The schedule: n grows with N, but only as fast as the inverse gauge
# allows.  Slowly growing gauges admit larger n at the same N.
print()
print(f"{'N':>12}  {'n (power_log 1/2)':>18}  {'n (log_quotient)':>17}")
for N in (1e3, 1e6, 1e9, 1e12, 2.0**53):
    print(f"{N:>12.4g}  {schedule_n(half, N).n:>18d}  {schedule_n(quotient, N).n:>17d}")
