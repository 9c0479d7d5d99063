#!/usr/bin/env python3
# Anatomy of one counterexample function: 2n atoms on short arcs near a
# lattice direction family, alternating signs inside each pair, the whole
# thing even and exactly mean-zero.

import math

from roughkernel import build_construction, schedule_construction, YoungFunction

n, N = 8, 2.0**30
cons = build_construction(n, N)

print(f"requested n={n}, N={N:g}")
print(f"direction family: s={cons.dirs.s}, t_start={cons.dirs.t_start}, "
      f"t_step={cons.dirs.t_step}")
print(f"window for the directions: [{cons.dirs.angles.min():.6f}, "
      f"{cons.dirs.angles.max():.6f}] rad")

# each atom is four arcs of width 1/N with signs -c, +c, -c, +c; the scale
# c makes the transform equal one at the atom's evaluation direction
print(f"\nscale constant c = {cons.c:.9g}  (~ N/log N = {N / math.log(N):.4g})")
print(f"atom arc width 1/N = {1.0 / N:.3g}, guard width = {cons.guard_arcs[0].length:.3g}")

omega = cons.omega
print(f"\nassembled function: {len(omega.pieces)} arcs "
      f"(8n = {8 * n}), support measure {omega.support_measure():.6g}")
print(f"integral = {omega.integral()!r}  (cancellation is exact in floating point)")
print(f"even by piece matching: {omega.even_symmetric}")

# evaluation directions sit a quarter turn from the atom centers; the
# atom k transform is normalized there
from roughkernel import m_eval

values = [m_eval(cons.atoms[k], float(cons.eval_angles[k])) for k in range(2 * n)]
print(f"\nm(w_k) at its own direction, worst deviation from 1: "
      f"{max(abs(v - 1.0) for v in values):.3e}")

# the schedule variant derives n from N through the gauge
phi = YoungFunction.power_log(0.5)
for N_sched in (1e3, 1e6, 1e9):
    sched = schedule_construction(phi, N_sched)
    print(f"schedule at N={N_sched:.4g}: n={sched.n}, pieces={len(sched.omega.pieces)}")
