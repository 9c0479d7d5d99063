#!/usr/bin/env python3
# Flat polynomials and Dirichlet kernels: the sign pattern keeps partial
# sums uniformly small (sup ~ sqrt(n)) while the all-ones pattern grows
# like n^(1-1/p); their ratio grows like n^(1/2-1/p).  Saves a log-log
# plot next to this script.

from pathlib import Path

import numpy as np

from roughkernel import (
    dirichlet_norm,
    dirichlet_p4_exact,
    fit_exponent,
    lp_norm,
    rs_sup_sweep,
    rudin_shapiro,
    sup_norm,
    unconditionality_ratio,
)

signs = rudin_shapiro(16)
print("first 16 signs:", "".join("+" if s > 0 else "-" for s in signs))

# certified sup norms of the sign polynomials for every length up to 4096
values, certs = rs_sup_sweep(4096)
ns = np.arange(1, 4097, dtype=float)
ratios = (values * certs)[1:] / np.sqrt(ns)
print(f"sup / sqrt(n) over n <= 4096: max = {ratios.max():.4f} "
      f"(flatness: never above 5)")

# the all-ones polynomial is the Dirichlet kernel; its fourth norm has a
# closed form, and the FFT norm matches it to machine precision
for n in (8, 64, 1024):
    fft4 = dirichlet_norm(n, 4.0)
    exact = dirichlet_p4_exact(n)
    print(f"n={n:<5d} ||D_n||_4 = {fft4:.10g}   exact = {exact:.10g}")

# one polynomial by hand: sup norm bracketing via oversampled grids
coeffs = rudin_shapiro(256).astype(float)
est = sup_norm(coeffs, oversample=16)
print(f"\nn=256 sign polynomial: grid sup = {est.value:.6f} "
      f"(+ slack {est.slack:.2e}), L4 = {lp_norm(coeffs, 4.0):.6f}")

# ratio growth: fit the exponent over a dyadic range and plot
for p in (4.0, 8.0):
    samples = [(2**j, unconditionality_ratio(2**j, p)) for j in range(4, 13)]
    fit = fit_exponent(samples)
    print(f"p={p:g}: fitted slope {fit.slope:.4f}, target {0.5 - 1.0 / p:.4f}, "
          f"residual {fit.residual:.4f}")
    if p == 4.0:
        plot_fit = fit

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, ax = plt.subplots(figsize=(6, 4))
ax.loglog(plot_fit.ns, plot_fit.values, "o", label="measured ratio, p=4")
xs = np.array(plot_fit.ns, dtype=float)
ax.loglog(xs, plot_fit.cp * xs**plot_fit.slope, "-",
          label=f"fit: n^{plot_fit.slope:.3f}")
ax.set_xlabel("n")
ax.set_ylabel("||D_n||_4 / ||RS_n||_4")
ax.legend()
out = Path(__file__).with_name("ratio_growth.png")
fig.savefig(out, dpi=120)
print(f"\nwrote {out}")
