"""Acceptance gate: one test per shipped guarantee, in a fixed order.

Each test pins the guarantee at desk scale with explicit tolerances; the
measured constants double as regression baselines.  Run with ``pytest -v``
to get one pass/fail line per guarantee.
"""

import json
import math
import time
from functools import lru_cache

import numpy as np

from roughkernel.circle import Arc, ArcFunction, is_even
from roughkernel.logkernel import (
    arc_log_integral,
    _arc_log_tiny,
    build_construction,
    d_delta,
    khat_oscillation,
    m_eval,
    pair_difference_constant,
    profile,
    schedule_construction,
    solve_c,
)
from roughkernel.orlicz import YoungFunction, lemma_orlicz_check, luxemburg_norm
from roughkernel.trignorms import (
    dirichlet_norm,
    dirichlet_p4_exact,
    fit_exponent,
    rs_sup_sweep,
    unconditionality_ratio,
)
from roughkernel.verify_cli import main


@lru_cache(maxsize=None)
def _cons(n: int, log2_N: int):
    return build_construction(n, 2.0**log2_N)


@lru_cache(maxsize=None)
def _prof(n: int, log2_N: int):
    return profile(_cons(n, log2_N), 8192)


def _random_arcfunction(rng) -> ArcFunction:
    count = int(rng.integers(1, 9))
    starts = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=count))
    gaps = np.diff(np.append(starts, starts[0] + 2.0 * math.pi))
    pieces = []
    for start, gap in zip(starts, gaps):
        length = min(gap * rng.uniform(0.05, 0.9), math.pi / 2)
        coeff = float(rng.lognormal(0.0, 2.0)) * (1 if rng.random() < 0.5 else -1)
        pieces.append((Arc(start + length / 2.0, length), coeff))
    return ArcFunction(tuple(pieces))


def test_01_atom_normalization():
    """Every atom transform equals one at its evaluation direction."""
    t0 = time.perf_counter()
    cons = _cons(32, 64)
    for atom, angle in zip(cons.atoms, cons.eval_angles):
        value = m_eval(atom, float(angle))
        assert abs(value - 1.0) <= 1e-8
    assert time.perf_counter() - t0 < 5.0


def test_02_atom_congruence():
    """The scale constant and the separation constant do not depend on k."""
    cons = _cons(32, 64)
    for arc, angle in zip(cons.atom_arcs, cons.eval_angles):
        ck = solve_c(arc, float(angle))
        assert abs(ck - cons.c) <= 1e-10 * cons.c
    assert d_delta(cons).spread <= 1e-10
    for n, log2_N in ((1, 7), (2, 14), (4, 20), (8, 30), (32, 64)):
        sep = d_delta(_cons(n, log2_N))
        assert 0.9 <= abs(sep.D) <= 1.0, (n, log2_N, sep.D)


def test_03_oracle_equivalence():
    """Closed form vs adaptive quadrature, and vs the short-arc expansion."""
    rng = np.random.default_rng(91)
    lengths = 10.0 ** rng.uniform(-6.0, math.log10(math.pi / 2 * 0.999), size=1000)
    centers = rng.uniform(0.0, 2.0 * math.pi, size=1000)
    xis = rng.uniform(0.0, 2.0 * math.pi, size=1000)
    for length, center, xi in zip(lengths, centers, xis):
        arc = Arc(center, length)
        ref = arc_log_integral(arc, xi, method="quadrature", tol=1e-11)
        got = arc_log_integral(arc, xi, method="closed_form")
        assert abs(got - ref) <= 1e-9 * abs(ref)
    # overlap band: arcs short enough for the expansion, long enough for
    # the closed form to stay well conditioned
    lengths = 10.0 ** rng.uniform(-8.0, -6.0, size=200)
    centers = rng.uniform(0.0, 2.0 * math.pi, size=200)
    xis = rng.uniform(0.0, 2.0 * math.pi, size=200)
    for length, center, xi in zip(lengths, centers, xis):
        ref = _arc_log_tiny(center, length, xi)
        got = arc_log_integral(Arc(center, length), xi, method="closed_form")
        assert abs(got - ref) <= 1e-8 * abs(ref)


def test_04_orlicz_modular():
    """Scheduled constructions have order-one Orlicz norm; the norm-vs-
    modular implication holds on random piecewise-constant functions."""
    families = (YoungFunction.power_log(0.5), YoungFunction.log_quotient())
    for phi in families:
        for N in (1e3, 1e6, 1e9):
            cons = schedule_construction(phi, N)
            lux = luxemburg_norm(phi, cons.omega, tol=1e-6)
            assert 0.05 <= lux <= 20.0, (phi.label, N, lux)
            assert lemma_orlicz_check(phi, cons.omega, tol=1e-6)
    rng = np.random.default_rng(7)
    for i in range(200):
        f = _random_arcfunction(rng)
        assert lemma_orlicz_check(families[i % 2], f, tol=1e-6)


def test_05_sup_bound():
    """Grid sup of the majorant stays within 10 (1 + n log n / log N)."""
    t0 = time.perf_counter()
    for n in (8, 16, 32):
        N = 2.0 ** (2 * n)
        prof = profile(build_construction(n, N), 8192)
        bound = 10.0 * (1.0 + n * math.log(n) / math.log(N))
        assert prof.sup_m <= bound, (n, prof.sup_m, bound)
    assert time.perf_counter() - t0 < 60.0


def test_06_pair_cancellation():
    """Weighted pair differences stay bounded and stable under refinement."""
    cons = _cons(16, 48)
    for k in range(1, cons.n + 1):
        coarse = pair_difference_constant(cons, k)
        fine = pair_difference_constant(cons, k, grid_size=16384)
        assert coarse <= 100.0, (k, coarse)
        assert fine <= 100.0, (k, fine)
        assert 0.5 <= fine / coarse <= 2.0, (k, coarse, fine)


def test_07_sign_separation():
    """Perturbations stay below a quarter of the separation constant."""
    assert d_delta(_cons(32, 64)).margin <= 0.25
    margins = [d_delta(_cons(32, log2_N)).margin for log2_N in (32, 48, 64)]
    assert all(a >= b for a, b in zip(margins, margins[1:])), margins


def test_08_rudin_flatness():
    """Certified sup of every sign-sequence polynomial is at most 5 sqrt(n)."""
    t0 = time.perf_counter()
    values, certs = rs_sup_sweep(2**14)
    certified = values * certs
    ns = np.arange(1, 2**14 + 1, dtype=float)
    assert np.all(certified[1:] <= 5.0 * np.sqrt(ns))
    assert time.perf_counter() - t0 < 10.0


def test_09_dirichlet_norms():
    """Fourth norms match the exact formula; normalized p-norms stay flat."""
    for n in (2, 8, 64, 1024):
        exact = dirichlet_p4_exact(n)
        assert abs(dirichlet_norm(n, 4.0) - exact) <= 1e-6 * exact
    for p in (4.0, 8.0):
        ratios = [
            dirichlet_norm(2**j, p) / (2**j) ** (1.0 - 1.0 / p)
            for j in range(6, 15)
        ]
        assert max(ratios) / min(ratios) <= 2.0, (p, ratios)


def test_10_exponent_growth():
    """Unconditionality ratios grow like n^(1/2 - 1/p)."""
    t0 = time.perf_counter()
    for p in (4.0, 8.0):
        samples = [(2**j, unconditionality_ratio(2**j, p)) for j in range(4, 13)]
        fit = fit_exponent(samples)
        assert abs(fit.slope - (0.5 - 1.0 / p)) <= 0.10, (p, fit.slope)
        assert fit.residual <= 0.15, (p, fit.residual)
    assert time.perf_counter() - t0 < 30.0


def test_11_structural_invariants():
    """Evenness, exact cancellation, disjoint support, domination, continuity."""
    cons = _cons(32, 64)
    f = cons.omega
    assert f.even_symmetric and is_even(f, samples=4096)
    assert abs(f.integral()) <= 1e-12
    assert len(f.pieces) == 8 * cons.n
    ordered = sorted((arc.start, arc.length) for arc, _ in f.pieces)
    for (start, length), (nxt, _) in zip(ordered, ordered[1:]):
        assert start + length <= nxt + 1e-15
    prof = _prof(32, 64)
    assert float(np.max(np.abs(prof.khat_values) - prof.m_values)) <= 1e-10 * prof.sup_m
    coarse = khat_oscillation(cons, 8192)
    fine = khat_oscillation(cons, 4 * 8192)
    assert np.all(fine <= coarse + 1e-12)


def test_12_determinism(tmp_path, monkeypatch):
    """Two default verification runs emit byte-identical reports."""
    bodies = []
    for tag in ("first", "second"):
        workdir = tmp_path / tag
        workdir.mkdir()
        monkeypatch.chdir(workdir)
        assert main(["verify"]) == 0
        bodies.append((workdir / "out" / "report.json").read_bytes())
    assert bodies[0] == bodies[1]
    json.loads(bodies[0])  # the artifact is well-formed on top of identical
