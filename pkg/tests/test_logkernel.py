"""Log-kernel transform: Clausen sums, arc integrals, atoms, separation.

Reference constants were computed independently with mpmath at 40
decimal digits (Clausen series, split adaptive quadrature of
-log|cos|) and frozen here as literals.
"""

import math

import numpy as np
import pytest

from roughkernel import (
    Arc,
    TINY_ARC_CUTOFF,
    YoungFunction,
    arc_log_integral,
    atom_decay_constant,
    build_construction,
    clausen2,
    d_delta,
    khat,
    khat_oscillation,
    m_eval,
    make_w,
    pair_difference_constant,
    profile,
    schedule_construction,
    solve_c,
)
from roughkernel.errors import DomainError, GeometryError, ParameterError
from roughkernel.logkernel import _arc_log_tiny

# mpmath clsin(2, x)
CLAUSEN_CASES = [
    (math.pi / 2, 0.91596559417721902),  # Catalan's constant
    (math.pi / 3, 1.0149416064096536),
    (1.0, 1.0139591323607685),
    (0.1, 0.33027239888281666),
    (3.0, 0.098026209391301421),
    (6.0, -0.64078266570172321),
]

# mpmath quadrature of -log|cos(t - xi)| over the arc, split at cusps
ARC_CASES = [
    (math.pi / 2, 0.01, 0.0, 0.0629831875543762),
    (0.0, 0.01, 0.0, 4.1666770833829368e-8),
    (0.7, 0.3, 0.1, 0.05925013247512661),
    (2.25, 1e-4, 0.5, 0.00017245903612405713),
    (1.2, 1.5, 2.0, 0.98743164517077455),
]

FULL_CIRCLE = 4.3551721806072043  # 2*pi*log(2)

# atom on an arc of length 1/100 centered at 0, direction pi/2
C_AT_100 = 7.9386212200139415
D_AT_100 = -0.99999867689315556


# -- clausen sum ---------------------------------------------------------------


def test_clausen_frozen_values():
    for x, ref in CLAUSEN_CASES:
        assert abs(clausen2(x) - ref) <= 1e-13


def test_clausen_symmetries():
    xs = np.linspace(0.05, 6.2, 57)
    v = clausen2(xs)
    assert np.allclose(clausen2(-xs), -v, atol=1e-14)
    assert np.allclose(clausen2(xs + 2.0 * math.pi), v, atol=5e-13)
    assert clausen2(0.0) == 0.0
    assert clausen2(math.pi) == 0.0


def test_clausen_vectorized_shape():
    out = clausen2(np.zeros((3, 4)))
    assert out.shape == (3, 4)
    assert isinstance(clausen2(1.0), float)


# -- arc integrals ----------------------------------------------------------------


def test_arc_integral_frozen_values():
    for center, length, xi, ref in ARC_CASES:
        got = arc_log_integral(Arc(center, length), xi)
        assert got == pytest.approx(ref, rel=1e-12)


def test_arc_integral_full_circle():
    total = sum(
        arc_log_integral(Arc(j * 0.5 * math.pi, 0.5 * math.pi), 0.3)
        for j in range(4)
    )
    assert total == pytest.approx(FULL_CIRCLE, rel=1e-13)


def test_arc_integral_shift_invariance():
    # L depends only on center - xi
    ref = arc_log_integral(Arc(0.7, 0.3), 0.1)
    for shift in (1.0, math.pi, 5.5):
        got = arc_log_integral(Arc(0.7 + shift, 0.3), 0.1 + shift)
        assert got == pytest.approx(ref, rel=1e-12)


def test_arc_integral_vectorized_xi():
    arc = Arc(1.0, 0.2)
    xis = np.array([0.0, 0.5, 2.0])
    out = arc_log_integral(arc, xis)
    assert out.shape == (3,)
    for i, xi in enumerate(xis):
        assert out[i] == arc_log_integral(arc, float(xi))


def test_closed_form_vs_quadrature():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        length = 10.0 ** rng.uniform(-6.0, math.log10(0.3))
        arc = Arc(rng.uniform(0.0, 2.0 * math.pi), length)
        xi = rng.uniform(0.0, 2.0 * math.pi)
        a = arc_log_integral(arc, xi, method="closed_form")
        b = arc_log_integral(arc, xi, method="quadrature", tol=1e-11)
        worst = max(worst, abs(a - b) / abs(b))
    assert worst <= 1e-9


def test_short_arc_expansion_matches_closed_form():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(200):
        length = 10.0 ** rng.uniform(-8.0, -6.0)
        center = rng.uniform(0.0, 2.0 * math.pi)
        xi = rng.uniform(0.0, 2.0 * math.pi)
        a = arc_log_integral(Arc(center, length), xi, method="closed_form")
        b = _arc_log_tiny(center, length, xi)
        worst = max(worst, abs(a - b) / abs(b))
    assert worst <= 1e-8


def test_auto_switches_smoothly_at_cutoff():
    assert TINY_ARC_CUTOFF == 1e-8
    for xi in (0.0, 0.3, 1.5707, 2.0):
        above = arc_log_integral(Arc(1.0, 1.0000001e-8), xi)
        below = arc_log_integral(Arc(1.0, 0.9999999e-8), xi)
        assert below == pytest.approx(above, rel=1e-6)


def test_arc_integral_validation():
    arc = Arc(1.0, 0.1)
    with pytest.raises(DomainError):
        arc_log_integral(arc, 0.0, method="simpson")
    with pytest.raises(ParameterError):
        arc_log_integral(arc, 0.0, method="quadrature", tol=1e-15)
    with pytest.raises(ParameterError):
        arc_log_integral(arc, 0.0, method="quadrature", tol=0.5)


# -- single atom -------------------------------------------------------------------


def test_solve_c_frozen():
    c = solve_c(Arc(0.0, 0.01), 0.5 * math.pi)
    assert c == pytest.approx(C_AT_100, rel=1e-12)


def test_atom_transform_at_own_direction():
    c = solve_c(Arc(0.0, 0.01), 0.5 * math.pi)
    w = make_w(Arc(0.0, 0.01), c)
    assert m_eval(w, 0.5 * math.pi) == pytest.approx(1.0, abs=1e-12)
    assert khat(w, 0.5 * math.pi) == pytest.approx(D_AT_100, rel=1e-12)


def test_khat_even_and_dominated():
    c = solve_c(Arc(0.2, 0.01), 0.2 + 0.5 * math.pi)
    w = make_w(Arc(0.2, 0.01), c)
    xs = np.linspace(0.0, 2.0 * math.pi, 257)
    k = khat(w, xs)
    m = m_eval(w, xs)
    assert np.allclose(khat(w, xs + math.pi), k, rtol=0, atol=1e-12)
    assert np.all(np.abs(k) <= m + 1e-12)
    assert np.all(m >= 0.0)


def test_khat_linear_in_the_function():
    c = solve_c(Arc(0.2, 0.01), 0.2 + 0.5 * math.pi)
    w = make_w(Arc(0.2, 0.01), c)
    xs = np.array([0.1, 1.0, 2.5])
    assert np.allclose(khat(w.scaled(3.0), xs), 3.0 * khat(w, xs), rtol=1e-13)


# -- full constructions ---------------------------------------------------------------


def test_build_construction_shape():
    cons = build_construction(4, 2.0**30)
    assert cons.n == 4 and cons.N == 2.0**30
    assert len(cons.atoms) == 8
    assert len(cons.omega.pieces) == 32
    assert len(cons.atom_arcs) == 8 and len(cons.guard_arcs) == 8
    assert cons.c > 0.0
    assert cons.eval_angles.shape == (8,)
    assert cons.even_direction_angles.shape == (4,)
    # snapped directions stay within one grid step of the exact angles
    assert np.max(np.abs(cons.eval_angles - cons.dirs.angles)) <= 2.0**-50


def test_construction_exact_congruence():
    # the atom height and the diagonal transform value agree bitwise
    # across k: the orbit of every base arc materializes exactly
    cons = build_construction(8, 2.0**40)
    for k in range(16):
        assert solve_c(cons.atom_arcs[k], float(cons.eval_angles[k])) == cons.c
    sep = d_delta(cons)
    assert sep.spread == 0.0
    assert 0.9 <= abs(sep.D) <= 1.0


def test_construction_normalized_atoms():
    cons = build_construction(4, 2.0**30)
    for k in range(8):
        assert m_eval(cons.atoms[k], float(cons.eval_angles[k])) == pytest.approx(
            1.0, abs=1e-10
        )


def test_construction_structure():
    cons = build_construction(4, 2.0**30)
    assert cons.omega.integral() == 0.0
    assert cons.omega.even_symmetric
    assert np.array_equal(np.abs(cons.signs), np.ones(4))


def test_build_construction_infeasible_scale():
    # arcs of length 1/150 collide with the quarter-turn orbits at n=16
    with pytest.raises(GeometryError):
        build_construction(16, 150.0)


def test_build_construction_custom_signs():
    cons = build_construction(2, 2.0**20, signs=[1.0, -1.0])
    assert np.array_equal(cons.signs, [1.0, -1.0])
    with pytest.raises(DomainError):
        build_construction(2, 2.0**20, signs=[1.0, 0.5])


def test_schedule_construction():
    cons = schedule_construction(YoungFunction.power_log(0.5), 1e6)
    assert cons.n == 3
    assert len(cons.omega.pieces) == 24


# -- separation ------------------------------------------------------------------------


def test_d_delta_margin_small():
    cons = build_construction(16, 2.0**40)
    sep = d_delta(cons)
    assert sep.delta.shape == (16,)
    assert 0.0 < sep.margin <= 0.25
    assert sep.D < 0.0


def test_d_delta_margin_decreases_with_scale():
    margins = [d_delta(build_construction(8, N)).margin for N in (2.0**24, 2.0**48)]
    assert margins[1] < margins[0]


# -- profile and derived constants --------------------------------------------------------


def test_profile_dominated_and_consistent():
    cons = build_construction(4, 2.0**30)
    prof = profile(cons, 512)
    assert prof.grid.shape == (512,)
    assert np.all(np.abs(prof.khat_values) <= prof.m_values + 1e-10)
    # at each direction the own atom contributes exactly 1 to m(omega)
    sampled = m_eval(cons.omega, cons.eval_angles)
    assert np.all(sampled >= 1.0 - 1e-10)
    assert 0.0 < prof.sup_m
    assert prof.sup_m_gap >= 0.0
    assert prof.separation.D == d_delta(cons).D
    with pytest.raises(ParameterError):
        profile(cons, 32)


def test_atom_decay_constant():
    cons = build_construction(4, 2.0**30)
    v = atom_decay_constant(cons, 1, 2048)
    assert 0.0 < v < 10.0
    with pytest.raises(ParameterError):
        atom_decay_constant(cons, 0, 2048)
    with pytest.raises(ParameterError):
        atom_decay_constant(cons, 9, 2048)
    single = build_construction(1, 2.0**20)
    with pytest.raises(ParameterError):
        atom_decay_constant(single, 1, 2048)


def test_pair_difference_constant():
    cons = build_construction(4, 2.0**30)
    vals = [pair_difference_constant(cons, k, 2048) for k in range(1, 5)]
    assert all(0.0 < v <= 100.0 for v in vals)
    with pytest.raises(ParameterError):
        pair_difference_constant(cons, 5, 2048)


def test_khat_oscillation_nonneg():
    cons = build_construction(4, 2.0**30)
    osc = khat_oscillation(cons, 1024)
    assert osc.shape == (4,)
    assert np.all(osc >= 0.0)
