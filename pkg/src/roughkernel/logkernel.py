"""Log-kernel transforms of arc-supported step functions.

For a step function f on the circle and a direction angle xi, the
transform studied here is

    (K f)(xi)  =  integral of  f(theta) * log(1 / |cos(theta - xi)|)  d theta,

together with its absolute-value companion m(f)(xi), the same integral
against |f|.  For piecewise-constant f everything reduces to

    L(arc, xi)  =  integral over the arc of  -log|cos(theta - xi)|  d theta,

which this module evaluates along three independent routes:

* a closed form built on the Clausen function Cl2, with difference
  formulas anchored at the cusps and the smooth points of Cl2 so that
  the result stays *relatively* accurate even when the arc is short
  and nearly parallel to the direction (where L ~ length^3 / 24 and a
  naive Cl2 difference loses every significant digit);
* short-arc series expansions used automatically below a cutoff length;
* adaptive quadrature with the integrable log singularity removed
  analytically, kept as a slow independent control.

The second half of the module assembles the sign-alternating atoms into
the full construction and measures the quantities the estimates are
about: the diagonal transform value D, the off-diagonal perturbations
delta_k, decay and pair-cancellation constants, and grid profiles.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import zeta

from .circle import (
    TWO_PI,
    WINDOW_HI,
    WINDOW_LO,
    Arc,
    ArcFunction,
    Construction,
    DirectionFamily,
    assemble_omega,
    build_directions,
    chord_dist,
    circ_dist,
    make_w,
    reduce_angle,
    validate_signs,
)
from .errors import DomainError, GeometryError, NumericError, ParameterError
from .orlicz import ScheduleParams, YoungFunction, schedule_n

__all__ = [
    "TINY_ARC_CUTOFF",
    "clausen2",
    "arc_log_integral",
    "khat",
    "m_eval",
    "solve_c",
    "build_construction",
    "schedule_construction",
    "SeparationData",
    "d_delta",
    "atom_decay_constant",
    "pair_difference_constant",
    "KernelProfile",
    "profile",
    "khat_oscillation",
]

_LOG2 = math.log(2.0)

# below this arc length the auto route switches to the short-arc series
TINY_ARC_CUTOFF = 1e-8

# guard arcs around each direction have length 1/(100 n)
GUARD_SCALE = 100.0


def _series_constants():
    # Cl2(x) = x - x log|x| + sum_m a_m x^(2m+1)          near even multiples of pi
    # Cl2(pi + w) = -w log 2 + sum_m c_m w^(2m+1)          near odd multiples of pi
    # with a_m = zeta(2m) / (m (2m+1) (4 pi^2)^m) and
    #      c_m = (1 - 4^-m) zeta(2m) / (m (2m+1) pi^(2m)).
    # Both series are used for |offset| <= pi/2 + 1/4, where 16 resp. 34
    # terms push the truncation error below 1e-22.
    m_cusp, m_pi = 16, 34
    m = np.arange(1, max(m_cusp, m_pi) + 1, dtype=float)
    z = zeta(2.0 * m)
    a = z / (m * (2.0 * m + 1.0) * (4.0 * math.pi**2) ** m)
    c = (1.0 - 0.25**m) * z / (m * (2.0 * m + 1.0) * math.pi ** (2.0 * m))
    return a[:m_cusp], c[:m_pi]


_A_CUSP, _C_PI = _series_constants()


def _odd_poly(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    # sum_m coeffs[m-1] * x^(2m+1), Horner in x^2
    x2 = x * x
    p = np.zeros_like(x)
    for cm in coeffs[::-1]:
        p = p * x2 + cm
    return p * x * x2


def _cl2_cusp_series(y: np.ndarray) -> np.ndarray:
    # Cl2 on [0, ~1.9]: the x log x part plus the analytic remainder
    with np.errstate(divide="ignore", invalid="ignore"):
        xlog = np.where(y > 0.0, y * np.log(np.where(y > 0.0, y, 1.0)), 0.0)
    return y - xlog + _odd_poly(_A_CUSP, y)


def _cl2_pi_series(w: np.ndarray) -> np.ndarray:
    # Cl2(pi + w) for |w| <= ~1.9
    return -w * _LOG2 + _odd_poly(_C_PI, w)


def clausen2(x):
    """Clausen function Cl2(x) = sum_{k>=1} sin(k x) / k^2 (abs err < 1e-14)."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    r = arr % TWO_PI
    r = np.where(r >= TWO_PI, 0.0, r)
    sign = np.where(r > math.pi, -1.0, 1.0)
    y = np.where(r > math.pi, TWO_PI - r, r)  # fold to [0, pi] using oddness
    out = np.where(
        y <= 0.5 * math.pi,
        _cl2_cusp_series(np.minimum(y, 0.5 * math.pi)),
        _cl2_pi_series(np.maximum(y, 0.5 * math.pi) - math.pi),
    )
    out = sign * out
    if scalar:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# stable building blocks for Cl2 differences over short spans


def _xlogx_diff(s, t, d):
    """t log|t| - s log|s| for t = s + d, d > 0, without cancellation."""
    out = np.empty_like(s)
    pos = s > 0.0
    neg = t < 0.0
    mid = ~(pos | neg)  # s <= 0 <= t: the two terms reinforce, evaluate directly
    if pos.any():
        sp, tp = s[pos], t[pos]
        out[pos] = d * np.log(tp) + sp * np.log1p(d / sp)
    if neg.any():
        sn, tn = s[neg], t[neg]
        out[neg] = d * np.log(-sn) + (-tn) * np.log1p(d / (-tn))
    if mid.any():
        sm, tm = s[mid], t[mid]
        with np.errstate(divide="ignore", invalid="ignore"):
            a = np.where(tm > 0.0, tm * np.log(np.where(tm > 0.0, tm, 1.0)), 0.0)
            b = np.where(sm < 0.0, sm * np.log(np.where(sm < 0.0, -sm, 1.0)), 0.0)
        out[mid] = a - b
    return out


def _odd_poly_diff(coeffs, s, t, d):
    """sum_m coeffs[m-1] * (t^(2m+1) - s^(2m+1)) for t = s + d, stably.

    Same-sign endpoints use the factored form d * sum_i t^i s^(2m-i)
    whose terms all share one sign; endpoints straddling zero reinforce
    and are evaluated directly.
    """
    out = np.empty_like(s)
    same = (s > 0.0) | (t < 0.0)
    if same.any():
        ss, tt = s[same], t[same]
        s2 = ss * ss
        t2 = tt * tt
        t_odd = tt  # t^(2m-1) at m = 1
        q = np.ones_like(ss)  # q_0 = (t - s)/d = 1
        acc = np.zeros_like(ss)
        for cm in coeffs:
            # q_m = t^(2m) + s t^(2m-1) + s^2 q_(m-1), all terms of one sign
            q = t_odd * tt + ss * t_odd + s2 * q
            acc += cm * q
            t_odd = t_odd * t2
        out[same] = d * acc
    mix = ~same
    if mix.any():
        out[mix] = _odd_poly(coeffs, t[mix]) - _odd_poly(coeffs, s[mix])
    return out


def _arc_log_closed(center: float, length: float, xi):
    """Closed form for the arc integral of -log|cos(theta - xi)|.

    Substituting t = 2(theta - xi) + pi gives
        L = length*log 2 + [Cl2(t1 + 2*length) - Cl2(t1)] / 2,
    with the cusps of Cl2 (even multiples of pi) at the perpendicular
    directions and its smooth -log 2 slope points (odd multiples) at the
    parallel ones.  Short spans are differenced against the nearest
    anchor; around odd multiples the length*log2 term cancels the series
    linear term exactly, which is what preserves relative accuracy when
    the integral is of size length^3.
    """
    xis = np.asarray(xi, dtype=float)
    scalar = xis.ndim == 0
    d = 2.0 * length  # exact in binary floating point
    t1 = 2.0 * ((center - 0.5 * length) - xis) + math.pi
    if d >= 0.5:
        out = length * _LOG2 + 0.5 * (clausen2(t1 + d) - clausen2(t1))
    else:
        t1r = t1 % TWO_PI
        t1r = np.where(t1r >= TWO_PI, 0.0, t1r)
        idx = np.rint((t1r + 0.5 * d) / math.pi)  # nearest anchor: 0, pi, or 2*pi
        s = t1r - idx * math.pi
        t = s + d
        odd = (idx.astype(np.int64) % 2) == 1
        out = np.empty_like(t1r)
        if odd.any():
            out[odd] = 0.5 * _odd_poly_diff(_C_PI, s[odd], t[odd], d)
        ev = ~odd
        if ev.any():
            out[ev] = length * _LOG2 + 0.5 * (
                d - _xlogx_diff(s[ev], t[ev], d) + _odd_poly_diff(_A_CUSP, s[ev], t[ev], d)
            )
    if scalar:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# short-arc series route


def _endpoint_series(h: np.ndarray) -> np.ndarray:
    # integral of -log(sin v) over [0, h] for 0 <= h << 1
    with np.errstate(divide="ignore", invalid="ignore"):
        lead = np.where(h > 0.0, h * (1.0 - np.log(np.where(h > 0.0, h, 1.0))), 0.0)
    return lead + h**3 / 18.0 + h**5 / 900.0


def _log_sinc(v: np.ndarray) -> np.ndarray:
    # -log(sin v / v) on (0, pi), series below 1e-4 to dodge 1-ulp ratios
    v = np.asarray(v, dtype=float)
    small = v < 1e-4
    vs = np.where(small, 1.0, v)
    out = np.where(small, v * v / 6.0 + v**4 / 180.0, np.log(vs / np.sin(vs)))
    return out


def _arc_log_tiny(center: float, length: float, xi):
    """Series route for arcs shorter than ~1e-8, relatively accurate throughout.

    Work in the signed offset v of theta - xi from the nearest
    perpendicular direction, where the integrand is -log|sin v|.
    """
    xis = np.asarray(xi, dtype=float)
    scalar = xis.ndim == 0
    vc = (center - xis) % math.pi - 0.5 * math.pi
    half = 0.5 * length
    v1 = vc - half
    v2 = vc + half
    straddle = (v1 <= 0.0) & (v2 >= 0.0)
    # mirror one-sided arcs onto the positive side: 0 < a < b
    flip = v2 < 0.0
    a = np.where(flip, -v2, v1)
    b = np.where(flip, -v1, v2)
    out = np.empty_like(vc)

    if straddle.any():
        out[straddle] = _endpoint_series(v2[straddle]) + _endpoint_series(-v1[straddle])

    near = ~straddle & (b <= 0.5)
    if near.any():
        an, bn = a[near], b[near]
        vm = 0.5 * (an + bn)
        exact = length * (1.0 - np.log(bn)) - an * np.log1p(length / an)
        out[near] = exact + length * _log_sinc(vm)

    far = ~straddle & (b > 0.5)
    if far.any():
        vm = 0.5 * (a[far] + b[far])
        r = 0.5 * math.pi - vm
        # -log(sin vm) = -log(cos r), stable arbitrarily close to the
        # parallel direction where the integral is ~ length^3 / 24
        g = -np.log1p(-2.0 * np.sin(0.5 * r) ** 2)
        out[far] = length * g + (length**3 / 24.0) / np.sin(vm) ** 2

    if scalar:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# quadrature control route


def _neg_log_sin(v: float) -> float:
    # -log(sin v) on (0, pi), stable near v = pi/2
    if abs(v - 0.5 * math.pi) < 0.3:
        r = 0.5 * math.pi - v
        return -math.log1p(-2.0 * math.sin(0.5 * r) ** 2)
    return -math.log(math.sin(v))


def _quad_segment(a: float, b: float, tol: float) -> float:
    """Integral of -log(sin v) over [a, b], 0 <= a < b < pi."""
    total = 0.0
    if a == 0.0:
        # peel off the integrable singularity exactly, quadrature gets
        # only the smooth remainder -log(sin v / v)
        total += float(b * (1.0 - math.log(b)))
        integrand = lambda v: float(_log_sinc(np.asarray(v)))
    else:
        integrand = _neg_log_sin
    res = quad(integrand, a, b, epsabs=0.0, epsrel=tol, limit=500, full_output=True)
    if len(res) > 3:
        val, err, info, msg = res[:4]
        raise NumericError(
            f"quadrature on [{a:g}, {b:g}] did not converge: {msg.strip()} "
            f"(subdivisions={info['last']}, est. error={err:g})"
        )
    val, err, info = res
    total += float(val)
    return total


def _arc_log_quad_scalar(center: float, length: float, xi: float, tol: float) -> float:
    vc = (center - xi) % math.pi - 0.5 * math.pi
    v1 = vc - 0.5 * length
    v2 = vc + 0.5 * length
    if v1 < 0.0 < v2:
        segs = [(0.0, -v1), (0.0, v2)]
    elif v2 <= 0.0:
        segs = [(-v2, -v1)]
    else:
        segs = [(v1, v2)]
    total = 0.0
    for lo, hi in segs:
        if hi > lo:
            total += _quad_segment(lo, hi, tol)
    return total


def arc_log_integral(arc: Arc, xi, method: str = "auto", tol: float = 1e-10):
    """Integral of -log|cos(theta - xi)| over the arc; xi scalar or ndarray.

    ``method``: "closed_form" (Clausen-based), "quadrature" (adaptive,
    control route), or "auto" (closed form, switching to the short-arc
    series below TINY_ARC_CUTOFF).  ``tol`` is the quadrature relative
    target and is ignored by the analytic routes.
    """
    if method == "closed_form":
        return _arc_log_closed(arc.center, arc.length, xi)
    if method == "auto":
        if arc.length < TINY_ARC_CUTOFF:
            return _arc_log_tiny(arc.center, arc.length, xi)
        return _arc_log_closed(arc.center, arc.length, xi)
    if method == "quadrature":
        if not (1e-13 <= tol <= 1e-2):
            raise ParameterError(f"quadrature tol must lie in [1e-13, 1e-2], got {tol!r}")
        xis = np.asarray(xi, dtype=float)
        if xis.ndim == 0:
            return _arc_log_quad_scalar(arc.center, arc.length, float(xis), tol)
        flat = [_arc_log_quad_scalar(arc.center, arc.length, x, tol) for x in xis.ravel()]
        return np.array(flat).reshape(xis.shape)
    raise DomainError(f"unknown method {method!r}; use closed_form, quadrature, or auto")


# ---------------------------------------------------------------------------
# transforms of step functions


def khat(f: ArcFunction, xi, method: str = "auto"):
    """Transform (K f)(xi) = sum of coeff * L(arc, xi) over the pieces of f.

    Summation runs in the stored piece order, so results are bitwise
    reproducible.  The transform is meaningful as a kernel profile only
    for even, mean-zero f; anything else triggers a warning.
    """
    if f.pieces and not (f.even_symmetric and f.mean_zero):
        warnings.warn(
            "khat input is not an even mean-zero step function; "
            "the result is not a rough-kernel profile",
            stacklevel=2,
        )
    xis = np.asarray(xi, dtype=float)
    acc = np.zeros(xis.shape, dtype=float)
    for arc, coeff in f.pieces:
        acc = acc + coeff * arc_log_integral(arc, xis, method)
    if np.ndim(xi) == 0:
        return float(acc)
    return acc


def m_eval(f: ArcFunction, xi, method: str = "auto"):
    """Majorant m(f)(xi): the same integral against |f|."""
    xis = np.asarray(xi, dtype=float)
    acc = np.zeros(xis.shape, dtype=float)
    for arc, coeff in f.pieces:
        acc = acc + abs(coeff) * arc_log_integral(arc, xis, method)
    if np.ndim(xi) == 0:
        return float(acc)
    return acc


def solve_c(base_arc: Arc, e_angle: float, method: str = "auto") -> float:
    """Height c making the atom on this arc satisfy m(w)(e_angle) = 1.

    For the intended geometry e_angle is the direction a quarter turn
    above the arc center, so two orbit arcs sit at the perpendicular
    directions and two at the parallel ones.
    """
    total = math.fsum(
        arc_log_integral(base_arc.rotated(j * 0.5 * math.pi), e_angle, method)
        for j in range(4)
    )
    if not (total > 0.0) or not math.isfinite(total):
        raise NumericError(f"orbit integral {total!r} is not positive; cannot normalize")
    return 1.0 / total


# ---------------------------------------------------------------------------
# assembling the construction


# Atom base centers are snapped to this grid.  At multiples of 2^-50 the
# sums x + fl(pi/2), x + fl(pi), x + fl(3pi/2) are all exact in binary
# floating point (fl(pi) is a multiple of 2^-51 and the sums stay below
# 2^53 units of the result's spacing), so the quarter-turn orbit of
# every atom materializes with bitwise-identical offsets from its own
# direction and the atoms are exactly congruent.
_CENTER_SNAP = 2.0**-50


def build_construction(n: int, N: float, geometry="auto", signs=None) -> Construction:
    """Build the 2n-atom step function at arc scale 1/N.

    Atom k sits on an arc of length 1/N centered a quarter turn below
    direction theta_k; guard arcs of length 1/(100 n) mark the zones
    around the directions that profile measurements exclude.  The atom
    centers are snapped by at most 2^-51 so the rotated orbit is exact
    (see _CENTER_SNAP); the snapped directions are what all transform
    evaluations use.  Raises GeometryError when arcs of length 1/N
    cannot keep the quarter-turn orbits disjoint for this family.
    """
    params = ScheduleParams(N=float(N), n=int(n))
    dirs = build_directions(params.n, geometry)
    if signs is None:
        from .trignorms import rudin_shapiro

        signs_arr = rudin_shapiro(params.n).astype(float)
    else:
        signs_arr = validate_signs(signs, params.n)

    min_gap = dirs.min_angular_gap()
    if not (1.0 / params.N < 0.25 * min_gap):
        raise GeometryError(
            f"arc length 1/N = {1.0 / params.N:.3e} too long for the minimal "
            f"direction gap {min_gap:.3e}; orbits would overlap (need 1/N < gap/4)"
        )

    atom_len = 1.0 / params.N
    guard_len = 1.0 / (GUARD_SCALE * params.n)
    # theta - pi/2 is exact (Sterbenz) for window angles; snap it, then
    # the evaluation direction x + pi/2 and the whole orbit are exact too
    base = np.floor((dirs.angles - 0.5 * math.pi) / _CENTER_SNAP + 0.5) * _CENTER_SNAP
    eval_angles = base + 0.5 * math.pi
    atom_arcs = tuple(Arc(x, atom_len) for x in base)
    guard_arcs = tuple(Arc(th, guard_len) for th in eval_angles)

    c = solve_c(atom_arcs[0], float(eval_angles[0]))
    atoms = tuple(make_w(arc, c) for arc in atom_arcs)
    omega = assemble_omega(atoms, signs_arr)
    return Construction(
        params=params,
        dirs=dirs,
        eval_angles=eval_angles,
        atom_arcs=atom_arcs,
        guard_arcs=guard_arcs,
        c=c,
        signs=signs_arr,
        atoms=atoms,
        omega=omega,
    )


def schedule_construction(phi: YoungFunction, N: float, geometry="auto", signs=None) -> Construction:
    """Build the construction with n chosen by the schedule for this Phi."""
    params = schedule_n(phi, N)
    return build_construction(params.n, params.N, geometry=geometry, signs=signs)


def _global_signs(cons: Construction) -> np.ndarray:
    # weight of atom k (1-based) inside omega: (-1)^k * signs[ceil(k/2)]
    k1 = np.arange(1, 2 * cons.n + 1)
    return (-1.0) ** k1 * cons.signs[(k1 + 1) // 2 - 1]


@dataclass(frozen=True, eq=False)
class SeparationData:
    """Diagonal value D, off-diagonal sums delta_k, and their ratio."""

    D: float
    delta: np.ndarray  # (n,)
    margin: float  # max |delta_k| / |D|
    spread: float  # relative variation of the diagonal value across k


def d_delta(cons: Construction) -> SeparationData:
    """Split the transform at the even directions into diagonal and rest.

    At theta_{2k} the transform of omega is eps_k * D + delta_k where D
    is the (k-independent) value of the transform of one atom at its own
    direction and delta_k collects every other atom.  The diagonal value
    is measured per atom; a relative spread above 1e-8 means the atoms
    are not congruent and raises GeometryError.
    """
    th_even = cons.even_direction_angles
    n = cons.n
    diag = np.array(
        [khat(cons.atoms[2 * k + 1], float(th_even[k])) for k in range(n)]
    )
    D = float(np.mean(diag))
    spread = float(np.max(np.abs(diag - D)) / abs(D))
    if spread > 1e-8:
        raise GeometryError(
            f"transform at the atom's own direction varies across atoms "
            f"(relative spread {spread:.3e}); atoms are not congruent"
        )
    g = _global_signs(cons)
    contrib = np.empty((2 * n, n))
    for i in range(2 * n):
        contrib[i] = khat(cons.atoms[i], th_even)
    total = g @ contrib
    # atom 2k carries weight +eps_k inside omega; remove its own term
    delta = total - cons.signs * diag
    margin = float(np.max(np.abs(delta)) / abs(D))
    return SeparationData(D=D, delta=delta, margin=margin, spread=spread)


def _window_grid(grid_size: int) -> np.ndarray:
    if grid_size < 64:
        raise ParameterError(f"need grid_size >= 64, got {grid_size}")
    step = (WINDOW_HI - WINDOW_LO) / grid_size
    return WINDOW_LO + (np.arange(grid_size) + 0.5) * step


def _guard_mask(xs: np.ndarray, guard: Arc) -> np.ndarray:
    # True where xs stays clear of every quarter-turn rotate of the guard
    keep = np.ones(xs.shape, dtype=bool)
    for j in range(4):
        zone = reduce_angle(guard.center + j * 0.5 * math.pi)
        keep &= circ_dist(xs, zone) >= 0.5 * guard.length
    return keep


def atom_decay_constant(cons: Construction, k: int, grid_size: int = 8192) -> float:
    """Decay constant of atom k: sup of m(w_k) off the guard zones, rescaled.

    The rescaling factor log N / log n makes the bound dimensionless;
    n >= 2 is required for it to mean anything.
    """
    if cons.n < 2:
        raise ParameterError("atom decay needs n >= 2 (log n must be positive)")
    if not (1 <= k <= 2 * cons.n):
        raise ParameterError(f"atom index must lie in 1..{2 * cons.n}, got {k}")
    xs = _window_grid(grid_size)
    keep = _guard_mask(xs, cons.guard_arcs[k - 1])
    if not keep.any():
        raise ParameterError("guard zones swallow the whole grid; increase grid_size")
    vals = m_eval(cons.atoms[k - 1], xs[keep])
    return float(np.max(vals)) * math.log(cons.N) / math.log(cons.n)


def pair_difference_constant(cons: Construction, k: int, grid_size: int = 8192) -> float:
    """Cancellation constant of pair k: weighted sup of |K w_2k - K w_(2k-1)|.

    The weight n * log N * chord(xi, theta_(2k)) encodes that the two
    transforms agree at the shared direction to first order; the sup
    excludes the guard zones of both atoms.
    """
    if not (1 <= k <= cons.n):
        raise ParameterError(f"pair index must lie in 1..{cons.n}, got {k}")
    hi = cons.atoms[2 * k - 1]
    lo = cons.atoms[2 * k - 2]
    xs = _window_grid(grid_size)
    keep = _guard_mask(xs, cons.guard_arcs[2 * k - 1]) & _guard_mask(
        xs, cons.guard_arcs[2 * k - 2]
    )
    if not keep.any():
        raise ParameterError("guard zones swallow the whole grid; increase grid_size")
    xs = xs[keep]
    diff = np.abs(khat(hi, xs) - khat(lo, xs))
    theta = float(cons.eval_angles[2 * k - 1])
    weight = cons.n * math.log(cons.N) * chord_dist(xs, theta)
    return float(np.max(diff * weight))


@dataclass(frozen=True, eq=False)
class KernelProfile:
    """Grid samples of the transform and its majorant for one construction."""

    grid: np.ndarray
    khat_values: np.ndarray
    m_values: np.ndarray
    separation: SeparationData
    sup_m: float
    sup_m_gap: float  # largest jump between adjacent grid samples of m


def profile(cons: Construction, grid_size: int = 8192) -> KernelProfile:
    """Sample K(omega) and m(omega) on a uniform circle grid."""
    if grid_size < 64:
        raise ParameterError(f"need grid_size >= 64, got {grid_size}")
    grid = np.arange(grid_size) * (TWO_PI / grid_size)
    kv = khat(cons.omega, grid)
    mv = m_eval(cons.omega, grid)
    sep = d_delta(cons)
    gaps = np.abs(np.diff(np.concatenate([mv, mv[:1]])))
    return KernelProfile(
        grid=grid,
        khat_values=kv,
        m_values=mv,
        separation=sep,
        sup_m=float(np.max(mv)),
        sup_m_gap=float(np.max(gaps)),
    )


def khat_oscillation(cons: Construction, grid_size: int = 8192) -> np.ndarray:
    """Local oscillation of K(omega) at the even directions, step 2*pi/grid_size."""
    if grid_size < 64:
        raise ParameterError(f"need grid_size >= 64, got {grid_size}")
    h = TWO_PI / grid_size
    th = cons.even_direction_angles
    k0 = khat(cons.omega, th)
    kp = khat(cons.omega, th + h)
    km = khat(cons.omega, th - h)
    return np.maximum(np.abs(kp - k0), np.abs(km - k0))
