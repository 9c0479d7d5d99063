"""Young functions, Orlicz modulars, and the size schedule.

A Young function here is a convex increasing bijection of [0, inf) with
Phi(0) = 0 and Phi(t)/t -> infinity; its density phi = Phi' is set to 0
at t = 0 by convention.  Three families are supported:

* ``power_log(beta)``:    Phi(t) = t * log(e + t)^beta, beta > 0;
* ``log_quotient``:       Phi(t) = t * log(e + t) / log(e + log(e + t));
* ``custom_table``:       monotone-cubic interpolation of tabulated
  densities, validated for convexity at the knots.

The growth gauge Psi(t) = t*log(e+t)/Phi(t) measures how far Phi falls
short of t*log t integrability; the schedule n = floor(Psi(N/log N))
turns an arc-length scale 1/N into the number of atom pairs that keeps
the Orlicz modular of the final step function bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .circle import ArcFunction
from .errors import DomainError, NumericError, ParameterError

__all__ = [
    "YoungFunction",
    "ScheduleParams",
    "eval_phi",
    "eval_psi",
    "modular",
    "luxemburg_norm",
    "schedule_n",
    "lemma_orlicz_check",
]

_E = math.e


@dataclass(frozen=True)
class ScheduleParams:
    """Size parameters of one construction: arc scale 1/N and pair count n."""

    N: float
    n: int

    def __post_init__(self) -> None:
        if not (self.N >= 100.0) or not math.isfinite(self.N):
            raise DomainError(f"need N >= 100, got {self.N!r}")
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise DomainError(f"n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise DomainError(f"need n >= 1, got {self.n}")
        object.__setattr__(self, "N", float(self.N))
        object.__setattr__(self, "n", int(self.n))


class YoungFunction:
    """A Young function Phi with vectorized evaluation of Phi, phi, Psi.

    Instances are built through the classmethods ``power_log``,
    ``log_quotient``, and ``custom_table``; direct construction is not
    part of the public surface.
    """

    def __init__(self, family: str, label: str,
                 phi: Callable[[np.ndarray], np.ndarray],
                 density: Callable[[np.ndarray], np.ndarray]) -> None:
        self.family = family
        self.label = label
        self._phi = phi
        self._density = density

    def __repr__(self) -> str:
        return f"YoungFunction({self.label})"

    # -- families ----------------------------------------------------------

    @classmethod
    def power_log(cls, beta: float) -> "YoungFunction":
        """Phi(t) = t * log(e + t)^beta.  Convex and superlinear for beta > 0."""
        beta = float(beta)
        if not (beta > 0.0) or not math.isfinite(beta):
            raise DomainError(f"power_log needs beta > 0, got {beta!r}")

        def phi(t):
            ell = np.log(_E + t)
            return t * ell**beta

        def density(t):
            ell = np.log(_E + t)
            return ell**beta + t * beta * ell ** (beta - 1.0) / (_E + t)

        return cls("power_log", f"power_log:{beta:g}", phi, density)

    @classmethod
    def log_quotient(cls) -> "YoungFunction":
        """Phi(t) = t * log(e + t) / log(e + log(e + t)); barely superlinear."""

        def phi(t):
            a = np.log(_E + t)
            return t * a / np.log(_E + a)

        def density(t):
            a = np.log(_E + t)
            b = np.log(_E + a)
            da = 1.0 / (_E + t)
            # d/dt [t*a/b] with b' = a'/(e+a)
            return a / b + t * da * (b * (_E + a) - a) / (b * b * (_E + a))

        return cls("log_quotient", "log_quotient", phi, density)

    @classmethod
    def custom_table(cls, knots_t, knots_density) -> "YoungFunction":
        """Interpolate a tabulated density with a monotone cubic.

        ``knots_t`` must be strictly increasing and start at 0,
        ``knots_density`` nonnegative and nondecreasing (convexity of
        Phi at the knots); violations raise DomainError.  Evaluation
        outside the tabulated range is a DomainError, not extrapolation.
        """
        from scipy.interpolate import PchipInterpolator

        t = np.asarray(knots_t, dtype=float)
        d = np.asarray(knots_density, dtype=float)
        if t.ndim != 1 or t.shape != d.shape or t.size < 3:
            raise DomainError("need matching 1-d knot arrays with at least 3 points")
        if t[0] != 0.0:
            raise DomainError(f"density table must start at t = 0, got {t[0]!r}")
        if np.any(np.diff(t) <= 0.0):
            raise DomainError("knot abscissae must be strictly increasing")
        if d[0] < 0.0 or np.any(np.diff(d) < 0.0):
            raise DomainError("tabulated density must be nonnegative and nondecreasing")
        interp = PchipInterpolator(t, d, extrapolate=False)
        anti = interp.antiderivative()
        hi = float(t[-1])

        def _guard(x):
            if np.any(x > hi):
                raise DomainError(
                    f"custom_table evaluated at t = {float(np.max(x)):g} "
                    f"beyond the tabulated range [0, {hi:g}]"
                )

        def phi(x):
            _guard(x)
            return np.asarray(anti(x), dtype=float)

        def density(x):
            _guard(x)
            return np.asarray(interp(x), dtype=float)

        return cls("custom_table", f"custom_table[0,{hi:g}]", phi, density)

    # -- evaluation ---------------------------------------------------------

    def phi(self, t):
        """Phi(t) for t >= 0, scalar or ndarray."""
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0.0) or np.any(~np.isfinite(arr)):
            raise DomainError("Young functions are evaluated at finite t >= 0")
        out = np.asarray(self._phi(arr), dtype=float)
        out = np.where(arr == 0.0, 0.0, out)
        if np.ndim(t) == 0:
            return float(out)
        return out

    def density(self, t):
        """phi(t) = Phi'(t) for t > 0, with phi(0) = 0 by convention."""
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0.0) or np.any(~np.isfinite(arr)):
            raise DomainError("densities are evaluated at finite t >= 0")
        out = np.where(arr == 0.0, 0.0, np.asarray(self._density(arr), dtype=float))
        if np.ndim(t) == 0:
            return float(out)
        return out

    def psi(self, t):
        """Growth gauge Psi(t) = t * log(e + t) / Phi(t), with Psi(0) = 1."""
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0.0) or np.any(~np.isfinite(arr)):
            raise DomainError("Psi is evaluated at finite t >= 0")
        num = arr * np.log(_E + arr)
        den = self.phi(arr)
        out = np.where(arr == 0.0, 1.0, num / np.where(arr == 0.0, 1.0, den))
        if np.ndim(t) == 0:
            return float(out)
        return out


def eval_phi(phi: YoungFunction, t):
    return phi.phi(t)


def eval_psi(phi: YoungFunction, t):
    return phi.psi(t)


def modular(phi: YoungFunction, f: ArcFunction) -> float:
    """Orlicz modular: integral of Phi(|f|) over the circle."""
    if not f.pieces:
        return 0.0
    vals = phi.phi(np.abs(f._coeffs))
    return math.fsum(float(v) * float(length) for v, length in zip(vals, f._lengths))


def luxemburg_norm(phi: YoungFunction, f: ArcFunction, tol: float = 1e-6) -> float:
    """Luxemburg norm: inf of k > 0 with modular(f / k) <= 1.

    The returned value is the upper end of a bracket with relative width
    <= tol, so modular(f / result) <= 1 always holds exactly.
    """
    if not (0.0 < tol <= 1e-3):
        raise ParameterError(f"tol must lie in (0, 1e-3], got {tol!r}")
    if not f.pieces:
        return 0.0

    def gauge(k: float) -> float:
        return modular(phi, f.scaled(1.0 / k))

    budget = 200
    k = f.max_abs()
    # bracket [k_lo, k_hi] with gauge(k_lo) > 1 >= gauge(k_hi)
    if gauge(k) > 1.0:
        k_lo = k
        k_hi = 2.0 * k
        while gauge(k_hi) > 1.0:
            k_lo = k_hi
            k_hi *= 2.0
            budget -= 1
            if budget <= 0:
                raise NumericError(
                    f"Luxemburg bracketing failed to close from above at k = {k_hi:g}"
                )
    else:
        k_hi = k
        k_lo = 0.5 * k
        while gauge(k_lo) <= 1.0:
            k_hi = k_lo
            k_lo *= 0.5
            budget -= 1
            if budget <= 0:
                raise NumericError(
                    f"Luxemburg bracketing failed to close from below at k = {k_lo:g}"
                )
    while k_hi - k_lo > tol * k_lo:
        budget -= 1
        if budget <= 0:
            raise NumericError(
                f"Luxemburg bisection exhausted its budget on [{k_lo:g}, {k_hi:g}]"
            )
        mid = 0.5 * (k_lo + k_hi)
        if gauge(mid) <= 1.0:
            k_hi = mid
        else:
            k_lo = mid
    return k_hi


def schedule_n(phi: YoungFunction, N: float) -> ScheduleParams:
    """Pair count n = floor(Psi(N / log N)) for the arc scale 1/N.

    Needs N >= 100; raises DomainError("schedule degenerate; increase N")
    when Psi has not yet reached 1 at this scale.
    """
    if not (N >= 100.0) or not math.isfinite(N):
        raise DomainError(f"need N >= 100, got {N!r}")
    value = phi.psi(N / math.log(N))
    if value < 1.0:
        raise DomainError("schedule degenerate; increase N")
    return ScheduleParams(N=float(N), n=int(math.floor(value)))


def lemma_orlicz_check(phi: YoungFunction, f: ArcFunction, tol: float = 1e-6) -> bool:
    """Check the comparison 'modular < norm implies norm <= 1' on a sample f.

    Returns True when the implication holds within tolerance.  This is
    the quantitative link letting modular bounds control norm bounds.
    """
    if not (0.0 < tol <= 1e-3):
        raise ParameterError(f"tol must lie in (0, 1e-3], got {tol!r}")
    m = modular(phi, f)
    k = luxemburg_norm(phi, f, tol=min(tol / 10.0, 1e-6))
    if m >= k:
        return True
    return k <= 1.0 + tol
