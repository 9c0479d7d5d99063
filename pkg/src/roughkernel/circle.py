"""Arcs, arc-supported step functions, and direction families on the circle.

Angles are plain floats reduced to the canonical range [0, 2*pi).  An
``Arc`` is an interval on the circle given by midpoint and length, an
``ArcFunction`` is a finite combination of constant values on pairwise
disjoint arcs, and a ``DirectionFamily`` holds the 2n integer-lattice
directions (-t_k, s) whose angles drive the placement of the atoms: all
of them sit strictly inside a fixed window in the second quadrant and
consecutive unit vectors keep chord gaps comparable to 1/n.

The building blocks at the end of the module (``make_w``,
``assemble_omega``, ``Construction``) combine four quarter-turn copies of
a short arc into a sign-alternating atom and sum 2n such atoms into the
final even, mean-zero step function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Mapping, Sequence

import numpy as np

from .errors import DomainError, GeometryError, ParameterError

if TYPE_CHECKING:  # import only for annotations; avoids a runtime cycle
    from .orlicz import ScheduleParams

__all__ = [
    "TWO_PI",
    "WINDOW_LO",
    "WINDOW_HI",
    "reduce_angle",
    "circ_dist",
    "chord_dist",
    "Arc",
    "rotate_arc",
    "ArcFunction",
    "evaluate",
    "integral",
    "support_measure",
    "is_even",
    "DirectionFamily",
    "build_directions",
    "validate_signs",
    "make_w",
    "assemble_omega",
    "Construction",
]

TWO_PI = 2.0 * math.pi

# Every family direction must stay strictly inside this window: the open
# arc (pi/2, 3pi/4) shrunk by pi/32 on both sides.  The margin keeps all
# four quarter-turn rotates of the atoms away from each other's guards.
WINDOW_LO = 0.5 * math.pi + math.pi / 32.0
WINDOW_HI = 0.75 * math.pi - math.pi / 32.0

# Two arcs may approach up to this much and still count as disjoint;
# touching endpoints (a tiling) are legal.
DISJOINT_SLACK = 1e-15


def reduce_angle(theta):
    """Map an angle (scalar or ndarray) to the canonical range [0, 2*pi)."""
    out = np.asarray(theta, dtype=float) % TWO_PI
    # x % (2*pi) can round up to exactly 2*pi for tiny negative x
    out = np.where(out >= TWO_PI, 0.0, out)
    if np.ndim(theta) == 0:
        return float(out)
    return out


def circ_dist(a, b):
    """Length of the shorter of the two arcs joining the rays at a and b."""
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % TWO_PI
    out = np.minimum(d, TWO_PI - d)
    if np.ndim(out) == 0:
        return float(out)
    return out


def chord_dist(a, b):
    """Euclidean distance |e^{ia} - e^{ib}| between two unit vectors."""
    out = 2.0 * np.abs(np.sin(0.5 * (np.asarray(a, dtype=float) - np.asarray(b, dtype=float))))
    if np.ndim(out) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class Arc:
    """Circular interval of the given length whose midpoint is ``center``.

    The center is stored reduced to [0, 2*pi); lengths are restricted to
    (0, pi/2] because nothing in the construction ever needs a longer
    arc, and the restriction keeps circular disjointness tests exact.
    """

    center: float
    length: float

    def __post_init__(self) -> None:
        if not (0.0 < self.length <= 0.5 * math.pi):
            raise DomainError(f"arc length must lie in (0, pi/2], got {self.length!r}")
        object.__setattr__(self, "center", reduce_angle(self.center))
        object.__setattr__(self, "length", float(self.length))

    @property
    def start(self) -> float:
        return reduce_angle(self.center - 0.5 * self.length)

    @property
    def end(self) -> float:
        # NOT reduced: end = start + length, may exceed 2*pi
        return self.start + self.length

    def contains(self, theta):
        """Membership test, scalar or vectorized (half-open: start in, end out)."""
        off = (np.asarray(theta, dtype=float) - self.start) % TWO_PI
        out = off < self.length
        if np.ndim(theta) == 0:
            return bool(out)
        return out

    def rotated(self, alpha: float) -> "Arc":
        return Arc(self.center + alpha, self.length)


def rotate_arc(arc: Arc, alpha: float) -> Arc:
    """Rotate an arc by the angle alpha (positive = counterclockwise)."""
    return arc.rotated(alpha)


def _check_disjoint(items) -> None:
    if len(items) < 2:
        return
    centers = np.array([arc.center for arc, _ in items])
    lengths = np.array([arc.length for arc, _ in items])
    # arcs no longer than pi/2 overlap iff their centers are closer than
    # the half-sum of lengths, measured along the circle
    d = np.abs(centers[:, None] - centers[None, :]) % TWO_PI
    d = np.minimum(d, TWO_PI - d)
    need = 0.5 * (lengths[:, None] + lengths[None, :])
    bad = d < need - DISJOINT_SLACK
    np.fill_diagonal(bad, False)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise DomainError(
                f"arcs {i} and {j} overlap: centers {centers[i]:.6g}, {centers[j]:.6g}, "
                f"gap {d[i, j]:.3e} < {need[i, j]:.3e}"
        )


@dataclass(frozen=True, eq=False)
class ArcFunction:
    """Finite linear combination of indicators of pairwise disjoint arcs.

    Pieces are normalized on construction: coefficients must be nonzero
    and finite, arcs must be pairwise disjoint (touching is fine), and
    storage order is sorted by start angle.  The empty tuple is the zero
    function.
    """

    pieces: tuple

    def __post_init__(self) -> None:
        items = []
        for arc, coeff in self.pieces:
            c = float(coeff)
            if c == 0.0 or not math.isfinite(c):
                raise DomainError(f"arc coefficients must be nonzero and finite, got {coeff!r}")
            items.append((arc, c))
        items.sort(key=lambda it: it[0].start)
        _check_disjoint(items)
        object.__setattr__(self, "pieces", tuple(items))

    @staticmethod
    def from_pieces(pieces) -> "ArcFunction":
        return ArcFunction(tuple(pieces))

    @cached_property
    def _coeffs(self) -> np.ndarray:
        return np.array([c for _, c in self.pieces], dtype=float)

    @cached_property
    def _lengths(self) -> np.ndarray:
        return np.array([arc.length for arc, _ in self.pieces], dtype=float)

    def evaluate(self, theta):
        """Pointwise value at theta (scalar or ndarray)."""
        th = np.asarray(theta, dtype=float) % TWO_PI
        out = np.zeros_like(th)
        for arc, coeff in self.pieces:
            off = (th - arc.start) % TWO_PI
            out = np.where(off < arc.length, coeff, out)
        if np.ndim(theta) == 0:
            return float(out)
        return out

    def integral(self) -> float:
        return math.fsum(c * arc.length for arc, c in self.pieces)

    def support_measure(self) -> float:
        return math.fsum(arc.length for arc, _ in self.pieces)

    def max_abs(self) -> float:
        if not self.pieces:
            return 0.0
        return float(np.max(np.abs(self._coeffs)))

    def scaled(self, factor: float) -> "ArcFunction":
        """Pointwise multiple; scaling by zero gives the zero function."""
        if not math.isfinite(factor):
            raise DomainError(f"scale factor must be finite, got {factor!r}")
        if factor == 0.0:
            return ArcFunction(())
        return ArcFunction(tuple((arc, c * factor) for arc, c in self.pieces))

    @cached_property
    def mean_zero(self) -> bool:
        scale = math.fsum(abs(c) * arc.length for arc, c in self.pieces)
        return abs(self.integral()) <= 1e-12 * max(scale, 1e-300)

    @cached_property
    def even_symmetric(self) -> bool:
        """True iff every piece has an antipodal partner with the same value."""
        for arc, coeff in self.pieces:
            target = reduce_angle(arc.center + math.pi)
            ok = False
            for other, c2 in self.pieces:
                if (
                    circ_dist(other.center, target) <= 1e-12
                    and abs(other.length - arc.length) <= 1e-12 * arc.length
                    and abs(c2 - coeff) <= 1e-12 * abs(coeff)
                ):
                    ok = True
                    break
            if not ok:
                return False
        return True


def evaluate(f: ArcFunction, theta):
    return f.evaluate(theta)


def integral(f: ArcFunction) -> float:
    return f.integral()


def support_measure(f: ArcFunction) -> float:
    return f.support_measure()


def is_even(f: ArcFunction, samples: int = 4096) -> bool:
    """Check f(theta) == f(theta + pi) on a uniform sample of the circle."""
    if samples < 8:
        raise ParameterError(f"need at least 8 samples, got {samples}")
    # half-integer offsets keep samples off arc endpoints for typical grids
    grid = (np.arange(samples) + 0.5) * (TWO_PI / samples)
    return bool(np.array_equal(f.evaluate(grid), f.evaluate(grid + math.pi)))


# ---------------------------------------------------------------------------
# direction families


@dataclass(frozen=True, eq=False)
class DirectionFamily:
    """2n integer directions x_k = (-t_k, s), t_k = t_start + (k-1)*t_step.

    All parameters are positive integers, so every angle
    atan2(s, -t_k) is exactly reproducible.  Validation enforces the two
    geometric invariants the construction depends on: every angle lies
    strictly inside (WINDOW_LO, WINDOW_HI), and consecutive chord gaps
    stay within [1/(32n), 4/n].
    """

    s: int
    t_start: int
    t_step: int
    n: int

    def __post_init__(self) -> None:
        for name in ("s", "t_start", "t_step", "n"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise GeometryError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.n < 1:
            raise GeometryError(f"need n >= 1, got {self.n}")
        if min(self.s, self.t_start, self.t_step) < 1:
            raise GeometryError(
                f"s, t_start, t_step must be >= 1, got {(self.s, self.t_start, self.t_step)}"
            )
        if self.s > 2**53:
            raise GeometryError(f"s must fit a double exactly (<= 2^53), got {self.s}")
        self._validate()

    @cached_property
    def slopes(self) -> np.ndarray:
        """The integers t_k, k = 1..2n."""
        return self.t_start + self.t_step * np.arange(2 * self.n, dtype=np.int64)

    @cached_property
    def angles(self) -> np.ndarray:
        """Direction angles atan2(s, -t_k), increasing, inside the window."""
        t = self.slopes.astype(float)
        return np.arctan2(float(self.s), -t)

    @cached_property
    def chord_gaps(self) -> np.ndarray:
        a = self.angles
        return chord_dist(a[1:], a[:-1])

    def min_angular_gap(self) -> float:
        return float(np.min(np.diff(self.angles)))

    def _validate(self) -> None:
        a = self.angles
        if np.any(np.diff(a) <= 0.0):
            raise GeometryError("direction angles must be strictly increasing")
        if a[0] <= WINDOW_LO or a[-1] >= WINDOW_HI:
            raise GeometryError(
                f"directions leave the window ({WINDOW_LO:.6f}, {WINDOW_HI:.6f}): "
                f"angles span [{a[0]:.6f}, {a[-1]:.6f}]"
            )
        if self.n >= 1 and 2 * self.n >= 2:
            gaps = self.chord_gaps
            lo = 1.0 / (32.0 * self.n)
            hi = 4.0 / self.n
            if gaps.min() < lo - 1e-12:
                raise GeometryError(
                    f"chord gap {gaps.min():.6e} below floor {lo:.6e} (n={self.n})"
                )
            if gaps.max() > hi + 1e-12:
                raise GeometryError(
                    f"chord gap {gaps.max():.6e} above ceiling {hi:.6e} (n={self.n})"
                )


def _slope_of_angle(s: float, theta: float) -> float:
    # invert theta = atan2(s, -t) for t > 0, theta in (pi/2, pi)
    return s / math.tan(math.pi - theta)


def _fit_geometry(n, s, t_start, t_step, shrink):
    """Fill the missing parameters of a family; None if clearly hopeless."""
    span = WINDOW_HI - WINDOW_LO
    pad = 0.08 * span
    lo = WINDOW_LO + pad
    hi = WINDOW_HI - pad
    if t_start is not None:
        theta0 = math.atan2(s, -float(t_start))
        if not (WINDOW_LO < theta0 < hi):
            return None
        lo = max(lo, theta0)
    avail = hi - lo
    if avail <= 0.0:
        return None
    gap = shrink * avail / max(2 * n - 1, 1)

    if t_step is None:
        theta_mid = lo + 0.5 * gap * (2 * n - 1) if t_start is not None else 0.5 * (lo + hi)
        t_mid = _slope_of_angle(s, theta_mid)
        # d(theta)/dt = -s/(s^2+t^2), so an angular gap costs (s^2+t^2)/s in t
        cand = round(gap * (s * s + t_mid * t_mid) / s)
        if cand < 1:
            return None
        t_step = cand
    if t_start is None:
        t_mid = _slope_of_angle(s, 0.5 * (lo + hi))
        cand = round(t_mid - (n - 0.5) * t_step)
        if cand < 1:
            return None
        t_start = cand
    return int(s), int(t_start), int(t_step)


def build_directions(n: int, geometry="auto") -> DirectionFamily:
    """Build a valid family of 2n directions.

    ``geometry`` is either the string ``"auto"`` or a mapping with any
    subset of the integer keys ``s``, ``t_start``, ``t_step``; missing
    entries are fitted automatically.  With all three given, the family
    is built exactly as specified and merely validated.
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if geometry == "auto" or geometry is None:
        given: dict = {}
    elif isinstance(geometry, Mapping):
        given = dict(geometry)
    else:
        raise GeometryError(f"geometry must be 'auto' or a mapping, got {geometry!r}")
    unknown = set(given) - {"s", "t_start", "t_step"}
    if unknown:
        raise GeometryError(f"unknown geometry keys: {sorted(unknown)}")
    s = given.get("s")
    t_start = given.get("t_start")
    t_step = given.get("t_step")

    if s is not None and t_start is not None and t_step is not None:
        return DirectionFamily(int(s), int(t_start), int(t_step), n)

    last_err: Exception | None = None
    s_scan = [int(s)] if s is not None else [2**j for j in range(8, 54)]
    for s_try in s_scan:
        for shrink in (1.0, 0.8, 0.6, 1.2):
            cand = _fit_geometry(n, s_try, t_start, t_step, shrink)
            if cand is None:
                continue
            try:
                return DirectionFamily(cand[0], cand[1], cand[2], n)
            except GeometryError as err:
                last_err = err
    raise GeometryError(
        f"no feasible direction family found for n={n} with constraints {given!r}"
    ) from last_err


# ---------------------------------------------------------------------------
# atoms and the assembled step function


def validate_signs(signs, n: int) -> np.ndarray:
    arr = np.asarray(signs, dtype=float)
    if arr.shape != (n,):
        raise DomainError(f"sign sequence must have shape ({n},), got {arr.shape}")
    if not np.all(np.abs(arr) == 1.0):
        raise DomainError("sign sequence entries must be +1 or -1")
    return arr


def make_w(base_arc: Arc, c: float) -> ArcFunction:
    """Four-arc atom: values -c, +c, -c, +c on the quarter-turn orbit of the arc.

    The sign pattern makes the atom even and mean-zero by construction.
    """
    if not (c > 0.0) or not math.isfinite(c):
        raise DomainError(f"atom height must be positive and finite, got {c!r}")
    if not (base_arc.length < math.pi / 8.0):
        raise DomainError(
            f"atom arc must be shorter than pi/8 so its orbit stays disjoint, "
            f"got {base_arc.length!r}"
        )
    pieces = []
    for j, sign in enumerate((-1.0, 1.0, -1.0, 1.0)):
        pieces.append((base_arc.rotated(j * 0.5 * math.pi), sign * c))
    return ArcFunction(tuple(pieces))


def assemble_omega(atoms: Sequence[ArcFunction], signs) -> ArcFunction:
    """Signed sum of 2n atoms; atom k (1-based) gets weight (-1)^k * signs[ceil(k/2)].

    Raises DomainError if any two pieces of different atoms overlap.
    """
    n2 = len(atoms)
    if n2 < 2 or n2 % 2 != 0:
        raise DomainError(f"need an even number (2n >= 2) of atoms, got {n2}")
    eps = validate_signs(signs, n2 // 2)
    pieces = []
    for k1 in range(1, n2 + 1):
        weight = (-1.0) ** k1 * eps[(k1 + 1) // 2 - 1]
        for arc, coeff in atoms[k1 - 1].pieces:
            pieces.append((arc, weight * coeff))
    return ArcFunction(tuple(pieces))


@dataclass(frozen=True, eq=False)
class Construction:
    """Everything produced when building the step function for given (N, n).

    Fields: the size parameters, the direction family, the evaluation
    angles (the family angles snapped so that the quarter-turn orbit of
    each atom arc materializes exactly in floating point, keeping the
    atoms bitwise congruent), the 2n short arcs carrying the atoms
    (centered a quarter turn below each direction), the 2n guard arcs
    around the directions themselves, the common atom height c, the
    sign sequence, the atoms, and their signed sum.
    """

    params: "ScheduleParams"
    dirs: DirectionFamily
    eval_angles: np.ndarray
    atom_arcs: tuple
    guard_arcs: tuple
    c: float
    signs: np.ndarray
    atoms: tuple
    omega: ArcFunction

    @property
    def N(self) -> float:
        return self.params.N

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def even_direction_angles(self) -> np.ndarray:
        """Angles theta_{2k}, k = 1..n, where the transform is sampled."""
        return self.eval_angles[1::2]
