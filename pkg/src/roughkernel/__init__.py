"""Rough-kernel counterexamples on the circle.

The package builds, for a given Young function, an even mean-zero step
function supported on unions of short arcs whose log-kernel transform
separates signs at a family of lattice directions, and it certifies the
quantitative estimates behind that construction numerically: atom
normalization, Orlicz modular and Luxemburg norm bounds, sup bounds on
the majorant, pair cancellation, the sign-separation margin, and the
growth of unconditionality ratios for the associated flat trigonometric
polynomials.

Modules
-------
circle      arcs, arc-supported step functions, direction families
orlicz      Young functions, modulars, the Luxemburg norm, the schedule
logkernel   Clausen-based transforms, atom assembly, separation data
trignorms   FFT norms, Rudin-Shapiro sweeps, exponent fits
verify_cli  configuration, the check battery, report emission, the CLI
"""

from .circle import (
    Arc,
    ArcFunction,
    Construction,
    DirectionFamily,
    TWO_PI,
    WINDOW_HI,
    WINDOW_LO,
    assemble_omega,
    build_directions,
    chord_dist,
    circ_dist,
    evaluate,
    integral,
    is_even,
    make_w,
    reduce_angle,
    rotate_arc,
    support_measure,
    validate_signs,
)
from .errors import (
    ConfigError,
    DomainError,
    GeometryError,
    NumericError,
    ParameterError,
    RoughKernelError,
)
from .logkernel import (
    KernelProfile,
    SeparationData,
    TINY_ARC_CUTOFF,
    arc_log_integral,
    atom_decay_constant,
    build_construction,
    clausen2,
    d_delta,
    khat,
    khat_oscillation,
    m_eval,
    pair_difference_constant,
    profile,
    schedule_construction,
    solve_c,
)
from .orlicz import (
    ScheduleParams,
    YoungFunction,
    eval_phi,
    eval_psi,
    lemma_orlicz_check,
    luxemburg_norm,
    modular,
    schedule_n,
)
from .trignorms import (
    NormFit,
    SupEstimate,
    dirichlet_norm,
    dirichlet_p4_exact,
    fit_exponent,
    lp_norm,
    rs_sup_sweep,
    rudin_shapiro,
    sup_norm,
    unconditionality_ratio,
)
from .verify_cli import RunConfig, emit, main, make_config, run_sweep, run_verify

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "ArcFunction",
    "Construction",
    "DirectionFamily",
    "TWO_PI",
    "WINDOW_HI",
    "WINDOW_LO",
    "assemble_omega",
    "build_directions",
    "chord_dist",
    "circ_dist",
    "evaluate",
    "integral",
    "is_even",
    "make_w",
    "reduce_angle",
    "rotate_arc",
    "support_measure",
    "validate_signs",
    "ConfigError",
    "DomainError",
    "GeometryError",
    "NumericError",
    "ParameterError",
    "RoughKernelError",
    "KernelProfile",
    "SeparationData",
    "TINY_ARC_CUTOFF",
    "arc_log_integral",
    "atom_decay_constant",
    "build_construction",
    "clausen2",
    "d_delta",
    "khat",
    "khat_oscillation",
    "m_eval",
    "pair_difference_constant",
    "profile",
    "schedule_construction",
    "solve_c",
    "ScheduleParams",
    "YoungFunction",
    "eval_phi",
    "eval_psi",
    "lemma_orlicz_check",
    "luxemburg_norm",
    "modular",
    "schedule_n",
    "NormFit",
    "SupEstimate",
    "dirichlet_norm",
    "dirichlet_p4_exact",
    "fit_exponent",
    "lp_norm",
    "rs_sup_sweep",
    "rudin_shapiro",
    "sup_norm",
    "unconditionality_ratio",
    "RunConfig",
    "emit",
    "main",
    "make_config",
    "run_sweep",
    "run_verify",
    "__version__",
]
