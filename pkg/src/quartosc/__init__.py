"""quartosc: a numerical laboratory for oscillatory integrals in the plane
with quartic principal phases.

The package measures decay rates of J(lambda) = int a(x) e^(i lambda f(x)) dx
uniformly over perturbation families: exact polynomial bookkeeping (poly),
normal forms and decay signatures of binary quartics (classify), the shift
that removes mixed cubic terms (center), an oscillation-adaptive quadrature
oracle (oscquad), a scale-by-scale ring decomposition (dyadic), experiment
drivers and fit statistics (verify), and a CLI (cli).
"""

from .center import CenterResult, mixed_cubic_coeffs, newton_center
from .classify import (
    CircleRoot,
    FormKind,
    NormalForm,
    OscillationType,
    QuarticForm,
    VersalityReport,
    circle_roots,
    degen_minus_form,
    degen_plus_form,
    mu_form,
    oscillation_type,
    reduce_to_normal_form,
    versality_check,
)
from .dyadic import (
    CutoffProfile,
    DyadicConfig,
    RingDecomposition,
    beta_cutoff,
    chi,
    dilate,
    dyadic_integrate,
    partition_weights,
)
from .errors import (
    BudgetExceeded,
    DifferentiationFailure,
    IllConditioned,
    InsufficientRange,
    MultiplicityTooHigh,
    NoConvergence,
    NonPositiveMagnitude,
    QuartoscError,
    ReductionFailed,
    RhoDegenerate,
    SingularJacobian,
)
from .oscquad import (
    Bump1D,
    BumpAmplitude,
    QuadConfig,
    QuadResult,
    airy_envelope,
    bump_amplitude,
    bump_amplitude_1d,
    integrate_1d,
    integrate_2d,
)
from .poly import (
    BivarPoly,
    Box,
    TaylorData,
    c_norm,
    is_quasi_homogeneous,
    poly_from_text,
    poly_to_text,
    quasi_distance,
    taylor_data,
)
from .verify import (
    AiryRow,
    AirySweepResult,
    DecayFit,
    SweepConfig,
    SweepResult,
    SweepRow,
    airy_column_slope,
    airy_pair_exponent,
    airy_sweep,
    decay_fit,
    limit_check,
    sample_perturbation,
    uniform_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AiryRow",
    "AirySweepResult",
    "BivarPoly",
    "Box",
    "BudgetExceeded",
    "Bump1D",
    "BumpAmplitude",
    "CenterResult",
    "CircleRoot",
    "CutoffProfile",
    "DecayFit",
    "DifferentiationFailure",
    "DyadicConfig",
    "FormKind",
    "IllConditioned",
    "InsufficientRange",
    "MultiplicityTooHigh",
    "NoConvergence",
    "NonPositiveMagnitude",
    "NormalForm",
    "OscillationType",
    "QuadConfig",
    "QuadResult",
    "QuarticForm",
    "QuartoscError",
    "ReductionFailed",
    "RhoDegenerate",
    "RingDecomposition",
    "SingularJacobian",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "TaylorData",
    "VersalityReport",
    "airy_column_slope",
    "airy_envelope",
    "airy_pair_exponent",
    "airy_sweep",
    "beta_cutoff",
    "bump_amplitude",
    "bump_amplitude_1d",
    "c_norm",
    "chi",
    "circle_roots",
    "decay_fit",
    "degen_minus_form",
    "degen_plus_form",
    "dilate",
    "dyadic_integrate",
    "integrate_1d",
    "integrate_2d",
    "is_quasi_homogeneous",
    "limit_check",
    "mixed_cubic_coeffs",
    "mu_form",
    "newton_center",
    "oscillation_type",
    "partition_weights",
    "poly_from_text",
    "poly_to_text",
    "quasi_distance",
    "reduce_to_normal_form",
    "sample_perturbation",
    "taylor_data",
    "uniform_sweep",
    "versality_check",
]
