"""High-precision Gaver-Stehfest inversion of Laplace transforms.

The package has two halves: a production inverter (exact-rational
coefficients, precision policy, the accelerated approximants) and a
verification layer that reproduces the analytic apparatus behind the
method numerically: the Lambert W branch structure, the polynomial kernel
q_n(v) with its generating function and asymptotics, and the convergence
criteria for smooth, Dini-regular and bounded-variation originals.
"""
from .coeffs import (
    GaverStehfestCoeffs,
    StehfestWeights,
    coeffs_from_weights,
    gaver_kernel,
    gaver_stehfest_coeffs,
    stehfest_weights,
    vandermonde_check,
)
from .errors import (
    DomainError,
    PrecisionError,
    ProbeError,
    QuadratureError,
    TransformEvaluationError,
)
from .inverter import (
    InversionReport,
    ReportEntry,
    TransformFn,
    equivalence_probe,
    expansion_probe,
    gaver_approx,
    invert_ladder,
    stehfest_approx,
    stehfest_via_gaver,
)
from .lambertw import (
    BranchSeries,
    XiAlpha,
    branch_series,
    branch_series_eval,
    in_region_a,
    lambert_w0,
    w_of_v,
    wew_residual,
    xi_alpha,
)
from .numerics import (
    PrecisionContext,
    context_for_order,
    guard_for_order,
    integrate,
    required_digits,
)
from .pairs import (
    DiniEstimate,
    TransformPair,
    corpus,
    dini_integral_estimate,
    get_pair,
    jordan_target,
    laplace_identity_residual,
    run_pair,
)
from .qpoly import (
    DecayFit,
    JumpFormCheck,
    PolyQ,
    SeriesG,
    SeriesH,
    decay_bound_probe,
    g_singular_remainder,
    g_value,
    genfun_identity_check,
    hz_branch_check,
    integral_representation_check,
    qn_asymptotic,
    qn_at_one_asymptotic,
    qn_coeffs,
    qn_eval,
    qn_exact,
    qn_jump_form_check,
    series_g,
    series_h,
)

__version__ = "0.1.0"
