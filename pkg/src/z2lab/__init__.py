"""Numerical laboratory for the Kalton-Peck twisted Hilbert space at finite truncation."""

from .blockop import (
    BlockOperator,
    apply,
    block_operator_TU,
    calderon_upper,
    compose,
    deinterleave,
    identity_operator,
    interleave,
    involution_plus,
    ip_operator,
    is_lower_triangular,
    is_upper_triangular,
    nuclear_sum,
    rank_one,
    scalar_matrix,
    split_lower,
    split_upper,
    tau,
    zero_operator,
)
from .conditions import (
    ConditionReport,
    OperatorFamily,
    boundedness_verdict,
    check_additional,
    check_necessary,
    check_star,
    full_report,
)
from .errors import (
    DisjointnessViolated,
    NoConvergence,
    ParameterOutOfRange,
    PoleIndex,
    PrecisionLoss,
    SingularShift,
    Z2LabError,
)
from .normest import NormTrend, growth_trend, opnorm_p, opnorm_p_full, z2_opnorm_est
from .seqspace import (
    basis_vector,
    kp_inverse,
    kp_map,
    lf_quasinorm,
    lf_star_quasinorm_ub,
    lp_norm,
    spread,
)
from .spectra import (
    SpectralGrid,
    cesaro_disk_check,
    eigenvalues,
    resolvent_grid,
    resolvent_norm,
)
from .z2core import (
    IsotropyReport,
    Z2Functional,
    Z2Vec,
    d_map,
    inclusion_i,
    inclusion_j,
    is_isotropic,
    lift_Lp,
    lift_Lq,
    omega_form,
    pairing,
    quotient_p,
    quotient_q,
    z2_quasinorm,
    z2_quasinorm_jq,
)
from .zoo import (
    HausdorffSpec,
    MomentSequence,
    cesaro,
    diagonal_z2,
    gap_symbol,
    hausdorff_matrix,
    hilbert_matrix,
    moment_euler,
    moment_gamma,
    moment_gen_cesaro,
    moment_holder,
    shift,
    signed_permutation,
)

__version__ = "0.1.0"
