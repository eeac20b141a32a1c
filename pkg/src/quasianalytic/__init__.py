"""Computable machinery for quasi-analytic weight-sequence classes."""

from .sequences import (
    WeightSequence,
    RegularizedSequence,
    ClassifierPolicy,
    ClassificationVerdict,
    CriterionTraces,
    Verdict,
    beta_sequence,
    brute_force_regularize,
    canonical_sequence,
    carleman_inequality_check,
    classify,
    convex_regularize,
    criterion_partial_sums,
    is_log_convex,
)
from .bang_space import (
    BangVector,
    NormCertificate,
    bang_distance,
    bang_norm,
    bracket_achieving_index,
    propagation_bound_check,
    smallest_exceeding_index,
    xf_vector,
)
from .gontcharoff import (
    ExpansionResult,
    GontcharoffPolynomial,
    NodeList,
    derivative_shift,
    generalized_taylor,
    gontcharoff_poly,
    sandwich_check,
    zero_propagation_bound,
)
from .smooth_functions import (
    DerivativeOracle,
    MembershipFit,
    PringsheimDiagnostic,
    SupNormEstimate,
    class_membership_fit,
    make_oracle,
    pringsheim_ratio,
    sup_norms,
)
from .quasianalysis import (
    BorelWitnessReport,
    MajorantProfile,
    MajorantReport,
    MajorantValue,
    MonotonicityCertificate,
    borel_image_witness,
    build_profile,
    lemma_estimate_check,
    majorant,
    majorant_properties_check,
    monotonicity_certificate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
