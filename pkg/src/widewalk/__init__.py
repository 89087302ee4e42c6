"""Wide replacement-product walks: explicit expanders, exact walk
verification, and bias amplification of binary linear codes."""

from .amplify import (
    DpTable,
    Moments,
    SignedFn,
    check_base_case,
    check_bias_reduction_lemma,
    check_first_step_trick,
    check_induction_step,
    check_middle_start_identity,
    check_pure_walk_bounds,
    check_weighted_walk_bounds,
    dp_backwards,
    dp_gk,
    dp_hk,
    dp_hk_weighted,
    measured_lambdas,
    moments,
    verify_induction_arithmetic,
)
from .code import (
    AmplifiedCode,
    BaseCodeSearchFailed,
    LinearCode,
    code_bias,
    code_report,
    embed,
    encode,
    gen_base_code,
    rate,
    word_bias,
)
from .graphs import (
    CayleyGraph,
    MixingCheck,
    SpectralReport,
    build_aghp,
    build_complete_selfloop,
    character_table,
    mixing_check,
    spectrum,
)
from .hitting import (
    HittingInstance,
    check_hitting,
    check_phi_identity,
    hitting_bound,
    hitting_prob_exact,
)
from .walks import (
    BudgetExceeded,
    DistributionCheck,
    ReplacementSystem,
    SWalk,
    WalkParams,
    check_first_coord_uniform,
    check_local_invertibility,
    check_pseudorandomness,
    enumerate_swalk_seeds,
    middle_start_distribution_equal,
    middle_start_sample,
    sample_swalk,
    shift,
)

__version__ = "0.1.0"

__all__ = [
    "AmplifiedCode",
    "BaseCodeSearchFailed",
    "BudgetExceeded",
    "CayleyGraph",
    "DistributionCheck",
    "DpTable",
    "HittingInstance",
    "LinearCode",
    "MixingCheck",
    "Moments",
    "ReplacementSystem",
    "SWalk",
    "SignedFn",
    "SpectralReport",
    "WalkParams",
    "build_aghp",
    "build_complete_selfloop",
    "character_table",
    "check_base_case",
    "check_bias_reduction_lemma",
    "check_first_coord_uniform",
    "check_first_step_trick",
    "check_hitting",
    "check_induction_step",
    "check_local_invertibility",
    "check_middle_start_identity",
    "check_phi_identity",
    "check_pseudorandomness",
    "check_pure_walk_bounds",
    "check_weighted_walk_bounds",
    "code_bias",
    "code_report",
    "dp_backwards",
    "dp_gk",
    "dp_hk",
    "dp_hk_weighted",
    "embed",
    "encode",
    "enumerate_swalk_seeds",
    "gen_base_code",
    "hitting_bound",
    "hitting_prob_exact",
    "measured_lambdas",
    "middle_start_distribution_equal",
    "middle_start_sample",
    "mixing_check",
    "moments",
    "rate",
    "sample_swalk",
    "shift",
    "spectrum",
    "verify_induction_arithmetic",
    "word_bias",
]
