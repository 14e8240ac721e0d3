"""Pure resolutions on P^n, cohomology of their syzygy bundles, and simplicity/exceptionality checks."""

from .arith import binom_poly, binom_trunc, line_cohom, line_euler
from .catalog import compressed_gorenstein, eagon_northcott, koszul
from .chase import CohomDim, Inconsistent, chase_ses
from .criteria import (
    NegativeSigma,
    TwoSidedMismatch,
    Verdict,
    check_exceptionality,
    check_simplicity,
    cokernel_pair_conditions,
    sigma1,
    sigma2,
    steiner_pair_check,
)
from .engine import CohomologyEngine, CohomologyTable, EngineDisagreement, cohom, cohom_table, hd
from .nodes import SyzygyId, dual, line_sum, parse_bundle, syzygy, tensor, twist
from .resolution import (
    InvalidResolution,
    PureResolution,
    betti_inequalities,
    dualize,
    euler_char,
    hilbert_defect,
    hk_betti,
    normalize,
    syzygy_rank_c1,
    validate,
)

__version__ = "0.1.0"
