"""Normal Hilbert functions of two monomial ideals in a 2-dimensional normal
affine semigroup ring, their Bhattacharya coefficients, monomial joint
reductions and bigraded second local cohomology lengths."""

from .analysis import Analysis, Options
from .cohomology import (
    CohomologyCell,
    TheoremReport,
    check_theorem,
    difference_table,
    h2_cells,
    h2_length_direct,
    h2_length_formula,
)
from .errors import (
    IngestedSourceError,
    InputError,
    InvariantViolation,
    NormalHilbertError,
    NotMPrimaryError,
    StabilizationError,
)
from .hilbert import (
    BhattacharyaPoly,
    CoeffBundle,
    HilbertTable,
    NormalPoly,
    coefficient_bundle,
    fit_bhattacharya,
    gr_hs_constants,
    hilbert_table,
    ingest_table,
    mixed_multiplicity,
    single_normal_poly,
    table_from_function,
)
from .ideals import (
    MonomialIdeal,
    NormalFiltration,
    closure,
    colength,
    filtration_at,
    ideal_colon_monomial,
    ideal_product,
    ideal_sum,
    ideal_translate,
)
from .jointred import (
    JointReductionCertificate,
    Window,
    jrn_zero,
    normal_reduction_number,
    search_good_pair,
    verify_good_joint_reduction,
    verify_joint_reduction,
)
from .lattice import (
    NewtonRegion,
    Semigroup2,
    enumerate_complement,
    newton_region,
    region_contains,
    region_scale_sum,
    semigroup_contains,
)
from .problem import ProblemSpec, parse_problem

__version__ = "0.1.0"
