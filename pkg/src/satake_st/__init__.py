"""Exact SU(N) character algebra with Sato-Tate statistics for Satake parameters."""

from .weights import (
    CoefficientIndex,
    DominantWeight,
    SpectralParameter,
    WeightVector,
    aleph,
    aleph_inv,
    b_entry,
    langlands,
    laplace_eigenvalue,
    is_dominant,
)
from .characters import (
    CharacterTable,
    TensorSpec,
    TermBudgetExceeded,
    dim,
    dominant_part_sum,
    eval_char,
    product,
    specialization_bound_n3,
    tensor_decompose,
    trivial_multiplicity,
    weight_table,
)
from .satake import (
    SatakeParameter,
    canonicalize,
    coefficient,
    hecke_check_n3,
    in_T0,
    in_T1,
    varrho,
)
from .sampling import (
    McEstimate,
    RngSeed,
    char_monomial,
    mc_integrate,
    plancherel_density_gl2,
    sample_st,
    st_density_gl2,
)
from .families import (
    Family,
    FamilyMember,
    FamilyValidationError,
    TestFunctionH,
    equidist_report,
    h_eval,
    l_functional,
    load_family,
    save_family,
    synth_family,
    weight,
)
from .bounds import (
    Gl3BoundParams,
    convergence_error,
    orthogonality_error,
    p_total,
    rate_report,
    verify_multiplicity_bound,
)

__version__ = "0.1.0"
