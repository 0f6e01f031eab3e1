"""normlab: a desk-scale laboratory for finite-dimensional normed spaces.

Decides Birkhoff-James orthogonality, computes dual norms structurally,
and verifies or falsifies (with explicit numeric witnesses) when a map of a
space into its dual forces an inner-product structure.
"""

from .norms import (
    DimensionMismatch,
    DirectSum,
    MaxAbsFunctionals,
    NormSpec,
    NormSpecError,
    PNorm,
    PolytopeVertices,
    Quadratic,
    SchattenInf,
    SchattenOne,
    conjugate_exponent,
    dual,
    dual_eval,
    dual_eval_many,
    euclid,
    gauge_lp,
    norm_eval,
    norm_eval_many,
    norming_functional,
    pairing,
    sample_sphere,
    spec_from_dict,
    spec_from_json,
    spec_to_json,
)
from .linalg import jacobi_eigh, kernel_basis, singular_values, singular_values_by_gram
from .simplex import LPInfeasible, LPSolution, LPUnbounded, lp_solve
from .optim import (
    GainResult,
    MinResult,
    OptimError,
    extremize_gain,
    minimize_1d_convex,
    minimize_over_subspace,
)
from .orthogonality import (
    AsymmetryWitness,
    BJResult,
    bj_orthogonal,
    bj_orthogonal_subspace,
    bj_symmetry_scan,
)
from .embedding import (
    CheckResult,
    Definiteness,
    EmbeddingError,
    EmbeddingSpec,
    FormNotDefinite,
    InducedForm,
    OperatorBounds,
    VerificationReport,
    check_hermitian,
    check_isometry,
    check_kernel_orthogonality,
    coercivity,
    definiteness,
    functional_kernel,
    induced_form,
    induced_norm_deviation,
    operator_bounds,
    parallelogram_defect,
    parallelogram_defect_at,
    run_verifiers,
    symmetrize,
    verify_form_continuity,
    verify_isometric_embedding,
    verify_isometric_isomorphism,
    verify_norm_equivalence,
)
from .catalog import CatalogEntry, EntryOutcome, MasterReport, builtin, evaluate_entry, random_instance, run_all

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
