"""Exact construction and verification of balancedly multi-splittable partial Hadamard matrices."""

from .bibd import (
    bibd_parameters,
    concurrence_values,
    from_bibd,
    to_bibd,
    verify_bibd,
    verify_splittable_bibd,
)
from .bmsph import (
    EXHAUSTIVE_BUDGET,
    cluster_rows,
    compose,
    construct_bmsph,
    decompose,
    half_selections,
    pair_profile,
    sample_selections,
    selection_values,
    sign_normalize,
    verify_exhaustive,
    verify_structural,
)
from .constructions import (
    IncidenceMatrix,
    OrthogonalArray,
    check_core,
    conference_matrix,
    core_to_partial,
    field_of_order,
    hadamard_core,
    jacobsthal,
    oa_from_affine_plane,
    paley_hadamard,
    plane_from_oa,
    verify_incidence,
    verify_oa,
)
from .eqlines import (
    ExtensionReport,
    LineSet,
    extend_exhaustive,
    extract_lines,
    saturation_ratio,
    structured_candidates,
    structured_extensions,
    verify_equiangular,
)
from .errors import (
    BadParameters,
    BadResidueClass,
    BadSelectionSize,
    BudgetExceeded,
    ClassSizeViolation,
    DegreeZero,
    DimensionMismatch,
    DivisionByZero,
    EmbeddingFailure,
    EvenCharacteristic,
    IndexOutOfRange,
    InvalidCore,
    InvalidOA,
    KindMismatch,
    NonPrimeCharacteristic,
    NotHadamard,
    NotMultiSplittable,
    NotPrimePower,
    NotRegular,
    ParseError,
    RegularityFailure,
    ShapeMismatch,
    SplithadError,
)
from .estimators import MultiSplitDecomposer, Regularizer
from .exactmat import (
    BlockedMatrix,
    SignedPermutation,
    VerifyReport,
    apply_signed_perms,
    gram,
    gram_popcount,
    select_blocks,
)
from .gfield import Field, FieldElement, arith, build_field, quadratic_character
from .io import read_artifact, write_artifact
from .quaternary import (
    QuatMatrix,
    construct_quaternary,
    q_compose,
    q_verify,
    quaternary_core,
    quaternary_hadamard,
    question1_probe,
)
from .regular_embed import RegularBMSPH, embed, regularize, verify_hadamard

__version__ = "0.1.0"

__all__ = [
    "apply_signed_perms",
    "arith",
    "BadParameters",
    "BadResidueClass",
    "BadSelectionSize",
    "bibd_parameters",
    "BlockedMatrix",
    "BudgetExceeded",
    "build_field",
    "check_core",
    "ClassSizeViolation",
    "cluster_rows",
    "compose",
    "concurrence_values",
    "conference_matrix",
    "construct_bmsph",
    "construct_quaternary",
    "core_to_partial",
    "decompose",
    "DegreeZero",
    "DimensionMismatch",
    "DivisionByZero",
    "embed",
    "EmbeddingFailure",
    "EvenCharacteristic",
    "EXHAUSTIVE_BUDGET",
    "extend_exhaustive",
    "ExtensionReport",
    "extract_lines",
    "Field",
    "field_of_order",
    "FieldElement",
    "from_bibd",
    "gram",
    "gram_popcount",
    "hadamard_core",
    "half_selections",
    "IncidenceMatrix",
    "IndexOutOfRange",
    "InvalidCore",
    "InvalidOA",
    "jacobsthal",
    "KindMismatch",
    "LineSet",
    "MultiSplitDecomposer",
    "NonPrimeCharacteristic",
    "NotHadamard",
    "NotMultiSplittable",
    "NotPrimePower",
    "NotRegular",
    "oa_from_affine_plane",
    "OrthogonalArray",
    "pair_profile",
    "paley_hadamard",
    "ParseError",
    "plane_from_oa",
    "q_compose",
    "q_verify",
    "quadratic_character",
    "quaternary_core",
    "quaternary_hadamard",
    "QuatMatrix",
    "question1_probe",
    "read_artifact",
    "RegularBMSPH",
    "RegularityFailure",
    "regularize",
    "Regularizer",
    "sample_selections",
    "saturation_ratio",
    "select_blocks",
    "selection_values",
    "ShapeMismatch",
    "sign_normalize",
    "SignedPermutation",
    "SplithadError",
    "structured_candidates",
    "structured_extensions",
    "to_bibd",
    "verify_bibd",
    "verify_equiangular",
    "verify_exhaustive",
    "verify_hadamard",
    "verify_incidence",
    "verify_oa",
    "verify_splittable_bibd",
    "verify_structural",
    "VerifyReport",
    "write_artifact",
]
