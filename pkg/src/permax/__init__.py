"""Verification toolkit for the rank bound on permanents of (-1,1)-matrices."""

from .d_family import (
    DTable,
    bound_for_rank,
    build_table,
    gap_value,
    laplace_identity,
    per_d_diag,
)
from .errors import (
    CounterexampleError,
    PreconditionError,
    PropertyFailure,
    RangeError,
    RankError,
    ShapeError,
)
from .exact_rank import rank
from .permanent import laplace_expand, mper, permanent_naive, permanent_rect, permanent_ryser
from .rank_vectors import (
    RankVector,
    SubmatrixFamily,
    check_min_law,
    family_rank_vector,
    k_family,
    majorize_leq,
    majorize_lt,
    multiplicity_law,
    rank_vector,
    replace_family,
)
from .reduction import (
    FORM_TAGS,
    FormClass,
    canonical_form,
    classify_form,
    condition_A,
    equivalent_to_d,
    normalize_first_line,
    q_block_form,
)
from .sign_matrix import (
    SignMatrix,
    apply,
    apply_step,
    check_index_set,
    d_matrix,
    format_matrix_text,
    format_transforms,
    invert_transforms,
    make_matrix,
    neg_count,
    p_matrix,
    parse_matrix_text,
    parse_transforms,
    q_matrix,
    submatrix_delete,
    submatrix_select,
)
from .verifier import (
    StratumRow,
    VerifyReport,
    enumerate_normalized,
    verify_mper,
    verify_properties,
    verify_square,
    write_report,
)

__version__ = "1.0.0"

__all__ = [
    "CounterexampleError",
    "DTable",
    "FORM_TAGS",
    "FormClass",
    "PreconditionError",
    "PropertyFailure",
    "RangeError",
    "RankError",
    "RankVector",
    "ShapeError",
    "SignMatrix",
    "StratumRow",
    "SubmatrixFamily",
    "VerifyReport",
    "apply",
    "apply_step",
    "bound_for_rank",
    "build_table",
    "canonical_form",
    "check_index_set",
    "check_min_law",
    "classify_form",
    "condition_A",
    "d_matrix",
    "enumerate_normalized",
    "equivalent_to_d",
    "family_rank_vector",
    "format_matrix_text",
    "format_transforms",
    "gap_value",
    "invert_transforms",
    "k_family",
    "laplace_expand",
    "laplace_identity",
    "majorize_leq",
    "majorize_lt",
    "make_matrix",
    "mper",
    "multiplicity_law",
    "neg_count",
    "normalize_first_line",
    "p_matrix",
    "parse_matrix_text",
    "parse_transforms",
    "per_d_diag",
    "permanent_naive",
    "permanent_rect",
    "permanent_ryser",
    "q_block_form",
    "q_matrix",
    "rank",
    "rank_vector",
    "replace_family",
    "submatrix_delete",
    "submatrix_select",
    "verify_mper",
    "verify_properties",
    "verify_square",
    "write_report",
]
