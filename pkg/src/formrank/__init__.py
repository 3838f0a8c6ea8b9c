"""Rank structure of subspaces of bilinear forms over finite fields."""

__version__ = "0.1.0"

from .gf import GF, FieldElement, FieldMismatch, hermitian_quadratic, subfield_basis  # noqa: E402
from .linalg import FormMatrix, Subspace, batch_det, batch_pfaffian, batch_rank, det, pfaffian, rank  # noqa: E402
from .formspace import (  # noqa: E402
    FormSpace,
    alt_space,
    alternating_part,
    bil_space,
    classify_kind,
    element,
    isotropic_subspace,
    random_subspace,
    sub_at_subspace,
    sub_at_vector,
    symm_space,
)
from .construct import (  # noqa: E402
    build,
    cyclic_alternating,
    cyclic_symmetric,
    linearized_two_rank,
    symmetric_two_rank,
    trace_hyperplane,
)
from .enumeration import (  # noqa: E402
    BudgetExceeded,
    RankProfile,
    n_count,
    pfaffian_divisibility,
    profile,
    rank_distribution,
    verify_bounds,
    verify_common_zeros,
    verify_hermitian_count,
    z_count,
)
from .analyze import (  # noqa: E402
    ConstRankReport,
    SpreadReport,
    constant_rank_search,
    inverse_subspace_check,
    isotropic_point_count,
    mu_decomposition,
    radical_bijection,
    radical_spread,
    rank_n_minus_1_correspondence,
)
