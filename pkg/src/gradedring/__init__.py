"""Groupoid graded algebras over the rationals: construction, commutants and the induced action."""

from .algebra import (
    FiniteAlgebra,
    GradedAlgebra,
    MatrixUnitAlgebra,
    center,
    check_filter,
    check_strong,
    check_unital,
    commutant,
    local_commutant,
    local_units,
    matrix_unit_algebra,
    object_block,
    subring,
    subspace_product,
)
from .construction import (
    NonfreeCertificate,
    SelectionSpec,
    build_das,
    category_algebra,
    monoid_counterexample,
    nonfree_check,
    nonfree_example,
)
from .groupoid import (
    FiniteCategory,
    FiniteGroupoid,
    Subgroupoid,
    as_groupoid,
    connected_components,
    enumerate_subgroupoids,
    hom_set,
    is_cancellative,
    validate_category,
)
from .linalg import Subspace, solve, span, subspace_intersect, subspace_sum
from .miyashita import (
    DualBasis,
    InvertiblePair,
    SigmaMap,
    apply_fX,
    commutant_group_theorem,
    commutant_groupoid_theorem,
    dual_basis,
    fixed_subspace,
    projectivity_certificate,
    sigma_center,
    sigma_general,
    sigma_graded,
    verify_invertible,
)

__version__ = "0.1.0"
