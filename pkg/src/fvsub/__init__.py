"""Exact computation of face vectors of subdivided simplicial complexes,
their limit polynomials, and the symmetry of the limit roots."""

from .barycentric import (
    FVector,
    LimitData,
    check_symmetry,
    denominator_report,
    eigendata,
    lambda_entry,
    lambda_matrix,
    limit_polys,
    limit_roots,
    normalized_polys,
    subdivided_fvector,
)
from .complexes import (
    FormalSum,
    ManifoldSpec,
    SimplicialComplex,
    barycentric_subdivide,
    euler_char,
    f_vector,
    interior_face_count,
    iota_sum,
    link,
    load_complex,
    manifold_identity_check,
)
from .exactalg import (
    EigenData,
    Polynomial,
    RationalMatrix,
    RootReport,
    finite_difference,
    isolate_real_roots,
    lt_eigendecompose,
    mat_power_apply,
    refine_root,
    stirling2,
)

__version__ = "0.1.0"
