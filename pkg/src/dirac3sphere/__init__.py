"""Dirac spectra of homogeneous metrics on the 3-sphere and on SO(3).

The library computes the tridiagonal level blocks of the Dirac operator for
any left-invariant metric given by a positive triple (a, b, c), solves them
with a certified Sturm-count bisection, bounds their squares through
Gershgorin row estimates, certifies the fundamental tone in the positive
scalar curvature regime, and inverts (volume, scal, discriminator) data back
to the metric.
"""

from .blocks import (
    DiracBlock,
    RepresentationOperator,
    build_block,
    build_from_representation,
    char_poly_small_n,
    closed_form_eigs,
)
from .eigen import (
    SymmetrizedTridiagonal,
    count_below,
    eigenvalues,
    min_abs_eigenvalue,
    symmetrize,
)
from .errors import (
    CertificationError,
    ConsistencyError,
    Dirac3SphereError,
    DomainError,
    InconsistentInputError,
    TruncationWarning,
    UncertifiableError,
    UnsupportedLevelError,
    WrongRegimeError,
)
from .gershgorin import (
    BaseCaseReport,
    GershgorinTable,
    base_cases,
    closed_form_G,
    gershgorin_table,
    min_row_bound,
    row_bound,
    squared_row_entries,
    triangle_increment,
)
from .inverse import (
    ReconstructionResult,
    cubic_positive_roots,
    reconstruct,
    reconstruct_nonpositive,
    reconstruct_positive_C,
    reconstruct_positive_mu,
)
from .metric import (
    DIM_SPINOR,
    NEGATIVE,
    POSITIVE,
    S3,
    SO3,
    SO3_NONTRIVIAL,
    SO3_TRIVIAL,
    ZERO,
    HeatInvariants,
    Metric,
    MetricInvariants,
    heat_invariants,
    invariants,
    scal_product_form,
    scal_sign_classification,
    sectional_curvatures,
    volume,
)
from .spectrum import (
    CertificationTrace,
    HeatTraceResult,
    SmallestEigenvalueReport,
    SpectralLine,
    Spectrum,
    admissible_levels,
    assemble,
    certify_fundamental_tone,
    counting_function,
    enumerated_min_abs,
    heat_trace,
    level_lines,
    smallest,
    weyl_count_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "BaseCaseReport",
    "CertificationError",
    "CertificationTrace",
    "ConsistencyError",
    "DIM_SPINOR",
    "Dirac3SphereError",
    "DiracBlock",
    "DomainError",
    "GershgorinTable",
    "HeatInvariants",
    "HeatTraceResult",
    "InconsistentInputError",
    "Metric",
    "MetricInvariants",
    "NEGATIVE",
    "POSITIVE",
    "ReconstructionResult",
    "RepresentationOperator",
    "S3",
    "SO3",
    "SO3_NONTRIVIAL",
    "SO3_TRIVIAL",
    "SmallestEigenvalueReport",
    "SpectralLine",
    "Spectrum",
    "SymmetrizedTridiagonal",
    "TruncationWarning",
    "UncertifiableError",
    "UnsupportedLevelError",
    "WrongRegimeError",
    "ZERO",
    "admissible_levels",
    "assemble",
    "base_cases",
    "build_block",
    "build_from_representation",
    "certify_fundamental_tone",
    "char_poly_small_n",
    "closed_form_G",
    "closed_form_eigs",
    "count_below",
    "counting_function",
    "cubic_positive_roots",
    "eigenvalues",
    "enumerated_min_abs",
    "gershgorin_table",
    "heat_invariants",
    "heat_trace",
    "invariants",
    "level_lines",
    "min_abs_eigenvalue",
    "min_row_bound",
    "reconstruct",
    "reconstruct_nonpositive",
    "reconstruct_positive_C",
    "reconstruct_positive_mu",
    "row_bound",
    "scal_product_form",
    "scal_sign_classification",
    "sectional_curvatures",
    "smallest",
    "squared_row_entries",
    "symmetrize",
    "triangle_increment",
    "volume",
    "weyl_count_estimate",
]
