"""Exact computations in max-min convexity and its t-norm relatives.

All arithmetic is rational (fractions.Fraction); floats are rejected at
the door so every reported witness and every negative answer is exact.
The sibling command line tool is ``maxminconv``.
"""

from .core import (
    DomainError,
    LUKASIEWICZ,
    MIN,
    PRODUCT,
    PreconditionError,
    ResolutionExhausted,
    SemiringBounds,
    TNorm,
    UNIT,
    as_value,
    residual,
    tnorm_from_tag,
    value_grid,
)
from .geometry import (
    Point,
    RadicalSum,
    SegmentDecomposition,
    SegmentPiece,
    geodesic_distance,
    point,
    segment_contains,
    segment_decompose,
    segment_point,
)
from .semispaces import (
    Hyperplane,
    NotOnDiagonal,
    SemispaceId,
    diagonal_closure_hyperplane,
    hyperplane_contains,
    hyperplane_eval,
    index_set,
    sector_contains,
    semispace,
    semispace_closure_contains,
    semispace_contains,
    semispace_family,
)
from .hull import (
    ColorfulStrongResult,
    HullMembership,
    Polytope,
    caratheodory_reduce,
    colorful_strong,
    colorful_weak,
    combination,
    hull_member,
    polytope,
)
from .separation import (
    Box,
    NonSeparable,
    PointInHull,
    sep_condition,
    separate_box,
    separate_by_hyperplane,
    separate_point,
)
from .koenig import (
    InvalidDiagram,
    KoenigDiagram,
    Matrix,
    bottleneck_threshold,
    improve_diagram,
    internal_separation,
    intsep_sorted,
    koenig_diagram,
    tight_diagram,
)
from .maxt import (
    CommonWitness,
    CounterexampleSubfamily,
    MaxTMembership,
    NotFound,
    RadonPartition,
    TverbergPartition,
    centerpoint,
    helly_check,
    hull_member_maxt,
    radon_partition,
    tverberg_search,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "ColorfulStrongResult",
    "CommonWitness",
    "CounterexampleSubfamily",
    "DomainError",
    "HullMembership",
    "Hyperplane",
    "InvalidDiagram",
    "KoenigDiagram",
    "LUKASIEWICZ",
    "MIN",
    "Matrix",
    "MaxTMembership",
    "NonSeparable",
    "NotFound",
    "NotOnDiagonal",
    "Point",
    "PointInHull",
    "Polytope",
    "PreconditionError",
    "PRODUCT",
    "RadicalSum",
    "RadonPartition",
    "ResolutionExhausted",
    "SegmentDecomposition",
    "SegmentPiece",
    "SemiringBounds",
    "SemispaceId",
    "TNorm",
    "TverbergPartition",
    "UNIT",
    "as_value",
    "bottleneck_threshold",
    "caratheodory_reduce",
    "centerpoint",
    "colorful_strong",
    "colorful_weak",
    "combination",
    "diagonal_closure_hyperplane",
    "geodesic_distance",
    "helly_check",
    "hull_member",
    "hull_member_maxt",
    "hyperplane_contains",
    "hyperplane_eval",
    "improve_diagram",
    "index_set",
    "internal_separation",
    "intsep_sorted",
    "koenig_diagram",
    "point",
    "polytope",
    "radon_partition",
    "residual",
    "sector_contains",
    "segment_contains",
    "segment_decompose",
    "segment_point",
    "semispace",
    "semispace_closure_contains",
    "semispace_contains",
    "semispace_family",
    "sep_condition",
    "separate_box",
    "separate_by_hyperplane",
    "separate_point",
    "tight_diagram",
    "tnorm_from_tag",
    "tverberg_search",
    "value_grid",
]
