"""Homogeneous deformations of toric varieties and rational complexity-one
T-varieties via exact polyhedral combinatorics.

The library works entirely over Q: cones and polyhedra with pointed tail
cones, polyhedral divisors and divisorial fans on the projective line,
admissible Minkowski decompositions, the deformation families they induce,
Kodaira-Spencer Cech cocycles of locally trivial one-parameter families and
the graph-based spanning set of infinitesimal deformations of a smooth
complete toric variety in a fixed degree.
"""

from .decompose import (
    CoeffDecomposition,
    SliceDecomposition,
    check_admissible,
    check_admissible_sampled,
    check_slice_decomposition,
)
from .divisors import (
    INF,
    ONE,
    ZERO,
    DivisorialFan,
    DowngradeResult,
    P1Point,
    PolyDivisor,
    QDivisor,
    build_dfan,
    downgrade,
    halfspace_slice,
    upgrade_total_space,
)
from .errors import DomainError, InputError, TdeformError
from .families import (
    FamilyData,
    LocusConstraint,
    build_family,
    fiber,
    general_fiber_singularities,
    in_base,
)
from .fans import Fan, common_cone, is_complete, is_smooth, validate_fan
from .geometry import (
    Cone,
    Polyhedron,
    contains,
    dual_cone,
    eval_min,
    face,
    intersect,
    is_face_of,
    is_lattice_point,
    is_lattice_translate_of,
    minkowski_sum,
    normal_cone_generic_point,
    vertices,
)
from .kodaira import (
    CechCocycle,
    ChartCover,
    build_cover,
    ks_cocycle_toric,
    ks_cocycle_tvar,
    phi,
    translation_data,
)
from .t1 import (
    DeformationGraph,
    build_graph,
    omega,
    span_decomposition,
    span_report,
    t1_dimension,
)

__version__ = "0.1.0"
