"""Exact solvers for covering points by lines, circles, vertical parabolas
and (in R^3) planes: polynomial kernels, subset-sweep inclusion-exclusion
deciders, richness-driven branching, and a brute-force oracle for
cross-checking. All geometry is exact rational."""

from .curve_branch import (
    BranchConfig,
    CoverResult,
    SearchStats,
    budget_partitions,
    cc_recursive,
    curve_cover,
    recursion_depth,
    rich_poor_candidates,
)
from .geometry import (
    CIRCLE2,
    FAMILIES,
    LINE2,
    PLANE3,
    VPARABOLA2,
    Curve,
    FamilySpec,
    Flat,
    GeometryError,
    Plane3,
    Point,
    affine_hull,
    check_cover,
    curve_covers,
    curve_through,
    curves_intersect,
    enumerate_candidates,
    family_by_tag,
    flat_contains,
    line_through,
    max_collinear,
    plane_through,
    plane_through_line_point,
    pt,
    richness,
)
from .inclusion_exclusion import (
    CapExceededError,
    CoverableCounter,
    c_count,
    extract_cover,
    ie_decide,
    ie_min_cover,
    ie_sums,
    q_count,
    representative,
)
from .instances import Instance, InvalidInstanceError, generate, load_instance, parse_instance, save_instance, serialize_instance
from .kernel import KernelResult, curve_kernel, plane_kernel_r3
from .oracle import count_rich, oracle_decide, oracle_min_cover
from .plane_branch import (
    PlaneBranchConfig,
    StampedLine,
    StampedLineSet,
    extend_lines,
    is_too_degenerate,
    pc_recursive,
    plane_cover,
    ripe_lines,
)
