"""Rotation index, signed double points and Whitney's formula for plane polylines."""

__version__ = "0.1.0"

from immersed.curve import (  # noqa: E402
    DEFAULT_TOL,
    ClosedCurve,
    CurveSystem,
    GenericityError,
    GenericityKind,
    Point2,
    PointOnCurve,
    Tolerances,
    rotation_index,
    turning_angle,
    validate,
    winding_number,
)
from immersed.intersect import Intersection, find_bruteforce, find_sweep, order_from  # noqa: E402
from immersed.whitney import WhitneyReport, analyze, base_point, sign_intersections  # noqa: E402
from immersed.construct import (  # noqa: E402
    RandomCurveSpec,
    excise_disks,
    glue_strip,
    minimal_curve,
    random_curve,
    seed_disk_boundary,
)
