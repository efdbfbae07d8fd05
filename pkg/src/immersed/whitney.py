"""Whitney's index formula for generic closed polylines.

With the base point ``p`` at the lowest point of the curve, ``mu = +1`` if
the curve passes ``p`` moving in the +x direction and ``-1`` otherwise. A
double point is positive when the tangent met first (leaving ``p``) is a
counterclockwise rotation, by less than pi, of the tangent met second. Then

    index = mu + N+ - N-

and for the boundary of an immersed surface of genus ``g`` the index is
``1 - 2g``, ``mu = +1`` and the first double point met is positive, so the
curve has at least ``2g + 2`` double points.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable

import numpy as np

from immersed.curve import (
    DEFAULT_TOL,
    ClosedCurve,
    GenericityError,
    GenericityKind,
    Point2,
    Tolerances,
    _index_from_turning,
    total_turning,
    turning_angle,
)
from immersed.intersect import BaseOnIntersection, Intersection, find_bruteforce, order_from


@dataclass(frozen=True)
class BasePoint:
    param: float
    location: Point2
    mu: int


@dataclass(frozen=True)
class SignedIntersection:
    base: Intersection
    sign: int
    first_visit_param: float


@dataclass(frozen=True)
class BoundaryConditions:
    """Necessary conditions for bounding an immersed genus-g surface.

    They are necessary only; passing all four does not prove that such a
    surface exists.
    """

    index_is_1_minus_2g: bool
    mu_is_plus_one: bool
    first_intersection_positive: bool
    count_at_least_2g_plus_2: bool

    @property
    def all_hold(self) -> bool:
        return all(asdict(self).values())


@dataclass(frozen=True)
class WhitneyReport:
    index: int
    base: BasePoint
    n_plus: int
    n_minus: int
    identity_holds: bool
    candidate_genus: int | None
    boundary_conditions: BoundaryConditions | None
    first_intersection_positive: bool
    intersections: tuple[SignedIntersection, ...] = ()

    @property
    def mu(self) -> int:
        return self.base.mu

    @property
    def total(self) -> int:
        return self.n_plus + self.n_minus

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "mu": self.mu,
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "total": self.total,
            "identity_holds": self.identity_holds,
            "candidate_genus": self.candidate_genus,
            "first_intersection_positive": self.first_intersection_positive,
            "boundary_conditions": (
                asdict(self.boundary_conditions) if self.boundary_conditions else None
            ),
            "base": {
                "param": self.base.param,
                "location": list(self.base.location),
                "mu": self.base.mu,
            },
            "intersections": [
                {
                    "t1": s.base.t1,
                    "t2": s.base.t2,
                    "point": list(s.base.point),
                    "sign": s.sign,
                }
                for s in self.intersections
            ],
        }


def locate_minimum(curve: ClosedCurve, xs: Iterable[Intersection],
                   tol: Tolerances = DEFAULT_TOL) -> BasePoint:
    """Base point at the lowest vertex or at the midpoint of the lowest edge."""
    n = curve.n
    ys = curve.array[:, 1]
    ymin = float(ys.min())
    low = np.flatnonzero(ys <= ymin + tol.minimum).tolist()
    if len(low) == 1:
        i = low[0]
        angle = turning_angle(curve, i)
        if angle == 0:
            raise GenericityError(GenericityKind.AMBIGUOUS_MINIMUM, vertices=low)
        return BasePoint(float(i), curve.vertices[i], 1 if angle > 0 else -1)
    if len(low) == 2:
        i, j = low
        if j == i + 1:
            edge = i
        elif i == 0 and j == n - 1:
            edge = n - 1
        else:
            raise GenericityError(GenericityKind.AMBIGUOUS_MINIMUM, vertices=low)
        dx, _ = curve.edge_vector(edge)
        if dx == 0:
            raise GenericityError(GenericityKind.AMBIGUOUS_MINIMUM, vertices=low)
        param = edge + 0.5
        try:
            order_from(xs, param, n, tol)
        except BaseOnIntersection:
            raise GenericityError(GenericityKind.AMBIGUOUS_MINIMUM, edge=edge,
                                  reason="base point on a double point") from None
        return BasePoint(param, curve.point_at(param), 1 if dx > 0 else -1)
    raise GenericityError(GenericityKind.AMBIGUOUS_MINIMUM, vertices=low)


def base_point(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> BasePoint:
    return locate_minimum(curve, find_bruteforce(curve, tol), tol)


def _cross(a: tuple[float, float], b: tuple[float, float]) -> float:
    return a[0] * b[1] - a[1] * b[0]


def sign_intersections(curve: ClosedCurve, base: BasePoint, xs: Iterable[Intersection],
                       tol: Tolerances = DEFAULT_TOL, *,
                       flip_convention: bool = False) -> list[SignedIntersection]:
    """Attach Whitney signs relative to ``base``.

    ``v1`` is the tangent at the visit reached first from the base point and
    ``v2`` the other one; the sign is that of ``cross(v2, v1)``.
    ``flip_convention`` uses ``cross(v1, v2)`` instead and exists only so the
    tests can show that the identity singles out the right convention.
    """
    signed = []
    for t, x, which in order_from(xs, base.param, curve.n, tol):
        if which != "first":
            continue
        v1, v2 = (x.dir1, x.dir2) if t == x.t1 else (x.dir2, x.dir1)
        c = _cross(v1, v2) if flip_convention else _cross(v2, v1)
        signed.append(SignedIntersection(x, 1 if c > 0 else -1, (t - base.param) % curve.n))
    return signed


def candidate_genus(index: int) -> int | None:
    if index <= -1 and index % 2 != 0:
        return (1 - index) // 2
    return None


def analyze(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL, *,
            finder=find_bruteforce, flip_convention: bool = False) -> WhitneyReport:
    """Validate the curve and compute every field of a :class:`WhitneyReport`.

    The index comes from the turning angles and the signed counts from the
    double points; ``identity_holds`` compares the two.
    """
    xs = finder(curve, tol)
    base = locate_minimum(curve, xs, tol)
    index = _index_from_turning(total_turning(curve), tol)
    signed = sign_intersections(curve, base, xs, tol, flip_convention=flip_convention)
    n_plus = sum(1 for s in signed if s.sign > 0)
    n_minus = len(signed) - n_plus
    first_positive = bool(signed) and signed[0].sign > 0
    genus = candidate_genus(index)
    conditions = None
    if genus is not None:
        conditions = BoundaryConditions(
            index_is_1_minus_2g=index == 1 - 2 * genus,
            mu_is_plus_one=base.mu == 1,
            first_intersection_positive=first_positive,
            count_at_least_2g_plus_2=len(signed) >= 2 * genus + 2,
        )
    return WhitneyReport(
        index=index,
        base=base,
        n_plus=n_plus,
        n_minus=n_minus,
        identity_holds=index == base.mu + n_plus - n_minus,
        candidate_genus=genus,
        boundary_conditions=conditions,
        first_intersection_positive=first_positive,
        intersections=tuple(signed),
    )
