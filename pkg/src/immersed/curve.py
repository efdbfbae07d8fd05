"""Closed polylines as generic immersed plane curves.

A :class:`ClosedCurve` is an oriented cyclic polyline. Parameters along it
are ``t = i + s`` with ``i`` an edge index and ``s`` in ``[0, 1)`` the
fraction along edge ``i``. Genericity (no zero-length edges, no reversals,
transverse double points only, a well-defined lowest point) is checked by
:func:`validate`, never repaired.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerances:
    """Gates that separate generic curves from degenerate ones.

    Lengths are in curve units, ``vertex`` is in parameter units and the
    angles are in radians.
    """

    edge: float = 1e-9
    turn: float = 1e-6
    angle: float = 1e-6
    sep: float = 1e-9
    vertex: float = 1e-6
    minimum: float = 1e-9
    index: float = 1e-6


DEFAULT_TOL = Tolerances()


class GenericityKind(str, Enum):
    ZERO_LENGTH_EDGE = "ZeroLengthEdge"
    REVERSAL_VERTEX = "ReversalVertex"
    NON_TRANSVERSE_CROSSING = "NonTransverseCrossing"
    NEAR_TRIPLE_POINT = "NearTriplePoint"
    CROSSING_NEAR_VERTEX = "CrossingNearVertex"
    AMBIGUOUS_MINIMUM = "AmbiguousMinimum"
    TOO_FEW_VERTICES = "TooFewVertices"


class GenericityError(ValueError):
    """The curve is not a generic immersion; ``kind`` names the clause."""

    def __init__(self, kind: GenericityKind, **detail):
        self.kind = GenericityKind(kind)
        self.detail = detail
        extra = ", ".join(f"{k}={v!r}" for k, v in detail.items())
        super().__init__(f"{self.kind.value}: {extra}" if extra else self.kind.value)


class PointOnCurve(ValueError):
    pass


class IndexNotIntegral(ArithmeticError):
    """Total turning is not within tolerance of a multiple of 2*pi."""


@dataclass(frozen=True)
class ClosedCurve:
    """Oriented closed polyline; edge ``i`` joins vertex ``i`` to ``i + 1 mod n``.

    Construction only enforces finiteness and ``n >= 3``. The remaining
    immersion invariants are checked by :func:`validate`.
    """

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        pts = tuple(Point2(float(x), float(y)) for x, y in self.vertices)
        if len(pts) < 3:
            raise GenericityError(GenericityKind.TOO_FEW_VERTICES, n=len(pts))
        for i, (x, y) in enumerate(pts):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"vertex {i} is not finite: ({x}, {y})")
        object.__setattr__(self, "vertices", pts)

    @classmethod
    def from_xy(cls, xs: Iterable[float], ys: Iterable[float]) -> ClosedCurve:
        return cls(tuple(zip(xs, ys)))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.vertices, dtype=float)
        arr.setflags(write=False)
        return arr

    def edge(self, i: int) -> tuple[Point2, Point2]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def edge_vector(self, i: int) -> tuple[float, float]:
        a, b = self.edge(i)
        return b.x - a.x, b.y - a.y

    def point_at(self, t: float) -> Point2:
        t = t % self.n
        i = int(t)
        s = t - i
        a, b = self.edge(i)
        return Point2(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y))

    def unit_tangent(self, i: int) -> tuple[float, float]:
        dx, dy = self.edge_vector(i)
        length = math.hypot(dx, dy)
        return dx / length, dy / length

    # rigid motions and symmetries; all return new curves

    def reversed(self) -> ClosedCurve:
        """Same trace, opposite orientation; parameter ``t`` maps to ``n - t``."""
        v = self.vertices
        return ClosedCurve((v[0],) + v[:0:-1])

    def mirror_x(self) -> ClosedCurve:
        return ClosedCurve(tuple((-x, y) for x, y in self.vertices))

    def translated(self, dx: float, dy: float) -> ClosedCurve:
        return ClosedCurve(tuple((x + dx, y + dy) for x, y in self.vertices))

    def rotated(self, angle: float, about: tuple[float, float] = (0.0, 0.0)) -> ClosedCurve:
        c, s = math.cos(angle), math.sin(angle)
        ox, oy = about
        return ClosedCurve(
            tuple(
                (ox + c * (x - ox) - s * (y - oy), oy + s * (x - ox) + c * (y - oy))
                for x, y in self.vertices
            )
        )

    def scaled(self, factor: float) -> ClosedCurve:
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        return ClosedCurve(tuple((factor * x, factor * y) for x, y in self.vertices))

    def refined(self) -> ClosedCurve:
        """Insert the midpoint of every edge as a new vertex."""
        out = []
        for i in range(self.n):
            a, b = self.edge(i)
            out.append(a)
            out.append(((a.x + b.x) / 2, (a.y + b.y) / 2))
        return ClosedCurve(tuple(out))


@dataclass(frozen=True)
class CurveSystem:
    """Disjoint union of closed curves. Component 0 is the main curve."""

    components: tuple[ClosedCurve, ...] = field(default_factory=tuple)

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a curve system needs at least one component")
        object.__setattr__(self, "components", comps)

    def __len__(self) -> int:
        return len(self.components)


def check_structure(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> None:
    """Raise on the first zero-length edge or reversal vertex."""
    arr = curve.array
    d = np.roll(arr, -1, axis=0) - arr
    lengths = np.hypot(d[:, 0], d[:, 1])
    short = np.flatnonzero(lengths < tol.edge)
    if short.size:
        i = int(short[0])
        raise GenericityError(GenericityKind.ZERO_LENGTH_EDGE, edge=i, length=float(lengths[i]))
    limit = math.pi - tol.turn
    for i in range(curve.n):
        angle = turning_angle(curve, i)
        if not -limit < angle < limit:
            raise GenericityError(GenericityKind.REVERSAL_VERTEX, vertex=i, angle=angle)


def turning_angle(curve: ClosedCurve, vertex_index: int) -> float:
    """Signed angle from the incoming to the outgoing edge at a vertex.

    Positive means a counterclockwise turn.
    """
    n = curve.n
    if not 0 <= vertex_index < n:
        raise IndexError(f"vertex index {vertex_index} out of range for {n} vertices")
    ax, ay = curve.edge_vector((vertex_index - 1) % n)
    bx, by = curve.edge_vector(vertex_index)
    return math.atan2(ax * by - ay * bx, ax * bx + ay * by)


def total_turning(curve: ClosedCurve) -> float:
    return math.fsum(turning_angle(curve, i) for i in range(curve.n))


def _index_from_turning(total: float, tol: Tolerances) -> int:
    k = total / TWO_PI
    idx = round(k)
    if abs(k - idx) > tol.index:
        raise IndexNotIntegral(f"total turning / 2pi = {k!r} is not near an integer")
    return int(idx)


def rotation_index(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL, *, check: bool = True) -> int:
    """Winding number of the tangent direction (total turning / 2*pi).

    Args:
        curve: the closed polyline.
        tol: genericity tolerances.
        check: run :func:`validate` first. Callers that already validated
            may skip it.
    """
    if check:
        validate(curve, tol)
    else:
        check_structure(curve, tol)
    return _index_from_turning(total_turning(curve), tol)


def distance_to_curve(curve: ClosedCurve, point: Sequence[float]) -> float:
    arr = curve.array
    a = arr
    b = np.roll(arr, -1, axis=0)
    p = np.asarray(point, dtype=float)
    ab = b - a
    denom = np.einsum("ij,ij->i", ab, ab)
    s = np.clip(np.einsum("ij,ij->i", p - a, ab) / denom, 0.0, 1.0)
    closest = a + s[:, None] * ab
    return float(np.min(np.hypot(*(closest - p).T)))


def winding_number(curve: ClosedCurve, point: Sequence[float], tol: Tolerances = DEFAULT_TOL) -> int:
    """Signed number of counterclockwise turns the curve makes around ``point``.

    Uses upward/downward crossings of the horizontal ray to the right of the
    point, counting an upward crossing with the point on the left as +1.
    """
    px, py = float(point[0]), float(point[1])
    dist = distance_to_curve(curve, (px, py))
    if dist < tol.sep:
        raise PointOnCurve(f"point ({px}, {py}) is {dist:.3g} from the curve")
    wn = 0
    v = curve.vertices
    n = len(v)
    for i in range(n):
        ax, ay = v[i]
        bx, by = v[(i + 1) % n]
        side = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
        if ay <= py:
            if by > py and side > 0:
                wn += 1
        elif by <= py and side < 0:
            wn -= 1
    return wn


def validate(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> None:
    """Raise :class:`GenericityError` unless the curve is a generic immersion.

    Checks, in order: edge lengths, turning angles, the self-intersections
    (transverse, away from vertices, no triple points) and finally that the
    lowest point is a unique vertex or a unique horizontal edge.
    """
    from immersed.intersect import find_bruteforce
    from immersed.whitney import locate_minimum

    xs = find_bruteforce(curve, tol)
    locate_minimum(curve, xs, tol)


def is_generic(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> bool:
    try:
        validate(curve, tol)
    except GenericityError:
        return False
    return True
