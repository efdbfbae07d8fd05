"""Curves bounding immersed surfaces, and random generic curves.

The minimal genus-g boundary is built in three stages:

1. An immersed disk whose boundary has two double points: a wide body
   rectangle with a tongue that leaves on the right, climbs, and folds
   back down over the body. The tongue tip overlaps the body, and the
   two sides of the tongue cross the top of the body.
2. ``g`` small clockwise circles are removed from the part of the body
   covered once, below the tongue tip.
3. Each circle is joined to the bottom edge of the tongue tip by a
   vertical strip. The strip leaves the circle through its bottom arc,
   crosses the circle's top arc (two new double points) and attaches to the
   tip edge from below.

Each strip lowers the Euler characteristic by one and merges two
boundary components, so after ``g`` strips the boundary is connected and
bounds a genus-``g`` surface with ``2g + 2`` double points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from immersed.curve import DEFAULT_TOL, ClosedCurve, CurveSystem, Point2, Tolerances, is_generic
from immersed.curve import winding_number
from immersed.intersect import find_bruteforce
from immersed.predicates import segments_touch
from immersed.rng import MASK64, SplitMix64
from immersed.whitney import analyze


class PlacementOverlap(ValueError):
    pass


class CorridorBlocked(ValueError):
    pass


class CertificationFailed(AssertionError):
    def __init__(self, field: str, expected, actual):
        self.field = field
        super().__init__(f"{field}: expected {expected!r}, got {actual!r}")


class GenericityExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Layout:
    slot_spacing: float = 2.0
    margin: float = 1.0
    body_height: float = 4.0
    tip_bottom: float = 2.5
    anchor_height: float = 1.2
    hole_radius: float = 0.5
    hole_sides: int = 12
    strip_half_width: float = 0.1


DEFAULT_LAYOUT = Layout()


@dataclass(frozen=True)
class SeedDiskCurve:
    curve: ClosedCurve
    anchors: tuple[Point2, ...]
    m2_anchor: Point2


def seed_disk_boundary(width_slots: int, layout: Layout = DEFAULT_LAYOUT) -> SeedDiskCurve:
    """Boundary of an immersed disk with two double points and ``width_slots`` hole slots."""
    g = int(width_slots)
    if g < 1:
        raise ValueError("need at least one slot")
    L = layout
    w = 2 * L.margin + L.slot_spacing * g
    h = L.body_height
    a, b = L.margin / 2, w - L.margin / 2
    tip = L.tip_bottom
    vertices = [
        (0.0, 0.0), (w, 0.0), (w, 1.0),
        # tongue: out to the right, up the riser, back left along the top
        (w + 3.0, 1.0), (w + 3.0, h + 3.0), (a, h + 3.0),
        # tip comes down over the body
        (a, tip), (b, tip), (b, h + 1.0),
        (w + 1.0, h + 1.0), (w + 1.0, 3.0), (w, 3.0),
        (w, h), (0.0, h),
    ]
    anchors = tuple(
        Point2(L.margin + L.slot_spacing * (k + 0.5), L.anchor_height) for k in range(g)
    )
    return SeedDiskCurve(ClosedCurve(vertices), anchors, Point2((a + b) / 2, (tip + h) / 2))


def polygon_circle(center: tuple[float, float], radius: float, sides: int,
                   clockwise: bool = True) -> ClosedCurve:
    """Regular polygon with a horizontal bottom edge; for clockwise it is edge 0."""
    cx, cy = center
    step = 2 * math.pi / sides
    start = -math.pi / 2 + step / 2
    sgn = -1 if clockwise else 1
    return ClosedCurve([
        (cx + radius * math.cos(start + sgn * k * step), cy + radius * math.sin(start + sgn * k * step))
        for k in range(sides)
    ])


def _edges(curve: ClosedCurve):
    return [curve.edge(i) for i in range(curve.n)]


def components_touch(c1: ClosedCurve, c2: ClosedCurve) -> int:
    """Number of touching edge pairs between two curves (bounding boxes first)."""
    a1 = c1.array
    a2 = c2.array
    lo1 = np.minimum(a1, np.roll(a1, -1, axis=0))
    hi1 = np.maximum(a1, np.roll(a1, -1, axis=0))
    lo2 = np.minimum(a2, np.roll(a2, -1, axis=0))
    hi2 = np.maximum(a2, np.roll(a2, -1, axis=0))
    overlap = (
        (lo1[:, None, 0] <= hi2[None, :, 0]) & (lo2[None, :, 0] <= hi1[:, None, 0])
        & (lo1[:, None, 1] <= hi2[None, :, 1]) & (lo2[None, :, 1] <= hi1[:, None, 1])
    )
    count = 0
    for i, j in zip(*np.nonzero(overlap)):
        if segments_touch(*c1.edge(int(i)), *c2.edge(int(j))):
            count += 1
    return count


def system_crossings(system: CurveSystem, tol: Tolerances = DEFAULT_TOL) -> int:
    """Double points of the union: self-intersections plus contacts between components."""
    comps = system.components
    total = sum(len(find_bruteforce(c, tol)) for c in comps)
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            total += components_touch(comps[i], comps[j])
    return total


def excise_disks(seed: SeedDiskCurve, g: int, layout: Layout = DEFAULT_LAYOUT,
                 tol: Tolerances = DEFAULT_TOL) -> CurveSystem:
    """Cut ``g`` small disks out of the singly covered part of the seed disk.

    Raises:
        PlacementOverlap: a circle would touch the seed curve or another
            circle, or would leave the multiplicity-1 region.
    """
    if not 1 <= g <= len(seed.anchors):
        raise ValueError(f"g must be in 1..{len(seed.anchors)}, got {g}")
    circles = []
    for k, anchor in enumerate(seed.anchors[:g]):
        circle = polygon_circle(anchor, layout.hole_radius, layout.hole_sides)
        if components_touch(seed.curve, circle):
            raise PlacementOverlap(f"circle {k} touches the seed curve")
        for m, other in enumerate(circles):
            if components_touch(other, circle):
                raise PlacementOverlap(f"circle {k} touches circle {m}")
        for p in (anchor, *circle.vertices):
            if winding_number(seed.curve, p, tol) != 1:
                raise PlacementOverlap(f"circle {k} leaves the multiplicity-1 region at {p}")
        circles.append(circle)
    return CurveSystem((seed.curve, *circles))


def _vertical_hit(p: Point2, q: Point2, x: float) -> float | None:
    """y where the segment pq meets the vertical line at x, if it spans x strictly."""
    if min(p.x, q.x) < x < max(p.x, q.x):
        return p.y + (x - p.x) * (q.y - p.y) / (q.x - p.x)
    return None


def glue_strip(system: CurveSystem, circle_index: int, layout: Layout = DEFAULT_LAYOUT) -> CurveSystem:
    """Join a circle to the main curve by a vertical strip above the circle.

    The two strip sides run from the circle's bottom edge up to the first
    rightward edge of the main curve above the circle, each crossing the
    circle's top arc once.

    Raises:
        CorridorBlocked: the corridor has no suitable attaching edges or the
            strip sides would hit anything besides the circle's top arc.
    """
    comps = system.components
    if not 1 <= circle_index < len(comps):
        raise ValueError(f"circle_index must be in 1..{len(comps) - 1}")
    main, circle = comps[0], comps[circle_index]
    cx = float(circle.array[:, 0].mean())
    cy = float(circle.array[:, 1].mean())
    hw = layout.strip_half_width
    xl, xr = cx - hw, cx + hw

    bottom = None
    for e, (p, q) in enumerate(_edges(circle)):
        yl, yr = _vertical_hit(p, q, xl), _vertical_hit(p, q, xr)
        if yl is not None and yr is not None and yl < cy and q.x < p.x:
            bottom = (e, yl, yr)
            break
    if bottom is None:
        raise CorridorBlocked(f"no leftward bottom edge of circle {circle_index} spans the corridor")

    target = None
    for e, (p, q) in enumerate(_edges(main)):
        yl, yr = _vertical_hit(p, q, xl), _vertical_hit(p, q, xr)
        if yl is None or yr is None or yl <= cy or yr <= cy:
            continue
        if target is None or yl < target[1]:
            target = (e, yl, yr, q.x > p.x)
    if target is None or not target[3]:
        raise CorridorBlocked(f"no rightward main edge above circle {circle_index}")

    be, byl, byr = bottom
    te, tyl, tyr, _ = target
    sides = [
        (Point2(xl, tyl), Point2(xl, byl)),
        (Point2(xr, tyr), Point2(xr, byr)),
    ]
    for side in sides:
        hits = []
        for k, comp in enumerate(comps):
            for e, edge in enumerate(_edges(comp)):
                if (k, e) in ((0, te), (circle_index, be)):
                    continue
                if segments_touch(*side, *edge):
                    hits.append((k, e))
        if len(hits) != 1 or hits[0][0] != circle_index:
            raise CorridorBlocked(f"strip side at x={side[0].x} meets {hits}")

    m = circle.n
    around = [circle.vertices[(be + 1 + k) % m] for k in range(m)]
    merged = (
        list(main.vertices[: te + 1])
        + [sides[0][0], sides[0][1]]
        + around
        + [sides[1][1], sides[1][0]]
        + list(main.vertices[te + 1:])
    )
    rest = tuple(c for k, c in enumerate(comps) if k not in (0, circle_index))
    return CurveSystem((ClosedCurve(merged), *rest))


def _certify(curve: ClosedCurve, g: int, tol: Tolerances) -> None:
    report = analyze(curve, tol)
    expected = {
        "total": 2 * g + 2,
        "index": 1 - 2 * g,
        "mu": 1,
        "n_plus": 1,
        "n_minus": 2 * g + 1,
        "first_intersection_positive": True,
        "identity_holds": True,
    }
    for name, want in expected.items():
        got = getattr(report, name)
        if got != want:
            raise CertificationFailed(name, want, got)


def minimal_curve(g: int, layout: Layout = DEFAULT_LAYOUT, tol: Tolerances = DEFAULT_TOL) -> ClosedCurve:
    """Boundary of an immersed genus-``g`` surface with exactly ``2g + 2`` double points.

    Raises:
        CertificationFailed: the analyzer disagrees with the expected
            counts; this means the layout constants are broken.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    system = excise_disks(seed_disk_boundary(g, layout), g, layout, tol)
    for _ in range(g):
        system = glue_strip(system, 1, layout)
    curve = system.components[0]
    _certify(curve, g, tol)
    return curve


@dataclass(frozen=True)
class RandomCurveSpec:
    seed: int
    modes: int = 4
    samples: int = 256
    decay: float = 0.7

    def __post_init__(self):
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.modes < 1:
            raise ValueError("modes must be >= 1")
        if self.samples < 64:
            raise ValueError("samples must be >= 64")
        if not self.decay > 0:
            raise ValueError("decay must be positive")


MAX_ATTEMPTS = 100
RETRY_MIX = 0xD1B54A32D192ED03


def _sample_trig(spec: RandomCurveSpec, attempt: int) -> ClosedCurve:
    # attempt 0 uses the seed as is; later attempts xor in attempt * RETRY_MIX
    rng = SplitMix64(spec.seed ^ ((attempt * RETRY_MIX) & MASK64))
    t = 2 * np.pi * np.arange(spec.samples) / spec.samples
    x = np.zeros(spec.samples)
    y = np.zeros(spec.samples)
    for k in range(1, spec.modes + 1):
        a, b, c, d = (rng.uniform(-1.0, 1.0) for _ in range(4))
        scale = spec.decay ** k
        ck, sk = np.cos(k * t), np.sin(k * t)
        x += scale * (a * ck + b * sk)
        y += scale * (c * ck + d * sk)
    return ClosedCurve.from_xy(x.tolist(), y.tolist())


def random_curve(spec: RandomCurveSpec, tol: Tolerances = DEFAULT_TOL) -> ClosedCurve:
    """Sample a random trigonometric curve, retrying until it is generic.

    For mode ``k = 1..K`` four coefficients ``a, b, c, d`` are drawn in that
    order, uniform in [-1, 1), and the curve is

        x(t) = sum decay**k (a cos kt + b sin kt)
        y(t) = sum decay**k (c cos kt + d sin kt)

    sampled at ``t = 2 pi j / n``.
    """
    for attempt in range(MAX_ATTEMPTS):
        curve = _sample_trig(spec, attempt)
        if is_generic(curve, tol):
            return curve
    raise GenericityExhausted(f"{spec} produced no generic curve in {MAX_ATTEMPTS} attempts")
