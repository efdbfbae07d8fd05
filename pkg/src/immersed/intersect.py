"""Self-intersections of a closed polyline.

Two finders produce the same result: :func:`find_bruteforce` enumerates
every pair of non-adjacent edges, :func:`find_sweep` runs a
Bentley-Ottmann plane sweep. Both only generate the set of touching edge
pairs (with exact predicates) and then hand it to the same classifier, so
their outputs and their errors agree.
"""

from __future__ import annotations

import heapq
from functools import cmp_to_key
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from immersed.curve import (
    DEFAULT_TOL,
    ClosedCurve,
    GenericityError,
    GenericityKind,
    Point2,
    Tolerances,
    check_structure,
)
from immersed.predicates import (
    cross_sign,
    exact_crossing_point,
    orient,
    proper_crossing,
    segments_touch,
)


@dataclass(frozen=True)
class Intersection:
    """A transverse double point between the strands at ``t1 < t2``."""

    t1: float
    t2: float
    point: Point2
    dir1: tuple[float, float]
    dir2: tuple[float, float]

    @property
    def edges(self) -> tuple[int, int]:
        return int(self.t1), int(self.t2)


class BaseOnIntersection(ValueError):
    pass


def _adjacent(i: int, j: int, n: int) -> bool:
    return j == i + 1 or (i == 0 and j == n - 1)


def _classify(curve: ClosedCurve, i: int, j: int, tol: Tolerances) -> Intersection:
    a, b = curve.edge(i)
    c, d = curve.edge(j)
    ux, uy = b.x - a.x, b.y - a.y
    vx, vy = d.x - c.x, d.y - c.y
    lu = math.hypot(ux, uy)
    lv = math.hypot(vx, vy)
    denom = ux * vy - uy * vx
    if abs(denom) < math.sin(tol.angle) * lu * lv:
        raise GenericityError(GenericityKind.NON_TRANSVERSE_CROSSING, edges=(i, j))
    wx, wy = c.x - a.x, c.y - a.y
    s = (wx * vy - wy * vx) / denom
    u = (wx * uy - wy * ux) / denom
    lo, hi = tol.vertex, 1.0 - tol.vertex
    if not (lo <= s <= hi and lo <= u <= hi):
        raise GenericityError(GenericityKind.CROSSING_NEAR_VERTEX, edges=(i, j), fractions=(s, u))
    point = Point2(a.x + s * ux, a.y + s * uy)
    return Intersection(i + s, j + u, point, (ux / lu, uy / lu), (vx / lv, vy / lv))


def classify_pairs(curve: ClosedCurve, pairs: Iterable[tuple[int, int]],
                   tol: Tolerances = DEFAULT_TOL) -> list[Intersection]:
    """Turn touching edge pairs into intersections, raising on the first bad one."""
    xs = [_classify(curve, i, j, tol) for i, j in sorted(pairs)]
    pts = np.array([x.point for x in xs], dtype=float).reshape(-1, 2)
    for k in range(1, len(xs)):
        gaps = np.hypot(*(pts[:k] - pts[k]).T)
        close = np.flatnonzero(gaps < tol.sep)
        if close.size:
            other = xs[int(close[0])]
            raise GenericityError(GenericityKind.NEAR_TRIPLE_POINT,
                                  edges=(other.edges, xs[k].edges), point=tuple(xs[k].point))
    xs.sort(key=lambda x: (x.t1, x.t2))
    return xs


def touching_pairs_bruteforce(curve: ClosedCurve) -> set[tuple[int, int]]:
    arr = curve.array
    n = curve.n
    nxt = np.roll(arr, -1, axis=0)
    lo = np.minimum(arr, nxt)
    hi = np.maximum(arr, nxt)
    # closed bounding-box overlap is necessary for contact; exact test follows
    overlap = (
        (lo[:, None, 0] <= hi[None, :, 0]) & (lo[None, :, 0] <= hi[:, None, 0])
        & (lo[:, None, 1] <= hi[None, :, 1]) & (lo[None, :, 1] <= hi[:, None, 1])
    )
    ii, jj = np.nonzero(np.triu(overlap, k=2))
    pairs = set()
    for i, j in zip(ii.tolist(), jj.tolist()):
        if _adjacent(i, j, n):
            continue
        if segments_touch(*curve.edge(i), *curve.edge(j)):
            pairs.add((i, j))
    return pairs


def find_bruteforce(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> list[Intersection]:
    """All self-intersections by enumerating every non-adjacent edge pair.

    Returns:
        Intersections sorted by ``(t1, t2)``.

    Raises:
        GenericityError: on a zero-length edge, a reversal, a non-transverse
            contact, a contact within ``tol.vertex`` of a vertex, or two
            double points closer than ``tol.sep``.
    """
    check_structure(curve, tol)
    return classify_pairs(curve, touching_pairs_bruteforce(curve), tol)


class _Sweep:
    """Bentley-Ottmann over the edges, ordered lexicographically by (x, y).

    Every contact point is an event. At an event ``p`` the segments that
    start, end or pass through ``p`` are gathered, all their pairs are
    recorded, and the ones continuing past ``p`` are reinserted in slope
    order. Vertical segments sit on the sweep line only at the event itself
    and are ordered above everything leaving ``p``. The status is a Python
    list; insertion is a memmove, which is fast at the sizes used here.
    """

    def __init__(self, curve: ClosedCurve):
        self.curve = curve
        self.n = curve.n
        self.left: list[Point2] = []
        self.right: list[Point2] = []
        starts: dict[tuple, list[int]] = {}
        for i in range(self.n):
            a, b = curve.edge(i)
            if (a.x, a.y) > (b.x, b.y):
                a, b = b, a
            self.left.append(a)
            self.right.append(b)
            starts.setdefault((a.x, a.y), []).append(i)
        self.starts = starts
        self.queued = set(starts) | {(b.x, b.y) for b in self.right}
        self.queue = list(self.queued)
        heapq.heapify(self.queue)
        self.status: list[int] = []
        self.pairs: set[tuple[int, int]] = set()

    def _orient_at(self, seg: int, p) -> int:
        a, b = self.left[seg], self.right[seg]
        return orient(a.x, a.y, b.x, b.y, p[0], p[1])

    def _slope_key_cmp(self, s: int, t: int) -> int:
        # -1 if s lies below t just after their common point
        a, b = self.left[s], self.right[s]
        c, d = self.left[t], self.right[t]
        sign = cross_sign(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y)
        if sign:
            return -sign
        return (s > t) - (s < t)

    def _record(self, segs: list[int]) -> None:
        n = self.n
        for k, s in enumerate(segs):
            for t in segs[k + 1:]:
                i, j = (s, t) if s < t else (t, s)
                if not _adjacent(i, j, n):
                    self.pairs.add((i, j))

    def _test(self, s: int, t: int, p) -> None:
        a, b = self.left[s], self.right[s]
        c, d = self.left[t], self.right[t]
        if not proper_crossing(a, b, c, d):
            # touching contacts happen at an endpoint, which is already an event
            return
        q = exact_crossing_point(a, b, c, d)
        if q > p and q not in self.queued:
            self.queued.add(q)
            heapq.heappush(self.queue, q)

    def _bisect(self, p, strict: bool) -> int:
        # first status index whose segment is not below p (strict: is above p)
        lo, hi = 0, len(self.status)
        while lo < hi:
            mid = (lo + hi) // 2
            o = self._orient_at(self.status[mid], p)
            if o > 0 or (strict and o == 0):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def run(self) -> set[tuple[int, int]]:
        key = cmp_to_key(self._slope_key_cmp)
        status = self.status
        while self.queue:
            p = heapq.heappop(self.queue)
            upper = self.starts.get(p, [])
            lo = self._bisect(p, strict=False)
            hi = self._bisect(p, strict=True)
            through = status[lo:hi]
            self._record(through + upper)
            continuing = [s for s in through if (self.right[s].x, self.right[s].y) != p]
            block = sorted(continuing + upper, key=key)
            status[lo:hi] = block
            if block:
                if lo > 0:
                    self._test(status[lo - 1], status[lo], p)
                top = lo + len(block) - 1
                if top + 1 < len(status):
                    self._test(status[top], status[top + 1], p)
            elif 0 < lo < len(status):
                self._test(status[lo - 1], status[lo], p)
        return self.pairs


def touching_pairs_sweep(curve: ClosedCurve) -> set[tuple[int, int]]:
    return _Sweep(curve).run()


def find_sweep(curve: ClosedCurve, tol: Tolerances = DEFAULT_TOL) -> list[Intersection]:
    """Same contract as :func:`find_bruteforce`, in O((n + k) log n) events."""
    check_structure(curve, tol)
    return classify_pairs(curve, touching_pairs_sweep(curve), tol)


find = find_bruteforce

Visit = Literal["first", "second"]


def order_from(intersections: Iterable[Intersection], base: float, n_edges: int,
               tol: Tolerances = DEFAULT_TOL) -> list[tuple[float, Intersection, Visit]]:
    """Both visits of every intersection, in the order met when leaving ``base``.

    Args:
        intersections: double points of a curve with ``n_edges`` edges.
        base: starting parameter.
        n_edges: number of edges, i.e. the parameter period.

    Raises:
        BaseOnIntersection: ``base`` is within ``tol.vertex`` of a visit.
    """
    events = []
    for x in intersections:
        d1 = (x.t1 - base) % n_edges
        d2 = (x.t2 - base) % n_edges
        for d in (d1, d2):
            if min(d, n_edges - d) < tol.vertex:
                raise BaseOnIntersection(f"base {base} coincides with a visit of {x}")
        if d1 < d2:
            events.append((d1, x.t1, x, "first"))
            events.append((d2, x.t2, x, "second"))
        else:
            events.append((d2, x.t2, x, "first"))
            events.append((d1, x.t1, x, "second"))
    events.sort(key=lambda e: e[0])
    return [(t, x, which) for _, t, x, which in events]
