"""Exact geometric predicates on float (or Fraction) coordinates.

Signs are computed in floating point first and recomputed with
:class:`fractions.Fraction` only when the float result is within its
rounding error bound, so they are exact for every input.
"""

from __future__ import annotations

from fractions import Fraction

# slightly above Shewchuk's (3 + 16 eps) * eps bound for orient2d
_ERRBOUND = 4e-16


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def cross_sign(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of cross(b - a, d - c)."""
    if type(ax) is float and type(bx) is float and type(cx) is float and type(dx) is float \
            and type(ay) is float and type(by) is float and type(cy) is float and type(dy) is float:
        left = (bx - ax) * (dy - cy)
        right = (by - ay) * (dx - cx)
        det = left - right
        bound = _ERRBOUND * (abs(left) + abs(right))
        if det > bound:
            return 1
        if -det > bound:
            return -1
    F = Fraction
    ax, ay, bx, by, cx, cy, dx, dy = (F(v) for v in (ax, ay, bx, by, cx, cy, dx, dy))
    return _sign((bx - ax) * (dy - cy) - (by - ay) * (dx - cx))


def orient(ax, ay, bx, by, cx, cy) -> int:
    """+1 if c lies to the left of the directed line a -> b, -1 right, 0 on it.

    ``a`` and ``b`` must be floats; ``c`` may be a Fraction.
    """
    if (cx == ax and cy == ay) or (cx == bx and cy == by):
        return 0
    if type(cx) is float and type(cy) is float:
        return cross_sign(ax, ay, bx, by, ax, ay, cx, cy)
    # c is exact: filter with its float rounding, then fall back
    fx, fy = float(cx), float(cy)
    ux, uy = bx - ax, by - ay
    left = ux * (fy - ay)
    right = uy * (fx - ax)
    det = left - right
    bound = _ERRBOUND * (abs(left) + abs(right)) + 4.5e-16 * (abs(fx) + abs(fy)) * (abs(ux) + abs(uy))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    F = Fraction
    ax, ay, bx, by = F(ax), F(ay), F(bx), F(by)
    return _sign((bx - ax) * (F(cy) - ay) - (by - ay) * (F(cx) - ax))


def _within(a, b, c) -> bool:
    return min(a, b) <= c <= max(a, b)


def on_segment(ax, ay, bx, by, cx, cy) -> bool:
    """c lies on the closed segment ab (assumes c is collinear with ab)."""
    return _within(ax, bx, cx) and _within(ay, by, cy)


def segments_touch(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1 = orient(*a, *b, *c)
    o2 = orient(*a, *b, *d)
    o3 = orient(*c, *d, *a)
    o4 = orient(*c, *d, *b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_segment(*a, *b, *c):
        return True
    if o2 == 0 and on_segment(*a, *b, *d):
        return True
    if o3 == 0 and on_segment(*c, *d, *a):
        return True
    if o4 == 0 and on_segment(*c, *d, *b):
        return True
    return False


def proper_crossing(a, b, c, d) -> bool:
    """Segments cross at a single point interior to both."""
    o1 = orient(*a, *b, *c)
    o2 = orient(*a, *b, *d)
    if o1 * o2 >= 0:
        return False
    o3 = orient(*c, *d, *a)
    o4 = orient(*c, *d, *b)
    return o3 * o4 < 0


def exact_crossing_point(a, b, c, d) -> tuple[Fraction, Fraction]:
    """Intersection of the lines ab and cd (must not be parallel)."""
    ax, ay, bx, by, cx, cy, dx, dy = (Fraction(v) for v in (*a, *b, *c, *d))
    ux, uy = bx - ax, by - ay
    vx, vy = dx - cx, dy - cy
    denom = ux * vy - uy * vx
    s = ((cx - ax) * vy - (cy - ay) * vx) / denom
    return ax + s * ux, ay + s * uy
