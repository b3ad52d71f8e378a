"""Exact planar convex geometry: hulls, Minkowski sums, interior tests."""

from __future__ import annotations

from typing import Iterable, Sequence


def convex_hull(points: Iterable[Sequence[int]]) -> list[tuple[int, int]]:
    """Andrew monotone chain over exact integer (or Fraction) coordinates.

    Returns the hull counterclockwise without repeated first point.  Collinear
    input collapses to its two extreme points; a single point to itself.
    """
    pts = sorted({(p[0], p[1]) for p in points})
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def minkowski_sum(point_sets: Sequence[Iterable[Sequence[int]]]) -> list[tuple[int, int]]:
    """Hull of the Minkowski sum of finite point sets (pairwise sums)."""
    acc = [(0, 0)]
    for pts in point_sets:
        acc = [(a[0] + p[0], a[1] + p[1]) for a in acc for p in pts]
        acc = convex_hull(acc) or acc
    return convex_hull(acc)


def strictly_inside(hull: Sequence[Sequence[int]], p: Sequence[int]) -> bool:
    """Exact open-interior test; degenerate hulls have empty interior."""
    if len(hull) < 3:
        return False
    n = len(hull)
    for i in range(n):
        a = hull[i]
        b = hull[(i + 1) % n]
        cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if cross <= 0:
            return False
    return True
