"""Instance-size reduction for curve and plane cover.

Curve kernel: while some candidate covers s*k+1 points it must belong to
every k-cover, so it is forced and its points removed; afterwards more than
s*k^2 remaining points rule out any k-cover.

Plane kernel (R^3): first make the point set 1-ready, i.e. no line carries
more than k+1 points (heavy lines are trimmed, and lines whose heaviness was
collaterally destroyed get replacement points in general position on them,
from a seeded generator). Two planes then share at most k+1 points, and the
curve-kernel argument applies with s = k+1. Readiness and plane forcing are
iterated to a fixpoint so the output instance is stable under
re-kernelization.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .geometry import (
    PLANE3,
    Curve,
    FamilySpec,
    Flat,
    GeometryError,
    Plane3,
    Point,
    curve_covers,
    enumerate_candidates,
    enumerate_lines3,
    flat_contains,
    plane_covers,
    richness,
)


@dataclass
class KernelResult:
    points: tuple[Point, ...]
    k: int
    forced: list
    verdict: str  # "reduced" | "rejected"
    added_points: tuple[Point, ...] = ()

    @property
    def rejected(self) -> bool:
        return self.verdict == "rejected"


def curve_kernel(points: Sequence[Point], family: FamilySpec, k: int) -> KernelResult:
    """Force unavoidable curves, then reject oversized instances."""
    if k < 0:
        raise ValueError("negative budget")
    pts = list(points)
    s = family.s
    forced: list[Curve] = []
    k_cur = k
    while k_cur >= 1 and len(pts) >= family.d:
        threshold = s * k_cur + 1
        best: Optional[Curve] = None
        best_rich = 0
        for cand in enumerate_candidates(pts, family):
            r = richness(cand, pts)
            if r > best_rich:
                best, best_rich = cand, r
        if best is None or best_rich < threshold:
            break
        forced.append(best)
        pts = [p for p in pts if not curve_covers(best, p)]
        k_cur -= 1
    verdict = "rejected" if len(pts) > s * k_cur * k_cur else "reduced"
    return KernelResult(tuple(pts), k_cur, forced, verdict)


# ---------------------------------------------------------------------------
# plane kernel


def _collinear3(a: Point, b: Point, c: Point) -> bool:
    u = [y - x for x, y in zip(a.coords, b.coords)]
    v = [y - x for x, y in zip(a.coords, c.coords)]
    return (u[1] * v[2] - u[2] * v[1] == 0
            and u[2] * v[0] - u[0] * v[2] == 0
            and u[0] * v[1] - u[1] * v[0] == 0)


def _line_counts(pts: Sequence[Point]) -> list[tuple[Flat, int]]:
    return [(line, sum(1 for p in pts if flat_contains(line, p)))
            for line in enumerate_lines3(pts)]


def _replacement_point(line: Flat, pts: Sequence[Point], rng: random.Random) -> Point:
    """A point on `line`, off every other line spanned by two current points.
    Integer parameters are drawn from a widening window; rejected samples are
    retried."""
    base, direction = line.base, line.basis[0]
    span = 8
    while True:
        for _ in range(40):
            t = rng.randint(-span, span)
            cand = Point(tuple(b + t * d for b, d in zip(base, direction)))
            if cand in pts:
                continue
            ok = True
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    if _collinear3(cand, pts[i], pts[j]):
                        on_target = flat_contains(line, pts[i]) and flat_contains(line, pts[j])
                        if not on_target:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                return cand
        span *= 2


def _make_one_ready(pts: list[Point], k: int, rng: random.Random,
                    added: list[Point]) -> list[Point]:
    """Trim every line to at most k+1 points, restoring collaterally damaged
    heavy lines with general-position replacements.

    At k = 1 the heavy threshold sits at the two-point floor, where every
    point pair spans a heavy line and restoring them all inflates the
    instance without bound. A two-point line forces nothing beyond its own
    points (any plane covering both contains it), and trimmed points stay
    covered through the trimmed line's forced plane, so equivalence holds
    with the repair skipped there.
    """
    limit = k + 1
    while True:
        counts = _line_counts(pts)
        over = [(c, line) for line, c in counts if c > limit]
        if not over:
            return pts
        over.sort(key=lambda t: (-t[0], t[1]))
        target = over[0][1]
        heavy_before = [line for line, c in counts if c >= limit and line != target]
        keep, on_target = [], 0
        for p in pts:
            if flat_contains(target, p):
                on_target += 1
                if on_target > limit:
                    continue
            keep.append(p)
        pts = keep
        if limit < 3:
            continue
        for line in heavy_before:
            have = sum(1 for p in pts if flat_contains(line, p))
            while have < limit:
                newp = _replacement_point(line, pts, rng)
                pts.append(newp)
                added.append(newp)
                have += 1


def plane_kernel_r3(points: Sequence[Point], k: int, rng_seed: int = 0) -> KernelResult:
    """Reduce an R^3 plane-cover instance: 1-readiness, then forced planes,
    iterated to a fixpoint; reject when more than k^3 + k^2 points survive
    (evaluated at the post-forcing budget)."""
    if k < 0:
        raise ValueError("negative budget")
    if any(p.dim != 3 for p in points):
        raise GeometryError("plane kernel needs R^3 points")
    rng = random.Random(rng_seed)
    pts = list(points)
    forced: list[Plane3] = []
    added: list[Point] = []
    k_cur = k
    while k_cur >= 1:
        pts = _make_one_ready(pts, k_cur, rng, added)
        threshold = k_cur * (k_cur + 1) + 1
        best: Optional[Plane3] = None
        best_rich = 0
        for cand in enumerate_candidates(pts, PLANE3):
            r = richness(cand, pts)
            if r > best_rich:
                best, best_rich = cand, r
        if best is None or best_rich < threshold:
            break
        forced.append(best)
        pts = [p for p in pts if not plane_covers(best, p)]
        k_cur -= 1
    bound = k_cur * k_cur * (k_cur + 1)
    verdict = "rejected" if len(pts) > bound else "reduced"
    return KernelResult(tuple(pts), k_cur, forced, verdict, tuple(added))
