"""Independent ground truth: exhaustive set-cover search and rich-candidate
counting.

`oracle_min_cover` is a plain branch-and-bound over maximal candidate cover
sets. It shares only the exact-geometry primitives with the production
solvers; the decision logic is deliberately separate so the two routes can
cross-check each other.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .geometry import (
    FamilySpec,
    Flat,
    GeometryError,
    Point,
    candidate_cover_sets,
    enumerate_candidates,
    richness,
)
from .inclusion_exclusion import CapExceededError

DEFAULT_ORACLE_CAP = 16


class OracleResult(NamedTuple):
    opt: int
    witness: list


def oracle_min_cover(points: Sequence[Point], family: FamilySpec,
                     flats: Sequence[Flat] = (), cap: int = DEFAULT_ORACLE_CAP,
                     stop_at: Optional[int] = None) -> OracleResult:
    """Exact minimum cover size with a witness. Branches on the lowest-index
    uncovered element over all candidate sets containing it, best-first by
    covered count. With stop_at, returns early once a cover of that size or
    better is found (the reported opt is then only an upper bound)."""
    pts = tuple(points)
    fls = tuple(flats)
    n = len(pts) + len(fls)
    if n > cap:
        raise CapExceededError("instance of %d elements exceeds the oracle cap %d" % (n, cap))
    if n == 0:
        return OracleResult(0, [])

    cands = candidate_cover_sets(pts, family, fls)
    full = (1 << n) - 1
    # candidates covering each element, best-first
    by_element = [[] for _ in range(n)]
    for obj, mask in cands:
        m = mask
        while m:
            low = m & -m
            by_element[low.bit_length() - 1].append((obj, mask))
            m ^= low
    max_size = max((mask.bit_count() for _, mask in cands), default=1)

    best = n + 1
    best_witness: list = []

    def search(uncovered: int, chosen: list):
        nonlocal best, best_witness
        if not uncovered:
            if len(chosen) < best:
                best = len(chosen)
                best_witness = list(chosen)
            return
        lower = len(chosen) + -(-uncovered.bit_count() // max_size)
        if lower >= best:
            return
        if stop_at is not None and best <= stop_at:
            return
        e = (uncovered & -uncovered).bit_length() - 1
        for obj, mask in by_element[e]:
            chosen.append(obj)
            search(uncovered & ~mask, chosen)
            chosen.pop()
            if stop_at is not None and best <= stop_at:
                return

    search(full, [])
    if best > n:
        raise GeometryError("no cover found; candidate sets are incomplete")
    return OracleResult(best, best_witness)


def oracle_decide(points: Sequence[Point], family: FamilySpec, k: int,
                  flats: Sequence[Flat] = (), cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """True iff a cover of at most k objects exists."""
    if k < 0:
        raise ValueError("negative budget")
    res = oracle_min_cover(points, family, flats, cap, stop_at=k)
    return res.opt <= k


def count_rich(points: Sequence[Point], family: FamilySpec, gamma: int) -> int:
    """Exact number of candidates (objects through at least d points) covering
    gamma or more points."""
    if gamma < family.d:
        raise ValueError("gamma below the family's degrees of freedom")
    pts = tuple(points)
    return sum(1 for c in enumerate_candidates(pts, family) if richness(c, pts) >= gamma)


def rich_candidate_reference(n: int, family: FamilySpec, gamma: int):
    """Dominant term n^d / gamma^(2d-1) of the asymptotic rich-candidate
    bound, for side-by-side reporting (no assertion is attached to it)."""
    from fractions import Fraction

    d = family.d
    return Fraction(n ** d, gamma ** (2 * d - 1))
