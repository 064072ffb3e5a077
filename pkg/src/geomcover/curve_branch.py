"""Parameterized branching solver for curve cover.

The budget k is split over r recursion levels (all compositions are tried).
Level i only branches on candidates whose richness lies in the halving window
[gamma_i, gamma_(i-1)] with gamma_i = s*k/2^i; once few enough points remain,
or at the deepest level, the subset-sweep decider finishes the job exactly.

All thresholds are evaluated in exact rational (or integer-power) arithmetic,
so accept/reject boundaries cannot drift with platform rounding.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence

from .geometry import FamilySpec, Point, curve_covers, enumerate_candidates, family_by_tag, richness
from .inclusion_exclusion import DEFAULT_SUBSET_CAP, extract_cover, ie_decide
from .kernel import curve_kernel


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    leaves_ie: int = 0
    leaves_rejected: int = 0
    max_depth: int = 0
    ie_subsets: int = 0
    wall_ms: int = 0

    def merge(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(
            self.nodes_expanded + other.nodes_expanded,
            self.leaves_ie + other.leaves_ie,
            self.leaves_rejected + other.leaves_rejected,
            max(self.max_depth, other.max_depth),
            self.ie_subsets + other.ie_subsets,
            self.wall_ms + other.wall_ms,
        )


class CoverResult(NamedTuple):
    decision: bool
    witness: Optional[list]
    stats: SearchStats


def ceil_log2_int(k: int) -> int:
    """Smallest r with 2^r >= k, for k >= 1."""
    if k < 1:
        raise ValueError("ceil_log2_int needs k >= 1")
    return (k - 1).bit_length()


def ceil_log2_fraction(x: Fraction) -> int:
    """Smallest nonnegative r with 2^r >= x (x > 0)."""
    r = 0
    while (1 << r) < x:
        r += 1
    return r


def recursion_depth(k: int, d: int, s: int) -> int:
    """Number of recursion levels: r = max(1, ceil(log2(4sk / ((d-1) log2 k)))),
    with the inner log taken as the conservative integer ceiling."""
    if k < 2:
        raise ValueError("branching needs k >= 2; fall through to the subset sweep")
    denom = (d - 1) * ceil_log2_int(k)
    return max(1, ceil_log2_fraction(Fraction(4 * s * k, denom)))


def budget_partitions(k: int, r: int) -> Iterator[tuple[int, ...]]:
    """All compositions of k into r nonnegative parts, lexicographically."""
    if r < 1:
        raise ValueError("need at least one part")

    def rec(prefix: tuple[int, ...], remaining: int, parts_left: int):
        if parts_left == 1:
            yield prefix + (remaining,)
            return
        for first in range(remaining + 1):
            yield from rec(prefix + (first,), remaining - first, parts_left - 1)

    yield from rec((), k, r)


def rich_poor_candidates(points: Sequence[Point], family: FamilySpec,
                         lo: Fraction, hi: Fraction) -> list:
    """Candidates whose richness over P lies in [lo, hi], richest first."""
    if lo > hi:
        raise ValueError("empty richness window")
    pts = tuple(points)
    out = [(richness(c, pts), c) for c in enumerate_candidates(pts, family)]
    out = [(r, c) for r, c in out if lo <= r <= hi]
    out.sort(key=lambda rc: (-rc[0], rc[1]))
    return [c for _, c in out]


def below_base_threshold(n_pts: int, budget_factor: Fraction, k: int) -> bool:
    """Exact test for n_pts < budget_factor * log2(k); for k not a power of
    two the comparison is lifted to integer powers: 2^(n*q) < k^p."""
    if k <= 1:
        return False
    if budget_factor <= 0:
        return False
    p, q = budget_factor.numerator, budget_factor.denominator
    return 2 ** (n_pts * q) < k ** p


@dataclass
class BranchConfig:
    k: int
    d: int
    s: int
    r: int
    base_case_factor: Fraction
    ie_cap: int = DEFAULT_SUBSET_CAP
    node_cap: Optional[int] = None  # abort the search beyond this many nodes
    debug_windows: bool = False
    memo_rejected: bool = False
    gammas: tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.gammas:
            self.gammas = tuple(Fraction(self.s * self.k, 1 << i) for i in range(self.r + 1))


def make_branch_config(k: int, family: FamilySpec,
                       base_case_factor: Optional[Fraction] = None,
                       ie_cap: int = DEFAULT_SUBSET_CAP,
                       node_cap: Optional[int] = None,
                       debug_windows: bool = False,
                       memo_rejected: bool = False) -> BranchConfig:
    """Depth and thresholds for a kernelized budget k >= 2. The depth formula
    is capped so every branching level's window can still catch candidates
    through at least d points (gamma_i >= d-1 for i < r)."""
    d, s = family.d, family.s
    r = recursion_depth(k, d, s)
    deepest = 0
    while Fraction(s * k, 1 << (deepest + 1)) >= d - 1:
        deepest += 1
    r = max(1, min(r, deepest + 1))
    factor = base_case_factor if base_case_factor is not None else Fraction(d - 1, 2)
    return BranchConfig(k, d, s, r, factor, ie_cap, node_cap, debug_windows, memo_rejected)


class _CurveSearch:
    """Mask-based search over one kernelized instance. Candidate curves and
    their covered-point masks are enumerated once; per node only popcounts
    remain. Subset-sweep results are cached by (mask, budget)."""

    def __init__(self, points: Sequence[Point], family: FamilySpec, config: BranchConfig):
        self.points = tuple(points)
        self.family = family
        self.cfg = config
        self.stats = SearchStats()
        cands = enumerate_candidates(self.points, family)
        self.cands = []
        for c in cands:
            m = 0
            for i, p in enumerate(self.points):
                if curve_covers(c, p):
                    m |= 1 << i
            self.cands.append((c, m))
        self._ie_cache: dict[tuple[int, int], bool] = {}
        self._memo: dict[tuple, bool] = {}

    def _subset_points(self, mask: int) -> list[Point]:
        return [p for i, p in enumerate(self.points) if (mask >> i) & 1]

    def _ie(self, mask: int, budget: int) -> bool:
        key = (mask, budget)
        hit = self._ie_cache.get(key)
        if hit is None:
            res = ie_decide(self._subset_points(mask), self.family, budget, cap=self.cfg.ie_cap)
            self.stats.ie_subsets += res.subsets
            hit = res.decision
            self._ie_cache[key] = hit
        return hit

    def run(self, partition: tuple[int, ...], mask: Optional[int] = None,
            depth: int = 1, partial: tuple = ()) -> tuple[bool, Optional[list]]:
        cfg = self.cfg
        if mask is None:
            mask = (1 << len(self.points)) - 1
        self.stats.nodes_expanded += 1
        if cfg.node_cap is not None and self.stats.nodes_expanded > cfg.node_cap:
            from .inclusion_exclusion import CapExceededError
            raise CapExceededError("search passed the %d-node cap" % cfg.node_cap)
        self.stats.max_depth = max(self.stats.max_depth, depth)
        remaining_budget = sum(partition[depth - 1:])
        n_pts = mask.bit_count()

        if n_pts > remaining_budget * cfg.gammas[depth - 1]:
            self.stats.leaves_rejected += 1
            return False, None

        if depth == cfg.r or below_base_threshold(n_pts, cfg.base_case_factor * remaining_budget, cfg.k):
            self.stats.leaves_ie += 1
            if self._ie(mask, remaining_budget):
                ext = extract_cover(self._subset_points(mask), self.family,
                                    remaining_budget, cap=cfg.ie_cap)
                return True, list(partial) + ext
            return False, None

        memo_key = None
        if cfg.memo_rejected:
            memo_key = (mask, depth, partition[depth - 1:])
            if self._memo.get(memo_key):
                return False, None

        lo, hi = cfg.gammas[depth], cfg.gammas[depth - 1]
        window = [(c, m, (m & mask).bit_count()) for c, m in self.cands]
        # richness >= d keeps only curves through d surviving points, matching
        # a fresh enumeration over the current point set
        window = [(c, m, r) for c, m, r in window if r >= cfg.d and lo <= r <= hi]
        window.sort(key=lambda t: (-t[2], t[0]))
        if cfg.debug_windows:
            fresh = rich_poor_candidates(self._subset_points(mask), self.family, lo, hi)
            assert fresh == [c for c, _, _ in window], "candidate window out of sync"

        k_i = partition[depth - 1]
        for combo in itertools.combinations(window, k_i):
            covered = 0
            for _, m, _ in combo:
                covered |= m
            ok, wit = self.run(partition, mask & ~covered, depth + 1,
                               partial + tuple(c for c, _, _ in combo))
            if ok:
                return True, wit
        if memo_key is not None:
            self._memo[memo_key] = True
        return False, None


def cc_recursive(points: Sequence[Point], family: FamilySpec, config: BranchConfig,
                 partition: tuple[int, ...], depth: int = 1,
                 partial: Sequence = ()) -> tuple[bool, Optional[list], SearchStats]:
    """One branch of the search, entered at the given depth with an already
    chosen partial solution. P is expected to be kernelized."""
    search = _CurveSearch(points, family, config)
    full = (1 << len(tuple(points))) - 1
    ok, wit = search.run(partition, full, depth, tuple(partial))
    return ok, wit, search.stats


def _partition_worker(args) -> tuple[bool, Optional[list], SearchStats]:
    family_kind, points, config, partition = args
    search = _CurveSearch(points, family_by_tag(family_kind), config)
    ok, wit = search.run(partition)
    return ok, wit, search.stats


def curve_cover(points: Sequence[Point], family: FamilySpec, k: int,
                base_case_factor: Optional[Fraction] = None,
                ie_cap: int = DEFAULT_SUBSET_CAP,
                node_cap: Optional[int] = None,
                threads: int = 1,
                debug_windows: bool = False,
                memo_rejected: bool = False) -> CoverResult:
    """Kernelize, then try every budget partition; accept on the first one
    whose recursive search accepts. Forced curves from the kernel lead the
    witness."""
    t0 = time.perf_counter()
    stats = SearchStats()

    def done(decision: bool, witness: Optional[list]) -> CoverResult:
        stats.wall_ms = int((time.perf_counter() - t0) * 1000)
        return CoverResult(decision, witness, stats)

    kern = curve_kernel(points, family, k)
    if kern.rejected:
        return done(False, None)
    forced, pts, k2 = kern.forced, kern.points, kern.k
    if not pts:
        return done(True, list(forced))

    factor = base_case_factor if base_case_factor is not None else Fraction(family.d - 1, 2)
    if k2 < 2 or below_base_threshold(len(pts), factor * k2, k2):
        res = ie_decide(pts, family, k2, cap=ie_cap)
        stats.ie_subsets += res.subsets
        stats.leaves_ie += 1
        if not res.decision:
            return done(False, None)
        return done(True, list(forced) + extract_cover(pts, family, k2, cap=ie_cap))

    config = make_branch_config(k2, family, factor, ie_cap, node_cap,
                                debug_windows, memo_rejected)
    partitions = list(budget_partitions(k2, config.r))

    if threads <= 1:
        search = _CurveSearch(pts, family, config)
        for partition in partitions:
            ok, wit = search.run(partition)
            if ok:
                stats = stats.merge(search.stats)
                stats.wall_ms = int((time.perf_counter() - t0) * 1000)
                return CoverResult(True, list(forced) + wit, stats)
        stats = stats.merge(search.stats)
        return done(False, None)

    jobs = [(family.kind, pts, config, p) for p in partitions]
    decision, witness = False, None
    with ProcessPoolExecutor(max_workers=threads) as pool:
        pending = {pool.submit(_partition_worker, j) for j in jobs}
        while pending:
            finished, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in finished:
                ok, wit, st = fut.result()
                stats = stats.merge(st)
                if ok and not decision:
                    decision, witness = True, list(forced) + wit
            if decision:
                for fut in pending:
                    fut.cancel()
                break
    return done(decision, witness)
