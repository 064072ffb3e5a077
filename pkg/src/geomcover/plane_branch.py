"""Branching solver for plane cover in R^3.

Follows the curve-cover skeleton with one extra mechanism: a plane in the
current richness window whose points are almost all on one line (too
degenerate) is not branched on directly. Instead its heavy line is guessed
and stamped into a side structure with the current depth; the few leftover
points of such a plane (its ghost points) ride along until the line is
"ripe", at which point the line is extended into a full plane. Ripeness is
the last depth at which the ghost allowance gamma_i still dominates the
line's possible ghost count; the test is evaluated through exact fifth
powers, as are the degeneracy thresholds, so no irrational quantity is ever
approximated.

The deepest level hands the remaining points plus all pending lines to the
mixed points-and-lines subset-sweep decider, which is exact.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .curve_branch import (
    CoverResult,
    SearchStats,
    below_base_threshold,
    budget_partitions,
    recursion_depth,
)
from .geometry import (
    PLANE3,
    Flat,
    Plane3,
    Point,
    canonical_plane_through_line,
    enumerate_candidates,
    enumerate_lines3,
    flat_contains,
    max_collinear,
    plane_covers,
    plane_through_line_point,
    richness,
)
from .inclusion_exclusion import DEFAULT_SUBSET_CAP, extract_cover, ie_decide
from .kernel import plane_kernel_r3


@dataclass(frozen=True)
class StampedLine:
    line: Flat
    depth_added: int


@dataclass(frozen=True)
class StampedLineSet:
    entries: tuple[StampedLine, ...] = ()

    def __post_init__(self):
        lines = [e.line for e in self.entries]
        if len(set(lines)) != len(lines):
            raise ValueError("stamped lines must be pairwise distinct")
        if any(e.depth_added < 1 for e in self.entries):
            raise ValueError("stamp depths start at 1")

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class PlaneBranchConfig:
    k: int
    r: int
    base_case_factor: Fraction = Fraction(1)
    ie_cap: int = DEFAULT_SUBSET_CAP
    gammas: tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.gammas:
            k = self.k
            self.gammas = (Fraction(k * k + k),) + tuple(
                Fraction(k * k, 1 << i) for i in range(1, self.r + 1))


def make_plane_config(k: int, base_case_factor: Optional[Fraction] = None,
                      ie_cap: int = DEFAULT_SUBSET_CAP) -> PlaneBranchConfig:
    """Depth from the generic formula with s frozen at the kernel's plane
    intersection bound k+1, capped so gamma_r >= 1."""
    r = recursion_depth(k, 3, k + 1)
    while r > 1 and Fraction(k * k, 1 << r) < 1:
        r -= 1
    factor = base_case_factor if base_case_factor is not None else Fraction(1)
    return PlaneBranchConfig(k, r, factor, ie_cap)


# ---------------------------------------------------------------------------
# exact threshold tests


def is_too_degenerate(plane: Plane3, points: Sequence[Point], depth: int,
                      config: PlaneBranchConfig) -> bool:
    """A window plane is too degenerate when more than a delta_i fraction of
    its points sit on one line; with t points, m of them collinear, and
    delta_i = 1 - gamma_i^(-1/5) this is exactly (t-m)^5 * gamma_i < t^5."""
    pts = tuple(points)
    t = richness(plane, pts)
    if not (config.gammas[depth] <= t <= config.gammas[depth - 1]):
        raise ValueError("plane is outside the depth-%d richness window" % depth)
    m, _ = max_collinear([p for p in pts if plane_covers(plane, p)])
    return _too_degenerate_counts(t, m, config.gammas[depth])


def _too_degenerate_counts(t: int, m: int, gamma: Fraction) -> bool:
    return (t - m) ** 5 * gamma < t ** 5


def _line_rich_enough(m: int, gamma: Fraction) -> bool:
    """m >= gamma - gamma^(4/5), via fifth powers on the rational difference."""
    if m >= gamma:
        return True
    return (gamma - m) ** 5 <= gamma ** 4


def _is_ripe(stamp_depth: int, depth: int, gammas: Sequence[Fraction]) -> bool:
    """A line stamped at depth j must be extended at depth i as soon as the
    ghost allowance one level down would no longer cover it:
    ripe <=> not (gamma_i^5 >= 32 * gamma_j^4)."""
    return not (gammas[depth] ** 5 >= 32 * gammas[stamp_depth] ** 4)


def ripe_lines(stamped: StampedLineSet, depth: int, k: int) -> list[StampedLine]:
    """Entries due for extension into planes at this depth."""
    cfg = make_plane_config(k) if k >= 2 else PlaneBranchConfig(k, 1)
    gammas = cfg.gammas
    if depth >= len(gammas):
        return list(stamped.entries)  # beyond the configured depth: everything is due
    return [e for e in stamped.entries if _is_ripe(e.depth_added, depth, gammas)]


def extend_lines(lines: Sequence[Flat], points: Sequence[Point],
                 avoid: Sequence[Flat] = ()) -> Iterator[tuple[Plane3, ...]]:
    """All ways of extending each line into a plane through it and a current
    point (deduplicated); a canonical fallback plane through the line stands
    in when no admissible extension through a point exists. Planes covering a
    line from `avoid` (or another input line) are filtered out."""
    if not lines:
        raise ValueError("no lines to extend")
    option_lists = []
    for i, line in enumerate(lines):
        others = [l for j, l in enumerate(lines) if j != i] + list(avoid)
        opts: list[Plane3] = []
        for p in points:
            if flat_contains(line, p):
                continue
            h = plane_through_line_point(line, p)
            if h in opts:
                continue
            if any(flat_contains(h, other) for other in others):
                continue
            opts.append(h)
        if not opts:
            opts = [canonical_plane_through_line(line, avoid=others)]
        option_lists.append(opts)
    for combo in itertools.product(*option_lists):
        if len(set(combo)) == len(combo):
            yield combo


# ---------------------------------------------------------------------------
# the recursive search


class _PlaneSearch:
    def __init__(self, points: Sequence[Point], config: PlaneBranchConfig,
                 debug_planted: Optional[Sequence[Plane3]] = None):
        self.points = tuple(points)
        self.cfg = config
        self.stats = SearchStats()
        self.debug_planted = list(debug_planted) if debug_planted else None

        self.planes: list[tuple[Plane3, int, list[int]]] = []       # (plane, mask, line indexes)
        self.lines: list[tuple[Flat, int]] = []                     # (line, mask)
        for line in enumerate_lines3(self.points):
            m = 0
            for i, p in enumerate(self.points):
                if flat_contains(line, p):
                    m |= 1 << i
            self.lines.append((line, m))
        for plane in enumerate_candidates(self.points, PLANE3):
            m = 0
            for i, p in enumerate(self.points):
                if plane_covers(plane, p):
                    m |= 1 << i
            contained = [j for j, (line, _) in enumerate(self.lines)
                         if flat_contains(plane, line)]
            self.planes.append((plane, m, contained))
        self._ie_cache: dict = {}
        self._ext_mask_cache: dict[Plane3, int] = {}

    def _subset_points(self, mask: int) -> list[Point]:
        return [p for i, p in enumerate(self.points) if (mask >> i) & 1]

    def _plane_mask(self, plane: Plane3) -> int:
        m = self._ext_mask_cache.get(plane)
        if m is None:
            m = 0
            for i, p in enumerate(self.points):
                if plane_covers(plane, p):
                    m |= 1 << i
            self._ext_mask_cache[plane] = m
        return m

    def _ie(self, mask: int, stamped: tuple, budget: int) -> bool:
        key = (mask, tuple(e[0] for e in stamped), budget)
        hit = self._ie_cache.get(key)
        if hit is None:
            flats = [self.lines[idx][0] if isinstance(idx, int) else idx for idx, _ in stamped]
            res = ie_decide(self._subset_points(mask), PLANE3, budget,
                            flats=flats, cap=self.cfg.ie_cap)
            self.stats.ie_subsets += res.subsets
            hit = res.decision
            self._ie_cache[key] = hit
        return hit

    def _max_collinear_on(self, plane_entry, mask: int) -> int:
        plane, pmask, contained = plane_entry
        cur = pmask & mask
        t = cur.bit_count()
        if t <= 1:
            return t
        return max((self.lines[j][1] & cur).bit_count() for j in contained)

    def _debug_ghost_check(self, mask: int, stamped: tuple, depth: int, partial: tuple):
        """On branches following the planted solution, uncovered leftovers of
        stamped lines' planes must stay within the ghost allowance."""
        planted = self.debug_planted
        if not set(partial) <= set(planted):
            return
        ghost_planes = []
        for idx, _ in stamped:
            line = self.lines[idx][0] if isinstance(idx, int) else idx
            holders = [h for h in planted if flat_contains(h, line)]
            if not holders:
                return  # this branch guessed a line outside the plant
            ghost_planes.extend(holders)
        if not ghost_planes:
            return
        ghosts = 0
        for i, p in enumerate(self.points):
            if (mask >> i) & 1 and any(plane_covers(h, p) for h in ghost_planes):
                ghosts += 1
        allowance = len(stamped) * self.cfg.gammas[depth - 1]
        assert ghosts <= allowance, (
            "ghost points %d exceed allowance %s at depth %d" % (ghosts, allowance, depth))

    def run(self, partition: tuple[int, ...], mask: Optional[int] = None,
            stamped: tuple = (), depth: int = 1,
            partial: tuple = ()) -> tuple[bool, Optional[list]]:
        cfg = self.cfg
        if mask is None:
            mask = (1 << len(self.points)) - 1
        self.stats.nodes_expanded += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        remaining_budget = sum(partition[2 * (depth - 1):])
        n_pts = mask.bit_count()
        gammas = cfg.gammas
        assert len(stamped) <= cfg.k, "pending lines exceed the budget"

        if self.debug_planted is not None:
            self._debug_ghost_check(mask, stamped, depth, partial)

        ripe = [e for e in stamped if _is_ripe(e[1], depth, gammas)]

        # the size reject presumes every pending line already passed a
        # ripeness check at this depth; skip it while extensions are due
        if not ripe and n_pts > (remaining_budget + len(stamped)) * gammas[depth - 1]:
            self.stats.leaves_rejected += 1
            return False, None

        if depth == cfg.r or below_base_threshold(n_pts, cfg.base_case_factor * remaining_budget, cfg.k):
            self.stats.leaves_ie += 1
            if self._ie(mask, stamped, remaining_budget + len(stamped)):
                flats = [self.lines[idx][0] if isinstance(idx, int) else idx for idx, _ in stamped]
                ext = extract_cover(self._subset_points(mask), PLANE3,
                                    remaining_budget + len(stamped), flats=flats,
                                    cap=cfg.ie_cap)
                return True, list(partial) + ext
            return False, None

        if ripe:
            keep = tuple(e for e in stamped if e not in ripe)
            keep_lines = [self.lines[idx][0] if isinstance(idx, int) else idx for idx, _ in keep]
            ripe_flats = [self.lines[idx][0] if isinstance(idx, int) else idx for idx, _ in ripe]
            for combo in extend_lines(ripe_flats, self._subset_points(mask), avoid=keep_lines):
                covered = 0
                for h in combo:
                    covered |= self._plane_mask(h)
                ok, wit = self.run(partition, mask & ~covered, keep, depth,
                                   partial + tuple(combo))
                if ok:
                    return True, wit
            return False, None

        lo, hi = gammas[depth], gammas[depth - 1]
        not_too_degenerate = []
        for entry in self.planes:
            t = (entry[1] & mask).bit_count()
            if t < 3 or not (lo <= t <= hi):
                continue
            m = self._max_collinear_on(entry, mask)
            if not _too_degenerate_counts(t, m, lo):
                not_too_degenerate.append((entry[0], entry[1], t))
        not_too_degenerate.sort(key=lambda e: (-e[2], e[0]))

        window_lines = []
        for j, (line, lmask) in enumerate(self.lines):
            m = (lmask & mask).bit_count()
            if m >= 2 and m <= hi and _line_rich_enough(m, lo):
                window_lines.append((j, lmask, m))
        window_lines.sort(key=lambda e: (-e[2], self.lines[e[0]][0]))

        h_i = partition[2 * (depth - 1)]
        l_i = partition[2 * (depth - 1) + 1]
        for planes_pick in itertools.combinations(not_too_degenerate, h_i):
            for lines_pick in itertools.combinations(window_lines, l_i):
                covered = 0
                for _, pmask, _ in planes_pick:
                    covered |= pmask
                for _, lmask, _ in lines_pick:
                    covered |= lmask
                new_stamped = stamped + tuple((j, depth) for j, _, _ in lines_pick)
                ok, wit = self.run(partition, mask & ~covered, new_stamped, depth + 1,
                                   partial + tuple(h for h, _, _ in planes_pick))
                if ok:
                    return True, wit
        return False, None


def pc_recursive(points: Sequence[Point], stamped: StampedLineSet,
                 config: PlaneBranchConfig, partition: tuple[int, ...],
                 depth: int = 1) -> tuple[bool, Optional[list], SearchStats]:
    """One branch of the plane search entered at the given depth."""
    search = _PlaneSearch(points, config)
    entries = tuple((e.line, e.depth_added) for e in stamped.entries)
    full = (1 << len(tuple(points))) - 1
    ok, wit = search.run(partition, full, entries, depth)
    return ok, wit, search.stats


def _plane_partition_worker(args) -> tuple[bool, Optional[list], SearchStats]:
    points, config, partition = args
    search = _PlaneSearch(points, config)
    ok, wit = search.run(partition)
    return ok, wit, search.stats


def plane_cover(points: Sequence[Point], k: int,
                base_case_factor: Optional[Fraction] = None,
                ie_cap: int = DEFAULT_SUBSET_CAP,
                threads: int = 1,
                rng_seed: int = 0,
                debug_planted: Optional[Sequence[Plane3]] = None) -> CoverResult:
    """Kernelize, then run the recursive search over every budget partition
    <h_1, l_1, ..., h_r, l_r> summing to the reduced budget."""
    t0 = time.perf_counter()
    stats = SearchStats()

    def done(decision: bool, witness: Optional[list]) -> CoverResult:
        stats.wall_ms = int((time.perf_counter() - t0) * 1000)
        return CoverResult(decision, witness, stats)

    kern = plane_kernel_r3(points, k, rng_seed)
    if kern.rejected:
        return done(False, None)
    forced, pts, k2 = kern.forced, kern.points, kern.k
    if not pts:
        return done(True, list(forced))

    factor = base_case_factor if base_case_factor is not None else Fraction(1)
    if k2 < 2 or below_base_threshold(len(pts), factor * k2, k2):
        res = ie_decide(pts, PLANE3, k2, cap=ie_cap)
        stats.ie_subsets += res.subsets
        stats.leaves_ie += 1
        if not res.decision:
            return done(False, None)
        return done(True, list(forced) + extract_cover(pts, PLANE3, k2, cap=ie_cap))

    config = make_plane_config(k2, factor, ie_cap)
    partitions = list(budget_partitions(k2, 2 * config.r))

    if threads <= 1:
        search = _PlaneSearch(pts, config, debug_planted)
        for partition in partitions:
            ok, wit = search.run(partition)
            if ok:
                stats = stats.merge(search.stats)
                stats.wall_ms = int((time.perf_counter() - t0) * 1000)
                return CoverResult(True, list(forced) + wit, stats)
        stats = stats.merge(search.stats)
        return done(False, None)

    jobs = [(pts, config, p) for p in partitions]
    decision, witness = False, None
    with ProcessPoolExecutor(max_workers=threads) as pool:
        pending = {pool.submit(_plane_partition_worker, j) for j in jobs}
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
