"""Polynomial-space inclusion-exclusion deciders for curve and plane covers.

The decision `does P have a k-cover?` reduces to the sign-alternating sum
over all subsets X of the ground set of c(P \\ X)^k, where c(Y) counts the
subsets of Y coverable by a single object (the empty set included). The sum
is at least 1 exactly on yes-instances. c is computed per subset through
representatives: each coverable set is charged to a unique small prefix
(its first points in a fixed order, or a greedy hull-growing sequence for
the plane variant with mixed points and lines), so no table over subsets is
ever stored.

Counts are exact arbitrary-precision integers throughout.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Sequence, Union

from .geometry import (
    FamilySpec,
    Flat,
    GeometryError,
    Point,
    affine_hull,
    candidate_cover_sets,
    covering_curve,
    curve_covers,
    curve_through,
    flat_contains,
)

DEFAULT_SUBSET_CAP = 26


class CapExceededError(RuntimeError):
    """Ground set too large for an exponential subset sweep."""


class SolverInternalError(RuntimeError):
    """An internal consistency check failed; indicates a solver bug."""


GroundElement = Union[Point, Flat]


# ---------------------------------------------------------------------------
# representatives


def representative(elements: Sequence[GroundElement], family: FamilySpec):
    """Representative of a coverable set, listed in the caller's order (that
    order is the ordering pi). Curves: the first min(|Q|, s+1) points.
    Plane variant: the greedy prefix whose affine hull keeps growing until it
    spans the whole set. The representative of the empty set is empty."""
    els = tuple(elements)
    if not els:
        return ()
    if family.kind != "plane3":
        if any(not isinstance(e, Point) for e in els):
            raise GeometryError("curve representatives take points only")
        if covering_curve(family, els) is None:
            raise GeometryError("set is not coverable by one %s" % family.kind)
        return els[: family.s + 1]

    hull = affine_hull(els)
    if hull.dim > 2:
        raise GeometryError("set is not coverable by one plane")
    rep = [els[0]]
    cur = affine_hull(els[:1])
    for e in els[1:]:
        if cur.dim == hull.dim:
            break
        if not flat_contains(cur, e):
            rep.append(e)
            cur = affine_hull(rep)
    return tuple(rep)


def q_count(elements: Sequence[GroundElement], family: FamilySpec,
            rep: Sequence[GroundElement]) -> int:
    """Number of coverable subsets of `elements` (in the given order pi)
    whose representative is `rep`. Invalid representatives count 0."""
    els = tuple(elements)
    rep = tuple(rep)
    if not rep:
        return 1  # the empty set
    pos = {e: i for i, e in enumerate(els)}
    if any(e not in pos for e in rep):
        return 0
    idx = [pos[e] for e in rep]
    if any(a >= b for a, b in zip(idx, idx[1:])):
        return 0

    if family.kind != "plane3":
        s = family.s
        if len(rep) > s + 1:
            return 0
        if len(rep) <= s:
            return 1 if covering_curve(family, rep) is not None else 0
        fits = curve_through(family, rep)
        if not fits:
            return 0
        c = fits[0]
        tail = sum(1 for e in els[idx[-1] + 1:] if curve_covers(c, e))
        return 1 << tail

    hulls = []
    for j in range(1, len(rep) + 1):
        hulls.append(affine_hull(rep[:j]))
    if hulls[-1].dim > 2:
        return 0
    for j in range(1, len(rep)):
        if flat_contains(hulls[j - 1], rep[j]):
            return 0  # hull must grow strictly
    tail = 0
    rep_positions = set(idx)
    for i, e in enumerate(els):
        if i in rep_positions:
            continue
        j = sum(1 for r_i in idx if r_i < i)
        if j == 0:
            continue  # before the first representative element: never optional
        if flat_contains(hulls[j - 1], e):
            tail += 1
    return 1 << tail


def c_count(elements: Sequence[GroundElement], family: FamilySpec) -> int:
    """Number of single-object-coverable subsets of `elements`, the empty set
    included. Independent of the element order."""
    counter = CoverableCounter.for_ground(elements, family)
    return counter.c_of_mask((1 << len(tuple(elements))) - 1)


# ---------------------------------------------------------------------------
# fast per-subset counting


class CoverableCounter:
    """Precomputes, for one fixed ground set, every candidate representative
    together with its optional-tail mask, so that c(X) for any subset mask X
    costs one pass over the representatives inside X."""

    def __init__(self, points: Sequence[Point], family: FamilySpec,
                 flats: Sequence[Flat] = ()):
        self.points = tuple(points)
        self.flats = tuple(flats)
        self.family = family
        if flats and family.kind != "plane3":
            raise GeometryError("flats in the ground set need the plane3 family")
        self.ground: tuple[GroundElement, ...] = self.points + self.flats
        self.n = len(self.ground)
        if family.kind == "plane3":
            self._build_anyflat()
        else:
            self._build_curves()

    @classmethod
    def for_ground(cls, elements: Sequence[GroundElement], family: FamilySpec):
        pts = tuple(e for e in elements if isinstance(e, Point))
        fls = tuple(e for e in elements if isinstance(e, Flat))
        if pts + fls != tuple(elements):
            raise GeometryError("ground order must list points before flats")
        return cls(pts, family, fls)

    # -- curves: representatives are pi-prefixes of size <= s+1

    def _build_curves(self):
        pts, fam, n = self.points, self.family, self.n
        s = fam.s
        if s == 1:
            tails = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    fits = curve_through(fam, (pts[i], pts[j]))
                    c = fits[0]
                    m = 0
                    for l in range(j + 1, n):
                        if curve_covers(c, pts[l]):
                            m |= 1 << l
                    tails[i][j] = m
            self._pair_tails = tails
            self._pair_ok = None
            self._triple_tails = None
        else:
            ok = [[False] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    ok[i][j] = covering_curve(fam, (pts[i], pts[j])) is not None
            triples: dict[int, int] = {}
            for i in range(n):
                for j in range(i + 1, n):
                    for l in range(j + 1, n):
                        fits = curve_through(fam, (pts[i], pts[j], pts[l]))
                        if not fits:
                            continue
                        c = fits[0]
                        m = 0
                        for t in range(l + 1, n):
                            if curve_covers(c, pts[t]):
                                m |= 1 << t
                        triples[(i * n + j) * n + l] = m
            self._pair_ok = ok
            self._pair_tails = None
            self._triple_tails = triples

    # -- planes: representatives grow the affine hull strictly, size <= 3

    def _build_anyflat(self):
        ground, n = self.ground, self.n
        hull1 = [affine_hull([e]) for e in ground]
        inside1 = [[flat_contains(hull1[i], ground[j]) for j in range(n)] for i in range(n)]

        singles = []
        for i in range(n):
            m = 0
            for j in range(i + 1, n):
                if inside1[i][j]:
                    m |= 1 << j
            singles.append(m)
        self._singles = singles

        pair_tail: dict[int, int] = {}
        pair_hull: dict[int, Flat] = {}
        for i in range(n):
            for j in range(i + 1, n):
                if inside1[i][j]:
                    continue  # hull must grow
                h = affine_hull([ground[i], ground[j]])
                if h.dim > 2:
                    continue
                pair_hull[i * n + j] = h
                m = 0
                for t in range(i + 1, n):
                    if t == j:
                        continue
                    ok = inside1[i][t] if t < j else flat_contains(h, ground[t])
                    if ok:
                        m |= 1 << t
                pair_tail[i * n + j] = m
        self._pair_tail = pair_tail

        triple_tail: dict[int, int] = {}
        for key, h2 in pair_hull.items():
            i, j = divmod(key, n)
            for l in range(j + 1, n):
                if flat_contains(h2, ground[l]):
                    continue
                h3 = affine_hull([ground[x] for x in (i, j, l)])
                if h3.dim > 2:
                    continue
                m = 0
                for t in range(i + 1, n):
                    if t in (j, l):
                        continue
                    if t < j:
                        ok = inside1[i][t]
                    elif t < l:
                        ok = flat_contains(h2, ground[t])
                    else:
                        ok = flat_contains(h3, ground[t])
                    if ok:
                        m |= 1 << t
                triple_tail[key * n + l] = m
        self._triple_tail = triple_tail

    # -- evaluation

    def c_of_mask(self, mask: int) -> int:
        bits = []
        m = mask
        while m:
            low = m & -m
            bits.append(low.bit_length() - 1)
            m ^= low
        total = 1  # the empty set
        fam = self.family
        if fam.kind != "plane3":
            total += len(bits)
            if fam.s == 1:
                tails = self._pair_tails
                for a in range(len(bits)):
                    row = tails[bits[a]]
                    for b in range(a + 1, len(bits)):
                        total += 1 << (row[bits[b]] & mask).bit_count()
            else:
                ok = self._pair_ok
                trip = self._triple_tails
                n = self.n
                for a in range(len(bits)):
                    i = bits[a]
                    for b in range(a + 1, len(bits)):
                        j = bits[b]
                        if ok[i][j]:
                            total += 1
                        base = (i * n + j) * n
                        for c in range(b + 1, len(bits)):
                            t = trip.get(base + bits[c])
                            if t is not None:
                                total += 1 << (t & mask).bit_count()
            return total

        n = self.n
        singles, pair_tail, triple_tail = self._singles, self._pair_tail, self._triple_tail
        for a in range(len(bits)):
            i = bits[a]
            total += 1 << (singles[i] & mask).bit_count()
            for b in range(a + 1, len(bits)):
                j = bits[b]
                key = i * n + j
                t = pair_tail.get(key)
                if t is not None:
                    total += 1 << (t & mask).bit_count()
                base = key * n
                for c in range(b + 1, len(bits)):
                    t3 = triple_tail.get(base + bits[c])
                    if t3 is not None:
                        total += 1 << (t3 & mask).bit_count()
        return total


# ---------------------------------------------------------------------------
# deciders


class IEResult(NamedTuple):
    decision: bool
    ie_sum: int
    subsets: int


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapExceededError("ground set of %d exceeds the subset-sweep cap %d" % (n, cap))


def ie_decide(points: Sequence[Point], family: FamilySpec, k: int,
              flats: Sequence[Flat] = (), cap: int = DEFAULT_SUBSET_CAP,
              counter: Optional[CoverableCounter] = None) -> IEResult:
    """Signed subset sweep; yes iff the alternating sum reaches 1."""
    if k < 0:
        raise ValueError("negative budget")
    counter = counter or CoverableCounter(points, family, flats)
    n = counter.n
    _check_cap(n, cap)
    total = 0
    for sub in range(1 << n):
        c = counter.c_of_mask(sub)
        if (n - sub.bit_count()) & 1:
            total -= c ** k
        else:
            total += c ** k
    return IEResult(total >= 1, total, 1 << n)


def ie_sums(points: Sequence[Point], family: FamilySpec, ks: Sequence[int],
            flats: Sequence[Flat] = (), cap: int = DEFAULT_SUBSET_CAP) -> dict[int, int]:
    """Alternating sums for several budgets in one sweep (c is computed once
    per subset and powered per budget)."""
    counter = CoverableCounter(points, family, flats)
    n = counter.n
    _check_cap(n, cap)
    ks = sorted(set(ks))
    if any(k < 0 for k in ks):
        raise ValueError("negative budget")
    totals = {k: 0 for k in ks}
    for sub in range(1 << n):
        c = counter.c_of_mask(sub)
        sign = -1 if (n - sub.bit_count()) & 1 else 1
        power, exp = 1, 0
        for k in ks:
            power *= c ** (k - exp)
            exp = k
            totals[k] += sign * power
    return totals


def ie_min_cover(points: Sequence[Point], family: FamilySpec,
                 flats: Sequence[Flat] = (), cap: int = DEFAULT_SUBSET_CAP) -> int:
    """Minimum k whose alternating sum reaches 1, from one subset sweep with
    one accumulator per candidate budget."""
    n = len(tuple(points)) + len(tuple(flats))
    totals = ie_sums(points, family, range(n + 1), flats, cap)
    for k in range(n + 1):
        if totals[k] >= 1:
            return k
    raise SolverInternalError("no budget up to n admits a cover")


def extract_cover(points: Sequence[Point], family: FamilySpec, k: int,
                  flats: Sequence[Flat] = (), cap: int = DEFAULT_SUBSET_CAP) -> list:
    """Concrete cover of at most k objects, built by self-reduction with the
    subset-sweep decider as the oracle. Requires a yes-instance."""
    pts = list(points)
    fls = list(flats)
    if not ie_decide(pts, family, k, fls, cap).decision:
        raise SolverInternalError("extract_cover called on a no-instance")
    chosen = []
    budget = k
    while pts or fls:
        ground_n = len(pts) + len(fls)
        cands = candidate_cover_sets(pts, family, fls)
        first_bit = 1  # pi-first remaining element
        progressed = False
        for obj, mask in cands:
            if not (mask & first_bit):
                continue
            keep_pts = [p for i, p in enumerate(pts) if not (mask >> i) & 1]
            keep_fls = [f for i, f in enumerate(fls) if not (mask >> (len(pts) + i)) & 1]
            if ie_decide(keep_pts, family, budget - 1, keep_fls, cap).decision:
                chosen.append(obj)
                pts, fls = keep_pts, keep_fls
                budget -= 1
                progressed = True
                break
        if not progressed:
            raise SolverInternalError("no candidate extends the partial cover")
    return chosen
