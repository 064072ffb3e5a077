"""Exact rational geometry: points, plane curves, 3D planes and affine flats.

Everything is computed over fractions.Fraction, so incidence predicates are
decided exactly; there is no floating point and no tolerance tuning anywhere
in the solver stack. Covering objects carry a canonical coefficient form, so
two objects are geometrically equal iff their dataclasses compare equal.

Supported curve families (kind, degrees of freedom d, multiplicity-type s):

    line2       ax + by + c = 0, first nonzero of (a, b) scaled to 1   (2, 1)
    circle2     (x - cx)^2 + (y - cy)^2 = r2, r2 > 0                   (3, 2)
    vparabola2  y = ax^2 + bx + c with a != 0                          (3, 2)
    plane3      ax + by + cz + e = 0, first nonzero of (a, b, c) = 1

In each 2D family, two distinct curves meet in at most s points and at most
one family member passes through any s+1 distinct points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence, Union


class GeometryError(ValueError):
    """Degenerate or dimensionally invalid geometric input."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True, order=True)
class Point:
    coords: tuple[Fraction, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __repr__(self) -> str:
        return "pt(%s)" % ", ".join(str(c) for c in self.coords)


def pt(*coords) -> Point:
    """Build a Point from ints, strings or Fractions."""
    if len(coords) not in (2, 3):
        raise GeometryError("points live in dimension 2 or 3, got %d coords" % len(coords))
    return Point(tuple(_frac(c) for c in coords))


def dedupe_points(points: Iterable[Point]) -> tuple[Point, ...]:
    """Drop repeated points, keeping first occurrences in order."""
    seen = set()
    out = []
    for p in points:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# curve families


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    d: int
    s: Optional[int]  # None for plane3: the pairwise bound there depends on the budget

    @property
    def ambient_dim(self) -> int:
        return 3 if self.kind == "plane3" else 2


LINE2 = FamilySpec("line2", 2, 1)
CIRCLE2 = FamilySpec("circle2", 3, 2)
VPARABOLA2 = FamilySpec("vparabola2", 3, 2)
PLANE3 = FamilySpec("plane3", 3, None)

FAMILIES = {f.kind: f for f in (LINE2, CIRCLE2, VPARABOLA2, PLANE3)}


def family_by_tag(tag: str) -> FamilySpec:
    try:
        return FAMILIES[tag]
    except KeyError:
        raise GeometryError("unknown family tag %r" % tag) from None


@dataclass(frozen=True, order=True)
class Curve:
    kind: str
    coeffs: tuple[Fraction, ...]

    def __repr__(self) -> str:
        return "Curve(%s: %s)" % (self.kind, ", ".join(str(c) for c in self.coeffs))


def line2_curve(a, b, c) -> Curve:
    a, b, c = _frac(a), _frac(b), _frac(c)
    if a == 0 and b == 0:
        raise GeometryError("line needs (a, b) != (0, 0)")
    lead = a if a != 0 else b
    return Curve("line2", (a / lead, b / lead, c / lead))


def circle2_curve(cx, cy, r2) -> Curve:
    cx, cy, r2 = _frac(cx), _frac(cy), _frac(r2)
    if r2 <= 0:
        raise GeometryError("circle needs r2 > 0")
    return Curve("circle2", (cx, cy, r2))


def vparabola2_curve(a, b, c) -> Curve:
    a, b, c = _frac(a), _frac(b), _frac(c)
    if a == 0:
        raise GeometryError("vertical parabola needs a != 0")
    return Curve("vparabola2", (a, b, c))


@dataclass(frozen=True, order=True)
class Plane3:
    coeffs: tuple[Fraction, ...]  # (a, b, c, e) for ax + by + cz + e = 0

    def __repr__(self) -> str:
        return "Plane3(%s)" % ", ".join(str(c) for c in self.coeffs)


def plane3_curve(a, b, c, e) -> Plane3:
    a, b, c, e = _frac(a), _frac(b), _frac(c), _frac(e)
    if a == 0 and b == 0 and c == 0:
        raise GeometryError("plane needs (a, b, c) != (0, 0, 0)")
    lead = next(x for x in (a, b, c) if x != 0)
    return Plane3((a / lead, b / lead, c / lead, e / lead))


# ---------------------------------------------------------------------------
# membership predicates


def curve_covers(curve: Curve, p: Point) -> bool:
    """Exact membership test by rational substitution."""
    if p.dim != 2:
        raise GeometryError("2D curve against a %dD point" % p.dim)
    x, y = p.coords
    a, b, c = curve.coeffs
    if curve.kind == "line2":
        return a * x + b * y + c == 0
    if curve.kind == "circle2":
        return (x - a) ** 2 + (y - b) ** 2 == c
    if curve.kind == "vparabola2":
        return y == a * x * x + b * x + c
    raise GeometryError("unknown curve kind %r" % curve.kind)


def plane_covers(plane: Plane3, p: Point) -> bool:
    if p.dim != 3:
        raise GeometryError("plane against a %dD point" % p.dim)
    a, b, c, e = plane.coeffs
    x, y, z = p.coords
    return a * x + b * y + c * z + e == 0


def covers(obj, p: Point) -> bool:
    """Membership of a point on any covering object (Curve, Plane3 or Flat)."""
    if isinstance(obj, Curve):
        return curve_covers(obj, p)
    if isinstance(obj, Plane3):
        return plane_covers(obj, p)
    if isinstance(obj, Flat):
        return flat_contains(obj, p)
    raise GeometryError("cannot test coverage against %r" % (obj,))


def richness(obj, points: Sequence[Point]) -> int:
    """Number of points of P the object covers."""
    return sum(1 for p in points if covers(obj, p))


# ---------------------------------------------------------------------------
# curve fitting


def _line_through_two(p: Point, q: Point) -> Curve:
    (x1, y1), (x2, y2) = p.coords, q.coords
    # normal = rotated direction
    return line2_curve(y2 - y1, x1 - x2, -(y2 - y1) * x1 - (x1 - x2) * y1)


def _circle_through_three(p: Point, q: Point, r: Point) -> Optional[Curve]:
    # circumcenter from the two perpendicular-bisector equations; collinear -> None
    (x1, y1), (x2, y2), (x3, y3) = p.coords, q.coords, r.coords
    a11, a12 = 2 * (x2 - x1), 2 * (y2 - y1)
    a21, a22 = 2 * (x3 - x1), 2 * (y3 - y1)
    b1 = x2 * x2 + y2 * y2 - x1 * x1 - y1 * y1
    b2 = x3 * x3 + y3 * y3 - x1 * x1 - y1 * y1
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    cx = (b1 * a22 - b2 * a12) / det
    cy = (a11 * b2 - a21 * b1) / det
    r2 = (x1 - cx) ** 2 + (y1 - cy) ** 2
    return circle2_curve(cx, cy, r2)


def _vparabola_through_three(p: Point, q: Point, r: Point) -> Optional[Curve]:
    (x1, y1), (x2, y2), (x3, y3) = p.coords, q.coords, r.coords
    if x1 == x2 or x1 == x3 or x2 == x3:
        return None
    # Lagrange interpolation; reject a == 0 (that would be a line, not a parabola)
    a = y1 / ((x1 - x2) * (x1 - x3)) + y2 / ((x2 - x1) * (x2 - x3)) + y3 / ((x3 - x1) * (x3 - x2))
    if a == 0:
        return None
    b = (y2 - y1) / (x2 - x1) - a * (x1 + x2)
    c = y1 - a * x1 * x1 - b * x1
    return vparabola2_curve(a, b, c)


def curve_through(family: FamilySpec, points: Sequence[Point]) -> tuple[Curve, ...]:
    """All family curves through the given points; a canonical completion when
    fewer than d points are given (then only existence is meaningful).

    Returns the empty tuple when no family curve exists, e.g. a vertical
    parabola through two points sharing an x-coordinate.
    """
    if family.kind == "plane3":
        raise GeometryError("use plane_through for plane3")
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise GeometryError("duplicate points")
    if any(p.dim != 2 for p in pts):
        raise GeometryError("curve fitting needs 2D points")
    if not pts or len(pts) > family.s + 1:
        raise GeometryError("curve_through takes 1..s+1 points, got %d" % len(pts))

    if family.kind == "line2":
        if len(pts) == 1:
            (x, y) = pts[0].coords
            return (line2_curve(0, 1, -y),)  # horizontal completion
        return (_line_through_two(pts[0], pts[1]),)

    if family.kind == "circle2":
        if len(pts) == 1:
            (x, y) = pts[0].coords
            return (circle2_curve(x + 1, y, 1),)
        if len(pts) == 2:
            (x1, y1), (x2, y2) = pts[0].coords, pts[1].coords
            cx, cy = (x1 + x2) / 2, (y1 + y2) / 2
            r2 = (x1 - cx) ** 2 + (y1 - cy) ** 2
            return (circle2_curve(cx, cy, r2),)  # diameter circle
        c = _circle_through_three(*pts)
        return (c,) if c is not None else ()

    if family.kind == "vparabola2":
        xs = [p[0] for p in pts]
        if len(set(xs)) != len(xs):
            return ()  # a function graph cannot repeat an x
        if len(pts) == 1:
            (x, y) = pts[0].coords
            return (vparabola2_curve(1, 0, y - x * x),)
        if len(pts) == 2:
            (x1, y1), (x2, y2) = pts[0].coords, pts[1].coords
            # fix a = 1, solve b, c
            b = (y2 - y1 - (x2 * x2 - x1 * x1)) / (x2 - x1)
            c = y1 - x1 * x1 - b * x1
            return (vparabola2_curve(1, b, c),)
        c = _vparabola_through_three(*pts)
        return (c,) if c is not None else ()

    raise GeometryError("unknown family %r" % family.kind)


def covering_curve(family: FamilySpec, points: Sequence[Point]) -> Optional[Curve]:
    """Some family curve through every given point, or None if none exists."""
    pts = tuple(points)
    if not pts:
        return None
    cap = family.s + 1
    if len(pts) <= cap:
        fits = curve_through(family, pts)
        return fits[0] if fits else None
    fits = curve_through(family, pts[:cap])
    if not fits:
        return None
    c = fits[0]
    return c if all(curve_covers(c, p) for p in pts[cap:]) else None


# ---------------------------------------------------------------------------
# curve intersections


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> tuple[list[Fraction], int]:
    """Rational roots of ax^2+bx+c (a != 0) and the number of real roots."""
    disc = b * b - 4 * a * c
    if disc < 0:
        return [], 0
    if disc == 0:
        return [-b / (2 * a)], 1
    sq = _rational_sqrt(disc)
    if sq is None:
        return [], 2
    return [(-b - sq) / (2 * a), (-b + sq) / (2 * a)], 2


def curves_intersect(c1: Curve, c2: Curve) -> tuple[tuple[Point, ...], int]:
    """Rational intersection points of two distinct same-family curves, plus
    the exact total intersection count (irrational circle intersections are
    counted but not materialized)."""
    if c1.kind != c2.kind:
        raise GeometryError("curves from different families")
    if c1 == c2:
        raise GeometryError("identical curves")

    if c1.kind == "line2":
        a1, b1, d1 = c1.coeffs
        a2, b2, d2 = c2.coeffs
        det = a1 * b2 - a2 * b1
        if det == 0:
            return (), 0  # parallel
        x = (b1 * d2 - b2 * d1) / det
        y = (a2 * d1 - a1 * d2) / det
        return (pt(x, y),), 1

    if c1.kind == "circle2":
        cx1, cy1, r21 = c1.coeffs
        cx2, cy2, r22 = c2.coeffs
        if cx1 == cx2 and cy1 == cy2:
            return (), 0  # concentric
        # radical line: 2(c2-c1).(x,y) = (|c2|^2 - r2^2) - (|c1|^2 - r1^2)
        a = 2 * (cx2 - cx1)
        b = 2 * (cy2 - cy1)
        d = (cx2 * cx2 + cy2 * cy2 - r22) - (cx1 * cx1 + cy1 * cy1 - r21)
        # intersect with circle 1 by substitution along the dominant axis
        pts: list[Point] = []
        if b != 0:
            # y = (d - a x) / b
            qa = 1 + (a / b) ** 2
            qb = -2 * cx1 + 2 * (a / b) * (cy1 - d / b)
            qc = cx1 * cx1 + (d / b - cy1) ** 2 - r21
            roots, count = _quadratic_roots(qa, qb, qc)
            pts = [pt(x, (d - a * x) / b) for x in roots]
        else:
            x = d / a
            qa, qb, qc = Fraction(1), -2 * cy1, cy1 * cy1 + (x - cx1) ** 2 - r21
            roots, count = _quadratic_roots(qa, qb, qc)
            pts = [pt(x, y) for y in roots]
        return tuple(pts), count

    if c1.kind == "vparabola2":
        a1, b1, d1 = c1.coeffs
        a2, b2, d2 = c2.coeffs
        da, db, dc = a1 - a2, b1 - b2, d1 - d2
        if da == 0:
            if db == 0:
                return (), 0  # same a, b, different c: disjoint graphs
            x = -dc / db
            return (pt(x, a1 * x * x + b1 * x + d1),), 1
        roots, count = _quadratic_roots(da, db, dc)
        return tuple(pt(x, a1 * x * x + b1 * x + d1) for x in roots), count

    raise GeometryError("unknown curve kind %r" % c1.kind)


# ---------------------------------------------------------------------------
# candidate enumeration


def enumerate_candidates(points: Sequence[Point], family: FamilySpec):
    """All family objects through at least d points of P, deduplicated and in
    canonical order. For plane3 these are planes through affinely independent
    triples."""
    pts = tuple(points)
    found = set()
    if family.kind == "plane3":
        for a, b, c in itertools.combinations(pts, 3):
            try:
                found.add(plane_through(a, b, c))
            except GeometryError:
                continue
    else:
        for combo in itertools.combinations(pts, family.d):
            for c in curve_through(family, combo):
                found.add(c)
    return sorted(found)


# ---------------------------------------------------------------------------
# 3D flats (ambient dimension 3 only)


def _rref(rows: Sequence[Sequence[Fraction]]) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    work = [list(r) for r in rows if any(x != 0 for x in r)]
    pivots = []
    r = 0
    for col in range(3):
        piv = None
        for i in range(r, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead = work[r][col]
        work[r] = [x / lead for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                g = work[i][col]
                work[i] = [x - g * y for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


@dataclass(frozen=True, order=True)
class Flat:
    """Affine subspace of R^3 in canonical form: reduced-echelon direction
    basis, base point zeroed along the pivot coordinates. dim 0..3 (3 = the
    whole space, used as the distinguished 'full' hull value)."""

    base: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return "Flat(dim=%d, base=%s)" % (self.dim, self.base)


def make_flat(anchor: Sequence, directions: Sequence[Sequence]) -> Flat:
    anchor = tuple(_frac(x) for x in anchor)
    if len(anchor) != 3:
        raise GeometryError("flats live in R^3")
    basis, pivots = _rref([[_frac(x) for x in d] for d in directions])
    base = list(anchor)
    for row, col in zip(basis, pivots):
        f = base[col]
        if f != 0:
            base = [x - f * y for x, y in zip(base, row)]
    return Flat(tuple(base), basis)


def flat_point(p: Point) -> Flat:
    return make_flat(p.coords, [])


def line_through(p: Point, q: Point) -> Flat:
    if p == q:
        raise GeometryError("line needs two distinct points")
    if p.dim != 3 or q.dim != 3:
        raise GeometryError("line_through is for R^3 points")
    return make_flat(p.coords, [[b - a for a, b in zip(p.coords, q.coords)]])


FULL_SPACE = make_flat((0, 0, 0), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def _reduce_by_basis(v: list[Fraction], basis) -> list[Fraction]:
    for row in basis:
        col = next(i for i, x in enumerate(row) if x != 0)
        f = v[col]
        if f != 0:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def affine_hull(objs: Sequence[Union[Point, Flat]]) -> Flat:
    """Smallest flat containing every input point/flat (dim 3 = full space)."""
    if not objs:
        raise GeometryError("affine_hull of nothing")
    first = objs[0]
    anchor = first.coords if isinstance(first, Point) else first.base
    dirs = []
    for o in objs:
        if isinstance(o, Point):
            if o.dim != 3:
                raise GeometryError("affine_hull is for R^3")
            dirs.append([b - a for a, b in zip(anchor, o.coords)])
        else:
            dirs.append([b - a for a, b in zip(anchor, o.base)])
            dirs.extend(list(d) for d in o.basis)
    return make_flat(anchor, dirs)


def flat_contains(outer: Union[Flat, "Plane3"], inner: Union[Flat, Point]) -> bool:
    """Exact containment of a point or flat inside a flat or plane."""
    if isinstance(outer, Plane3):
        a, b, c, e = outer.coeffs
        if isinstance(inner, Point):
            return plane_covers(outer, inner)
        base_ok = a * inner.base[0] + b * inner.base[1] + c * inner.base[2] + e == 0
        return base_ok and all(a * d[0] + b * d[1] + c * d[2] == 0 for d in inner.basis)
    if isinstance(inner, Point):
        v = _reduce_by_basis([x - y for x, y in zip(inner.coords, outer.base)], outer.basis)
        return all(x == 0 for x in v)
    if not flat_contains(outer, Point(inner.base)):
        return False
    for d in inner.basis:
        if any(x != 0 for x in _reduce_by_basis(list(d), outer.basis)):
            return False
    return True


def plane_through(p: Point, q: Point, r: Point) -> Plane3:
    if len({p, q, r}) != 3:
        raise GeometryError("plane needs three distinct points")
    u = [b - a for a, b in zip(p.coords, q.coords)]
    v = [b - a for a, b in zip(p.coords, r.coords)]
    n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    if all(x == 0 for x in n):
        raise GeometryError("collinear points do not determine a plane")
    e = -(n[0] * p[0] + n[1] * p[1] + n[2] * p[2])
    return plane3_curve(n[0], n[1], n[2], e)


def plane_through_line_point(line: Flat, p: Point) -> Plane3:
    if line.dim != 1:
        raise GeometryError("expected a 1-flat")
    if flat_contains(line, p):
        raise GeometryError("point lies on the line")
    u = line.basis[0]
    v = [b - a for a, b in zip(line.base, p.coords)]
    n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    e = -(n[0] * line.base[0] + n[1] * line.base[1] + n[2] * line.base[2])
    return plane3_curve(n[0], n[1], n[2], e)


def plane3_from_flat(f: Flat) -> Plane3:
    if f.dim != 2:
        raise GeometryError("expected a 2-flat")
    u, v = f.basis
    n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    e = -(n[0] * f.base[0] + n[1] * f.base[1] + n[2] * f.base[2])
    return plane3_curve(n[0], n[1], n[2], e)


def enumerate_lines3(points: Sequence[Point]) -> list[Flat]:
    """Deduplicated lines through at least two of the given R^3 points."""
    found = set()
    for p, q in itertools.combinations(points, 2):
        found.add(line_through(p, q))
    return sorted(found)


def max_collinear(points: Sequence[Point]) -> tuple[int, Optional[Flat]]:
    """Largest number of the points on one line, with a witness line when at
    least two points exist."""
    pts = tuple(points)
    if len(pts) <= 1:
        return len(pts), None
    best, witness = 0, None
    for line in enumerate_lines3(pts):
        count = sum(1 for p in pts if flat_contains(line, p))
        if count > best:
            best, witness = count, line
    return best, witness


# ---------------------------------------------------------------------------
# maximal cover sets (shared by the brute-force solver and witness extraction)


def _sort_key(obj) -> tuple:
    if isinstance(obj, Curve):
        return (0, obj.kind, obj.coeffs)
    if isinstance(obj, Plane3):
        return (1, "plane3", obj.coeffs)
    return (2, "flat%d" % obj.dim, obj.base, obj.basis)


def candidate_cover_sets(points: Sequence[Point], family: FamilySpec,
                         flats: Sequence[Flat] = ()) -> list[tuple[object, int]]:
    """(object, covered-mask) pairs such that every single-object-coverable
    subset of the ground set is contained in some listed mask.

    The ground set is points followed by flats (flats only for plane3).
    Dominated masks are pruned; ties keep the canonically smallest object.
    """
    pts = tuple(points)
    flats = tuple(flats)
    if flats and family.kind != "plane3":
        raise GeometryError("flats in the ground set need the plane3 family")
    objs: dict[object, None] = {}

    if family.kind == "plane3":
        ground: list = list(pts) + list(flats)
        for size in (1, 2, 3):
            for combo in itertools.combinations(ground, size):
                hull = affine_hull(combo)
                if hull.dim > 2:
                    continue
                objs[_complete_plane(hull)] = None
        n = len(ground)
        raw = []
        for obj in objs:
            mask = 0
            for i, el in enumerate(ground):
                inside = plane_covers(obj, el) if isinstance(el, Point) else flat_contains(obj, el)
                if inside:
                    mask |= 1 << i
            if mask:
                raw.append((obj, mask))
    else:
        for size in range(1, family.d + 1):
            for combo in itertools.combinations(pts, size):
                if size == family.d:
                    for c in curve_through(family, combo):
                        objs[c] = None
                else:
                    c = covering_curve(family, combo)
                    if c is not None:
                        objs[c] = None
        raw = []
        for obj in objs:
            mask = 0
            for i, p in enumerate(pts):
                if curve_covers(obj, p):
                    mask |= 1 << i
            if mask:
                raw.append((obj, mask))

    # dominance pruning: keep only set-maximal masks, canonical object per mask
    raw.sort(key=lambda om: (-bin(om[1]).count("1"), _sort_key(om[0])))
    kept: list[tuple[object, int]] = []
    seen_masks: list[int] = []
    for obj, mask in raw:
        if any(mask | m == m for m in seen_masks):
            continue
        kept.append((obj, mask))
        seen_masks.append(mask)
    return kept


def _complete_plane(hull: Flat) -> Plane3:
    """The plane equal to a 2-flat, or a canonical plane containing a smaller
    flat."""
    if hull.dim == 2:
        return plane3_from_flat(hull)
    if hull.dim == 1:
        return canonical_plane_through_line(hull)
    # a single point: horizontal plane through it
    return plane3_curve(0, 0, 1, -hull.base[2])


def canonical_plane_through_line(line: Flat, avoid: Sequence[Flat] = ()) -> Plane3:
    """A deterministic plane containing `line` and none of the `avoid` lines."""
    u = line.basis[0]
    # two independent normals orthogonal to u
    cands = []
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        n = (u[1] * _frac(e[2]) - u[2] * _frac(e[1]),
             u[2] * _frac(e[0]) - u[0] * _frac(e[2]),
             u[0] * _frac(e[1]) - u[1] * _frac(e[0]))
        if any(x != 0 for x in n):
            cands.append(n)
    n1 = cands[0]
    n2 = next(n for n in cands[1:] if _rref([n1, n])[0].__len__() == 2)
    t = 0
    while True:
        n = tuple(a + t * b for a, b in zip(n1, n2))
        e = -(n[0] * line.base[0] + n[1] * line.base[1] + n[2] * line.base[2])
        plane = plane3_curve(n[0], n[1], n[2], e)
        if all(not flat_contains(plane, other) for other in avoid):
            return plane
        t += 1


# ---------------------------------------------------------------------------
# independent cover checking


def check_cover(points: Sequence[Point], objects: Sequence, k: int,
                flats: Sequence[Flat] = ()) -> bool:
    """True iff at most k objects jointly cover every point and flat."""
    if len(objects) > k:
        return False
    for p in points:
        if not any(covers(o, p) for o in objects):
            return False
    for f in flats:
        if not any(isinstance(o, (Plane3, Flat)) and flat_contains(o, f) for o in objects):
            return False
    return True
