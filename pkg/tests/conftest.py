import random

from geomcover.geometry import Point, pt


def random_points_2d(rng: random.Random, n: int, span: int = 4) -> list[Point]:
    """Distinct integer-grid points; the small span breeds collinear triples."""
    out: list[Point] = []
    while len(out) < n:
        p = pt(rng.randint(0, span), rng.randint(0, span))
        if p not in out:
            out.append(p)
    return out


def random_points_3d(rng: random.Random, n: int, span: int = 3) -> list[Point]:
    out: list[Point] = []
    while len(out) < n:
        p = pt(rng.randint(0, span), rng.randint(0, span), rng.randint(0, span))
        if p not in out:
            out.append(p)
    return out
