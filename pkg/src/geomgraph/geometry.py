"""Exact planar primitives: points, segments, polygons, triangulations.

All coordinates are `fractions.Fraction`; every predicate is decided by exact
sign computations, so there are no tolerance knobs anywhere in this module.
Floats are deliberately rejected at construction time — convert them to
Fractions explicitly if you really mean the binary value.
"""

from __future__ import annotations

import collections
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

# ---------------------------------------------------------------------------
# points and small vector helpers
# ---------------------------------------------------------------------------


def _q(value) -> Fraction:
    """Coerce ints, strings like '3/2' or '0.25', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InputError(
        f"coordinates must be Fraction, int, or string, not {type(value).__name__}"
    )


_PointBase = collections.namedtuple("_PointBase", ["x", "y"])


class Point(_PointBase):
    """An exact point in the plane.  Accepts int/str/Fraction coordinates."""

    __slots__ = ()

    def __new__(cls, x, y):
        return super().__new__(cls, _q(x), _q(y))

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


def orientation(a: Point, b: Point, c: Point) -> Fraction:
    """Signed cross product of (b - a) and (c - a).

    Positive when a,b,c make a left turn (counterclockwise), negative for a
    right turn, zero for collinear points.
    """
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def dist2(a: Point, b: Point) -> Fraction:
    """Squared Euclidean distance (exact)."""
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


@dataclass(frozen=True)
class Segment:
    """A closed segment with distinct endpoints."""

    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise InputError(f"degenerate segment: both endpoints are {self.a}")


def _on_segment(p: Point, s: Segment) -> bool:
    """Exact test: does p lie on the closed segment s?"""
    if orientation(s.a, s.b, p) != 0:
        return False
    return (
        min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
        and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y)
    )


@dataclass(frozen=True)
class SegmentIntersection:
    """Classification of how two segments meet.

    kind is one of "disjoint", "crossing", "endpoint_touch", "overlap";
    point is the exact common point for "crossing" and "endpoint_touch",
    None otherwise.
    """

    kind: str
    point: Point | None = None


def segments_intersect(s1: Segment, s2: Segment) -> SegmentIntersection:
    """Classify the intersection of two closed segments exactly.

    "crossing" means a single common point interior to both segments (the
    point is returned); "endpoint_touch" means a single common point that is
    an endpoint of at least one segment; "overlap" means a collinear common
    sub-segment of positive length.
    """
    o1 = orientation(s1.a, s1.b, s2.a)
    o2 = orientation(s1.a, s1.b, s2.b)
    o3 = orientation(s2.a, s2.b, s1.a)
    o4 = orientation(s2.a, s2.b, s1.b)

    if o1 == 0 and o2 == 0:
        # Collinear: compare 1-D intervals along the dominant axis.
        if s1.a.x == s1.b.x:
            key = lambda p: p.y  # noqa: E731 - tiny local projection
        else:
            key = lambda p: p.x  # noqa: E731
        lo1, hi1 = sorted((key(s1.a), key(s1.b)))
        lo2, hi2 = sorted((key(s2.a), key(s2.b)))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return SegmentIntersection("disjoint")
        if lo == hi:
            touch = next(
                p for p in (s1.a, s1.b, s2.a, s2.b) if key(p) == lo
            )
            return SegmentIntersection("endpoint_touch", touch)
        return SegmentIntersection("overlap")

    if (o1 > 0) != (o2 > 0) and o1 != 0 and o2 != 0 and (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0:
        # Proper crossing: solve s1.a + t * (s1.b - s1.a) against s2's line.
        d1x, d1y = s1.b.x - s1.a.x, s1.b.y - s1.a.y
        d2x, d2y = s2.b.x - s2.a.x, s2.b.y - s2.a.y
        denom = d1x * d2y - d1y * d2x
        t = ((s2.a.x - s1.a.x) * d2y - (s2.a.y - s1.a.y) * d2x) / denom
        return SegmentIntersection(
            "crossing", Point(s1.a.x + t * d1x, s1.a.y + t * d1y)
        )

    touches = set()
    for p in (s1.a, s1.b):
        if _on_segment(p, s2):
            touches.add(p)
    for p in (s2.a, s2.b):
        if _on_segment(p, s1):
            touches.add(p)
    if not touches:
        return SegmentIntersection("disjoint")
    assert len(touches) == 1, "non-collinear segments share at most one point"
    return SegmentIntersection("endpoint_touch", touches.pop())


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------


def _ring_signed_area2(ring: tuple[Point, ...]) -> Fraction:
    """Twice the signed area of a ring (positive when counterclockwise)."""
    total = Fraction(0)
    for i, p in enumerate(ring):
        q = ring[(i + 1) % len(ring)]
        total += p.x * q.y - q.x * p.y
    return total


def _ring_edges(ring: tuple[Point, ...]) -> list[Segment]:
    return [Segment(p, ring[(i + 1) % len(ring)]) for i, p in enumerate(ring)]


def _validate_ring(ring: tuple[Point, ...], name: str, orthogonal: bool) -> None:
    n = len(ring)
    if n < 3:
        raise InputError(f"{name}: a ring needs at least 3 vertices, got {n}")
    if len(set(ring)) != n:
        raise InputError(f"{name}: repeated vertex in ring")
    for i in range(n):
        a, b, c = ring[i - 1], ring[i], ring[(i + 1) % n]
        if orientation(a, b, c) == 0:
            raise InputError(
                f"{name}: vertices {i - 1 if i else n - 1},{i},{(i + 1) % n} "
                "are collinear (consecutive edges must turn)"
            )
    edges = _ring_edges(ring)
    if orthogonal:
        for i, e in enumerate(edges):
            horizontal = e.a.y == e.b.y
            vertical = e.a.x == e.b.x
            if not (horizontal or vertical):
                raise InputError(f"{name}: edge {i} is not axis-parallel")
            nxt = edges[(i + 1) % n]
            if horizontal == (nxt.a.y == nxt.b.y):
                raise InputError(
                    f"{name}: edges {i} and {(i + 1) % n} do not alternate "
                    "between horizontal and vertical"
                )
    # Simplicity: non-adjacent edges must be disjoint, adjacent ones may only
    # share their common endpoint (the collinearity check above already rules
    # out back-tracking overlaps).
    for i in range(n):
        for j in range(i + 1, n):
            kind = segments_intersect(edges[i], edges[j]).kind
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent:
                if kind != "endpoint_touch":
                    raise InputError(
                        f"{name}: adjacent edges {i} and {j} meet badly ({kind})"
                    )
            elif kind != "disjoint":
                raise InputError(f"{name}: edges {i} and {j} intersect ({kind})")


def _point_in_ring(p: Point, ring: tuple[Point, ...]) -> str:
    """Locate p relative to a simple ring: 'inside', 'boundary', 'outside'.

    Crossing-number walk with exact arithmetic; the half-open comparison on
    the y-range makes vertices on the scan ray count once.
    """
    for e in _ring_edges(ring):
        if _on_segment(p, e):
            return "boundary"
    inside = False
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            # x-coordinate of the edge at height p.y, compared exactly.
            t = (p.y - a.y) / (b.y - a.y)
            x_cross = a.x + t * (b.x - a.x)
            if p.x < x_cross:
                inside = not inside
    return "inside" if inside else "outside"


@dataclass(frozen=True)
class Polygon:
    """A simple polygon, optionally with holes.

    The outer ring must be counterclockwise and every hole ring clockwise;
    rings must be simple and pairwise disjoint, with every hole strictly
    inside the outer ring and outside every other hole.  kind is either
    "simple" or "orthogonal"; orthogonal polygons must alternate horizontal
    and vertical edges.  Collinear consecutive edges are rejected for both
    kinds.  Violations raise InputError rather than being repaired, so vertex
    indices always mean what the caller wrote.
    """

    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()
    kind: str = "simple"

    def __init__(self, outer, holes=(), kind="simple"):
        object.__setattr__(self, "outer", tuple(Point(x, y) for x, y in outer))
        object.__setattr__(
            self, "holes", tuple(tuple(Point(x, y) for x, y in h) for h in holes)
        )
        object.__setattr__(self, "kind", kind)
        self._validate()

    def _validate(self) -> None:
        if self.kind not in ("simple", "orthogonal"):
            raise InputError(f"unknown polygon kind {self.kind!r}")
        ortho = self.kind == "orthogonal"
        _validate_ring(self.outer, "outer ring", ortho)
        if _ring_signed_area2(self.outer) <= 0:
            raise InputError("outer ring must be counterclockwise")
        for h, ring in enumerate(self.holes):
            _validate_ring(ring, f"hole {h}", ortho)
            if _ring_signed_area2(ring) >= 0:
                raise InputError(f"hole {h} must be clockwise")
        # Rings pairwise disjoint (no edge contact at all between rings).
        rings = [self.outer, *self.holes]
        names = ["outer ring"] + [f"hole {h}" for h in range(len(self.holes))]
        ring_edges = [_ring_edges(r) for r in rings]
        for i in range(len(rings)):
            for j in range(i + 1, len(rings)):
                for ei in ring_edges[i]:
                    for ej in ring_edges[j]:
                        if segments_intersect(ei, ej).kind != "disjoint":
                            raise InputError(f"{names[i]} and {names[j]} touch")
        # Containment: since rings are disjoint, one vertex decides each test.
        for h, ring in enumerate(self.holes):
            if _point_in_ring(ring[0], self.outer) != "inside":
                raise InputError(f"hole {h} is not inside the outer ring")
            for g, other in enumerate(self.holes):
                if g != h and _point_in_ring(ring[0], other) == "inside":
                    raise InputError(f"hole {h} is nested inside hole {g}")

    # -- indexing ----------------------------------------------------------

    @property
    def rings(self) -> tuple[tuple[Point, ...], ...]:
        return (self.outer, *self.holes)

    @property
    def all_vertices(self) -> tuple[Point, ...]:
        out: list[Point] = list(self.outer)
        for h in self.holes:
            out.extend(h)
        return tuple(out)

    @property
    def total_vertices(self) -> int:
        return len(self.outer) + sum(len(h) for h in self.holes)

    def area(self) -> Fraction:
        """Exact area of the polygon interior (holes subtracted)."""
        total = _ring_signed_area2(self.outer)
        for h in self.holes:
            total += _ring_signed_area2(h)  # holes are clockwise: negative
        return total / 2


def point_in_polygon(p: Point, poly: Polygon) -> str:
    """Locate p relative to poly: 'inside', 'boundary', or 'outside'.

    Points on any ring are 'boundary'; points inside a hole are 'outside'.
    """
    where = _point_in_ring(p, poly.outer)
    if where != "inside":
        return where
    for ring in poly.holes:
        where = _point_in_ring(p, ring)
        if where == "boundary":
            return "boundary"
        if where == "inside":
            return "outside"
    return "inside"


# ---------------------------------------------------------------------------
# triangulation by ear clipping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    """Triangles (index triples into the polygon's outer ring, CCW) plus the
    weak dual: one dual edge for every diagonal shared by two triangles.  For
    a simple polygon the dual is a tree."""

    triangles: tuple[tuple[int, int, int], ...]
    dual_edges: tuple[tuple[int, int], ...]

    def dual_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.triangles]
        for u, v in self.dual_edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def _point_in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Is p in the closed CCW triangle abc?  (Corners count as inside.)"""
    return (
        orientation(a, b, p) >= 0
        and orientation(b, c, p) >= 0
        and orientation(c, a, p) >= 0
    )


def triangulate(poly: Polygon) -> Triangulation:
    """Triangulate a hole-free simple polygon by ear clipping.

    Deterministic: the scan walks the remaining ring and clips the first ear
    found, continuing from the clip position.  Returns n-2 CCW triangles over
    the original vertex indices together with the dual tree.
    """
    if poly.holes:
        raise InputError("triangulate expects a polygon without holes")
    ring = list(range(len(poly.outer)))
    pts = poly.outer
    triangles: list[tuple[int, int, int]] = []
    scan = 0
    while len(ring) > 3:
        n = len(ring)
        for offset in range(n):
            k = (scan + offset) % n
            ia, ib, ic = ring[k - 1], ring[k], ring[(k + 1) % n]
            a, b, c = pts[ia], pts[ib], pts[ic]
            if orientation(a, b, c) <= 0:
                continue  # reflex or straight corner: not an ear
            blocked = False
            for other in ring:
                if other in (ia, ib, ic):
                    continue
                if _point_in_closed_triangle(pts[other], a, b, c):
                    blocked = True
                    break
            if not blocked:
                triangles.append((ia, ib, ic))
                ring.pop(k)
                scan = k % len(ring)
                break
        else:  # pragma: no cover - impossible for a simple polygon
            raise AssertionError("no ear found; polygon is not simple")
    triangles.append((ring[0], ring[1], ring[2]))

    assert len(triangles) == len(poly.outer) - 2
    total = sum(
        orientation(pts[a], pts[b], pts[c]) for a, b, c in triangles
    )
    assert total == _ring_signed_area2(poly.outer), "triangle areas must sum"

    # Weak dual: a diagonal is an edge shared by exactly two triangles.
    by_edge: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(triangles):
        for u, v in ((a, b), (b, c), (c, a)):
            by_edge.setdefault((min(u, v), max(u, v)), []).append(t)
    dual = tuple(
        (ts[0], ts[1]) for ts in by_edge.values() if len(ts) == 2
    )
    assert len(dual) == len(triangles) - 1, "dual of a triangulation is a tree"
    return Triangulation(tuple(triangles), dual)


# ---------------------------------------------------------------------------
# lunes
# ---------------------------------------------------------------------------


def lune_contains(p: Point, q: Point, x: Point) -> str:
    """Locate x relative to the closed lune of p and q.

    The lune is the intersection of the closed disks of radius |pq| centered
    at p and at q.  Returns "outside" when x is not in the lune, otherwise
    which open side of the axis line pq it is on ("in_open_side_A" for the
    left of p->q, "in_open_side_B" for the right) or "on_axis".
    """
    if p == q:
        raise InputError("lune axis endpoints must be distinct")
    r2 = dist2(p, q)
    if dist2(x, p) > r2 or dist2(x, q) > r2:
        return "outside"
    side = orientation(p, q, x)
    if side > 0:
        return "in_open_side_A"
    if side < 0:
        return "in_open_side_B"
    return "on_axis"


# ---------------------------------------------------------------------------
# polygon file format (.poly): JSON with integer coordinates
# ---------------------------------------------------------------------------


def polygon_from_json(text: str) -> Polygon:
    """Parse the JSON polygon format.

    The document is an object with "kind" ("simple" or "orthogonal"),
    "outer" (a list of [x, y] integer pairs), and optional "holes" (a list
    of such lists).  Malformed documents raise InputError naming the line.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict):
        raise InputError("line 1: top level must be a JSON object")
    for key in doc:
        if key not in ("kind", "outer", "holes"):
            raise InputError(f"line 1: unknown key {key!r}")
    kind = doc.get("kind", "simple")
    rings_raw = [("outer", doc.get("outer"))]
    for h, hole in enumerate(doc.get("holes", [])):
        rings_raw.append((f"holes[{h}]", hole))
    rings: list[list[tuple[int, int]]] = []
    for name, raw in rings_raw:
        if not isinstance(raw, list) or not raw:
            raise InputError(f"line 1: {name} must be a non-empty list")
        ring = []
        for i, pair in enumerate(raw):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in pair)
            ):
                raise InputError(
                    f"line 1: {name}[{i}] must be a pair of integers, got {pair!r}"
                )
            ring.append((pair[0], pair[1]))
        rings.append(ring)
    return Polygon(rings[0], rings[1:], kind=kind)


def polygon_to_json(poly: Polygon) -> str:
    """Serialize a polygon with integer coordinates to the JSON format."""
    def as_int_pair(p: Point) -> list[int]:
        if p.x.denominator != 1 or p.y.denominator != 1:
            raise InputError(f"vertex {p} is not integral; the file format is")
        return [int(p.x), int(p.y)]

    doc = {
        "kind": poly.kind,
        "outer": [as_int_pair(p) for p in poly.outer],
        "holes": [[as_int_pair(p) for p in h] for h in poly.holes],
    }
    return json.dumps(doc, indent=1)


def load_polygon(path: str) -> Polygon:
    with open(path, encoding="utf-8") as fh:
        return polygon_from_json(fh.read())


# ---------------------------------------------------------------------------
# random simple polygons (star-shaped around an interior anchor)
# ---------------------------------------------------------------------------


def _angle_less(u: tuple[Fraction, Fraction], v: tuple[Fraction, Fraction]) -> bool:
    """Exact counterclockwise-from-positive-x angle comparison of vectors."""
    uh = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    vh = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if uh != vh:
        return uh < vh
    return u[0] * v[1] - u[1] * v[0] > 0


def random_simple_polygon(n: int, seed: int, span: int = 60) -> Polygon:
    """A random simple polygon with n integer vertices.

    Samples distinct grid points, sorts them by exact angle around their
    centroid, and retries until the result validates (distinct angles, no
    collinear consecutive triples).  The polygons are star-shaped around the
    centroid, which is plenty for exercising reflex-vertex handling.
    """
    if n < 3:
        raise InputError("a polygon needs at least 3 vertices")
    rng = random.Random(seed)
    while True:
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(-span, span), rng.randint(-span, span)))
        cloud = [Point(x, y) for x, y in sorted(pts)]
        cx = Fraction(sum(p.x for p in cloud), n)
        cy = Fraction(sum(p.y for p in cloud), n)
        vecs = [(p.x - cx, p.y - cy) for p in cloud]
        if any(v == (0, 0) for v in vecs):
            continue
        order = list(range(n))
        # Insertion sort with the exact comparator (n is small).
        for i in range(1, n):
            j = i
            while j > 0 and _angle_less(vecs[order[j]], vecs[order[j - 1]]):
                order[j], order[j - 1] = order[j - 1], order[j]
                j -= 1
        distinct = all(
            _angle_less(vecs[order[i]], vecs[order[i + 1]]) for i in range(n - 1)
        )
        if not distinct:
            continue
        ring = [cloud[i] for i in order]
        try:
            return Polygon(ring)
        except InputError:
            continue
