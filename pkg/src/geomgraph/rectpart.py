"""Minimum rectangle partition of orthogonal polygons.

An orthogonal polygon with n vertices and h holes has n/2 + 2h - 2 concave
corners.  Axis-parallel chords joining two concave corners ("good
diagonals") each remove two of them at once; a horizontal and a vertical
chord conflict when they intersect, same-orientation chords never do, so
the conflict graph is bipartite and a maximum independent set of chords
falls out of Koenig's theorem.  Cutting along those chords and then
extending one cut from every remaining concave corner yields exactly
n/2 + h - g - 1 rectangles, where g is the independent-chord count, and no
partition does better.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .geometry import (
    Point,
    Polygon,
    Segment,
    orientation,
    point_in_polygon,
    segments_intersect,
)
from .graphs import BipartiteGraph, konig_independent_set, max_bipartite_matching

# ---------------------------------------------------------------------------
# concave corners and good diagonals
# ---------------------------------------------------------------------------


def concave_vertices(poly: Polygon) -> tuple[int, ...]:
    """Global indices of concave (reflex) corners.

    With the interior kept on the left (outer counterclockwise, holes
    clockwise), a corner is concave exactly when the boundary turns right.
    """
    if poly.kind != "orthogonal":
        raise InputError("rectangle partition expects an orthogonal polygon")
    out: list[int] = []
    offset = 0
    for ring in poly.rings:
        m = len(ring)
        for i in range(m):
            if orientation(ring[i - 1], ring[i], ring[(i + 1) % m]) < 0:
                out.append(offset + i)
        offset += m
    assert len(out) == poly.total_vertices // 2 + 2 * len(poly.holes) - 2
    return tuple(out)


def _canonical(seg: Segment) -> Segment:
    a, b = sorted((seg.a, seg.b))
    return Segment(a, b)


def _chord_is_interior(seg: Segment, poly: Polygon) -> bool:
    """The open chord must avoid the boundary entirely: no crossings, no
    overlaps, no third vertex on it, and its midpoint strictly inside."""
    for ring in poly.rings:
        m = len(ring)
        for i in range(m):
            edge = Segment(ring[i], ring[(i + 1) % m])
            hit = segments_intersect(seg, edge)
            if hit.kind in ("crossing", "overlap"):
                return False
            if hit.kind == "endpoint_touch" and hit.point not in (seg.a, seg.b):
                return False
    mid = Point((seg.a.x + seg.b.x) / 2, (seg.a.y + seg.b.y) / 2)
    return point_in_polygon(mid, poly) == "inside"


def good_diagonals(poly: Polygon) -> tuple[Segment, ...]:
    """Axis-parallel interior chords joining two concave corners, in
    canonical (sorted-endpoint) order."""
    verts = poly.all_vertices
    concave = concave_vertices(poly)
    found: list[Segment] = []
    for ai in range(len(concave)):
        for bi in range(ai + 1, len(concave)):
            a, b = verts[concave[ai]], verts[concave[bi]]
            if a.x != b.x and a.y != b.y:
                continue
            seg = _canonical(Segment(a, b))
            if _chord_is_interior(seg, poly):
                found.append(seg)
    found.sort(key=lambda s: (s.a, s.b))
    return tuple(found)


def independent_diagonals(
    poly: Polygon,
) -> tuple[tuple[Segment, ...], tuple[Segment, ...]]:
    """(chosen, all): a maximum set of pairwise non-intersecting good
    diagonals, via bipartite matching on the horizontal/vertical conflict
    graph and Koenig's independent set."""
    diags = good_diagonals(poly)
    horiz = [d for d in diags if d.a.y == d.b.y]
    vert = [d for d in diags if d.a.x == d.b.x]
    edges = []
    for i, hseg in enumerate(horiz):
        for j, vseg in enumerate(vert):
            if segments_intersect(hseg, vseg).kind != "disjoint":
                edges.append((i, j))
    graph = BipartiteGraph(len(horiz), len(vert), edges)
    matching = max_bipartite_matching(graph)
    chosen_tags = konig_independent_set(graph, matching)
    chosen = [horiz[i] for side, i in chosen_tags if side == "L"]
    chosen += [vert[j] for side, j in chosen_tags if side == "R"]
    chosen.sort(key=lambda s: (s.a, s.b))
    return tuple(chosen), diags


def min_rectangle_count(poly: Polygon) -> int:
    """The minimum number of rectangles: n/2 + h - g - 1."""
    chosen, _ = independent_diagonals(poly)
    return poly.total_vertices // 2 + len(poly.holes) - len(chosen) - 1


# ---------------------------------------------------------------------------
# building the partition
# ---------------------------------------------------------------------------


def _first_hit(origin: Point, direction: tuple[int, int], segments) -> Point:
    """First point, strictly ahead of origin along an axis direction, where
    the ray meets any existing segment."""
    dx, dy = direction
    best: tuple[Fraction, Point] | None = None

    def consider(t: Fraction, p: Point) -> None:
        nonlocal best
        if t > 0 and (best is None or t < best[0]):
            best = (t, p)

    for seg in segments:
        a, b = seg.a, seg.b
        if dy == 0:  # horizontal ray
            if a.x == b.x:  # vertical segment
                if min(a.y, b.y) <= origin.y <= max(a.y, b.y):
                    consider((a.x - origin.x) * dx, Point(a.x, origin.y))
            elif a.y == origin.y:  # collinear horizontal segment
                for p in (a, b):
                    consider((p.x - origin.x) * dx, p)
        else:  # vertical ray
            if a.y == b.y:
                if min(a.x, b.x) <= origin.x <= max(a.x, b.x):
                    consider((a.y - origin.y) * dy, Point(origin.x, a.y))
            elif a.x == origin.x:
                for p in (a, b):
                    consider((p.y - origin.y) * dy, p)
    assert best is not None, "cut ray escaped the polygon"
    return best[1]


def _emit_cuts(
    poly: Polygon, chosen: tuple[Segment, ...]
) -> tuple[Segment, ...]:
    """One axis-parallel cut from every concave corner not already resolved
    by a chosen diagonal, extending the shorter incident edge (horizontal on
    ties) until it reaches an existing segment."""
    verts = poly.all_vertices
    resolved = {s.a for s in chosen} | {s.b for s in chosen}
    segments: list[Segment] = []
    for ring in poly.rings:
        m = len(ring)
        segments.extend(Segment(ring[i], ring[(i + 1) % m]) for i in range(m))
    segments.extend(chosen)

    ring_of: list[tuple[tuple[Point, ...], int]] = []
    for ring in poly.rings:
        for i in range(len(ring)):
            ring_of.append((ring, i))

    cuts: list[Segment] = []
    for gidx in concave_vertices(poly):
        ring, i = ring_of[gidx]
        v = ring[i]
        if v in resolved:
            continue  # an earlier cut already ends at this corner
        u, w = ring[i - 1], ring[(i + 1) % len(ring)]
        # Exactly one incident edge is horizontal.
        if u.y == v.y:
            h_len, h_dir = abs(v.x - u.x), (1 if v.x > u.x else -1, 0)
        else:
            h_len, h_dir = abs(v.x - w.x), (1 if v.x > w.x else -1, 0)
        if u.x == v.x:
            v_len, v_dir = abs(v.y - u.y), (0, 1 if v.y > u.y else -1)
        else:
            v_len, v_dir = abs(v.y - w.y), (0, 1 if v.y > w.y else -1)
        direction = h_dir if h_len <= v_len else v_dir
        hit = _first_hit(v, direction, segments)
        cut = Segment(v, hit)
        cuts.append(cut)
        segments.append(cut)
        resolved.add(v)
        # A cut ending on another concave corner resolves that corner too
        # (an axis-parallel segment into a 270-degree corner splits it into
        # a straight angle and a right angle).
        resolved.add(hit)
    return tuple(cuts)


# four axis directions in counterclockwise order: E, N, W, S
_DIRS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


def _trace_faces(segments: list[Segment]) -> list[list[Point]]:
    """Split segments at mutual intersections and walk the bounded faces of
    the resulting subdivision counterclockwise."""
    split_points: list[set[Point]] = [{s.a, s.b} for s in segments]
    for i, s in enumerate(segments):
        for j in range(i + 1, len(segments)):
            t = segments[j]
            s_h = s.a.y == s.b.y
            t_h = t.a.y == t.b.y
            if s_h != t_h:
                h, v = (s, t) if s_h else (t, s)
                if (
                    min(h.a.x, h.b.x) <= v.a.x <= max(h.a.x, h.b.x)
                    and min(v.a.y, v.b.y) <= h.a.y <= max(v.a.y, v.b.y)
                ):
                    p = Point(v.a.x, h.a.y)
                    split_points[i].add(p)
                    split_points[j].add(p)
            else:
                # Parallel: record any endpoint of one lying on the other.
                for p in (t.a, t.b):
                    if _point_on_axis_segment(p, s):
                        split_points[i].add(p)
                for p in (s.a, s.b):
                    if _point_on_axis_segment(p, t):
                        split_points[j].add(p)

    out_edges: dict[Point, list[int]] = {}
    micro: list[tuple[Point, Point]] = []
    for i, s in enumerate(segments):
        horizontal = s.a.y == s.b.y
        pts = sorted(split_points[i], key=lambda p: p.x if horizontal else p.y)
        for a, b in zip(pts, pts[1:]):
            micro.append((a, b))
            micro.append((b, a))

    def dir_code(a: Point, b: Point) -> int:
        dx = 0 if b.x == a.x else (1 if b.x > a.x else -1)
        dy = 0 if b.y == a.y else (1 if b.y > a.y else -1)
        return _DIRS[(dx, dy)]

    for idx, (a, b) in enumerate(micro):
        out_edges.setdefault(a, []).append(idx)

    nxt: list[int] = [-1] * len(micro)
    for idx, (a, b) in enumerate(micro):
        rev_code = dir_code(b, a)
        options = {dir_code(b, micro[e][1]): e for e in out_edges[b]}
        for step in range(1, 5):
            cand = (rev_code - step) % 4
            if cand in options:
                nxt[idx] = options[cand]
                break
        assert nxt[idx] != -1

    faces: list[list[Point]] = []
    visited = [False] * len(micro)
    for start in range(len(micro)):
        if visited[start]:
            continue
        cycle: list[Point] = []
        e = start
        while not visited[e]:
            visited[e] = True
            cycle.append(micro[e][0])
            e = nxt[e]
        assert e == start, "face walk did not close"
        area2 = Fraction(0)
        for k in range(len(cycle)):
            a, b = cycle[k], cycle[(k + 1) % len(cycle)]
            area2 += a.x * b.y - b.x * a.y
        if area2 > 0:
            faces.append(cycle)
    return faces


def _point_on_axis_segment(p: Point, s: Segment) -> bool:
    if s.a.y == s.b.y:
        return p.y == s.a.y and min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
    return p.x == s.a.x and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y)


def _collapse_collinear(cycle: list[Point]) -> list[Point]:
    kept = []
    m = len(cycle)
    for i in range(m):
        if orientation(cycle[i - 1], cycle[i], cycle[(i + 1) % m]) != 0:
            kept.append(cycle[i])
    return kept


@dataclass(frozen=True)
class RectPartition:
    """A minimum partition: rectangles as (lower-left, upper-right) corner
    pairs, plus the chords and cuts that produced them."""

    rectangles: tuple[tuple[Point, Point], ...]
    diagonals: tuple[Segment, ...]
    cuts: tuple[Segment, ...]

    @property
    def count(self) -> int:
        return len(self.rectangles)


def build_partition(poly: Polygon) -> RectPartition:
    """Cut the polygon into the minimum number of rectangles."""
    chosen, _ = independent_diagonals(poly)
    cuts = _emit_cuts(poly, chosen)

    segments: list[Segment] = []
    for ring in poly.rings:
        m = len(ring)
        segments.extend(Segment(ring[i], ring[(i + 1) % m]) for i in range(m))
    segments.extend(chosen)
    segments.extend(cuts)

    rects: list[tuple[Point, Point]] = []
    total_area = Fraction(0)
    for cycle in _trace_faces(segments):
        corners = _collapse_collinear(cycle)
        assert len(corners) == 4, f"face with {len(corners)} corners"
        xs = sorted({p.x for p in corners})
        ys = sorted({p.y for p in corners})
        assert len(xs) == 2 and len(ys) == 2, "face is not axis-parallel"
        center = Point((xs[0] + xs[1]) / 2, (ys[0] + ys[1]) / 2)
        if point_in_polygon(center, poly) != "inside":
            continue  # a hole interior traced as a face
        rects.append((Point(xs[0], ys[0]), Point(xs[1], ys[1])))
        total_area += (xs[1] - xs[0]) * (ys[1] - ys[0])

    assert total_area == poly.area(), "rectangles do not tile the polygon"
    expected = poly.total_vertices // 2 + len(poly.holes) - len(chosen) - 1
    assert len(rects) == expected, (len(rects), expected)
    rects.sort(key=lambda r: (r[0], r[1]))
    return RectPartition(tuple(rects), chosen, cuts)


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def _trace_cell_boundary(cells: set[tuple[int, int]]) -> list[list[Point]]:
    """Boundary loops of a pinch-free polyomino, as corner-only point lists."""
    edges: dict[Point, list[Point]] = {}

    def add(a: Point, b: Point) -> None:
        edges.setdefault(a, []).append(b)
        edges.setdefault(b, []).append(a)

    for x, y in cells:
        if (x, y - 1) not in cells:
            add(Point(x, y), Point(x + 1, y))
        if (x, y + 1) not in cells:
            add(Point(x, y + 1), Point(x + 1, y + 1))
        if (x - 1, y) not in cells:
            add(Point(x, y), Point(x, y + 1))
        if (x + 1, y) not in cells:
            add(Point(x + 1, y), Point(x + 1, y + 1))

    assert all(len(nbrs) == 2 for nbrs in edges.values()), "pinched boundary"
    loops: list[list[Point]] = []
    unused = {p: list(nbrs) for p, nbrs in edges.items()}
    while unused:
        start = min(unused)
        loop = [start]
        prev, cur = None, start
        while True:
            a, b = edges[cur]
            nxt = b if a == prev else a
            if nxt == start:
                break
            loop.append(nxt)
            prev, cur = cur, nxt
        for p in loop:
            unused.pop(p, None)
        corners = _collapse_collinear(loop)
        loops.append(corners)
    return loops


def random_orthogonal_polygon(
    seed: int, cells: int = 12, with_hole: bool = False, max_concave: int = 14
) -> Polygon:
    """A random orthogonal polygon grown from a seeded polyomino.

    Diagonal cell contacts are patched and enclosed pockets filled so the
    boundary is simple; with_hole carves one unit hole strictly inside.
    Retries until the concave-corner count is at most max_concave (keeping
    brute-force cross-checks tractable)."""
    if with_hole and cells < 9:
        raise InputError(
            f"a hole needs a fully surrounded cell, impossible with "
            f"{cells} cells (need at least 9)"
        )
    rng = random.Random(seed)
    while True:
        filled = {(0, 0)}
        while len(filled) < cells:
            x, y = rng.choice(sorted(filled))
            dx, dy = rng.choice(((1, 0), (-1, 0), (0, 1), (0, -1)))
            filled.add((x + dx, y + dy))

        def patch_pinches() -> None:
            changed = True
            while changed:
                changed = False
                for x, y in sorted(filled):
                    for dx, dy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                        if (x + dx, y + dy) in filled and (
                            (x + dx, y) not in filled and (x, y + dy) not in filled
                        ):
                            filled.add(rng.choice(((x + dx, y), (x, y + dy))))
                            changed = True

        patch_pinches()
        # Fill enclosed pockets: anything not reachable from outside the box.
        xs = [c[0] for c in filled]
        ys = [c[1] for c in filled]
        lo_x, hi_x, lo_y, hi_y = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
        outside = {(lo_x, lo_y)}
        stack = [(lo_x, lo_y)]
        while stack:
            x, y = stack.pop()
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nx, ny = x + dx, y + dy
                if (
                    lo_x <= nx <= hi_x
                    and lo_y <= ny <= hi_y
                    and (nx, ny) not in filled
                    and (nx, ny) not in outside
                ):
                    outside.add((nx, ny))
                    stack.append((nx, ny))
        for x in range(lo_x, hi_x + 1):
            for y in range(lo_y, hi_y + 1):
                if (x, y) not in filled and (x, y) not in outside:
                    filled.add((x, y))
        patch_pinches()

        hole_cells: set[tuple[int, int]] = set()
        if with_hole:
            candidates = sorted(
                (x, y)
                for x, y in filled
                if all(
                    (x + dx, y + dy) in filled
                    for dx in (-1, 0, 1)
                    for dy in (-1, 0, 1)
                )
            )
            if not candidates:
                continue
            hole_cells = {rng.choice(candidates)}

        loops = _trace_cell_boundary(filled - hole_cells)
        outer_loop = max(loops, key=lambda lp: abs(_loop_area2(lp)))
        if _loop_area2(outer_loop) < 0:
            outer_loop = outer_loop[::-1]
        holes = []
        for lp in loops:
            if lp is outer_loop:
                continue
            if _loop_area2(lp) > 0:
                lp = lp[::-1]
            holes.append([(p.x, p.y) for p in lp])
        try:
            poly = Polygon(
                [(p.x, p.y) for p in outer_loop], holes=holes, kind="orthogonal"
            )
        except InputError:
            continue
        if len(concave_vertices(poly)) <= max_concave:
            return poly


def _loop_area2(loop: list[Point]) -> Fraction:
    total = Fraction(0)
    for i in range(len(loop)):
        a, b = loop[i], loop[(i + 1) % len(loop)]
        total += a.x * b.y - b.x * a.y
    return total


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def plus_polygon() -> Polygon:
    """Plus sign: four concave corners whose chords pair up into two
    independent families, so three rectangles suffice."""
    return Polygon(
        [
            (1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2),
            (2, 3), (1, 3), (1, 2), (0, 2), (0, 1), (1, 1),
        ],
        kind="orthogonal",
    )


def lshape_polygon() -> Polygon:
    """L shape: a single concave corner, no chords, two rectangles."""
    return Polygon(
        [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], kind="orthogonal"
    )


def annulus_polygon() -> Polygon:
    """Square ring: four concave corners on the hole, no axis-aligned chords
    between them, four rectangles."""
    return Polygon(
        [(0, 0), (3, 0), (3, 3), (0, 3)],
        holes=[[(1, 1), (1, 2), (2, 2), (2, 1)]],
        kind="orthogonal",
    )
