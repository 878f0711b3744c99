"""Vertex guards for polygons via decomposition coloring.

For simple polygons: triangulate, 3-color the triangulation graph by walking
its dual tree, and post guards at the smallest color class (at most
floor(n/3) guards).  For orthogonal polygons with a quadrilateralization:
4-color the king graph (quad sides plus both diagonals) the same way, giving
at most floor(n/4) guards.  Every color class hits every decomposition face,
and each face is convex, so a class is a complete guard set; the smallest
one is returned with its coloring as a checkable certificate.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .geometry import (
    Point,
    Polygon,
    Segment,
    _ring_signed_area2,
    orientation,
    point_in_polygon,
    segments_intersect,
    triangulate,
)

# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GuardCertificate:
    """Guards plus the decomposition coloring that proves them sufficient.

    mode is "triangulation" (3 colors) or "quadrilateralization" (4 colors);
    faces are vertex-index tuples; coloring[v] is the color of polygon vertex
    v; guards is the smallest color class, sorted ascending.
    """

    mode: str
    faces: tuple[tuple[int, ...], ...]
    coloring: tuple[int, ...]
    guards: tuple[int, ...]


def verify_guard_certificate(poly: Polygon, cert: GuardCertificate) -> tuple[bool, str]:
    """Independent check of a guard certificate.

    Verifies that the coloring assigns distinct colors to every face's
    vertices (so each face contains every color), that the guard set is the
    color class it claims to be, that every face contains a guard, and that
    the guard count respects floor(n/3) or floor(n/4).
    """
    n = poly.total_vertices
    colors = 3 if cert.mode == "triangulation" else 4
    if cert.mode not in ("triangulation", "quadrilateralization"):
        return False, f"unknown mode {cert.mode!r}"
    if len(cert.coloring) != n:
        return False, f"coloring covers {len(cert.coloring)} of {n} vertices"
    if any(not (0 <= c < colors) for c in cert.coloring):
        return False, "coloring uses an out-of-range color"
    face_size = 3 if colors == 3 else 4
    for f, face in enumerate(cert.faces):
        if len(face) != face_size:
            return False, f"face {f} has {len(face)} vertices, expected {face_size}"
        face_colors = {cert.coloring[v] for v in face}
        if len(face_colors) != face_size:
            return False, f"face {f} repeats a color"
    guard_set = set(cert.guards)
    if not guard_set:
        return False, "empty guard set"
    guard_colors = {cert.coloring[v] for v in guard_set}
    if len(guard_colors) != 1:
        return False, "guards are not a single color class"
    wanted = next(iter(guard_colors))
    full_class = {v for v in range(n) if cert.coloring[v] == wanted}
    if guard_set != full_class:
        return False, "guards are not the whole color class"
    for f, face in enumerate(cert.faces):
        if not guard_set.intersection(face):
            return False, f"face {f} contains no guard"
    if len(guard_set) > n // colors:
        return False, f"{len(guard_set)} guards exceed floor({n}/{colors})"
    return True, "ok"


# ---------------------------------------------------------------------------
# simple polygons: Fisk's 3-coloring of a triangulation
# ---------------------------------------------------------------------------


def _smallest_class(coloring: tuple[int, ...], colors: int) -> tuple[int, ...]:
    classes = [
        tuple(v for v, c in enumerate(coloring) if c == k) for k in range(colors)
    ]
    best = min(range(colors), key=lambda k: (len(classes[k]), k))
    return classes[best]


def fisk_guards(poly: Polygon) -> GuardCertificate:
    """Guards for a simple polygon: at most floor(n/3), via triangulation
    3-coloring.  Deterministic for a given polygon."""
    tri = triangulate(poly)
    n = len(poly.outer)
    coloring = [-1] * n
    adj = tri.dual_adjacency()
    root = 0
    for i, v in enumerate(tri.triangles[root]):
        coloring[v] = i
    seen = [False] * len(tri.triangles)
    seen[root] = True
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for u in sorted(adj[t]):
            if seen[u]:
                continue
            seen[u] = True
            colored = [v for v in tri.triangles[u] if coloring[v] != -1]
            fresh = [v for v in tri.triangles[u] if coloring[v] == -1]
            # The shared diagonal splits the polygon, so exactly the two
            # diagonal endpoints are already colored.
            assert len(fresh) == 1 and len(colored) == 2
            forced = 3 - coloring[colored[0]] - coloring[colored[1]]
            coloring[fresh[0]] = forced
            queue.append(u)
    assert all(c != -1 for c in coloring)
    guards = _smallest_class(tuple(coloring), 3)
    cert = GuardCertificate("triangulation", tri.triangles, tuple(coloring), guards)
    ok, msg = verify_guard_certificate(poly, cert)
    assert ok, msg
    return cert


# ---------------------------------------------------------------------------
# orthogonal polygons: quadrilateralization 4-coloring
# ---------------------------------------------------------------------------


def _quad_ring_area2(pts: list[Point]) -> Fraction:
    return _ring_signed_area2(tuple(pts))


def _validate_quad_shape(pts: list[Point], label: str) -> None:
    crosses = []
    for i in range(4):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % 4]
        crosses.append(orientation(a, b, c))
    if any(x < 0 for x in crosses):
        raise InputError(f"{label}: not convex (a corner turns clockwise)")
    if _quad_ring_area2(pts) <= 0:
        raise InputError(f"{label}: not counterclockwise or degenerate")


def _diagonal_ok(seg: Segment, poly: Polygon) -> bool:
    """A chord between polygon vertices that stays strictly interior: it may
    touch the boundary only at its endpoints, and its midpoint is inside."""
    for ring in poly.rings:
        m = len(ring)
        for i in range(m):
            edge = Segment(ring[i], ring[(i + 1) % m])
            kind = segments_intersect(seg, edge).kind
            if kind in ("crossing", "overlap"):
                return False
            if kind == "endpoint_touch":
                # The touch must be at one of the chord's own endpoints.
                for p in (edge.a, edge.b):
                    on_chord = (
                        orientation(seg.a, seg.b, p) == 0
                        and min(seg.a.x, seg.b.x) <= p.x <= max(seg.a.x, seg.b.x)
                        and min(seg.a.y, seg.b.y) <= p.y <= max(seg.a.y, seg.b.y)
                    )
                    if on_chord and p not in (seg.a, seg.b):
                        return False
    mid = Point(
        (seg.a.x + seg.b.x) / 2, (seg.a.y + seg.b.y) / 2
    )
    return point_in_polygon(mid, poly) == "inside"


def validate_quadrilateralization(
    poly: Polygon, quads: tuple[tuple[int, int, int, int], ...]
) -> list[list[int]]:
    """Check that quads is a quadrilateralization of poly and return the
    dual adjacency (quads sharing a full side).

    Each quad must be a counterclockwise, convex (weakly: straight corners
    allowed) quadrilateral on polygon vertex indices, contained in the
    polygon; the quad areas must sum to the polygon area (which, together
    with containment, certifies a partition); and the dual must be a tree.
    """
    verts = poly.all_vertices
    n = len(verts)
    boundary_edges = set()
    offset = 0
    for ring in poly.rings:
        m = len(ring)
        for i in range(m):
            a, b = offset + i, offset + (i + 1) % m
            boundary_edges.add((min(a, b), max(a, b)))
        offset += m
    if not quads:
        raise InputError("empty quadrilateralization")
    area_sum = Fraction(0)
    side_faces: dict[tuple[int, int], list[int]] = {}
    for qi, quad in enumerate(quads):
        label = f"quad {qi}"
        if len(quad) != 4 or len(set(quad)) != 4:
            raise InputError(f"{label}: needs 4 distinct vertex indices")
        if any(not (0 <= v < n) for v in quad):
            raise InputError(f"{label}: vertex index out of range")
        pts = [verts[v] for v in quad]
        _validate_quad_shape(pts, label)
        area_sum += _quad_ring_area2(pts) / 2
        for i in range(4):
            a, b = quad[i], quad[(i + 1) % 4]
            key = (min(a, b), max(a, b))
            side_faces.setdefault(key, []).append(qi)
            if key not in boundary_edges:
                if not _diagonal_ok(Segment(verts[a], verts[b]), poly):
                    raise InputError(
                        f"{label}: side {a}-{b} is not a polygon edge or an "
                        "interior diagonal"
                    )
        for ring in poly.holes:
            for p in ring:
                inside = all(
                    orientation(pts[i], pts[(i + 1) % 4], p) > 0 for i in range(4)
                )
                if inside:
                    raise InputError(f"{label}: contains a hole vertex")
    if area_sum != poly.area():
        raise InputError(
            f"quad areas sum to {area_sum}, polygon area is {poly.area()}: "
            "not a partition"
        )
    for key, faces in side_faces.items():
        if len(faces) > 2:
            raise InputError(f"side {key} belongs to {len(faces)} quads")
    adj: list[list[int]] = [[] for _ in quads]
    edge_count = 0
    for key, faces in side_faces.items():
        if len(faces) == 2:
            a, b = faces
            adj[a].append(b)
            adj[b].append(a)
            edge_count += 1
    seen = [False] * len(quads)
    queue = deque([0])
    seen[0] = True
    reached = 1
    while queue:
        q = queue.popleft()
        for u in adj[q]:
            if not seen[u]:
                seen[u] = True
                reached += 1
                queue.append(u)
    if reached != len(quads) or edge_count != len(quads) - 1:
        raise InputError(
            f"quad dual graph is not a tree ({reached}/{len(quads)} reached, "
            f"{edge_count} dual edges)"
        )
    return adj


def orthogonal_guards(
    poly: Polygon, quads: tuple[tuple[int, int, int, int], ...]
) -> GuardCertificate:
    """Guards for an orthogonal polygon from a quadrilateralization: at most
    floor(n/4), by 4-coloring the king graph (each quad's sides and both
    diagonals) along the dual tree."""
    if poly.kind != "orthogonal":
        raise InputError("orthogonal_guards expects an orthogonal polygon")
    quads = tuple(tuple(int(v) for v in q) for q in quads)
    adj = validate_quadrilateralization(poly, quads)
    n = poly.total_vertices
    coloring = [-1] * n
    root = 0
    for i, v in enumerate(quads[root]):
        coloring[v] = i
    seen = [False] * len(quads)
    seen[root] = True
    queue = deque([root])
    while queue:
        t = queue.popleft()
        for u in sorted(adj[t]):
            if seen[u]:
                continue
            seen[u] = True
            used = [coloring[v] for v in quads[u] if coloring[v] != -1]
            if len(set(used)) != len(used):
                raise InputError(
                    f"quad {u}: already-colored vertices clash; the king graph "
                    "is not 4-colorable along this dual tree"
                )
            remaining = sorted(set(range(4)) - set(used))
            for v in quads[u]:
                if coloring[v] == -1:
                    coloring[v] = remaining.pop(0)
            queue.append(u)
    assert all(c != -1 for c in coloring)
    guards = _smallest_class(tuple(coloring), 4)
    cert = GuardCertificate("quadrilateralization", quads, tuple(coloring), guards)
    ok, msg = verify_guard_certificate(poly, cert)
    assert ok, msg
    return cert


# ---------------------------------------------------------------------------
# worst-case families
# ---------------------------------------------------------------------------


def comb_polygon(teeth: int) -> Polygon:
    """A comb with `teeth` prongs and exactly 3*teeth vertices.

    Needs exactly `teeth` guards: each prong tip is visible only from its own
    prong's three vertices, and those viewer sets partition the vertex set.
    """
    if teeth < 2:
        raise InputError("a comb needs at least 2 teeth")
    ring: list[tuple[int, int]] = [(0, 0), (3 * (teeth - 1), 0)]
    for i in range(teeth - 1, -1, -1):
        ring.append((3 * i, 3))
        if i > 0:
            ring.append((3 * i - 1, 1))
            ring.append((3 * i - 2, 1))
    return Polygon(ring)


def orthogonal_comb(teeth: int) -> tuple[Polygon, tuple[tuple[int, int, int, int], ...]]:
    """An orthogonal comb with 4*teeth vertices and its quadrilateralization
    into 2*teeth - 1 quads.  Needs exactly `teeth` guards."""
    if teeth < 2:
        raise InputError("a comb needs at least 2 teeth")
    w = 2 * teeth - 1
    ring: list[tuple[int, int]] = [(0, 0), (w, 0), (w, 3)]
    for x in range(w - 1, 0, -1):
        if x % 2 == 0:
            ring.append((x, 3))
            ring.append((x, 1))
        else:
            ring.append((x, 1))
            ring.append((x, 3))
    ring.append((0, 3))
    poly = Polygon(ring, kind="orthogonal")

    index = {p: i for i, p in enumerate(poly.outer)}

    def idx(x: int, y: int) -> int:
        return index[Point(x, y)]

    quads: list[tuple[int, int, int, int]] = []
    # Leftmost tooth swallows the left end of the base strip.
    quads.append((idx(0, 0), idx(1, 1), idx(1, 3), idx(0, 3)))
    # Fans cover the base strip from the bottom-left corner.
    for j in range(1, teeth - 1):
        quads.append((idx(0, 0), idx(2 * j + 1, 1), idx(2 * j, 1), idx(2 * j - 1, 1)))
    quads.append((idx(0, 0), idx(w, 0), idx(w - 1, 1), idx(w - 2, 1)))
    # Interior teeth are rectangles; the rightmost tooth takes the corner.
    for i in range(1, teeth - 1):
        quads.append((idx(2 * i, 1), idx(2 * i + 1, 1), idx(2 * i + 1, 3), idx(2 * i, 3)))
    quads.append((idx(w - 1, 1), idx(w, 0), idx(w, 3), idx(w - 1, 3)))
    return poly, tuple(quads)


def staircase_with_quads() -> tuple[Polygon, tuple[tuple[int, int, int, int], ...]]:
    """An 8-vertex orthogonal staircase with a 3-quad quadrilateralization
    (8 vertices force exactly 8/2 - 1 = 3 quads)."""
    poly = Polygon(
        [(0, 0), (3, 0), (3, 3), (2, 3), (2, 2), (1, 2), (1, 1), (0, 1)],
        kind="orthogonal",
    )
    quads = ((0, 1, 6, 7), (6, 1, 4, 5), (1, 2, 3, 4))
    return poly, quads


# ---------------------------------------------------------------------------
# quadrilateralization file format (.quads)
# ---------------------------------------------------------------------------


def quads_from_json(text: str) -> tuple[tuple[int, int, int, int], ...]:
    """Parse {"quads": [[a,b,c,d], ...]} with vertex indices."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}: invalid JSON ({exc.msg})") from exc
    if not isinstance(doc, dict) or "quads" not in doc:
        raise InputError('line 1: expected an object with a "quads" key')
    quads = doc["quads"]
    if not isinstance(quads, list):
        raise InputError('line 1: "quads" must be a list')
    out = []
    for i, q in enumerate(quads):
        if (
            not isinstance(q, list)
            or len(q) != 4
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in q)
        ):
            raise InputError(f"line 1: quads[{i}] must be 4 integer vertex indices")
        out.append(tuple(q))
    return tuple(out)


def quads_to_json(quads) -> str:
    return json.dumps({"quads": [list(q) for q in quads]}, indent=1)


def load_quads(path: str):
    with open(path, encoding="utf-8") as fh:
        return quads_from_json(fh.read())
