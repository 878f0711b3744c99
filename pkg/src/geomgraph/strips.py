"""Single cyclic triangle strips for closed triangulated surfaces.

The dual graph of a closed triangulation is cubic and bridgeless, so it has
a perfect matching; the complementary dual edges form a disjoint union of
cycles covering every triangle.  Local moves at mesh vertices merge cycles,
and where no move applies, bisecting two adjacent triangles from different
cycles creates a vertex at which a merging move is guaranteed.  Iterating
yields one cyclic strip over a mesh that covers the same surface, growing
the triangle count by at most a factor of 3/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .graphs import Graph, Matching, perfect_matching_general

__all__ = [
    "TriMesh",
    "CycleCover",
    "StripResult",
    "dual_graph",
    "cycle_cover_from_matching",
    "vertex_ring",
    "merge_move",
    "bisect_pair",
    "single_strip",
    "tetrahedron",
    "octahedron",
    "icosahedron",
    "sphere_like_mesh",
    "mesh_from_off",
    "mesh_to_off",
    "load_mesh",
]


# ---------------------------------------------------------------------------
# meshes
# ---------------------------------------------------------------------------


def _coord(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"float coordinate {value!r}; use Fraction or int")
    return Fraction(value)


@dataclass(frozen=True)
class TriMesh:
    """Closed, consistently oriented, connected triangulated sphere.

    Every directed edge belongs to exactly one triangle and its reverse to
    exactly one other; two triangles share at most one edge (so the dual is
    a simple graph); the Euler characteristic is 2.
    """

    vertices: tuple[tuple[Fraction, Fraction, Fraction], ...]
    triangles: tuple[tuple[int, int, int], ...]

    def __init__(self, vertices, triangles):
        verts = tuple(
            (_coord(x), _coord(y), _coord(z)) for x, y, z in vertices
        )
        tris = tuple(
            (int(a), int(b), int(c)) for a, b, c in triangles
        )
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "triangles", tris)
        self._validate()

    def _validate(self) -> None:
        n = len(self.vertices)
        if len(self.triangles) < 4:
            raise InputError("a closed surface needs at least 4 triangles")
        owner: dict[tuple[int, int], int] = {}
        for t, tri in enumerate(self.triangles):
            if len(set(tri)) != 3:
                raise InputError(f"triangle {t} repeats a vertex: {tri}")
            for v in tri:
                if not 0 <= v < n:
                    raise InputError(f"triangle {t} references vertex {v}")
            for e in _tri_edges(tri):
                if e in owner:
                    raise InputError(
                        f"directed edge {e} in triangles {owner[e]} and {t}"
                    )
                owner[e] = t
        for (u, v), t in owner.items():
            if (v, u) not in owner:
                raise InputError(
                    f"boundary edge ({u},{v}): mesh is not closed"
                )
        used = {v for tri in self.triangles for v in tri}
        if used != set(range(n)):
            raise InputError("unused vertex in mesh")

        # Dual simplicity: adjacent triangles share exactly one edge.
        pair_count: dict[tuple[int, int], int] = {}
        for (u, v), t in owner.items():
            s = owner[(v, u)]
            if s == t:
                raise InputError(f"edge ({u},{v}) bounds triangle {t} twice")
            key = (min(s, t), max(s, t))
            pair_count[key] = pair_count.get(key, 0) + 1
        if any(c != 2 for c in pair_count.values()):
            bad = next(k for k, c in pair_count.items() if c != 2)
            raise InputError(f"triangles {bad} share more than one edge")

        edge_count = len(owner) // 2
        if n - edge_count + len(self.triangles) != 2:
            raise InputError("mesh is not a topological sphere")

        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for u, v in _tri_edges(self.triangles[t]):
                s = owner[(v, u)]
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        if len(seen) != len(self.triangles):
            raise InputError("mesh is not connected")


def _tri_edges(tri: tuple[int, int, int]):
    a, b, c = tri
    return (a, b), (b, c), (c, a)


@lru_cache(maxsize=16)
def _edge_owner(mesh: TriMesh) -> dict[tuple[int, int], int]:
    """Directed edge -> index of the triangle containing it."""
    owner: dict[tuple[int, int], int] = {}
    for t, tri in enumerate(mesh.triangles):
        for e in _tri_edges(tri):
            owner[e] = t
    return owner


@lru_cache(maxsize=16)
def dual_graph(mesh: TriMesh) -> Graph:
    """One vertex per triangle, one edge per adjacent pair; always cubic,
    and bridgelessness (no cut edge) is asserted.  Meshes with boundary
    never get this far: they are rejected at construction."""
    owner = _edge_owner(mesh)
    edges = {
        (min(t, owner[(v, u)]), max(t, owner[(v, u)]))
        for (u, v), t in owner.items()
    }
    g = Graph(len(mesh.triangles), edges)
    adj = g.adjacency()
    assert all(len(nbrs) == 3 for nbrs in adj)
    assert not _has_bridge(adj)
    return g


def _has_bridge(adj: list[list[int]]) -> bool:
    """Tarjan's lowlink bridge test, iterative."""
    n = len(adj)
    order = [-1] * n
    low = [0] * n
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        stack = [(root, -1, iter(adj[root]))]
        order[root] = low[root] = counter
        counter += 1
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], order[w])
                elif parent != -1:
                    # A parallel dual edge would hide here, but TriMesh
                    # construction already rejects those.
                    parent = -2
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > order[u]:
                        return True
    return False


# ---------------------------------------------------------------------------
# cycle covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleCover:
    """A perfect matching on the dual graph together with the cycles formed
    by the complementary dual edges (each triangle keeps exactly two)."""

    matching: Matching
    cycles: tuple[tuple[int, ...], ...]

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)


def cycle_cover_from_matching(mesh: TriMesh, pm: Matching) -> CycleCover:
    """Walk the complement of a perfect dual matching into cycles.

    Cycles are canonical: each starts at its least triangle, traverses
    toward the smaller neighbor, and the list is sorted by first element.
    """
    g = dual_graph(mesh)
    t_count = len(mesh.triangles)
    partner: dict[int, int] = {}
    for a, b in pm.pairs:
        if (a, b) not in g.edges:
            raise InputError(f"matched pair ({a},{b}) is not a dual edge")
        partner[a] = b
        partner[b] = a
    if len(partner) != t_count:
        raise InputError("matching is not perfect on the dual graph")

    adj = g.adjacency()
    complement = [
        [w for w in adj[t] if w != partner[t]] for t in range(t_count)
    ]
    assert all(len(nbrs) == 2 for nbrs in complement)

    cycles = []
    seen = [False] * t_count
    for start in range(t_count):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        prev, cur = start, min(complement[start])
        while cur != start:
            cycle.append(cur)
            seen[cur] = True
            a, b = complement[cur]
            prev, cur = cur, b if a == prev else a
        assert len(cycle) >= 3
        cycles.append(tuple(cycle))
    return CycleCover(pm, tuple(cycles))


def vertex_ring(mesh: TriMesh, v: int) -> tuple[int, ...]:
    """Triangles incident to v in cyclic rotation order, least first."""
    if not 0 <= v < len(mesh.vertices):
        raise InputError(f"vertex {v} out of range")
    owner = _edge_owner(mesh)
    incident = [t for t, tri in enumerate(mesh.triangles) if v in tri]
    start = min(incident)
    ring = [start]
    cur = start
    while True:
        tri = mesh.triangles[cur]
        after = tri[(tri.index(v) + 1) % 3]
        cur = owner[(after, v)]
        if cur == start:
            break
        ring.append(cur)
    assert len(ring) == len(incident), f"pinched vertex {v}"
    return tuple(ring)


def merge_move(mesh: TriMesh, cover: CycleCover, v: int) -> CycleCover | None:
    """Swap matched and unmatched dual edges around mesh vertex v.

    The swap is only defined when every triangle incident to v is matched
    along the ring of dual edges around v (then the matched ring edges
    alternate and swapping them for the complementary alternating class
    yields another perfect matching).  Returns the new cover when it has
    strictly fewer cycles, otherwise None.
    """
    ring = vertex_ring(mesh, v)
    k = len(ring)
    partner = {}
    for a, b in cover.matching.pairs:
        partner[a] = b
        partner[b] = a
    position = {t: i for i, t in enumerate(ring)}
    for t in ring:
        mate = partner[t]
        if mate not in position:
            return None
        if (position[mate] - position[t]) % k not in (1, k - 1):
            return None

    ring_edges = [
        (min(ring[i], ring[(i + 1) % k]), max(ring[i], ring[(i + 1) % k]))
        for i in range(k)
    ]
    matched_slots = [
        i for i, e in enumerate(ring_edges) if e in cover.matching.pairs
    ]
    assert len(matched_slots) * 2 == k
    swapped = {ring_edges[(i + 1) % k] for i in matched_slots}
    pairs = (cover.matching.pairs - set(ring_edges)) | swapped
    new_cover = cycle_cover_from_matching(mesh, Matching(pairs))
    if new_cover.cycle_count < cover.cycle_count:
        return new_cover
    return None


# ---------------------------------------------------------------------------
# bisection
# ---------------------------------------------------------------------------


def bisect_pair(mesh: TriMesh, t1: int, t2: int) -> TriMesh:
    """Split two adjacent triangles across their shared edge's midpoint.

    With (a, b) the shared edge directed as it appears in t1, c the apex of
    t1, d the apex of t2, and w the new midpoint vertex, index t1 becomes
    (a, w, c), index t2 becomes (b, w, d), and (w, b, c), (w, a, d) are
    appended in that order.  The new vertex has exactly four incident
    triangles, and the Euler characteristic is unchanged.
    """
    t_count = len(mesh.triangles)
    if t1 == t2:
        raise InputError("cannot bisect a triangle with itself")
    for t in (t1, t2):
        if not 0 <= t < t_count:
            raise InputError(f"triangle {t} out of range")
    owner = _edge_owner(mesh)
    shared = [
        (u, v) for u, v in _tri_edges(mesh.triangles[t1])
        if owner[(v, u)] == t2
    ]
    if not shared:
        raise InputError(f"triangles {t1} and {t2} are not adjacent")
    assert len(shared) == 1
    (a, b) = shared[0]
    tri1, tri2 = mesh.triangles[t1], mesh.triangles[t2]
    c = next(x for x in tri1 if x not in (a, b))
    d = next(x for x in tri2 if x not in (a, b))

    pa, pb = mesh.vertices[a], mesh.vertices[b]
    midpoint = tuple((pa[i] + pb[i]) / 2 for i in range(3))
    w = len(mesh.vertices)

    triangles = list(mesh.triangles)
    triangles[t1] = (a, w, c)
    triangles[t2] = (b, w, d)
    triangles.append((w, b, c))
    triangles.append((w, a, d))
    return TriMesh(mesh.vertices + (midpoint,), tuple(triangles))


# ---------------------------------------------------------------------------
# the driver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StripResult:
    """A single cyclic strip over `mesh` (which may extend the input by
    bisections): consecutive strip triangles share an edge, wrapping
    around, and every triangle appears exactly once."""

    mesh: TriMesh
    strip: tuple[int, ...]
    source_triangles: int
    added_triangles: int
    merge_count: int
    bisection_count: int

    @property
    def growth(self) -> Fraction:
        return Fraction(len(self.strip), self.source_triangles)


def _exhaust_merges(mesh: TriMesh, cover: CycleCover) -> tuple[CycleCover, int]:
    moves = 0
    progress = True
    while progress and cover.cycle_count > 1:
        progress = False
        for v in range(len(mesh.vertices)):
            moved = merge_move(mesh, cover, v)
            if moved is not None:
                cover = moved
                moves += 1
                progress = True
                if cover.cycle_count == 1:
                    return cover, moves
    return cover, moves


def single_strip(mesh: TriMesh) -> StripResult:
    """Drive matching, merge moves, and bisections to one cyclic strip."""
    source = len(mesh.triangles)
    pm = perfect_matching_general(dual_graph(mesh))
    assert pm is not None, "cubic bridgeless dual must have a perfect matching"
    cover = cycle_cover_from_matching(mesh, pm)

    merges = 0
    bisections = 0
    while True:
        cover, moves = _exhaust_merges(mesh, cover)
        merges += moves
        if cover.cycle_count == 1:
            break

        cycle_of = {}
        for i, cycle in enumerate(cover.cycles):
            for t in cycle:
                cycle_of[t] = i
        crossing = min(
            e for e in dual_graph(mesh).edges
            if cycle_of[e[0]] != cycle_of[e[1]]
        )
        # Adjacent triangles in different cycles are always matched: an
        # unmatched dual edge lies on a cycle of the cover.
        assert crossing in cover.matching.pairs
        t1, t2 = crossing
        t_count = len(mesh.triangles)
        mesh = bisect_pair(mesh, t1, t2)
        bisections += 1
        pairs = (
            (cover.matching.pairs - {crossing})
            | {(t1, t_count + 1), (t2, t_count)}
        )
        cover = cycle_cover_from_matching(mesh, Matching(pairs))
        before = cover.cycle_count
        moved = merge_move(mesh, cover, len(mesh.vertices) - 1)
        assert moved is not None, "bisection must enable a merge"
        assert moved.cycle_count == before - 1
        cover = moved
        merges += 1

    strip = cover.cycles[0]
    assert sorted(strip) == list(range(len(mesh.triangles)))
    owner = _edge_owner(mesh)
    neighbors = [
        {owner[(v, u)] for u, v in _tri_edges(tri)}
        for tri in mesh.triangles
    ]
    for i, t in enumerate(strip):
        assert strip[(i + 1) % len(strip)] in neighbors[t]

    added = len(mesh.triangles) - source
    assert Fraction(len(mesh.triangles), source) <= Fraction(3, 2)
    return StripResult(mesh, strip, source, added, merges, bisections)


# ---------------------------------------------------------------------------
# fixtures and generators
# ---------------------------------------------------------------------------


def tetrahedron() -> TriMesh:
    return TriMesh(
        ((0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)),
        ((0, 2, 1), (0, 1, 3), (0, 3, 2), (1, 2, 3)),
    )


def octahedron() -> TriMesh:
    return TriMesh(
        ((2, 0, 0), (-2, 0, 0), (0, 2, 0), (0, -2, 0), (0, 0, 2), (0, 0, -2)),
        (
            (0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
            (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5),
        ),
    )


def icosahedron() -> TriMesh:
    """Combinatorial icosahedron: two pentagonal caps and a ten-triangle
    band.  Coordinates are rational stand-ins; only incidence matters."""
    vertices = (
        (0, 0, 5),
        (4, 0, 2), (1, 4, 2), (-4, 2, 2), (-3, -3, 2), (2, -4, 2),
        (3, 3, -2), (-1, 4, -2), (-4, 0, -2), (-1, -4, -2), (3, -3, -2),
        (0, 0, -5),
    )
    faces = (
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 6, 2), (2, 7, 3), (3, 8, 4), (4, 9, 5), (5, 10, 1),
        (2, 6, 7), (3, 7, 8), (4, 8, 9), (5, 9, 10), (1, 10, 6),
        (7, 6, 11), (8, 7, 11), (9, 8, 11), (10, 9, 11), (6, 10, 11),
    )
    return TriMesh(vertices, faces)


def sphere_like_mesh(seed: int, triangles: int = 100) -> TriMesh:
    """Grow the octahedron by seeded random bisections (+2 each) until at
    least `triangles` triangles."""
    import random

    rng = random.Random(seed)
    mesh = octahedron()
    while len(mesh.triangles) < triangles:
        t1, t2 = rng.choice(sorted(dual_graph(mesh).edges))
        mesh = bisect_pair(mesh, t1, t2)
    return mesh


# ---------------------------------------------------------------------------
# OFF input and output
# ---------------------------------------------------------------------------


def mesh_from_off(text: str) -> TriMesh:
    """Parse OFF: header, `V F E` counts, vertex rows, `3 i j k` face rows.
    Coordinates may be integers, decimals, or fractions like `1/2`."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows or rows[0][1] != "OFF":
        raise InputError("missing OFF header")
    if len(rows) < 2:
        raise InputError("missing OFF counts line")
    counts = rows[1][1].split()
    if len(counts) != 3:
        raise InputError(f"line {rows[1][0]}: expected 'V F E' counts")
    try:
        n_vertices, n_faces = int(counts[0]), int(counts[1])
    except ValueError as exc:
        raise InputError(f"line {rows[1][0]}: bad counts line") from exc
    body = rows[2:]
    if len(body) != n_vertices + n_faces:
        raise InputError(
            f"expected {n_vertices} vertex and {n_faces} face rows, "
            f"found {len(body)}"
        )
    vertices = []
    for lineno, line in body[:n_vertices]:
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 3 coordinates")
        try:
            vertices.append(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"line {lineno}: bad coordinate") from exc
    faces = []
    for lineno, line in body[n_vertices:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "3":
            raise InputError(f"line {lineno}: expected '3 i j k'")
        try:
            faces.append(tuple(int(p) for p in parts[1:]))
        except ValueError as exc:
            raise InputError(f"line {lineno}: bad vertex index") from exc
    return TriMesh(tuple(vertices), tuple(faces))


def mesh_to_off(mesh: TriMesh) -> str:
    lines = ["OFF"]
    lines.append(
        f"{len(mesh.vertices)} {len(mesh.triangles)} "
        f"{3 * len(mesh.triangles) // 2}"
    )
    for x, y, z in mesh.vertices:
        lines.append(f"{x} {y} {z}")
    for a, b, c in mesh.triangles:
        lines.append(f"3 {a} {b} {c}")
    return "\n".join(lines) + "\n"


def load_mesh(path: str) -> TriMesh:
    with open(path, encoding="utf-8") as handle:
        return mesh_from_off(handle.read())
