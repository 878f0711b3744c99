"""Maximize the minimum angle of a tiling by centrally symmetric tiles.

Tiles are zonogons: cyclic side sequences z1..zk, -z1..-zk of signed zone
ids, every side a unit segment whose direction is the zone's angle (plus
180 degrees for negative signs).  Rotating all segments of a zone together
preserves the tiling's combinatorics, so the optimization variables are
per-zone direction adjustments d_i.  A corner between zones a, b with
initial interior angle phi stays at least lambda iff d_b - d_a <= phi -
lambda and stays convex iff d_a - d_b <= 180 - phi; both are difference
constraints, so the largest feasible lambda is the point where a parametric
shortest-path graph (arc weights constant or constant - lambda) first gains
a negative cycle, and the adjustments are shortest-path distances there.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .graphs import bellman_ford_multi
from .parametric import INF, ParamDigraph, evaluate_arcs, karp_orlin_threshold

__all__ = [
    "Tiling",
    "ZoneReport",
    "AngleSolution",
    "zones",
    "angle_graph",
    "optimize_angles",
    "reconstruct_positions",
    "rhombus_tiling",
    "hexagon_tiling",
    "tiling_from_json",
    "tiling_to_json",
    "load_tiling",
]


def _degrees(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"float angle {value!r}; use a rational string")
    return Fraction(value)


# ---------------------------------------------------------------------------
# the tiling structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tiling:
    """Combinatorial tiling by unit-side zonogons.

    zone_directions[i] is the angle in rational degrees of zone i+1; tiles
    are cyclic tuples of signed 1-based zone ids with second half the
    negation of the first; adjacencies pair side slots (tile, side) that
    are glued, necessarily with the same zone and opposite signs.
    """

    zone_directions: tuple[Fraction, ...]
    tiles: tuple[tuple[int, ...], ...]
    adjacencies: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def __init__(self, zone_directions, tiles, adjacencies=()):
        dirs = tuple(_degrees(v) for v in zone_directions)
        tils = tuple(tuple(int(z) for z in tile) for tile in tiles)
        adjs = tuple(
            ((int(a), int(i)), (int(b), int(j)))
            for (a, i), (b, j) in adjacencies
        )
        object.__setattr__(self, "zone_directions", dirs)
        object.__setattr__(self, "tiles", tils)
        object.__setattr__(self, "adjacencies", adjs)
        self._validate()

    def _validate(self) -> None:
        m = len(self.zone_directions)
        if not self.tiles:
            raise InputError("tiling has no tiles")
        used = set()
        for t, tile in enumerate(self.tiles):
            if len(tile) < 4 or len(tile) % 2:
                raise InputError(
                    f"tile {t} needs an even number >= 4 of sides"
                )
            k = len(tile) // 2
            for i, z in enumerate(tile):
                if not 1 <= abs(z) <= m:
                    raise InputError(f"tile {t} side {i}: no zone {z}")
                if i < k and tile[i + k] != -z:
                    raise InputError(
                        f"tile {t} is not centrally symmetric: side {i + k} "
                        f"is {tile[i + k]}, expected {-z}"
                    )
                used.add(abs(z))
            for j in range(len(tile)):
                turn = self.corner_turn(t, j)
                if turn >= 180:
                    raise InputError(
                        f"tile {t} corner {j}: interior angle "
                        f"{180 - turn} is not positive"
                    )
        if used != set(range(1, m + 1)):
            missing = sorted(set(range(1, m + 1)) - used)
            raise InputError(f"zone {missing[0]} is never used")

        seen_slots = set()
        for (a, i), (b, j) in self.adjacencies:
            for t, s in ((a, i), (b, j)):
                if not (0 <= t < len(self.tiles)
                        and 0 <= s < len(self.tiles[t])):
                    raise InputError(f"adjacency slot ({t},{s}) out of range")
                if (t, s) in seen_slots:
                    raise InputError(f"slot ({t},{s}) glued twice")
                seen_slots.add((t, s))
            if a == b:
                raise InputError(f"tile {a} glued to itself")
            za, zb = self.tiles[a][i], self.tiles[b][j]
            if za != -zb:
                raise InputError(
                    f"glued slots ({a},{i}) and ({b},{j}) carry zones "
                    f"{za} and {zb}; need the same zone, opposite signs"
                )

    def side_direction(self, t: int, i: int) -> Fraction:
        z = self.tiles[t][i]
        base = self.zone_directions[abs(z) - 1]
        return (base + (180 if z < 0 else 0)) % 360

    def corner_turn(self, t: int, j: int) -> Fraction:
        """Turn angle at the corner between sides j and j+1 (cyclic)."""
        cur = self.side_direction(t, j)
        nxt = self.side_direction(t, (j + 1) % len(self.tiles[t]))
        return (nxt - cur) % 360

    def corners(self):
        """Yield (tile, corner, zone_a, zone_b, interior_angle)."""
        for t, tile in enumerate(self.tiles):
            for j in range(len(tile)):
                a = abs(tile[j])
                b = abs(tile[(j + 1) % len(tile)])
                yield t, j, a, b, 180 - self.corner_turn(t, j)


# ---------------------------------------------------------------------------
# zones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZoneReport:
    """members[z-1] lists the side slots of zone z, sorted."""

    zone_count: int
    members: tuple[tuple[tuple[int, int], ...], ...]


def zones(tiling: Tiling) -> ZoneReport:
    """Verify the declared zone labels are exactly the equivalence closure
    of "opposite sides of a tile" and "glued sides of adjacent tiles"."""
    slots = [
        (t, i)
        for t, tile in enumerate(tiling.tiles)
        for i in range(len(tile))
    ]
    index = {s: n for n, s in enumerate(slots)}
    parent = list(range(len(slots)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        parent[find(x)] = find(y)

    for t, tile in enumerate(tiling.tiles):
        k = len(tile) // 2
        for i in range(k):
            union(index[(t, i)], index[(t, i + k)])
    for sa, sb in tiling.adjacencies:
        union(index[sa], index[sb])

    zone_of_class: dict[int, int] = {}
    class_of_zone: dict[int, int] = {}
    for n, (t, i) in enumerate(slots):
        z = abs(tiling.tiles[t][i])
        root = find(n)
        if zone_of_class.setdefault(root, z) != z:
            raise InputError(
                f"tile {t} side {i}: zone {z} glued into zone "
                f"{zone_of_class[root]}"
            )
        if class_of_zone.setdefault(z, root) != root:
            raise InputError(
                f"tile {t} side {i}: zone {z} splits into disconnected "
                f"side classes"
            )

    members: list[list[tuple[int, int]]] = [
        [] for _ in tiling.zone_directions
    ]
    for t, i in slots:
        members[abs(tiling.tiles[t][i]) - 1].append((t, i))
    return ZoneReport(
        len(tiling.zone_directions),
        tuple(tuple(sorted(lst)) for lst in members),
    )


# ---------------------------------------------------------------------------
# the parametric graph
# ---------------------------------------------------------------------------


def angle_graph(tiling: Tiling) -> ParamDigraph:
    """Vertex 0 is the start; vertex z is zone z.  Arcs: zero-weight start
    arcs to every zone; per corner between zones a, b with interior angle
    phi, a min-angle arc a -> b with weight phi - lambda and a convexity
    arc b -> a with weight 180 - phi."""
    m = len(tiling.zone_directions)
    arcs: list[tuple[int, int, Fraction, Fraction]] = []
    for z in range(1, m + 1):
        arcs.append((0, z, Fraction(0), Fraction(0)))
    for _t, _j, a, b, interior in tiling.corners():
        arcs.append((a, b, interior, Fraction(-1)))
        arcs.append((b, a, 180 - interior, Fraction(0)))
    return ParamDigraph(m + 1, arcs)


@dataclass(frozen=True)
class AngleSolution:
    """lambda_star: the best possible minimum interior angle (rational
    degrees); adjustments[i]: rotation added to zone i+1; directions: the
    adjusted zone directions; tile_vertices: reconstructed coordinates per
    tile (floats, presentation only)."""

    lambda_star: Fraction
    adjustments: tuple[Fraction, ...]
    directions: tuple[Fraction, ...]
    tile_vertices: tuple[tuple[tuple[float, float], ...], ...]


def optimize_angles(tiling: Tiling) -> AngleSolution:
    """Largest-minimum-angle redirection of the tiling's zones."""
    zones(tiling)
    reconstruct_positions(tiling, tiling.zone_directions)

    g = angle_graph(tiling)
    lam = karp_orlin_threshold(g)
    assert lam is not INF, "every tile induces a cycle of min-angle arcs"

    res = bellman_ford_multi(
        g.vertex_count, evaluate_arcs(g, lam), (0,), Fraction(0)
    )
    assert res.distances is not None
    d = res.distances
    adjustments = tuple(d[z] for z in range(1, g.vertex_count))

    new_angles = [
        interior + adjustments[a - 1] - adjustments[b - 1]
        for _t, _j, a, b, interior in tiling.corners()
    ]
    assert min(new_angles) == lam
    assert all(lam <= angle <= 180 for angle in new_angles)

    directions = tuple(
        theta + dz
        for theta, dz in zip(tiling.zone_directions, adjustments)
    )
    vertices = reconstruct_positions(tiling, directions)
    return AngleSolution(lam, adjustments, directions, vertices)


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------


def reconstruct_positions(
    tiling: Tiling, directions
) -> tuple[tuple[tuple[float, float], ...], ...]:
    """Vertex coordinates per tile under the given zone directions.

    Tiles are chained across adjacencies breadth-first from the least tile
    of each connected component, whose first vertex sits at the origin.
    Every tile must close and every glued side must coincide (to 1e-9);
    a tiling failing that is combinatorially valid but not geometric.
    """
    dirs = [Fraction(v) for v in directions]

    def unit(t: int, i: int) -> tuple[float, float]:
        z = tiling.tiles[t][i]
        theta = dirs[abs(z) - 1] + (180 if z < 0 else 0)
        rad = math.radians(float(theta))
        return math.cos(rad), math.sin(rad)

    def walk(t: int, anchor_side: int, anchor: tuple[float, float]):
        n = len(tiling.tiles[t])
        verts = [(0.0, 0.0)] * n
        verts[anchor_side] = anchor
        for step in range(n):
            i = (anchor_side + step) % n
            dx, dy = unit(t, i)
            x, y = verts[i]
            verts[(i + 1) % n] = (x + dx, y + dy)
        x, y = verts[anchor_side]
        assert math.hypot(x - anchor[0], y - anchor[1]) < 1e-9, \
            "centrally symmetric tile failed to close"
        return verts

    glued: dict[tuple[int, int], tuple[int, int]] = {}
    for sa, sb in tiling.adjacencies:
        glued[sa] = sb
        glued[sb] = sa

    positions: dict[int, list[tuple[float, float]]] = {}
    for start in range(len(tiling.tiles)):
        if start in positions:
            continue
        positions[start] = walk(start, 0, (0.0, 0.0))
        queue = [start]
        while queue:
            t = queue.pop(0)
            n = len(tiling.tiles[t])
            for i in range(n):
                other = glued.get((t, i))
                if other is None:
                    continue
                s, j = other
                # Side i of t runs from vertex i to i+1; the glued tile
                # traverses the same segment backwards.
                head = positions[t][(i + 1) % n]
                tail = positions[t][i]
                if s not in positions:
                    positions[s] = walk(s, j, head)
                    queue.append(s)
                bx, by = positions[s][j]
                ex, ey = positions[s][(j + 1) % len(tiling.tiles[s])]
                mismatch = max(
                    math.hypot(bx - head[0], by - head[1]),
                    math.hypot(ex - tail[0], ey - tail[1]),
                )
                if mismatch >= 1e-9:
                    raise InputError(
                        f"tiling is not geometric: glued sides ({t},{i}) "
                        f"and ({s},{j}) disagree by {mismatch:.3g}"
                    )
    return tuple(
        tuple(positions[t]) for t in range(len(tiling.tiles))
    )


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def rhombus_tiling(directions=("0", "30")) -> Tiling:
    """A single rhombus on two zones; its optimum is always the square."""
    return Tiling(directions, ((1, 2, -1, -2),))


def hexagon_tiling(directions=("0", "60", "120")) -> Tiling:
    """Three rhombi tiling a hexagon around an interior vertex (the
    classic cube-corner picture); optimal minimum angle 60."""
    return Tiling(
        directions,
        ((1, 2, -1, -2), (1, 3, -1, -3), (2, 3, -2, -3)),
        (
            ((0, 2), (1, 0)),
            ((0, 3), (2, 0)),
            ((1, 3), (2, 1)),
        ),
    )


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def tiling_from_json(text: str) -> Tiling:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad tiling JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("tiling JSON must be an object")
    try:
        directions = data["directions"]
        tiles = data["tiles"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"tiling JSON missing field: {exc}") from exc
    adjacencies = data.get("adjacencies", ())
    return Tiling(directions, tiles, adjacencies)


def tiling_to_json(tiling: Tiling) -> str:
    return json.dumps(
        {
            "directions": [str(v) for v in tiling.zone_directions],
            "tiles": [list(tile) for tile in tiling.tiles],
            "adjacencies": [
                [list(sa), list(sb)] for sa, sb in tiling.adjacencies
            ],
        },
        indent=2,
    ) + "\n"


def load_tiling(path: str) -> Tiling:
    with open(path, encoding="utf-8") as handle:
        return tiling_from_json(handle.read())
