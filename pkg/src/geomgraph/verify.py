"""Brute-force reference checks for solver outputs.

Each function re-derives the answer by exhaustive search, independent of
the solver's reduction, and returns (status, detail) where status is
"passed", "failed", or "not-run" (instance too large for the oracle).
Size guards: rectangle partition <= 14 concave corners, clustering <= 12
points, star metrics <= 7 points, tilings <= 6 zones, maps <= 6 regions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .bends import BendAssignment, PlaneMap
from .gallery import GuardCertificate, verify_guard_certificate
from .geometry import Polygon, dist2, segments_intersect
from .parametric import ParamDigraph, feasibility_witness
from .rectpart import RectPartition, concave_vertices, good_diagonals
from .stars import DistanceMatrix, StarEmbedding, build_parametric_graph
from .strips import StripResult, _edge_owner, _tri_edges
from .tiling import Tiling, angle_graph

__all__ = [
    "check_gallery",
    "check_rectpart",
    "check_cluster",
    "check_bends",
    "check_strip",
    "check_tiling",
    "check_star",
    "max_independent_set_size",
    "min_cycle_ratio",
    "max_cycle_bound",
]


# ---------------------------------------------------------------------------
# small exhaustive primitives
# ---------------------------------------------------------------------------


def max_independent_set_size(n: int, edges) -> int:
    """Exact maximum independent set size by branch and bound."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    best = 0

    def grow(candidates: int, size: int) -> None:
        nonlocal best
        if size + candidates.bit_count() <= best:
            return
        if candidates == 0:
            best = max(best, size)
            return
        v = candidates.bit_length() - 1
        grow(candidates & ~(1 << v) & ~adj[v], size + 1)
        grow(candidates & ~(1 << v), size)

    grow((1 << n) - 1, 0)
    return best


def _simple_cycles(vertex_count: int, arcs):
    """Yield (intercept_sum, slope_sum) over all simple cycles.

    Parallel arcs are collapsed to the least intercept per (tail, head,
    slope), which preserves every extreme cycle ratio.  Cycles are
    enumerated once each by requiring the least vertex first.
    """
    collapsed: dict[tuple[int, int, Fraction], Fraction] = {}
    for t, h, intercept, slope in arcs:
        key = (t, h, slope)
        if key not in collapsed or intercept < collapsed[key]:
            collapsed[key] = intercept
    out: list[list[tuple[int, Fraction, Fraction]]] = [
        [] for _ in range(vertex_count)
    ]
    for (t, h, slope), intercept in collapsed.items():
        out[t].append((h, intercept, slope))

    for root in range(vertex_count):
        stack = [(root, Fraction(0), Fraction(0), frozenset([root]))]
        while stack:
            v, isum, ssum, onpath = stack.pop()
            for h, intercept, slope in out[v]:
                if h == root:
                    yield isum + intercept, ssum + slope
                elif h > root and h not in onpath:
                    stack.append(
                        (h, isum + intercept, ssum + slope, onpath | {h})
                    )


def min_cycle_ratio(g: ParamDigraph) -> Fraction | None:
    """min over simple cycles with sloped arcs of intercept-sum / count of
    sloped arcs, for slopes in {0, -1}; None when no cycle has one."""
    best = None
    for isum, ssum in _simple_cycles(g.vertex_count, g.arcs):
        if ssum == 0:
            continue
        ratio = isum / -ssum
        if best is None or ratio < best:
            best = ratio
    return best


def max_cycle_bound(g: ParamDigraph) -> Fraction | None:
    """max over simple cycles with positive slope sum of
    -intercept-sum / slope-sum; constant cycles must be nonnegative."""
    best = None
    for isum, ssum in _simple_cycles(g.vertex_count, g.arcs):
        if ssum == 0:
            assert isum >= 0, "constant negative cycle"
            continue
        bound = -isum / ssum
        if best is None or bound > best:
            best = bound
    return best


# ---------------------------------------------------------------------------
# per-problem checks
# ---------------------------------------------------------------------------


def check_gallery(poly: Polygon, cert: GuardCertificate) -> tuple[str, str]:
    ok, msg = verify_guard_certificate(poly, cert)
    return ("passed", msg) if ok else ("failed", msg)


def check_rectpart(poly: Polygon, part: RectPartition) -> tuple[str, str]:
    concave = concave_vertices(poly)
    if len(concave) > 14:
        return "not-run", f"{len(concave)} concave corners exceed oracle bound 14"
    diagonals = good_diagonals(poly)
    conflicts = [
        (i, j)
        for i in range(len(diagonals))
        for j in range(i + 1, len(diagonals))
        if segments_intersect(diagonals[i], diagonals[j]).kind != "disjoint"
    ]
    g_bf = max_independent_set_size(len(diagonals), conflicts)
    want = poly.total_vertices // 2 + len(poly.holes) - g_bf - 1
    if part.count == want:
        return "passed", f"rectangle count matches exhaustive bound {want}"
    return "failed", f"count {part.count}, exhaustive bound {want}"


def check_cluster(points, d2, members: tuple[int, ...]) -> tuple[str, str]:
    n = len(points)
    if n > 12:
        return "not-run", f"{n} points exceed oracle bound 12"
    d2 = Fraction(d2)
    best = 0
    for mask in range(1 << n):
        chosen = [i for i in range(n) if mask >> i & 1]
        if len(chosen) <= best:
            continue
        if all(
            dist2(points[p], points[q]) <= d2
            for x, p in enumerate(chosen)
            for q in chosen[x + 1:]
        ):
            best = len(chosen)
    if len(members) == best:
        return "passed", f"cluster size matches exhaustive maximum {best}"
    return "failed", f"size {len(members)}, exhaustive maximum {best}"


def _junction_unit_choices(degree: int):
    top = 5 - degree
    return [
        units
        for units in product(range(1, top + 1), repeat=degree)
        if sum(units) == 4
    ]


def _transport_cost(balance: dict[str, int], dist: dict[tuple[str, str], int]) -> int:
    """Exact cheapest way to cancel surpluses against deficits."""
    sources = sorted(r for r, b in balance.items() if b > 0)
    sinks = sorted(r for r, b in balance.items() if b < 0)
    need = {r: -balance[r] for r in sinks}

    best = None

    def assign(i: int, remaining: dict[str, int], cost: int) -> None:
        nonlocal best
        if best is not None and cost >= best:
            return
        if i == len(sources):
            assert all(v == 0 for v in remaining.values())
            best = cost
            return
        src = sources[i]
        units = balance[src]

        def split(j: int, left: int, add: int) -> None:
            nonlocal best
            if best is not None and cost + add >= best:
                return
            if j == len(sinks):
                if left == 0:
                    assign(i + 1, remaining, cost + add)
                return
            snk = sinks[j]
            for take in range(min(left, remaining[snk]) + 1):
                remaining[snk] -= take
                split(j + 1, left - take, add + take * dist[(src, snk)])
                remaining[snk] += take

        split(0, units, 0)

    assign(0, dict(need), 0)
    assert best is not None
    return best


def _border_distances(pmap: PlaneMap) -> dict[tuple[str, str], int]:
    """All-pairs cheapest border-crossing cost: exterior borders free,
    interior borders one."""
    weight = {}
    for a, b in pmap.adjacency:
        w = 0 if pmap.exterior in (a, b) else 1
        weight[(a, b)] = w
        weight[(b, a)] = w
    dist = {
        (a, b): (0 if a == b else None)
        for a in pmap.regions
        for b in pmap.regions
    }
    for (a, b), w in weight.items():
        if dist[(a, b)] is None or w < dist[(a, b)]:
            dist[(a, b)] = w
    for mid in pmap.regions:
        for a in pmap.regions:
            for b in pmap.regions:
                left, right = dist[(a, mid)], dist[(mid, b)]
                if left is None or right is None:
                    continue
                through = left + right
                if dist[(a, b)] is None or through < dist[(a, b)]:
                    dist[(a, b)] = through
    assert all(v is not None for v in dist.values()), "map not connected"
    return dist


def check_bends(pmap: PlaneMap, sol: BendAssignment) -> tuple[str, str]:
    interior = [r for r in pmap.regions if r != pmap.exterior]
    if len(interior) > 6:
        return "not-run", f"{len(interior)} regions exceed oracle bound 6"
    dist = _border_distances(pmap)
    choices = [
        _junction_unit_choices(len(rot)) for rot in pmap.junctions
    ]
    best = None
    memo: dict[tuple[int, ...], int] = {}
    names = sorted(pmap.regions)
    for combo in product(*choices):
        balance = {r: 0 for r in pmap.regions}
        for rot, units in zip(pmap.junctions, combo):
            for r, u in zip(rot, units):
                balance[r] += u
        for r in pmap.regions:
            k = pmap.junction_count(r)
            owed = 2 * k + 4 if r == pmap.exterior else 2 * k - 4
            balance[r] -= owed
        assert sum(balance.values()) == 0
        key = tuple(balance[r] for r in names)
        if key not in memo:
            memo[key] = _transport_cost(balance, dist)
        cost = memo[key]
        if best is None or cost < best:
            best = cost
    if sol.total_bends == best:
        return "passed", f"total matches exhaustive optimum {best}"
    return "failed", f"total {sol.total_bends}, exhaustive optimum {best}"


def check_strip(result: StripResult) -> tuple[str, str]:
    mesh, strip = result.mesh, result.strip
    if sorted(strip) != list(range(len(mesh.triangles))):
        return "failed", "strip does not visit every triangle exactly once"
    owner = _edge_owner(mesh)
    for i, t in enumerate(strip):
        nxt = strip[(i + 1) % len(strip)]
        shared = [
            (u, v)
            for u, v in _tri_edges(mesh.triangles[t])
            if owner[(v, u)] == nxt
        ]
        if not shared:
            return "failed", f"strip steps {t} -> {nxt} without a shared edge"
    if Fraction(len(strip), result.source_triangles) > Fraction(3, 2):
        return "failed", "growth exceeds 3/2"
    return "passed", "single cycle over all triangles, growth within 3/2"


def check_tiling(tiling: Tiling, lam: Fraction) -> tuple[str, str]:
    if len(tiling.zone_directions) > 6:
        return (
            "not-run",
            f"{len(tiling.zone_directions)} zones exceed oracle bound 6",
        )
    want = min_cycle_ratio(angle_graph(tiling))
    assert want is not None
    if lam == want:
        return "passed", f"threshold matches exhaustive cycle ratio {want}"
    return "failed", f"threshold {lam}, exhaustive cycle ratio {want}"


def check_star(d: DistanceMatrix, emb: StarEmbedding) -> tuple[str, str]:
    if d.n > 7:
        return "not-run", f"{d.n} points exceed oracle bound 7"
    g = build_parametric_graph(d)

    hi = 2 * max(max(row) for row in d.entries)
    hi = hi / min(v for row in d.entries for v in row if v > 0) + 1
    lo = Fraction(0)
    while hi - lo > Fraction(1, 10**12):
        mid = (lo + hi) / 2
        if feasibility_witness(g, mid) is None:
            hi = mid
        else:
            lo = mid
    if abs(hi - emb.dilation) >= Fraction(1, 10**9):
        return "failed", f"dilation {emb.dilation} vs bisection {hi}"

    if d.n <= 5:
        exact = max_cycle_bound(g)
        if exact != emb.dilation:
            return "failed", f"dilation {emb.dilation} vs cycle bound {exact}"
        return "passed", "matches bisection and exhaustive cycle bound"
    return "passed", "matches feasibility bisection within 1e-9"
