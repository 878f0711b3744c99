"""Classical graph algorithms over exact arithmetic.

Matchings (Hopcroft–Karp and Edmonds' blossom), König's independent set,
Bellman–Ford with negative-cycle witnesses, and min-cost circulation with
lower bounds.  Everything is deterministic: ties break toward lower vertex
and arc indices, so repeated runs give identical certificates.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError

# ---------------------------------------------------------------------------
# graph types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with vertices 0..left_count-1 and 0..right_count-1 on
    the two sides; edges are (left, right) pairs with no duplicates."""

    left_count: int
    right_count: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, left_count: int, right_count: int, edges):
        edges = tuple((int(l), int(r)) for l, r in edges)
        if left_count < 0 or right_count < 0:
            raise InputError("vertex counts must be nonnegative")
        seen = set()
        for l, r in edges:
            if not (0 <= l < left_count and 0 <= r < right_count):
                raise InputError(f"edge ({l},{r}) out of range")
            if (l, r) in seen:
                raise InputError(f"duplicate edge ({l},{r})")
            seen.add((l, r))
        object.__setattr__(self, "left_count", left_count)
        object.__setattr__(self, "right_count", right_count)
        object.__setattr__(self, "edges", edges)


@dataclass(frozen=True)
class Matching:
    """A set of vertex-disjoint pairs.

    Each pair occupies its first slot on one side and its second slot on the
    other; no value repeats within a slot.  For matchings in general graphs
    the pairs are stored as (min, max) and the two slots share the vertex
    space, which the general-graph operations check on top of this.
    """

    pairs: frozenset[tuple[int, int]]

    def __init__(self, pairs):
        pairs = frozenset(tuple(p) for p in pairs)
        firsts = [p[0] for p in pairs]
        seconds = [p[1] for p in pairs]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise InputError("matching pairs are not vertex-disjoint")
        object.__setattr__(self, "pairs", pairs)

    @property
    def size(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertices 0..vertex_count-1, edges as
    unordered pairs without loops or duplicates."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, vertex_count: int, edges):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InputError(f"edge ({u},{v}) out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in sorted(self.edges):
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed graph with exact rational arc weights; parallel arcs and
    loops are allowed.  Arcs are addressed by their index."""

    vertex_count: int
    arcs: tuple[tuple[int, int, Fraction], ...]

    def __init__(self, vertex_count: int, arcs):
        norm = []
        for t, h, w in arcs:
            t, h = int(t), int(h)
            if not (0 <= t < vertex_count and 0 <= h < vertex_count):
                raise InputError(f"arc ({t},{h}) out of range")
            norm.append((t, h, Fraction(w)))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "arcs", tuple(norm))


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with integer lower bounds, capacities, and
    nonnegative integer costs per arc: (tail, head, lower, upper, cost)."""

    vertex_count: int
    arcs: tuple[tuple[int, int, int, int, int], ...]

    def __init__(self, vertex_count: int, arcs):
        norm = []
        for t, h, lo, up, c in arcs:
            t, h, lo, up, c = int(t), int(h), int(lo), int(up), int(c)
            if not (0 <= t < vertex_count and 0 <= h < vertex_count):
                raise InputError(f"arc ({t},{h}) out of range")
            if lo < 0 or lo > up:
                raise InputError(f"arc ({t},{h}): need 0 <= lower <= upper, got {lo},{up}")
            if c < 0:
                raise InputError(f"arc ({t},{h}): negative cost {c}")
            norm.append((t, h, lo, up, c))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "arcs", tuple(norm))


# ---------------------------------------------------------------------------
# bipartite matching (Hopcroft–Karp) and König's construction
# ---------------------------------------------------------------------------


def _bipartite_adjacency(g: BipartiteGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.left_count)]
    for l, r in sorted(g.edges):
        adj[l].append(r)
    return adj


def max_bipartite_matching(g: BipartiteGraph) -> Matching:
    """Maximum-cardinality bipartite matching (Hopcroft–Karp).

    Each phase finds a maximal set of shortest augmenting paths, always
    exploring lower-numbered vertices first, so the result is deterministic.
    """
    adj = _bipartite_adjacency(g)
    match_l = [-1] * g.left_count
    match_r = [-1] * g.right_count
    INF = float("inf")
    dist = [INF] * g.left_count

    def bfs() -> bool:
        q = deque()
        for u in range(g.left_count):
            if match_l[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for r in adj[u]:
                nxt = match_r[r]
                if nxt == -1:
                    found = True
                elif dist[nxt] == INF:
                    dist[nxt] = dist[u] + 1
                    q.append(nxt)
        return found

    def dfs(u: int) -> bool:
        for r in adj[u]:
            nxt = match_r[r]
            if nxt == -1 or (dist[nxt] == dist[u] + 1 and dfs(nxt)):
                match_l[u] = r
                match_r[r] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(g.left_count):
            if match_l[u] == -1:
                dfs(u)
    return Matching((u, match_l[u]) for u in range(g.left_count) if match_l[u] != -1)


def _augmenting_path_exists(g: BipartiteGraph, match_l, match_r) -> bool:
    """Is there an augmenting path for the given (partial) matching?"""
    adj = _bipartite_adjacency(g)
    level_reachable = [match_l[u] == -1 for u in range(g.left_count)]
    q = deque(u for u in range(g.left_count) if match_l[u] == -1)
    seen_r = [False] * g.right_count
    while q:
        u = q.popleft()
        for r in adj[u]:
            if seen_r[r]:
                continue
            seen_r[r] = True
            nxt = match_r[r]
            if nxt == -1:
                return True
            if not level_reachable[nxt]:
                level_reachable[nxt] = True
                q.append(nxt)
    return False


def konig_independent_set(g: BipartiteGraph, m: Matching) -> frozenset[tuple[str, int]]:
    """Maximum independent set from a maximum matching (König's theorem).

    Vertices are tagged ("L", i) or ("R", j).  The matching is re-validated:
    it must consist of graph edges, be vertex-disjoint per side, and admit no
    augmenting path; otherwise InputError is raised.  The returned set always
    has size left_count + right_count - |m|.
    """
    edge_set = set(g.edges)
    match_l = [-1] * g.left_count
    match_r = [-1] * g.right_count
    for l, r in m.pairs:
        if (l, r) not in edge_set:
            raise InputError(f"matching pair ({l},{r}) is not a graph edge")
        if match_l[l] != -1 or match_r[r] != -1:
            raise InputError("matching pairs are not vertex-disjoint")
        match_l[l] = r
        match_r[r] = l
    if _augmenting_path_exists(g, match_l, match_r):
        raise InputError("matching is not maximum: an augmenting path exists")

    # Alternating reachability from unmatched left vertices: unmatched edges
    # left->right, matched edges right->left.
    adj = _bipartite_adjacency(g)
    in_z_l = [match_l[u] == -1 for u in range(g.left_count)]
    in_z_r = [False] * g.right_count
    q = deque(u for u in range(g.left_count) if match_l[u] == -1)
    while q:
        u = q.popleft()
        for r in adj[u]:
            if match_l[u] == r or in_z_r[r]:
                continue
            in_z_r[r] = True
            nxt = match_r[r]
            if nxt != -1 and not in_z_l[nxt]:
                in_z_l[nxt] = True
                q.append(nxt)

    independent = frozenset(
        [("L", u) for u in range(g.left_count) if in_z_l[u]]
        + [("R", r) for r in range(g.right_count) if not in_z_r[r]]
    )
    for l, r in g.edges:
        assert not (("L", l) in independent and ("R", r) in independent)
    assert len(independent) == g.left_count + g.right_count - len(m.pairs)
    return independent


# ---------------------------------------------------------------------------
# matching in general graphs (Edmonds' blossom algorithm)
# ---------------------------------------------------------------------------


def maximum_matching_general(g: Graph) -> Matching:
    """Maximum-cardinality matching in a general graph (Edmonds' blossom
    shrinking).  Deterministic: roots and neighbors are tried in index order."""
    n = g.vertex_count
    adj = g.adjacency()
    match = [-1] * n
    p = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        a = base[a]
        while True:
            seen[a] = True
            if match[a] == -1:
                break
            a = base[p[match[a]]]
        b = base[b]
        while not seen[b]:
            b = base[p[match[b]]]
        return b

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_augmenting_path(root: int) -> bool:
        nonlocal p, base
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        while to != -1:
                            pv = p[to]
                            ppv = match[pv]
                            match[to] = pv
                            match[pv] = to
                            to = ppv
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_augmenting_path(v)

    pairs = {(min(v, match[v]), max(v, match[v])) for v in range(n) if match[v] != -1}
    for u, v in pairs:
        assert (u, v) in g.edges
    return Matching(pairs)


def perfect_matching_general(g: Graph) -> Matching | None:
    """A perfect matching of g, or None when no perfect matching exists."""
    m = maximum_matching_general(g)
    if 2 * m.size == g.vertex_count:
        return m
    return None


# ---------------------------------------------------------------------------
# Bellman–Ford with negative-cycle witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BellmanFordResult:
    """Either exact distances (None entries for unreachable vertices) or a
    negative cycle given as a tuple of arc indices in traversal order."""

    distances: tuple | None
    negative_cycle: tuple[int, ...] | None


def bellman_ford_multi(vertex_count: int, arcs, sources, zero) -> BellmanFordResult:
    """Generic Bellman–Ford from a set of sources.

    arcs is a sequence of (tail, head, weight); weights only need + and <
    against each other and against `zero` (Fractions, ints, or lexicographic
    tuples all work).  A relaxation that survives vertex_count rounds proves
    a negative cycle, which is extracted from the predecessor links and
    re-verified by summing its arc weights before being returned.
    """
    n = vertex_count
    dist = [None] * n
    pred = [-1] * n
    for s in sources:
        dist[s] = zero
    if n == 0:
        return BellmanFordResult((), None)
    last_round_heads: list[int] = []
    for rnd in range(n):
        changed = False
        for aid, (t, h, w) in enumerate(arcs):
            if dist[t] is None:
                continue
            cand = dist[t] + w
            if dist[h] is None or cand < dist[h]:
                dist[h] = cand
                pred[h] = aid
                changed = True
                if rnd == n - 1:
                    last_round_heads.append(h)
        if not changed:
            break
    if last_round_heads:
        for start in last_round_heads:
            v = start
            for _ in range(n):
                if pred[v] == -1:
                    break
                v = arcs[pred[v]][0]
            else:
                # v is on a predecessor cycle; walk it out.
                cycle_arcs = []
                cur = v
                while True:
                    aid = pred[cur]
                    cycle_arcs.append(aid)
                    cur = arcs[aid][0]
                    if cur == v:
                        break
                cycle_arcs.reverse()
                total = zero
                for aid in cycle_arcs:
                    total = total + arcs[aid][2]
                if total < zero:
                    return BellmanFordResult(None, tuple(cycle_arcs))
        raise AssertionError("relaxation in final round but no negative cycle found")
    return BellmanFordResult(tuple(dist), None)


def bellman_ford(g: WeightedDigraph, source: int) -> BellmanFordResult:
    """Single-source shortest paths with exact rational weights.

    Returns exact distances, or a negative cycle reachable from the source
    as an arc-index list (verified by summation before returning).
    """
    if not (0 <= source < g.vertex_count):
        raise InputError(f"source {source} out of range")
    return bellman_ford_multi(g.vertex_count, g.arcs, [source], Fraction(0))


def negative_cycle_anywhere(g: WeightedDigraph) -> tuple[int, ...] | None:
    """A negative cycle anywhere in the graph (arc indices), or None."""
    res = bellman_ford_multi(
        g.vertex_count, g.arcs, range(g.vertex_count), Fraction(0)
    )
    return res.negative_cycle


# ---------------------------------------------------------------------------
# min-cost circulation with lower bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CirculationResult:
    """Outcome of a circulation solve.

    When feasible: flow[i] is the value on arc i (lower <= flow <= upper,
    conservation everywhere) and total_cost is the exact cost.  When
    infeasible: infeasibility reports the unmet excess per vertex and a
    violated cut (the residual-reachable vertex set whose outgoing capacity
    cannot carry the required surplus)."""

    feasible: bool
    flow: tuple[int, ...] | None
    total_cost: int | None
    infeasibility: dict | None


def min_cost_circulation(net: FlowNetwork) -> CirculationResult:
    """Minimum-cost circulation respecting lower bounds.

    Lower bounds are forced and the leftover imbalances are resolved by
    successive shortest augmenting paths (Dijkstra with potentials; costs
    stay nonnegative in the reduced graph).  All arithmetic is integral.
    """
    n = net.vertex_count
    m = len(net.arcs)
    # Residual arrays: slots 2k / 2k+1 are arc k forward / backward.
    head = [0] * (2 * m)
    cap = [0] * (2 * m)
    cost = [0] * (2 * m)
    radj: list[list[int]] = [[] for _ in range(n)]
    excess = [0] * n
    for k, (t, h, lo, up, c) in enumerate(net.arcs):
        head[2 * k] = h
        cap[2 * k] = up - lo
        cost[2 * k] = c
        head[2 * k + 1] = t
        cap[2 * k + 1] = 0
        cost[2 * k + 1] = -c
        radj[t].append(2 * k)
        radj[h].append(2 * k + 1)
        excess[h] += lo
        excess[t] -= lo

    pot = [0] * n
    INF = float("inf")
    while True:
        try:
            s = next(v for v in range(n) if excess[v] > 0)
        except StopIteration:
            break
        dist = [INF] * n
        pred_arc = [-1] * n
        dist[s] = 0
        heap = [(0, s)]
        done = [False] * n
        while heap:
            d, v = heapq.heappop(heap)
            if done[v]:
                continue
            done[v] = True
            for rid in radj[v]:
                if cap[rid] <= 0:
                    continue
                h = head[rid]
                nd = d + cost[rid] + pot[v] - pot[h]
                if nd < dist[h]:
                    dist[h] = nd
                    pred_arc[h] = rid
                    heapq.heappush(heap, (nd, h))
        target = -1
        best = (INF, -1)
        for v in range(n):
            if excess[v] < 0 and dist[v] < best[0]:
                best = (dist[v], v)
        target = best[1]
        if target == -1:
            reachable = tuple(v for v in range(n) if dist[v] < INF)
            return CirculationResult(
                feasible=False,
                flow=None,
                total_cost=None,
                infeasibility={
                    "unmet_excess": {v: excess[v] for v in range(n) if excess[v] != 0},
                    "cut": reachable,
                },
            )
        dt = dist[target]
        for v in range(n):
            pot[v] += min(dist[v], dt)
        # Bottleneck along the predecessor path.
        delta = excess[s]
        if -excess[target] < delta:
            delta = -excess[target]
        v = target
        while v != s:
            rid = pred_arc[v]
            if cap[rid] < delta:
                delta = cap[rid]
            v = head[rid ^ 1]
        v = target
        while v != s:
            rid = pred_arc[v]
            cap[rid] -= delta
            cap[rid ^ 1] += delta
            v = head[rid ^ 1]
        excess[s] -= delta
        excess[target] += delta

    flow = tuple(net.arcs[k][2] + cap[2 * k + 1] for k in range(m))
    total = sum(net.arcs[k][4] * flow[k] for k in range(m))
    return CirculationResult(True, flow, total, None)


def verify_circulation(net: FlowNetwork, flow) -> tuple[bool, str]:
    """Check bounds and conservation for a claimed circulation.

    Returns (ok, message); message names the first violated arc or vertex.
    """
    if len(flow) != len(net.arcs):
        return False, f"expected {len(net.arcs)} flow values, got {len(flow)}"
    balance = [0] * net.vertex_count
    for k, (t, h, lo, up, _c) in enumerate(net.arcs):
        f = flow[k]
        if not (lo <= f <= up):
            return False, f"arc {k} ({t}->{h}): flow {f} outside [{lo},{up}]"
        balance[t] -= f
        balance[h] += f
    for v, b in enumerate(balance):
        if b != 0:
            return False, f"vertex {v}: net flow {b} != 0"
    return True, "ok"


def residual_digraph(net: FlowNetwork, flow) -> WeightedDigraph:
    """The cost-weighted residual graph of a circulation.

    Contains an arc per unsaturated forward direction (cost) and per
    reducible backward direction (-cost).  A circulation is min-cost exactly
    when this graph has no negative cycle.
    """
    arcs = []
    for k, (t, h, lo, up, c) in enumerate(net.arcs):
        if flow[k] < up:
            arcs.append((t, h, Fraction(c)))
        if flow[k] > lo:
            arcs.append((h, t, Fraction(-c)))
    return WeightedDigraph(net.vertex_count, arcs)
