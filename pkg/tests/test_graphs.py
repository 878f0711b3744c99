import random
from fractions import Fraction
from functools import lru_cache

import pytest

from geomgraph.errors import InputError
from geomgraph.graphs import (
    BipartiteGraph,
    FlowNetwork,
    Graph,
    Matching,
    WeightedDigraph,
    bellman_ford_multi,
    konig_independent_set,
    max_bipartite_matching,
    maximum_matching_general,
    min_cost_circulation,
    negative_cycle_anywhere,
    perfect_matching_general,
    residual_digraph,
    verify_circulation,
)

# ---------------------------------------------------------------------------
# brute-force baselines
# ---------------------------------------------------------------------------


def bf_bipartite_size(nl: int, nr: int, edges) -> int:
    adj = [[] for _ in range(nl)]
    for u, v in edges:
        adj[u].append(v)

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> int:
        if i == nl:
            return 0
        top = best(i + 1, used)
        for v in adj[i]:
            if not used >> v & 1:
                top = max(top, 1 + best(i + 1, used | 1 << v))
        return top

    return best(0, 0)


def bf_general_size(n: int, edges) -> int:
    edges = sorted(set(tuple(sorted(e)) for e in edges))

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> int:
        if i == len(edges):
            return 0
        top = best(i + 1, used)
        u, v = edges[i]
        if not used >> u & 1 and not used >> v & 1:
            top = max(top, 1 + best(i + 1, used | 1 << u | 1 << v))
        return top

    return best(0, 0)


# ---------------------------------------------------------------------------
# matchings
# ---------------------------------------------------------------------------


def test_matching_rejects_reused_vertices():
    Matching([(0, 1), (2, 3)])
    with pytest.raises(InputError):
        Matching([(0, 1), (0, 2)])


def test_bipartite_matching_known_cases():
    # Perfect matching on a 3x3 cycle-ish graph.
    g = BipartiteGraph(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)])
    assert max_bipartite_matching(g).size == 3
    # A star: one left vertex cannot cover two rights.
    g = BipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert max_bipartite_matching(g).size == 1
    # No edges.
    assert max_bipartite_matching(BipartiteGraph(2, 2, [])).size == 0


def test_bipartite_matching_random_vs_bruteforce():
    rng = random.Random(11)
    for _ in range(300):
        nl, nr = rng.randint(1, 6), rng.randint(1, 6)
        edges = [
            (u, v)
            for u in range(nl)
            for v in range(nr)
            if rng.random() < 0.4
        ]
        m = max_bipartite_matching(BipartiteGraph(nl, nr, edges))
        for u, v in m.pairs:
            assert (u, v) in edges
        assert m.size == bf_bipartite_size(nl, nr, edges)


def test_konig_set_is_independent_and_maximum():
    rng = random.Random(23)
    for _ in range(300):
        nl, nr = rng.randint(1, 6), rng.randint(1, 6)
        edges = sorted(
            set(
                (rng.randrange(nl), rng.randrange(nr))
                for _ in range(rng.randint(0, 12))
            )
        )
        g = BipartiteGraph(nl, nr, edges)
        m = max_bipartite_matching(g)
        ind = konig_independent_set(g, m)
        # Independence: no edge joins two chosen vertices.
        for u, v in edges:
            assert not (("L", u) in ind and ("R", v) in ind)
        # Maximum size: complement of a minimum vertex cover.
        assert len(ind) == nl + nr - m.size


def test_general_matching_blossom_cases():
    # Odd cycle: floor(5/2) pairs.
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert maximum_matching_general(c5).size == 2
    assert perfect_matching_general(c5) is None
    # Petersen graph has a perfect matching.
    petersen = Graph(
        10,
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)]
        + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
    )
    pm = perfect_matching_general(petersen)
    assert pm is not None and pm.size == 5
    # Two triangles joined by a bridge: perfect matching exists.
    g = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    pm = perfect_matching_general(g)
    assert pm is not None and pm.size == 3


def test_general_matching_random_vs_bruteforce():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(2, 9)
        edges = sorted(
            set(
                tuple(sorted(rng.sample(range(n), 2)))
                for _ in range(rng.randint(0, 2 * n))
            )
        )
        m = maximum_matching_general(Graph(n, edges))
        for u, v in m.pairs:
            assert (u, v) in edges
        assert m.size == bf_general_size(n, edges)


def test_graph_rejects_loops():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])


# ---------------------------------------------------------------------------
# shortest paths with negative weights
# ---------------------------------------------------------------------------


def test_bellman_ford_exact_distances():
    arcs = [(0, 1, Fraction(5)), (0, 2, Fraction(2)), (2, 1, Fraction(1)),
            (1, 3, Fraction(-4)), (2, 3, Fraction(10))]
    res = bellman_ford_multi(4, arcs, (0,), Fraction(0))
    assert res.negative_cycle is None
    assert res.distances == (Fraction(0), Fraction(3), Fraction(2), Fraction(-1))


def test_bellman_ford_unreachable_and_multi_source():
    arcs = [(0, 1, Fraction(1))]
    res = bellman_ford_multi(3, arcs, (0,), Fraction(0))
    assert res.distances == (Fraction(0), Fraction(1), None)
    res = bellman_ford_multi(3, arcs, (0, 2), Fraction(0))
    assert res.distances == (Fraction(0), Fraction(1), Fraction(0))


def test_bellman_ford_negative_cycle_is_real():
    arcs = [(0, 1, Fraction(2)), (1, 2, Fraction(-3)), (2, 0, Fraction(-1)),
            (0, 2, Fraction(9))]
    res = bellman_ford_multi(3, arcs, (0,), Fraction(0))
    assert res.distances is None
    cyc = res.negative_cycle
    assert cyc is not None
    total = sum(arcs[i][2] for i in cyc)
    assert total < 0
    # Arc indices chain head-to-tail and close up.
    for i in range(len(cyc)):
        assert arcs[cyc[i]][1] == arcs[cyc[(i + 1) % len(cyc)]][0]


def test_negative_cycle_anywhere_on_disconnected_digraph():
    g = WeightedDigraph(5, [(0, 1, Fraction(1)),
                            (3, 4, Fraction(-2)), (4, 3, Fraction(1))])
    cyc = negative_cycle_anywhere(g)
    assert cyc is not None
    assert sum(g.arcs[i][2] for i in cyc) < 0
    g = WeightedDigraph(3, [(0, 1, Fraction(-5)), (1, 2, Fraction(-5))])
    assert negative_cycle_anywhere(g) is None  # negative arcs but no cycle


# ---------------------------------------------------------------------------
# min-cost circulation
# ---------------------------------------------------------------------------


def test_circulation_forces_lower_bounds_at_min_cost():
    net = FlowNetwork(3, [(0, 1, 2, 5, 1), (1, 2, 0, 5, 1), (2, 0, 0, 5, 0)])
    res = min_cost_circulation(net)
    assert res.feasible
    assert res.total_cost == 4  # two units around the cycle, cost 1+1 each
    ok, msg = verify_circulation(net, res.flow)
    assert ok, msg
    assert negative_cycle_anywhere(residual_digraph(net, res.flow)) is None


def test_circulation_picks_the_cheap_return_path():
    # Two ways back; the costless one must carry the flow.
    net = FlowNetwork(
        3, [(0, 1, 3, 3, 0), (1, 0, 0, 9, 5), (1, 2, 0, 9, 0), (2, 0, 0, 9, 0)]
    )
    res = min_cost_circulation(net)
    assert res.feasible and res.total_cost == 0
    assert res.flow[1] == 0 and res.flow[2] == 3 and res.flow[3] == 3
    assert negative_cycle_anywhere(residual_digraph(net, res.flow)) is None


def test_circulation_infeasible_reports_a_cut():
    net = FlowNetwork(2, [(0, 1, 3, 5, 0), (1, 0, 0, 1, 0)])
    res = min_cost_circulation(net)
    assert not res.feasible
    assert res.flow is None and res.total_cost is None
    assert res.infeasibility


def test_circulation_random_instances_verify_and_are_optimal():
    rng = random.Random(17)
    for _ in range(120):
        n = rng.randint(2, 5)
        arcs = []
        for _ in range(rng.randint(1, 8)):
            t, h = rng.sample(range(n), 2)
            up = rng.randint(0, 4)
            lo = rng.randint(0, up) if rng.random() < 0.4 else 0
            arcs.append((t, h, lo, up, rng.randint(0, 3)))
        res = min_cost_circulation(FlowNetwork(n, arcs))
        if not res.feasible:
            assert res.infeasibility
            continue
        ok, msg = verify_circulation(FlowNetwork(n, arcs), res.flow)
        assert ok, msg
        assert negative_cycle_anywhere(
            residual_digraph(FlowNetwork(n, arcs), res.flow)
        ) is None
