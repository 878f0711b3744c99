import random
from fractions import Fraction

import pytest

from geomgraph.errors import InputError
from geomgraph.graphs import WeightedDigraph, negative_cycle_anywhere
from geomgraph.parametric import (
    INF,
    ParamDigraph,
    evaluate_arcs,
    feasibility_witness,
    is_feasible,
    karp_orlin_threshold,
    parametric_feasible_interval,
)
from geomgraph.verify import min_cycle_ratio


def test_evaluate_arcs_is_exact():
    g = ParamDigraph(2, [(0, 1, "1/2", -1), (1, 0, 3, 2)])
    arcs = evaluate_arcs(g, Fraction(1, 3))
    assert arcs == [
        (0, 1, Fraction(1, 6)),
        (1, 0, Fraction(11, 3)),
    ]


def test_witness_is_a_real_negative_cycle():
    # Cycle weight 3 - 2*lam: negative exactly when lam > 3/2.
    g = ParamDigraph(2, [(0, 1, 3, -1), (1, 0, 0, -1)])
    assert feasibility_witness(g, Fraction(3, 2)) is None
    cyc = feasibility_witness(g, Fraction(2))
    assert cyc is not None
    total = sum(
        g.arcs[i][2] + g.arcs[i][3] * Fraction(2) for i in cyc
    )
    assert total < 0
    for i in range(len(cyc)):
        assert g.arcs[cyc[i]][1] == g.arcs[cyc[(i + 1) % len(cyc)]][0]
    assert is_feasible(g, Fraction(1)) and not is_feasible(g, Fraction(7))


# ---------------------------------------------------------------------------
# feasible intervals
# ---------------------------------------------------------------------------


def test_interval_half_line():
    g = ParamDigraph(2, [(0, 1, 3, -1), (1, 0, 0, -1)])
    box = parametric_feasible_interval(g)
    assert not box.empty
    assert box.lo is None and box.hi == Fraction(3, 2)
    assert box.contains(Fraction(3, 2)) and not box.contains(Fraction(8, 5))
    # Witness cycle is exactly zero at the endpoint.
    total = sum(
        g.arcs[i][2] + g.arcs[i][3] * box.hi for i in box.hi_witness
    )
    assert total == 0


def test_interval_single_point():
    # One cycle needs lam <= 2, another needs lam >= 2.
    g = ParamDigraph(
        3,
        [(0, 1, 2, -1), (1, 0, 0, 0), (0, 2, -2, 1), (2, 0, 0, 0)],
    )
    box = parametric_feasible_interval(g)
    assert not box.empty
    assert box.lo == 2 and box.hi == 2


def test_interval_bounded_segment():
    g = ParamDigraph(
        3,
        [(0, 1, 5, -1), (1, 0, 0, 0), (0, 2, -1, 1), (2, 0, 0, 0)],
    )
    box = parametric_feasible_interval(g)
    assert (box.lo, box.hi) == (Fraction(1), Fraction(5))
    assert box.contains(Fraction(3))
    assert not box.contains(Fraction(6))


def test_interval_everywhere_and_empty():
    # No cycles at all: feasible for every parameter.
    g = ParamDigraph(2, [(0, 1, -9, -9)])
    box = parametric_feasible_interval(g)
    assert not box.empty and box.lo is None and box.hi is None
    # A parameter-free negative cycle: empty, with a certificate.
    g = ParamDigraph(2, [(0, 1, -1, 0), (1, 0, 0, 0)])
    box = parametric_feasible_interval(g)
    assert box.empty
    assert box.empty_certificate


# ---------------------------------------------------------------------------
# threshold computation
# ---------------------------------------------------------------------------


def test_threshold_simple_cycle():
    g = ParamDigraph(2, [(0, 1, 3, -1), (1, 0, 0, -1)])
    assert karp_orlin_threshold(g) == Fraction(3, 2)


def test_threshold_picks_the_tightest_cycle():
    g = ParamDigraph(
        4,
        [
            (0, 1, 4, -1), (1, 0, 3, -1),  # ratio 7/2
            (2, 3, 1, -1), (3, 2, 2, -1),  # ratio 3/2: the minimum
        ],
    )
    assert karp_orlin_threshold(g) == Fraction(3, 2)


def test_threshold_without_sloped_cycles_is_infinite():
    g = ParamDigraph(3, [(0, 1, 1, 0), (1, 0, 2, 0), (1, 2, -7, -1)])
    assert karp_orlin_threshold(g) is INF


def test_threshold_rejects_bad_slopes_and_dead_instances():
    with pytest.raises(InputError):
        karp_orlin_threshold(ParamDigraph(2, [(0, 1, 0, 1), (1, 0, 0, -1)]))
    # Slope-free negative cycle: no parameter is feasible.
    g = ParamDigraph(2, [(0, 1, -1, 0), (1, 0, 0, 0), (0, 1, 5, -1)])
    with pytest.raises(InputError):
        karp_orlin_threshold(g)


def test_threshold_matches_cycle_enumeration_on_random_graphs():
    rng = random.Random(31)
    for _ in range(150):
        n = rng.randint(2, 6)
        arcs = []
        for _ in range(rng.randint(1, 12)):
            t, h = rng.sample(range(n), 2)
            slope = Fraction(-1) if rng.random() < 0.6 else Fraction(0)
            arcs.append((t, h, Fraction(rng.randint(-4, 9)), slope))
        g = ParamDigraph(n, arcs)

        flat = WeightedDigraph(
            n, [(t, h, i) for t, h, i, s in g.arcs if s == 0]
        )
        if negative_cycle_anywhere(flat) is not None:
            with pytest.raises(InputError):
                karp_orlin_threshold(g)
            continue

        lam = karp_orlin_threshold(g)
        want = min_cycle_ratio(g)
        if want is None:
            assert lam is INF
            continue
        assert lam == want
        # Exactly feasible at the threshold, negative just beyond.
        assert feasibility_witness(g, lam) is None
        assert feasibility_witness(g, lam + Fraction(1, 1024)) is not None
