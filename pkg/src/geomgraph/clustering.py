"""Largest point clusters of bounded diameter, and min-diameter k-clusters.

Guessing the diametral pair (p, q) of a cluster confines every other member
to the lune of p and q (the intersection of the two radius-|pq| disks).
Points of the open lune on the same side of the line pq are automatically
within |pq| of each other, so pairs farther than |pq| apart only ever
straddle the line: the conflict graph is bipartite, and the largest
conflict-free member set is a maximum independent set obtained from a
maximum matching via Koenig's theorem.  All comparisons use squared
distances, exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .geometry import Point, dist2, lune_contains
from .graphs import BipartiteGraph, konig_independent_set, max_bipartite_matching

# ---------------------------------------------------------------------------
# point sets
# ---------------------------------------------------------------------------


def validate_points(points) -> tuple[Point, ...]:
    pts = tuple(Point(*p) if not isinstance(p, Point) else p for p in points)
    if not pts:
        raise InputError("empty point set")
    if len(set(pts)) != len(pts):
        raise InputError("point set contains duplicates")
    return pts


def points_from_text(text: str) -> tuple[Point, ...]:
    """Parse the .pts format: one "x y" rational pair per line (blank lines
    and #-comment lines ignored)."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'x y', got {raw!r}")
        try:
            pts.append(Point(Fraction(parts[0]), Fraction(parts[1])))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"line {lineno}: bad rational ({exc})") from exc
    return validate_points(pts)


def points_to_text(points) -> str:
    return "".join(f"{p.x} {p.y}\n" for p in points)


def load_points(path: str) -> tuple[Point, ...]:
    with open(path, encoding="utf-8") as fh:
        return points_from_text(fh.read())


def random_point_set(n: int, seed: int, span: int = 40) -> tuple[Point, ...]:
    """n distinct points with integer coordinates in [0, span]."""
    if n < 1:
        raise InputError("need at least one point")
    if (span + 1) ** 2 < n:
        raise InputError("span too small for that many distinct points")
    rng = random.Random(seed)
    pts: set[Point] = set()
    while len(pts) < n:
        pts.add(Point(rng.randint(0, span), rng.randint(0, span)))
    return tuple(sorted(pts))


# ---------------------------------------------------------------------------
# clusters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClusterResult:
    """members: sorted point indices; diameter2: squared diameter."""

    members: tuple[int, ...]
    diameter2: Fraction


def cluster_for_pair(points, p_idx: int, q_idx: int) -> tuple[int, ...]:
    """Largest cluster whose diametral pair is (points[p_idx], points[q_idx]):
    sorted indices, always containing p_idx and q_idx."""
    points = validate_points(points)
    p, q = points[p_idx], points[q_idx]
    s2 = dist2(p, q)
    if s2 == 0:
        raise InputError("diametral pair must be two distinct points")

    axis: list[int] = []
    side_a: list[int] = []
    side_b: list[int] = []
    for i, x in enumerate(points):
        where = lune_contains(p, q, x)
        if where == "outside":
            continue
        if where == "on_axis":
            axis.append(i)
        elif where == "in_open_side_A":
            side_a.append(i)
        else:
            side_b.append(i)

    # Same-side and axis members can never conflict; only cross-side pairs
    # can exceed the lune width.  These are internal guarantees of the lune
    # geometry, checked here outright.
    member_pool = axis + side_a + side_b
    for ii in range(len(member_pool)):
        for jj in range(ii + 1, len(member_pool)):
            a, b = member_pool[ii], member_pool[jj]
            crossing = (a in side_a and b in side_b) or (
                a in side_b and b in side_a
            )
            if not crossing:
                assert dist2(points[a], points[b]) <= s2, (
                    "same-side lune points farther apart than the diametral pair"
                )

    edges = []
    for ai, a in enumerate(side_a):
        for bi, b in enumerate(side_b):
            if dist2(points[a], points[b]) > s2:
                edges.append((ai, bi))
    graph = BipartiteGraph(len(side_a), len(side_b), edges)
    matching = max_bipartite_matching(graph)
    independent = konig_independent_set(graph, matching)
    members = set(axis)
    members.update(side_a[i] for side, i in independent if side == "L")
    members.update(side_b[j] for side, j in independent if side == "R")
    assert p_idx in members and q_idx in members
    for a in sorted(members):
        for b in sorted(members):
            if a < b:
                assert dist2(points[a], points[b]) <= s2
    return tuple(sorted(members))


def max_cluster_given_d2(points, d2) -> tuple[int, ...]:
    """Largest cluster with squared diameter at most d2; ties broken by the
    lexicographically least sorted index tuple."""
    points = validate_points(points)
    d2 = Fraction(d2)
    if d2 < 0:
        raise InputError("squared diameter bound must be nonnegative")
    best = (0,)  # the singleton of the lowest index is always a cluster
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if dist2(points[i], points[j]) > d2:
                continue
            cand = cluster_for_pair(points, i, j)
            if (-len(cand), cand) < (-len(best), best):
                best = cand
    return best


def min_diameter_k_cluster(points, k: int) -> ClusterResult:
    """A k-point cluster of minimum squared diameter: binary search over the
    sorted pairwise squared distances, then trim the winning cluster to its
    k lowest indices."""
    points = validate_points(points)
    if not 1 <= k <= len(points):
        raise InputError(f"k must be between 1 and {len(points)}")
    values = sorted(
        {Fraction(0)}
        | {
            dist2(points[i], points[j])
            for i in range(len(points))
            for j in range(i + 1, len(points))
        }
    )
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if len(max_cluster_given_d2(points, values[mid])) >= k:
            hi = mid
        else:
            lo = mid + 1
    assert len(max_cluster_given_d2(points, values[lo])) >= k
    cluster = max_cluster_given_d2(points, values[lo])
    members = cluster[:k]
    diam2 = max(
        (
            dist2(points[a], points[b])
            for ai, a in enumerate(members)
            for b in members[ai + 1 :]
        ),
        default=Fraction(0),
    )
    # A smaller trimmed diameter would contradict the minimality of values[lo].
    assert diam2 == values[lo]
    return ClusterResult(members, diam2)
