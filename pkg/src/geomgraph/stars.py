"""Minimum-dilation embedding of a finite metric into a star.

A star metric places every point at some distance H[p] from a single hub;
distances become H[p] + H[q].  An embedding must not contract (H[p] + H[q]
>= D[p][q]) and its dilation is max (H[p]+H[q]) / D[p][q].  Scaling the
target by lambda turns the existence question into negative-cycle detection
in an auxiliary graph with two vertices per point, arcs of weight -D[p][q]
one way and lambda*D[p][q] the other; the optimal dilation is the smallest
lambda admitting no negative cycle, and hub distances fall out of the
shortest-path distances there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .graphs import bellman_ford_multi
from .parametric import ParamDigraph, evaluate_arcs, parametric_feasible_interval

__all__ = [
    "DistanceMatrix",
    "StarEmbedding",
    "build_parametric_graph",
    "optimal_star_embedding",
    "dilation",
    "random_metric",
    "cycle_metric",
    "uniform_metric",
    "matrix_from_text",
    "matrix_to_text",
    "load_matrix",
]


def _entry(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"float distance {value!r}; use a rational")
    return Fraction(value)


@dataclass(frozen=True)
class DistanceMatrix:
    """A finite metric: symmetric, zero diagonal, positive off-diagonal,
    triangle inequality.  Validation is always on and names the axiom."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, entries):
        rows = tuple(tuple(_entry(v) for v in row) for row in entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise InputError("empty distance matrix")
        for p, row in enumerate(rows):
            if len(row) != n:
                raise InputError(
                    f"row {p} has {len(row)} entries, expected {n}"
                )
            if row[p] != 0:
                raise InputError(f"zero diagonal violated: D[{p}][{p}] != 0")
        for p in range(n):
            for q in range(p + 1, n):
                if rows[p][q] != rows[q][p]:
                    raise InputError(
                        f"symmetry violated: D[{p}][{q}] != D[{q}][{p}]"
                    )
                if rows[p][q] <= 0:
                    raise InputError(
                        f"positivity violated: D[{p}][{q}] <= 0"
                    )
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    if rows[p][q] > rows[p][r] + rows[r][q]:
                        raise InputError(
                            f"triangle inequality violated: D[{p}][{q}] > "
                            f"D[{p}][{r}] + D[{r}][{q}]"
                        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, pair) -> Fraction:
        p, q = pair
        return self.entries[p][q]


@dataclass(frozen=True)
class StarEmbedding:
    """Hub distances and the dilation they achieve."""

    hub_distances: tuple[Fraction, ...]
    dilation: Fraction


# ---------------------------------------------------------------------------
# the auxiliary graph
# ---------------------------------------------------------------------------


def build_parametric_graph(d: DistanceMatrix) -> ParamDigraph:
    """Vertices: 0 is the start s; 1+p is p-up; 1+n+p is p-down.  Zero arcs
    s -> p-up and p-down -> p-up; for each ordered pair p != q an arc
    p-down -> q-up of weight -D[p][q] and an arc p-up -> q-down of weight
    lambda * D[p][q].  No negative cycle at lambda means hub distances with
    dilation lambda exist."""
    n = d.n
    up = lambda p: 1 + p
    down = lambda p: 1 + n + p
    arcs: list[tuple[int, int, Fraction, Fraction]] = []
    for p in range(n):
        arcs.append((0, up(p), Fraction(0), Fraction(0)))
        arcs.append((down(p), up(p), Fraction(0), Fraction(0)))
    for p in range(n):
        for q in range(n):
            if p != q:
                arcs.append((down(p), up(q), -d[p, q], Fraction(0)))
                arcs.append((up(p), down(q), Fraction(0), d[p, q]))
    return ParamDigraph(1 + 2 * n, arcs)


def optimal_star_embedding(d: DistanceMatrix) -> StarEmbedding:
    """Smallest-dilation star embedding of the metric.

    The feasible set of the auxiliary graph is a ray [delta*, inf) because
    every cycle weight is nondecreasing in lambda; hub distances are half
    the difference of the start distances to each point's two vertices at
    lambda = delta*.  Both operand orders of that difference are tried and
    the one satisfying the embedding invariants is kept.
    """
    n = d.n
    if n < 2:
        raise InputError("need at least two points")
    g = build_parametric_graph(d)
    interval = parametric_feasible_interval(g)
    assert not interval.empty and interval.lo is not None
    assert interval.hi is None, "feasibility is upward closed in lambda"
    delta = interval.lo
    assert delta >= 1

    res = bellman_ford_multi(
        g.vertex_count, evaluate_arcs(g, delta), (0,), Fraction(0)
    )
    assert res.distances is not None
    dist = res.distances
    assert all(v is not None for v in dist)

    candidates = []
    for sign in (1, -1):
        hub = tuple(
            sign * (dist[1 + n + p] - dist[1 + p]) / 2 for p in range(n)
        )
        if _embedding_valid(d, hub, delta):
            candidates.append(hub)
    if not candidates:
        raise AssertionError(
            "no sign convention yields a valid star embedding"
        )
    if len(candidates) == 2 and candidates[0] != candidates[1]:
        raise AssertionError(
            "both sign conventions validate with different hub vectors"
        )
    return StarEmbedding(candidates[0], delta)


def _embedding_valid(d: DistanceMatrix, hub, delta: Fraction) -> bool:
    if any(h < 0 for h in hub):
        return False
    worst = None
    for p in range(d.n):
        for q in range(p + 1, d.n):
            if hub[p] + hub[q] < d[p, q]:
                return False
            ratio = (hub[p] + hub[q]) / d[p, q]
            worst = ratio if worst is None or ratio > worst else worst
    return worst == delta


def dilation(d: DistanceMatrix, hub) -> Fraction:
    """Exact dilation of given hub distances: max (H[p]+H[q]) / D[p][q]."""
    hub = tuple(Fraction(h) for h in hub)
    if len(hub) != d.n:
        raise InputError(f"expected {d.n} hub distances, got {len(hub)}")
    if d.n < 2:
        raise InputError("need at least two points")
    if any(h < 0 for h in hub):
        raise InputError("hub distances must be nonnegative")
    worst = None
    for p in range(d.n):
        for q in range(p + 1, d.n):
            if hub[p] + hub[q] < d[p, q]:
                raise InputError(
                    f"contraction: H[{p}]+H[{q}] < D[{p}][{q}]"
                )
            ratio = (hub[p] + hub[q]) / d[p, q]
            if worst is None or ratio > worst:
                worst = ratio
    return worst


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def uniform_metric(n: int, value=2) -> DistanceMatrix:
    v = Fraction(value)
    return DistanceMatrix(
        tuple(
            tuple(v if p != q else Fraction(0) for q in range(n))
            for p in range(n)
        )
    )


def cycle_metric(n: int) -> DistanceMatrix:
    """Hop distances around an n-cycle with unit sides."""
    return DistanceMatrix(
        tuple(
            tuple(
                Fraction(min(abs(p - q), n - abs(p - q)))
                for q in range(n)
            )
            for p in range(n)
        )
    )


def random_metric(n: int, seed: int, span: int = 20) -> DistanceMatrix:
    """Shortest-path closure of a random complete graph with integer edge
    weights in 1..span; always a metric."""
    import random

    if n < 2:
        raise InputError("need at least two points")
    rng = random.Random(seed)
    d = [[Fraction(0)] * n for _ in range(n)]
    for p in range(n):
        for q in range(p + 1, n):
            d[p][q] = d[q][p] = Fraction(rng.randint(1, span))
    for r in range(n):
        for p in range(n):
            for q in range(n):
                through = d[p][r] + d[r][q]
                if p != q and through < d[p][q]:
                    d[p][q] = through
    return DistanceMatrix(tuple(tuple(row) for row in d))


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def matrix_from_text(text: str) -> DistanceMatrix:
    """Parse a ".dist" file: first line n, then n rows of n rationals."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise InputError("empty distance file")
    try:
        n = int(rows[0][1])
    except ValueError as exc:
        raise InputError(f"line {rows[0][0]}: expected the point count") from exc
    if len(rows) != n + 1:
        raise InputError(f"expected {n} matrix rows, found {len(rows) - 1}")
    entries = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != n:
            raise InputError(f"line {lineno}: expected {n} entries")
        try:
            entries.append(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"line {lineno}: bad rational") from exc
    return DistanceMatrix(tuple(entries))


def matrix_to_text(d: DistanceMatrix) -> str:
    lines = [str(d.n)]
    for row in d.entries:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def load_matrix(path: str) -> DistanceMatrix:
    with open(path, encoding="utf-8") as handle:
        return matrix_from_text(handle.read())
