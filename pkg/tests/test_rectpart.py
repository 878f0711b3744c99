from fractions import Fraction

import pytest

from geomgraph.errors import InputError
from geomgraph.geometry import Polygon
from geomgraph.rectpart import (
    annulus_polygon,
    build_partition,
    concave_vertices,
    good_diagonals,
    independent_diagonals,
    lshape_polygon,
    min_rectangle_count,
    plus_polygon,
    random_orthogonal_polygon,
)
from geomgraph.verify import check_rectpart


def _area2(poly: Polygon) -> Fraction:
    total = Fraction(0)
    for ring in poly.rings:
        for i in range(len(ring)):
            a, b = ring[i], ring[(i + 1) % len(ring)]
            total += a.x * b.y - b.x * a.y
    return total  # holes are clockwise, so they subtract


def test_concave_vertices():
    assert len(concave_vertices(plus_polygon())) == 4
    assert len(concave_vertices(lshape_polygon())) == 1
    assert len(concave_vertices(annulus_polygon())) == 4  # the hole corners
    square = Polygon([(0, 0), (2, 0), (2, 2), (0, 2)], kind="orthogonal")
    assert concave_vertices(square) == ()


def test_good_diagonals_plus_and_annulus():
    # The plus has four chords between its inner corners, pairwise
    # conflicting around the center square.
    diags = good_diagonals(plus_polygon())
    assert len(diags) == 4
    # The annulus has none: its concave corners only pair up along the
    # hole's own edges.
    assert good_diagonals(annulus_polygon()) == ()
    assert good_diagonals(lshape_polygon()) == ()


def test_independent_diagonals_on_the_plus():
    chosen, every = independent_diagonals(plus_polygon())
    assert len(every) == 4
    assert len(chosen) == 2  # the two parallel chords


def test_min_rectangle_count_fixtures():
    assert min_rectangle_count(plus_polygon()) == 3
    assert min_rectangle_count(lshape_polygon()) == 2
    assert min_rectangle_count(annulus_polygon()) == 4


def test_build_partition_tiles_the_fixtures():
    for poly, want in (
        (plus_polygon(), 3),
        (lshape_polygon(), 2),
        (annulus_polygon(), 4),
    ):
        part = build_partition(poly)
        assert part.count == want == min_rectangle_count(poly)
        # The rectangles tile the polygon: exact area, no overlaps.
        total = Fraction(0)
        for ll, ur in part.rectangles:
            assert ll.x < ur.x and ll.y < ur.y
            total += 2 * (ur.x - ll.x) * (ur.y - ll.y)
        assert total == _area2(poly)
        boxes = part.rectangles
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                (a0, a1), (b0, b1) = boxes[i], boxes[j]
                overlap_x = min(a1.x, b1.x) - max(a0.x, b0.x)
                overlap_y = min(a1.y, b1.y) - max(a0.y, b0.y)
                assert overlap_x <= 0 or overlap_y <= 0


def test_partition_matches_bruteforce_on_random_polygons():
    for seed in range(40):
        poly = random_orthogonal_polygon(seed, with_hole=seed % 3 == 0)
        part = build_partition(poly)
        status, detail = check_rectpart(poly, part)
        assert status == "passed", detail


def test_rejects_non_orthogonal_input():
    tri = Polygon([(0, 0), (4, 0), (2, 3)])
    with pytest.raises(InputError):
        build_partition(tri)


def test_random_orthogonal_polygon_is_reproducible():
    a = random_orthogonal_polygon(9, with_hole=True)
    b = random_orthogonal_polygon(9, with_hole=True)
    assert a.outer == b.outer and a.holes == b.holes
    assert len(concave_vertices(a)) <= 14


def test_hole_requests_need_enough_cells():
    # A unit hole needs a fully surrounded cell, so fewer than 9 cells
    # can never satisfy the request.
    with pytest.raises(InputError, match="at least 9"):
        random_orthogonal_polygon(0, cells=5, with_hole=True)
