import pytest

from geomgraph.bends import (
    PlaneMap,
    five_region_map,
    grid_map,
    load_map,
    map_from_json,
    map_to_json,
    min_bend_assignment,
    region_boundary_bends,
    single_region_map,
)
from geomgraph.errors import InputError
from geomgraph.verify import check_bends


def pie_map() -> PlaneMap:
    """Three slices around a center junction, rim junctions on the crust."""
    return PlaneMap(
        regions=("A", "B", "C", "out"),
        exterior="out",
        junctions=(
            ("A", "B", "C"),
            ("out", "B", "A"),
            ("out", "C", "B"),
            ("out", "A", "C"),
        ),
        adjacency=(
            ("A", "B"), ("B", "C"), ("C", "A"),
            ("out", "A"), ("out", "B"), ("out", "C"),
        ),
    )


# ---------------------------------------------------------------------------
# map validation
# ---------------------------------------------------------------------------


def test_map_validation_rejects_malformed_input():
    with pytest.raises(InputError, match="duplicate"):
        PlaneMap(("A", "A"), "A", (), ())
    with pytest.raises(InputError, match="exterior"):
        PlaneMap(("A", "B"), "Z", (), (("A", "B"),))
    with pytest.raises(InputError, match="degree"):
        PlaneMap(("A", "B"), "B", (("A", "B"),), (("A", "B"),))
    with pytest.raises(InputError, match="repeated"):
        PlaneMap(("A", "B"), "B", (("A", "B", "A"),), (("A", "B"),))
    with pytest.raises(InputError, match="adjacent"):
        PlaneMap(
            ("A", "B", "C", "D"),
            "D",
            (("A", "B", "C"),),
            (("A", "B"), ("B", "C"), ("A", "D")),
        )
    with pytest.raises(InputError, match="disconnected"):
        PlaneMap(("A", "B", "C"), "C", (), (("A", "B"),))
    with pytest.raises(InputError, match="sphere"):
        # Four junctions on three borders cannot lie on a sphere.
        PlaneMap(
            ("A", "B", "out"),
            "out",
            (
                ("out", "A", "B"), ("out", "B", "A"),
                ("out", "A", "B"), ("out", "B", "A"),
            ),
            (("A", "B"), ("A", "out"), ("B", "out")),
        )


def test_map_validation_checks_junction_end_parity():
    # One junction alone leaves every border with a single end.
    with pytest.raises(InputError, match="junction ends"):
        PlaneMap(
            ("A", "B", "C", "out"),
            "out",
            (("A", "B", "C"),),
            (("A", "B"), ("B", "C"), ("C", "A")),
        )


# ---------------------------------------------------------------------------
# solved layouts
# ---------------------------------------------------------------------------


def test_single_region_needs_only_the_four_outline_corners():
    pmap = single_region_map()
    sol = min_bend_assignment(pmap)
    assert sol.total_bends == 0
    assert sol.outline_corners(pmap.exterior) == 4


def test_grid_map_lays_out_with_no_interior_bends():
    pmap = grid_map()
    sol = min_bend_assignment(pmap)
    assert sol.total_bends == 0
    assert sol.outline_corners(pmap.exterior) == 4
    # Every junction's quarter-turns sum to a full angle.
    sums = {}
    for (j, region), u in sol.junction_units.items():
        assert 1 <= u <= 3
        sums[j] = sums.get(j, 0) + u
    assert sums == {j: 4 for j in range(len(pmap.junctions))}


def test_five_region_map_needs_exactly_one_bend():
    pmap = five_region_map()
    sol = min_bend_assignment(pmap)
    assert sol.total_bends == 1
    status, detail = check_bends(pmap, sol)
    assert status == "passed", detail


def test_three_junction_regions_force_a_boundary_bend():
    # Each pie slice meets only three junctions, so its angles cannot close
    # a rectilinear boundary without at least one bend.
    pmap = pie_map()
    sol = min_bend_assignment(pmap)
    for region in ("A", "B", "C"):
        assert region_boundary_bends(sol, region) >= 1
    status, detail = check_bends(pmap, sol)
    assert status == "passed", detail


def test_solutions_match_bruteforce_on_all_fixtures():
    for pmap in (single_region_map(), grid_map(), five_region_map(), pie_map()):
        sol = min_bend_assignment(pmap)
        status, detail = check_bends(pmap, sol)
        assert status == "passed", detail


def test_outline_corners_never_fall_below_four():
    for pmap in (single_region_map(), grid_map(), five_region_map(), pie_map()):
        sol = min_bend_assignment(pmap)
        assert sol.outline_corners(pmap.exterior) >= 4


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_map_json_round_trip(tmp_path):
    pmap = five_region_map()
    again = map_from_json(map_to_json(pmap))
    assert again.regions == pmap.regions
    assert again.exterior == pmap.exterior
    assert again.junctions == pmap.junctions
    assert again.adjacency == pmap.adjacency
    path = tmp_path / "m.map"
    path.write_text(map_to_json(pmap), encoding="utf-8")
    assert load_map(str(path)).regions == pmap.regions


def test_map_json_errors():
    with pytest.raises(InputError, match="line 1"):
        map_from_json("nope")
    with pytest.raises(InputError):
        map_from_json('{"regions": ["A"]}')
