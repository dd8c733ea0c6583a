import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from artin.deligne import INF, TWO_PI, graph_from_dict
from artin.repro import PATH_33, SQUARE_3222, TRIANGLE_333, admissible_graphs
from artin.witness import (
    TOLERANCE,
    GeometryError,
    InconclusiveError,
    PreconditionError,
    build_polygon,
    classify_cases,
    emit_certificate,
    in_local_group,
    polygon_geodesic,
    to_svg,
    verify_case,
    witness_element,
)


def tri(ab, ac, bc):
    return graph_from_dict({
        "vertices": ["a", "b", "c"],
        "edges": [{"u": "a", "v": "b", "m": ab}, {"u": "a", "v": "c", "m": ac}, {"u": "b", "v": "c", "m": bc}],
    })


S3_244 = tri(4, 2, 4)


@pytest.fixture(scope="module")
def polygons():
    out = {}
    for name, g in (("S1", TRIANGLE_333), ("S2", PATH_33), ("S3", S3_244), ("S4", SQUARE_3222)):
        case = classify_cases(g)
        poly = build_polygon(g, case)
        out[name] = (case, poly, polygon_geodesic(poly))
    return out


# --- classification ----------------------------------------------------------


@pytest.mark.parametrize(
    "graph, situation, word",
    [
        (TRIANGLE_333, "S1", ("c",)),
        (PATH_33, "S2", ("c", "b", "c")),
        (S3_244, "S3", ("c", "b", "c", "a", "b", "c")),
        (SQUARE_3222, "S4", ("c", "d")),
        (tri(3, 2, 6), "S2", ("c", "b", "c")),
    ],
)
def test_classify(graph, situation, word):
    case = classify_cases(graph)
    assert case.situation == situation
    assert witness_element(case) == word
    assert verify_case(case)


def test_path_is_augmented():
    case = classify_cases(PATH_33)
    assert case.augmented == ("b", "c")
    assert case.coefficients["bc"] == INF


def test_tie_break_is_name_order():
    g = tri(4, 5, 6)
    assert classify_cases(g).generators == ("a", "b", "c")


@pytest.mark.parametrize(
    "graph, kind",
    [
        (graph_from_dict({"vertices": ["a", "b"], "edges": [{"u": "a", "v": "b", "m": 3}]}), "rank"),
        (graph_from_dict({"vertices": ["a", "b", "c"], "edges": [{"u": "a", "v": "b", "m": 3}]}), "disconnected"),
        (tri(2, 3, 5), "dimension"),
        (tri(2, 2, 2), "dimension"),
        (
            graph_from_dict({
                "vertices": list("abcd"),
                "edges": [{"u": x, "v": y, "m": 2} for x, y in ("ab", "bc", "cd", "da")],
            }),
            "right-angled",
        ),
    ],
)
def test_preconditions(graph, kind):
    with pytest.raises(PreconditionError) as info:
        classify_cases(graph)
    assert info.value.kind == kind


def test_reducible_joins_fail_dimension_first():
    # a join with an m >= 3 edge always has a triangle with Σ1/m > 1
    g = graph_from_dict({
        "vertices": list("abcd"),
        "edges": [{"u": "a", "v": "b", "m": 3}, {"u": "c", "v": "d", "m": 3}]
        + [{"u": x, "v": y, "m": 2} for x, y in ("ac", "ad", "bc", "bd")],
    })
    with pytest.raises(PreconditionError) as info:
        classify_cases(g)
    assert info.value.kind == "dimension"


def test_random_admissible_graphs_verify():
    for g in admissible_graphs(random.Random(7), 40):
        assert verify_case(classify_cases(g))


# --- gluing ------------------------------------------------------------------


def test_local_group_test():
    assert in_local_group(("c",), ("c", "a"), {"a"})
    assert not in_local_group(("c",), ("a", "c"), {"a"})
    assert in_local_group(("a", "b"), ("a", "b"), set())


def _tile_vertices(poly, tile):
    return {v for tri in poly.triangles if tri.tile == tile for v in tri.corners}


def test_s1_tiles_share_the_c_fan(polygons):
    _, poly, _ = polygons["S1"]
    shared = _tile_vertices(poly, 0) & _tile_vertices(poly, 1)
    assert sorted(poly.vertex_label(v) for v in shared) == ["v_ac", "v_bc", "v_c"]


def test_polygon_sizes(polygons):
    assert len(polygons["S1"][1].triangles) == 12
    assert len(polygons["S4"][1].triangles) == 32
    assert polygons["S4"][1].notes


@pytest.mark.parametrize("name", ["S1", "S2", "S3", "S4"])
def test_link_systoles_at_least_two_pi(polygons, name):
    _, poly, _ = polygons[name]
    assert poly.link_systoles
    assert all(s >= TWO_PI for s in poly.link_systoles.values())


# --- geodesic ----------------------------------------------------------------


def test_trivial_geodesic(polygons):
    _, poly, _ = polygons["S1"]
    geo = polygon_geodesic(poly, poly.source, poly.source)
    assert geo.length == 0 and geo.segments == []


def test_bad_endpoint(polygons):
    _, poly, _ = polygons["S1"]
    with pytest.raises(GeometryError):
        polygon_geodesic(poly, 0, 10**6)


@pytest.mark.parametrize("name", ["S1", "S2", "S3", "S4"])
def test_geodesic_no_longer_than_skeleton(polygons, name):
    _, _, geo = polygons[name]
    assert geo.length <= geo.skeleton_length + 1e-9
    if geo.crosses_open_triangle:
        assert geo.length < geo.skeleton_length - 1e-6
    assert math.isclose(geo.length, sum(s.length for s in geo.segments))


def test_s1_geodesic_is_straight_along_the_skeleton(polygons):
    _, poly, geo = polygons["S1"]
    assert math.isclose(geo.length, 6.0)
    assert not geo.crosses_open_triangle
    assert geo.best.cell == "e_ab"


@pytest.mark.parametrize("name", ["S2", "S3"])
def test_open_triangle_crossings(polygons, name):
    _, _, geo = polygons[name]
    best = geo.best
    assert best.cell == "triangle"
    assert best.clearance >= TOLERANCE
    assert math.isclose(sum(best.barycentric), 1.0)
    assert all(x > 0 for x in best.barycentric)


@pytest.mark.parametrize("name", ["S1", "S2", "S3", "S4"])
def test_carrier_has_trivial_stabiliser(polygons, name):
    # open triangles and the e_s, e_st edges have trivial stabiliser; e_s,st does not
    _, _, geo = polygons[name]
    cell = geo.best.cell
    assert cell == "triangle" or (cell.startswith("e_") and "," not in cell)


# --- certificate -------------------------------------------------------------


@pytest.mark.parametrize("graph", [TRIANGLE_333, PATH_33, SQUARE_3222])
def test_certificate_json(graph):
    cert = emit_certificate(graph)
    data = json.loads(json.dumps(cert.to_dict()))
    assert data["conclusive"]
    for key in ("situation", "generators", "vertex", "witness_word", "crossing", "geodesic", "link_systoles"):
        assert key in data
    assert data["crossing"]["clearance"] >= TOLERANCE
    assert data["link_orbit_evidence"]["unbounded"]


def test_svg():
    svg = to_svg(emit_certificate(PATH_33))
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_inconclusive_is_an_error_type():
    assert issubclass(InconclusiveError, RuntimeError)


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_random_graphs_certify_or_report(seed):
    (g,) = admissible_graphs(random.Random(seed), 1)
    try:
        cert = emit_certificate(g)
    except (InconclusiveError, GeometryError):
        return
    assert cert.conclusive
    assert verify_case(cert.case)
