import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from artin.deligne import (
    INF,
    TWO_PI,
    DefiningGraph,
    DimensionError,
    GraphError,
    V_EMPTY,
    augment,
    build_domain,
    check_link_condition,
    girth,
    graph_from_dict,
    is_reducible,
    is_right_angled,
    is_two_dimensional,
    link,
    link_dihedral,
    link_empty,
    link_free,
    load_graph,
    parse_vertex,
    systole,
    v_gen,
    v_pair,
)


def tri(ab, ac, bc):
    return graph_from_dict({
        "vertices": ["a", "b", "c"],
        "edges": [{"u": "a", "v": "b", "m": ab}, {"u": "a", "v": "c", "m": ac}, {"u": "b", "v": "c", "m": bc}],
    })


def square(ab, bc, cd, da):
    names = "abcd"
    ms = (ab, bc, cd, da)
    return graph_from_dict({
        "vertices": list(names),
        "edges": [{"u": names[i], "v": names[(i + 1) % 4], "m": ms[i]} for i in range(4)],
    })


# --- parsing -----------------------------------------------------------------


@pytest.mark.parametrize(
    "edges, fragment",
    [
        ([{"u": "a", "v": "b", "m": 1}], "< 2"),
        ([{"u": "a", "v": "a", "m": 3}], "self-loop"),
        ([{"u": "a", "v": "z", "m": 3}], "unknown vertex"),
        ([{"u": "a", "v": "b", "m": 3}, {"u": "b", "v": "a", "m": 4}], "duplicate edge"),
        ([{"u": "a", "v": "b", "m": 2.5}], "neither"),
        ([{"u": "a", "v": "b"}], "malformed"),
    ],
)
def test_bad_graphs_rejected(edges, fragment):
    with pytest.raises(GraphError, match=fragment):
        graph_from_dict({"vertices": ["a", "b", "c"], "edges": edges})


def test_duplicate_vertex_rejected():
    with pytest.raises(GraphError):
        graph_from_dict({"vertices": ["a", "a"], "edges": []})


def test_inf_edge_is_absent():
    g = tri(3, 3, "inf")
    assert g.m("b", "c") == INF
    assert ("b", "c", INF) not in g.edges()
    assert g.triangles() == []


def test_round_trip_through_file(tmp_path):
    g = tri(3, 4, 5)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_dict()))
    assert load_graph(path) == g


def test_invalid_json(tmp_path):
    path = tmp_path / "g.json"
    path.write_text("{not json")
    with pytest.raises(GraphError, match="invalid JSON"):
        load_graph(path)


# --- structural predicates ---------------------------------------------------


@pytest.mark.parametrize("ms, ok", [((3, 3, 3), True), ((2, 3, 5), False), ((2, 4, 4), True), ((2, 3, 6), True), ((2, 2, 7), False)])
def test_two_dimensional(ms, ok):
    assert is_two_dimensional(tri(*ms)).ok is ok


def test_discrete_graph_is_not_two_dimensional():
    g = DefiningGraph(("a", "b", "c"))
    assert not is_two_dimensional(g).ok


def test_reducible_and_right_angled():
    assert is_reducible(square(2, 2, 2, 2))
    assert is_right_angled(square(2, 2, 2, 2))
    assert not is_reducible(tri(3, 3, 3))
    assert not is_right_angled(square(3, 2, 2, 2))


# --- fundamental domain ------------------------------------------------------


def test_domain_counts():
    d = build_domain(tri(3, 3, 3))
    assert len(d.vertices) == 7
    assert len(d.triangles) == 6
    assert len(build_domain(square(3, 2, 2, 2)).triangles) == 8


@pytest.mark.parametrize("m", [2, 3, 4, 7])
def test_triangle_angles_sum_to_pi(m):
    d = build_domain(tri(m, 3, 3) if m > 2 else tri(2, 4, 4))
    for t in d.triangles:
        assert sum(t.angles) == 1


def test_build_domain_refuses_spherical():
    with pytest.raises(DimensionError):
        build_domain(tri(2, 3, 5))


def test_augment_identity_when_finite():
    g = tri(3, 3, 5)
    aug = augment(g, "b", "c")
    assert not aug.changed
    assert aug.graph == g


def test_augment_inf_pair():
    aug = augment(tri(3, 3, "inf"), "b", "c")
    assert aug.changed
    t = aug.domain.triangle("b", "c")
    assert sorted(t.angles) == [Fraction(1, 12), Fraction(5, 12), Fraction(1, 2)]
    assert frozenset("bc") in aug.graph.free_pairs


# --- links -------------------------------------------------------------------


def test_link_empty_333_is_hexagon():
    lk = link_empty(tri(3, 3, 3))
    assert len(lk.vertices) == 6
    assert len(lk.edges) == 6
    assert systole(lk) == TWO_PI


def test_link_empty_236():
    assert systole(link_empty(tri(2, 3, 6))) == TWO_PI


@pytest.mark.parametrize("m", [3, 4, 5])
def test_dihedral_link_girth(m):
    lk = link_dihedral(m, 2 * m)
    assert girth(lk) == 4 * m
    assert systole(lk) == TWO_PI


def test_free_link_is_forest():
    assert link_free(6).is_forest()


def test_parse_vertex():
    g = tri(3, 3, 3)
    assert parse_vertex("v_∅", g) == V_EMPTY
    assert parse_vertex("v_a", g) == v_gen("a")
    assert parse_vertex("v_ca", g) == v_pair("a", "c")
    with pytest.raises(KeyError):
        parse_vertex("v_zz", g)


def test_link_at_infinite_pair_is_refused():
    with pytest.raises(KeyError):
        link(tri(3, 3, "inf"), v_pair("b", "c"))


def test_link_condition():
    assert check_link_condition(tri(3, 3, 3)).ok
    with pytest.raises(DimensionError):
        check_link_condition(tri(2, 3, 5))


# --- v_∅ systole against Σ1/m ------------------------------------------------

labels = st.sampled_from([2, 3, 4, 5, 6, "inf", "inf"])


@st.composite
def graphs(draw):
    n = draw(st.integers(3, 5))
    names = "abcde"[:n]
    edges = [{"u": s, "v": t, "m": draw(labels)} for s, t in combinations(names, 2)]
    return graph_from_dict({"vertices": list(names), "edges": edges})


def _recip(m):
    return Fraction(0) if m == INF else Fraction(1, m)


@given(graphs())
def test_empty_link_systole_iff_triangle_condition(g):
    flat = all(
        _recip(g.m(x, y)) + _recip(g.m(x, z)) + _recip(g.m(y, z)) <= 1
        for x, y, z in combinations(g.vertices, 3)
        if INF not in (g.m(x, y), g.m(x, z), g.m(y, z))
    )
    assert (systole(link_empty(g)) >= TWO_PI) == flat
