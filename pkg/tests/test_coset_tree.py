import random

import pytest
from hypothesis import given

from artin import coset_tree as ct
from artin.dihedral import DihedralArtinGroup
from artin.freeword import alternating, concat, invert, parse, words_up_to
from artin.garside import normal_form
from strategies import coefficients, short_words, words


def test_small_balls():
    assert len(ct.build_ball(3, 0).dist) == 1
    ball = ct.build_ball(3, 2)
    assert len(ball.dist) == 7
    assert len(ball.cosets()) == 5 and len(ball.simplices()) == 2


@pytest.mark.parametrize("m", [3, 4, 5])
def test_ball_is_a_tree_with_expected_valences(m):
    ball = ct.build_ball(m, 6)
    assert ball.is_acyclic()
    assert ball.interior_valences() == {2, m}


@pytest.mark.parametrize("m", [3, 4, 5])
def test_generator_moves_two_steps(m):
    assert ct.tree_distance(ct.BASE, ct.coset_of(m, "a")) == 2


def test_action_examples():
    assert ct.act(3, "a b a", ct.BASE) == ct.BASE
    assert ct.act(3, "a b", ct.BASE) == ct.coset_of(3, "a b")
    assert ct.tree_distance(ct.BASE, ct.coset_of(3, "a b")) == 2
    assert ct.tree_distance(ct.BASE, ct.BASE) == 0


@given(short_words, short_words, coefficients)
def test_action_law(g, h, m):
    node = ct.coset_of(m, "b a^2")
    assert ct.act(m, g, ct.act(m, h, node)) == ct.act(m, concat(g, h), node)
    simplex = ("S", node[1], node[1][-1].last)
    assert ct.act(m, g, ct.act(m, h, simplex)) == ct.act(m, concat(g, h), simplex)


@given(words, coefficients)
def test_distance_counts_atoms(g, m):
    assert ct.tree_distance(ct.BASE, ct.coset_of(m, g)) == 2 * len(normal_form(m, g).atoms)


@given(short_words, short_words)
def test_action_is_isometric(g, h):
    x, y = ct.coset_of(3, h), ct.coset_of(3, "a b^-1 a")
    assert ct.tree_distance(ct.act(3, g, x), ct.act(3, g, y)) == ct.tree_distance(x, y)


def test_ball_membership_is_enforced():
    ball = ct.build_ball(3, 2)
    with pytest.raises(ct.BallTooSmallError):
        ct.tree_distance(ct.BASE, ct.coset_of(3, "a b^-1 a b^-1"), ball)


def test_budget(monkeypatch):
    with pytest.raises(ct.BudgetExceededError):
        ct.build_ball(3, 12, budget=50)
    monkeypatch.setenv("ARTIN_BUDGET", "40")
    with pytest.raises(ct.BudgetExceededError):
        ct.build_ball(3, 12)


def test_translation_lengths():
    assert ct.translation_length(3, alternating("a", 3)) == 0
    assert ct.translation_length(3, "a b") == 0
    assert ct.translation_length(3, "a") == 2
    assert ct.translation_length(3, "a b^-1") == 4


def test_axis_of_generator():
    a = ct.coset_of(3, "a")
    assert ct.axis_of(3, "a") == [ct.BASE, ("S", (), "a"), a]
    with pytest.raises(ct.EllipticError):
        ct.axis_of(3, "a b")


@given(short_words)
def test_axis_equivariance(h):
    g = parse("a b^-1")
    conj = concat(concat(h, g), invert(h))
    length = ct.translation_length(3, conj)
    assert length == ct.translation_length(3, g)
    for node in ct.axis_of(3, g):
        x = ct.act(3, h, node)
        assert ct.tree_distance(x, ct.act(3, conj, x)) == length


def test_axes_through_base():
    axes = ct.axes_through(3, ct.BASE)
    assert axes == {ct.axis_key(3, (), "a"), ct.axis_key(3, (), "b")}
    gamma_a = ct.axis_key(3, (), "a")
    assert ct.on_axis(3, gamma_a, ct.coset_of(3, "a"))
    assert ct.on_axis(3, gamma_a, ct.coset_of(3, "a^-7"))
    assert not ct.on_axis(3, gamma_a, ct.coset_of(3, "a b"))


def test_axis_key_ignores_anchor_and_direction():
    # a^5 lies on γ_a, so the line through it in direction a is γ_a itself
    assert ct.axis_key(3, ct.coset_of(3, "a^5")[1], "a") == ct.axis_key(3, (), "a")


def test_dhat_examples():
    assert ct.dhat_distance(3, ct.BASE, ct.coset_of(3, "a^1000")).upper == 2
    assert ct.dhat_distance(3, ct.BASE, ct.BASE).upper == 0
    res = ct.dhat_distance(3, ct.BASE, ct.coset_of(3, "a^5 b^-3"))
    assert res.upper <= 4
    assert ct.check_syllable_upper(3, "a^5 b^-3")
    assert ct.check_syllable_upper(3, "")


@given(words, coefficients)
def test_dhat_bounds(g, m):
    res = ct.dhat_distance(m, ct.BASE, ct.coset_of(m, g))
    assert res.lower <= res.upper <= 2 * max(res.lower, 0)
    assert res.upper <= res.tree_distance
    assert ct.check_syllable_upper(m, g)


def test_dp_matches_bfs_on_a_ball():
    ball = ct.build_ball(3, 8)
    cone = ct.ConeOff(ball)
    cosets = sorted(ball.cosets())
    rng = random.Random(7)
    for _ in range(40):
        x, y = rng.choice(cosets), rng.choice(cosets)
        res = ct.dhat_distance(3, x, y, cone)
        assert res.exact, (x, y, res)


@pytest.mark.parametrize("m", [3, 4])
def test_edge_stabiliser_is_the_centre(m):
    G = DihedralArtinGroup(m)
    edge = (ct.BASE, ("S", (), "a"))
    for w in words_up_to(4):
        fixed = all(ct.act(m, w, node) == node for node in edge)
        assert fixed == G.is_central(w)
