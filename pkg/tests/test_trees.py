import random

import pytest

from conftest import W
from freesub.stallings import basis, fiber_product, fold_from_generators
from freesub.trees import (
    INCOMPARABLE,
    TreeEdge,
    Vertex,
    act_edge,
    act_vertex,
    build_ball,
    certify_order_essential,
    copies_connected,
    count_orbits,
    edge_less,
    induce,
    invariant_subforest,
)
from freesub.voltage import random_word
from freesub.words import Word

ONE = Word(2)


def E(copy, anchor, gen):
    return TreeEdge(copy, W(anchor) if anchor != "1" else ONE, gen)


def ball_size(k, r):
    return 1 + 2 * k * ((2 * k - 1) ** r - 1) // (2 * k - 2)


@pytest.mark.parametrize("k,r,nv", [(2, 1, 5), (2, 2, 17), (1, 3, 7), (3, 2, 37)])
def test_ball_counts(k, r, nv):
    b = build_ball(k, r)
    assert len(b.vertices) == nv
    assert len(b.edges) == nv - 1
    if k >= 2:
        assert nv == ball_size(k, r)


def test_build_ball_errors():
    with pytest.raises(ValueError):
        build_ball(2, 0)


def test_edge_less_examples():
    b = induce(build_ball(2, 2), 2)
    e, f = E(0, "1", 1), E(0, "1", 2)
    assert edge_less(b, e, f) is True
    assert edge_less(b, f, e) is False
    assert edge_less(b, e, e) is False
    assert edge_less(b, e, E(1, "1", 1)) is INCOMPARABLE


def test_edge_order_total_within_copy():
    b = build_ball(2, 2)
    ranks = sorted(b.edge_rank.values())
    assert ranks == list(range(len(b.edges)))


def test_induce_action_example():
    b = induce(build_ball(2, 3), 3)
    v = act_vertex(b, (W("x"), 1), Vertex(0, ONE))
    assert v == Vertex(1, W("x"))
    u = Vertex(2, W("yX"))
    assert act_vertex(b, (ONE, 0), u) == u
    one, plain = induce(build_ball(2, 3), 1), build_ball(2, 3)
    assert (one.vertices, one.edges, one.edge_rank) == (plain.vertices, plain.edges, plain.edge_rank)


def test_action_preserves_order():
    rng = random.Random(3)
    b = induce(build_ball(2, 4), 3)
    edges = list(b.edges)
    checked = 0
    for _ in range(3000):
        e, f = rng.sample(edges, 2)
        g = (random_word(rng, 2, 3, 0), rng.randrange(3))
        ge, gf = act_edge(b, g, e), act_edge(b, g, f)
        if b.contains_edge(ge) and b.contains_edge(gf):
            checked += 1
            assert edge_less(b, e, f) == edge_less(b, ge, gf)
    assert checked > 100


def test_action_free_on_edges():
    rng = random.Random(4)
    b = induce(build_ball(2, 3), 3)
    for _ in range(500):
        g = (random_word(rng, 2, 4, 0), rng.randrange(3))
        if not g[0].letters and g[1] == 0:
            continue
        for e in rng.sample(list(b.edges), 10):
            assert act_edge(b, g, e) != e


def test_subforest_axis():
    b = build_ball(2, 3)
    sub = invariant_subforest(b, [(W("x"), 0)], [Vertex(0, ONE)])
    assert {v.word for v in sub.vertices} == {W(s) for s in ["1", "x", "xx", "xxx", "X", "XX", "XXX"]}
    assert len(sub.edges) == 6
    assert sub.truncated


def test_subforest_trivial_and_full():
    b = build_ball(2, 3)
    p = Vertex(0, W("xy"))
    sub = invariant_subforest(b, [], [p])
    assert sub.vertices == (p,) and sub.edges == ()
    whole = invariant_subforest(b, [], b.vertices)
    assert set(whole.vertices) == set(b.vertices)
    assert set(whole.edges) == set(b.edges)
    with pytest.raises(ValueError):
        invariant_subforest(b, [], [])


def test_subforest_connected_per_copy():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 3)
        b = induce(build_ball(2, 3), n)
        gens = [(random_word(rng, 2, 3), rng.randrange(n)) for _ in range(2)]
        pts = rng.sample(list(b.vertices), 2)
        sub = invariant_subforest(b, gens, pts)
        assert set(pts) <= set(sub.vertices)
        assert copies_connected(sub)


def test_count_orbits_examples():
    b = build_ball(2, 3)
    f2 = [(W("x"), 0), (W("y"), 0)]
    assert count_orbits(b, f2, b.edges) == 2
    assert count_orbits(b, f2, []) == 0
    b3 = induce(b, 3)
    assert count_orbits(b3, [(W("x"), 0), (W("y"), 0), (ONE, 1)], b3.edges) == 2
    assert count_orbits(b3, f2, b3.edges) == 6


def test_certify_axis_has_no_essential_edges():
    b = build_ball(2, 4)
    for depth in (2, 3):
        cert = certify_order_essential(b, [(W("x"), 0)], depth)
        assert cert.orbit_count == 0


def test_certify_free_group():
    b = build_ball(2, 5)
    cert = certify_order_essential(b, [(W("x"), 0), (W("y"), 0)], 2)
    assert cert.orbit_count == 1


def test_certify_trivial_group_singletons():
    b = build_ball(2, 3)
    cert = certify_order_essential(b, [], 1, points=b.vertices)
    assert cert.orbit_count == len(cert.certified)


def test_certify_depth_too_large():
    with pytest.raises(ValueError):
        certify_order_essential(build_ball(2, 2), [], 3)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("gens,rbar", [("x, y", 1), ("xx, y, xyX", 2)])
def test_certified_orbits_scale_with_copies(n, gens, rbar):
    b = induce(build_ball(2, 5), n)
    cert = certify_order_essential(b, [(W(s.strip()), 0) for s in gens.split(",")], 2)
    assert cert.orbit_count == n * rbar


def test_orbit_intersection_sample():
    rng = random.Random(6)
    b = build_ball(2, 3)
    for _ in range(15):
        ga = [random_word(rng, 2, 3) for _ in range(2)]
        gb = [random_word(rng, 2, 3) for _ in range(2)]
        meet = basis(fiber_product(fold_from_generators(ga, 2), fold_from_generators(gb, 2)))
        pa, pb = rng.sample(list(b.vertices), 2), rng.sample(list(b.vertices), 2)
        y = invariant_subforest(b, [(w, 0) for w in ga], pa)
        z = invariant_subforest(b, [(w, 0) for w in gb], pb)
        common = set(y.edges) & set(z.edges)
        lhs = count_orbits(b, [(w, 0) for w in meet], common)
        assert lhs <= count_orbits(b, [(w, 0) for w in ga], y.edges) * count_orbits(
            b, [(w, 0) for w in gb], z.edges
        )
