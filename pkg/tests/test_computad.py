"""2-computads: construction, validation, adjunction data, images and collapse."""
from __future__ import annotations

import random

import pytest
from hypothesis import given

from computads import INFINITE, Computad2, Graph, GroupoidalComputad2, SubComputad, TwoCell, computad
from computads.computad import (
    Truncated,
    Unbounded,
    WordPresentation,
    graph_codomain,
    graph_domain,
    groupoidalize,
    i2,
    i2_gr,
    image_subgraph,
    quotient_collapse,
    restrict,
    sigma2,
    sub_of_tree,
    suspend,
    suspend_presentation,
    u2,
    validate_computad,
)
from computads.deficiency import synth_efficient_groupoid
from computads.errors import NotSubcomputad, UnknownGenerator
from computads.free import Path
from computads.graph import maximal_tree, path_counts_from, topological_order
from computads.presentation import hom_table, is_thin_category

from conftest import random_computad, random_connected_graph, seeds

CIRCLE = Graph.build(["v"], [("f", "v", "v")])


def torus():
    return computad(["x"], [("a", "x", "x"), ("b", "x", "x")], [("c", ["a", "b"], ["b", "a"])])


def delta2dot():
    return computad(["0", "1", "2"],
                    [("d", "0", "1"), ("s0", "2", "1"), ("d0", "1", "2"), ("d1", "1", "2")],
                    [("theta", ["d", "d1"], ["d", "d0"]), ("n0", ["d0", "s0"], [], "1"), ("n1", [], ["d1", "s0"], "1")])


def test_validation():
    assert validate_computad(torus()) == []
    g = Graph.build(["x", "y"], [("f", "x", "y"), ("g", "y", "x")])
    bad = Computad2(g, (TwoCell("c", Path(g, "x", ("f",)), Path(g, "x", ("f", "g"))),))
    assert any("not parallel" in p for p in validate_computad(bad))
    ghost = Computad2(g, (TwoCell("c", Path(g, "x", ("h",)), Path(g, "x", ("f",))),))
    assert any("unknown arrow" in p for p in validate_computad(ghost))


def test_i2_u2():
    c = i2(CIRCLE)
    assert c.cells == () and u2(c) == CIRCLE
    assert u2(torus()) == Graph.build(["x"], [("a", "x", "x"), ("b", "x", "x")])
    table = hom_table(c)
    assert table.sizes[("v", "v")] is INFINITE


@given(seeds)
def test_u2_after_i2_is_identity(seed):
    g = random_connected_graph(random.Random(seed))
    assert u2(i2(g)) == g
    assert u2(groupoidalize(i2(g))) == g
    assert groupoidalize(i2(g)) == i2_gr(g)


def test_sigma2_single_arrow():
    g = Graph.build(["x", "y"], [("a", "x", "y")])
    c = sigma2(g)
    pairs = {(x.source.arrows, x.target.arrows, x.start) for x in c.cells}
    assert pairs == {((), (), "x"), ((), (), "y"), (("a",), ("a",), "x")}


def test_sigma2_four_arrow_example():
    g = Graph.build(["p", "q", "r", "s"], [("a", "p", "q"), ("b", "q", "r"), ("x", "q", "s"), ("y", "s", "r")])
    c = sigma2(g)
    pairs = {(x.source.arrows, x.target.arrows) for x in c.cells}
    for pair in [(("x", "y"), ("b",)), (("b",), ("x", "y")), (("a", "b"), ("a", "x", "y")), (("a", "x", "y"), ("a", "b"))]:
        assert pair in pairs
    off_diagonal = [p for p in pairs if p[0] != p[1]]
    assert len(off_diagonal) == 4
    assert is_thin_category(c)


def test_sigma2_cyclic():
    assert isinstance(sigma2(CIRCLE), Unbounded)
    t = sigma2(CIRCLE, 2)
    assert isinstance(t, Truncated) and len(t.computad.cells) == 9


@given(seeds)
def test_sigma2_cell_count_matches_path_count_dp(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    arrows = [(f"a{k}", str(i), str(j)) for k, (i, j) in
              enumerate(sorted((rng.randrange(n), rng.randrange(n))) for _ in range(rng.randint(0, 6))) if i < j]
    g = Graph.build([str(i) for i in range(n)], arrows)
    order = topological_order(g)
    expected = sum(v * v for x in g.objects for v in path_counts_from(g, x, order).values())
    assert len(sigma2(g).cells) == expected


def test_groupoidalize_is_data_identical():
    t = groupoidalize(torus())
    assert isinstance(t, GroupoidalComputad2)
    assert t.cells[0].source.letters == (("a", 1), ("b", 1))
    assert u2(t) == u2(torus())


def test_images():
    assert image_subgraph(i2(CIRCLE)).arrows == ()
    assert set(image_subgraph(torus()).arrows) == {"a", "b"}


@given(seeds)
def test_efficient_cells_split_by_tree(seed):
    g = random_connected_graph(random.Random(seed))
    t = maximal_tree(g)
    c = synth_efficient_groupoid(g, t)
    assert set(graph_domain(c).arrows) <= set(t.arrows)
    assert not set(graph_codomain(c).arrows) & set(t.arrows)


def test_collapse_delta2dot_tree():
    c = delta2dot()
    q = quotient_collapse(c, SubComputad(("0", "1", "2"), ("d", "s0"), ()))
    assert len(q.base.objects) == 1
    assert [a.name for a in q.base.arrows] == ["d0", "d1"]
    shapes = {x.name: (x.source.arrows, x.target.arrows) for x in q.cells}
    assert shapes == {"theta": (("d1",), ("d0",)), "n0": (("d0",), ()), "n1": ((), ("d1",))}


def test_collapse_trivial_cases():
    c = delta2dot()
    assert quotient_collapse(c, SubComputad()) == c
    whole = SubComputad(tuple(c.base.objects), tuple(a.name for a in c.base.arrows), tuple(x.name for x in c.cells))
    q = quotient_collapse(c, whole)
    assert len(q.base.objects) == 1 and q.base.arrows == () and q.cells == ()
    with pytest.raises(NotSubcomputad):
        quotient_collapse(c, SubComputad(("0",), ("d",), ()))


def test_restrict():
    c = delta2dot()
    r = restrict(c, SubComputad(("1", "2"), ("s0", "d0", "d1"), ("n0", "n1")))
    assert [x.name for x in r.cells] == ["n0", "n1"] and r.base.objects == ("1", "2")


def test_suspensions():
    nat = suspend_presentation("monoid", ["a"], [])
    assert len(nat.base.objects) == 1 and nat.cells == ()
    tor = suspend(WordPresentation("group", ("a", "b"), (((("a", 1), ("b", 1)), (("b", 1), ("a", 1))),)))
    assert isinstance(tor, GroupoidalComputad2) and tor.cells[0].source.letters == (("a", 1), ("b", 1))
    term = suspend_presentation("monoid", ["a"], [(["a"], [])])
    table = hom_table(term)
    assert table.sizes == {("*", "*"): 1}
    with pytest.raises(UnknownGenerator):
        suspend_presentation("monoid", ["a"], [(["b"], [])])


@given(seeds)
def test_random_computads_validate(seed):
    c = random_computad(random.Random(seed))
    assert validate_computad(c) == []
    t = maximal_tree(c.base)
    q = quotient_collapse(c, sub_of_tree(t))
    assert len(q.base.objects) == 1
    assert len(q.base.arrows) == len(c.base.arrows) - len(t.arrows)
    assert validate_computad(q) == []
