"""Deficiency, the thinness bound and the synthesized presentations."""
from __future__ import annotations

import random

import pytest
from hypothesis import given

from computads import Graph, fixtures
from computads.computad import groupoidalize, i2, i2_gr
from computads.cw import euler_char, f_top2
from computads.deficiency import (
    Inconclusive,
    NotFair,
    ViolatesBound,
    check_not_thin_bound,
    deficiency_of_category_presentation,
    deficiency_of_presentation,
    lift_to_category_presentation,
    synth_efficient_groupoid,
    synth_monotone,
    synth_strictly_increasing,
)
from computads.errors import NotConnected, NotMonotoneError, NotStrictlyIncreasing
from computads.graph import Monotone, classify_monotone, euler_char_1, is_maximal_weak_tree, maximal_tree
from computads.groups import Yes
from computads.presentation import hom_table, is_thin_category, is_thin_groupoid

from conftest import random_connected_graph, seeds

CIRCLE = Graph.build(["v"], [("f", "v", "v")])
PARALLEL3 = Graph.build(["x", "y"], [("t", "x", "y"), ("u", "x", "y"), ("v", "x", "y")])


def shapes(c):
    return [(x.source.letters if hasattr(x.source, "letters") else x.source.arrows,
             x.target.letters if hasattr(x.target, "letters") else x.target.arrows) for x in c.cells]


def plain_shapes(c):
    return [(x.source.arrows, x.target.arrows) for x in c.cells]


def test_deficiency_examples():
    assert deficiency_of_presentation(fixtures.entity("torus")).deficiency == 1
    tree = Graph.build("abc", [("f", "a", "b"), ("g", "c", "b")])
    r = deficiency_of_presentation(i2_gr(tree))
    assert (r.chi1, r.cells2, r.deficiency, r.bound_ok) == (1, 0, 0, True)
    g = Graph.build(["x"], [("a", "x", "x"), ("b", "x", "x"), ("c", "x", "x")])
    r = deficiency_of_presentation(synth_efficient_groupoid(g))
    assert euler_char_1(g) == -2 and r.cells2 == 3 and r.deficiency == 0


def test_deficiency_needs_connected_base():
    with pytest.raises(NotConnected):
        deficiency_of_presentation(i2_gr(Graph.build(["p", "q"])))


def test_not_thin_bound_examples():
    assert check_not_thin_bound(i2_gr(CIRCLE)) == ViolatesBound(0)
    assert check_not_thin_bound(fixtures.entity("torus")) == ViolatesBound(0)
    assert check_not_thin_bound(synth_efficient_groupoid(PARALLEL3)) == Inconclusive(1)


def test_efficient_examples():
    assert shapes(synth_efficient_groupoid(CIRCLE)) == [((), (("f", 1),))]
    c = synth_efficient_groupoid(PARALLEL3)
    assert shapes(c) == [((("t", 1),), (("u", 1),)), ((("t", 1),), (("v", 1),))]
    tree = Graph.build("abc", [("f", "a", "b"), ("g", "c", "b")])
    assert synth_efficient_groupoid(tree).cells == ()


@given(seeds)
def test_efficient_presentations_are_thin(seed):
    g = random_connected_graph(random.Random(seed))
    c = synth_efficient_groupoid(g)
    assert len(c.cells) == 1 - euler_char_1(g)
    assert isinstance(is_thin_groupoid(c), Yes)
    r = deficiency_of_presentation(c)
    assert r.deficiency == 0 and r.bound_ok
    assert check_not_thin_bound(c) == Inconclusive(1)


def test_lift_examples():
    inc = fixtures.entity("increasing")
    assert plain_shapes(lift_to_category_presentation(inc)) == [(("f",), ("t",))]
    two = Graph.build(["a", "b"], [("u", "a", "b"), ("v", "a", "b")])
    assert plain_shapes(lift_to_category_presentation(two)) == [(("v",), ("u",))]
    assert isinstance(lift_to_category_presentation(fixtures.entity("weak_tree")), NotFair)


@given(seeds)
def test_lift_has_thin_groupoid_reflection(seed):
    """The lift need not be thin as a category; its groupoid reflection is."""
    g = random_connected_graph(random.Random(seed), max_objects=5, max_extra=3, loops=False)
    c = lift_to_category_presentation(g)
    if isinstance(c, NotFair):
        return
    assert len(c.cells) == 1 - euler_char_1(g)
    for cell in c.cells:
        assert cell.source.arrows != cell.target.arrows
        assert cell.source.end == cell.target.end
    assert isinstance(is_thin_groupoid(groupoidalize(c)), Yes)


def test_strictly_increasing_examples():
    inc = fixtures.load("increasing")
    g = inc.entity
    c = synth_strictly_increasing(g, g.subgraph(inc.tree, g.objects))
    assert plain_shapes(c) == [(("f",), ("t",))]
    assert hom_table(c).total() == 3
    chord = Graph.build("123", [("a", "1", "2"), ("b", "2", "3"), ("k", "1", "3")])
    c = synth_strictly_increasing(chord, chord.subgraph(["a", "b"], chord.objects))
    assert plain_shapes(c) == [(("k",), ("a", "b"))]
    assert deficiency_of_category_presentation(c) == 0
    assert synth_strictly_increasing(chord.subgraph(["a", "b"], chord.objects).as_graph(),
                                     chord.subgraph(["a", "b"], chord.objects)).cells == ()
    back = fixtures.entity("nonincreasing")
    with pytest.raises(NotStrictlyIncreasing):
        synth_strictly_increasing(back, back.subgraph(["t"], back.objects))


def test_monotone_examples():
    c = synth_monotone(CIRCLE, CIRCLE.subgraph([], ["v"]))
    assert plain_shapes(c) == [((), ("f",)), ((), ("f",))]
    assert isinstance(is_thin_category(c), Yes)
    assert deficiency_of_category_presentation(c) == -1
    back = fixtures.entity("nonincreasing")
    c = synth_monotone(back, back.subgraph(["t"], back.objects))
    assert plain_shapes(c) == [((), ("f", "t")), ((), ("t", "f"))]
    assert isinstance(is_thin_category(c), Yes)
    assert deficiency_of_category_presentation(c) == -1
    inc = fixtures.entity("increasing")
    t = inc.subgraph(["t"], inc.objects)
    assert synth_monotone(inc, t) == synth_strictly_increasing(inc, t)


def test_monotone_rejects_incomparable():
    g = Graph.build(["r", "a", "b"], [("p", "r", "a"), ("q", "r", "b"), ("f", "a", "b")])
    with pytest.raises(NotMonotoneError):
        synth_monotone(g, g.subgraph(["p", "q"], g.objects))


@given(seeds)
def test_monotone_deficiency_is_minus_n(seed):
    g = random_connected_graph(random.Random(seed), max_objects=5, max_extra=4)
    t = maximal_tree(g)
    if not is_maximal_weak_tree(g, t):
        return
    cls = classify_monotone(g, t)
    if not isinstance(cls, Monotone):
        return
    c = synth_monotone(g, t)
    assert len(c.cells) == 1 - euler_char_1(g) + cls.n
    assert deficiency_of_category_presentation(c) == -cls.n


def test_category_deficiency_of_free_weak_tree():
    g = fixtures.entity("weak_tree")
    assert deficiency_of_category_presentation(i2(g)) == 1 - euler_char_1(g)


@pytest.mark.parametrize("name", ["torus", "delta2dot", "dstr_dot", "x_counterexample", "trivial_group", "z2"])
def test_bound_holds_for_thin_presentations(name):
    c = groupoidalize(fixtures.load(name).as_computad())
    r = deficiency_of_presentation(c)
    if isinstance(is_thin_groupoid(c), Yes):
        assert r.bound_ok
    if isinstance(check_not_thin_bound(c), ViolatesBound):
        assert not isinstance(is_thin_groupoid(c), Yes)
    assert euler_char(f_top2(c)) == r.chi1 + r.cells2
