"""Paths, walks, enumeration and recognition of free categories."""
from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from computads import INFINITE, Graph
from computads.errors import NotComposable
from computads.free import (
    FinOrdinal,
    FiniteCategoryTable,
    Free,
    NotFree,
    NotTotalOrder,
    all_paths,
    compose_paths,
    compose_walks,
    enumerate_paths,
    free_reduce,
    hom_count_free,
    identity_path,
    invert_walk,
    make_path,
    recognize_free_category,
    reduce_walk,
    table_of_paths,
    ulf_factorize,
    classify_total_order,
    validate_table,
)

from conftest import random_connected_graph, random_walk, seeds

CIRCLE = Graph.build(["v"], [("f", "v", "v")])
WEAK_TREE = Graph.build(["w", "x", "y", "z"], [("a", "w", "x"), ("b", "y", "x"), ("c", "y", "z"), ("e", "w", "z")])
CHAIN = Graph.build("xyz", [("a", "x", "y"), ("b", "y", "z")])
PARALLEL2 = Graph.build(["a", "b"], [("u", "a", "b"), ("v", "a", "b")])


def test_composition_basics():
    p = make_path(CHAIN, ["a"])
    q = make_path(CHAIN, ["b"])
    assert compose_paths(identity_path(CHAIN, "x"), p) == p
    pq = compose_paths(p, q)
    assert pq.arrows == ("a", "b") and len(pq) == 2
    with pytest.raises(NotComposable):
        compose_paths(q, p)
    with pytest.raises(NotComposable):
        make_path(CHAIN, ["b", "a"])


def test_length_is_additive():
    g = Graph.build(["v"], [("f", "v", "v"), ("g", "v", "v")])
    p = make_path(g, ["f", "g", "f"])
    q = make_path(g, ["g", "g"])
    assert len(compose_paths(p, q)) == 5


def test_ulf_factorization():
    g = Graph.build("wxyz", [("a", "w", "x"), ("b", "x", "y"), ("c", "y", "z")])
    p = make_path(g, ["a", "b", "c"])
    parts = ulf_factorize(p)
    assert [x.arrows for x in parts] == [("a",), ("b",), ("c",)]
    acc = identity_path(g, "w")
    for x in parts:
        acc = compose_paths(acc, x)
    assert acc == p
    assert ulf_factorize(identity_path(g, "w")) == []


def test_walk_laws():
    g = Graph.build(["x", "y"], [("a", "x", "y"), ("b", "x", "y")])
    assert reduce_walk(g, [("a", 1), ("a", -1)]).letters == ()
    w = reduce_walk(g, [("a", 1), ("b", -1)])
    assert invert_walk(w).letters == (("b", 1), ("a", -1))
    assert compose_walks(w, invert_walk(w)).letters == ()


def test_enumerate_paths_examples():
    assert [p.arrows for p in enumerate_paths(WEAK_TREE, "w", "z", 5)] == [("e",)]
    assert len(enumerate_paths(CIRCLE, "v", "v", 3)) == 4
    assert len(enumerate_paths(PARALLEL2, "a", "b", 5)) == 2


def test_hom_count_examples():
    assert hom_count_free(PARALLEL2, "a", "b") == 2
    assert hom_count_free(CIRCLE, "v", "v") is INFINITE
    assert hom_count_free(WEAK_TREE, "y", "x") == 1
    assert hom_count_free(WEAK_TREE, "x", "y") == 0


def _table(objects, morphisms, identities, compose):
    return FiniteCategoryTable(tuple(objects), tuple(morphisms), tuple(identities), tuple(compose))


def test_recognize_free_examples():
    two = _table(["0", "1"], [("i0", "0", "0"), ("i1", "1", "1"), ("f", "0", "1")],
                 [("0", "i0"), ("1", "i1")],
                 [("i0", "i0", "i0"), ("i0", "f", "f"), ("f", "i1", "f"), ("i1", "i1", "i1")])
    res = recognize_free_category(two)
    assert isinstance(res, Free) and [a.name for a in res.graph.arrows] == ["f"]
    iso = _table(["0", "1"], [("i0", "0", "0"), ("i1", "1", "1"), ("f", "0", "1"), ("g", "1", "0")],
                 [("0", "i0"), ("1", "i1")],
                 [("i0", "i0", "i0"), ("i0", "f", "f"), ("f", "i1", "f"), ("i1", "i1", "i1"),
                  ("i1", "g", "g"), ("g", "i0", "g"), ("f", "g", "i0"), ("g", "f", "i1")])
    assert recognize_free_category(iso) == NotFree("nontrivial isomorphism")


def x_table():
    """Two arrows f, g: a -> b and h: b -> c with f.h = g.h (diagrammatic)."""
    ids = [("a", "ia"), ("b", "ib"), ("c", "ic")]
    mor = [("ia", "a", "a"), ("ib", "b", "b"), ("ic", "c", "c"),
           ("f", "a", "b"), ("g", "a", "b"), ("h", "b", "c"), ("k", "a", "c")]
    comp = [("ia", "ia", "ia"), ("ib", "ib", "ib"), ("ic", "ic", "ic"),
            ("ia", "f", "f"), ("ia", "g", "g"), ("ia", "k", "k"), ("ib", "h", "h"),
            ("f", "ib", "f"), ("g", "ib", "g"), ("h", "ic", "h"), ("k", "ic", "k"),
            ("f", "h", "k"), ("g", "h", "k")]
    return _table("abc", mor, ids, comp)


def test_recognize_non_unique_factorization():
    t = x_table()
    assert validate_table(t) == []
    assert recognize_free_category(t) == NotFree("non-unique factorization")


def test_total_order_examples():
    chain = Graph.build("0123", [("a", "0", "1"), ("b", "1", "2"), ("c", "2", "3")])
    assert classify_total_order(chain) == FinOrdinal(4)
    assert isinstance(classify_total_order(PARALLEL2), NotTotalOrder)
    assert classify_total_order(Graph.build(["x"])) == FinOrdinal(1)


@given(st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from([1, -1])), max_size=12))
def test_free_reduce_idempotent_and_reduced(letters):
    r = free_reduce(letters)
    assert free_reduce(r) == r
    assert all(not (x == y and e == -f) for (x, e), (y, f) in zip(r, r[1:]))


@given(seeds)
def test_walk_inverse_law(seed):
    rng = random.Random(seed)
    g = random_connected_graph(rng)
    x = rng.choice(g.objects)
    letters, _ = random_walk(rng, g, x, rng.randint(0, 8))
    w = reduce_walk(g, letters, x)
    assert compose_walks(w, invert_walk(w)).letters == ()
    assert invert_walk(invert_walk(w)) == w


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=4))
def test_hom_count_matches_binomial_on_grid(n, m):
    """Monotone lattice paths in an n x m grid: C(n+m, n)."""
    objects = [f"{i},{j}" for i in range(n + 1) for j in range(m + 1)]
    arrows = []
    for i in range(n + 1):
        for j in range(m + 1):
            if i < n:
                arrows.append((f"r{i}{j}", f"{i},{j}", f"{i + 1},{j}"))
            if j < m:
                arrows.append((f"u{i}{j}", f"{i},{j}", f"{i},{j + 1}"))
    g = Graph.build(objects, arrows)
    assert hom_count_free(g, "0,0", f"{n},{m}") == comb(n + m, n)
    assert len(enumerate_paths(g, "0,0", f"{n},{m}")) == comb(n + m, n)


@given(seeds)
def test_table_of_paths_is_free(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    objects = [str(i) for i in range(n)]
    arrows = [(f"a{k}", str(i), str(j)) for k, (i, j) in
              enumerate((rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 4))) if i < j]
    g = Graph.build(objects, arrows)
    t = table_of_paths(g)
    assert validate_table(t) == []
    res = recognize_free_category(t)
    assert isinstance(res, Free)
    assert sorted(a.name for a in res.graph.arrows) == sorted(a[0] for a in arrows)
    assert len(t.morphisms) == len(all_paths(g))
