"""Finite directed multigraphs, reflexive graphs and their tree structures.

Everything iterates in declaration order, so spanning trees and other
witnesses are reproducible from the input file alone.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import (
    InvalidGraph,
    NotConnected,
    NotMaximalWeakTree,
    SizeLimitExceeded,
)

FAIR_SEARCH_LIMIT = 16


class Arrow(NamedTuple):
    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class Graph:
    """A multigraph with named objects and arrows.

    Construction does not validate; use `validate_graph` or `Graph.checked`.
    """

    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    @classmethod
    def build(cls, objects: Iterable[str], arrows: Iterable[tuple[str, str, str]] = ()) -> "Graph":
        return cls(tuple(objects), tuple(Arrow(*a) for a in arrows))

    @classmethod
    def checked(cls, objects: Iterable[str], arrows: Iterable[tuple[str, str, str]] = ()) -> "Graph":
        g = cls.build(objects, arrows)
        problems = validate_graph(g)
        if problems:
            raise InvalidGraph("; ".join(problems))
        return g

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def object_index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.objects)}

    @cached_property
    def out_arrows(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = {x: [] for x in self.objects}
        for a in self.arrows:
            out.setdefault(a.dom, []).append(a)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def in_arrows(self) -> dict[str, tuple[Arrow, ...]]:
        inc: dict[str, list[Arrow]] = {x: [] for x in self.objects}
        for a in self.arrows:
            inc.setdefault(a.cod, []).append(a)
        return {x: tuple(v) for x, v in inc.items()}

    @cached_property
    def incident(self) -> dict[str, tuple[Arrow, ...]]:
        """Arrows touching each object, in declaration order, loops once."""
        inc: dict[str, list[Arrow]] = {x: [] for x in self.objects}
        for a in self.arrows:
            inc[a.dom].append(a)
            if a.cod != a.dom:
                inc[a.cod].append(a)
        return {x: tuple(v) for x, v in inc.items()}

    def dom(self, name: str) -> str:
        return self.arrow_map[name].dom

    def cod(self, name: str) -> str:
        return self.arrow_map[name].cod

    def has_arrow(self, name: str) -> bool:
        return name in self.arrow_map

    def has_object(self, x: str) -> bool:
        return x in self.object_index

    def subgraph(self, arrows: Iterable[str], objects: Iterable[str] | None = None) -> "Subgraph":
        names = set(arrows)
        arr = tuple(a.name for a in self.arrows if a.name in names)
        if objects is None:
            touched = {self.dom(a) for a in arr} | {self.cod(a) for a in arr}
            obj = tuple(x for x in self.objects if x in touched)
        else:
            keep = set(objects)
            obj = tuple(x for x in self.objects if x in keep)
        return Subgraph(self, obj, arr)

    def full_subgraph(self, objects: Iterable[str]) -> "Subgraph":
        keep = set(objects)
        arr = [a.name for a in self.arrows if a.dom in keep and a.cod in keep]
        return self.subgraph(arr, keep)

    def rename(self, mapping: dict[str, str]) -> "Graph":
        m = lambda s: mapping.get(s, s)
        return Graph(tuple(m(x) for x in self.objects),
                     tuple(Arrow(m(a.name), m(a.dom), m(a.cod)) for a in self.arrows))


@dataclass(frozen=True)
class Subgraph:
    parent: Graph = field(repr=False, compare=False)
    objects: tuple[str, ...]
    arrows: tuple[str, ...]

    def as_graph(self) -> Graph:
        return Graph(self.objects, tuple(self.parent.arrow_map[a] for a in self.arrows))

    def __contains__(self, arrow: str) -> bool:
        return arrow in self.arrow_set

    @cached_property
    def arrow_set(self) -> frozenset[str]:
        return frozenset(self.arrows)


@dataclass(frozen=True)
class ReflexiveGraph:
    """A graph together with a chosen identity arrow at every object."""

    base: Graph
    identities: tuple[tuple[str, str], ...]

    @cached_property
    def identity_arrow(self) -> dict[str, str]:
        return dict(self.identities)

    @cached_property
    def identity_set(self) -> frozenset[str]:
        return frozenset(a for _, a in self.identities)

    def validate(self) -> list[str]:
        problems = validate_graph(self.base)
        seen: set[str] = set()
        for x, a in self.identities:
            if not self.base.has_object(x):
                problems.append(f"identity for unknown object {x}")
                continue
            if not self.base.has_arrow(a):
                problems.append(f"identity arrow {a} missing")
                continue
            if self.base.dom(a) != x or self.base.cod(a) != x:
                problems.append(f"identity arrow {a} is not a loop at {x}")
            if a in seen:
                problems.append(f"identity arrow {a} shared by two objects")
            seen.add(a)
        missing = [x for x in self.base.objects if x not in self.identity_arrow]
        problems.extend(f"object {x} has no identity" for x in missing)
        return problems


def free_reflexive(g: Graph, prefix: str = "id_") -> ReflexiveGraph:
    """Adjoin a fresh identity loop at each object."""
    used = set(g.arrow_map) | set(g.objects)
    ids = []
    extra = []
    for x in g.objects:
        name = prefix + x
        while name in used:
            name += "'"
        used.add(name)
        ids.append((x, name))
        extra.append(Arrow(name, x, x))
    return ReflexiveGraph(Graph(g.objects, g.arrows + tuple(extra)), tuple(ids))


def strip_reflexive(r: ReflexiveGraph) -> Graph:
    drop = r.identity_set
    return Graph(r.base.objects, tuple(a for a in r.base.arrows if a.name not in drop))


# -- basic invariants ------------------------------------------------------

def validate_graph(g: Graph) -> list[str]:
    problems = []
    seen_obj: set[str] = set()
    for x in g.objects:
        if x in seen_obj:
            problems.append(f"duplicate id: object {x}")
        seen_obj.add(x)
    seen_arr: set[str] = set()
    for a in g.arrows:
        if a.name in seen_arr:
            problems.append(f"duplicate id: arrow {a.name}")
        seen_arr.add(a.name)
        if a.dom not in seen_obj:
            problems.append(f"dangling dom: arrow {a.name} -> {a.dom}")
        if a.cod not in seen_obj:
            problems.append(f"dangling cod: arrow {a.name} -> {a.cod}")
    return problems


def euler_char_1(g: Graph) -> int:
    return len(g.objects) - len(g.arrows)


def connected_components(g: Graph) -> list[tuple[str, ...]]:
    """Blocks of undirected reachability, each in declaration order."""
    parent = {x: x for x in g.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in g.arrows:
        ra, rb = find(a.dom), find(a.cod)
        if ra != rb:
            parent[max(ra, rb, key=g.object_index.get)] = min(ra, rb, key=g.object_index.get)
    blocks: dict[str, list[str]] = {}
    for x in g.objects:
        blocks.setdefault(find(x), []).append(x)
    return [tuple(b) for b in blocks.values()]


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def spanning_forest(g: Graph) -> Subgraph:
    """First-seen BFS spanning forest, rooted at the first object of each block."""
    seen: set[str] = set()
    chosen: list[str] = []
    for root in g.objects:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for a in g.incident[x]:
                y = a.cod if a.dom == x else a.dom
                if y not in seen:
                    seen.add(y)
                    chosen.append(a.name)
                    queue.append(y)
    return g.subgraph(chosen, g.objects)


def maximal_tree(g: Graph) -> Subgraph:
    if not is_connected(g):
        raise NotConnected("maximal_tree needs a connected graph")
    return spanning_forest(g)


def _undirected_acyclic(g: Graph) -> bool:
    parent = {x: x for x in g.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in g.arrows:
        ra, rb = find(a.dom), find(a.cod)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def is_forest(g: Graph) -> bool:
    return _undirected_acyclic(g)


def is_tree(g: Graph) -> bool:
    return is_forest(g) and is_connected(g) and len(g.objects) > 0


def topological_order(g: Graph) -> list[str] | None:
    """Kahn order honouring declaration order, or None when g has a directed cycle."""
    indeg = {x: 0 for x in g.objects}
    for a in g.arrows:
        indeg[a.cod] += 1
    ready = [x for x in g.objects if indeg[x] == 0]
    order = []
    while ready:
        x = ready.pop(0)
        order.append(x)
        for a in g.out_arrows[x]:
            indeg[a.cod] -= 1
            if indeg[a.cod] == 0:
                ready.append(a.cod)
    return order if len(order) == len(g.objects) else None


def is_acyclic(g: Graph) -> bool:
    return topological_order(g) is not None


def path_counts_from(g: Graph, x: str, order: list[str] | None = None) -> dict[str, int]:
    """Number of directed paths from x to each object; g must be a DAG."""
    order = order if order is not None else topological_order(g)
    if order is None:
        raise ValueError("path counting needs an acyclic graph")
    count = {y: 0 for y in g.objects}
    count[x] = 1
    for y in order:
        if count[y]:
            for a in g.out_arrows[y]:
                count[a.cod] += count[y]
    return count


def is_weak_forest(g: Graph) -> bool:
    order = topological_order(g)
    if order is None:
        return False
    for x in g.objects:
        if any(c > 1 for c in path_counts_from(g, x, order).values()):
            return False
    return True


def is_weak_tree(g: Graph) -> bool:
    return len(g.objects) > 0 and is_connected(g) and is_weak_forest(g)


@dataclass(frozen=True)
class FairResult:
    fair: bool
    witness: Subgraph | None = None

    def __bool__(self) -> bool:
        return self.fair


def _spanning_trees(g: Graph):
    """Spanning trees of a connected graph, arrows tried in declaration order."""
    n = len(g.objects)
    arrows = g.arrows

    def rec(i: int, chosen: list[str], parent: dict[str, str]):
        if len(chosen) == n - 1:
            yield tuple(chosen)
            return
        if len(arrows) - i < n - 1 - len(chosen):
            return
        a = arrows[i]

        def find(x, p=parent):
            while p[x] != x:
                x = p[x]
            return x

        ra, rb = find(a.dom), find(a.cod)
        if ra != rb:
            p2 = dict(parent)
            p2[ra] = rb
            chosen.append(a.name)
            yield from rec(i + 1, chosen, p2)
            chosen.pop()
        yield from rec(i + 1, chosen, parent)

    yield from rec(0, [], {x: x for x in g.objects})


def is_fair(g: Graph, limit: int = FAIR_SEARCH_LIMIT) -> FairResult:
    """Search for a maximal weak tree that is also a spanning tree.

    A spanning tree T is a maximal weak tree exactly when T plus any other
    arrow fails to be a weak forest; since weak forests are closed under
    subgraphs, checking single arrows suffices.
    """
    if not g.objects:
        return FairResult(False)
    if not is_connected(g):
        return FairResult(False)
    if 1 - euler_char_1(g) > limit:
        raise SizeLimitExceeded(f"{1 - euler_char_1(g)} non-tree arrows exceeds bound {limit}")
    for tree in _spanning_trees(g):
        inside = set(tree)
        ok = True
        for a in g.arrows:
            if a.name in inside:
                continue
            if is_weak_forest(g.subgraph(inside | {a.name}, g.objects).as_graph()):
                ok = False
                break
        if ok:
            return FairResult(True, g.subgraph(tree, g.objects))
    return FairResult(False)


# -- monotone classification ------------------------------------------------

@dataclass(frozen=True)
class StrictlyIncreasing:
    pass


@dataclass(frozen=True)
class Monotone:
    n: int


@dataclass(frozen=True)
class NotMonotone:
    arrow: str


def reachability(g: Graph) -> dict[str, set[str]]:
    reach = {}
    for x in g.objects:
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for a in g.out_arrows[y]:
                if a.cod not in seen:
                    seen.add(a.cod)
                    stack.append(a.cod)
        reach[x] = seen
    return reach


def is_maximal_weak_tree(g: Graph, t: Subgraph) -> bool:
    tg = t.as_graph()
    if not is_weak_tree(tg):
        return False
    for a in g.arrows:
        if a.name in t or (a.dom not in t.objects and a.cod not in t.objects):
            continue
        objs = set(t.objects) | {a.dom, a.cod}
        bigger = g.subgraph(set(t.arrows) | {a.name}, objs).as_graph()
        if is_weak_tree(bigger):
            return False
    return True


def classify_monotone(g: Graph, t: Subgraph):
    if not is_maximal_weak_tree(g, t):
        raise NotMaximalWeakTree("subgraph is not a maximal weak tree")
    reach = reachability(t.as_graph())
    n = 0
    for a in g.arrows:
        if a.name in t:
            continue
        if a.dom not in reach or a.cod not in reach:
            return NotMonotone(a.name)
        if a.dom != a.cod and a.cod in reach[a.dom]:
            continue
        if a.dom in reach[a.cod]:
            n += 1
            continue
        return NotMonotone(a.name)
    return StrictlyIncreasing() if n == 0 else Monotone(n)


def tree_path(t: Subgraph, x: str, y: str) -> list[tuple[str, int]] | None:
    """The undirected walk from x to y inside t, as signed letters."""
    g = t.parent
    prev: dict[str, tuple[str, str, int] | None] = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for name in t.arrows:
            a = g.arrow_map[name]
            if a.dom == u and a.cod not in prev:
                prev[a.cod] = (u, name, 1)
                queue.append(a.cod)
            elif a.cod == u and a.dom not in prev:
                prev[a.dom] = (u, name, -1)
                queue.append(a.dom)
    if y not in prev:
        return None
    letters = []
    v = y
    while prev[v] is not None:
        u, name, e = prev[v]
        letters.append((name, e))
        v = u
    letters.reverse()
    return letters
