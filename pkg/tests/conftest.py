"""Shared hypothesis strategies and small builders."""
from __future__ import annotations

import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from computads import Computad2, Graph, GroupoidalComputad2, TwoCell
from computads.free import Path, Walk, free_reduce

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_connected_graph(rng: random.Random, max_objects: int = 6, max_extra: int = 5,
                           loops: bool = True) -> Graph:
    n = rng.randint(1, max_objects)
    objects = [f"x{i}" for i in range(n)]
    arrows = []
    for i in range(1, n):
        j = rng.randrange(i)
        arrows.append((f"t{i}", objects[j], objects[i]) if rng.random() < 0.5 else (f"t{i}", objects[i], objects[j]))
    for k in range(rng.randint(0, max_extra)):
        x, y = rng.choice(objects), rng.choice(objects)
        if x == y and not loops:
            continue
        arrows.append((f"a{k}", x, y))
    rng.shuffle(arrows)
    return Graph.build(objects, arrows)


def _paths_from(g: Graph, x: str, max_len: int) -> list[tuple[str, ...]]:
    out, layer = [()], [(x, ())]
    for _ in range(max_len):
        nxt = []
        for end, arrows in layer:
            for a in g.out_arrows[end]:
                nxt.append((a.cod, arrows + (a.name,)))
        out += [p for _, p in nxt]
        layer = nxt[:40]
    return out


def _end(g: Graph, x: str, p: tuple[str, ...]) -> str:
    return g.cod(p[-1]) if p else x


def random_computad(rng: random.Random, max_objects: int = 6, max_extra: int = 5, max_cells: int = 5) -> Computad2:
    """A connected computad whose cells relate random parallel paths of length <= 3."""
    g = random_connected_graph(rng, max_objects, max_extra)
    cells = []
    for i in range(rng.randint(0, max_cells)):
        x = rng.choice(g.objects)
        paths = _paths_from(g, x, 3)
        p = rng.choice(paths)
        same = [q for q in paths if _end(g, x, q) == _end(g, x, p)]
        q = rng.choice(same)
        cells.append(TwoCell(f"c{i}", Path(g, x, p), Path(g, x, q)))
    return Computad2(g, tuple(cells))


def random_walk(rng: random.Random, g: Graph, x: str, length: int) -> tuple:
    letters, cur = [], x
    for _ in range(length):
        options = [(a.name, 1, a.cod) for a in g.out_arrows[cur]] + [(a.name, -1, a.dom) for a in g.in_arrows[cur]]
        if not options:
            break
        a, e, cur = rng.choice(options)
        letters.append((a, e))
    return tuple(letters), cur


def random_groupoidal(rng: random.Random, max_objects: int = 5, max_extra: int = 5,
                      max_cells: int = 4) -> GroupoidalComputad2:
    """Cells relate a random closed reduced walk to the identity."""
    g = random_connected_graph(rng, max_objects, max_extra)
    cells = []
    for i in range(rng.randint(0, max_cells)):
        x = rng.choice(g.objects)
        for _ in range(20):
            w, end = random_walk(rng, g, x, rng.randint(1, 6))
            if end == x:
                break
        else:
            w = ()
        cells.append(TwoCell(f"c{i}", Walk(g, x, free_reduce(w)), Walk(g, x, ())))
    return GroupoidalComputad2(g, tuple(cells))


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def fixture_computads() -> list[tuple[str, object]]:
    """Every bundled fixture that carries cell data, as a 2-computad."""
    from computads import fixtures
    from computads.errors import ComputadError

    out = []
    for name in fixtures.names():
        try:
            out.append((name, fixtures.load(name).as_computad()))
        except ComputadError:
            pass
    return out
