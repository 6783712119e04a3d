"""Deficiency of presentations and the efficient-presentation constructions."""
from __future__ import annotations

from dataclasses import dataclass

from .computad import AnyComputad, Computad2, GroupoidalComputad2, TwoCell, as_plain, groupoidalize
from .cw import euler_char, f_top2
from .errors import NotConnected, NotMonotoneError, NotStrictlyIncreasing
from .free import Path, Walk, free_reduce
from .graph import (
    Graph,
    Monotone,
    StrictlyIncreasing,
    Subgraph,
    classify_monotone,
    euler_char_1,
    is_connected,
    is_fair,
    maximal_tree,
    tree_path,
)


@dataclass(frozen=True)
class DeficiencyReport:
    chi1: int
    cells2: int
    deficiency: int
    bound_ok: bool
    construction: str | None = None


def _require_connected(g: Graph) -> None:
    if not g.objects or not is_connected(g):
        raise NotConnected("base graph must be connected")


def deficiency_of_presentation(c: AnyComputad, construction: str | None = None) -> DeficiencyReport:
    c = groupoidalize(c)
    _require_connected(c.base)
    chi1 = euler_char_1(c.base)
    n = len(c.cells)
    return DeficiencyReport(chi1, n, 1 - n - chi1, chi1 + n - 1 >= 0, construction)


@dataclass(frozen=True)
class ViolatesBound:
    chi: int


@dataclass(frozen=True)
class Inconclusive:
    chi: int


def check_not_thin_bound(c: AnyComputad):
    """A groupoid presented with chi(F_Top2) < 1 cannot be thin."""
    c = groupoidalize(c)
    _require_connected(c.base)
    chi = euler_char(f_top2(c))
    return ViolatesBound(chi) if chi < 1 else Inconclusive(chi)


def deficiency_of_category_presentation(c: AnyComputad) -> int:
    c = as_plain(c)
    _require_connected(c.base)
    return 1 - euler_char(f_top2(c))


def _non_tree(g: Graph, t: Subgraph):
    return [a for a in g.arrows if a.name not in t]


def synth_efficient_groupoid(g: Graph, tree: Subgraph | None = None) -> GroupoidalComputad2:
    """One cell per non-tree arrow, from its tree shadow to the arrow itself."""
    _require_connected(g)
    t = tree if tree is not None else maximal_tree(g)
    cells = []
    for a in _non_tree(g, t):
        shadow = tree_path(t, a.dom, a.cod)
        cells.append(TwoCell(f"a_{a.name}", Walk(g, a.dom, free_reduce(shadow)), Walk(g, a.dom, ((a.name, 1),))))
    return GroupoidalComputad2(g, tuple(cells))


@dataclass(frozen=True)
class NotFair:
    reason: str = "no maximal weak tree is a tree"


def _directed_arcs(cycle: list[tuple[str, int]]):
    """Split a closed signed walk into two directed arcs sharing their endpoints.

    Returns (k, n) where the walk rotated by k starts with n positive letters
    followed only by negative ones, or None when more than two runs exist.
    """
    m = len(cycle)
    signs = [e for _, e in cycle]
    if all(s > 0 for s in signs) or all(s < 0 for s in signs):
        return "directed"
    changes = [i for i in range(m) if signs[i] > 0 and signs[i - 1] < 0]
    if len(changes) != 1:
        return None
    k = changes[0]
    rot = signs[k:] + signs[:k]
    n = rot.index(-1)
    return k, n


def lift_to_category_presentation(g: Graph):
    """Positive presentation of the thin quotient of a fair graph."""
    _require_connected(g)
    res = is_fair(g)
    if not res:
        return NotFair()
    t = res.witness
    cells = []
    for a in _non_tree(g, t):
        back = tree_path(t, a.cod, a.dom)
        cycle = [(a.name, 1)] + back
        split = _directed_arcs(cycle)
        if split == "directed":
            if cycle[0][1] < 0:
                cycle = [(x, -e) for x, e in reversed(cycle)]
            src = Path(g, a.dom, tuple(x for x, _ in cycle))
            tgt = Path(g, a.dom, ())
        else:
            k, n = split
            rot = cycle[k:] + cycle[:k]
            first = tuple(x for x, _ in rot[:n])
            second = tuple(x for x, _ in reversed(rot[n:]))
            s = g.dom(first[0])
            p, q = Path(g, s, first), Path(g, s, second)
            src, tgt = (p, q) if a.name in first else (q, p)
        cells.append(TwoCell(f"a_{a.name}", src, tgt))
    return Computad2(g, tuple(cells))


def _tree_positive_path(g: Graph, t: Subgraph, x: str, y: str) -> Path:
    letters = tree_path(t, x, y)
    if letters is None or any(e < 0 for _, e in letters):
        raise ValueError(f"no directed tree path {x} -> {y}")
    return Path(g, x, tuple(a for a, _ in letters))


def synth_strictly_increasing(g: Graph, t: Subgraph) -> Computad2:
    if not isinstance(classify_monotone(g, t), StrictlyIncreasing):
        raise NotStrictlyIncreasing("some non-tree arrow is not increasing")
    cells = []
    for a in _non_tree(g, t):
        cells.append(TwoCell(f"a_{a.name}", Path(g, a.dom, (a.name,)), _tree_positive_path(g, t, a.dom, a.cod)))
    return Computad2(g, tuple(cells))


def synth_monotone(g: Graph, t: Subgraph) -> Computad2:
    """Increasing arrows get f => tree path; a nonincreasing f: x -> y gets two
    cells from the identity to the loops f.back at x and back.f at y."""
    cls = classify_monotone(g, t)
    if not isinstance(cls, (StrictlyIncreasing, Monotone)):
        raise NotMonotoneError(f"arrow {cls.arrow} is incomparable")
    cells = []
    from .graph import reachability

    reach = reachability(t.as_graph())
    for a in _non_tree(g, t):
        if a.dom != a.cod and a.cod in reach[a.dom]:
            cells.append(TwoCell(f"a_{a.name}", Path(g, a.dom, (a.name,)), _tree_positive_path(g, t, a.dom, a.cod)))
            continue
        back = _tree_positive_path(g, t, a.cod, a.dom)
        at_x = Path(g, a.dom, (a.name,) + back.arrows)
        at_y = Path(g, a.cod, back.arrows + (a.name,))
        cells.append(TwoCell(f"b_{a.name}_1", Path(g, a.dom, ()), at_x))
        cells.append(TwoCell(f"b_{a.name}_2", Path(g, a.cod, ()), at_y))
    return Computad2(g, tuple(cells))
