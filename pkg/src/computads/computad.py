"""2-computads: a graph plus 2-cells between parallel paths (or walks)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import NotSubcomputad, UnknownGenerator
from .free import (
    Letter,
    Path,
    Walk,
    all_paths,
    free_reduce,
    make_path,
    reduce_walk,
    walk_of_path,
)
from .graph import Graph, ReflexiveGraph, Subgraph, is_acyclic, strip_reflexive

Boundary = Union[Path, Walk]


@dataclass(frozen=True)
class TwoCell:
    name: str
    source: Boundary
    target: Boundary

    @property
    def start(self) -> str:
        return self.source.start

    @property
    def end(self) -> str:
        return self.source.end


@dataclass(frozen=True)
class _Computad:
    base: Graph
    cells: tuple[TwoCell, ...] = ()

    groupoidal = False

    @cached_property
    def cell_map(self) -> dict[str, TwoCell]:
        return {c.name: c for c in self.cells}

    @cached_property
    def cell_index(self) -> dict[str, int]:
        return {c.name: i for i, c in enumerate(self.cells)}

    def cell(self, name: str) -> TwoCell:
        return self.cell_map[name]


@dataclass(frozen=True)
class Computad2(_Computad):
    """Cells have path boundaries."""


@dataclass(frozen=True)
class GroupoidalComputad2(_Computad):
    """Cells have reduced walk boundaries."""

    groupoidal = True


@dataclass(frozen=True)
class ReflexiveComputad2:
    """Cells over a reflexive graph; identity arrows behave as empty segments."""

    base: ReflexiveGraph
    cells: tuple[TwoCell, ...] = ()

    def normalize(self) -> Computad2:
        g = strip_reflexive(self.base)
        drop = self.base.identity_set

        def strip(p: Path) -> Path:
            return Path(g, p.start, tuple(a for a in p.arrows if a not in drop))

        return Computad2(g, tuple(TwoCell(c.name, strip(c.source), strip(c.target)) for c in self.cells))


AnyComputad = Union[Computad2, GroupoidalComputad2, ReflexiveComputad2]


def as_plain(c: AnyComputad) -> Union[Computad2, GroupoidalComputad2]:
    return c.normalize() if isinstance(c, ReflexiveComputad2) else c


def boundary_letters(b: Boundary) -> tuple[Letter, ...]:
    return b.letters


def make_cell(g: Graph, name: str, source: Sequence, target: Sequence,
              start: str | None = None, groupoidal: bool = False) -> TwoCell:
    """Build a cell from arrow lists (or signed letters when groupoidal)."""
    if groupoidal:
        src = reduce_walk(g, _as_letters(source), start)
        tgt = reduce_walk(g, _as_letters(target), start if start is not None else src.start)
    else:
        src = make_path(g, source, start)
        tgt = make_path(g, target, start if start is not None else src.start)
    return TwoCell(name, src, tgt)


def _as_letters(seq: Sequence) -> list[Letter]:
    out = []
    for item in seq:
        if isinstance(item, tuple):
            out.append((item[0], 1 if item[1] > 0 else -1))
        elif item.endswith("^-1"):
            out.append((item[:-3], -1))
        else:
            out.append((item, 1))
    return out


def computad(objects: Iterable[str], arrows: Iterable[tuple[str, str, str]],
             cells: Iterable[tuple] = (), groupoidal: bool = False):
    """Convenience constructor: cells are (name, source, target[, start])."""
    g = Graph.build(objects, arrows)
    built = []
    for entry in cells:
        name, src, tgt, *rest = entry
        built.append(make_cell(g, name, src, tgt, rest[0] if rest else None, groupoidal))
    cls = GroupoidalComputad2 if groupoidal else Computad2
    return cls(g, tuple(built))


# -- validation --------------------------------------------------------------

def _check_boundary(g: Graph, b: Boundary, problems: list[str], where: str) -> bool:
    if not g.has_object(b.start):
        problems.append(f"{where}: unknown object {b.start}")
        return False
    letters = b.letters
    for a, _ in letters:
        if not g.has_arrow(a):
            problems.append(f"{where}: unknown arrow {a}")
            return False
    cur = b.start
    for a, e in letters:
        src, tgt = (g.dom(a), g.cod(a)) if e > 0 else (g.cod(a), g.dom(a))
        if src != cur:
            problems.append(f"{where}: not composable at {a}")
            return False
        cur = tgt
    if isinstance(b, Walk) and free_reduce(letters) != tuple(letters):
        problems.append(f"{where}: walk not reduced")
        return False
    return True


def validate_computad(c: AnyComputad) -> list[str]:
    from .graph import validate_graph

    if isinstance(c, ReflexiveComputad2):
        problems = c.base.validate()
        g = c.base.base
    else:
        problems = validate_graph(c.base)
        g = c.base
    seen: set[str] = set()
    for cell in c.cells:
        if cell.name in seen:
            problems.append(f"duplicate id: cell {cell.name}")
        seen.add(cell.name)
        ok = _check_boundary(g, cell.source, problems, f"cell {cell.name} source")
        ok &= _check_boundary(g, cell.target, problems, f"cell {cell.name} target")
        if ok and (cell.source.start != cell.target.start or cell.source.end != cell.target.end):
            problems.append(f"cell {cell.name}: not parallel")
        if isinstance(c, GroupoidalComputad2) != isinstance(cell.source, Walk):
            problems.append(f"cell {cell.name}: boundary kind does not match computad kind")
    return problems


# -- adjunction data ----------------------------------------------------------

def i2(g: Graph) -> Computad2:
    return Computad2(g, ())


def i2_gr(g: Graph) -> GroupoidalComputad2:
    return GroupoidalComputad2(g, ())


def u2(c: AnyComputad) -> Graph:
    return as_plain(c).base


def groupoidalize(c: AnyComputad) -> GroupoidalComputad2:
    c = as_plain(c)
    if isinstance(c, GroupoidalComputad2):
        return c
    cells = tuple(TwoCell(x.name, walk_of_path(x.source), walk_of_path(x.target)) for x in c.cells)
    return GroupoidalComputad2(c.base, cells)


@dataclass(frozen=True)
class Unbounded:
    reason: str = "graph has a directed cycle"


@dataclass(frozen=True)
class Truncated:
    computad: Computad2
    max_len: int


def sigma2(g: Graph, max_len: int | None = None):
    """One cell per ordered pair of parallel paths, diagonal pairs included."""
    if is_acyclic(g):
        paths = all_paths(g)
        truncated = False
    elif max_len is None:
        return Unbounded()
    else:
        from .free import enumerate_paths

        paths = [p for x in g.objects for z in g.objects for p in enumerate_paths(g, x, z, max_len)]
        truncated = True
    groups: dict[tuple[str, str], list[Path]] = {}
    for p in paths:
        groups.setdefault((p.start, p.end), []).append(p)
    cells = []
    for (x, z) in sorted(groups, key=lambda k: (g.object_index[k[0]], g.object_index[k[1]])):
        ps = groups[(x, z)]
        for p in ps:
            for q in ps:
                cells.append(TwoCell(f"s{len(cells)}", p, q))
    c = Computad2(g, tuple(cells))
    return Truncated(c, max_len) if truncated else c


# -- images ---------------------------------------------------------------

def _support(g: Graph, bounds: Iterable[Boundary]) -> Subgraph:
    arrows: set[str] = set()
    objects: set[str] = set()
    for b in bounds:
        objects.add(b.start)
        for a, _ in b.letters:
            arrows.add(a)
            objects.add(g.dom(a))
            objects.add(g.cod(a))
    return g.subgraph(arrows, objects)


def graph_domain(c: AnyComputad) -> Subgraph:
    c = as_plain(c)
    return _support(c.base, (x.source for x in c.cells))


def graph_codomain(c: AnyComputad) -> Subgraph:
    c = as_plain(c)
    return _support(c.base, (x.target for x in c.cells))


def image_subgraph(c: AnyComputad) -> Subgraph:
    c = as_plain(c)
    return _support(c.base, [b for x in c.cells for b in (x.source, x.target)])


# -- sub-computads and collapse ------------------------------------------------

@dataclass(frozen=True)
class SubComputad:
    objects: tuple[str, ...] = ()
    arrows: tuple[str, ...] = ()
    cells: tuple[str, ...] = ()


def sub_of_tree(t: Subgraph) -> SubComputad:
    return SubComputad(t.objects, t.arrows, ())


def check_subcomputad(c: AnyComputad, sub: SubComputad) -> list[str]:
    c = as_plain(c)
    g = c.base
    problems = []
    objs, arrs = set(sub.objects), set(sub.arrows)
    for x in sub.objects:
        if not g.has_object(x):
            problems.append(f"unknown object {x}")
    for a in sub.arrows:
        if not g.has_arrow(a):
            problems.append(f"unknown arrow {a}")
        elif g.dom(a) not in objs or g.cod(a) not in objs:
            problems.append(f"arrow {a} leaves the sub-computad")
    for name in sub.cells:
        cell = c.cell_map.get(name)
        if cell is None:
            problems.append(f"unknown cell {name}")
            continue
        if cell.start not in objs:
            problems.append(f"cell {name} based outside")
        for b in (cell.source, cell.target):
            if any(a not in arrs for a, _ in b.letters):
                problems.append(f"cell {name} boundary leaves the sub-computad")
                break
    return problems


def restrict(c: AnyComputad, sub: SubComputad):
    """The sub-computad as a computad in its own right."""
    c = as_plain(c)
    problems = check_subcomputad(c, sub)
    if problems:
        raise NotSubcomputad("; ".join(problems))
    g = c.base.subgraph(sub.arrows, sub.objects).as_graph()
    keep = set(sub.cells)
    cells = []
    for cell in c.cells:
        if cell.name in keep:
            cells.append(TwoCell(cell.name, _rebase(cell.source, g), _rebase(cell.target, g)))
    return type(c)(g, tuple(cells))


def _rebase(b: Boundary, g: Graph) -> Boundary:
    return type(b)(g, b.start, b.arrows if isinstance(b, Path) else b.letters)


def quotient_collapse(c: AnyComputad, sub: SubComputad):
    """Collapse the objects of `sub` to a point, deleting its arrows and cells.

    Surviving cells lose every collapsed letter; the point is named after the
    first collapsed object so names stay unique.
    """
    c = as_plain(c)
    problems = check_subcomputad(c, sub)
    if problems:
        raise NotSubcomputad("; ".join(problems))
    if not sub.objects:
        return c
    g = c.base
    point = next(x for x in g.objects if x in set(sub.objects))
    gone_obj = set(sub.objects)
    gone_arr = set(sub.arrows)
    gone_cell = set(sub.cells)
    m = lambda x: point if x in gone_obj else x
    objects = tuple(x for x in g.objects if x not in gone_obj or x == point)
    arrows = tuple((a.name, m(a.dom), m(a.cod)) for a in g.arrows if a.name not in gone_arr)
    q = Graph.build(objects, arrows)
    cells = []
    for cell in c.cells:
        if cell.name in gone_cell:
            continue
        src = [l for l in cell.source.letters if l[0] not in gone_arr]
        tgt = [l for l in cell.target.letters if l[0] not in gone_arr]
        start = m(cell.start)
        if c.groupoidal:
            cells.append(TwoCell(cell.name, Walk(q, start, free_reduce(src)), Walk(q, start, free_reduce(tgt))))
        else:
            cells.append(TwoCell(cell.name, Path(q, start, tuple(a for a, _ in src)),
                                 Path(q, start, tuple(a for a, _ in tgt))))
    return type(c)(q, tuple(cells))


# -- suspensions -----------------------------------------------------------------

@dataclass(frozen=True)
class WordPresentation:
    """A monoid or group presentation; relation sides are tuples of signed letters."""

    kind: str  # "monoid" or "group"
    generators: tuple[str, ...]
    relations: tuple[tuple[tuple[Letter, ...], tuple[Letter, ...]], ...] = ()


def suspend_presentation(kind: str, generators: Sequence[str], relations: Sequence[tuple[Sequence, Sequence]],
                         point: str = "*"):
    kind = kind.lower()
    if kind not in ("monoid", "group"):
        raise ValueError(f"unknown presentation kind {kind}")
    gens = tuple(generators)
    known = set(gens)
    g = Graph.build([point], [(a, point, point) for a in gens])
    cells = []
    for i, (lhs, rhs) in enumerate(relations):
        sides = []
        for side in (lhs, rhs):
            letters = _as_letters(side)
            for a, e in letters:
                if a not in known:
                    raise UnknownGenerator(a)
                if e < 0 and kind == "monoid":
                    raise UnknownGenerator(f"{a}^-1 in a monoid relation")
            sides.append(letters)
        name = f"r{i + 1}"
        if kind == "group":
            cells.append(TwoCell(name, Walk(g, point, free_reduce(sides[0])), Walk(g, point, free_reduce(sides[1]))))
        else:
            cells.append(TwoCell(name, Path(g, point, tuple(a for a, _ in sides[0])),
                                 Path(g, point, tuple(a for a, _ in sides[1]))))
    return (GroupoidalComputad2 if kind == "group" else Computad2)(g, tuple(cells))


def suspend(p: WordPresentation, point: str = "*"):
    return suspend_presentation(p.kind, p.generators, p.relations, point)


def is_connected_computad(c: AnyComputad) -> bool:
    from .graph import is_connected

    return is_connected(u2(c))


def components_of(c: AnyComputad) -> list[tuple[str, ...]]:
    from .graph import connected_components

    return connected_components(u2(c))
