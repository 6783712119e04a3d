"""Paths (free category morphisms) and reduced walks (free groupoid morphisms).

Paths are stored first-traversed-first, so composition is concatenation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidTable, NotComposable
from .graph import Graph, is_acyclic, is_weak_forest, reachability, topological_order

Letter = tuple[str, int]


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


@dataclass(frozen=True)
class Path:
    """A composable list of arrows starting at `start`; empty means identity."""

    graph: Graph = field(repr=False, compare=False)
    start: str
    arrows: tuple[str, ...] = ()

    @property
    def end(self) -> str:
        return self.graph.cod(self.arrows[-1]) if self.arrows else self.start

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple((a, 1) for a in self.arrows)

    def sort_key(self) -> tuple:
        idx = self.graph.arrow_index
        return (len(self.arrows), tuple(idx[a] for a in self.arrows))


def make_path(g: Graph, arrows: Sequence[str], start: str | None = None) -> Path:
    arrows = tuple(arrows)
    if not arrows:
        if start is None:
            raise NotComposable("an empty path needs a start object")
        if not g.has_object(start):
            raise NotComposable(f"unknown object {start}")
        return Path(g, start, ())
    for a in arrows:
        if not g.has_arrow(a):
            raise NotComposable(f"unknown arrow {a}")
    first = g.dom(arrows[0])
    if start is not None and start != first:
        raise NotComposable(f"path starts at {first}, not {start}")
    for a, b in zip(arrows, arrows[1:]):
        if g.cod(a) != g.dom(b):
            raise NotComposable(f"{a} then {b} do not compose")
    return Path(g, first, arrows)


def identity_path(g: Graph, x: str) -> Path:
    return make_path(g, (), x)


def compose_paths(p: Path, q: Path) -> Path:
    if p.end != q.start:
        raise NotComposable(f"path ends at {p.end} but next starts at {q.start}")
    return Path(p.graph, p.start, p.arrows + q.arrows)


def ulf_factorize(p: Path) -> list[Path]:
    return [Path(p.graph, p.graph.dom(a), (a,)) for a in p.arrows]


# -- walks -----------------------------------------------------------------

def _letter_src(g: Graph, letter: Letter) -> str:
    a, e = letter
    return g.dom(a) if e > 0 else g.cod(a)


def _letter_tgt(g: Graph, letter: Letter) -> str:
    a, e = letter
    return g.cod(a) if e > 0 else g.dom(a)


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for a, e in letters:
        if out and out[-1][0] == a and out[-1][1] == -e:
            out.pop()
        else:
            out.append((a, e))
    return tuple(out)


def invert_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple((a, -e) for a, e in reversed(letters))


@dataclass(frozen=True)
class Walk:
    """A reduced word of signed arrows; `start` anchors the empty walk."""

    graph: Graph = field(repr=False, compare=False)
    start: str
    letters: tuple[Letter, ...] = ()

    @property
    def end(self) -> str:
        return _letter_tgt(self.graph, self.letters[-1]) if self.letters else self.start

    def __len__(self) -> int:
        return len(self.letters)

    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.letters)

    def to_path(self) -> Path:
        if not self.is_positive():
            raise NotComposable("walk has inverse letters")
        return Path(self.graph, self.start, tuple(a for a, _ in self.letters))


def reduce_walk(g: Graph, letters: Sequence[Letter], start: str | None = None) -> Walk:
    letters = tuple((a, 1 if e > 0 else -1) for a, e in letters)
    for a, _ in letters:
        if not g.has_arrow(a):
            raise NotComposable(f"unknown arrow {a}")
    if letters:
        first = _letter_src(g, letters[0])
        if start is not None and start != first:
            raise NotComposable(f"walk starts at {first}, not {start}")
        start = first
        for l1, l2 in zip(letters, letters[1:]):
            if _letter_tgt(g, l1) != _letter_src(g, l2):
                raise NotComposable(f"letters {l1} and {l2} do not chain")
    elif start is None:
        raise NotComposable("an empty walk needs a start object")
    return Walk(g, start, free_reduce(letters))


def walk_of_path(p: Path) -> Walk:
    return Walk(p.graph, p.start, p.letters)


def invert_walk(w: Walk) -> Walk:
    return Walk(w.graph, w.end, invert_letters(w.letters))


def compose_walks(w1: Walk, w2: Walk) -> Walk:
    if w1.end != w2.start:
        raise NotComposable(f"walk ends at {w1.end} but next starts at {w2.start}")
    return Walk(w1.graph, w1.start, free_reduce(w1.letters + w2.letters))


def signed_length(w: Walk) -> int:
    return sum(e for _, e in w.letters)


# -- enumeration and counting -------------------------------------------------

def enumerate_paths(g: Graph, x: str, z: str, max_len: int | None = None) -> list[Path]:
    """Paths x -> z of length at most max_len, ordered by (length, arrow order).

    With max_len None the graph must be acyclic and every path is returned.
    """
    if max_len is None:
        if not is_acyclic(g):
            raise ValueError("unbounded enumeration needs an acyclic graph")
        max_len = len(g.objects)
    out = []
    layer: list[tuple[str, tuple[str, ...]]] = [(x, ())]
    for length in range(max_len + 1):
        for end, arrows in layer:
            if end == z:
                out.append(Path(g, x, arrows))
        if length == max_len:
            break
        nxt = []
        for end, arrows in layer:
            for a in g.out_arrows[end]:
                nxt.append((a.cod, arrows + (a.name,)))
        if not nxt:
            break
        layer = nxt
    return out


def all_paths(g: Graph) -> list[Path]:
    """Every path of an acyclic graph, identities included."""
    if not is_acyclic(g):
        raise ValueError("all_paths needs an acyclic graph")
    out = []
    for x in g.objects:
        stack: list[tuple[str, tuple[str, ...]]] = [(x, ())]
        while stack:
            end, arrows = stack.pop()
            out.append(Path(g, x, arrows))
            for a in reversed(g.out_arrows[end]):
                stack.append((a.cod, arrows + (a.name,)))
    out.sort(key=lambda p: (g.object_index[p.start],) + p.sort_key())
    return out


def hom_count_free(g: Graph, x: str, z: str):
    reach = reachability(g)
    if z not in reach[x]:
        return 0
    relevant = {y for y in reach[x] if z in reach[y]}
    sub = Graph(tuple(y for y in g.objects if y in relevant),
                tuple(a for a in g.arrows if a.dom in relevant and a.cod in relevant))
    order = topological_order(sub)
    if order is None:
        return INFINITE
    count = {y: 0 for y in sub.objects}
    count[x] = 1
    for y in order:
        for a in sub.out_arrows[y]:
            count[a.cod] += count[y]
    return count[z]


# -- finite category tables ---------------------------------------------------

@dataclass(frozen=True)
class FiniteCategoryTable:
    """Objects, morphisms with endpoints, identities and a diagrammatic composition table."""

    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]
    identities: tuple[tuple[str, str], ...]
    compose: tuple[tuple[str, str, str], ...]

    @property
    def dom(self) -> dict[str, str]:
        return {m: d for m, d, _ in self.morphisms}

    @property
    def cod(self) -> dict[str, str]:
        return {m: c for m, _, c in self.morphisms}

    @property
    def table(self) -> dict[tuple[str, str], str]:
        return {(f, g): h for f, g, h in self.compose}

    @property
    def identity(self) -> dict[str, str]:
        return dict(self.identities)


def validate_table(t: FiniteCategoryTable) -> list[str]:
    problems = []
    dom, cod, table, ident = t.dom, t.cod, t.table, t.identity
    objs = set(t.objects)
    for m, d, c in t.morphisms:
        if d not in objs or c not in objs:
            problems.append(f"morphism {m} has unknown endpoint")
    for x in t.objects:
        i = ident.get(x)
        if i is None or dom.get(i) != x or cod.get(i) != x:
            problems.append(f"object {x} lacks an identity")
    if problems:
        return problems
    for f in dom:
        for g in dom:
            composable = cod[f] == dom[g]
            h = table.get((f, g))
            if composable and h is None:
                problems.append(f"missing composite {f};{g}")
            elif not composable and h is not None:
                problems.append(f"composite {f};{g} of non-composable pair")
            elif composable and (h not in dom or dom[h] != dom[f] or cod[h] != cod[g]):
                problems.append(f"composite {f};{g} has wrong type")
    if problems:
        return problems
    for f in dom:
        if table[(ident[dom[f]], f)] != f or table[(f, ident[cod[f]])] != f:
            problems.append(f"identity law fails at {f}")
    for f in dom:
        for g in dom:
            if cod[f] != dom[g]:
                continue
            fg = table[(f, g)]
            for h in dom:
                if cod[g] == dom[h] and table[(fg, h)] != table[(f, table[(g, h)])]:
                    problems.append(f"associativity fails at {f},{g},{h}")
    return problems


def table_of_paths(g: Graph) -> FiniteCategoryTable:
    """The composition table of the free category on an acyclic graph."""
    paths = all_paths(g)
    name = {p: (f"id_{p.start}" if not p.arrows else ".".join(p.arrows)) for p in paths}
    by_key = {(p.start, p.arrows): p for p in paths}
    comp = []
    for p in paths:
        for q in paths:
            if p.end == q.start:
                r = by_key[(p.start, p.arrows + q.arrows)]
                comp.append((name[p], name[q], name[r]))
    return FiniteCategoryTable(
        g.objects,
        tuple((name[p], p.start, p.end) for p in paths),
        tuple((x, name[by_key[(x, ())]]) for x in g.objects),
        tuple(comp),
    )


@dataclass(frozen=True)
class Free:
    graph: Graph


@dataclass(frozen=True)
class NotFree:
    reason: str


def recognize_free_category(t: FiniteCategoryTable):
    problems = validate_table(t)
    if problems:
        raise InvalidTable("; ".join(problems))
    dom, cod, table, ident = t.dom, t.cod, t.table, t.identity
    ids = set(ident.values())
    nonid = [m for m, _, _ in t.morphisms if m not in ids]
    for f in nonid:
        for g in nonid:
            if cod[f] == dom[g] and cod[g] == dom[f]:
                if table[(f, g)] in ids and table[(g, f)] in ids:
                    return NotFree("nontrivial isomorphism")
    decomposable = set()
    for f in nonid:
        for g in nonid:
            if cod[f] == dom[g]:
                decomposable.add(table[(f, g)])
    indec = [m for m in nonid if m not in decomposable]
    total = {m: 0 for m in nonid}
    layer = {m: 1 for m in indec}
    length = 1
    while layer:
        if length > len(nonid):
            return NotFree("non-unique factorization")
        for m, c in layer.items():
            total[m] += c
        nxt: dict[str, int] = {}
        for m, c in layer.items():
            for i in indec:
                if cod[m] == dom[i]:
                    h = table[(m, i)]
                    if h in ids:
                        return NotFree("nontrivial isomorphism")
                    nxt[h] = nxt.get(h, 0) + c
        layer = nxt
        length += 1
    if any(c > 1 for c in total.values()):
        return NotFree("non-unique factorization")
    if any(c == 0 for c in total.values()):
        return NotFree("not generated by indecomposables")
    return Free(Graph.build(t.objects, ((m, dom[m], cod[m]) for m in indec)))


# -- totally ordered free categories -----------------------------------------

@dataclass(frozen=True)
class FinOrdinal:
    n: int


@dataclass(frozen=True)
class NatOrder:
    pass


@dataclass(frozen=True)
class OpNatOrder:
    pass


@dataclass(frozen=True)
class IntOrder:
    pass


@dataclass(frozen=True)
class NotTotalOrder:
    reason: str = ""


@dataclass(frozen=True)
class InfiniteChain:
    """Descriptor of the infinite chain graphs n -> n+1 over N, N^op or Z."""

    kind: str  # "nat", "opnat" or "int"


def classify_total_order(g):
    if isinstance(g, InfiniteChain):
        return {"nat": NatOrder(), "opnat": OpNatOrder(), "int": IntOrder()}.get(
            g.kind, NotTotalOrder(f"unknown chain kind {g.kind}"))
    if not is_weak_forest(g):
        return NotTotalOrder("free category is not thin")
    reach = reachability(g)
    for x, y in product(g.objects, repeat=2):
        if y not in reach[x] and x not in reach[y]:
            return NotTotalOrder(f"{x} and {y} are incomparable")
    return FinOrdinal(len(g.objects))
