"""The category or groupoid presented by a computad.

Two engines: exhaustive congruence closure when the base is acyclic, and
Knuth-Bendix completion of path rewriting otherwise.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .computad import (
    AnyComputad,
    GroupoidalComputad2,
    as_plain,
    groupoidalize,
)
from .errors import InfiniteFreeCategory, ObjectNotFound
from .free import (
    INFINITE,
    FiniteCategoryTable,
    Path,
    all_paths,
    free_reduce,
    invert_letters,
)
from .graph import Graph, connected_components, is_acyclic, spanning_forest
from .groups import (
    DEFAULT_LIMITS,
    GroupPresentation,
    Limits,
    No,
    Unknown,
    Yes,
    abelianization_invariants,
    is_trivial_group,
)

Word = tuple[int, ...]


# -- finite regime ---------------------------------------------------------------

class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class FinQuotient:
    """Morphisms of a finitely presented category, one least representative per class."""

    graph: Graph
    rep: dict[tuple[str, tuple[str, ...]], Path]
    homs: dict[tuple[str, str], tuple[Path, ...]]

    @property
    def objects(self) -> tuple[str, ...]:
        return self.graph.objects

    def hom_size(self, x: str, z: str) -> int:
        return len(self.homs.get((x, z), ()))

    def hom_sizes(self) -> dict[tuple[str, str], int]:
        return {(x, z): self.hom_size(x, z) for x in self.objects for z in self.objects}

    def total(self) -> int:
        return sum(len(v) for v in self.homs.values())

    def representative(self, p: Path) -> Path:
        return self.rep[(p.start, p.arrows)]

    def compose(self, p: Path, q: Path) -> Path:
        if p.end != q.start:
            raise ValueError("not composable")
        return self.rep[(p.start, p.arrows + q.arrows)]

    def morphisms(self) -> list[Path]:
        return [p for x in self.objects for z in self.objects for p in self.homs.get((x, z), ())]

    def table(self) -> FiniteCategoryTable:
        name = {}
        for p in self.morphisms():
            name[p] = f"id_{p.start}" if not p.arrows else ".".join(p.arrows)
        comp = []
        for p in name:
            for q in name:
                if p.end == q.start:
                    comp.append((name[p], name[q], name[self.compose(p, q)]))
        return FiniteCategoryTable(
            self.objects,
            tuple((name[p], p.start, p.end) for p in name),
            tuple((x, name[self.rep[(x, ())]]) for x in self.objects),
            tuple(comp),
        )


def _objects_along(g: Graph, start: str, arrows: Sequence[str]) -> list[str]:
    objs = [start]
    for a in arrows:
        objs.append(g.cod(a))
    return objs


def _replacements(g: Graph, arrows: tuple[str, ...], start: str, src: tuple[str, ...], src_start: str,
                  tgt: tuple[str, ...]):
    """All words obtained by replacing one occurrence of src by tgt."""
    n, k = len(arrows), len(src)
    objs = _objects_along(g, start, arrows)
    for i in range(n - k + 1):
        if arrows[i:i + k] == src and objs[i] == src_start:
            yield arrows[:i] + tgt + arrows[i + k:]


def present_category_finite(c: AnyComputad) -> FinQuotient:
    c = as_plain(c)
    if isinstance(c, GroupoidalComputad2):
        raise TypeError("present_category_finite expects a plain computad")
    g = c.base
    if not is_acyclic(g):
        raise InfiniteFreeCategory("base graph has a directed cycle")
    paths = all_paths(g)
    index = {(p.start, p.arrows): i for i, p in enumerate(paths)}
    uf = _UnionFind(len(paths))
    for i, p in enumerate(paths):
        for cell in c.cells:
            for w in _replacements(g, p.arrows, p.start, cell.source.arrows, cell.start, cell.target.arrows):
                uf.union(i, index[(p.start, w)])
    best: dict[int, Path] = {}
    for i, p in enumerate(paths):
        r = uf.find(i)
        if r not in best or p.sort_key() < best[r].sort_key():
            best[r] = p
    rep = {(p.start, p.arrows): best[uf.find(i)] for i, p in enumerate(paths)}
    homs: dict[tuple[str, str], list[Path]] = {}
    for p in best.values():
        homs.setdefault((p.start, p.end), []).append(p)
    return FinQuotient(g, rep, {k: tuple(sorted(v, key=Path.sort_key)) for k, v in homs.items()})


def satisfies_cancellation_finite(q) -> bool:
    """Left and right cancellation over a finite composition table."""
    t = q.table() if isinstance(q, FinQuotient) else q
    dom, cod, table = t.dom, t.cod, t.table
    ms = list(dom)
    for h in ms:
        for f in ms:
            for g in ms:
                if f == g or dom[f] != dom[g] or cod[f] != cod[g]:
                    continue
                if cod[f] == dom[h] and table[(f, h)] == table[(g, h)]:
                    return False
                if cod[h] == dom[f] and table[(h, f)] == table[(h, g)]:
                    return False
    return True


# -- rewriting ----------------------------------------------------------------------

@dataclass(frozen=True)
class RewriteRule:
    lhs: Path
    rhs: Path


@dataclass(frozen=True)
class RewriteSystem:
    graph: Graph = field(repr=False)
    rules: tuple[RewriteRule, ...]
    complete: bool
    order: str = "length-lex, ties by arrow declaration order"

    @cached_property
    def _engine(self) -> "_Rewriter":
        eng = _Rewriter(self.graph, None)
        for r in self.rules:
            eng.rules[_encode(self.graph, r.lhs)] = _encode(self.graph, r.rhs)
        eng.refresh()
        return eng


@dataclass(frozen=True)
class Complete:
    system: RewriteSystem


@dataclass(frozen=True)
class Timeout:
    partial: RewriteSystem
    reason: str = ""


class _BudgetExceeded(Exception):
    pass


def _encode(g: Graph, p: Path) -> Word:
    idx = g.arrow_index
    return tuple(idx[a] for a in p.arrows)


def _key(w: Word) -> tuple:
    return (len(w), w)


class _Rewriter:
    def __init__(self, g: Graph, max_steps: int | None):
        self.g = g
        self.rules: dict[Word, Word] = {}
        self.lengths: list[int] = []
        self.steps = 0
        self.max_steps = max_steps

    def refresh(self) -> None:
        self.lengths = sorted({len(l) for l in self.rules})

    def charge(self, n: int) -> None:
        """Count work against the budget: one unit per rule lookup, firing, and letter of a processed or overlapped word."""
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise _BudgetExceeded

    def reduce(self, w: Word) -> Word:
        """Leftmost-innermost normal form: always fire the redex that ends first."""
        w = list(w)
        rules, lengths = self.rules, self.lengths
        probes = 0
        e = 1
        while e <= len(w):
            fired = False
            for L in lengths:
                if L > e:
                    break
                probes += 1
                r = rules.get(tuple(w[e - L:e]))
                if r is not None:
                    w[e - L:e] = r
                    self.charge(probes + 1)
                    probes = 0
                    e = max(1, e - L + 1) if w else 1
                    fired = True
                    break
            if not fired:
                e += 1
        self.charge(probes)
        return tuple(w)

    def start_of(self, w: Word) -> str:
        return self.g.arrows[w[0]].dom


def _critical_pairs(l1: Word, r1: Word, l2: Word, r2: Word):
    n1, n2 = len(l1), len(l2)
    for k in range(1, min(n1, n2)):
        if l1[n1 - k:] == l2[:k]:
            yield r1 + l2[k:], l1[:n1 - k] + r2
    if n2 < n1:
        for i in range(n1 - n2 + 1):
            if l1[i:i + n2] == l2:
                yield r1, l1[:i] + r2 + l1[i + n2:]


def knuth_bendix(c: AnyComputad, limits: Limits = DEFAULT_LIMITS):
    c = as_plain(c)
    if isinstance(c, GroupoidalComputad2):
        raise TypeError("knuth_bendix expects a plain computad")
    g = c.base
    eng = _Rewriter(g, limits.kb_max_steps)
    pending = deque()
    for cell in c.cells:
        pending.append((cell.start, _encode(g, cell.source), _encode(g, cell.target)))

    def snapshot(complete: bool) -> RewriteSystem:
        rules = []
        for l, r in eng.rules.items():
            start = eng.start_of(l)
            rules.append(RewriteRule(Path(g, start, tuple(g.arrows[i].name for i in l)),
                                     Path(g, start, tuple(g.arrows[i].name for i in r))))
        rules.sort(key=lambda r: (_key(_encode(g, r.lhs)), _key(_encode(g, r.rhs))))
        return RewriteSystem(g, tuple(rules), complete)

    try:
        while pending:
            start, s, t = pending.popleft()
            eng.charge(1 + len(s) + len(t))
            s, t = eng.reduce(s), eng.reduce(t)
            if s == t:
                continue
            if _key(s) < _key(t):
                s, t = t, s
            # interreduce: rules whose lhs contains s go back to the queue
            for l in list(eng.rules):
                r = eng.rules[l]
                if _contains(l, s):
                    del eng.rules[l]
                    pending.append((eng.start_of(l), l, r))
            eng.rules[s] = t
            eng.refresh()
            for l in list(eng.rules):
                if l != s and _contains(eng.rules[l], s):
                    eng.rules[l] = eng.reduce(eng.rules[l])
            for l, r in list(eng.rules.items()):
                eng.charge(len(l) + len(s))
                for a, b in _critical_pairs(s, t, l, r):
                    pending.append((None, a, b))
                if l != s:
                    for a, b in _critical_pairs(l, r, s, t):
                        pending.append((None, a, b))
            if len(eng.rules) > limits.kb_max_rules:
                return Timeout(snapshot(False), f"more than {limits.kb_max_rules} rules")
    except _BudgetExceeded:
        return Timeout(snapshot(False), f"more than {limits.kb_max_steps} work units")
    return Complete(snapshot(True))


def _contains(w: Word, u: Word) -> bool:
    n, k = len(w), len(u)
    return any(w[i:i + k] == u for i in range(n - k + 1))


def normal_form(p: Path, rs: RewriteSystem) -> Path:
    g = rs.graph
    w = rs._engine.reduce(_encode(g, p))
    return Path(g, p.start, tuple(g.arrows[i].name for i in w))


# -- counting irreducible paths ------------------------------------------------------

class StateLimitExceeded(Exception):
    pass


def irreducible_counts(rs: RewriteSystem, max_states: int = 200_000) -> dict[tuple[str, str], object]:
    """Number of irreducible paths for every ordered object pair.

    The automaton state is (current object, last k-1 arrows) with k the longest
    left-hand side; a count is infinite exactly when a reachable cycle can still
    reach the target object.
    """
    g = rs.graph
    eng = rs._engine
    rules, lengths = eng.rules, eng.lengths
    k = max(lengths) if lengths else 1
    keep = k - 1
    out: dict[tuple[str, str], object] = {}
    for x in g.objects:
        states: dict[tuple[str, Word], int] = {(x, ()): 0}
        labels = [(x, ())]
        succ: list[list[int]] = [[]]
        queue = deque([0])
        while queue:
            s = queue.popleft()
            obj, suffix = labels[s]
            for a in g.out_arrows[obj]:
                w = suffix + (g.arrow_index[a.name],)
                if any(L <= len(w) and w[len(w) - L:] in rules for L in lengths):
                    continue
                nxt = (a.cod, w[max(0, len(w) - keep):] if keep else ())
                t = states.get(nxt)
                if t is None:
                    t = len(labels)
                    if t >= max_states:
                        raise StateLimitExceeded(f"more than {max_states} automaton states")
                    states[nxt] = t
                    labels.append(nxt)
                    succ.append([])
                    queue.append(t)
                succ[s].append(t)
        comps = _tarjan(succ)
        for z in g.objects:
            count: dict[int, object] = {}
            for comp in comps:  # reverse topological order: sinks first
                cyclic = len(comp) > 1 or comp[0] in succ[comp[0]]
                if cyclic:
                    reaches = any(labels[s][0] == z for s in comp) or any(
                        count[t] != 0 for s in comp for t in succ[s] if t not in comp)
                    val = INFINITE if reaches else 0
                    for s in comp:
                        count[s] = val
                else:
                    s = comp[0]
                    total = 1 if labels[s][0] == z else 0
                    for t in succ[s]:
                        if count[t] is INFINITE:
                            total = INFINITE
                            break
                        total += count[t]
                    count[s] = total
            out[(x, z)] = count[0]
    return out


def _tarjan(succ: list[list[int]]) -> list[list[int]]:
    """Strongly connected components, emitted sinks first (iterative)."""
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on[w] = True
                    work.append((w, 0))
                elif on[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(comp)
    return comps


@dataclass(frozen=True)
class HomTable:
    """Hom-set sizes of a presented category with how they were obtained."""

    sizes: dict[tuple[str, str], object]
    method: str
    rules: tuple[RewriteRule, ...] = ()

    def total(self):
        vals = list(self.sizes.values())
        return INFINITE if any(v is INFINITE for v in vals) else sum(vals)


def hom_table(c: AnyComputad, limits: Limits = DEFAULT_LIMITS):
    """Exact hom sizes, or a Timeout when completion does not finish."""
    c = as_plain(c)
    if is_acyclic(c.base):
        return HomTable(present_category_finite(c).hom_sizes(), "congruence closure")
    res = knuth_bendix(c, limits)
    if isinstance(res, Timeout):
        return res
    try:
        sizes = irreducible_counts(res.system, limits.kb_max_states)
    except StateLimitExceeded as exc:
        return Timeout(res.system, str(exc))
    return HomTable(sizes, "complete rewriting", res.system.rules)


def is_thin_category(c: AnyComputad, limits: Limits = DEFAULT_LIMITS):
    table = hom_table(c, limits)
    if isinstance(table, Timeout):
        return Unknown(f"completion did not finish: {table.reason}")
    for pair, n in table.sizes.items():
        if n is INFINITE or n > 1:
            return No({"hom": pair, "size": n})
    return Yes(table.method)


# -- fundamental groups ---------------------------------------------------------------

def tree_image(letters, tree_arrows) -> tuple:
    return free_reduce(l for l in letters if l[0] not in tree_arrows)


def pi1_presentation(c: AnyComputad, component: str) -> GroupPresentation:
    """Generators are the non-tree arrows of the component, one relator per cell."""
    c = groupoidalize(c)
    g = c.base
    if not g.has_object(component):
        raise ObjectNotFound(component)
    block = next(b for b in connected_components(g) if component in b)
    inside = set(block)
    tree = set(spanning_forest(g).arrows)
    gens = tuple(a.name for a in g.arrows if a.dom in inside and a.name not in tree)
    rels = []
    for cell in c.cells:
        if cell.start not in inside:
            continue
        src = tree_image(cell.source.letters, tree)
        tgt = tree_image(cell.target.letters, tree)
        rels.append(free_reduce(src + invert_letters(tgt)))
    return GroupPresentation(gens, tuple(rels))


def pi1_presentations(c: AnyComputad) -> dict[str, GroupPresentation]:
    g = as_plain(c).base
    return {block[0]: pi1_presentation(c, block[0]) for block in connected_components(g)}


def is_thin_groupoid(c: AnyComputad, limits: Limits = DEFAULT_LIMITS):
    verdicts = {root: is_trivial_group(p, limits) for root, p in pi1_presentations(c).items()}
    bad = {k: v.witness for k, v in verdicts.items() if isinstance(v, No)}
    if bad:
        return No(bad)
    if all(isinstance(v, Yes) for v in verdicts.values()):
        return Yes("every component has trivial fundamental group")
    return Unknown("; ".join(v.reason for v in verdicts.values() if isinstance(v, Unknown)))


__all__ = [
    "FinQuotient", "present_category_finite", "satisfies_cancellation_finite",
    "RewriteRule", "RewriteSystem", "Complete", "Timeout", "knuth_bendix", "normal_form",
    "irreducible_counts", "hom_table", "HomTable", "is_thin_category",
    "pi1_presentation", "pi1_presentations", "is_thin_groupoid",
    "abelianization_invariants", "is_trivial_group",
]
