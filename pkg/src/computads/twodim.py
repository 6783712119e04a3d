"""Words of whiskered 2-cells, 3-computads and contractible subcomputads.

A 2-cell word is a vertical chain of factors L * gen^e * R.  Whiskers are
signed letters, so words live in the free (2,0)-category; boundaries are
compared as reduced walks.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

from .computad import AnyComputad, Computad2, ReflexiveComputad2, SubComputad, as_plain, quotient_collapse, sub_of_tree
from .errors import MultipleZeroCells, NotFcsTriple
from .free import Letter, free_reduce, invert_letters
from .graph import Graph, Subgraph, _spanning_trees, is_connected, is_tree
from .groups import DEFAULT_LIMITS, Limits, No, Unknown, Yes

NORMALIZE_MAX_ROUNDS = 10_000
LIFT_MAX_STATES = 50_000
TREE_SEARCH_LIMIT = 5_000


@dataclass(frozen=True)
class WhiskerFactor:
    left: tuple[Letter, ...]
    gen: str
    exp: int
    right: tuple[Letter, ...] = ()

    def key(self) -> tuple:
        return (len(self.left), self.gen, self.exp)


@dataclass(frozen=True)
class TwoCellWord:
    """Vertical composite of factors; `start`/`identity` anchor the empty word."""

    factors: tuple[WhiskerFactor, ...] = ()
    start: str = ""
    identity: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class ThreeCell:
    name: str
    source: TwoCellWord
    target: TwoCellWord


@dataclass(frozen=True)
class Computad3:
    base: AnyComputad
    cells3: tuple[ThreeCell, ...] = ()


def normalized_computad3(c3: Computad3) -> Computad3:
    """Same data over a plain base; identity arrows vanish from whiskers."""
    if not isinstance(c3.base, ReflexiveComputad2):
        return c3
    drop = c3.base.base.identity_set

    def strip(w: TwoCellWord) -> TwoCellWord:
        fs = tuple(WhiskerFactor(tuple(l for l in f.left if l[0] not in drop), f.gen, f.exp,
                                 tuple(l for l in f.right if l[0] not in drop)) for f in w.factors)
        return TwoCellWord(fs, w.start, tuple(l for l in w.identity if l[0] not in drop))

    cells = tuple(ThreeCell(x.name, strip(x.source), strip(x.target)) for x in c3.cells3)
    return Computad3(c3.base.normalize(), cells)


# -- boundaries ----------------------------------------------------------------

def _ltgt(g: Graph, l: Letter) -> str:
    return g.cod(l[0]) if l[1] > 0 else g.dom(l[0])


def _lsrc(g: Graph, l: Letter) -> str:
    return g.dom(l[0]) if l[1] > 0 else g.cod(l[0])


def _sides(c, gen: str, exp: int):
    cell = c.cell(gen)
    s, t = cell.source.letters, cell.target.letters
    return (s, t) if exp > 0 else (t, s)


def factor_start(f: WhiskerFactor, c) -> str:
    return _lsrc(c.base, f.left[0]) if f.left else c.cell(f.gen).start


def factor_source(f: WhiskerFactor, c) -> tuple[Letter, ...]:
    s, _ = _sides(c, f.gen, f.exp)
    return free_reduce(f.left + s + f.right)


def factor_target(f: WhiskerFactor, c) -> tuple[Letter, ...]:
    _, t = _sides(c, f.gen, f.exp)
    return free_reduce(f.left + t + f.right)


def word_start(w: TwoCellWord, c) -> str:
    return factor_start(w.factors[0], c) if w.factors else w.start


def word_source(w: TwoCellWord, c) -> tuple[Letter, ...]:
    return factor_source(w.factors[0], c) if w.factors else free_reduce(w.identity)


def word_target(w: TwoCellWord, c) -> tuple[Letter, ...]:
    return factor_target(w.factors[-1], c) if w.factors else free_reduce(w.identity)


def _chain_end(g: Graph, start: str, letters: Sequence[Letter]) -> str | None:
    cur = start
    for l in letters:
        if not g.has_arrow(l[0]) or _lsrc(g, l) != cur:
            return None
        cur = _ltgt(g, l)
    return cur


def validate_2word(w: TwoCellWord, c) -> list[str]:
    """Problems with the word; the first entry is the first mismatch."""
    c = as_plain(c)
    g = c.base
    problems = []
    if not w.factors:
        if not g.has_object(w.start) or _chain_end(g, w.start, w.identity) is None:
            problems.append("identity word: invalid path")
        return problems
    prev = None
    for i, f in enumerate(w.factors):
        if f.gen not in c.cell_map:
            problems.append(f"factor {i}: unknown cell {f.gen}")
            return problems
        cell = c.cell(f.gen)
        start = _lsrc(g, f.left[0]) if f.left and g.has_arrow(f.left[0][0]) else cell.start
        if _chain_end(g, start, f.left) != cell.start:
            problems.append(f"factor {i}: left whisker does not reach {cell.start}")
            return problems
        if _chain_end(g, cell.end, f.right) is None:
            problems.append(f"factor {i}: right whisker does not leave {cell.end}")
            return problems
        cur = (start, factor_source(f, c))
        if prev is not None and prev != cur:
            problems.append(f"chain break between factors {i - 1} and {i}")
            return problems
        prev = (start, factor_target(f, c))
    return problems


# -- algebra of words ----------------------------------------------------------

def invert_word(w: TwoCellWord) -> TwoCellWord:
    fs = tuple(WhiskerFactor(f.left, f.gen, -f.exp, f.right) for f in reversed(w.factors))
    return TwoCellWord(fs, w.start, w.identity)


def whisker(w: TwoCellWord, left: Sequence[Letter] = (), right: Sequence[Letter] = ()) -> TwoCellWord:
    left, right = tuple(left), tuple(right)
    fs = tuple(WhiskerFactor(left + f.left, f.gen, f.exp, f.right + right) for f in w.factors)
    return TwoCellWord(fs, w.start, left + w.identity + right)


def vcompose(*words: TwoCellWord) -> TwoCellWord:
    fs: list[WhiskerFactor] = []
    for w in words:
        fs.extend(w.factors)
    first = words[0] if words else TwoCellWord()
    return TwoCellWord(tuple(fs), first.start, first.identity)


def exponent_sums(w: TwoCellWord) -> Counter:
    out: Counter = Counter()
    for f in w.factors:
        out[f.gen] += f.exp
    return out


def _literal(f: WhiskerFactor, side: tuple[Letter, ...]) -> tuple[Letter, ...] | None:
    whole = f.left + side + f.right
    return whole if free_reduce(whole) == whole else None


def normalize_2word(w: TwoCellWord, c) -> TwoCellWord:
    """Cancel adjacent inverse factors and sort commuting ones left to right."""
    c = as_plain(c)
    fs = list(w.factors)
    for _ in range(NORMALIZE_MAX_ROUNDS):
        changed = False
        i = 0
        while i + 1 < len(fs):
            a, b = fs[i], fs[i + 1]
            if (a.left, a.gen, a.right) == (b.left, b.gen, b.right) and a.exp == -b.exp:
                del fs[i:i + 2]
                changed = True
                i = max(i - 1, 0)
                continue
            swapped = _try_swap(a, b, c)
            if swapped is not None:
                fs[i], fs[i + 1] = swapped
                changed = True
            i += 1
        if not changed:
            break
    if fs:
        return TwoCellWord(tuple(fs))
    return TwoCellWord((), word_start(w, c), word_source(w, c))


def _try_swap(a: WhiskerFactor, b: WhiskerFactor, c):
    """Interchange when b rewrites a segment lying wholly before a's target."""
    sa, ta = _sides(c, a.gen, a.exp)
    sb, tb = _sides(c, b.gen, b.exp)
    mid_a = _literal(a, ta)
    mid_b = _literal(b, sb)
    if mid_a is None or mid_b is None or mid_a != mid_b:
        return None
    if _literal(a, sa) is None or _literal(b, tb) is None:
        return None
    if len(b.left) + len(sb) > len(a.left):
        return None
    if b.key() >= a.key():
        return None
    gap = a.left[len(b.left) + len(sb):]
    b2 = WhiskerFactor(b.left, b.gen, b.exp, gap + sa + a.right)
    a2 = WhiskerFactor(b.left + tb + gap, a.gen, a.exp, a.right)
    return b2, a2


def words_equal(w1: TwoCellWord, w2: TwoCellWord, c) -> bool:
    return normalize_2word(w1, c).factors == normalize_2word(w2, c).factors


def format_2word(w: TwoCellWord) -> str:
    def path(ls: Sequence[Letter]) -> str:
        return " ".join(a if e > 0 else f"{a}^-1" for a, e in ls)

    if not w.factors:
        inner = path(w.identity) if w.identity else f"id({w.start})"
        return f"id({inner})"
    parts = []
    for f in w.factors:
        gen = f.gen if f.exp > 0 else f"{f.gen}^-1"
        parts.append(f"[{path(f.left)} | {gen} | {path(f.right)}]")
    return " ; ".join(parts)


# -- contractible subcomputads --------------------------------------------------

@dataclass(frozen=True)
class Contraction:
    """A cell that contracts `arrow` once earlier contracted letters are erased."""

    cell: str
    arrow: str
    shape: bool  # the cell is literally arrow => id or id => arrow


def _contraction_order(c, cells: Sequence[str]) -> list[Contraction] | None:
    """Greedy elimination order covering every arrow exactly once, or None."""
    arrows = [a.name for a in c.base.arrows]
    done: set[str] = set()
    left = list(cells)
    order: list[Contraction] = []
    while left:
        hit = None
        for name in left:
            cell = c.cell(name)
            raw = cell.source.letters + cell.target.letters
            rest = [l for l in raw if l[0] not in done]
            if len(rest) == 1 and rest[0][1] > 0:
                hit = Contraction(name, rest[0][0], len(raw) == 1)
                break
        if hit is None:
            return None
        order.append(hit)
        done.add(hit.arrow)
        left.remove(hit.cell)
    return order if len(done) == len(arrows) else None


def _theta(c, k: Contraction) -> TwoCellWord:
    """Generator-level cell arrow => id for a shape contraction."""
    cell = c.cell(k.cell)
    exp = 1 if cell.source.letters else -1
    return TwoCellWord((WhiskerFactor((), k.cell, exp, ()),), cell.start)


def _remove(thetas: dict[str, TwoCellWord], ctx: tuple[Letter, ...], word: Sequence[Letter],
            rest: tuple[Letter, ...], start: str) -> TwoCellWord:
    """ctx.word.rest => ctx.rest, erasing letters of `word` left to right."""
    out: list[WhiskerFactor] = []
    word = tuple(word)
    for i, (y, e) in enumerate(word):
        after = word[i + 1:] + rest
        th = thetas[y]
        piece = whisker(th, ctx, after) if e > 0 else whisker(invert_word(th), ctx + ((y, -1),), after)
        out.extend(piece.factors)
    return TwoCellWord(tuple(out), start, ctx + rest)


def _routes(c, k: Contraction, thetas: dict[str, TwoCellWord]):
    """Two composites arrow => id through a non-shape contraction cell."""
    cell = c.cell(k.cell)
    exp = 1 if any(a == k.arrow for a, _ in cell.source.letters) else -1
    s, t = _sides(c, k.cell, exp)
    i = next(j for j, l in enumerate(s) if l[0] == k.arrow)
    p, q = s[:i], s[i + 1:]
    x = ((k.arrow, 1),)
    st = cell.start
    core = TwoCellWord((WhiskerFactor((), k.cell, exp, ()),), st)
    insert = invert_word(vcompose(_remove(thetas, (), p, x + q, st), _remove(thetas, x, q, (), st)))
    route1 = vcompose(insert, core, _remove(thetas, (), t, (), st))
    pinv, qinv = invert_letters(p), invert_letters(q)
    mid = free_reduce(pinv + t + qinv)
    route2 = vcompose(TwoCellWord((WhiskerFactor(pinv, k.cell, exp, qinv),), st),
                      _remove(thetas, (), mid, (), st))
    return route1, route2


def _one_object(c) -> None:
    if len(c.base.objects) != 1:
        raise MultipleZeroCells(f"{len(c.base.objects)} objects; a single 0-cell is required")


def _cell_names(candidate) -> tuple[str, ...]:
    return tuple(candidate.cells) if isinstance(candidate, SubComputad) else tuple(candidate)


def is_fcs(candidate, ambient: AnyComputad):
    """Decide the syntactic contractibility criterion for a set of cells."""
    c = as_plain(ambient)
    _one_object(c)
    names = _cell_names(candidate)
    if isinstance(candidate, SubComputad) and candidate.arrows:
        missing = [a.name for a in c.base.arrows if a.name not in set(candidate.arrows)]
        if missing:
            return No(f"arrow {missing[0]} is not in the candidate")
    used = {a for n in names for b in (c.cell(n).source, c.cell(n).target) for a, _ in b.letters}
    for a in c.base.arrows:
        if a.name not in used:
            return No(f"no cell of the candidate involves {a.name}, so no 2-cell links it to the identity")
    order = _contraction_order(c, names)
    if order is None:
        return Unknown("cells do not contract the arrows one at a time")
    if all(k.shape for k in order):
        return Yes("each cell contracts exactly its own arrow")
    thetas: dict[str, TwoCellWord] = {}
    for k in order:
        if k.shape:
            thetas[k.arrow] = _theta(c, k)
            continue
        cell = c.cell(k.cell)
        if any(y not in thetas for y, _ in cell.source.letters + cell.target.letters if y != k.arrow):
            return Unknown(f"nested contraction at {k.cell}")
        r1, r2 = _routes(c, k, thetas)
        if not words_equal(r1, r2, c):
            return No((format_2word(r1), format_2word(r2)))
        thetas[k.arrow] = r1
    return Unknown("alternative composites agree; full uniqueness is not decided")


# -- presentations from a contractible subcomputad ----------------------------------

@dataclass(frozen=True)
class Presentation320:
    collapsed: Computad3
    lifted: tuple[ThreeCell | None, ...]
    tree: Subgraph = field(repr=False, default=None)
    fcs: tuple[str, ...] = ()
    original: AnyComputad = field(repr=False, default=None)

    def lifted_computad3(self) -> Computad3 | None:
        if any(x is None for x in self.lifted):
            return None
        return Computad3(self.original, tuple(self.lifted))


def _thetas_for(c, order: list[Contraction]) -> dict[str, TwoCellWord]:
    thetas: dict[str, TwoCellWord] = {}
    for k in order:
        thetas[k.arrow] = _theta(c, k) if k.shape else _routes(c, k, thetas)[0]
    return thetas


def synth_320_presentation(g2: AnyComputad, tree: Subgraph, fcs) -> Presentation320:
    """One 3-cell per cell outside the contractible part: alpha => alpha-dot."""
    g2 = as_plain(g2)
    g = g2.base
    if not is_connected(g) or not is_tree(tree.as_graph()) or set(tree.objects) != set(g.objects):
        raise NotFcsTriple("tree is not a maximal tree of the base graph")
    collapsed = quotient_collapse(g2, sub_of_tree(tree))
    names = _cell_names(fcs)
    unknown = [n for n in names if n not in collapsed.cell_map]
    if unknown:
        raise NotFcsTriple(f"unknown cell {unknown[0]}")
    order = _contraction_order(collapsed, names)
    if order is None:
        raise NotFcsTriple("cells do not contract the collapsed arrows one at a time")
    thetas = _thetas_for(collapsed, order)
    inside = set(names)
    cells3 = []
    lifted = []
    for cell in collapsed.cells:
        if cell.name in inside:
            continue
        st = cell.start
        src = TwoCellWord((WhiskerFactor((), cell.name, 1, ()),), st)
        dot = vcompose(_remove(thetas, (), cell.source.letters, (), st),
                       invert_word(_remove(thetas, (), cell.target.letters, (), st)))
        if not dot.factors:
            dot = TwoCellWord((), st, cell.source.letters)
        name = f"{cell.name}_3"
        cells3.append(ThreeCell(name, src, dot))
        lifted.append(_lift(g2, tree, cell.name, inside, name))
    return Presentation320(Computad3(collapsed, tuple(cells3)), tuple(lifted), tree, names, g2)


def _tree_paths_into(g: Graph, tree: Subgraph, x: str) -> list[tuple[str, ...]]:
    out = [()]
    frontier = [((), x)]
    while frontier:
        nxt = []
        for path, y in frontier:
            for a in g.in_arrows[y]:
                if a.name in tree:
                    p = (a.name,) + path
                    out.append(p)
                    nxt.append((p, a.dom))
        frontier = nxt
    return out


def _tree_paths_from(g: Graph, tree: Subgraph, x: str) -> list[tuple[str, ...]]:
    out = [()]
    frontier = [((), x)]
    while frontier:
        nxt = []
        for path, y in frontier:
            for a in g.out_arrows[y]:
                if a.name in tree:
                    p = path + (a.name,)
                    out.append(p)
                    nxt.append((p, a.cod))
        frontier = nxt
    return out


def _lift(c: Computad2, tree: Subgraph, gen: str, inside: set[str], name: str) -> ThreeCell | None:
    """Whisker the cell by tree paths until the contractible cells rewrite its
    source into its target inside the original computad."""
    g = c.base
    cell = c.cell(gen)
    if any(e < 0 for b in (cell.source, cell.target) for _, e in b.letters):
        return None
    lefts = _tree_paths_into(g, tree, cell.start)
    rights = _tree_paths_from(g, tree, cell.end)
    pairs = sorted(((l, r) for l in lefts for r in rights), key=lambda lr: (len(lr[0]) + len(lr[1]), lr))
    s = tuple(a for a, _ in cell.source.letters)
    t = tuple(a for a, _ in cell.target.letters)
    for l, r in pairs:
        word = _rewrite_search(c, l + s + r, l + t + r, [n for n in (x.name for x in c.cells) if n in inside])
        if word is not None:
            lw = tuple((a, 1) for a in l)
            rw = tuple((a, 1) for a in r)
            start = g.dom(l[0]) if l else cell.start
            src = TwoCellWord((WhiskerFactor(lw, gen, 1, rw),), start)
            tgt = TwoCellWord(word, start, lw + cell.source.letters + rw) if word else TwoCellWord((), start, lw + cell.source.letters + rw)
            return ThreeCell(name, src, tgt)
    return None


def _rewrite_search(c: Computad2, start: tuple[str, ...], goal: tuple[str, ...], gens: list[str]):
    """Breadth-first search for a chain of whiskered cells between positive paths."""
    if start == goal:
        return ()
    g = c.base
    sides = []
    for n in gens:
        cell = c.cell(n)
        s = tuple(a for a, _ in cell.source.letters)
        t = tuple(a for a, _ in cell.target.letters)
        sides.append((n, 1, s, t, cell.start))
        sides.append((n, -1, t, s, cell.start))
    longest = max((max(len(s), len(t)) for _, _, s, t, _ in sides), default=0)
    bound = max(len(start), len(goal)) + 2 * longest
    first_obj = g.dom(start[0]) if start else None
    prev: dict[tuple[str, ...], tuple] = {start: None}
    queue = deque([start])
    while queue and len(prev) < LIFT_MAX_STATES:
        p = queue.popleft()
        objs = [g.dom(p[0]) if p else first_obj] + [g.cod(a) for a in p]
        for n, e, s, t, obj in sides:
            k = len(s)
            for i in range(len(p) - k + 1):
                if p[i:i + k] != s or (k == 0 and objs[i] != obj):
                    continue
                q = p[:i] + t + p[i + k:]
                if len(q) > bound or q in prev:
                    continue
                prev[q] = (p, WhiskerFactor(tuple((a, 1) for a in p[:i]), n, e, tuple((a, 1) for a in p[i + k:])))
                if q == goal:
                    out = []
                    cur = q
                    while prev[cur] is not None:
                        parent, f = prev[cur]
                        out.append(f)
                        cur = parent
                    return tuple(reversed(out))
                queue.append(q)
    return None


# -- local thinness ---------------------------------------------------------------

@dataclass(frozen=True)
class NotThin:
    reason: str
    pi2_rank: int | None = None
    chi: int | None = None


@dataclass(frozen=True)
class ThinByFcs:
    tree: tuple[str, ...]
    fcs: tuple[str, ...]
    matching: tuple[tuple[str, str], ...]


def _strict_fcs(collapsed) -> tuple[str, ...] | None:
    pick: dict[str, str] = {}
    for cell in collapsed.cells:
        letters = cell.source.letters + cell.target.letters
        if len(letters) == 1 and letters[0][1] > 0 and letters[0][0] not in pick:
            pick[letters[0][0]] = cell.name
    if len(pick) != len(collapsed.base.arrows):
        return None
    return tuple(pick.values())


def _match(outside: list[str], rows: list[tuple[str, Counter]]) -> list[tuple[str, str]] | None:
    """Assign distinct 3-cells whose boundary meets the outside cells in +-1 at one cell."""
    cand: dict[str, list[str]] = {}
    for name, row in rows:
        hits = [(x, row.get(x, 0)) for x in outside if row.get(x, 0)]
        if len(hits) == 1 and abs(hits[0][1]) == 1:
            cand.setdefault(hits[0][0], []).append(name)
    out = []
    taken: set[str] = set()
    for x in outside:
        free = [n for n in cand.get(x, []) if n not in taken]
        if not free:
            return None
        taken.add(free[0])
        out.append((x, free[0]))
    return out


def locally_thin_criteria(c3: Computad3, limits: Limits = DEFAULT_LIMITS):
    from .cw import Rank, euler_char, f_top3, pi2_rank_if_simply_connected

    c3 = normalized_computad3(c3)
    cw = f_top3(c3)
    chi = euler_char(cw)
    if chi > 1:
        return NotThin("euler characteristic exceeds 1", None, chi)
    r = pi2_rank_if_simply_connected(cw, limits)
    if isinstance(r, Rank) and r.n > 0:
        return NotThin("second homotopy group has positive rank", r.n, chi)
    base = as_plain(c3.base)
    g = base.base
    if not g.objects or not is_connected(g):
        return Unknown("base is not connected")
    rows = [(x.name, _boundary(x)) for x in c3.cells3]
    for i, tree_arrows in enumerate(_spanning_trees(g)):
        if i >= TREE_SEARCH_LIMIT:
            break
        tree = g.subgraph(tree_arrows, g.objects)
        collapsed = quotient_collapse(base, sub_of_tree(tree))
        fcs = _strict_fcs(collapsed)
        if fcs is None:
            continue
        outside = [x.name for x in collapsed.cells if x.name not in set(fcs)]
        matching = _match(outside, rows)
        if matching is not None:
            return ThinByFcs(tuple(tree_arrows), fcs, tuple(matching))
    return Unknown("no spanning tree yields a contractible part matched by 3-cells")


def _boundary(x: ThreeCell) -> Counter:
    row = exponent_sums(x.source)
    row.subtract(exponent_sums(x.target))
    return row
