"""Combinatorial CW models of computads and their homological invariants."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .computad import AnyComputad, as_plain
from .errors import ChainComplexError
from .free import Letter, free_reduce, invert_letters
from .graph import Graph, connected_components, spanning_forest
from .groups import DEFAULT_LIMITS, GroupPresentation, Limits, No, Unknown, Yes, is_trivial_group, smith_normal_form


@dataclass(frozen=True)
class Cell1:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True)
class Cell2:
    """A disc attached along a closed signed edge word based at `start`."""

    name: str
    start: str
    word: tuple[Letter, ...]


@dataclass(frozen=True)
class Cell3:
    """A ball whose boundary is recorded as signed 2-cell multiplicities."""

    name: str
    boundary: tuple[tuple[str, int], ...]
    source: object = field(default=None, compare=False, repr=False)
    target: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class CWComplex:
    cells0: tuple[str, ...]
    cells1: tuple[Cell1, ...] = ()
    cells2: tuple[Cell2, ...] = ()
    cells3: tuple[Cell3, ...] = ()

    def __post_init__(self):
        ends = {e.name: (e.dom, e.cod) for e in self.cells1}
        for c in self.cells2:
            cur = c.start
            for a, s in c.word:
                d, k = ends[a]
                src, tgt = (d, k) if s > 0 else (k, d)
                if src != cur:
                    raise ChainComplexError(f"attaching word of {c.name} breaks at {a}")
                cur = tgt
            if cur != c.start:
                raise ChainComplexError(f"attaching word of {c.name} is not closed")
        d1, d2, d3 = boundary_matrices(self)
        if _mul(d2, d1, len(self.cells0)) or _mul(d3, d2, len(self.cells1)):
            raise ChainComplexError("boundary of a boundary is not zero")

    def counts(self) -> tuple[int, int, int, int]:
        return (len(self.cells0), len(self.cells1), len(self.cells2), len(self.cells3))

    @property
    def one_skeleton(self) -> Graph:
        return Graph.build(self.cells0, ((e.name, e.dom, e.cod) for e in self.cells1))


def _mul(a: list[list[int]], b: list[list[int]], ncols: int) -> bool:
    """True when the product a*b has a nonzero entry."""
    for row in a:
        acc = [0] * ncols
        for k, v in enumerate(row):
            if v:
                for j, w in enumerate(b[k]):
                    acc[j] += v * w
        if any(acc):
            return True
    return False


def boundary_matrices(cw: CWComplex):
    """Integer matrices with one row per k-cell, columns indexed by (k-1)-cells."""
    v = {x: i for i, x in enumerate(cw.cells0)}
    e = {c.name: i for i, c in enumerate(cw.cells1)}
    f = {c.name: i for i, c in enumerate(cw.cells2)}
    d1 = []
    for c in cw.cells1:
        row = [0] * len(v)
        row[v[c.cod]] += 1
        row[v[c.dom]] -= 1
        d1.append(row)
    d2 = []
    for c in cw.cells2:
        row = [0] * len(e)
        for a, s in c.word:
            row[e[a]] += s
        d2.append(row)
    d3 = []
    for c in cw.cells3:
        row = [0] * len(f)
        for name, k in c.boundary:
            row[f[name]] += k
        d3.append(row)
    return d1, d2, d3


def f_top1(g: Graph) -> CWComplex:
    return CWComplex(tuple(g.objects), tuple(Cell1(a.name, a.dom, a.cod) for a in g.arrows))


def f_top2(c: AnyComputad) -> CWComplex:
    """One disc per cell, attached along source followed by the inverted target."""
    c = as_plain(c)
    base = f_top1(c.base)
    discs = []
    for cell in c.cells:
        word = tuple(cell.source.letters) + invert_letters(cell.target.letters)
        discs.append(Cell2(cell.name, cell.start, word))
    return CWComplex(base.cells0, base.cells1, tuple(discs))


def f_top3(c3) -> CWComplex:
    from .twodim import exponent_sums, normalized_computad3, validate_2word
    from .errors import InvalidTwoCellWord

    c3 = normalized_computad3(c3)
    two = f_top2(c3.base)
    balls = []
    for cell in c3.cells3:
        for side in (cell.source, cell.target):
            problems = validate_2word(side, c3.base)
            if problems:
                raise InvalidTwoCellWord(f"3-cell {cell.name}: {problems[0]}")
        coeff = exponent_sums(cell.source)
        coeff.subtract(exponent_sums(cell.target))
        order = {x.name: i for i, x in enumerate(two.cells2)}
        bnd = tuple(sorted(((k, v) for k, v in coeff.items() if v), key=lambda kv: order[kv[0]]))
        balls.append(Cell3(cell.name, bnd, cell.source, cell.target))
    return CWComplex(two.cells0, two.cells1, two.cells2, tuple(balls))


def euler_char(cw: CWComplex) -> int:
    n0, n1, n2, n3 = cw.counts()
    return n0 - n1 + n2 - n3


def boundary_ranks(cw: CWComplex) -> tuple[int, int, int]:
    return tuple(kernels.integer_rank(m) if m and m[0] else 0 for m in boundary_matrices(cw))


def betti_numbers(cw: CWComplex) -> tuple[int, int, int, int]:
    n = cw.counts()
    r1, r2, r3 = boundary_ranks(cw)
    b = (n[0] - r1, n[1] - r1 - r2, n[2] - r2 - r3, n[3] - r3)
    assert b[0] - b[1] + b[2] - b[3] == euler_char(cw)
    return b


def homology_torsion(cw: CWComplex) -> dict[str, tuple[int, ...]]:
    """Torsion coefficients of H_1 and H_2 over the integers."""
    _, d2, d3 = boundary_matrices(cw)
    tors = {}
    for label, m in (("H1", d2), ("H2", d3)):
        diag = smith_normal_form(m) if m and m[0] else []
        tors[label] = tuple(d for d in diag if d > 1)
    return tors


def pi1_from_cw(cw: CWComplex) -> dict[str, GroupPresentation]:
    """Spanning-tree presentation of the fundamental group of each component."""
    g = cw.one_skeleton
    tree = set(spanning_forest(g).arrows)
    out = {}
    for block in connected_components(g):
        inside = set(block)
        gens = tuple(e.name for e in cw.cells1 if e.dom in inside and e.name not in tree)
        rels = tuple(free_reduce(l for l in c.word if l[0] not in tree)
                     for c in cw.cells2 if c.start in inside)
        out[block[0]] = GroupPresentation(gens, rels)
    return out


def is_simply_connected(cw: CWComplex, limits: Limits = DEFAULT_LIMITS):
    verdicts = [is_trivial_group(p, limits) for p in pi1_from_cw(cw).values()]
    if any(isinstance(v, No) for v in verdicts):
        return No([v.witness for v in verdicts if isinstance(v, No)])
    if all(isinstance(v, Yes) for v in verdicts):
        return Yes()
    return Unknown("coset enumeration did not close")


@dataclass(frozen=True)
class Rank:
    n: int


@dataclass(frozen=True)
class NotSimplyConnected:
    witness: object = None


def pi2_rank_if_simply_connected(cw: CWComplex, limits: Limits = DEFAULT_LIMITS):
    v = is_simply_connected(cw, limits)
    if isinstance(v, No):
        return NotSimplyConnected(v.witness)
    if isinstance(v, Unknown):
        return v
    return Rank(betti_numbers(cw)[2])
