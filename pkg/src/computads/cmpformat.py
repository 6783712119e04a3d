"""Line-oriented `.cmp` text format for graphs, computads, tables and presentations.

Declaration order is preserved and is the canonical order for every tie-break.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Sequence

from .computad import (
    Computad2,
    GroupoidalComputad2,
    ReflexiveComputad2,
    TwoCell,
    WordPresentation,
    as_plain,
    i2,
    suspend,
)
from .errors import ComputadError, NotComposable, ParseError, UnresolvedReference
from .free import FiniteCategoryTable, Letter
from .graph import Graph, ReflexiveGraph, strip_reflexive
from .twodim import Computad3, ThreeCell, TwoCellWord, WhiskerFactor, format_2word

HEADERS = ("computad", "groupoidal", "table", "monoid", "group")
_ID = r"[^\s:;|\[\]()=]+"
_RE = {
    "object": re.compile(rf"^object\s+({_ID})$"),
    "arrow": re.compile(rf"^arrow\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})$"),
    "morphism": re.compile(rf"^morphism\s+({_ID})\s*:\s*({_ID})\s*->\s*({_ID})$"),
    "identity": re.compile(rf"^identity\s+({_ID})\s*:\s*({_ID})$"),
    "cell2": re.compile(rf"^cell2\s+({_ID})\s*:\s*(.*?)\s*=>\s*(.*)$"),
    "cell3": re.compile(rf"^cell3\s+({_ID})\s*:\s*(.*?)\s*=>\s*(.*)$"),
    "compose": re.compile(rf"^compose\s+({_ID})\s+({_ID})\s*=\s*({_ID})$"),
    "generator": re.compile(rf"^generator\s+({_ID})$"),
    "relation": re.compile(r"^relation\s+(.*?)\s*=\s*(.*)$"),
    "tree": re.compile(r"^tree\b(.*)$"),
    "fcs": re.compile(r"^fcs\b(.*)$"),
}
_IDPATH = re.compile(rf"^id\(\s*({_ID})\s*\)$")


@dataclass(frozen=True)
class CmpDocument:
    kind: str
    entity: object
    tree: tuple[str, ...] | None = None
    fcs: tuple[str, ...] | None = None

    def as_computad(self):
        """Cell data as a plain or groupoidal 2-computad; graphs gain no cells."""
        e = self.entity
        if isinstance(e, FiniteCategoryTable):
            raise ComputadError("a finite category table has no cells")
        if isinstance(e, WordPresentation):
            return suspend(e)
        if isinstance(e, Computad3):
            return as_plain(e.base)
        if isinstance(e, ReflexiveComputad2):
            return e.normalize()
        if isinstance(e, ReflexiveGraph):
            return i2(strip_reflexive(e))
        if isinstance(e, Graph):
            return i2(e)
        return e


def _letters(text: str) -> list[Letter]:
    out = []
    for tok in text.split():
        out.append((tok[:-3], -1) if tok.endswith("^-1") else (tok, 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.lines = []
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.lines.append((n, line))

    def parse(self) -> CmpDocument:
        headers = set()
        body = []
        for n, line in self.lines:
            if line in HEADERS:
                headers.add(line)
            else:
                body.append((n, line))
        if "table" in headers:
            return self._table(body)
        if "monoid" in headers or "group" in headers:
            if {"monoid", "group"} <= headers:
                raise ParseError(body[0][0] if body else 1, "file declares both monoid and group")
            return self._presentation("group" if "group" in headers else "monoid", body)
        return self._computad(body, "groupoidal" in headers, "computad" in headers)

    @staticmethod
    def _match(n: int, line: str, allowed: Sequence[str]):
        word = line.split()[0]
        if word not in allowed:
            raise ParseError(n, f"unexpected statement {word!r}")
        m = _RE[word].match(line)
        if m is None:
            raise ParseError(n, f"malformed {word} statement")
        return word, m

    # -- computads ----------------------------------------------------------

    def _computad(self, body, groupoidal: bool, cellular: bool = False) -> CmpDocument:
        objects: list[str] = []
        arrows: list[tuple[str, str, str]] = []
        identities: list[tuple[str, str]] = []
        cells2, cells3 = [], []
        tree = fcs = None
        names: set[str] = set()
        allowed = ("object", "arrow", "identity", "cell2", "cell3", "tree", "fcs")
        for n, line in body:
            word, m = self._match(n, line, allowed)
            if word in ("object", "arrow", "identity", "cell2", "cell3"):
                if m.group(1) in names:
                    raise ParseError(n, f"duplicate id {m.group(1)!r}")
                names.add(m.group(1))
            if word == "object":
                objects.append(m.group(1))
            elif word == "arrow":
                arrows.append((m.group(1), m.group(2), m.group(3)))
            elif word == "identity":
                identities.append((m.group(1), m.group(2)))
            elif word == "cell2":
                cells2.append((n, m.group(1), m.group(2), m.group(3)))
            elif word == "cell3":
                cells3.append((n, m.group(1), m.group(2), m.group(3)))
            elif word == "tree":
                tree = tuple(m.group(1).split())
            else:
                fcs = tuple(m.group(1).split())
        obj_set = set(objects)
        for a, s, t in arrows:
            for x in (s, t):
                if x not in obj_set:
                    raise UnresolvedReference(self._line_of("arrow", a, body), x, "object")
        for i, x in identities:
            if x not in obj_set:
                raise UnresolvedReference(self._line_of("identity", i, body), x, "object")
        if groupoidal and identities:
            raise ParseError(self._line_of("identity", None, body), "identity arrows are not allowed in groupoidal files")
        all_arrows = arrows + [(i, x, x) for i, x in identities]
        g = Graph.build(objects, all_arrows)
        refl = ReflexiveGraph(g, tuple((x, i) for i, x in identities)) if identities else None
        known_arrows = {a for a, _, _ in all_arrows}
        if tree is not None:
            for a in tree:
                if a not in known_arrows:
                    raise UnresolvedReference(self._line_of("tree", None, body), a, "arrow")
        built = []
        for n, name, src, tgt in cells2:
            built.append(self._cell2(n, g, name, src, tgt, groupoidal, known_arrows, obj_set))
        if groupoidal:
            base = GroupoidalComputad2(g, tuple(built))
        elif refl is not None:
            base = ReflexiveComputad2(refl, tuple(built))
        else:
            base = Computad2(g, tuple(built))
        if fcs is not None:
            cell_names = {c.name for c in built}
            for c in fcs:
                if c not in cell_names:
                    raise UnresolvedReference(self._line_of("fcs", None, body), c, "cell")
        if cells3:
            c3 = []
            for n, name, src, tgt in cells3:
                c3.append(ThreeCell(name, self._word(n, base, src, known_arrows, obj_set),
                                    self._word(n, base, tgt, known_arrows, obj_set)))
            return CmpDocument("computad3", Computad3(base, tuple(c3)), tree, fcs)
        if cells2 or cellular:
            kind = "groupoidal" if groupoidal else ("reflexive-computad" if refl is not None else "computad")
            return CmpDocument(kind, base, tree, fcs)
        if groupoidal:
            return CmpDocument("groupoidal", base, tree, fcs)
        if refl is not None:
            return CmpDocument("reflexive-graph", refl, tree, fcs)
        return CmpDocument("graph", g, tree, fcs)

    @staticmethod
    def _line_of(word: str, name, body) -> int:
        for n, line in body:
            parts = line.split()
            if parts[0] == word and (name is None or (len(parts) > 1 and parts[1] == name)):
                return n
        return 0

    @staticmethod
    def _path(n: int, text: str, known_arrows: set[str], obj_set: set[str]):
        """Signed letters plus an explicit start when written as id(obj)."""
        text = text.strip()
        m = _IDPATH.match(text)
        if m:
            if m.group(1) not in obj_set:
                raise UnresolvedReference(n, m.group(1), "object")
            return [], m.group(1)
        if not text:
            raise ParseError(n, "empty path; write id(<object>)")
        letters = _letters(text)
        for a, _ in letters:
            if a not in known_arrows:
                raise UnresolvedReference(n, a, "arrow")
        return letters, None

    def _cell2(self, n, g, name, src, tgt, groupoidal, known_arrows, obj_set) -> TwoCell:
        s, s0 = self._path(n, src, known_arrows, obj_set)
        t, t0 = self._path(n, tgt, known_arrows, obj_set)
        if not groupoidal and any(e < 0 for _, e in s + t):
            raise ParseError(n, "inverse arrows are only allowed in groupoidal files")
        start = s0 or t0
        try:
            if groupoidal:
                from .free import reduce_walk

                sw = reduce_walk(g, s, start)
                tw = reduce_walk(g, t, start if start is not None else sw.start)
                cell = TwoCell(name, sw, tw)
            else:
                from .free import make_path

                sp = make_path(g, [a for a, _ in s], start)
                tp = make_path(g, [a for a, _ in t], start if start is not None else sp.start)
                cell = TwoCell(name, sp, tp)
        except NotComposable as exc:
            raise ParseError(n, f"cell {name}: {exc}") from None
        if cell.source.end != cell.target.end:
            raise ParseError(n, f"cell {name}: boundaries are not parallel")
        return cell

    def _word(self, n, base, text: str, known_arrows, obj_set) -> TwoCellWord:
        text = text.strip()
        m = re.match(r"^id\((.*)\)$", text)
        if m and "[" not in text:
            letters, start = self._path(n, m.group(1), known_arrows, obj_set)
            if start is None:
                g = as_plain(base).base if not isinstance(base, ReflexiveComputad2) else base.base.base
                a, e = letters[0]
                start = g.dom(a) if e > 0 else g.cod(a)
            return TwoCellWord((), start, tuple(letters))
        cells = {c.name for c in base.cells}
        factors = []
        for part in text.split(";"):
            fm = re.match(r"^\s*\[(.*?)\|(.*?)\|(.*?)\]\s*$", part)
            if fm is None:
                raise ParseError(n, f"malformed factor {part.strip()!r}")
            gen = fm.group(2).strip()
            exp = 1
            if gen.endswith("^-1"):
                gen, exp = gen[:-3], -1
            if gen not in cells:
                raise UnresolvedReference(n, gen, "cell")
            left = self._whisker(n, fm.group(1), known_arrows, obj_set)
            right = self._whisker(n, fm.group(3), known_arrows, obj_set)
            factors.append(WhiskerFactor(left, gen, exp, right))
        return TwoCellWord(tuple(factors))

    def _whisker(self, n, text: str, known_arrows, obj_set) -> tuple[Letter, ...]:
        if not text.strip():
            return ()
        letters, _ = self._path(n, text, known_arrows, obj_set)
        return tuple(letters)

    # -- tables and presentations ---------------------------------------------

    def _table(self, body) -> CmpDocument:
        objects, morphisms, identities, compose = [], [], [], []
        for n, line in body:
            word, m = self._match(n, line, ("object", "identity", "morphism", "compose"))
            if word == "object":
                objects.append(m.group(1))
            elif word == "identity":
                identities.append((m.group(2), m.group(1)))
                morphisms.append((m.group(1), m.group(2), m.group(2)))
            elif word == "morphism":
                morphisms.append((m.group(1), m.group(2), m.group(3)))
            else:
                compose.append((n, m.group(1), m.group(2), m.group(3)))
        objs = set(objects)
        names = {x for x, _, _ in morphisms}
        for x, d, c in morphisms:
            for o in (d, c):
                if o not in objs:
                    raise UnresolvedReference(self._line_of_any(x, body), o, "object")
        for n, f, g, h in compose:
            for x in (f, g, h):
                if x not in names:
                    raise UnresolvedReference(n, x, "morphism")
        t = FiniteCategoryTable(tuple(objects), tuple(morphisms), tuple(identities),
                                tuple((f, g, h) for _, f, g, h in compose))
        return CmpDocument("table", t)

    @staticmethod
    def _line_of_any(name: str, body) -> int:
        for n, line in body:
            parts = line.split()
            if len(parts) > 1 and parts[1] == name:
                return n
        return 0

    def _presentation(self, kind: str, body) -> CmpDocument:
        gens: list[str] = []
        rels = []
        for n, line in body:
            word, m = self._match(n, line, ("generator", "relation"))
            if word == "generator":
                gens.append(m.group(1))
                continue
            sides = []
            for side in (m.group(1), m.group(2)):
                side = side.strip()
                letters = [] if side == "1" else _letters(side)
                for a, e in letters:
                    if a not in gens:
                        raise UnresolvedReference(n, a, "generator")
                    if e < 0 and kind == "monoid":
                        raise ParseError(n, "inverse letters are not allowed in monoid files")
                sides.append(tuple(letters))
            rels.append(tuple(sides))
        return CmpDocument(kind, WordPresentation(kind, tuple(gens), tuple(rels)))


def parse(text: str) -> CmpDocument:
    return _Parser(text).parse()


def parse_file(path) -> CmpDocument:
    return parse(FsPath(path).read_text(encoding="utf-8"))


# -- printing -------------------------------------------------------------------

def _fmt_path(b) -> str:
    letters = b.letters
    if not letters:
        return f"id({b.start})"
    return " ".join(a if e > 0 else f"{a}^-1" for a, e in letters)


def _fmt_graph(g: Graph, skip: frozenset = frozenset()) -> list[str]:
    lines = [f"object {x}" for x in g.objects]
    lines += [f"arrow {a.name} : {a.dom} -> {a.cod}" for a in g.arrows if a.name not in skip]
    return lines


def format_document(doc) -> str:
    """Canonical text; parse(format_document(d)) reproduces d."""
    if not isinstance(doc, CmpDocument):
        doc = CmpDocument(_kind_of(doc), doc)
    e = doc.entity
    lines: list[str] = []
    if doc.kind == "table":
        lines.append("table")
        lines += [f"object {x}" for x in e.objects]
        ident = {i for _, i in e.identities}
        lines += [f"identity {i} : {x}" for x, i in e.identities]
        lines += [f"morphism {m} : {d} -> {c}" for m, d, c in e.morphisms if m not in ident]
        lines += [f"compose {f} {g} = {h}" for f, g, h in e.compose]
    elif doc.kind in ("monoid", "group"):
        lines.append(doc.kind)
        lines += [f"generator {a}" for a in e.generators]
        for lhs, rhs in e.relations:
            lines.append(f"relation {_fmt_word(lhs)} = {_fmt_word(rhs)}")
    else:
        c3 = e if isinstance(e, Computad3) else None
        base = c3.base if c3 is not None else e
        if isinstance(base, Graph):
            lines += _fmt_graph(base)
        elif isinstance(base, ReflexiveGraph):
            lines += _fmt_graph(base.base, base.identity_set)
            lines += [f"identity {i} : {x}" for x, i in base.identities]
        else:
            if isinstance(base, GroupoidalComputad2):
                lines.append("groupoidal")
            elif not base.cells and c3 is None:
                lines.append("computad")
            if isinstance(base, ReflexiveComputad2):
                lines += _fmt_graph(base.base.base, base.base.identity_set)
                lines += [f"identity {i} : {x}" for x, i in base.base.identities]
            else:
                lines += _fmt_graph(base.base)
            lines += [f"cell2 {c.name} : {_fmt_path(c.source)} => {_fmt_path(c.target)}" for c in base.cells]
        if c3 is not None:
            lines += [f"cell3 {x.name} : {format_2word(x.source)} => {format_2word(x.target)}" for x in c3.cells3]
        if doc.tree is not None:
            lines.append("tree " + " ".join(doc.tree))
        if doc.fcs is not None:
            lines.append("fcs " + " ".join(doc.fcs))
    return "\n".join(lines) + "\n"


def _fmt_word(w) -> str:
    if not w:
        return "1"
    return " ".join(a if e > 0 else f"{a}^-1" for a, e in w)


def _kind_of(e) -> str:
    if isinstance(e, FiniteCategoryTable):
        return "table"
    if isinstance(e, WordPresentation):
        return e.kind
    if isinstance(e, Computad3):
        return "computad3"
    if isinstance(e, GroupoidalComputad2):
        return "groupoidal"
    if isinstance(e, ReflexiveComputad2):
        return "reflexive-computad"
    if isinstance(e, Computad2):
        return "computad"
    if isinstance(e, ReflexiveGraph):
        return "reflexive-graph"
    return "graph"
