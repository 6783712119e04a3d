"""Named corpus of `.cmp` documents shipped with the package."""
from __future__ import annotations

from importlib import resources
from pathlib import Path as FsPath

from .cmpformat import CmpDocument, format_document, parse
from .computad import Computad2, TwoCell
from .free import Path
from .graph import Graph


def names() -> list[str]:
    files = resources.files("computads").joinpath("data")
    return sorted(f.name[:-4] for f in files.iterdir() if f.name.endswith(".cmp"))


def text(name: str) -> str:
    return resources.files("computads").joinpath("data").joinpath(f"{name}.cmp").read_text(encoding="utf-8")


def load(name: str) -> CmpDocument:
    return parse(text(name))


def entity(name: str):
    return load(name).entity


def export(directory) -> list[FsPath]:
    out = FsPath(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for n in names():
        p = out / f"{n}.cmp"
        p.write_text(text(n), encoding="utf-8")
        written.append(p)
    return written


def delta_dot_truncated(top: int = 4) -> Computad2:
    """Faces and degeneracies on objects 0..top with the cosimplicial identities.

    d{i}_{m}: m -> m+1 (i <= m); s{j}_{m}: m+1 -> m (j <= m-1).  Composition is
    diagrammatic, so [d{i}_{m}, d{j}_{m+1}] means d{i}_{m} first.
    """
    objects = [str(m) for m in range(top + 1)]
    arrows = []
    for m in range(top):
        arrows += [(f"d{i}_{m}", str(m), str(m + 1)) for i in range(m + 1)]
    for m in range(1, top):
        arrows += [(f"s{j}_{m}", str(m + 1), str(m)) for j in range(m)]
    g = Graph.build(objects, arrows)
    d = lambda i, m: f"d{i}_{m}"
    s = lambda j, m: f"s{j}_{m}"
    cells = []

    def cell(name, src, tgt, start):
        cells.append(TwoCell(name, Path(g, start, tuple(src)), Path(g, start, tuple(tgt))))

    for m in range(top - 1):
        for j in range(1, m + 2):
            for i in range(j):
                cell(f"f{i}{j}_{m}", [d(i, m), d(j, m + 1)], [d(j - 1, m), d(i, m + 1)], str(m))
    for m in range(1, top - 1):
        for j in range(m):
            for i in range(j + 1):
                cell(f"g{i}{j}_{m}", [s(i, m + 1), s(j, m)], [s(j + 1, m + 1), s(i, m)], str(m + 2))
    for m in range(1, top):
        for j in range(m):
            for i in range(m + 1):
                name = f"h{i}{j}_{m}"
                if i < j:
                    cell(name, [d(i, m), s(j, m)], [s(j - 1, m - 1), d(i, m - 1)], str(m))
                elif i == j:
                    cell(name, [d(i, m), s(j, m)], [], str(m))
                elif i == j + 1:
                    cell(name, [], [d(i, m), s(j, m)], str(m))
                else:
                    cell(name, [d(i, m), s(j, m)], [s(j, m - 1), d(i - 1, m - 1)], str(m))
    return Computad2(g, tuple(cells))


def delta_dot_truncated_text(top: int = 4) -> str:
    header = f"# faces and degeneracies on objects 0..{top}\n"
    return header + format_document(delta_dot_truncated(top))
