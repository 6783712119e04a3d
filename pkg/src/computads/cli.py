"""Command line front end: reads `.cmp` files and prints JSON reports.

Exit status is 0 for definite answers, 2 for Unknown or Timeout and 1 for
errors.  Every report carries `"schema": 1` and contains no floats.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import random
import sys

from . import fixtures
from .cmpformat import CmpDocument, format_document, parse_file
from .computad import (
    Computad2,
    GroupoidalComputad2,
    quotient_collapse,
    sub_of_tree,
)
from .cw import (
    NotSimplyConnected,
    Rank,
    betti_numbers,
    boundary_matrices,
    euler_char,
    f_top2,
    f_top3,
    homology_torsion,
    is_simply_connected,
    pi1_from_cw,
    pi2_rank_if_simply_connected,
)
from .deficiency import (
    NotFair,
    ViolatesBound,
    check_not_thin_bound,
    deficiency_of_category_presentation,
    deficiency_of_presentation,
    lift_to_category_presentation,
    synth_efficient_groupoid,
    synth_monotone,
    synth_strictly_increasing,
)
from .errors import ComputadError
from .free import INFINITE, FiniteCategoryTable, Free, classify_total_order, hom_count_free, recognize_free_category
from .graph import (
    Graph,
    Subgraph,
    classify_monotone,
    connected_components,
    euler_char_1,
    is_acyclic,
    is_connected,
    is_fair,
    is_forest,
    is_tree,
    is_weak_forest,
    is_weak_tree,
    maximal_tree,
)
from .groups import GroupPresentation, Limits, No, Unknown, Yes, abelianization_invariants, format_word, tietze_simplify
from .presentation import Timeout, hom_table, is_thin_category, is_thin_groupoid, pi1_presentations
from .twodim import Computad3, NotThin, ThinByFcs, format_2word, is_fcs, locally_thin_criteria, synth_320_presentation

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class _Report(dict):
    """Report body plus a flag recording whether any answer was indefinite."""

    unknown = False


# -- conversion to JSON ------------------------------------------------------------

def _letters(ws) -> str:
    return format_word(ws) if ws else "1"


def js(x):
    """Plain JSON data for library values; integers stay exact."""
    if x is INFINITE:
        return "infinite"
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(x, GroupPresentation):
        return {"generators": list(x.generators), "relators": [_letters(r) for r in x.relators]}
    if isinstance(x, (Yes, No, Unknown)):
        out = {"verdict": type(x).__name__.lower()}
        payload = x.detail if isinstance(x, Yes) else x.witness if isinstance(x, No) else x.reason
        if payload not in (None, ""):
            out["detail"] = js(payload)
        return out
    if isinstance(x, Subgraph):
        return list(x.arrows)
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else ",".join(map(str, k))): js(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [js(v) for v in x]
    if dataclasses.is_dataclass(x):
        out = {"type": type(x).__name__}
        for f in dataclasses.fields(x):
            if f.repr:
                out[f.name] = js(getattr(x, f.name))
        return out
    return str(x)


def _indefinite(v) -> bool:
    return isinstance(v, (Unknown, Timeout))


# -- loading -----------------------------------------------------------------------

def _load(path: str) -> CmpDocument:
    return parse_file(path)


def _computad(doc: CmpDocument):
    return doc.as_computad()


def _graph(doc: CmpDocument) -> Graph:
    return _computad(doc).base


def _tree(g: Graph, doc: CmpDocument, option: str | None) -> Subgraph:
    if option:
        names = [s for s in option.replace(",", " ").split() if s]
    elif doc.tree is not None:
        names = list(doc.tree)
    else:
        return maximal_tree(g)
    unknown = [a for a in names if not g.has_arrow(a)]
    if unknown:
        raise ComputadError(f"unknown tree arrow {unknown[0]}")
    return g.subgraph(names, g.objects)


def _names(option: str | None, fallback) -> tuple[str, ...]:
    if option:
        return tuple(s for s in option.replace(",", " ").split() if s)
    return tuple(fallback or ())


# -- commands ----------------------------------------------------------------------

def cmd_analyze_graph(args, limits) -> _Report:
    doc = _load(args.file)
    g = _graph(doc)
    r = _Report(objects=len(g.objects), arrows=len(g.arrows), chi1=euler_char_1(g),
                components=[list(b) for b in connected_components(g)],
                connected=is_connected(g), forest=is_forest(g), tree=is_tree(g),
                acyclic=is_acyclic(g), weak_forest=is_weak_forest(g), weak_tree=is_weak_tree(g))
    if g.objects and r["connected"]:
        r["maximal_tree"] = list(maximal_tree(g).arrows)
        fair = is_fair(g)
        r["fair"] = fair.fair
        if fair.witness is not None:
            r["fair_witness"] = list(fair.witness.arrows)
        if doc.tree is not None or args.tree:
            r["monotone"] = js(classify_monotone(g, _tree(g, doc, args.tree)))
    return r


def cmd_free_info(args, limits) -> _Report:
    doc = _load(args.file)
    if isinstance(doc.entity, FiniteCategoryTable):
        res = recognize_free_category(doc.entity)
        r = _Report(free=isinstance(res, Free), result=js(res))
        return r
    g = _graph(doc)
    homs = [{"source": x, "target": z, "size": js(hom_count_free(g, x, z))} for x in g.objects for z in g.objects]
    return _Report(homs=homs, thin=is_weak_forest(g), total_order=js(classify_total_order(g)))


def cmd_present(args, limits) -> _Report:
    c = _computad(_load(args.file))
    if isinstance(c, GroupoidalComputad2):
        raise ComputadError("hom tables need a plain computad; use pi1 for groupoidal files")
    table = hom_table(c, limits)
    if isinstance(table, Timeout):
        r = _Report(status="timeout", reason=table.reason, rules=len(table.partial.rules))
        r.unknown = True
        return r
    homs = [{"source": x, "target": z, "size": js(n)} for (x, z), n in table.sizes.items()]
    rules = [f"{' '.join(x.lhs.arrows) or 'id'} -> {' '.join(x.rhs.arrows) or 'id'}" for x in table.rules]
    return _Report(status="complete", method=table.method, homs=homs, total=js(table.total()), rules=rules)


def cmd_pi1(args, limits) -> _Report:
    c = _computad(_load(args.file))
    comps = []
    for root, p in pi1_presentations(c).items():
        q = tietze_simplify(p)
        ab = abelianization_invariants(q)
        comps.append({"component": root, "presentation": js(p), "simplified": js(q),
                      "abelianization": {"free_rank": ab.free_rank, "torsion": list(ab.divisors)}})
    verdict = is_thin_groupoid(c, limits)
    r = _Report(components=comps, trivial=js(verdict))
    r.unknown = _indefinite(verdict)
    return r


def cmd_thin(args, limits) -> _Report:
    c = _computad(_load(args.file))
    cat = None if isinstance(c, GroupoidalComputad2) else is_thin_category(c, limits)
    gpd = is_thin_groupoid(c, limits)
    bound = check_not_thin_bound(c)
    r = _Report(category=js(cat), groupoid=js(gpd), chi_bound=js(bound))
    r.unknown = _indefinite(cat) or _indefinite(gpd)
    return r


def _cw_of(doc: CmpDocument):
    if isinstance(doc.entity, Computad3):
        return f_top3(doc.entity)
    return f_top2(_computad(doc))


def cmd_cw(args, limits) -> _Report:
    cw = _cw_of(_load(args.file))
    pi2 = pi2_rank_if_simply_connected(cw, limits)
    r = _Report(cells=list(cw.counts()), chi=euler_char(cw), betti=list(betti_numbers(cw)),
                torsion={k: list(v) for k, v in homology_torsion(cw).items()},
                pi1={root: js(p) for root, p in pi1_from_cw(cw).items()},
                simply_connected=js(is_simply_connected(cw, limits)))
    if isinstance(pi2, Rank):
        r["pi2_rank"] = pi2.n
    elif isinstance(pi2, NotSimplyConnected):
        r["pi2_rank"] = None
    else:
        r["pi2_rank"] = None
        r.unknown = True
    if args.matrices:
        d1, d2, d3 = boundary_matrices(cw)
        r["boundary"] = {"d1": d1, "d2": d2, "d3": d3}
    return r


def cmd_deficiency(args, limits) -> _Report:
    c = _computad(_load(args.file))
    rep = deficiency_of_presentation(c)
    bound = check_not_thin_bound(c)
    return _Report(deficiency=rep.deficiency, chi1=rep.chi1, cells2=rep.cells2, bound_ok=rep.bound_ok,
                   chi_top2=bound.chi, not_thin_by_chi=isinstance(bound, ViolatesBound),
                   category_deficiency=deficiency_of_category_presentation(c))


def cmd_synth(args, limits) -> _Report:
    doc = _load(args.file)
    g = _graph(doc)
    kind = args.kind
    if kind == "efficient":
        out = synth_efficient_groupoid(g, _tree(g, doc, args.tree) if (args.tree or doc.tree) else None)
    elif kind == "category":
        out = lift_to_category_presentation(g)
        if isinstance(out, NotFair):
            return _Report(construction=kind, result="not-fair", reason=out.reason)
    elif kind == "strict":
        out = synth_strictly_increasing(g, _tree(g, doc, args.tree))
    else:
        out = synth_monotone(g, _tree(g, doc, args.tree))
    rep = deficiency_of_presentation(out, kind)
    return _Report(construction=kind, cells2=len(out.cells), deficiency=rep.deficiency,
                   document=format_document(out))


def cmd_fcs(args, limits) -> _Report:
    doc = _load(args.file)
    c = _computad(doc)
    g = c.base
    cells = _names(args.cells, doc.fcs)
    if args.synth:
        tree = _tree(g, doc, args.tree)
        pres = synth_320_presentation(c, tree, cells)
        three = [{"name": x.name, "source": format_2word(x.source), "target": format_2word(x.target)}
                 for x in pres.collapsed.cells3]
        lifted = [None if x is None else {"name": x.name, "source": format_2word(x.source),
                                          "target": format_2word(x.target)} for x in pres.lifted]
        r = _Report(tree=list(tree.arrows), fcs=list(pres.fcs), cells3=three, lifted=lifted,
                    count=len(three))
        lc = pres.lifted_computad3()
        if lc is not None:
            r["document"] = format_document(lc)
        return r
    ambient = c
    if len(g.objects) > 1 or args.tree:
        tree = _tree(g, doc, args.tree)
        ambient = quotient_collapse(c, sub_of_tree(tree))
    verdict = is_fcs(cells, ambient)
    r = _Report(cells=list(cells), fcs=js(verdict))
    r.unknown = _indefinite(verdict)
    return r


def cmd_thin2(args, limits) -> _Report:
    doc = _load(args.file)
    c3 = doc.entity
    if not isinstance(c3, Computad3):
        c = _computad(doc)
        pres = synth_320_presentation(c, _tree(c.base, doc, args.tree), _names(args.cells, doc.fcs))
        c3 = pres.lifted_computad3() or pres.collapsed
    v = locally_thin_criteria(c3, limits)
    r = _Report(cells3=len(c3.cells3), result=js(v))
    if isinstance(v, NotThin):
        r["verdict"] = "not-thin"
    elif isinstance(v, ThinByFcs):
        r["verdict"] = "thin"
    else:
        r["verdict"] = "unknown"
        r.unknown = True
    return r


def _random_computad(rng: random.Random) -> Computad2:
    n = rng.randint(1, 6)
    objects = [f"x{i}" for i in range(n)]
    arrows = [(f"t{i}", objects[rng.randrange(i)], objects[i]) for i in range(1, n)]
    arrows += [(f"a{i}", rng.choice(objects), rng.choice(objects)) for i in range(rng.randint(0, 5))]
    g = Graph.build(objects, arrows)
    from .computad import TwoCell
    from .free import Path

    cells = []
    for i in range(rng.randint(0, 4)):
        x = rng.choice(objects)
        loops = [a.name for a in g.out_arrows[x] if a.cod == x]
        word = tuple(rng.choice(loops) for _ in range(rng.randint(0, 2))) if loops else ()
        cells.append(TwoCell(f"c{i}", Path(g, x, word), Path(g, x, ())))
    return Computad2(g, tuple(cells))


def cmd_fixtures(args, limits) -> _Report:
    if args.export:
        written = fixtures.export(args.export)
        return _Report(exported=[str(p) for p in written])
    rows = []
    for name in fixtures.names():
        doc = fixtures.load(name)
        row = {"name": name, "kind": doc.kind}
        if doc.kind != "table":
            cw = _cw_of(doc)
            row["cells"] = list(cw.counts())
            row["chi"] = euler_char(cw)
            row["betti"] = list(betti_numbers(cw))
        rows.append(row)
    rng = random.Random(args.seed)
    checked = 0
    for _ in range(args.samples):
        c = _random_computad(rng)
        if euler_char(f_top2(c)) != euler_char_1(c.base) + len(c.cells):
            raise ComputadError("euler characteristic is not additive on a sampled computad")
        checked += 1
    return _Report(fixtures=rows, sampled=checked, seed=args.seed)


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limits", default=argparse.SUPPRESS,
                        help="caps such as kb_rules=10000,kb_steps=2000000,cosets=50000")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    p = argparse.ArgumentParser(prog="computads", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, file=True):
        q = sub.add_parser(name, help=help_text, parents=[common])
        if file:
            q.add_argument("file")
        q.set_defaults(fn=fn)
        return q

    add("analyze-graph", cmd_analyze_graph, "forest, tree, fairness and monotone classification").add_argument("--tree")
    add("free-info", cmd_free_info, "hom-set sizes of the free category, or freeness of a table")
    add("present", cmd_present, "hom table of the presented category")
    add("pi1", cmd_pi1, "fundamental group presentations per component")
    add("thin", cmd_thin, "thinness of the presented category and groupoid")
    add("cw", cmd_cw, "cell counts, euler characteristic and homology").add_argument(
        "--matrices", action="store_true", help="include boundary matrices")
    add("deficiency", cmd_deficiency, "deficiency and the euler characteristic bound")
    q = sub.add_parser("synth", help="synthesize an efficient presentation", parents=[common])
    q.add_argument("kind", choices=["efficient", "category", "strict", "monotone"])
    q.add_argument("file")
    q.add_argument("--tree")
    q.set_defaults(fn=cmd_synth)
    q = add("fcs", cmd_fcs, "contractible subcomputad check or 3-cell synthesis")
    q.add_argument("--tree")
    q.add_argument("--cells")
    q.add_argument("--synth", action="store_true")
    q = add("thin2", cmd_thin2, "local thinness criteria for a 3-dimensional presentation")
    q.add_argument("--tree")
    q.add_argument("--cells")
    q = add("fixtures", cmd_fixtures, "list or export the bundled corpus", file=False)
    q.add_argument("--export", metavar="DIR")
    q.add_argument("--samples", type=int, default=0, help="randomized additivity checks to run")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    args.limits = getattr(args, "limits", None)
    args.seed = getattr(args, "seed", 0)
    try:
        limits = Limits.parse(args.limits)
        report = args.fn(args, limits)
    except (ComputadError, OSError, ValueError) as exc:
        print(f"computads: {type(exc).__name__}: {exc}", file=sys.stderr)
        json.dump({"schema": SCHEMA, "command": args.command, "error": type(exc).__name__,
                   "message": str(exc)}, out, indent=2)
        out.write("\n")
        return EXIT_ERROR
    body = {"schema": SCHEMA, "command": args.command}
    body.update(report)
    json.dump(body, out, indent=2)
    out.write("\n")
    return EXIT_UNKNOWN if report.unknown else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
