"""The `.cmp` text format: round trips, errors and the shipped corpus."""
from __future__ import annotations

import random
from pathlib import Path as FsPath

import pytest
from hypothesis import given

from computads import CmpDocument, fixtures, format_document, parse, parse_file
from computads.errors import ComputadError, ParseError, UnresolvedReference

from conftest import random_computad, random_groupoidal, seeds

REPO_FIXTURES = FsPath(__file__).resolve().parent.parent / "fixtures"


@pytest.mark.parametrize("name", fixtures.names())
def test_corpus_round_trip(name):
    doc = fixtures.load(name)
    text = format_document(doc)
    again = parse(text)
    assert again == doc
    assert format_document(again) == text


def test_repository_fixtures_match_package_data():
    on_disk = sorted(p.stem for p in REPO_FIXTURES.glob("*.cmp"))
    assert on_disk == fixtures.names()
    for name in on_disk:
        assert parse_file(REPO_FIXTURES / f"{name}.cmp") == fixtures.load(name)
        assert (REPO_FIXTURES / f"{name}.cmp").read_text(encoding="utf-8") == fixtures.text(name)


def test_export(tmp_path):
    written = fixtures.export(tmp_path)
    assert sorted(p.stem for p in written) == fixtures.names()


@given(seeds)
def test_random_round_trip(seed):
    rng = random.Random(seed)
    for c in (random_computad(rng), random_groupoidal(rng)):
        assert parse(format_document(c)).entity == c


def test_kinds():
    assert fixtures.load("circle").kind == "graph"
    assert fixtures.load("torus").kind == "computad"
    assert fixtures.load("h_delta2").kind == "computad3"
    assert fixtures.load("two_table").kind == "table"
    assert fixtures.load("z2").kind == "group"
    assert fixtures.load("bicyclic").kind == "monoid"
    assert fixtures.load("sphere").kind == "reflexive-computad"


def test_tree_and_fcs_lines():
    doc = fixtures.load("delta2")
    assert doc.tree == ("s0",) and doc.fcs == ("n0", "n1")
    assert fixtures.load("torus").tree is None


@pytest.mark.parametrize("text,line", [
    ("object x\ncell2 a : f => g", 2),
    ("object x\narrow f : x -> y", 2),
    ("group\ngenerator a\nrelation b = 1", 3),
    ("object x\narrow f : x -> x\ncell3 k : [ | q | ] => id(x)", 3),
])
def test_unresolved_references(text, line):
    with pytest.raises(UnresolvedReference) as err:
        parse(text)
    assert err.value.line == line


def test_syntax_errors():
    with pytest.raises(ParseError):
        parse("objekt x")
    with pytest.raises(ComputadError):
        parse("object x\nobject y\narrow f : x -> y\narrow g : x -> y\ncell2 c : f => g f")


def test_comments_and_blank_lines():
    doc = parse("# a comment\n\nobject x\n  arrow f : x -> x  \n")
    assert isinstance(doc, CmpDocument) and doc.kind == "graph"
    assert [a.name for a in doc.entity.arrows] == ["f"]
