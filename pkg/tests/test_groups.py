"""Group presentations: Smith normal form, Tietze moves, coset enumeration."""
from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from computads.errors import UnknownGenerator
from computads.groups import (
    GroupPresentation,
    Limits,
    No,
    Unknown,
    Yes,
    abelianization_invariants,
    coset_count,
    cyclic_reduce,
    is_trivial_group,
    smith_normal_form,
    tietze_simplify,
)


def w(text: str):
    """Parse 'a b^-1 a' into signed letters."""
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
    return tuple(out)


def pres(gens: str, *rels: str) -> GroupPresentation:
    return GroupPresentation(tuple(gens.split()), tuple(w(r) for r in rels))


S3 = pres("a b", "a a", "b b b", "a b a b")


def sympy_diagonal(rows):
    m = Matrix(rows)
    d = sympy_snf(m, domain=ZZ)
    return [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]


matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=4))


@given(matrices)
def test_snf_matches_sympy(rows):
    assert smith_normal_form(rows) == sympy_diagonal(rows)


def test_snf_divisibility_chain():
    d = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert d == [2, 6, 12]
    assert all(b % a == 0 for a, b in zip(d, d[1:]))


def test_abelian_invariants():
    assert abelianization_invariants(pres("a b", "a b a^-1 b^-1")).free_rank == 2
    inv = abelianization_invariants(pres("a", "a a a a a a"))
    assert inv.free_rank == 0 and inv.divisors == (6,)
    assert abelianization_invariants(S3).divisors == (2,)


def test_coset_counts():
    assert coset_count(S3) == 6
    for n in (1, 2, 5, 12):
        assert coset_count(pres("a", " ".join(["a"] * n))) == n
    assert coset_count(S3, [w("a")]) == 3
    assert coset_count(pres("a b", "a b a^-1 b^-1"), max_cosets=50) == -1


def test_tietze_eliminates_generators():
    q = tietze_simplify(pres("a b c", "a b^-1", "b c^-1", "c c c"))
    assert len(q.generators) == 1 and len(q.relators) == 1 and len(q.relators[0]) == 3
    q = tietze_simplify(pres("a b", "a", "b"))
    assert q.generators == () and q.relators == ()


@given(st.lists(st.sampled_from(["a", "a^-1", "b", "b^-1"]), max_size=10))
def test_tietze_preserves_abelianization(tokens):
    p = pres("a b", " ".join(tokens), "a a b")
    assert abelianization_invariants(tietze_simplify(p)) == abelianization_invariants(p)


def test_cyclic_reduce():
    assert cyclic_reduce(w("a b a^-1")) == w("b")
    assert cyclic_reduce(w("a a^-1")) == ()


def test_is_trivial_group():
    assert isinstance(is_trivial_group(pres("a b", "a", "b a")), Yes)
    assert isinstance(is_trivial_group(S3), No)
    assert isinstance(is_trivial_group(pres("a")), No)
    hard = pres("a b", "a b a^-1 b^-1 b^-1", "b a b^-1 a^-1 a^-1")
    assert abelianization_invariants(hard).trivial
    assert isinstance(is_trivial_group(hard, Limits(max_cosets=2)), Unknown)
    assert isinstance(is_trivial_group(hard), Yes)


def test_unknown_generator_rejected():
    with pytest.raises(UnknownGenerator):
        pres("a", "b")


def test_limits_parse():
    lim = Limits.parse("kb_rules=5,cosets=7")
    assert lim.kb_max_rules == 5 and lim.max_cosets == 7 and lim.kb_max_steps == Limits().kb_max_steps
    assert Limits.parse(None) == Limits()
    with pytest.raises(ValueError):
        Limits.parse("bogus=1")
