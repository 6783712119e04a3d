"""The compiled and pure-Python kernels agree."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from computads import _pykernels, kernels

try:
    from computads import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def fraction_rank(rows) -> int:
    """Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for j in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][j]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][j]:
                f = a[i][j] / a[rank][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


matrices = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda mn: st.lists(st.lists(st.integers(-5, 5), min_size=mn[1], max_size=mn[1]), min_size=mn[0], max_size=mn[0]))


@given(matrices)
def test_rank_matches_rational_oracle(rows):
    assert _pykernels.integer_rank(rows) == fraction_rank(rows)
    assert kernels.integer_rank(rows) == fraction_rank(rows)


@needs_c
@given(matrices)
def test_rank_backends_agree(rows):
    assert _ckernels.integer_rank(rows) == _pykernels.integer_rank(rows)


def cyclic_relators(rng: random.Random):
    """Random relators over two generators, encoded 2*i (+) and 2*i+1 (-)."""
    rels = [[0] * rng.randint(1, 6)]
    for _ in range(rng.randint(0, 2)):
        rels.append([rng.randrange(4) for _ in range(rng.randint(1, 6))])
    return rels


@needs_c
@given(st.integers(0, 10_000))
def test_coset_backends_agree(seed):
    rng = random.Random(seed)
    rels = cyclic_relators(rng)
    sub = [[0]] if rng.random() < 0.5 else []
    a = _pykernels.coset_enumerate(2, rels, sub, 500)
    b = _ckernels.coset_enumerate(2, rels, sub, 500)
    assert a == b


def test_known_coset_indices():
    # <a, b | a^2, b^3, (ab)^2> has order 6
    rels = [[0, 0], [2, 2, 2], [0, 2, 0, 2]]
    for enum in filter(None, (_pykernels.coset_enumerate, getattr(_ckernels, "coset_enumerate", None))):
        assert enum(2, rels, [], 1000) == 6
        assert enum(2, rels, [[2]], 1000) == 2


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, COMPUTADS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import computads; print(computads.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
