"""Compare the compiled and pure-Python kernels on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""
from __future__ import annotations

import argparse
import random
import timeit

from computads import _pykernels

try:
    from computads import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def coset_cases():
    # (name, generator count, relators, subgroup); letters are 2*i and 2*i+1 for inverses
    a, A, b, B = 0, 1, 2, 3
    return [
        ("trivial <a,b | aba^-1b^-2, bab^-1a^-2>", 2, [[a, b, A, B, B], [b, a, B, A, A]], []),
        ("S3 = <a,b | a^2, b^3, (ab)^2>", 2, [[a, a], [b, b, b], [a, b, a, b]], []),
        ("Z/60 x Z/60 index of a", 2, [[a] * 60, [b] * 60, [a, b, A, B]], [[a]]),
    ]


def rank_cases(rng: random.Random):
    out = []
    for n in (20, 40, 60):
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        out.append((f"{n}x{n} integer matrix", rows))
    return out


def bench(fn, repeat: int) -> int:
    """Best-of-repeat wall time in microseconds."""
    return int(min(timeit.repeat(fn, number=1, repeat=repeat)) * 1_000_000)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the pure backend is timed")
    rows = []
    for name, n, rels, sub in coset_cases():
        py = _pykernels.coset_enumerate(n, rels, sub, 100_000)
        t_py = bench(lambda: _pykernels.coset_enumerate(n, rels, sub, 100_000), args.repeat)
        if _ckernels is not None:
            assert _ckernels.coset_enumerate(n, rels, sub, 100_000) == py
            t_c = bench(lambda: _ckernels.coset_enumerate(n, rels, sub, 100_000), args.repeat)
        else:
            t_c = None
        rows.append(("cosets", name, py, t_py, t_c))
    for name, m in rank_cases(random.Random(args.seed)):
        py = _pykernels.integer_rank(m)
        t_py = bench(lambda: _pykernels.integer_rank(m), args.repeat)
        if _ckernels is not None:
            assert _ckernels.integer_rank(m) == py
            t_c = bench(lambda: _ckernels.integer_rank(m), args.repeat)
        else:
            t_c = None
        rows.append(("rank", name, py, t_py, t_c))
    print(f"{'kernel':<7} {'case':<42} {'result':>7} {'pure us':>10} {'cython us':>10} {'speedup':>8}")
    for kind, name, res, t_py, t_c in rows:
        c = "-" if t_c is None else str(t_c)
        speed = "-" if not t_c else f"{t_py / max(t_c, 1):.1f}x"
        print(f"{kind:<7} {name:<42} {res:>7} {t_py:>10} {c:>10} {speed:>8}")


if __name__ == "__main__":
    main()
