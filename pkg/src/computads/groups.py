"""Group presentations: Tietze simplification, abelian invariants, triviality."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .errors import UnknownGenerator
from .free import Letter, free_reduce, invert_letters


@dataclass(frozen=True)
class Limits:
    kb_max_rules: int = 10_000
    kb_max_steps: int = 2_000_000
    max_cosets: int = 50_000
    kb_max_states: int = 200_000

    @classmethod
    def parse(cls, text: str | None) -> "Limits":
        """Read `key=value,...`; keys are kb_rules, kb_steps, cosets, kb_states."""
        if not text:
            return cls()
        alias = {"kb_rules": "kb_max_rules", "kb_steps": "kb_max_steps",
                 "cosets": "max_cosets", "kb_states": "kb_max_states"}
        kw = {}
        for part in text.split(","):
            key, _, value = part.partition("=")
            key = alias.get(key.strip(), key.strip())
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown limit {key!r}")
            kw[key] = int(value)
        return cls(**kw)


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class Yes:
    detail: str = ""


@dataclass(frozen=True)
class No:
    witness: object = None


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[Letter, ...], ...] = ()

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            for a, _ in r:
                if a not in known:
                    raise UnknownGenerator(a)

    def format(self) -> str:
        return "<" + ", ".join(self.generators) + " | " + ", ".join(format_word(r) for r in self.relators) + ">"


def format_word(w: Sequence[Letter]) -> str:
    if not w:
        return "1"
    return " ".join(a if e > 0 else f"{a}^-1" for a, e in w)


def cyclic_reduce(w: Sequence[Letter]) -> tuple[Letter, ...]:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def _canonical_relator(w: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Least cyclic rotation of w or its inverse, for de-duplication."""
    if not w:
        return w
    cands = []
    for word in (w, invert_letters(w)):
        for i in range(len(word)):
            cands.append(word[i:] + word[:i])
    return min(cands)


def tietze_simplify(p: GroupPresentation) -> GroupPresentation:
    gens = list(p.generators)
    rels = [cyclic_reduce(r) for r in p.relators]
    changed = True
    while changed:
        changed = False
        seen = set()
        cleaned = []
        for r in rels:
            r = cyclic_reduce(r)
            if not r:
                continue
            key = _canonical_relator(r)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append(r)
        rels = cleaned
        # a relator in which some generator occurs exactly once lets us solve for it
        best = None
        for i, r in enumerate(rels):
            counts = Counter(a for a, _ in r)
            for a in gens:
                if counts.get(a) == 1:
                    cost = len(r) * sum(1 for s in rels if any(x == a for x, _ in s))
                    if best is None or cost < best[0]:
                        best = (cost, i, a)
        if best is None:
            break
        _, i, a = best
        r = rels[i]
        k = next(j for j, (x, _) in enumerate(r) if x == a)
        rot = r[k:] + r[:k]
        e = rot[0][1]
        rest = rot[1:]
        # a^e * rest = 1  =>  a = rest^-1 (e=1) or a = rest (e=-1)
        value = invert_letters(rest) if e > 0 else tuple(rest)
        inv_value = invert_letters(value)
        new = []
        for j, s in enumerate(rels):
            if j == i:
                continue
            out: list[Letter] = []
            for x, f in s:
                if x == a:
                    out.extend(value if f > 0 else inv_value)
                else:
                    out.append((x, f))
            new.append(free_reduce(out))
        rels = new
        gens.remove(a)
        changed = True
    return GroupPresentation(tuple(gens), tuple(rels))


# -- Smith normal form -------------------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form, each dividing the next."""
    a = [list(r) for r in matrix]
    if not a or not a[0]:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if a[i][j] and (i == t or j == t)]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    divisors: tuple[int, ...] = ()

    @property
    def trivial(self) -> bool:
        return self.free_rank == 0 and not self.divisors


def relator_matrix(p: GroupPresentation) -> list[list[int]]:
    idx = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for a, e in r:
            row[idx[a]] += e
        rows.append(row)
    return rows


def abelianization_invariants(p: GroupPresentation) -> AbelianInvariants:
    n = len(p.generators)
    rows = relator_matrix(p)
    diag = smith_normal_form(rows) if rows and n else []
    return AbelianInvariants(n - len(diag), tuple(d for d in diag if d > 1))


def encode(p: GroupPresentation) -> list[list[int]]:
    idx = {g: i for i, g in enumerate(p.generators)}
    return [[2 * idx[a] + (0 if e > 0 else 1) for a, e in r] for r in p.relators]


def coset_count(p: GroupPresentation, subgroup: Sequence[Sequence[Letter]] = (), max_cosets: int = 50_000) -> int:
    """Index of the subgroup generated by `subgroup`, or -1 past the cap."""
    idx = {g: i for i, g in enumerate(p.generators)}
    sub = [[2 * idx[a] + (0 if e > 0 else 1) for a, e in w] for w in subgroup]
    return kernels.coset_enumerate(len(p.generators), encode(p), sub, max_cosets)


def is_trivial_group(p: GroupPresentation, limits: Limits = DEFAULT_LIMITS):
    q = tietze_simplify(p)
    ab = abelianization_invariants(q)
    if not ab.trivial:
        return No(ab)
    n = coset_count(q, (), limits.max_cosets)
    if n == 1:
        return Yes("coset table closed with 1 coset")
    if n > 1:
        return No(f"{n} cosets")
    return Unknown(f"coset cap {limits.max_cosets} reached")
