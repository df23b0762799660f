"""Jordan constants: the closed form, isotropic subgroups, and a brute-force oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

import numpy as np

from . import lattice
from .appell_humbert import AHData
from .lattice import DiscriminantGroup, pairing_eE


def jordan_constant(d: AHData) -> int:
    """Product of the elementary divisors of ``E`` (1 when ``H = 0``)."""
    return math.prod(d.symplectic().divisors)


def maximal_isotropic(D: DiscriminantGroup) -> list[tuple[int, ...]]:
    """Generators of the subgroup spanned by the ``a``-coordinate unit vectors."""
    gens = []
    for i in range(len(D.divisors)):
        x = [0] * D.rank
        x[2 * i] = 1
        gens.append(tuple(x))
    return gens


def is_isotropic(D: DiscriminantGroup, elems) -> bool:
    elems = list(elems)
    return all(pairing_eE(D, x, y) == 0 for i, x in enumerate(elems) for y in elems[i + 1:])


def isotropic_subgroups(D: DiscriminantGroup, bound: int = 4096) -> list[frozenset]:
    """Every isotropic subgroup of ``D``, each as a frozenset of coordinate tuples.

    Grown from the trivial group by adjoining elements of the orthogonal
    complement; every isotropic subgroup arises this way.
    """
    if D.order > bound:
        raise ValueError(f"group of order {D.order} exceeds enumeration bound {bound}")
    elems = list(D.elements())
    index = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    add = [[index[D.add(x, y)] for y in elems] for x in elems]
    orth = [sum(1 << j for j, y in enumerate(elems) if pairing_eE(D, x, y) == 0) for x in elems]

    def join(mask: int, x: int) -> tuple[int, int]:
        """``<S, x>`` and the union of the cosets ``S + kx`` that generate it over S."""
        members = [i for i in range(n) if mask >> i & 1]
        cosets = []
        out, y = mask, x
        while not out >> y & 1:
            coset = 0
            for i in members:
                coset |= 1 << add[i][y]
            cosets.append(coset)
            out |= coset
            y = add[y][x]
        period = len(cosets) + 1
        same = 0
        for k, coset in enumerate(cosets, start=1):
            if math.gcd(k, period) == 1:
                same |= coset
        return out, same

    zero = index[D.zero]
    seen = {1 << zero}
    stack = [1 << zero]
    while stack:
        S = stack.pop()
        perp = (1 << n) - 1
        for i in range(n):
            if S >> i & 1:
                perp &= orth[i]
        covered = S
        for x in range(n):
            if perp >> x & 1 and not covered >> x & 1:
                T, same = join(S, x)
                covered |= same
                if T not in seen:
                    seen.add(T)
                    stack.append(T)
    return [frozenset(elems[i] for i in range(n) if m >> i & 1)
            for m in sorted(seen, key=lambda m: (bin(m).count("1"), m))]


def divisibility_bound(F, n: int) -> bool:
    """If every entry of ``E`` is divisible by ``n``: ``n^2 | prod d_i^2`` and ``n | prod d_i``."""
    F = lattice.as_form(F)
    if n < 1:
        raise ValueError("n must be positive")
    if not any(x for row in F.E for x in row):
        raise ValueError("hypothesis E != 0 fails")
    if any(x % n for row in F.E for x in row):
        raise ValueError(f"hypothesis E(L,L) in {n}Z fails")
    j = math.prod(lattice.symplectic_normal_form(F).divisors)
    return (j * j) % (n * n) == 0 and j % n == 0


# ---------------------------------------------------------------------------
# finite groups given by tables


@dataclass(frozen=True)
class FiniteGroupTable:
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    def __post_init__(self):
        T = np.asarray(self.table, dtype=np.int64)
        n = len(T)
        if T.shape != (n, n) or n == 0 or T.min() < 0 or T.max() >= n:
            raise ValueError("malformed multiplication table")
        ar = np.arange(n)
        if not (np.array_equal(T[self.identity], ar) and np.array_equal(T[:, self.identity], ar)):
            raise ValueError("identity element is not two-sided")
        inv = np.asarray(self.inverse)
        if not (np.all(T[ar, inv] == self.identity) and np.all(T[inv, ar] == self.identity)):
            raise ValueError("inverse table is wrong")
        # Light's test: associativity needs checking only against a generating set.
        for g in _generating_set(self.table, self.identity):
            if not np.array_equal(T[T[:, g], :], T[:, T[g, :]]):
                raise ValueError("multiplication is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, identity) -> "FiniteGroupTable":
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("duplicate elements")
        table = []
        for x in elements:
            row = []
            for y in elements:
                z = mul(x, y)
                if z not in index:
                    raise ValueError("element set is not closed under multiplication")
                row.append(index[z])
            table.append(tuple(row))
        e = index[identity]
        inverse = tuple(row.index(e) for row in table)
        return cls(tuple(table), e, inverse)


def _generating_set(table, identity: int) -> list[int]:
    n = len(table)
    span = {identity}
    gens = []
    for g in range(n):
        if g in span:
            continue
        gens.append(g)
        span = _closure(table, span | {g}, identity)
        if len(span) == n:
            break
    return gens


def _closure(table, gens, identity: int) -> set[int]:
    elems = {identity}
    frontier = [identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            row = table[x]
            for g in gens:
                y = row[g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


@dataclass(frozen=True)
class JordanReport:
    constant: int
    witness_subgroup: tuple[int, ...]
    witness_abelian_normal: tuple[int, ...]
    subgroup_count: int


def _mask(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def all_subgroups(G: FiniteGroupTable) -> dict[int, tuple[int, ...]]:
    """Every subgroup as ``{element bitmask: generators}``.

    Each subgroup is a join of cyclic subgroups, so closing the set of cyclic
    subgroups under joins with cyclic subgroups finds all of them.
    """
    T, e = G.table, G.identity
    cyclic: dict[int, tuple[int, ...]] = {}
    for g in range(G.order):
        m = _mask(_closure(T, [g], e))
        cyclic.setdefault(m, (g,))
    subs = dict(cyclic)
    queue = list(cyclic)
    while queue:
        S = queue.pop()
        gens = subs[S]
        for C, (c,) in cyclic.items():
            if C & ~S == 0:
                continue
            J = _mask(_closure(T, gens + (c,), e))
            if J not in subs:
                subs[J] = gens + (c,)
                queue.append(J)
    return subs


def brute_force_jordan(G: FiniteGroupTable, bound: int = 512) -> JordanReport:
    """Max over subgroups B of the least index of an abelian normal subgroup of B."""
    if G.order > bound:
        raise ValueError(f"group of order {G.order} exceeds enumeration bound {bound}")
    T = G.table
    inv = G.inverse
    subs = all_subgroups(G)

    def commute(gens) -> bool:
        return all(T[a][b] == T[b][a] for i, a in enumerate(gens) for b in gens[i + 1:])

    abelian = sorted(((bin(m).count("1"), m) for m, gens in subs.items() if commute(gens)),
                     key=lambda p: (-p[0], p[1]))
    best = None
    for B, bgens in sorted(subs.items(), key=lambda p: (bin(p[0]).count("1"), p[0])):
        size = bin(B).count("1")
        for asize, A in abelian:
            if A & ~B:
                continue
            agens = subs[A]
            if all(A >> T[T[b][a]][inv[b]] & 1 for b in bgens for a in agens):
                idx = size // asize
                if best is None or idx > best[0]:
                    best = (idx, bgens, agens)
                break
    return JordanReport(best[0], tuple(best[1]), tuple(best[2]), len(subs))
