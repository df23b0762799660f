"""Alternating integer forms on a lattice: radical, symplectic basis, discriminant group."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import exact
from .exact import Matrix


@dataclass(frozen=True)
class AlternatingForm:
    """Integer Gram matrix ``E[i][j] = E(l_i, l_j)`` of an alternating form."""

    E: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.E)
        object.__setattr__(self, "E", rows)
        n = len(rows)
        if n == 0 or n % 2:
            raise ValueError("an alternating form needs positive even rank")
        if not exact.is_alternating(rows):
            raise ValueError("matrix is not alternating")

    @property
    def g2(self) -> int:
        return len(self.E)

    def matrix(self) -> Matrix:
        return [list(r) for r in self.E]

    def __call__(self, u, v):
        return exact.bilinear(u, self.E, v)


def as_form(F) -> AlternatingForm:
    return F if isinstance(F, AlternatingForm) else AlternatingForm(F)


@dataclass(frozen=True)
class SymplecticData:
    radical_basis: tuple[tuple[int, ...], ...]
    pairs: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    divisors: tuple[int, ...]
    change_of_basis: tuple[tuple[int, ...], ...]

    @property
    def g0(self) -> int:
        return len(self.radical_basis) // 2

    @property
    def is_degenerate(self) -> bool:
        """True when the form vanishes identically."""
        return not self.pairs

    def l1_basis(self) -> list[list[int]]:
        out = []
        for e, f in self.pairs:
            out += [list(e), list(f)]
        return out


def radical(F) -> list[list[int]]:
    """Saturated basis of ``{l : E(l, m) = 0 for all m}``."""
    F = as_form(F)
    ker = exact.kernel_basis(F.matrix())
    if not ker:
        return []
    cols = [exact.clear_denominators(v) for v in ker]
    sat = exact.saturate(exact.from_columns(cols))
    return exact.columns(sat)


def symplectic_normal_form(F) -> SymplecticData:
    """Unimodular basis putting ``E`` into block form ``diag(d_i * J)`` plus a zero block.

    Pairs are found by repeated gcd reduction: the smallest nonzero entry
    (lexicographically first on ties) is moved to position (e, f), the rest of
    its two rows is reduced against it, and any entry of the remaining block
    not divisible by it is folded back in. The pivot shrinks each time so the
    loop terminates, and at the end it divides the whole remaining block.
    """
    F = as_form(F)
    n = F.g2
    A = F.matrix()
    C = exact.identity(n)  # columns are the current basis vectors

    def swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        for R in (A, C):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def addmul(i, j, q):  # v_i += q v_j
        if not q:
            return
        A[i] = [x + q * y for x, y in zip(A[i], A[j])]
        for R in (A, C):
            for row in R:
                row[i] += q * row[j]

    def negate(i):
        A[i] = [-x for x in A[i]]
        for R in (A, C):
            for row in R:
                row[i] = -row[i]

    divisors: list[int] = []
    k = 0
    while k < n:
        best = None
        for i in range(k, n):
            for j in range(i + 1, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap(k, i)
        swap(k + 1, j)
        if A[k][k + 1] < 0:
            negate(k + 1)
        while True:
            p = A[k][k + 1]
            for m in range(k + 2, n):
                addmul(m, k + 1, -(A[k][m] // p))
                addmul(m, k, A[k + 1][m] // p)
            rem = None
            for m in range(k + 2, n):
                for row in (k, k + 1):
                    if A[row][m] and (rem is None or abs(A[row][m]) < abs(A[rem[0]][rem[1]])):
                        rem = (row, m)
            if rem is not None:
                row, m = rem
                if row == k:
                    swap(k + 1, m)
                else:
                    swap(k, m)
                if A[k][k + 1] < 0:
                    negate(k + 1)
                continue
            bad = next(((a, b) for a in range(k + 2, n) for b in range(a + 1, n)
                        if A[a][b] % p), None)
            if bad is None:
                break
            addmul(k, bad[0], 1)
        divisors.append(A[k][k + 1])
        k += 2

    cols = exact.columns(C)
    pairs = tuple((tuple(cols[2 * i]), tuple(cols[2 * i + 1])) for i in range(len(divisors)))
    rad = tuple(tuple(c) for c in cols[2 * len(divisors):])
    ordered = list(rad) + [v for pair in pairs for v in pair]
    cob = tuple(tuple(r) for r in exact.from_columns(ordered))
    return SymplecticData(rad, pairs, tuple(divisors), cob)


def dual_lattice(S: SymplecticData) -> list[list[Fraction]]:
    """Basis ``{e_i/d_i, f_i/d_i}`` of the E-dual of L1, in lattice coordinates."""
    if not S.pairs:
        raise ValueError("degenerate: dual lattice undefined on L1 (E vanishes)")
    out = []
    for (e, f), d in zip(S.pairs, S.divisors):
        out.append([Fraction(x, d) for x in e])
        out.append([Fraction(x, d) for x in f])
    return out


@dataclass(frozen=True)
class DiscriminantGroup:
    """``(Z/d_1)^2 + ... + (Z/d_k)^2`` with coordinates ``(a_1, b_1, ..., a_k, b_k)``.

    ``generators`` optionally records the lattice vectors ``e_i/d_i, f_i/d_i``
    the coordinates refer to.
    """

    divisors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        ds = tuple(int(d) for d in self.divisors)
        if any(d < 1 for d in ds):
            raise ValueError("divisors must be positive")
        if any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"divisors {ds} do not form a divisibility chain")
        object.__setattr__(self, "divisors", ds)

    @property
    def rank(self) -> int:
        return 2 * len(self.divisors)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors for _ in range(2))

    @property
    def order(self) -> int:
        return math.prod(self.divisors) ** 2

    @property
    def exponent(self) -> int:
        return self.divisors[-1] if self.divisors else 1

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def element(self, x) -> tuple[int, ...]:
        x = tuple(x)
        if len(x) != self.rank or not all(isinstance(c, int) for c in x):
            raise ValueError(f"malformed element {x!r} for group of type {self.divisors}")
        return tuple(c % m for c, m in zip(x, self.moduli))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x) -> tuple[int, ...]:
        return tuple(-a % m for a, m in zip(x, self.moduli))

    def scale(self, k: int, x) -> tuple[int, ...]:
        return tuple(k * a % m for a, m in zip(x, self.moduli))

    def element_order(self, x) -> int:
        return math.lcm(1, *(m // math.gcd(a, m) for a, m in zip(x, self.moduli)))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.moduli))

    def to_vector(self, x) -> list[Fraction]:
        """Lattice-coordinate representative of ``x``."""
        if self.generators is None:
            raise ValueError("group carries no lattice generators")
        x = self.element(x)
        n = len(self.generators[0]) if self.generators else 0
        v = [Fraction(0)] * n
        for c, gen in zip(x, self.generators):
            if c:
                v = [a + c * b for a, b in zip(v, gen)]
        return v

    def span(self, gens) -> frozenset:
        """Subgroup generated by ``gens``."""
        elems = {self.zero}
        frontier = [self.zero]
        gens = [self.element(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)


def discriminant_group(S: SymplecticData) -> DiscriminantGroup:
    """``L1^perp / L1`` with the trivial ``d = 1`` factors dropped."""
    divs, gens = [], []
    for (e, f), d in zip(S.pairs, S.divisors):
        if d == 1:
            continue
        divs.append(d)
        gens.append(tuple(Fraction(x, d) for x in e))
        gens.append(tuple(Fraction(x, d) for x in f))
    return DiscriminantGroup(tuple(divs), tuple(gens))


def pairing_eE(D: DiscriminantGroup, x, y) -> Fraction:
    """``E(x, y) mod 1``, i.e. the exponent of the pairing ``exp(2 pi i E(x, y))``."""
    x, y = D.element(x), D.element(y)
    total = Fraction(0)
    for i, d in enumerate(D.divisors):
        a, b = x[2 * i], x[2 * i + 1]
        a2, b2 = y[2 * i], y[2 * i + 1]
        total += Fraction(a * b2 - a2 * b, d)
    return total % 1
