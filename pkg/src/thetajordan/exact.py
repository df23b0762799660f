"""Exact scalars and dense integer/rational matrix routines.

Matrices are plain lists of row lists holding ``int`` or ``Fraction``
entries. Nothing in here ever touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list]


# ---------------------------------------------------------------------------
# scalars


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(Fraction(x), Fraction(0))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        q = self * o.conjugate()
        return GaussianRational(q.re / n, q.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


def _clean_primes(primes) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    for p, e in (primes.items() if isinstance(primes, dict) else primes):
        p = int(p)
        if p < 2:
            raise ValueError(f"{p} is not a prime")
        acc[p] = acc.get(p, Fraction(0)) + Fraction(e)
    return tuple(sorted((p, e) for p, e in acc.items() if e != 0))


@dataclass(frozen=True)
class FormalScalar:
    """The nonzero complex number ``prod(p**e_p) * exp(pi*a) * exp(2*pi*i*t)``.

    Equality is componentwise. For rational data this is faithful: a positive
    algebraic radical, a power of ``e**pi`` and a root of unity can only
    multiply to 1 when every factor is trivial (Gelfond-Schneider). We rely on
    that and do not attempt to prove it here.
    """

    primes: tuple[tuple[int, Fraction], ...] = ()
    a: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "primes", _clean_primes(self.primes))
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "t", Fraction(self.t) % 1)

    @classmethod
    def one(cls) -> "FormalScalar":
        return cls()

    @classmethod
    def root_of_unity(cls, t) -> "FormalScalar":
        return cls(t=Fraction(t))

    @classmethod
    def exp_pi(cls, z) -> "FormalScalar":
        """``exp(pi*z)`` for a Gaussian rational ``z``."""
        z = GaussianRational.coerce(z)
        return cls(a=z.re, t=z.im / 2)

    @classmethod
    def from_rational(cls, q) -> "FormalScalar":
        from sympy import factorint

        q = Fraction(q)
        if q == 0:
            raise ValueError("zero is not a unit")
        primes: dict[int, Fraction] = {}
        for p, e in factorint(abs(q.numerator)).items():
            primes[p] = Fraction(e)
        for p, e in factorint(q.denominator).items():
            primes[p] = primes.get(p, Fraction(0)) - e
        return cls(primes=primes, t=Fraction(1, 2) if q < 0 else Fraction(0))

    def __mul__(self, other: "FormalScalar") -> "FormalScalar":
        return FormalScalar(self.primes + other.primes, self.a + other.a, self.t + other.t)

    def inverse(self) -> "FormalScalar":
        return FormalScalar(tuple((p, -e) for p, e in self.primes), -self.a, -self.t)

    def __pow__(self, k: int) -> "FormalScalar":
        k = int(k)
        return FormalScalar(tuple((p, e * k) for p, e in self.primes), self.a * k, self.t * k)

    def root(self, n: int) -> "FormalScalar":
        """Principal n-th root: exponents divided by n, ``t -> t/n`` with t in [0, 1)."""
        if n < 1:
            raise ValueError("root index must be positive")
        return FormalScalar(tuple((p, e / n) for p, e in self.primes), self.a / n, self.t / n)

    def order(self) -> int | float:
        if self.primes or self.a:
            return math.inf
        return self.t.denominator

    @property
    def is_one(self) -> bool:
        return not self.primes and self.a == 0 and self.t == 0

    def __repr__(self):
        parts = [f"{p}^{e}" for p, e in self.primes]
        if self.a:
            parts.append(f"exp(pi*{self.a})")
        if self.t:
            parts.append(f"exp(2pi*i*{self.t})")
        return "FormalScalar(" + (" * ".join(parts) or "1") + ")"


def scalar_mul(s1: FormalScalar, s2: FormalScalar) -> FormalScalar:
    return s1 * s2


def scalar_inv(s: FormalScalar) -> FormalScalar:
    return s.inverse()


def scalar_nth_root(s: FormalScalar, n: int) -> FormalScalar:
    return s.root(n)


def scalar_eq(s1: FormalScalar, s2: FormalScalar) -> bool:
    return s1 == s2


def scalar_order(s: FormalScalar) -> int | float:
    return s.order()


# ---------------------------------------------------------------------------
# basic matrix helpers


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), 0) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), 0) for row in A]


def bilinear(u: Sequence, M: Sequence[Sequence], v: Sequence):
    """``u^T M v``."""
    return sum((ui * x for ui, x in zip(u, matvec(M, v))), 0)


def columns(M: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*M)]


def from_columns(cols: Sequence[Sequence], nrows: int | None = None) -> Matrix:
    if not cols:
        return [[] for _ in range(nrows or 0)]
    return [list(r) for r in zip(*cols)]


def block_diag(*blocks: Sequence[Sequence]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def is_alternating(E: Sequence[Sequence]) -> bool:
    n = len(E)
    return all(len(r) == n for r in E) and all(
        E[i][j] == -E[j][i] for i in range(n) for j in range(n))


def det(M: Sequence[Sequence]):
    """Exact determinant (Bareiss for integers, Gaussian elimination otherwise)."""
    n = len(M)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in M for x in row):
        return _bareiss(M)
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        result *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return sign * result


def _bareiss(M: Sequence[Sequence[int]]) -> int:
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over the rationals, with pivot columns."""
    A = [[Fraction(x) for x in row] for row in M]
    m, n = shape(A)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def kernel_basis(M: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel ``{x : M x = 0}`` over the rationals."""
    n = ncols if ncols is not None else shape(M)[1]
    if not M:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def clear_denominators(v: Iterable) -> list[int]:
    """Smallest primitive integer vector positively proportional to ``v``."""
    v = [Fraction(x) for x in v]
    l = math.lcm(*(x.denominator for x in v)) if v else 1
    w = [int(x * l) for x in v]
    g = math.gcd(*w)
    return [x // g for x in w] if g else w


def same_span(A: Sequence[Sequence], B: Sequence[Sequence]) -> bool:
    """Whether two lists of vectors span the same rational subspace."""
    ra, rb = rank(A) if A else 0, rank(B) if B else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(list(A) + list(B)) == ra


# ---------------------------------------------------------------------------
# Smith normal form and friends


def snf(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns ``(U, S, V)`` with ``U M V = S``.

    Pivoting picks the smallest nonzero absolute value, which keeps the
    intermediate entries small.
    """
    A = [[int(x) for x in row] for row in M]
    m, n = shape(A)
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for R in (A, V):
            for row in R:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def snf_diagonal(M: Sequence[Sequence[int]]) -> list[int]:
    _, S, _ = snf(M)
    return [S[i][i] for i in range(min(shape(S)))]


def inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def unimodular_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    inv = inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def saturate(B: Sequence[Sequence[int]]) -> Matrix:
    """Columns spanning the saturation of the column lattice of ``B`` in Z^n."""
    m, k = shape(B)
    if k == 0:
        return [[] for _ in range(m)]
    if rank(B) != k:
        raise ValueError("not a basis: columns are dependent")
    U, _, _ = snf(B)
    Uinv = unimodular_inverse(U)
    return [row[:k] for row in Uinv]


def lattice_index(B: Sequence[Sequence[int]]) -> int:
    """Index of the column lattice of ``B`` in its saturation."""
    return math.prod(snf_diagonal(B))


# ---------------------------------------------------------------------------
# pfaffian


def pfaffian(E: Sequence[Sequence[int]]):
    """Pfaffian by skew-congruence elimination over the rationals."""
    n = len(E)
    if n % 2 or not is_alternating(E):
        raise ValueError("pfaffian needs an alternating matrix of even order")
    A = [[Fraction(x) for x in row] for row in E]
    pf = Fraction(1)
    for k in range(0, n, 2):
        j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
        if j is None:
            return 0
        if j != k + 1:
            A[k + 1], A[j] = A[j], A[k + 1]
            for row in A:
                row[k + 1], row[j] = row[j], row[k + 1]
            pf = -pf
        p = A[k][k + 1]
        pf *= p
        rest = range(k + 2, n)
        c1 = {i: A[k][i] / p for i in rest}
        c2 = {i: A[k + 1][i] / p for i in rest}
        for i in rest:
            A[i] = [x - c1[i] * y + c2[i] * z for x, y, z in zip(A[i], A[k + 1], A[k])]
        for row in A:
            for i in rest:
                row[i] = row[i] - c1[i] * row[k + 1] + c2[i] * row[k]
    if pf.denominator != 1:
        raise ArithmeticError("non-integral pfaffian of an integer matrix")
    return int(pf)


def pfaffian_expansion(E: Sequence[Sequence]):
    """Pfaffian by recursive expansion along the first row (small matrices only)."""
    n = len(E)
    if n == 0:
        return 1
    if n % 2:
        return 0
    total = 0
    rest = list(range(1, n))
    for idx, j in enumerate(rest):
        if E[0][j]:
            keep = [r for r in rest if r != j]
            minor = [[E[a][b] for b in keep] for a in keep]
            total += (-1) ** idx * E[0][j] * pfaffian_expansion(minor)
    return total
