"""Pencils ``E_n = Ebold + n E`` of alternating forms and their growth.

``Ebold`` is the imaginary part of the dominated form (the line bundle we
study), ``E`` that of the dominating one. Both are restricted to a common
complement L1 of the radical ``L0`` of ``E``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import appell_humbert as ah
from . import exact, lattice
from .appell_humbert import AHData

Poly = list[int]  # ascending coefficients


def _trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p):
    return [-c for c in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def poly_divexact(p, q):
    """Quotient of an exact division in Z[T]."""
    p, q = _trim(p), _trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    r = [Fraction(c) for c in p]
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    for k in range(len(out) - 1, -1, -1):
        c = r[k + len(q) - 1] / q[-1]
        out[k] = c
        for j, b in enumerate(q):
            r[k + j] -= c * b
    if any(r) or any(c.denominator != 1 for c in out):
        raise ArithmeticError("polynomial division is not exact")
    return _trim([int(c) for c in out])


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_det(M: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a matrix over Z[T] by fraction-free (Bareiss) elimination."""
    A = [[_trim(x) for x in row] for row in M]
    n = len(A)
    if n == 0:
        return [1]
    sign, prev = 1, [1]
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return []
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_add(poly_mul(A[i][j], A[k][k]), poly_neg(poly_mul(A[i][k], A[k][j])))
                A[i][j] = poly_divexact(num, prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign > 0 else poly_neg(d)


@dataclass(frozen=True)
class DetPolynomial:
    coefficients: tuple[int, ...]  # ascending: coefficients[i] multiplies T**i

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def __call__(self, x):
        return poly_eval(self.coefficients, x)

    def cauchy_bound(self) -> Fraction:
        """Every complex root has absolute value below this bound."""
        c = self.coefficients
        return 1 + max((Fraction(abs(a), abs(c[-1])) for a in c[:-1]), default=Fraction(0))

    def derivative(self) -> "DetPolynomial":
        return DetPolynomial(tuple(i * a for i, a in enumerate(self.coefficients) if i) or (0,))

    def __str__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.coefficients))):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*T" if i == 1 else f"*T^{i}"))
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Pencil:
    base: AHData
    dominating: AHData
    l1_basis: tuple[tuple[int, ...], ...] = field(init=False)
    E_tilde: tuple[tuple[int, ...], ...] = field(init=False)
    Ebold_tilde: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if self.base.g != self.dominating.g:
            raise ValueError(f"dimension mismatch: g={self.base.g} vs g={self.dominating.g}")
        if (self.base.period is None) != (self.dominating.period is None):
            raise ValueError("base and dominating data must share the input mode")
        if ah.is_pic0(self.dominating):
            raise ValueError("H = 0: no pencil growth")
        if not is_dominated(self.base, self.dominating):
            raise ValueError("domination fails: ker(H) is not contained in ker(Hbold)")
        S = self.dominating.symplectic()
        basis = S.l1_basis()
        C = exact.from_columns(basis)
        restrict = lambda E: tuple(tuple(int(x) for x in row)
                                   for row in exact.matmul(exact.transpose(C), exact.matmul(E, C)))
        object.__setattr__(self, "l1_basis", tuple(tuple(v) for v in basis))
        object.__setattr__(self, "E_tilde", restrict(self.dominating.E()))
        object.__setattr__(self, "Ebold_tilde", restrict(self.base.E()))

    @property
    def g0(self) -> int:
        return self.dominating.g - len(self.l1_basis) // 2

    def E_n(self, n: int) -> list[list[int]]:
        """Restriction of ``Ebold + n E`` to L1."""
        return [[b + n * a for a, b in zip(ra, rb)] for ra, rb in zip(self.E_tilde, self.Ebold_tilde)]


def is_dominated(base: AHData, dominating: AHData) -> bool:
    """``ker(H) <= ker(Hbold)``: every kernel vector of the dominating form kills ``base``."""
    if base.g != dominating.g:
        raise ValueError(f"dimension mismatch: g={base.g} vs g={dominating.g}")
    for v in ah.kernel_H(dominating):
        row = [sum((base.gram[i][j] * v[j] for j in range(base.rank)), exact.GaussianRational())
               for i in range(base.rank)]
        if any(row):
            return False
    return True


def det_polynomial(P: Pencil) -> DetPolynomial:
    """``f(T) = det(Ebold~ + T E~)``."""
    M = [[_trim([b, a]) for a, b in zip(ra, rb)] for ra, rb in zip(P.E_tilde, P.Ebold_tilde)]
    coeffs = poly_det(M)
    f = DetPolynomial(tuple(coeffs) if coeffs else (0,))
    for n in (1, 2):
        if f(n) != exact.det(P.E_n(n)):
            raise ArithmeticError(f"determinant polynomial disagrees with det at n={n}")
    return f


def degenerate_set(f: DetPolynomial) -> set[int]:
    """Positive integer roots of ``f``."""
    c = list(f.coefficients)
    if not any(c):
        raise ValueError("f vanishes identically")
    while c[0] == 0:
        c = c[1:]
    t = abs(c[0])
    divisors = {k for i in range(1, math.isqrt(t) + 1) if t % i == 0 for k in (i, t // i)}
    return {r for r in divisors if poly_eval(c, r) == 0}


@dataclass(frozen=True)
class GrowthRow:
    n: int
    f_n: int
    degenerate: bool
    divisors: tuple[int, ...] = ()
    jordan: int | None = None


def growth_table(P: Pencil, n_max: int) -> list[GrowthRow]:
    f = det_polynomial(P)
    bad = degenerate_set(f)
    rows = []
    for n in range(1, n_max + 1):
        if n in bad:
            rows.append(GrowthRow(n, f(n), True))
            continue
        S = lattice.symplectic_normal_form(P.E_n(n))
        if S.radical_basis:
            raise ArithmeticError(f"E_{n} degenerate on L1 although f({n}) != 0")
        j = math.prod(S.divisors)
        if j * j != f(n):
            raise ArithmeticError(f"(prod d_i)^2 = {j * j} != f({n}) = {f(n)}")
        rows.append(GrowthRow(n, f(n), False, S.divisors, j))
    return rows


def growth_summary(f: DetPolynomial, rows: Sequence[GrowthRow]) -> dict:
    """Beyond the root bound of ``f'`` the values ``f(n)`` (hence the Jordan
    constants) strictly increase; report that tail of the table."""
    deriv = f.derivative()
    mono = deriv.cauchy_bound() if deriv.degree >= 1 else Fraction(0)
    start = math.floor(mono) + 1
    tail = [r for r in rows if r.n >= start and not r.degenerate]
    increasing = all(a.jordan < b.jordan for a, b in zip(tail, tail[1:]))
    return {
        "root_bound": str(f.cauchy_bound()),
        "monotone_from": start,
        "tail": [(r.n, r.jordan) for r in tail],
        "strictly_increasing_tail": increasing,
    }


def non_jordan_certificate(base: AHData, dominating: AHData, n_max: int,
                           assume_semipositive: bool = False) -> dict:
    """Structured record of the algebraic facts behind non-Jordanness of Bim(Y).

    The birational step (tensoring by a bundle with a nonzero section does
    not change Bim) is quoted, not computed.
    """
    checks = []
    if base.g != dominating.g:
        raise ValueError(f"dimension mismatch: g={base.g} vs g={dominating.g}")
    if ah.is_pic0(dominating):
        raise ValueError("H = 0: no pencil growth")
    checks.append({"name": "dominating form nonzero", "status": "pass"})
    if dominating.hermitian is not None:
        if not ah.is_semipositive(dominating):
            raise ValueError("hypothesis fails: dominating form is not semipositive")
        checks.append({"name": "dominating form semipositive", "status": "pass"})
    elif assume_semipositive:
        checks.append({"name": "dominating form semipositive", "status": "hypothesis assumed"})
    else:
        raise ValueError("hypothesis unverifiable: semipositivity needs period data "
                         "(pass assume_semipositive to stamp it as assumed)")
    if not is_dominated(base, dominating):
        raise ValueError("hypothesis fails: domination ker(H) <= ker(Hbold)")
    checks.append({"name": "Hbold dominated by H", "status": "pass"})

    E = dominating.E()
    doubled = any(x % 2 for row in E for x in row)
    dom = ah.power(dominating, 2) if doubled else dominating
    dom = AHData(dom.g, dom.gram, (0,) * dom.rank, dom.period, dom.hermitian)
    checks.append({"name": "E(L,L) in 2Z (trivial semicharacter allowed)",
                   "status": "after doubling H" if doubled else "pass"})

    P = Pencil(base, dom)
    f = det_polynomial(P)
    rows = growth_table(P, n_max)
    summary = growth_summary(f, rows)
    family = []
    for r in rows[:3]:
        member = ah.tensor(base, ah.power(dom, r.n))
        family.append({"n": r.n, "alpha_t": [str(t) for t in member.alpha_t]})
    return {
        "hypotheses": checks,
        "doubled": doubled,
        "family": "(Hbold + n H, alpha * alpha0^n)",
        "family_samples": family,
        "g0": P.g0,
        "det_polynomial": list(f.coefficients),
        "degenerate": sorted(degenerate_set(f)),
        "growth": [_row_doc(r) for r in rows],
        "unbounded": summary,
        "cited": "Bim(Y_N) is unchanged by tensoring N with a line bundle that has a nonzero section",
    }


def _row_doc(r: GrowthRow) -> dict:
    if r.degenerate:
        return {"n": r.n, "f": r.f_n, "degenerate": True}
    return {"n": r.n, "f": r.f_n, "divisors": list(r.divisors), "jordan": r.jordan}
