"""Appell-Humbert data ``(H, alpha)`` on a lattice of rank 2g.

Hermitian forms are linear in the first argument and conjugate-linear in the
second, and ``E = Im H``. The Gram matrix is ``gram[i][j] = H(l_i, l_j)``;
because lattice coordinates are real, ``H(u, v) = u^T gram v`` for rational
coordinate vectors ``u, v``.

Semicharacters are stored by their basis values ``alpha(l_i) = exp(2 pi i t_i)``
and extended to all of L by the cocycle rule (see :func:`alpha_eval`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact, lattice
from .exact import GaussianRational, Matrix


class AHConsistencyError(ValueError):
    """Raised when data violate an identity every Appell-Humbert pair satisfies."""


def _gmat(M) -> tuple[tuple[GaussianRational, ...], ...]:
    return tuple(tuple(GaussianRational.coerce(x) for x in row) for row in M)


@dataclass(frozen=True)
class AHData:
    g: int
    gram: tuple[tuple[GaussianRational, ...], ...]
    alpha_t: tuple[Fraction, ...]
    period: tuple[tuple[GaussianRational, ...], ...] | None = None
    hermitian: tuple[tuple[GaussianRational, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "gram", _gmat(self.gram))
        object.__setattr__(self, "alpha_t", tuple(Fraction(t) % 1 for t in self.alpha_t))
        if self.period is not None:
            object.__setattr__(self, "period", _gmat(self.period))
        if self.hermitian is not None:
            object.__setattr__(self, "hermitian", _gmat(self.hermitian))
        n = 2 * self.g
        if self.g < 1 or len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError(f"gram must be {n}x{n} for g={self.g}")
        if len(self.alpha_t) != n:
            raise ValueError(f"alpha_t needs {n} entries")
        if self.period is not None and (len(self.period) != n or any(len(r) != self.g for r in self.period)):
            raise ValueError(f"period must be {n}x{self.g}")
        if self.hermitian is not None and (len(self.hermitian) != self.g or any(len(r) != self.g for r in self.hermitian)):
            raise ValueError(f"hermitian must be {self.g}x{self.g}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_gram(cls, gram, alpha_t=None) -> "AHData":
        n = len(gram)
        return cls(n // 2, gram, alpha_t if alpha_t is not None else (0,) * n)

    @classmethod
    def from_alternating(cls, E, alpha_t=None) -> "AHData":
        """Gram mode data whose Gram matrix is ``i*E`` (no real part)."""
        return cls.from_gram([[GaussianRational(0, x) for x in row] for row in E], alpha_t)

    @classmethod
    def from_period(cls, period, hermitian, alpha_t=None) -> "AHData":
        period, hermitian = _gmat(period), _gmat(hermitian)
        gram = period_gram(period, hermitian)
        n = len(period)
        return cls(n // 2, gram, alpha_t if alpha_t is not None else (0,) * n, period, hermitian)

    # -- derived ----------------------------------------------------------

    @property
    def rank(self) -> int:
        return 2 * self.g

    @property
    def has_period(self) -> bool:
        return self.period is not None

    def imag(self) -> Matrix:
        return [[x.im for x in row] for row in self.gram]

    def real(self) -> Matrix:
        return [[x.re for x in row] for row in self.gram]

    def E(self) -> Matrix:
        """The alternating integer form ``Im(gram)``."""
        im = self.imag()
        if any(x.denominator != 1 for row in im for x in row):
            raise AHConsistencyError("Im(gram) is not integral")
        return [[int(x) for x in row] for row in im]

    def form(self) -> lattice.AlternatingForm:
        return lattice.AlternatingForm(self.E())

    def H(self, u, v) -> GaussianRational:
        """``H(u, v)`` for rational lattice-coordinate vectors."""
        total = GaussianRational()
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = self.gram[i]
            for j, vj in enumerate(v):
                if vj:
                    total = total + row[j] * (Fraction(ui) * Fraction(vj))
        return total

    def symplectic(self) -> lattice.SymplecticData:
        return lattice.symplectic_normal_form(self.E())


def period_gram(period, hermitian) -> list[list[GaussianRational]]:
    """``H(l_i, l_j) = l_i^T Hm conj(l_j)`` for period vectors ``l_i``."""
    out = []
    for li in period:
        left = [sum((li[a] * hermitian[a][b] for a in range(len(li))), GaussianRational())
                for b in range(len(li))]
        out.append([sum((x * y.conjugate() for x, y in zip(left, lj)), GaussianRational())
                    for lj in period])
    return out


def real_coordinates(period) -> Matrix:
    """Rows ``(Re l_i, Im l_i)``: the real coordinates of each period vector."""
    return [[x.re for x in row] + [x.im for x in row] for row in period]


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(d: AHData) -> ValidationReport:
    rep = ValidationReport()
    n = d.rank
    if any(d.gram[i][j] != d.gram[j][i].conjugate() for i in range(n) for j in range(n)):
        rep.violations.append("hermitian: gram is not Hermitian")
    if any(x.im.denominator != 1 for row in d.gram for x in row):
        rep.violations.append("integrality: Im(gram) is not integral")
    if d.period is None:
        rep.warnings.append("unverified complex structure: gram mode carries no period data")
    else:
        if exact.rank(real_coordinates(d.period)) != n:
            rep.violations.append("period: real coordinates of the periods are dependent")
        if d.hermitian is not None:
            herm = d.hermitian
            if any(herm[a][b] != herm[b][a].conjugate() for a in range(d.g) for b in range(d.g)):
                rep.violations.append("hermitian: g x g form is not Hermitian")
            elif _gmat(period_gram(d.period, herm)) != d.gram:
                rep.violations.append("consistency: gram does not match period and hermitian form")
    return rep


def alpha_eval(d: AHData, l) -> Fraction:
    """Exponent t with ``alpha(l) = exp(2 pi i t)``, reduced mod 1.

    For ``l = sum n_i l_i`` this is ``sum n_i t_i + 1/2 sum_{i<j} n_i n_j E(l_i, l_j)``,
    the unique extension of the basis values satisfying the semicharacter rule.
    """
    E = d.imag()
    t = sum((n * ti for n, ti in zip(l, d.alpha_t)), Fraction(0))
    half = Fraction(0)
    for i, ni in enumerate(l):
        if ni:
            for j in range(i + 1, len(l)):
                if l[j]:
                    half += ni * l[j] * E[i][j]
    return (t + half / 2) % 1


def default_semicharacter(E) -> tuple[Fraction, ...]:
    """Basis values of the semicharacter used when none is supplied (all zero)."""
    return tuple(Fraction(0) for _ in range(len(E)))


def kernel_H(d: AHData) -> list[list[Fraction]]:
    """Rational basis of ``ker H`` in lattice coordinates.

    Checked against ``ker E``; the two must agree for genuine data.
    """
    stacked = d.real() + d.imag()
    ker = exact.kernel_basis(stacked, d.rank)
    kerE = exact.kernel_basis(d.imag(), d.rank)
    if not exact.same_span(ker, kerE):
        raise AHConsistencyError("data not Appell-Humbert-consistent: ker(H) != ker(E)")
    return ker


def k_group(d: AHData) -> tuple[int, lattice.DiscriminantGroup]:
    """``(dim K^0, K/K^0)`` for ``K = L_E^perp / L``."""
    S = d.symplectic()
    return S.g0, lattice.discriminant_group(S)


def _check_compatible(d1: AHData, d2: AHData):
    if d1.g != d2.g:
        raise ValueError(f"dimension mismatch: g={d1.g} vs g={d2.g}")
    if (d1.period is None) != (d2.period is None) or (d1.period is not None and d1.period != d2.period):
        raise ValueError("tensor needs identical period data (or none on both sides)")


def tensor(d1: AHData, d2: AHData) -> AHData:
    _check_compatible(d1, d2)
    gram = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(d1.gram, d2.gram)]
    alpha = [a + b for a, b in zip(d1.alpha_t, d2.alpha_t)]
    herm = None
    if d1.hermitian is not None and d2.hermitian is not None:
        herm = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(d1.hermitian, d2.hermitian)]
    return AHData(d1.g, gram, alpha, d1.period, herm)


def power(d: AHData, n: int) -> AHData:
    if n < 1:
        raise ValueError("power needs a positive exponent")
    gram = [[x * n for x in row] for row in d.gram]
    herm = None if d.hermitian is None else [[x * n for x in row] for row in d.hermitian]
    return AHData(d.g, gram, [t * n for t in d.alpha_t], d.period, herm)


def is_pic0(d: AHData) -> bool:
    return not any(x for row in d.gram for x in row)


def pullback(target: AHData, M) -> AHData:
    """Pull back along the lattice map with integer matrix ``M`` (rank_A x rank_L).

    The result is in Gram mode: the source complex structure is not known here.
    """
    M = [[int(x) for x in row] for row in M]
    rows, cols = exact.shape(M)
    if rows != target.rank or cols % 2 or cols == 0:
        raise ValueError(f"map matrix must be {target.rank} x 2g, got {rows} x {cols}")
    Mt = exact.transpose(M)
    gram = [[sum((Mt[i][k] * sum((target.gram[k][l] * M[l][j] for l in range(rows)), GaussianRational())
                  for k in range(rows)), GaussianRational()) for j in range(cols)] for i in range(cols)]
    alpha = [alpha_eval(target, col) for col in Mt]
    return AHData(cols // 2, gram, alpha)


def hermitian_psd(A) -> bool:
    """Exact positive-semidefiniteness test for a Hermitian Gaussian-rational matrix.

    Symmetric pivoting: eliminate on a positive diagonal entry; a zero
    diagonal entry forces its whole row to vanish.
    """
    A = [list(row) for row in _gmat(A)]
    while A:
        n = len(A)
        diag = [A[i][i].re for i in range(n)]
        if any(x < 0 for x in diag):
            return False
        zero_rows = [i for i in range(n) if diag[i] == 0]
        if any(any(A[i]) for i in zero_rows):
            return False
        keep = [i for i in range(n) if diag[i] != 0]
        if not keep:
            return True
        p = max(keep, key=lambda i: diag[i])
        piv = A[p][p].re
        rest = [i for i in keep if i != p]
        A = [[A[i][j] - A[i][p] * A[p][j] / piv for j in rest] for i in rest]
    return True


def is_semipositive(d: AHData) -> bool:
    if d.hermitian is None:
        raise ValueError("semipositivity needs complex data (period mode with a hermitian form)")
    return hermitian_psd(d.hermitian)
