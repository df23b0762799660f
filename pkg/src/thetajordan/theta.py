"""Exact arithmetic in the theta group of a line bundle, plus finite Heisenberg models.

An element ``mult(s) o B_u`` of the theta group is stored as ``(s, u)`` with
``u`` the lattice coordinates of a point of ``L_E^perp``. The group law is

    (s, u) * (r, v) = (s r exp(pi H(u, v)), u + v)

and the theta group is the quotient by the central lattice ``{A_l : l in L}``
with ``A_l = mult(alpha(l) exp(pi H(l, l) / 2)) o B_l``. Every coset has a
unique representative with ``u`` in ``[0, 1)^{2g}``; that is the canonical form.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice
from .appell_humbert import AHData, alpha_eval
from .exact import FormalScalar


@dataclass(frozen=True)
class ThetaElement:
    s: FormalScalar
    u: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(Fraction(x) for x in self.u))

    @property
    def canonical(self) -> bool:
        return all(0 <= x < 1 for x in self.u)


def _check(d: AHData, x: ThetaElement):
    if len(x.u) != d.rank:
        raise ValueError(f"element has {len(x.u)} coordinates, data has rank {d.rank}")
    E = d.imag()
    for j in range(d.rank):
        if sum((ui * E[i][j] for i, ui in enumerate(x.u) if ui), Fraction(0)).denominator != 1:
            raise ValueError("coordinate vector is not in L_E^perp")


def element(d: AHData, u, s: FormalScalar | None = None) -> ThetaElement:
    """Canonical form of ``mult(s) o B_u``."""
    return canonicalize(d, ThetaElement(s or FormalScalar.one(), tuple(u)))


def scalar(d: AHData, s: FormalScalar) -> ThetaElement:
    return ThetaElement(s, (Fraction(0),) * d.rank)


def identity(d: AHData) -> ThetaElement:
    return scalar(d, FormalScalar.one())


def canonicalize(d: AHData, x: ThetaElement) -> ThetaElement:
    _check(d, x)
    n = [math.floor(c) for c in x.u]
    if not any(n):
        return x
    frac = tuple(c - k for c, k in zip(x.u, n))
    # (s, u) = (s', frac) * A_n  with  A_n = (alpha(n) exp(pi H(n,n)/2), n)
    s = (x.s
         * FormalScalar.root_of_unity(-alpha_eval(d, n))
         * FormalScalar.exp_pi(d.H(n, n) * Fraction(-1, 2))
         * FormalScalar.exp_pi(-d.H(frac, n)))
    return ThetaElement(s, frac)


def theta_mul(d: AHData, x: ThetaElement, y: ThetaElement) -> ThetaElement:
    _check(d, x)
    _check(d, y)
    s = x.s * y.s * FormalScalar.exp_pi(d.H(x.u, y.u))
    return canonicalize(d, ThetaElement(s, tuple(a + b for a, b in zip(x.u, y.u))))


def theta_inv(d: AHData, x: ThetaElement) -> ThetaElement:
    _check(d, x)
    s = x.s.inverse() * FormalScalar.exp_pi(d.H(x.u, x.u))
    return canonicalize(d, ThetaElement(s, tuple(-a for a in x.u)))


def theta_pow(d: AHData, x: ThetaElement, k: int) -> ThetaElement:
    if k < 0:
        x, k = theta_inv(d, x), -k
    result, base = identity(d), canonicalize(d, x)
    while k:
        if k & 1:
            result = theta_mul(d, result, base)
        base = theta_mul(d, base, base)
        k >>= 1
    return result


def E_value(d: AHData, u, v) -> Fraction:
    return d.H(u, v).im


def commutator_closed_form(d: AHData, x: ThetaElement, y: ThetaElement) -> FormalScalar:
    return FormalScalar.root_of_unity(E_value(d, x.u, y.u))


def commutator(d: AHData, x: ThetaElement, y: ThetaElement) -> FormalScalar:
    """``x y x^-1 y^-1`` computed with the group law; must equal ``exp(2 pi i E(u_x, u_y))``."""
    c = theta_mul(d, theta_mul(d, x, y), theta_mul(d, theta_inv(d, x), theta_inv(d, y)))
    if any(c.u):
        raise ArithmeticError("commutator is not central")
    closed = commutator_closed_form(d, x, y)
    if c.s != closed:
        raise ArithmeticError(f"commutator {c.s} disagrees with closed form {closed}")
    return c.s


def in_center(d: AHData, x: ThetaElement) -> bool:
    """Membership in the centre, i.e. ``u`` lies in ``ker(E) + Z^{2g}``.

    Decided from the symplectic coordinates of ``u`` and cross-checked against
    commutators with the generators of ``L_E^perp``.
    """
    _check(d, x)
    S = d.symplectic()
    from .exact import inverse, matvec

    coords = matvec(inverse([list(r) for r in S.change_of_basis]), x.u)
    central = all(c.denominator == 1 for c in coords[2 * S.g0:])
    gens = [element(d, v) for v in lattice.dual_lattice(S)] if S.pairs else []
    gens += [element(d, [Fraction(c, 2) for c in v]) for v in S.radical_basis]
    by_commutators = all(E_value(d, x.u, gen.u).denominator == 1 for gen in gens)
    if central != by_commutators:
        raise ArithmeticError("centre test disagrees with generator commutators")
    return central


def perp_generators(d: AHData) -> tuple[list[list[Fraction]], list[list[int]]]:
    """(discrete generators e_i/d_i, f_i/d_i ; radical directions) of ``L_E^perp``."""
    S = d.symplectic()
    disc = lattice.dual_lattice(S) if S.pairs else []
    return disc, [list(v) for v in S.radical_basis]


def sample_element(d: AHData, rng: random.Random, denom: int = 6,
                   scalar_part: bool = True) -> ThetaElement:
    """Random element: integer combination of the E-dual generators plus a
    rational multiple (denominator ``denom``) of each radical vector."""
    disc, rad = perp_generators(d)
    u = [Fraction(0)] * d.rank
    for v in disc:
        c = rng.randint(-3, 3)
        u = [a + c * b for a, b in zip(u, v)]
    for v in rad:
        c = Fraction(rng.randint(-denom, denom), denom)
        u = [a + c * b for a, b in zip(u, v)]
    s = FormalScalar.one()
    if scalar_part:
        s = FormalScalar(
            primes={p: Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for p in rng.sample([2, 3, 5], 2)},
            a=Fraction(rng.randint(-4, 4), rng.randint(1, 4)),
            t=Fraction(rng.randint(0, 11), 12))
    return element(d, u, s)


# ---------------------------------------------------------------------------
# finite Heisenberg groups


class HeisenbergGroup:
    """Central extension of ``(Z/d_1)^2 + ... + (Z/d_k)^2`` by ``Z/m``.

    Elements are tuples ``(r, a_1, b_1, ..., a_k, b_k)`` with

        (r, a, b) * (r', a', b') = (r + r' + sum (m/d_i) a_i b'_i, a + a', b + b')

    so the commutator of x and y is ``m * e_E(x, y)`` in ``Z/m``.
    """

    def __init__(self, divisors: Sequence[int], m: int | None = None):
        self.divisors = tuple(int(x) for x in divisors)
        if any(x < 1 for x in self.divisors) or any(b % a for a, b in zip(self.divisors, self.divisors[1:])):
            raise ValueError(f"{self.divisors} is not a divisibility chain")
        base = math.lcm(1, *self.divisors)
        self.m = base if m is None else int(m)
        if self.m < 1 or self.m % base:
            raise ValueError(f"central order {self.m} is not a multiple of lcm{self.divisors} = {base}")
        self.moduli = (self.m,) + tuple(x for x in self.divisors for _ in range(2))

    @property
    def order(self) -> int:
        return self.m * math.prod(self.divisors) ** 2

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def _cocycle(self, x, y) -> int:
        return sum((self.m // dv) * x[1 + 2 * i] * y[2 + 2 * i] for i, dv in enumerate(self.divisors))

    def element_mul(self, x, y) -> tuple[int, ...]:
        out = [(x[0] + y[0] + self._cocycle(x, y)) % self.m]
        out += [(a + b) % mod for a, b, mod in zip(x[1:], y[1:], self.moduli[1:])]
        return tuple(out)

    def element_inv(self, x) -> tuple[int, ...]:
        r = (-x[0] + self._cocycle(x, x)) % self.m
        return (r,) + tuple(-a % mod for a, mod in zip(x[1:], self.moduli[1:]))

    def element_order(self, x) -> int:
        k, y = 1, tuple(x)
        while y != self.identity:
            y = self.element_mul(y, x)
            k += 1
        return k

    def commutator(self, x, y) -> int:
        xy = self.element_mul(x, y)
        yx = self.element_mul(y, x)
        return self.element_mul(xy, self.element_inv(yx))[0]

    def image(self, x) -> tuple[int, ...]:
        """Image in the discriminant group."""
        return tuple(x[1:])

    def enumerate_elements(self) -> list[tuple[int, ...]]:
        import itertools

        return [tuple(e) for e in itertools.product(*(range(mod) for mod in self.moduli))]


def heisenberg(divisors: Sequence[int], m: int | None = None) -> HeisenbergGroup:
    return HeisenbergGroup(divisors, m)


# ---------------------------------------------------------------------------
# lifting finite subgroups


def lift_finite(d: AHData, generators: Iterable) -> list[ThetaElement]:
    """Finite subgroup of the theta group mapping onto the subgroup of
    ``L1^perp / L1`` generated by ``generators`` (discriminant coordinates).

    Each ``x`` gets a lift of the same order (the scalar is corrected by a
    principal root); ``-x`` is lifted to the inverse of that lift. The result is
    ``{gamma * lift(x)}`` over ``gamma`` in the ``e^2``-th roots of unity, where
    ``e`` is the exponent of the subgroup.
    """
    S = d.symplectic()
    D = lattice.discriminant_group(S)
    delta = sorted(D.span(generators))
    e = math.lcm(1, *(D.element_order(x) for x in delta))
    lifts: dict[tuple, ThetaElement] = {}
    for x in delta:
        if x in lifts:
            continue
        y = element(d, D.to_vector(x)) if D.rank else identity(d)
        k = D.element_order(x)
        c = theta_pow(d, y, k)
        if any(c.u):
            raise ArithmeticError("power of a lift left the centre")
        lx = theta_mul(d, scalar(d, c.s.inverse().root(k)), y)
        lifts[x] = lx
        lifts.setdefault(D.neg(x), theta_inv(d, lx))
    return [theta_mul(d, scalar(d, FormalScalar.root_of_unity(Fraction(j, e * e))), lifts[x])
            for j in range(e * e) for x in delta]
