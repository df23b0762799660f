import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetajordan import exact, theta
from thetajordan.appell_humbert import AHData, alpha_eval
from thetajordan.exact import FormalScalar, I
from thetajordan.lattice import DiscriminantGroup, discriminant_group, pairing_eE
from thetajordan.theta import theta_inv, theta_mul

from generators import DECOUPLED4, E2, F4, random_degenerate_pair, random_period_data

seeds = st.integers(0, 2**32)


def fixtures():
    rng = random.Random(7)
    E, _ = random_degenerate_pair(rng, 3, 1)
    return {
        "e2": AHData.from_alternating(E2, [Fraction(1, 2), Fraction(1, 3)]),
        "f4": AHData.from_alternating(F4, [0, Fraction(1, 2), 0, Fraction(1, 3)]),
        "decoupled": AHData.from_alternating(DECOUPLED4, [Fraction(1, 4)] * 4),
        "degenerate": AHData.from_alternating(E, [Fraction(1, 6)] * 6),
        "period": random_period_data(random.Random(3), 2),
        "elliptic2": AHData.from_period([[1], [I]], [[2]], [Fraction(1, 2), 0]),
        "zero": AHData.from_gram([[0, 0], [0, 0]], [Fraction(1, 3), Fraction(1, 4)]),
    }


FIXTURES = fixtures()
names = st.sampled_from(sorted(FIXTURES))


@settings(max_examples=80, deadline=None)
@given(names, seeds)
def test_group_axioms(name, seed):
    d, rng = FIXTURES[name], random.Random(seed)
    x, y, z = (theta.sample_element(d, rng) for _ in range(3))
    assert theta_mul(d, theta_mul(d, x, y), z) == theta_mul(d, x, theta_mul(d, y, z))
    e = theta.identity(d)
    assert theta_mul(d, x, e) == x == theta_mul(d, e, x)
    assert theta_mul(d, x, theta_inv(d, x)) == e
    assert x.canonical


@settings(max_examples=60, deadline=None)
@given(names, seeds)
def test_lattice_elements_are_trivial(name, seed):
    """``A_l = mult(alpha(l) exp(pi H(l,l)/2)) o B_l`` is the identity."""
    d, rng = FIXTURES[name], random.Random(seed)
    l = [rng.randint(-4, 4) for _ in range(d.rank)]
    s = FormalScalar.root_of_unity(alpha_eval(d, l)) * FormalScalar.exp_pi(d.H(l, l) * Fraction(1, 2))
    assert theta.element(d, l, s) == theta.identity(d)
    x = theta.sample_element(d, rng)
    shifted = theta_mul(d, x, theta.ThetaElement(s, tuple(l)))
    assert shifted == x


@settings(max_examples=60, deadline=None)
@given(names, seeds, st.integers(-6, 6))
def test_power_matches_repeated_product(name, seed, k):
    d, rng = FIXTURES[name], random.Random(seed)
    x = theta.sample_element(d, rng)
    y = theta.identity(d)
    step = x if k >= 0 else theta_inv(d, x)
    for _ in range(abs(k)):
        y = theta_mul(d, y, step)
    assert theta.theta_pow(d, x, k) == y


@settings(max_examples=80, deadline=None)
@given(names, seeds)
def test_commutator_closed_form(name, seed):
    d, rng = FIXTURES[name], random.Random(seed)
    x, y = theta.sample_element(d, rng), theta.sample_element(d, rng)
    c = theta.commutator(d, x, y)
    assert c == FormalScalar.root_of_unity(theta.E_value(d, x.u, y.u))


def test_zero_form_is_abelian():
    d = FIXTURES["zero"]
    rng = random.Random(1)
    for _ in range(30):
        x, y = theta.sample_element(d, rng), theta.sample_element(d, rng)
        assert theta.commutator(d, x, y).is_one
        assert theta.in_center(d, x)


def test_center():
    d = FIXTURES["f4"]
    assert theta.in_center(d, theta.element(d, [0, 0, 0, 0]))
    assert not theta.in_center(d, theta.element(d, [0, 0, Fraction(1, 2), 0]))
    dec = FIXTURES["decoupled"]
    # the radical directions are central
    assert theta.in_center(dec, theta.element(dec, [0, 0, Fraction(1, 3), Fraction(2, 7)]))


def test_membership_check():
    with pytest.raises(ValueError, match="not in L_E"):
        theta.element(FIXTURES["f4"], [Fraction(1, 2), 0, 0, 0])
    with pytest.raises(ValueError, match="coordinates"):
        theta.element(FIXTURES["f4"], [0, 0])


@pytest.mark.parametrize("divisors", [(2,), (3,), (2, 2), (2, 4)])
def test_heisenberg_commutator_is_pairing(divisors):
    H = theta.heisenberg(divisors)
    D = DiscriminantGroup(divisors)
    elems = H.enumerate_elements()
    assert len(elems) == H.order == H.m * D.order
    rng = random.Random(0)
    for _ in range(200):
        x, y = rng.choice(elems), rng.choice(elems)
        assert Fraction(H.commutator(x, y), H.m) == pairing_eE(D, H.image(x), H.image(y))
        assert H.element_mul(x, H.element_inv(x)) == H.identity


def test_heisenberg_checks():
    with pytest.raises(ValueError, match="divisibility chain"):
        theta.heisenberg((2, 3))
    with pytest.raises(ValueError, match="not a multiple"):
        theta.heisenberg((4,), m=2)
    assert theta.heisenberg((2,), m=4).order == 16


def disc_image(S, u):
    """Discriminant coordinates of ``u`` (dropping ``d = 1`` blocks), via the symplectic basis."""
    v = exact.matvec(exact.inverse([list(r) for r in S.change_of_basis]), u)[2 * S.g0:]
    out = []
    for i, dv in enumerate(S.divisors):
        if dv > 1:
            out += [v[2 * i] * dv % dv, v[2 * i + 1] * dv % dv]
    assert all(c.denominator == 1 for c in out)
    return tuple(int(c) for c in out)


@pytest.mark.parametrize("name", ["e2", "f4", "elliptic2"])
def test_lift_finite_full_group(name):
    d = FIXTURES[name]
    D = discriminant_group(d.symplectic())
    gens = [tuple(int(i == j) for i in range(D.rank)) for j in range(D.rank)]
    lifted = theta.lift_finite(d, gens)
    found = set(lifted)
    assert len(found) == len(lifted)
    e = D.exponent
    for x in lifted:
        for y in lifted:
            assert theta_mul(d, x, y) in found
        assert theta.theta_pow(d, x, e * e) == theta.identity(d)
    assert {disc_image(d.symplectic(), x.u) for x in lifted} == set(D.elements())


def test_mul_and_commutator_example():
    d = AHData.from_alternating(E2)
    x, y = theta.element(d, [Fraction(1, 2), 0]), theta.element(d, [0, Fraction(1, 2)])
    xy = theta_mul(d, x, y)
    assert xy.u == (Fraction(1, 2), Fraction(1, 2))
    assert xy.s == FormalScalar.root_of_unity(Fraction(1, 4))
    assert theta.commutator(d, x, y) == FormalScalar.root_of_unity(Fraction(1, 2))


@settings(max_examples=60, deadline=None)
@given(names, seeds)
def test_canonicalize_integer_vector(name, seed):
    d, rng = FIXTURES[name], random.Random(seed)
    n = [rng.randint(-3, 3) for _ in range(d.rank)]
    c = theta.canonicalize(d, theta.ThetaElement(FormalScalar.one(), n))
    expected = (FormalScalar.root_of_unity(-alpha_eval(d, n))
                * FormalScalar.exp_pi(d.H(n, n) * Fraction(-1, 2)))
    assert c == theta.identity(d) if not any(n) else c.s == expected
    assert not any(c.u)
    x = theta.sample_element(d, rng)
    assert theta.canonicalize(d, x) == x and x.canonical


def all_subgroups(D):
    subs, frontier = {frozenset([D.zero])}, [frozenset([D.zero])]
    while frontier:
        T = frontier.pop()
        for x in D.elements():
            J = D.span(list(T) + [x])
            if J not in subs:
                subs.add(J)
                frontier.append(J)
    return subs


@pytest.mark.parametrize("E", [E2, exact.block_diag(E2, E2)], ids=["(2)", "(2,2)"])
def test_lifts_commute_iff_isotropic(E):
    d = AHData.from_alternating(E)
    D = discriminant_group(d.symplectic())
    lift = {x: theta.element(d, D.to_vector(x)) for x in D.elements()}
    subs = all_subgroups(D)
    # (Z/2)^2 has 5 subgroups, (Z/2)^4 has 67
    assert len(subs) == (5 if len(E) == 2 else 67)
    for T in subs:
        isotropic = all(pairing_eE(D, a, b) == 0 for a in T for b in T)
        commuting = all(theta.commutator(d, lift[a], lift[b]) == FormalScalar.one() for a in T for b in T)
        assert isotropic == commuting


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_radical_direction_is_central(seed):
    d, rng = FIXTURES["degenerate"], random.Random(seed)
    S = d.symplectic()
    coeffs = [Fraction(rng.randint(-6, 6), 5) for _ in S.radical_basis]
    v = [sum(c * r[k] for c, r in zip(coeffs, S.radical_basis)) for k in range(d.rank)]
    z = theta.element(d, v)
    assert theta.in_center(d, z)
    for _ in range(5):
        y = theta.sample_element(d, rng)
        assert theta.commutator(d, z, y) == FormalScalar.one()


@pytest.mark.parametrize("divisors", [(2,), (3,), (2, 2)])
def test_heisenberg_exhaustive_commutators(divisors):
    H = theta.heisenberg(divisors)
    D = DiscriminantGroup(divisors)
    els = H.enumerate_elements()
    for x in els:
        for y in els:
            assert Fraction(H.commutator(x, y), H.m) == pairing_eE(D, H.image(x), H.image(y))


def test_heisenberg_small_cases():
    H = theta.heisenberg((2,), 2)
    els = H.enumerate_elements()
    centre = [z for z in els if all(H.commutator(z, w) == 0 for w in els)]
    assert H.order == len(els) == 8 and len(centre) == 2
    for m in (1, 4, 5):
        C = theta.heisenberg((1,), m)
        assert C.order == m and max(C.element_order(x) for x in C.enumerate_elements()) == m


def test_lift_finite_e2_order_two():
    d = AHData.from_alternating(E2)
    lifted = theta.lift_finite(d, [(1, 0), (0, 1)])
    assert len(lifted) == 16
    D = discriminant_group(d.symplectic())
    for x in D.elements():
        if D.element_order(x) != 2:
            continue
        fibre = [z for z in lifted if z.u == tuple(D.to_vector(x))]
        assert len(fibre) == 4
        assert any(theta.theta_pow(d, z, 2) == theta.identity(d) for z in fibre)
