import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetajordan import appell_humbert as ah
from thetajordan import exact
from thetajordan.appell_humbert import AHData, alpha_eval
from thetajordan.exact import GaussianRational, I

from generators import E2, F4, random_gaussian_int, random_period_data

seeds = st.integers(0, 2**32)


def elliptic():
    return AHData.from_period([[1], [I]], [[1]])


def test_period_gram_elliptic():
    d = elliptic()
    # H(z, w) = z conj(w): H(1, i) = -i, H(i, 1) = i
    assert d.gram == ((1, -I), (I, 1))
    assert d.E() == [[0, -1], [1, 0]]
    assert ah.validate(d).ok and not ah.validate(d).warnings


def test_validate_flags():
    rep = ah.validate(AHData.from_alternating(E2))
    assert rep.ok and rep.warnings[0].startswith("unverified complex structure")
    bad = AHData.from_gram([[0, GaussianRational(0, Fraction(1, 2))], [GaussianRational(0, Fraction(-1, 2)), 0]])
    assert any(v.startswith("integrality:") for v in ah.validate(bad).violations)
    with pytest.raises(ah.AHConsistencyError):
        bad.E()
    nonherm = AHData.from_gram([[0, 1], [0, 0]])
    assert any(v.startswith("hermitian:") for v in ah.validate(nonherm).violations)
    flat = AHData.from_period([[1], [2]], [[1]])
    assert any(v.startswith("period:") for v in ah.validate(flat).violations)
    d = elliptic()
    tampered = AHData(1, [[2, -I], [I, 1]], (0, 0), d.period, d.hermitian)
    assert any(v.startswith("consistency:") for v in ah.validate(tampered).violations)


def test_dimension_checks():
    with pytest.raises(ValueError):
        AHData(1, [[0, 1]], (0, 0))
    with pytest.raises(ValueError):
        AHData.from_alternating(E2, [0])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), seeds)
def test_period_data_is_hermitian_and_integral(g, seed):
    d = random_period_data(random.Random(seed), g)
    assert ah.validate(d).ok
    n = d.rank
    assert all(d.gram[i][j] == d.gram[j][i].conjugate() for i in range(n) for j in range(n))


def to_complex(M):
    return np.array([[complex(float(x.re), float(x.im)) for x in row] for row in M])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), seeds)
def test_psd_against_eigenvalues(g, seed):
    rng = random.Random(seed)
    B = [[random_gaussian_int(rng) for _ in range(g)] for _ in range(rng.randint(1, g))]
    signs = [rng.choice([1, 1, -1, 0]) for _ in B]
    A = [[sum((B[k][a].conjugate() * B[k][b] * signs[k] for k in range(len(B))), GaussianRational())
          for b in range(g)] for a in range(g)]
    eig = np.linalg.eigvalsh(to_complex(A))
    scale = max(1.0, float(np.abs(eig).max()))
    if -1 not in signs:
        assert ah.hermitian_psd(A)
    elif eig.min() < -1e-6 * scale:
        assert not ah.hermitian_psd(A)


def test_psd_examples():
    assert ah.hermitian_psd([[1, 0], [0, 0]])
    assert not ah.hermitian_psd([[0, 1], [1, 0]])
    assert not ah.hermitian_psd([[1, 2], [2, 1]])
    assert ah.hermitian_psd([[1, I], [-I, 1]])
    assert ah.is_semipositive(elliptic())
    with pytest.raises(ValueError, match="semipositivity needs complex data"):
        ah.is_semipositive(AHData.from_alternating(E2))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), seeds)
def test_kernel_of_hermitian_form(g, seed):
    rng = random.Random(seed)
    r = rng.randint(0, g)
    d = random_period_data(rng, g, rank=r)
    ker = ah.kernel_H(d)
    for v in ker:
        for j in range(d.rank):
            e = [Fraction(int(i == j)) for i in range(d.rank)]
            assert d.H(v, e) == 0 and d.H(e, v) == 0
    assert len(ker) == d.rank - exact.rank(d.imag())


def test_kernel_mismatch_raises():
    # Im vanishes but Re does not, so ker(E) is everything and ker(H) is not
    with pytest.raises(ah.AHConsistencyError, match="ker"):
        ah.kernel_H(AHData.from_gram([[1, 0], [0, 0]]))


def test_alpha_eval_examples():
    d = AHData.from_alternating(E2, [Fraction(1, 3), Fraction(1, 4)])
    assert alpha_eval(d, [1, 0]) == Fraction(1, 3)
    assert alpha_eval(d, [0, 0]) == 0
    # 1/3 + 1/4 + E(l1, l2)/2 = 7/12 + 1
    assert alpha_eval(d, [1, 1]) == Fraction(7, 12)
    d = AHData.from_alternating([[0, 1], [-1, 0]])
    assert alpha_eval(d, [1, 1]) == Fraction(1, 2)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_alpha_cocycle(seed):
    rng = random.Random(seed)
    d = AHData.from_alternating(F4, [Fraction(rng.randint(0, 5), 6) for _ in range(4)])
    l1 = [rng.randint(-5, 5) for _ in range(4)]
    l2 = [rng.randint(-5, 5) for _ in range(4)]
    lhs = alpha_eval(d, [a + b for a, b in zip(l1, l2)])
    rhs = (alpha_eval(d, l1) + alpha_eval(d, l2) + Fraction(exact.bilinear(l1, F4, l2), 2)) % 1
    assert lhs == rhs


def test_tensor_power_and_pic0():
    a = AHData.from_alternating(E2, [Fraction(1, 2), Fraction(1, 3)])
    b = AHData.from_alternating([[0, 1], [-1, 0]], [Fraction(1, 2), 0])
    t = ah.tensor(a, b)
    assert t.E() == [[0, 3], [-3, 0]] and t.alpha_t == (0, Fraction(1, 3))
    assert ah.power(a, 3).E() == [[0, 6], [-6, 0]]
    assert ah.power(a, 3).alpha_t == (Fraction(1, 2), 0)
    z = AHData.from_gram([[0, 0], [0, 0]], [Fraction(1, 5), 0])
    assert ah.is_pic0(z) and not ah.is_pic0(a)
    with pytest.raises(ValueError, match="identical period data"):
        ah.tensor(a, elliptic())
    with pytest.raises(ValueError, match="dimension mismatch"):
        ah.tensor(a, AHData.from_alternating(F4))


def test_k_group():
    g0, D = ah.k_group(AHData.from_alternating(F4))
    assert g0 == 0 and D.divisors == (2,)
    g0, D = ah.k_group(AHData.from_gram([[0] * 2] * 2))
    assert g0 == 1 and D.order == 1


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_pullback_functorial(seed):
    rng = random.Random(seed)
    d = random_period_data(rng, 2)
    M = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
    N = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)]
    p = ah.pullback(d, M)
    assert p.E() == exact.matmul(exact.transpose(M), exact.matmul(d.E(), M))
    for col in exact.columns(N):
        img = exact.matvec(M, col)
        assert alpha_eval(p, col) == alpha_eval(d, img)
    twice = ah.pullback(p, N)
    once = ah.pullback(d, exact.matmul(M, N))
    assert twice.gram == once.gram and twice.alpha_t == once.alpha_t


def test_pullback_shape_check():
    with pytest.raises(ValueError, match="map matrix"):
        ah.pullback(AHData.from_alternating(E2), [[1, 0, 0]])


def test_spec_examples_validation_and_alpha():
    assert ah.validate(AHData.from_gram([[0, 0], [0, 0]], [Fraction(1, 3), Fraction(1, 7)])).ok
    d = AHData.from_alternating(E2)
    # (1/2) * E(l1, l2) = 1, and (-1)^2 = 1 directly
    assert alpha_eval(d, [1, 1]) == 0
    assert ah.default_semicharacter(E2) == (0, 0)


def test_kernel_examples():
    assert len(ah.kernel_H(AHData.from_gram([[0, 0], [0, 0]]))) == 2
    assert ah.kernel_H(elliptic()) == []
    from generators import DECOUPLED4

    ker = ah.kernel_H(AHData.from_alternating(DECOUPLED4))
    assert exact.same_span(ker, [[0, 0, 1, 0], [0, 0, 0, 1]])


def test_k_group_period_mode():
    d = AHData.from_period([[1], [I]], [[2]])
    assert d.E() == [[0, -2], [2, 0]]
    g0, D = ah.k_group(d)
    assert g0 == 0 and D.divisors == (2,)


def test_tensor_laws():
    rng = random.Random(4)
    a, b, c = (AHData.from_alternating(F4, [Fraction(rng.randint(0, 5), 6) for _ in range(4)]) for _ in range(3))
    trivial = AHData.from_gram([[0] * 4 for _ in range(4)])
    assert ah.tensor(a, trivial) == a
    assert ah.tensor(a, a) == ah.power(a, 2)
    assert ah.tensor(a, b) == ah.tensor(b, a)
    assert ah.tensor(ah.tensor(a, b), c) == ah.tensor(a, ah.tensor(b, c))
    for m in range(1, 4):
        for n in range(1, 4):
            assert ah.power(a, m + n) == ah.tensor(ah.power(a, m), ah.power(a, n))
    assert ah.is_pic0(ah.power(trivial, 5))
    assert ah.power(AHData.from_alternating([[0, 1], [-1, 0]]), 3).E() == [[0, 3], [-3, 0]]


def test_pullback_examples():
    E1d = AHData.from_alternating([[0, 1], [-1, 0]], [Fraction(1, 3), Fraction(1, 2)])
    same = ah.pullback(E1d, [[1, 0], [0, 1]])
    assert same.gram == E1d.gram and same.alpha_t == E1d.alpha_t
    assert ah.pullback(E1d, [[2, 0], [0, 2]]).E() == [[0, 4], [-4, 0]]
    p = ah.pullback(E1d, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert p.E() == [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    assert p.alpha_t == (Fraction(1, 3), Fraction(1, 2), 0, 0)


def test_semipositive_examples():
    assert ah.is_semipositive(AHData.from_period([[1], [I]], [[1]]))
    assert not ah.is_semipositive(AHData.from_period([[1], [I]], [[-1]]))
    period = [[1, 0], [I, 0], [0, 1], [0, I]]
    assert ah.is_semipositive(AHData.from_period(period, [[1, 1], [1, 1]]))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 3), seeds)
def test_alpha_on_radical_is_homomorphism(g, seed):
    from generators import random_degenerate_pair

    rng = random.Random(seed)
    E, _ = random_degenerate_pair(rng, g, 1)
    d = AHData.from_alternating(E, [Fraction(rng.randint(0, 7), 8) for _ in range(2 * g)])
    rad = d.symplectic().radical_basis
    comb = lambda c: [sum(ci * v[k] for ci, v in zip(c, rad)) for k in range(2 * g)]
    l1 = comb([rng.randint(-5, 5) for _ in rad])
    l2 = comb([rng.randint(-5, 5) for _ in rad])
    assert alpha_eval(d, [a + b for a, b in zip(l1, l2)]) == (alpha_eval(d, l1) + alpha_eval(d, l2)) % 1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), seeds)
def test_component_order_is_det_of_nondegenerate_block(g, seed):
    from generators import random_degenerate_pair

    rng = random.Random(seed)
    E, _ = random_degenerate_pair(rng, g, rng.randint(0, g - 1))
    d = AHData.from_alternating(E)
    S = d.symplectic()
    _, D = ah.k_group(d)
    B = exact.from_columns(S.l1_basis())
    assert D.order == abs(exact.det(exact.matmul(exact.transpose(B), exact.matmul(E, B))))
