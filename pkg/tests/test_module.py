import pytest
from hypothesis import given, settings, strategies as st

from uqwhittaker.module import (
    Maximal,
    ModuleElement,
    WhittakerModule,
    Zero,
    degree_key,
)
from uqwhittaker.panel import e2_panel
from uqwhittaker.scalars import SYMBOLIC
from uqwhittaker.suites import compute_identities, random_module_element

from strategies import chevalley_words

q = SYMBOLIC.q
alpha = SYMBOLIC.alpha
d = q - 1 / q

_M = []


def shared():
    if not _M:
        _M.append(WhittakerModule())
    return _M[0]


def B(M, j=0, k=0, l=0, Q=None):
    return ModuleElement.basis(M.field, j, k, l, Q)


# -------------------------------------------------------------- generators


def test_e1_and_e2_on_v(M):
    v = M.v()
    assert M.act_generator("E1", v) == v.scale(alpha)
    assert M.act_generator("E2", v).is_zero()
    assert M.act_generator("E3", v).is_zero()


def test_e1_on_f3_v(M):
    f3v = M.act_generator("F3", M.v())
    assert M.act_generator("E1", f3v) == B(M, 1, 0, 2, M.K(-1)) + f3v.scale(alpha)


def test_f1_on_v_matches_casimir_oracle(M):
    # F1 v = alpha^-1 C1 v - alpha^-1 d^-2 (q K2^-2 K + q^-1 K2^2 K^-1) v
    expect = (B(M, Q=M.C1()) - B(M, 0, 0, -2, M.K()).scale(q / d ** 2)
              - B(M, 0, 0, 2, M.K(-1)).scale(1 / (q * d ** 2))).scale(1 / alpha)
    assert M.act_generator("F1", M.v()) == expect


def test_cartan_weights(M):
    m = B(M, 2, 1, 0)
    assert M.act_generator("K2", m) == B(M, 2, 1, 1).scale(q ** -5)
    assert M.act_generator("K1", m) == B(M, 2, 1, -2, M.K()).scale(q)
    assert M.act_generator("K1i", M.act_generator("K1", m)) == m
    assert M.act_generator("K2i", M.act_generator("K2", m)) == m


def test_unknown_generator(M):
    with pytest.raises(ValueError):
        M.act_generator("E4", M.v())


def test_identity_and_commutator_actions(M, A):
    m = B(M, 1, 2, -1, M.C1())
    assert M.act_algebra(A.one(), m) == m
    comm = A.commutator(A.gen("E1"), A.gen("F1"))
    expect = M.act_algebra((A.gen("K1") - A.gen("K1i")) * (1 / d), M.v())
    assert M.act_algebra(comm, M.v()) == expect


@settings(max_examples=40)
@given(chevalley_words, st.randoms(use_true_random=False))
def test_word_action_agrees_with_normal_form(word, rnd):
    M = shared()
    m = random_module_element(M, rnd, support=3, poly_degree=1)
    assert M.act_word(word, m) == M.act_algebra(M.algebra.word(word), m)


@settings(max_examples=30)
@given(chevalley_words, chevalley_words)
def test_action_is_a_representation(w1, w2):
    M = shared()
    v = M.v()
    assert M.act_word(w1, M.act_word(w2, v)) == M.act_word(w1 + w2, v)


@pytest.mark.parametrize("j", range(5))
@pytest.mark.parametrize("k", range(5))
def test_straightening_identities(A, j, k):
    assert all(el.is_zero() for el in compute_identities(A, j, k))


# ------------------------------------------------------------- reductions


def test_reduce_mod_examples(M):
    kappa, c = SYMBOLIC.alpha + 3, q / 7
    J = Maximal(kappa, c)
    assert M.reduce_mod(B(M, Q=M.K() - M.const(kappa)), J).is_zero()
    assert M.reduce_mod(B(M, Q=M.K(2) * M.C1()), J) == M.v().scale(kappa ** 2 * c)
    assert M.reduce_mod(B(M, 1, 0, 3, M.C1() - M.const(c)), J).is_zero()
    m = B(M, 2, 0, 1, M.K())
    assert M.reduce_mod(m, Zero()) == m


def test_maximal_rejects_zero_kappa():
    with pytest.raises(ValueError):
        Maximal(0, 1)


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_reduction_is_a_module_map(rnd):
    M = shared()
    J = Maximal(q ** 2 + 1, alpha / q)
    m = random_module_element(M, rnd, support=3, poly_degree=1)
    for g in ("E1", "E2", "F1", "F2", "F3", "K1", "K2"):
        lhs = M.reduce_mod(M.act_generator(g, m), J)
        rhs = M.reduce_mod(M.act_generator(g, M.reduce_mod(m, J)), J)
        assert lhs == rhs


# ----------------------------------------------------------------- degree


def test_degree_examples(M):
    assert M.degree(M.v()) == (0, 0, 0)
    assert M.degree(B(M, 1) + B(M, 0, 1)) == (0, 1, 0)
    assert M.degree(B(M, l=1) + B(M, l=-1)) == (0, 0, 1)
    with pytest.raises(ValueError):
        M.degree(M.zero())


def test_degree_order_on_l():
    order = sorted([2, -2, 1, -1, 0], key=lambda l: degree_key((0, 0, l)))
    assert order == [0, -1, 1, -2, 2]


@settings(max_examples=50)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(-3, 3), st.integers(-2, 2))
def test_filtration(j, k, l, p):
    M = shared()
    f = M.field
    m = B(M, j, k, l, M.K(p))
    e1 = M.act_generator("E1", m) - m.scale(alpha * f.qpow(l))
    e2 = M.act_generator("E2", m)
    for a, b, ll in e1.support() | e2.support():
        assert degree_key((a, b, ll)) < degree_key((j, k, l))
    assert all(a + b == j + k for a, b, _ in e1.support())
    assert all(a + b == j + k - 1 for a, b, _ in e2.support())


# --------------------------------------------------------------- u family


def test_u_zero_is_cartan_vector(M):
    for l in range(-2, 3):
        assert M.u_element(0, l, M.C1()) == B(M, 0, 0, l, M.C1())


def test_u_one_is_g_v(M):
    expect = B(M, 1) - B(M, 1, 0, 2, M.K(-2)).scale(q ** -2) + B(M, 0, 1, 0, M.K(-1)).scale(alpha * (1 - q ** -2))
    assert M.u_element(1, 0) == expect
    assert M.act_algebra(M.algebra.g_operator(), M.v()) == expect


def test_u_degree_is_pure_f3(M):
    for n in range(4):
        for l in (-1, 0, 2):
            assert M.degree(M.u_element(n, l)) == (0, n, l)


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("l", range(-2, 3))
def test_u_is_e1_eigenvector(M, n, l):
    for Q in (M.const(), M.K(), M.C1(), M.K(-1) * M.C1()):
        u = M.u_element(n, l, Q)
        assert (M.act_generator("E1", u) - u.scale(alpha * q ** l)).is_zero()


def test_a_coeff_integrality(M):
    for n in range(6):
        for k in range(n + 1):
            for j in range(n - k + 1):
                M.a_coeff(k, j, n)
    assert M.a_coeff(0, 0, 0) == 1


def test_h_poly_examples(M):
    assert M.h_poly(1) == M.K() * q + M.K(-1) * (1 / q) - M.C1() * d ** 2
    assert M.h_poly(2) == M.K() * (1 / q) + M.K(-1) * q - M.C1() * d ** 2


@pytest.mark.parametrize("n", range(1, 5))
def test_e2_closed_form_is_exact(M, n):
    for l in (-1, 0, 2):
        for Q in (M.const(), M.C1(), M.K(-1)):
            assert M.act_generator("E2", M.u_element(n, l, Q)) == M.e2_rhs(n, l, Q)


def test_e2_at_n_one(M):
    l = 1
    expect = B(M, 0, 0, l + 1, M.K(-1) * M.h_poly(1)).scale(1 / (q ** 2 - 1))
    assert M.e2_rhs(1, l) == expect
    assert M.e2_rhs(1, l, variant="congruent") == expect


@pytest.mark.parametrize("n", range(2, 5))
def test_congruent_variant_agrees_only_where_h_vanishes(M, n):
    img = M.act_generator("E2", M.u_element(n, 0))
    diff = img - M.e2_rhs(n, 0, variant="congruent")
    assert not diff.is_zero()
    for kappa, c in e2_panel():
        J = Maximal(kappa, c)
        vanishes = M.h_poly(n).evaluate(kappa, c) == 0
        assert M.reduce_mod(diff, J).is_zero() == vanishes
        assert M.reduce_mod(img - M.e2_rhs(n, 0), J).is_zero()


def test_e2_rhs_rejects_n_zero(M):
    with pytest.raises(ValueError):
        M.e2_rhs(0, 0)
    with pytest.raises(ValueError):
        M.b_coeff(0, 0, 1, variant="other")


@pytest.mark.parametrize("n", range(4))
def test_f1_and_c1_closed_forms(M, n):
    for l in (-2, 0, 1):
        for Q in (M.const(), M.K(), M.C1()):
            u = M.u_element(n, l, Q)
            assert M.act_generator("F1", u) == M.f1_rhs(n, l, Q)
            assert M.apply_C1(u) == M.c1_rhs(n, l, Q)


@pytest.mark.parametrize("n", range(6))
def test_g_power_matches_closed_form(M, n):
    assert M.g_power(0, M.K()) == M.v(M.K())
    for Q in (M.const(), M.K(), M.C1()):
        assert M.g_power(n, Q) == M.u_element(n, 0, Q)


def test_g_power_ladder(M):
    kappa, c = SYMBOLIC.one, (q + 1 / q) / d ** 2
    J = Maximal(kappa, c)
    up = M.reduce_mod(M.u_element(2, 0), J)
    um = M.reduce_mod(M.u_element(1, 0), J)
    assert M.reduce_mod(M.apply_g(um), J) == up


# ------------------------------------------------------------ coefficients


def test_coeff_poly_arithmetic(M):
    K, C = M.K(), M.C1()
    assert K * M.K(-1) == M.const()
    assert (K + C) * (K - C) == M.K(2) - C * C
    assert (K * C).evaluate(q, 3) == 3 * q
    with pytest.raises(ZeroDivisionError):
        K / C
    assert str(M.K(-1) * C * 3) == "(3)*K^-1*C1"


def test_module_element_json_is_sorted(M):
    m = B(M, 1, 0, 0, M.K()) + B(M, 0, 1, -1)
    data = m.to_json()
    assert [(e["j"], e["k"], e["l"]) for e in data] == sorted((e["j"], e["k"], e["l"]) for e in data)


@settings(max_examples=60)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(-3, 3),
       st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=4),
       st.booleans())
def test_reduction_vanishes_iff_coefficient_in_ideal(j, k, l, terms, force):
    M = shared()
    kappa, c = q ** 2, (q + 1) / alpha
    Q = M.poly({key: SYMBOLIC.coerce(v) for key, v in terms.items()})
    if force:
        # push Q into J(kappa, c)
        Q = Q - M.const(Q.evaluate(kappa, c))
    m = B(M, j, k, l, Q)
    vanishes = M.reduce_mod(m, Maximal(kappa, c)).is_zero()
    assert vanishes == (Q.evaluate(kappa, c) == 0)
