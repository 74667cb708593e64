from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uqwhittaker.module import Maximal, WhittakerModule
from uqwhittaker.panel import reference_panel
from uqwhittaker.scalars import SYMBOLIC, EvalPoint, NumericField, evaluate
from uqwhittaker import structure as S

q = SYMBOLIC.q
alpha = SYMBOLIC.alpha
d2 = (q - 1 / q) ** 2
one = SYMBOLIC.one

NONCRIT = (one, SYMBOLIC.zero)
TWO_ROOT = (one, (q + 1 / q) / d2)
ONE_ROOT = (SYMBOLIC.coerce(2), (2 * q + 1 / (2 * q)) / d2)

PANEL = reference_panel()


def test_h_value_matches_h_poly(M):
    for n in range(1, 5):
        for kappa, c in (TWO_ROOT, ONE_ROOT, (alpha, q)):
            assert S.h_value(n, kappa, c) == M.h_poly(n).evaluate(kappa, c)


# ------------------------------------------------------------ criticality


def test_criticality_two_roots():
    rep = S.criticality(*TWO_ROOT)
    assert rep.roots == [1, 2] and rep.n_minus == 1 and rep.n_plus == 2
    assert rep.complete and rep.is_critical
    assert rep.kappa_eps["-"] == q ** -3
    assert rep.c_eps["-"] == (q ** 2 + q ** -2) / d2
    assert rep.kappa_eps["+"] == q ** -6


def test_criticality_noncritical_and_single_root():
    rep = S.criticality(*NONCRIT)
    assert not rep.is_critical and rep.n_minus is None and rep.complete
    rep = S.criticality(*ONE_ROOT)
    assert rep.roots == [1] and rep.n_minus == rep.n_plus == 1


def test_criticality_flags_incomplete_scan():
    kappa, c = q, (q ** 2 + q ** -2) / d2
    rep = S.criticality(kappa, c, n_max=2)
    assert rep.roots == [1]
    assert not rep.complete and rep.certified_bound >= 3
    assert S.criticality(kappa, c).roots == [1, 3]


def test_criticality_rejects_bad_input():
    with pytest.raises(ValueError):
        S.criticality(0, 1)
    with pytest.raises(ValueError):
        S.criticality(1, 0, n_max=0)


@pytest.mark.parametrize("p", PANEL, ids=lambda p: p.name)
def test_panel_roots(p):
    rep = S.criticality(p.kappa, p.c)
    assert tuple(rep.roots) == p.roots and rep.complete


@settings(max_examples=40)
@given(st.integers(1, 6), st.integers(-4, 4))
def test_constructed_roots_are_found(n, e):
    # choosing c to kill h_n makes n a root; a second root m needs kappa = q^(n+m-3)
    kappa = q ** e
    c = (q ** (3 - 2 * n) * kappa + q ** (2 * n - 3) / kappa) / d2
    rep = S.criticality(kappa, c, n_max=12)
    assert n in rep.roots
    m = e + 3 - n
    assert set(rep.roots) == ({n, m} if 1 <= m <= 12 else {n})


def test_criticality_json_keys():
    data = S.criticality(*TWO_ROOT).to_json()
    assert data["roots"] == [1, 2] and data["hat_enlarged"] == [1, 2]
    assert data["kappa_eps"] == {"+": "1/q^6", "-": "1/q^3"}


# ---------------------------------------------------------------- solver


@pytest.mark.parametrize("pair, dim", [(NONCRIT, 1), (TWO_ROOT, 3), (ONE_ROOT, 2)])
def test_solver_sizes_at_window_three(pair, dim):
    rep = S.whittaker_vector_report(*pair, l=0, N=3)
    assert rep.dimension == dim
    assert rep.certified and rep.spans


@pytest.mark.parametrize("pair, dim", [(NONCRIT, 1), (TWO_ROOT, 3)])
def test_symbolic_and_specialized_solvers_agree(pair, dim):
    exact = S.whittaker_vector_report(*pair, l=0, N=3, point=None)
    special = S.whittaker_vector_report(*pair, l=0, N=3)
    assert exact.dimension == special.dimension == dim
    assert exact.point is None and special.point is not None


@pytest.mark.parametrize("l", [-1, 1])
def test_solver_other_l(l):
    rep = S.whittaker_vector_report(*TWO_ROOT, l=l, N=3)
    assert rep.dimension == 3 and rep.certified


def test_solutions_are_whittaker(M):
    kappa, c = TWO_ROOT
    sol = S.solve_whittaker_vectors(kappa, c, 0, 3, M)
    assert sol.dimension == 3
    assert all(S.is_whittaker(M, w, 0, kappa, c) for w in sol.basis)


def test_eval_point_avoids_collisions():
    kappa, c = alpha, (q * alpha + 1 / (q * alpha)) / d2
    p = S.choose_eval_point(kappa, c, [1])
    field = NumericField(p)
    rep = S.criticality(field.coerce(kappa), field.coerce(c), field=field)
    assert rep.roots == [1]
    p = S.choose_eval_point(*ONE_ROOT, [1])
    assert p.q0 != 2


def test_specialized_module_solver():
    f = NumericField(EvalPoint(Fraction(3), Fraction(5)))
    M = WhittakerModule(f)
    kappa, c = f.coerce(TWO_ROOT[0]), f.coerce(TWO_ROOT[1])
    assert S.solve_whittaker_vectors(kappa, c, 0, 3, M).dimension == 3


@pytest.mark.parametrize("p", PANEL, ids=lambda p: p.name)
def test_panel_dimensions(p):
    rep = S.whittaker_vector_report(p.kappa, p.c)
    assert rep.window == (max(p.roots) if p.roots else 0) + 1
    assert rep.dimension == p.expected_dimension and rep.certified


# ------------------------------------------------------------ membership


def _ubar(M, n):
    return M.reduce_mod(M.u_element(n, 0), Maximal(*TWO_ROOT))


def test_membership(M):
    kappa, c = TWO_ROOT
    assert S.submodule_membership(_ubar(M, 2), 1, kappa, c, 3, M)
    assert not S.submodule_membership(_ubar(M, 1), 2, kappa, c, 3, M)
    assert not S.submodule_membership(M.v(), 1, kappa, c, 3, M)


def test_membership_of_g_image(M):
    kappa, c = TWO_ROOT
    w = M.reduce_mod(M.apply_g(_ubar(M, 1)), Maximal(kappa, c))
    assert w == _ubar(M, 2)
    shifted = M.reduce_mod(M.act_generator("F2", _ubar(M, 2)), Maximal(kappa, c))
    assert S.submodule_membership(shifted, 1, kappa, c, 3, M)


def test_membership_inconclusive(M):
    kappa, c = TWO_ROOT
    w = M.reduce_mod(M.u_element(2, 0), Maximal(kappa, c))
    for _ in range(3):
        w = M.act_generator("F2", w)
    with pytest.raises(S.InconclusiveMembership):
        S.submodule_membership(w, 1, kappa, c, 2, M)


# ------------------------------------------------------------ composition


def test_composition_types(M):
    assert S.composition_report(*NONCRIT, M).kind == "irreducible"
    rep = S.composition_report(*TWO_ROOT, M)
    assert rep.kind == "two_step" and rep.chain() == "0 < W+ < W- < V"
    plus, minus = rep.layers
    assert (plus.eps, plus.n, plus.sub_roots) == ("+", 2, [])
    assert (minus.eps, minus.n, minus.sub_roots) == ("-", 1, [1])
    assert minus.kappa_eps == q ** -3 and minus.c_eps == (q ** 2 + q ** -2) / d2
    one_root = S.composition_report(*ONE_ROOT, M)
    assert one_root.kind == "unique_proper" and len(one_root.layers) == 1


@pytest.mark.parametrize("p", PANEL, ids=lambda p: p.name)
def test_panel_composition(M, p):
    assert S.composition_report(p.kappa, p.c, M).kind == p.kind


# ----------------------------------------------------------------- center


@pytest.fixture(scope="module")
def center(A):
    return S.center_elements(A)


@pytest.mark.parametrize("g", ["E1", "E2", "F1", "F2", "K1", "K1i", "K2", "K2i"])
def test_centrality(A, center, g):
    for Z in center[2:]:
        assert A.commutator(Z, A.gen(g)).is_zero()


@pytest.mark.parametrize("p", PANEL, ids=lambda p: p.name)
def test_central_characters(M, center, p):
    chk = S.casimir_eigen_check(p.kappa, p.c, M, center=center)
    assert all(chk.z_ok) and chk.sextic_ok and chk.ok


def test_central_character_on_u_bar(M, center):
    kappa, c = TWO_ROOT
    crit = S.criticality(kappa, c)
    ub = _ubar(M, 1)
    chk = S.casimir_eigen_check(kappa, c, M, vector=ub, eig=(crit.kappa_eps["-"], crit.c_eps["-"]),
                                center=center)
    assert chk.ok
    # the center acts on all of V by one character, so both pairs give the same values
    assert chk.z_values == S.casimir_eigen_check(kappa, c, M, center=center).z_values
    wrong = S.casimir_eigen_check(kappa, c, M, vector=ub, eig=(SYMBOLIC.coerce(3), one), center=center)
    assert not all(wrong.z_ok)


def test_sextic_at_one_zero():
    assert S.sextic_residual(one, SYMBOLIC.zero) == 0


@settings(max_examples=20)
@given(st.integers(-5, 5), st.integers(-3, 3), st.integers(1, 4))
def test_sextic_vanishes_identically(e, a, b):
    kappa = q ** e * (alpha + a)
    c = (q + b) / (alpha + 1)
    assert S.sextic_residual(kappa, c) == 0
    assert S.derived_sextic_coeff2(kappa, c) == (
        q ** 3 * kappa * S.central_values(kappa, c)[0] ** 3 + 3
        - 3 * S.central_values(kappa, c)[0] * S.central_values(kappa, c)[1]) * q ** 6


def test_wrong_sextic_coefficient_is_reported():
    assert S.sextic_residual(one, SYMBOLIC.zero, coeff2=SYMBOLIC.coerce(2)) != 0


def test_eigen_check_rejects_zero_kappa(M):
    with pytest.raises(ValueError):
        S.casimir_eigen_check(0, 1, M)
    with pytest.raises(ValueError):
        S.submodule_membership(M.v(), 1, 0, 1, 2, M)


def test_numeric_field_center(Mnum):
    f = Mnum.field
    kappa = f.coerce(TWO_ROOT[0])
    c = f.coerce(TWO_ROOT[1])
    assert S.casimir_eigen_check(kappa, c, Mnum).ok
    assert evaluate(TWO_ROOT[1], f.point) == c
