"""Identity suites run by ``uqw verify``.

Every suite returns a :class:`SuiteResult` made of named boolean checks.
Details are strings built from exact data only, so repeated runs produce
identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .linalg import combination_of
from .module import Maximal, ModuleElement, WhittakerModule, degree_key
from .panel import e2_panel, reference_panel
from .pbw import CHEVALLEY, GENERATORS, normal_form_words
from . import structure as st

__all__ = ["Check", "SuiteResult", "Context", "SUITES", "run_suite", "run_all", "random_word",
           "random_algebra_element", "random_module_element"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self):
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"suite": self.name, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}


@dataclass
class Context:
    """Shared state for a verify run: the module (and field) and size limits."""

    module: WhittakerModule
    nmax: int | None = None
    seed: int = 20240611
    scan: int = st.DEFAULT_NMAX

    @property
    def alg(self):
        return self.module.algebra

    @property
    def field(self):
        return self.module.field

    def cap(self, default):
        return default if self.nmax is None else min(default, self.nmax)

    def coerce(self, x):
        return self.field.coerce(x)


# --------------------------------------------------------------------------
# random inputs


def random_word(rng, max_len, letters=GENERATORS):
    return tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len)))


def random_algebra_element(alg, rng, max_degree=4, terms=2):
    acc = alg.element()
    for _ in range(terms):
        w = random_word(rng, max_degree, CHEVALLEY + ("E3", "F3"))
        acc = acc + alg.field.coerce(rng.randint(-3, 3) or 1) * alg.word(w)
    return acc


def random_module_element(module, rng, support=5, poly_degree=2):
    f = module.field
    acc = module.zero()
    for _ in range(rng.randint(1, support)):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            terms[(rng.randint(-poly_degree, poly_degree), rng.randint(0, poly_degree))] = \
                f.coerce(rng.randint(1, 4)) * f.qpow(rng.randint(-1, 1))
        Q = module.poly(terms)
        acc = acc + ModuleElement.basis(f, rng.randint(0, 2), rng.randint(0, 2), rng.randint(-2, 2), Q)
    return acc


# --------------------------------------------------------------------------
# pbw


# written out independently of the rewriting tables
_A = {(1, 1): 2, (1, 2): -1, (2, 1): -1, (2, 2): 2}


def defining_relations(alg):
    """(name, element) pairs that must normal-order to zero."""
    q = alg.q
    d = q - 1 / q
    g = alg.gen
    out = []
    for i in (1, 2):
        for j in (1, 2):
            lhs = alg.commutator(g(f"E{i}"), g(f"F{j}"))
            rhs = (g(f"K{i}") - g(f"K{i}i")) * (1 / d) if i == j else alg.element()
            out.append((f"[E{i},F{j}]", lhs - rhs))
            a = _A[i, j]
            for s, ki in ((1, f"K{i}"), (-1, f"K{i}i")):
                out.append((f"{ki} E{j}", g(ki) * g(f"E{j}") - q ** (s * a) * (g(f"E{j}") * g(ki))))
                out.append((f"{ki} F{j}", g(ki) * g(f"F{j}") - q ** (-s * a) * (g(f"F{j}") * g(ki))))
    out.append(("K1 K2", g("K1") * g("K2") - g("K2") * g("K1")))
    out.append(("K1 K1^-1", g("K1") * g("K1i") - 1))
    out.append(("K2 K2^-1", g("K2") * g("K2i") - 1))
    two = q + 1 / q
    for x in ("E", "F"):
        for i, j in ((1, 2), (2, 1)):
            a, b = g(f"{x}{i}"), g(f"{x}{j}")
            out.append((f"serre {x}{i}{x}{j}", a * a * b - two * (a * b * a) + b * a * a))
    return out


def root_identities(alg):
    """Commutation identities for the E3/F3 root vectors."""
    q = alg.q
    g = alg.gen
    E1, E2, E3, F1, F2, F3 = (g(n) for n in ("E1", "E2", "E3", "F1", "F2", "F3"))
    out = []
    for i in (1, 2):
        K = g(f"K{i}")
        out.append((f"K{i} E3", K * E3 - q * (E3 * K)))
        out.append((f"K{i} F3", K * F3 - (1 / q) * (F3 * K)))
    out += [
        ("F1 F3", F1 * F3 - (1 / q) * (F3 * F1)),
        ("F2 F3", F2 * F3 - q * (F3 * F2)),
        ("[E1,F3]", alg.commutator(E1, F3) - F2 * g("K1i")),
        ("[E2,F3]", alg.commutator(E2, F3) + g("K2") * F1),
        ("E1 E3", E1 * E3 - q * (E3 * E1)),
        ("E2 E3", E2 * E3 - (1 / q) * (E3 * E2)),
        ("[F1,E3]", alg.commutator(F1, E3) - E2 * g("K1i")),
        ("[F2,E3]", alg.commutator(F2, E3) + g("K2") * E1),
    ]
    return out


def suite_pbw(ctx):
    res = SuiteResult("pbw")
    alg = ctx.alg
    q = alg.q
    for name, el in defining_relations(alg):
        res.add(f"relation {name}", el.is_zero())
    for name, el in root_identities(alg):
        res.add(f"identity {name}", el.is_zero())
    g = alg.gen
    res.add("E3 definition", g("E3") == g("E1") * g("E2") - (1 / q) * (g("E2") * g("E1")))
    res.add("F3 definition", g("F3") == g("F1") * g("F2") - q * (g("F2") * g("F1")))
    # E3 F3 rule agrees with the Chevalley expansion
    ex = (g("E1") * g("E2") - (1 / q) * (g("E2") * g("E1"))) * (g("F1") * g("F2") - q * (g("F2") * g("F1")))
    res.add("E3 F3 rule", alg.word(("E3", "F3")) == ex)
    rng = random.Random(ctx.seed)
    n_words = 200
    agree = 0
    for _ in range(n_words):
        w = random_word(rng, 6)
        a = normal_form_words(alg, w, "leftmost")
        b = normal_form_words(alg, w, "rightmost")
        if a == b == alg.word(w):
            agree += 1
    res.add("confluence", agree == n_words, f"{agree}/{n_words} words")
    ok = 0
    n_triples = 50
    for _ in range(n_triples):
        a, b, c = (random_algebra_element(alg, rng, 2, 2) for _ in range(3))
        if (a * b) * c == a * (b * c):
            ok += 1
    res.add("associativity", ok == n_triples, f"{ok}/{n_triples} triples")
    return res


# --------------------------------------------------------------------------
# actions


def compute_identities(alg, j, k):
    """The three straightening identities for F2^j F3^k (zero when they hold)."""
    q = alg.q
    g = alg.gen
    fq = alg.field
    F2, F3 = g("F2"), g("F3")
    F2j = F2 ** j
    mono = F2j * F3 ** k
    i1 = g("F1") * F2j
    rhs1 = q ** j * (F2j * g("F1"))
    if j:
        rhs1 = rhs1 + fq.qint(j) * (F2 ** (j - 1) * F3)
    i2 = alg.commutator(g("E1"), mono)
    rhs2 = alg.element()
    if k:
        rhs2 = fq.qint(k) * (F2 ** (j + 1) * F3 ** (k - 1) * g("K1i"))
    i3 = alg.commutator(g("E2"), mono)
    rhs3 = alg.element()
    if j:
        a = 1 - j - k
        bracket = (q ** a * g("K2") - q ** (-a) * g("K2i")) * (1 / (q - 1 / q))
        rhs3 = fq.qint(j) * (F2 ** (j - 1) * F3 ** k * bracket)
    if k:
        rhs3 = rhs3 - q ** (1 - k) * fq.qint(k) * (F2j * F3 ** (k - 1) * g("K2") * g("F1"))
    return i1 - rhs1, i2 - rhs2, i3 - rhs3


def _below(idx_a, idx_b):
    return degree_key(idx_a) < degree_key(idx_b)


def suite_actions(ctx):
    res = SuiteResult("actions")
    M, alg = ctx.module, ctx.alg
    f = ctx.field
    top = ctx.cap(4)
    bad = []
    for j in range(top + 1):
        for k in range(top + 1):
            for i, el in enumerate(compute_identities(alg, j, k), 1):
                if not el.is_zero():
                    bad.append(f"({i}) j={j} k={k}")
    res.add("straightening identities", not bad, "; ".join(bad) or f"j,k <= {top}")
    v = M.v()
    res.add("E1 v = alpha v", M.act_generator("E1", v) == v.scale(M.alpha))
    res.add("E2 v = 0", M.act_generator("E2", v).is_zero())
    res.add("E3 v = 0", M.act_generator("E3", v).is_zero())
    f3v = M.act_generator("F3", v)
    expect = ModuleElement.basis(f, 1, 0, 2, M.K(-1)) + f3v.scale(M.alpha)
    res.add("E1 F3 v", M.act_generator("E1", f3v) == expect)
    f1v = M.act_generator("F1", v)
    oracle = M.act_algebra(alg.casimir1() - (alg.q / (alg.q - 1 / alg.q) ** 2) * alg.gen("K1")
                           - (1 / (alg.q * (alg.q - 1 / alg.q) ** 2)) * alg.gen("K1i"), v).scale(1 / M.alpha)
    res.add("F1 v via C1", f1v == oracle)
    comm = M.act_algebra(alg.commutator(alg.gen("E1"), alg.gen("F1")), v)
    res.add("[E1,F1] v", comm == M.act_algebra((alg.gen("K1") - alg.gen("K1i")) * (1 / (alg.q - 1 / alg.q)), v))
    rng = random.Random(ctx.seed + 1)
    n = 50
    ok = 0
    for _ in range(n):
        w = random_word(rng, 4)
        m = random_module_element(M, rng)
        if M.act_algebra(alg.word(w), m) == M.act_word(w, m):
            ok += 1
    res.add("two-path consistency", ok == n, f"{ok}/{n} random words")
    ok = 0
    for _ in range(n):
        m = random_module_element(M, rng)
        if M.act_algebra(alg.word(("F1", "F2")), m) == \
                M.act_word(("F3",), m) + M.act_word(("F2", "F1"), m).scale(alg.q):
            ok += 1
    res.add("F1 F2 = F3 + q F2 F1 on M", ok == n, f"{ok}/{n}")
    # filtration: degree drops under E1 - q^l alpha and E2; F-degree behaviour
    ok = 0
    for _ in range(n):
        j, k, l = rng.randint(0, 4), rng.randint(0, 4), rng.randint(-3, 3)
        Q = M.poly({(rng.randint(-2, 2), rng.randint(0, 2)): 1})
        m = ModuleElement.basis(f, j, k, l, Q)
        e1 = M.act_generator("E1", m) - m.scale(M.alpha * f.qpow(l))
        e2 = M.act_generator("E2", m)
        good = all(_below(i, (j, k, l)) for i in e1.support() | e2.support())
        good = good and all(a + b == j + k for a, b, _ in e1.support())
        good = good and all(a + b == j + k - 1 for a, b, _ in e2.support())
        ok += good
    res.add("filtration", ok == n, f"{ok}/{n} basis monomials")
    return res


# --------------------------------------------------------------------------
# u family


_QS = ("1", "K", "C1", "K^-1 C1")


def _q_polys(M):
    return {"1": M.const(), "K": M.K(), "C1": M.C1(), "K^-1 C1": M.K(-1) * M.C1()}


def suite_u_family(ctx):
    res = SuiteResult("u-family")
    M = ctx.module
    f = ctx.field
    top = ctx.cap(4)
    polys = _q_polys(M)
    bad = []
    for n in range(top + 1):
        for l in range(-2, 3):
            for name in _QS:
                u = M.u_element(n, l, polys[name])
                if not (M.act_generator("E1", u) - u.scale(M.alpha * f.qpow(l))).is_zero():
                    bad.append(f"n={n} l={l} Q={name}")
    res.add("(E1 - alpha q^l) u = 0", not bad, "; ".join(bad) or f"n <= {top}")
    res.add("E2 u(0,l,Q) = 0", all(M.act_generator("E2", M.u_element(0, l, polys[nm])).is_zero()
                                    for l in range(-2, 3) for nm in _QS))
    exact_bad, cong_bad, cong_exact, cong_only = [], [], [], []
    panel = [(ctx.coerce(k), ctx.coerce(c)) for k, c in e2_panel()]
    for n in range(1, top + 1):
        for l in (-1, 0, 1):
            for name in ("1", "C1"):
                Q = polys[name]
                img = M.act_generator("E2", M.u_element(n, l, Q))
                diff = img - M.e2_rhs(n, l, Q)
                if not diff.is_zero():
                    exact_bad.append(f"n={n} l={l} Q={name}")
                for kappa, c in panel:
                    if not M.reduce_mod(diff, Maximal(kappa, c)).is_zero():
                        cong_bad.append(f"n={n} l={l} Q={name}")
                ddiff = img - M.e2_rhs(n, l, Q, variant="congruent")
                cong_exact.append(ddiff.is_zero())
                # the congruent variant agrees exactly where h_n Q vanishes
                hQ = M.h_poly(n) * Q
                for kappa, c in panel:
                    vanishes = hQ.evaluate(kappa, c) == 0
                    red = M.reduce_mod(ddiff, Maximal(kappa, c)).is_zero()
                    cong_only.append(red == (vanishes or n == 1))
    res.add("E2 closed form mod J(kappa,c)", not cong_bad, "; ".join(cong_bad) or f"{len(panel)} panel points, n <= {top}")
    res.add("E2 closed form exact in M", not exact_bad, "; ".join(exact_bad) or "identically zero")
    res.add("congruent E2 variant agrees only at n = 1 or h_n Q in J", all(cong_only),
            "exact in M: " + ("always" if all(cong_exact) else "only for n = 1"))
    return res


def suite_f1_c1(ctx):
    res = SuiteResult("f1-c1")
    M = ctx.module
    top = ctx.cap(3)
    polys = _q_polys(M)
    bad_f, bad_c = [], []
    for n in range(top + 1):
        for l in (-2, 0, 1):
            for name in ("1", "K", "C1"):
                Q = polys[name]
                u = M.u_element(n, l, Q)
                if M.act_generator("F1", u) != M.f1_rhs(n, l, Q):
                    bad_f.append(f"n={n} l={l} Q={name}")
                if M.apply_C1(u) != M.c1_rhs(n, l, Q):
                    bad_c.append(f"n={n} l={l} Q={name}")
    res.add("F1 u closed form", not bad_f, "; ".join(bad_f) or f"n <= {top}")
    res.add("C1 u closed form", not bad_c, "; ".join(bad_c) or f"n <= {top}")
    res.add("F1 closed form at n = 0", all(
        M.f1_rhs(0, l, polys["K"]) == M.act_generator("F1", ModuleElement.basis(M.field, 0, 0, l, polys["K"]))
        for l in range(-2, 3)))
    return res


# --------------------------------------------------------------------------
# g powers


def _symbolic_panel(ctx):
    """Panel points usable in the context's field (roots recomputed there)."""
    out = []
    for p in reference_panel():
        try:
            kappa, c = ctx.coerce(p.kappa), ctx.coerce(p.c)
        except ZeroDivisionError:
            continue
        if kappa == 0:
            continue
        out.append((p, kappa, c))
    return out


def suite_g_power(ctx):
    res = SuiteResult("g-power")
    M = ctx.module
    top = ctx.cap(5)
    polys = _q_polys(M)
    bad = [f"n={n} Q={nm}" for n in range(top + 1) for nm in ("1", "K", "C1")
           if M.g_power(n, polys[nm]) != M.u_element(n, 0, polys[nm])]
    res.add("g^n Q v = u(n,0,Q)", not bad, "; ".join(bad) or f"n <= {top}")
    res.add("g as algebra element", M.act_algebra(M.algebra.g_operator(), M.v()) == M.u_element(1, 0))
    for p, kappa, c in _symbolic_panel(ctx):
        crit = st.criticality(kappa, c, ctx.scan, ctx.field)
        if len(crit.roots) != 2:
            continue
        J = Maximal(kappa, c)
        um = M.reduce_mod(M.u_element(crit.n_minus, 0), J)
        up = M.reduce_mod(M.u_element(crit.n_plus, 0), J)
        t = um
        for _ in range(crit.n_plus - crit.n_minus):
            t = M.reduce_mod(M.apply_g(t), J)
        res.add(f"ladder {p.name}", t == up, f"g^{crit.n_plus - crit.n_minus} u-bar({crit.n_minus})")
    return res


# --------------------------------------------------------------------------
# solver and structure


def suite_solver(ctx):
    res = SuiteResult("solver")
    M = ctx.module
    f = ctx.field
    for p, kappa, c in _symbolic_panel(ctx):
        crit = st.criticality(kappa, c, ctx.scan, f)
        if f.symbolic:
            res.add(f"roots {p.name}", tuple(crit.roots) == p.roots and crit.complete,
                    f"roots {crit.roots}")
        N = (crit.n_plus or 0) + 1
        if f.symbolic:
            rep = st.whittaker_vector_report(kappa, c, 0, N, n_max=ctx.scan)
            dim, ok = rep.dimension, rep.certified and rep.spans
        else:
            sol = st.solve_whittaker_vectors(kappa, c, 0, N, M)
            cands = st.candidate_vectors(kappa, c, 0, crit.roots, M, N)
            vecs = [w.terms for _, _, w in cands]
            ok = all(combination_of(vecs, b.terms) is not None for b in sol.basis) and \
                all(st.is_whittaker(M, w, 0, kappa, c) for w in (x for _, _, x in cands))
            dim = sol.dimension
        res.add(f"dimension {p.name}", dim == 1 + len(crit.roots), f"{dim} at window {N}")
        res.add(f"decomposition {p.name}", ok)
        J = Maximal(kappa, c)
        for eps in sorted(crit.kappa_eps):
            n = crit.n_minus if eps == "-" else crit.n_plus
            u = M.u_element(n, 0)
            ub = M.reduce_mod(u, J)
            k_ok = M.reduce_mod(M.apply_K(u), J) == ub.scale(crit.kappa_eps[eps])
            c_ok = M.reduce_mod(M.apply_C1(u), J) == ub.scale(crit.c_eps[eps])
            res.add(f"eigenvalues {p.name} {eps}", k_ok and c_ok)
        if crit.roots:
            eps_used = ["+"] if crit.n_plus == crit.n_minus else ["+", "-"]
            pairs = [(kappa, c)] + [(crit.kappa_eps[e], crit.c_eps[e]) for e in eps_used]
            distinct = all(a != b for i, a in enumerate(pairs) for b in pairs[i + 1:])
            res.add(f"distinct parameters {p.name}", distinct)
        comp = st.composition_report(kappa, c, M, ctx.scan)
        if f.symbolic:
            res.add(f"composition {p.name}", comp.kind == p.kind, comp.kind)
        expect_kind = {0: "irreducible", 1: "unique_proper", 2: "two_step"}[len(crit.roots)]
        res.add(f"composition type {p.name}", comp.kind == expect_kind, comp.kind)
        if len(crit.roots) == 2:
            nm, npl = crit.n_minus, crit.n_plus
            up, um = M.reduce_mod(M.u_element(npl, 0), J), M.reduce_mod(M.u_element(nm, 0), J)
            bound = npl + 1
            res.add(f"u+ in W- {p.name}", st.submodule_membership(up, nm, kappa, c, bound, M))
            res.add(f"u- not in W+ {p.name}", not st.submodule_membership(um, npl, kappa, c, bound, M))
            res.add(f"v not in W- {p.name}", not st.submodule_membership(M.v(), nm, kappa, c, bound, M))
            minus = [L for L in comp.layers if L.eps == "-"][0]
            res.add(f"W- quotient roots {p.name}", minus.sub_roots == [npl - nm], f"{minus.sub_roots}")
    return res


def suite_center(ctx):
    res = SuiteResult("center")
    M, alg = ctx.module, ctx.alg
    center = st.center_elements(alg)
    _, _, Z1, Z2, Z3 = center
    bad = []
    for i, Z in enumerate((Z1, Z2, Z3), 1):
        for g in CHEVALLEY:
            if not alg.commutator(Z, alg.gen(g)).is_zero():
                bad.append(f"Z{i},{g}")
    res.add("centrality (24 commutators)", not bad, "; ".join(bad) or "all zero")
    for p, kappa, c in _symbolic_panel(ctx):
        chk = st.casimir_eigen_check(kappa, c, M, center=center)
        detail = "" if chk.sextic_ok else f"re-derived t^2 coefficient {ctx.field.render(chk.derived_coeff2)}"
        res.add(f"central character {p.name}", all(chk.z_ok))
        res.add(f"sextic {p.name}", chk.sextic_ok, detail)
        crit = st.criticality(kappa, c, ctx.scan, ctx.field)
        J = Maximal(kappa, c)
        for eps in sorted(crit.kappa_eps):
            n = crit.n_minus if eps == "-" else crit.n_plus
            ub = M.reduce_mod(M.u_element(n, 0), J)
            chk = st.casimir_eigen_check(kappa, c, M, vector=ub,
                                         eig=(crit.kappa_eps[eps], crit.c_eps[eps]), center=center)
            res.add(f"central character u-bar {p.name} {eps}", all(chk.z_ok) and chk.sextic_ok)
    return res


SUITES = {
    "pbw": suite_pbw,
    "actions": suite_actions,
    "u-family": suite_u_family,
    "f1-c1": suite_f1_c1,
    "g-power": suite_g_power,
    "solver": suite_solver,
    "center": suite_center,
}


def run_suite(name, ctx=None):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    ctx = ctx or Context(WhittakerModule())
    return SUITES[name](ctx)


def run_all(ctx=None, names=None):
    ctx = ctx or Context(WhittakerModule())
    return [run_suite(n, ctx) for n in (names or list(SUITES))]
