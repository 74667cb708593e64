"""Criticality, Whittaker vectors, composition series and central characters
for the quotients V(eta; kappa, c) of the universal Whittaker module.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any

from .linalg import combination_of, nullspace
from .module import Maximal, ModuleElement, WhittakerModule, degree_key
from .scalars import SYMBOLIC, EvalPoint, NumericField, ScalarZeroDivision, root_scan_bound

__all__ = [
    "CriticalityReport",
    "VectorSolution",
    "VectorReport",
    "Layer",
    "CompositionReport",
    "EigenCheck",
    "InconclusiveMembership",
    "h_value",
    "criticality",
    "eps_parameters",
    "solve_whittaker_vectors",
    "candidate_vectors",
    "whittaker_vector_report",
    "submodule_membership",
    "composition_report",
    "center_elements",
    "casimir_eigen_check",
    "sextic_residual",
    "choose_eval_point",
]

DEFAULT_NMAX = 50


def _coerce(field, x):
    if isinstance(x, type(field.one)):
        return x
    return field.coerce(x)


def _check_kappa(kappa):
    if kappa == 0:
        raise ValueError("kappa must be nonzero")


def h_value(n, kappa, c, field=SYMBOLIC):
    """h_n(kappa, c) = q^{3-2n} kappa + q^{2n-3}/kappa - (q - q^-1)^2 c."""
    q = field.q
    return field.qpow(3 - 2 * n) * kappa + field.qpow(2 * n - 3) / kappa - (q - 1 / q) ** 2 * c


def eps_parameters(n, kappa, c, field=SYMBOLIC):
    """(kappa_eps, c_eps) for a root n of h_n(kappa, c)."""
    q = field.q
    k_eps = field.qpow(-3 * n) * kappa
    c_eps = (field.qpow(n - 3) / kappa + field.qpow(3 - n) * kappa) / (q - 1 / q) ** 2
    return k_eps, c_eps


# --------------------------------------------------------------------------
# criticality


@dataclass
class CriticalityReport:
    kappa: Any
    c: Any
    roots: list
    scan_bound: int
    certified_bound: int
    kappa_eps: dict
    c_eps: dict
    field: Any = SYMBOLIC

    @property
    def is_critical(self):
        return bool(self.roots)

    @property
    def n_minus(self):
        return self.roots[0] if self.roots else None

    @property
    def n_plus(self):
        return self.roots[-1] if self.roots else None

    @property
    def hat_enlarged(self):
        # for a maximal ideal J, J_n-hat is the full ring exactly when h_n lies in J
        return list(self.roots)

    @property
    def complete(self):
        """True when the scan provably covers every possible root."""
        return self.certified_bound <= self.scan_bound

    def to_json(self):
        r = self.field.render
        return {
            "kappa": r(self.kappa),
            "c": r(self.c),
            "critical": self.is_critical,
            "roots": list(self.roots),
            "n_minus": self.n_minus,
            "n_plus": self.n_plus,
            "kappa_eps": {e: r(v) for e, v in sorted(self.kappa_eps.items())},
            "c_eps": {e: r(v) for e, v in sorted(self.c_eps.items())},
            "hat_enlarged": self.hat_enlarged,
            "scan_bound": self.scan_bound,
            "complete": self.complete,
        }


def criticality(kappa, c, n_max=DEFAULT_NMAX, field=SYMBOLIC):
    """Exact scan of h_n(kappa, c) = 0 over 1 <= n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    kappa = _coerce(field, kappa)
    c = _coerce(field, c)
    _check_kappa(kappa)
    roots = [n for n in range(1, n_max + 1) if h_value(n, kappa, c, field) == 0]
    q = field.q
    cert = root_scan_bound(kappa, (q - 1 / q) ** 2 * c, field)
    k_eps, c_eps = {}, {}
    if roots:
        for eps, n in (("-", roots[0]), ("+", roots[-1])):
            k_eps[eps], c_eps[eps] = eps_parameters(n, kappa, c, field)
    return CriticalityReport(kappa, c, roots, n_max, cert, k_eps, c_eps, field)


# --------------------------------------------------------------------------
# Whittaker vectors


def _images(module, ideal, idx, l, cache):
    hit = cache.get(idx)
    if hit is None:
        b = ModuleElement.basis(module.field, *idx)
        e1 = module.reduce_mod(module.act_generator("E1", b), ideal)
        e1 = e1 - module.reduce_mod(b, ideal).scale(module.alpha * module.field.qpow(l))
        e2 = module.reduce_mod(module.act_generator("E2", b), ideal)
        hit = (e1.terms, e2.terms)
        cache[idx] = hit
    return hit


@dataclass
class VectorSolution:
    """Basis of the Whittaker vectors of type (alpha q^l, 0) in a window."""

    l: int
    window: int
    basis: list
    unknowns: int
    equations: int

    @property
    def dimension(self):
        return len(self.basis)


def window_indices(l, N):
    return [(j, s - j, ll) for s in range(N + 1) for j in range(s + 1)
            for ll in range(l, l + 2 * N + 1)]


def solve_whittaker_vectors(kappa, c, l, N, module=None):
    """Nullspace of (E1 - alpha q^l, E2) on the window j+k <= N, l <= l' <= l+2N.

    Equations are taken on every output coordinate; only the windowed
    coordinates are unknowns.  Arithmetic happens in ``module.field``.
    """
    module = module or WhittakerModule()
    f = module.field
    if N < 1:
        raise ValueError("window N must be positive")
    kappa = _coerce(f, kappa)
    c = _coerce(f, c)
    _check_kappa(kappa)
    ideal = Maximal(kappa, c)
    cols = window_indices(l, N)
    rows = {}
    cache = {}
    for idx in cols:
        e1, e2 = _images(module, ideal, idx, l, cache)
        for tag, img in (("E1", e1), ("E2", e2)):
            for out, v in img.items():
                rows.setdefault((tag, out), {})[idx] = v
    ordered = [rows[k] for k in sorted(rows)]
    basis = []
    for x in nullspace(ordered, cols, f.one):
        basis.append(ModuleElement(f, {(j, k, ll, 0, 0): v for (j, k, ll), v in x.items()}))
    basis.sort(key=lambda m: degree_key(module.degree(m)))
    return VectorSolution(l, N, basis, len(cols), len(ordered))


def reduced_u(module, n, l, kappa, c):
    """Image of u(n, l, 1) in V(eta; kappa, c)."""
    return module.reduce_mod(module.u_element(n, l), Maximal(kappa, c))


def candidate_vectors(kappa, c, l, roots, module=None, N=None):
    """K2^l v-bar together with u-bar(n, l, 1) for every root n (n <= N)."""
    module = module or WhittakerModule()
    f = module.field
    kappa = _coerce(f, kappa)
    c = _coerce(f, c)
    out = [("v", 0, ModuleElement.basis(f, 0, 0, l))]
    for n in roots:
        if N is None or n <= N:
            out.append(("u", n, reduced_u(module, n, l, kappa, c)))
    return out


def is_whittaker(module, w, l, kappa, c):
    ideal = Maximal(kappa, c)
    e1 = module.reduce_mod(module.act_generator("E1", w), ideal) - w.scale(module.alpha * module.field.qpow(l))
    e2 = module.reduce_mod(module.act_generator("E2", w), ideal)
    return e1.is_zero() and e2.is_zero()


_POINTS = [(2, 1), (2, 3), (3, 2), (2, 5), (5, 3), (3, 7), (7, 2), (Fraction(3, 2), 2)]


def choose_eval_point(kappa, c, roots, n_max=DEFAULT_NMAX):
    """First evaluation point at which (kappa, c) has exactly the given roots.

    Specializing q and alpha can create extra roots (for instance kappa =
    alpha at alpha = 1), which would change the dimension count.
    """
    for q0, a0 in _POINTS:
        point = EvalPoint(Fraction(q0), Fraction(a0))
        f = NumericField(point)
        try:
            k0 = f.coerce(kappa)
            c0 = f.coerce(c)
        except (ScalarZeroDivision, ZeroDivisionError):
            continue
        if k0 == 0:
            continue
        rep = criticality(k0, c0, max(n_max, 1), f)
        if rep.roots == list(roots) and rep.complete:
            return point
    raise ValueError("no evaluation point preserves the critical roots")


@dataclass
class VectorReport:
    """Dimension count (specialized) cross-checked by symbolic candidates."""

    kappa: Any
    c: Any
    l: int
    window: int
    roots: list
    point: Any
    dimension: int
    candidate_count: int
    candidates_whittaker: bool
    decomposes: bool
    spans: bool
    solution: VectorSolution = dc_field(repr=False)
    candidates: list = dc_field(repr=False, default_factory=list)

    @property
    def certified(self):
        # specialization can only raise the nullity; symbolic candidates give a lower bound
        return self.candidates_whittaker and self.dimension == self.candidate_count and self.decomposes

    def to_json(self):
        return {
            "kappa": str(self.kappa),
            "c": str(self.c),
            "l": self.l,
            "window": self.window,
            "roots": list(self.roots),
            "eval_point": None if self.point is None else {"q": str(self.point.q0), "alpha": str(self.point.alpha0)},
            "dimension": self.dimension,
            "candidates": [f"{kind}({n})" if kind == "u" else "v" for kind, n, _ in self.candidates],
            "candidates_whittaker": self.candidates_whittaker,
            "decomposes": self.decomposes,
            "spans": self.spans,
            "certified": self.certified,
        }


def whittaker_vector_report(kappa, c, l=0, N=None, point="auto", n_max=DEFAULT_NMAX):
    """Solve for Whittaker vectors and match them against the closed forms.

    ``point="auto"`` solves at a root-preserving evaluation point; ``None``
    solves over Q(q, alpha) directly.  The closed-form candidates are always
    checked symbolically.
    """
    sym = WhittakerModule()
    kappa = SYMBOLIC.coerce(kappa)
    c = SYMBOLIC.coerce(c)
    crit = criticality(kappa, c, n_max)
    roots = crit.roots
    if N is None:
        N = (crit.n_plus or 0) + 1
    cands_sym = candidate_vectors(kappa, c, l, roots, sym, N)
    cand_ok = all(is_whittaker(sym, w, l, kappa, c) for _, _, w in cands_sym)
    if point == "auto":
        point = choose_eval_point(kappa, c, roots, n_max)
    module = sym if point is None else WhittakerModule(NumericField(point))
    sol = solve_whittaker_vectors(kappa, c, l, N, module)
    cands = candidate_vectors(kappa, c, l, roots, module, N)
    vecs = [w.terms for _, _, w in cands]
    decomposes = all(combination_of(vecs, b.terms) is not None for b in sol.basis)
    spans = all(combination_of([b.terms for b in sol.basis], w) is not None for w in vecs)
    return VectorReport(kappa, c, l, N, roots, point, sol.dimension, len(cands_sym), cand_ok,
                        decomposes, spans, sol, cands_sym)


# --------------------------------------------------------------------------
# submodule membership


class InconclusiveMembership(Exception):
    """The spanning set bound is too small to decide membership."""


def submodule_membership(w, n_eps, kappa, c, bound, module=None):
    """Is w in span{F2^a F3^b K2^e u-bar(n_eps, 0, 1)} with a+b <= bound, |e| <= bound?

    The spanning vectors have pairwise distinct leading indices (a, b+n_eps, e),
    so reducing w by leading terms decides membership exactly.
    """
    module = module or WhittakerModule()
    f = module.field
    kappa = _coerce(f, kappa)
    c = _coerce(f, c)
    _check_kappa(kappa)
    ideal = Maximal(kappa, c)
    base = reduced_u(module, n_eps, 0, kappa, c)
    cache = {}

    def spanning(a, b, e):
        key = (a, b, e)
        hit = cache.get(key)
        if hit is None:
            t = module.apply_K2(base, e)
            for _ in range(b):
                t = module.act_generator("F3", t)
            for _ in range(a):
                t = module.act_generator("F2", t)
            hit = module.reduce_mod(t, ideal)
            cache[key] = hit
        return hit

    rest = module.reduce_mod(w, ideal)
    while not rest.is_zero():
        j, k, l = module.degree(rest)
        if k < n_eps:
            return False
        a, b, e = j, k - n_eps, l
        if a + b > bound or abs(e) > bound:
            raise InconclusiveMembership(
                f"leading index {(j, k, l)} needs a spanning vector beyond bound {bound}")
        s = spanning(a, b, e)
        lead = (j, k, l, 0, 0)
        rest = rest - s.scale(rest.terms[lead] / s.terms[lead])
    return True


# --------------------------------------------------------------------------
# composition series


@dataclass
class Layer:
    eps: str
    n: int
    generator: ModuleElement
    kappa_eps: Any
    c_eps: Any
    sub_roots: list

    def to_json(self, render):
        return {
            "eps": self.eps,
            "n": self.n,
            "kappa_eps": render(self.kappa_eps),
            "c_eps": render(self.c_eps),
            "sub_roots": list(self.sub_roots),
            "generator": self.generator.to_json(),
        }


@dataclass
class CompositionReport:
    kind: str            # irreducible | unique_proper | two_step
    roots: list
    layers: list
    criticality: CriticalityReport

    def to_json(self):
        r = self.criticality.field.render
        return {
            "type": self.kind,
            "roots": list(self.roots),
            "layers": [layer.to_json(r) for layer in self.layers],
        }

    def chain(self):
        if self.kind == "irreducible":
            return "0 < V"
        if self.kind == "unique_proper":
            return "0 < W+ < V"
        return "0 < W+ < W- < V"


def composition_report(kappa, c, module=None, n_max=DEFAULT_NMAX):
    """Composition series type of V(eta; kappa, c) with per-layer data.

    Layers are listed innermost first (W+ then W-); each carries the
    parameters of the quotient it is isomorphic to and that pair's own roots.
    """
    module = module or WhittakerModule()
    f = module.field
    crit = criticality(kappa, c, n_max, f)
    kappa, c = crit.kappa, crit.c
    if not crit.roots:
        return CompositionReport("irreducible", [], [], crit)
    eps_list = [("+", crit.n_plus)]
    if crit.n_minus != crit.n_plus:
        eps_list.append(("-", crit.n_minus))
    layers = []
    for eps, n in eps_list:
        k_e, c_e = crit.kappa_eps[eps], crit.c_eps[eps]
        sub = criticality(k_e, c_e, n_max, f)
        layers.append(Layer(eps, n, reduced_u(module, n, 0, kappa, c), k_e, c_e, sub.roots))
    kind = "unique_proper" if len(layers) == 1 else "two_step"
    return CompositionReport(kind, list(crit.roots), layers, crit)


# --------------------------------------------------------------------------
# center


def center_elements(algebra=None):
    """(X1, X2, Z1, Z2, Z3) with Z1 = X1 X2, Z2 = X1^3 K, Z3 = X2^3 K^-1."""
    A = algebra or WhittakerModule().algebra
    q = A.q
    d = (q - 1 / q) ** 2
    g = A.gen
    K, Ki = g("K"), g("Ki")
    K1, K1i, K2, K2i = g("K1"), g("K1i"), g("K2"), g("K2i")
    E1, E2, E3, F1, F2, F3 = g("E1"), g("E2"), g("E3"), g("F1"), g("F2"), g("F3")
    tF3 = F2 * F1 - q * (F1 * F2)
    tE3 = E2 * E1 - (1 / q) * (E1 * E2)
    X1 = q ** -3 * Ki + q * K1 + (1 / q) * K1i + d * (
        F1 * E1 + q ** -2 * (F2 * E2 * K1i * K2i) - (1 / q) * (F3 * E3 * K2i))
    X2 = q ** 3 * K + q * K1 + (1 / q) * K1i + d * (
        F1 * E1 + q ** 2 * (F2 * E2 * K1 * K2) - q * (tF3 * tE3 * K2))
    Z1 = X1 * X2
    Z2 = X1 ** 3 * K
    Z3 = X2 ** 3 * Ki
    return X1, X2, Z1, Z2, Z3


def central_values(kappa, c, field=SYMBOLIC):
    """(A, B) with X1 -> A and X2 -> B on Whittaker vectors."""
    q = field.q
    s = (q - 1 / q) ** 2 * c
    return s + field.qpow(-3) / kappa, s + field.qpow(3) * kappa


def sextic_residual(kappa, c, field=SYMBOLIC, coeff2=None):
    """Value at t = kappa of q^18 t^6 + (3ab - 3 - q^-3 b^3) q^12 t^4 + C t^2 - 1.

    C defaults to the reference coefficient (q^3 a^3 + 3 - 3ab) q^6.
    """
    A, B = central_values(kappa, c, field)
    ab, a3, b3 = A * B, kappa * A ** 3, B ** 3 / kappa
    if coeff2 is None:
        coeff2 = (field.qpow(3) * a3 + 3 - 3 * ab) * field.qpow(6)
    t = kappa
    return (field.qpow(18) * t ** 6 + (3 * ab - 3 - b3 / field.qpow(3)) * field.qpow(12) * t ** 4
            + coeff2 * t ** 2 - 1)


def derived_sextic_coeff2(kappa, c, field=SYMBOLIC):
    """The t^2 coefficient forced by the central values at t = kappa."""
    rest = sextic_residual(kappa, c, field, coeff2=field.zero)
    return -rest / kappa ** 2


@dataclass
class EigenCheck:
    z_values: tuple
    z_ok: tuple
    sextic_ok: bool
    derived_coeff2: Any = None

    @property
    def ok(self):
        return all(self.z_ok) and self.sextic_ok

    def to_json(self, render):
        out = {
            "z_values": [render(v) for v in self.z_values],
            "z_ok": list(self.z_ok),
            "sextic_ok": self.sextic_ok,
        }
        if self.derived_coeff2 is not None:
            out["sextic_rederived_coeff2"] = render(self.derived_coeff2)
        return out


def casimir_eigen_check(kappa, c, module=None, vector=None, eig=None, center=None):
    """Check Z1, Z2, Z3 act on a vector of V(eta; kappa, c) by AB, kappa A^3, B^3/kappa.

    By default the vector is v-bar and the central values are computed from
    (kappa, c); pass ``vector`` and ``eig=(kappa', c')`` to test another
    Whittaker vector (for example u-bar_eps with (kappa_eps, c_eps)).
    If the reference sextic fails, the t^2 coefficient is re-derived and
    reported alongside the failure.
    """
    module = module or WhittakerModule()
    f = module.field
    kappa = _coerce(f, kappa)
    c = _coerce(f, c)
    _check_kappa(kappa)
    ek, ec = (kappa, c) if eig is None else (_coerce(f, eig[0]), _coerce(f, eig[1]))
    ideal = Maximal(kappa, c)
    w = module.v() if vector is None else vector
    _, _, Z1, Z2, Z3 = center if center is not None else center_elements(module.algebra)
    A, B = central_values(ek, ec, f)
    values = (A * B, ek * A ** 3, B ** 3 / ek)
    oks = []
    for Z, val in zip((Z1, Z2, Z3), values):
        img = module.reduce_mod(module.act_algebra(Z, w), ideal)
        oks.append((img - module.reduce_mod(w, ideal).scale(val)).is_zero())
    sextic_ok = sextic_residual(ek, ec, f) == 0
    derived = None if sextic_ok else derived_sextic_coeff2(ek, ec, f)
    return EigenCheck(values, tuple(oks), sextic_ok, derived)
