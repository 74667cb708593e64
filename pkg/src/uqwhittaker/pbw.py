"""U_q(sl3) in the PBW basis F3^a F2^b F1^c K1^m K2^n E3^d E2^e E1^f.

Straightening is done by :meth:`QuantumSL3.times_letter`, which appends one
generator to a normal monomial and pushes it left with the commutation rules
until the word is ordered again.  Results are memoized per (monomial, letter)
pair, so products of long elements reuse earlier work.

Termination measure for the rule system (checked by hand, exercised by the
confluence tests): (number of E-before-F inversions, number of letter
inversions against the PBW rank order, word length) decreases
lexicographically under every rule.  The rules producing extra terms
(E_i F_i, E1 E2, F1 F2 and the mixed E3/F3 rules) replace an inversion by
shorter or better-ordered words.

A second, deliberately naive rewriter (:func:`normal_form_words`) works on
raw words with a leftmost- or rightmost-redex strategy.  It shares the rule
table but none of the monomial bookkeeping, and serves as the confluence
oracle for the fast path.
"""

from __future__ import annotations

from typing import NamedTuple

from .scalars import SYMBOLIC

__all__ = [
    "GENERATORS",
    "PBWMonomial",
    "AlgebraElement",
    "QuantumSL3",
    "denominators_admissible",
    "normal_form_words",
    "render_monomial",
]

GENERATORS = ("F3", "F2", "F1", "K1", "K1i", "K2", "K2i", "E3", "E2", "E1")
CHEVALLEY = ("E1", "E2", "F1", "F2", "K1", "K2", "K1i", "K2i")

RANK = {"F3": 0, "F2": 1, "F1": 2, "K1": 3, "K1i": 3, "K2": 3, "K2i": 3,
        "E3": 4, "E2": 5, "E1": 6}
E_LETTERS = ("E3", "E2", "E1")
F_LETTERS = ("F3", "F2", "F1")
K_LETTERS = ("K1", "K1i", "K2", "K2i")

# Cartan matrix; index 3 stands for the root of E3/F3 (a_i1 + a_i2 = 1)
CARTAN = {(1, 1): 2, (1, 2): -1, (2, 1): -1, (2, 2): 2, (1, 3): 1, (2, 3): 1}
_ROOT = {"E1": 1, "E2": 2, "E3": 3, "F1": 1, "F2": 2, "F3": 3}
_KINFO = {"K1": (1, 1), "K1i": (1, -1), "K2": (2, 1), "K2i": (2, -1)}

# slot of each letter in the exponent vector
_SLOT = {"F3": 0, "F2": 1, "F1": 2, "E3": 5, "E2": 6, "E1": 7}


class PBWMonomial(NamedTuple):
    f3: int = 0
    f2: int = 0
    f1: int = 0
    k1: int = 0
    k2: int = 0
    e3: int = 0
    e2: int = 0
    e1: int = 0


IDENTITY = PBWMonomial()


def monomial_word(mono):
    """Letters of a PBW monomial, left to right."""
    f3, f2, f1, k1, k2, e3, e2, e1 = mono
    word = ["F3"] * f3 + ["F2"] * f2 + ["F1"] * f1
    word += ["K1" if k1 > 0 else "K1i"] * abs(k1)
    word += ["K2" if k2 > 0 else "K2i"] * abs(k2)
    word += ["E3"] * e3 + ["E2"] * e2 + ["E1"] * e1
    return tuple(word)


def render_monomial(mono):
    parts = []
    for name, e in zip(("F3", "F2", "F1", "K1", "K2", "E3", "E2", "E1"), mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return " ".join(parts) if parts else "1"


def _bump(mono, slot, by=1):
    m = list(mono)
    m[slot] += by
    return PBWMonomial(*m)


def _add_into(acc, key, c):
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v == 0:
            del acc[key]
        else:
            acc[key] = v


_ALLOWED_FACTORS = [(SYMBOLIC.q + k).numer for k in (0, -1, 1)]


def denominators_admissible(coeffs, field=SYMBOLIC):
    """True when every denominator is an integer times powers of q, q - 1, q + 1.

    Straightening only ever divides by q - q^-1 = (q - 1)(q + 1)/q.  Always
    true for a numeric field, where the check has no content.
    """
    if not field.symbolic:
        return True
    allowed = {str(f) for f in _ALLOWED_FACTORS}
    for c in coeffs:
        _, factors = c.denom.factor()
        if any(str(f) not in allowed for f, _ in factors):
            return False
    return True


class QuantumSL3:
    """The algebra U_q(sl3) over a coefficient field.

    The derived E3*F3 straightening rule is computed once here, from the
    Chevalley-word definitions of E3 and F3, before the instance is used.
    """

    def __init__(self, field=SYMBOLIC):
        self.field = field
        q = field.q
        self.q = q
        self._cache = {}
        self._mm_cache = {}
        self._deriving = False
        inv = 1 / (q - 1 / q)
        one = field.one
        qi = 1 / q
        self._rules = {
            # within F
            ("F1", "F2"): [(q, ("F2", "F1")), (one, ("F3",))],
            ("F1", "F3"): [(qi, ("F3", "F1"))],
            ("F2", "F3"): [(q, ("F3", "F2"))],
            # within E
            ("E1", "E2"): [(one, ("E3",)), (qi, ("E2", "E1"))],
            ("E1", "E3"): [(q, ("E3", "E1"))],
            ("E2", "E3"): [(qi, ("E3", "E2"))],
            # E past F
            ("E1", "F1"): [(one, ("F1", "E1")), (inv, ("K1",)), (-inv, ("K1i",))],
            ("E2", "F2"): [(one, ("F2", "E2")), (inv, ("K2",)), (-inv, ("K2i",))],
            ("E1", "F2"): [(one, ("F2", "E1"))],
            ("E2", "F1"): [(one, ("F1", "E2"))],
            ("E1", "F3"): [(one, ("F3", "E1")), (one, ("F2", "K1i"))],
            ("E2", "F3"): [(one, ("F3", "E2")), (-one, ("K2", "F1"))],
            ("E3", "F1"): [(one, ("F1", "E3")), (-one, ("E2", "K1i"))],
            ("E3", "F2"): [(one, ("F2", "E3")), (one, ("K2", "E1"))],
        }
        self.e3f3_rule = None
        self.e3f3_rule = self._derive_e3f3()

    # ------------------------------------------------------------------
    # rules

    def rule(self, left, right):
        """Right-hand side of the out-of-order pair ``left right``.

        Returns a list of (coefficient, word).  K letters commuting past E or
        F letters contribute a single q-power term.
        """
        r = self._rules.get((left, right))
        if r is not None:
            return r
        if left == "E3" and right == "F3":
            if self.e3f3_rule is None:
                raise RuntimeError("E3*F3 rule requested while deriving it")
            return [(c, monomial_word(m)) for m, c in self.e3f3_rule.items()]
        if left in K_LETTERS and right in F_LETTERS:
            i, s = _KINFO[left]
            # K_i^s F = q^{-s a} F K_i^s
            return [(self.field.qpow(-s * CARTAN[(i, _ROOT[right])]), (right, left))]
        if left in E_LETTERS and right in K_LETTERS:
            i, s = _KINFO[right]
            # E K_i^s = q^{-s a} K_i^s E
            return [(self.field.qpow(-s * CARTAN[(i, _ROOT[left])]), (right, left))]
        raise KeyError((left, right))

    def _derive_e3f3(self):
        self._deriving = True
        try:
            q = self.q
            e3 = [(self.field.one, ("E1", "E2")), (-1 / q, ("E2", "E1"))]
            f3 = [(self.field.one, ("F1", "F2")), (-q, ("F2", "F1"))]
            acc = {}
            for ce, we in e3:
                for cf, wf in f3:
                    for m, c in self._fold(IDENTITY, we + wf).items():
                        _add_into(acc, m, ce * cf * c)
        finally:
            self._deriving = False
        # folding Chevalley words never meets an E3 F3 pair (rule() raises if
        # it does), so every cache entry made here is valid afterwards
        assert denominators_admissible(acc.values(), self.field), "unexpected denominator in E3 F3 rule"
        return acc

    # ------------------------------------------------------------------
    # straightening

    def times_letter(self, mono, x):
        """Normal form of ``mono * x`` as a dict monomial -> coefficient."""
        key = (mono, x)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        res = self._times_letter(mono, x)
        self._cache[key] = res
        return res

    def _times_letter(self, mono, x):
        f3, f2, f1, k1, k2, e3, e2, e1 = mono
        last_e = "E1" if e1 else "E2" if e2 else "E3" if e3 else None
        if x in E_LETTERS:
            if last_e is None or RANK[last_e] <= RANK[x]:
                return {_bump(mono, _SLOT[x]): self.field.one}
            return self._peel(mono, last_e, x)
        if x in K_LETTERS:
            i, s = _KINFO[x]
            c = self.field.one
            if last_e is not None:
                # move K_i^s left through the whole E block at once
                w = e1 * CARTAN[(i, 1)] + e2 * CARTAN[(i, 2)] + e3
                c = self.field.qpow(-s * w)
            return {_bump(mono, 3 if i == 1 else 4, s): c}
        # x is an F letter
        if last_e is not None:
            return self._peel(mono, last_e, x)
        if k1 or k2:
            a = CARTAN[(1, _ROOT[x])] * k1 + CARTAN[(2, _ROOT[x])] * k2
            c = self.field.qpow(-a)
            out = {}
            for m, v in self.times_letter(PBWMonomial(f3, f2, f1), x).items():
                out[m._replace(k1=k1, k2=k2)] = c * v
            return out
        last_f = "F1" if f1 else "F2" if f2 else "F3" if f3 else None
        if last_f is None or RANK[last_f] <= RANK[x]:
            return {_bump(mono, _SLOT[x]): self.field.one}
        return self._peel(mono, last_f, x)

    def _peel(self, mono, y, x):
        rest = _bump(mono, _SLOT[y], -1)
        acc = {}
        for c, word in self.rule(y, x):
            for m, v in self._fold(rest, word).items():
                _add_into(acc, m, c * v)
        return acc

    def _fold(self, mono, word):
        cur = {mono: self.field.one}
        for x in word:
            nxt = {}
            for m, c in cur.items():
                for m2, c2 in self.times_letter(m, x).items():
                    _add_into(nxt, m2, c * c2)
            cur = nxt
        return cur

    def mono_times_mono(self, a, b):
        key = (a, b)
        hit = self._mm_cache.get(key)
        if hit is None:
            hit = self._fold(a, monomial_word(b))
            self._mm_cache[key] = hit
        return hit

    # ------------------------------------------------------------------
    # element constructors

    def element(self, terms=None):
        return AlgebraElement(self, terms or {})

    def one(self):
        return AlgebraElement(self, {IDENTITY: self.field.one})

    def scalar(self, c):
        c = self.field.coerce(c) if not _is_field_elem(c, self.field) else c
        return AlgebraElement(self, {IDENTITY: c} if c != 0 else {})

    def gen(self, name):
        """Single generator; accepts the K letters and ``K``/``Ki`` for K1 K2^2."""
        if name == "K":
            return self.word(("K1", "K2", "K2"))
        if name == "Ki":
            return self.word(("K1i", "K2i", "K2i"))
        if name not in GENERATORS:
            raise ValueError(f"unknown generator {name!r}")
        return self.word((name,))

    def word(self, word):
        return AlgebraElement(self, self._fold(IDENTITY, tuple(word)))

    def normal_form(self, words):
        """PBW expansion of a Scalar-linear combination of words.

        ``words`` is a single word (sequence of letters) or an iterable of
        (coefficient, word) pairs.
        """
        if words and isinstance(next(iter(words)), str):
            words = [(self.field.one, tuple(words))]
        acc = {}
        for c, w in words:
            c = self.field.coerce(c) if not _is_field_elem(c, self.field) else c
            for m, v in self._fold(IDENTITY, tuple(w)).items():
                _add_into(acc, m, c * v)
        return AlgebraElement(self, acc)

    def multiply(self, a, b):
        acc = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                cab = ca * cb
                for m, v in self.mono_times_mono(ma, mb).items():
                    _add_into(acc, m, cab * v)
        return AlgebraElement(self, acc)

    def commutator(self, a, b):
        return self.multiply(a, b) - self.multiply(b, a)

    def casimir1(self):
        """C1 = F1 E1 + (q K1 + q^-1 K1^-1)/(q - q^-1)^2."""
        q = self.q
        d = (q - 1 / q) ** 2
        return self.gen("F1") * self.gen("E1") + (q / d) * self.gen("K1") + (1 / (q * d)) * self.gen("K1i")

    def g_operator(self):
        """g = F2 (1 - q^-2 K2^2 K^-2) + alpha (1 - q^-2) F3 K^-1."""
        q, a = self.q, self.field.alpha
        K2 = self.gen("K2")
        Ki = self.gen("Ki")
        F2 = self.gen("F2")
        F3 = self.gen("F3")
        return F2 * (self.one() - q ** -2 * K2 * K2 * Ki * Ki) + a * (1 - q ** -2) * F3 * Ki


def _is_field_elem(c, field):
    return type(c) is type(field.one)


class AlgebraElement:
    """Finitely supported combination of PBW monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return AlgebraElement(self.alg, acc)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.alg.multiply(self, other)
        c = self.alg.field.coerce(other) if not _is_field_elem(other, self.alg.field) else other
        return AlgebraElement(self.alg, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.alg.field.coerce(other) if not _is_field_elem(other, self.alg.field) else other
        return AlgebraElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers of algebra elements")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self._lift(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        render = self.alg.field.render
        parts = []
        for m, c in self.sorted_terms():
            parts.append(f"({render(c)})*{render_monomial(m)}" if m != IDENTITY else f"({render(c)})")
        return " + ".join(parts)

    def render(self):
        """Text form with unit coefficients dropped, e.g. ``E3`` or ``q*F2 F1``."""
        if not self.terms:
            return "0"
        render = self.alg.field.render
        parts = []
        for m, c in self.sorted_terms():
            mono = render_monomial(m)
            cs = render(c)
            if mono == "1":
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


# --------------------------------------------------------------------------
# naive word rewriter (confluence oracle)


def _redexes(word):
    out = []
    for i, (a, b) in enumerate(zip(word, word[1:])):
        if RANK[a] > RANK[b]:
            out.append(i)
        elif RANK[a] == 3 == RANK[b]:
            if (a in ("K2", "K2i") and b in ("K1", "K1i")) or {a, b} in ({"K1", "K1i"}, {"K2", "K2i"}):
                out.append(i)
    return out


def _word_to_monomial(word):
    m = [0] * 8
    for x in word:
        if x in _SLOT:
            m[_SLOT[x]] += 1
        else:
            i, s = _KINFO[x]
            m[3 if i == 1 else 4] += s
    return PBWMonomial(*m)


def normal_form_words(alg, words, strategy="leftmost", max_steps=10 ** 6):
    """Reduce a combination of words by repeatedly rewriting one redex.

    ``strategy`` picks the leftmost or rightmost out-of-order adjacent pair.
    K letters commute among themselves and cancel against their inverses.
    """
    if words and isinstance(next(iter(words)), str):
        words = [(alg.field.one, tuple(words))]
    pending = {}
    for c, w in words:
        _add_into(pending, tuple(w), c)
    done = {}
    steps = 0
    while pending:
        w, c = pending.popitem()
        red = _redexes(w)
        if not red:
            _add_into(done, _word_to_monomial(w), c)
            continue
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate")
        i = red[0] if strategy == "leftmost" else red[-1]
        a, b = w[i], w[i + 1]
        pre, post = w[:i], w[i + 2:]
        if RANK[a] == 3 == RANK[b]:
            if {a, b} in ({"K1", "K1i"}, {"K2", "K2i"}):
                _add_into(pending, pre + post, c)
            else:
                _add_into(pending, pre + (b, a) + post, c)
            continue
        for coeff, rhs in alg.rule(a, b):
            _add_into(pending, pre + tuple(rhs) + post, c * coeff)
    return AlgebraElement(alg, done)
