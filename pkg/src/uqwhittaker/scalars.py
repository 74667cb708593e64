"""Exact arithmetic in the coefficient field Q(q, alpha).

A :class:`Scalar` is a reduced fraction of two integer polynomials in ``q``
and ``alpha``.  Negative powers of either indeterminate are cleared into the
denominator, so ``q * q**-1 == 1`` holds by canonicalization alone.

Two coefficient fields are exposed through a common duck-typed interface:

* :data:`SYMBOLIC` -- elements are :class:`Scalar`;
* :class:`NumericField` -- elements are ``flint.fmpq`` values obtained by
  specializing ``q -> q0`` and ``alpha -> alpha0`` at an :class:`EvalPoint`.

The rest of the package only ever uses ``+ - * / **`` and ``== 0`` on
field elements, so every engine runs unchanged over either field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import flint

__all__ = [
    "Scalar",
    "ScalarZeroDivision",
    "EvalPoint",
    "SymbolicField",
    "NumericField",
    "SYMBOLIC",
    "q_integer",
    "q_factorial",
    "q_binomial",
    "evaluate",
    "canonical",
    "scalar_arith",
]

# deglex with q before alpha: the declared order for leading-term normalization
_CTX = flint.fmpz_mpoly_ctx.get(("q", "alpha"), "deglex")
_Q, _ALPHA = _CTX.gens()
_ONE = _CTX.constant(1)
_ZERO = _CTX.constant(0)


class ScalarZeroDivision(ZeroDivisionError):
    """Raised on division by zero or evaluation at a pole."""

    def __init__(self, message, scalar=None):
        super().__init__(message)
        self.scalar = scalar


def _normalize(num, den):
    if num.is_zero():
        return _ZERO, _ONE
    if den.is_zero():
        raise ScalarZeroDivision("zero denominator")
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
        if den.leading_coefficient() < 0:
            num, den = -num, -den
    return num, den


class Scalar:
    """Element of Q(q, alpha) in canonical form.

    The stored pair ``(numer, denom)`` consists of integer polynomials with
    no common factor (content included) and a positive leading coefficient
    of ``denom`` under deglex order.
    """

    __slots__ = ("numer", "denom", "_hash")

    def __init__(self, numer=0, denom=1, *, _trusted=False):
        if not _trusted:
            numer = _coerce_poly(numer)
            denom = _coerce_poly(denom)
            numer, denom = _normalize(numer, denom)
        self.numer = numer
        self.denom = denom
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def from_value(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, int):
            return cls(_CTX.constant(x), _ONE, _trusted=True)
        if isinstance(x, (Fraction, flint.fmpq)):
            return cls(_CTX.constant(int(x.numerator if isinstance(x, Fraction) else x.p)),
                       _CTX.constant(int(x.denominator if isinstance(x, Fraction) else x.q)))
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @classmethod
    def q(cls):
        return cls(_Q, _ONE, _trusted=True)

    @classmethod
    def alpha(cls):
        return cls(_ALPHA, _ONE, _trusted=True)

    @classmethod
    def from_dicts(cls, numer, denom=None):
        """Build from ``{(i, j): c}`` exponent dictionaries (q^i alpha^j)."""
        n = _CTX.from_dict({k: int(v) for k, v in numer.items()}) if numer else _ZERO
        d = _CTX.from_dict({k: int(v) for k, v in denom.items()}) if denom else _ONE
        return cls(n, d)

    # predicates ---------------------------------------------------------
    def is_zero(self):
        return self.numer.is_zero()

    def __bool__(self):
        return not self.numer.is_zero()

    def is_integer_polynomial(self):
        return self.denom.is_one()

    def involves_alpha_in_denominator(self):
        return self.denom.degrees()[1] > 0

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.from_value(other)
            except TypeError:
                return NotImplemented
        if self.denom.is_one() and other.denom.is_one():
            return Scalar(self.numer + other.numer, _ONE, _trusted=True)
        if self.denom == other.denom:
            return Scalar(self.numer + other.numer, self.denom)
        return Scalar(self.numer * other.denom + other.numer * self.denom,
                      self.denom * other.denom)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.numer, self.denom, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.from_value(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.from_value(other)
            except TypeError:
                return NotImplemented
        if self.numer.is_zero() or other.numer.is_zero():
            return Scalar(_ZERO, _ONE, _trusted=True)
        if self.denom.is_one() and other.denom.is_one():
            return Scalar(self.numer * other.numer, _ONE, _trusted=True)
        # cross-cancel keeps operands small
        g1 = self.numer.gcd(other.denom)
        g2 = other.numer.gcd(self.denom)
        n1, d2 = (self.numer / g1, other.denom / g1) if not g1.is_one() else (self.numer, other.denom)
        n2, d1 = (other.numer / g2, self.denom / g2) if not g2.is_one() else (other.numer, self.denom)
        num, den = n1 * n2, d1 * d2
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar(num, den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.numer.is_zero():
            raise ScalarZeroDivision("division by zero scalar", self)
        num, den = self.denom, self.numer
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return Scalar(num, den, _trusted=True)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.from_value(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.from_value(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Scalar(self.numer ** n, self.denom ** n, _trusted=True)

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.from_value(other)
            except TypeError:
                return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.numer.to_dict().items()),
                               tuple(self.denom.to_dict().items())))
        return self._hash

    # inspection ---------------------------------------------------------
    def degree_q(self):
        """Degree at q = infinity: deg_q(numer) - deg_q(denom)."""
        if self.is_zero():
            raise ValueError("zero has no degree")
        return self.numer.degrees()[0] - self.denom.degrees()[0]

    def valuation_q(self):
        """Order of vanishing at q = 0."""
        if self.is_zero():
            raise ValueError("zero has no valuation")
        return min(m[0] for m in self.numer.monoms()) - min(m[0] for m in self.denom.monoms())

    def as_rational(self):
        """Return a Fraction if the scalar is a constant, else None."""
        if self.numer.is_constant() and self.denom.is_constant():
            return Fraction(int(self.numer.leading_coefficient()) if not self.numer.is_zero() else 0,
                            int(self.denom.leading_coefficient()))
        return None

    def rational_form(self):
        """Canonical pair with rational numerator and primitive denominator.

        Returns ``(numer_dict, denom_dict)`` with Fraction coefficients in the
        numerator and a content-1 integer denominator.
        """
        content = int(self.denom.content())
        num = {m: Fraction(int(c), content) for m, c in self.numer.to_dict().items()}
        den = {m: int(c) // content for m, c in self.denom.to_dict().items()}
        return num, den

    def __str__(self):
        n = _render_poly(self.numer)
        if self.denom.is_one():
            return n
        d = _render_poly(self.denom)
        if len(self.numer.monoms()) > 1:
            n = f"({n})"
        if len(self.denom.monoms()) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({self})"


def _coerce_poly(x):
    if isinstance(x, flint.fmpz_mpoly):
        return x
    if isinstance(x, int):
        return _CTX.constant(x)
    raise TypeError(f"not a polynomial: {x!r}")


def _render_monomial(exps):
    parts = []
    for name, e in zip(("q", "alpha"), exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_poly(p):
    if p.is_zero():
        return "0"
    items = sorted(p.to_dict().items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for i, (m, c) in enumerate(items):
        c = int(c)
        mono = _render_monomial(m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f"{sign}{body}")
    return "".join(out)


def canonical(s):
    """Rebuild ``s`` through full normalization (idempotent)."""
    num, den = _normalize(s.numer, s.denom)
    return Scalar(num, den, _trusted=True)


def scalar_arith(a, b, op):
    """Field operation named by ``op`` in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# --------------------------------------------------------------------------
# evaluation


@dataclass(frozen=True)
class EvalPoint:
    """A specialization q -> q0, alpha -> alpha0 with q0 not a root of unity."""

    q0: Fraction = Fraction(2)
    alpha0: Fraction = Fraction(1)

    def __post_init__(self):
        q0, a0 = Fraction(self.q0), Fraction(self.alpha0)
        if q0 in (0, 1, -1):
            raise ValueError(f"q0 must avoid 0 and +-1, got {q0}")
        if a0 == 0:
            raise ValueError("alpha0 must be nonzero")
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "alpha0", a0)


def _eval_poly(p, q0, a0):
    total = flint.fmpq(0)
    for (i, j), c in zip(p.monoms(), p.coeffs()):
        total += flint.fmpq(int(c)) * q0 ** i * a0 ** j
    return total


def evaluate(s, point):
    """Exact rational value of ``s`` at ``point`` (as ``flint.fmpq``)."""
    if not isinstance(s, Scalar):
        s = Scalar.from_value(s)
    q0 = flint.fmpq(point.q0.numerator, point.q0.denominator)
    a0 = flint.fmpq(point.alpha0.numerator, point.alpha0.denominator)
    den = _eval_poly(s.denom, q0, a0)
    if den == 0:
        raise ScalarZeroDivision(f"denominator of {s} vanishes at {point}", s)
    return _eval_poly(s.numer, q0, a0) / den


# --------------------------------------------------------------------------
# fields


class _FieldBase:
    symbolic = False

    def __init__(self):
        self._qpow = {}
        self._qint = {}
        self._qbin = {}

    def qpow(self, n):
        r = self._qpow.get(n)
        if r is None:
            r = self.q ** n
            self._qpow[n] = r
        return r

    def qint(self, n):
        """The q-integer (q^n - q^-n)/(q - q^-1)."""
        r = self._qint.get(n)
        if r is None:
            if n == 0:
                r = self.zero
            elif n < 0:
                r = -self.qint(-n)
            else:
                # q^{1-n} + q^{3-n} + ... + q^{n-1}
                r = self.zero
                for i in range(n):
                    r = r + self.qpow(n - 1 - 2 * i)
            self._qint[n] = r
        return r

    def qfact(self, n):
        r = self.one
        for i in range(1, n + 1):
            r = r * self.qint(i)
        return r

    def qbinom(self, n, k):
        if k < 0 or k > n:
            return self.zero
        key = (n, k)
        r = self._qbin.get(key)
        if r is None:
            k = min(k, n - k)
            r = self.one
            for i in range(k):
                r = r * self.qint(n - i)
            r = r / self.qfact(k)
            self._qbin[key] = r
        return r

    def is_zero(self, x):
        return x == 0


class SymbolicField(_FieldBase):
    """Q(q, alpha) with :class:`Scalar` elements."""

    symbolic = True
    name = "symbolic"

    def __init__(self):
        super().__init__()
        self.q = Scalar.q()
        self.alpha = Scalar.alpha()
        self.one = Scalar(1)
        self.zero = Scalar(0)

    def coerce(self, x):
        return Scalar.from_value(x)

    def render(self, x):
        return str(x)

    def __repr__(self):
        return "SymbolicField()"


class NumericField(_FieldBase):
    """Q with q and alpha specialized at an :class:`EvalPoint`."""

    symbolic = False

    def __init__(self, point=None):
        super().__init__()
        self.point = point or EvalPoint()
        self.q = flint.fmpq(self.point.q0.numerator, self.point.q0.denominator)
        self.alpha = flint.fmpq(self.point.alpha0.numerator, self.point.alpha0.denominator)
        self.one = flint.fmpq(1)
        self.zero = flint.fmpq(0)
        self.name = f"q={self.point.q0},alpha={self.point.alpha0}"

    def coerce(self, x):
        if isinstance(x, Scalar):
            return evaluate(x, self.point)
        if isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        if isinstance(x, int):
            return flint.fmpq(x)
        if isinstance(x, flint.fmpq):
            return x
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def render(self, x):
        return str(x)

    def __repr__(self):
        return f"NumericField({self.point.q0}, {self.point.alpha0})"


SYMBOLIC = SymbolicField()


def q_integer(n):
    """[n] = (q^n - q^-n)/(q - q^-1) as a canonical Scalar."""
    return SYMBOLIC.qint(n)


def q_factorial(n):
    return SYMBOLIC.qfact(n)


def q_binomial(n, k):
    """Gaussian binomial [n]!/([k]![n-k]!); zero outside 0 <= k <= n."""
    return SYMBOLIC.qbinom(n, k)


def root_scan_bound(kappa, s, field):
    """Upper bound on n with q^{3-2n} kappa + q^{2n-3}/kappa == s.

    For large n the two summands separate (in q-degree for the symbolic
    field, in absolute value for a numeric one), pinning q^{2n-3} to a
    bounded range.  Returns a positive integer.
    """
    if field.symbolic:
        dk = kappa.degree_q()
        bound_m = dk if s == 0 else max(dk, dk + s.degree_q())
        # also n small enough that 2n-3 <= bound_m
        return max(1, (bound_m + 3) // 2 + 1)
    qa = abs(Fraction(int(field.q.p), int(field.q.q)))
    if qa < 1:
        qa = 1 / qa
    ka = abs(Fraction(int(kappa.p), int(kappa.q)))
    sa = abs(Fraction(int(s.p), int(s.q)))
    # |q|^m <= max(|kappa|, 1/|kappa|) * (|s| + |kappa| + 1/|kappa|) for any root
    big = max(ka, 1 / ka) * (sa + ka + 1 / ka)
    m = math.log(float(big)) / math.log(float(qa)) if big > 1 else 0
    return max(1, int(m + 3) // 2 + 2)
