"""A small expression language for algebra elements, module vectors and scalars.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' ['-'] int)?
    atom   := int | 'q' | 'alpha' | gen | '[' ['-'] int ']'
            | 'qbinom(' int ',' int ')' | 'u(' int ',' int ',' expr ')'
            | 'g' | 'v' | '(' expr ')'
    gen    := E1 | E2 | E3 | F1 | F2 | F3 | K1 | K2 | K | C1

Multiplication is always explicit.  ``v`` (and ``u(...)``, which already
contains v) may only appear as the rightmost factor of a product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .module import WhittakerModule
from .pbw import AlgebraElement, IDENTITY
from .scalars import SYMBOLIC

__all__ = [
    "ExprError",
    "Num", "Sym", "Gen", "QInt", "QBinom", "Pow", "Mul", "Div", "Add", "Neg",
    "ModuleVec", "UElem", "GSym",
    "parse_expr", "render", "evaluate", "Evaluator", "parse_scalar",
]

GEN_NAMES = ("E1", "E2", "E3", "F1", "F2", "F3", "K1", "K2", "K", "C1")
KEYWORDS = ("q", "alpha", "g", "v", "u", "qbinom") + GEN_NAMES


class ExprError(ValueError):
    """Syntax or evaluation error carrying a 1-based line and column."""

    def __init__(self, message, text="", offset=0):
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.col = offset - (text.rfind("\n", 0, offset) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.col})")
        self.message = message


# --------------------------------------------------------------------------
# AST

Span = Optional[tuple]


@dataclass(frozen=True)
class Num:
    value: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Sym:
    name: str  # q or alpha
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Gen:
    name: str
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class QInt:
    n: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class QBinom:
    n: int
    k: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Mul:
    factors: tuple
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Div:
    num: object
    den: object
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Add:
    terms: tuple
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class ModuleVec:
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class UElem:
    n: int
    l: int
    q_expr: object
    span: Span = field(default=None, compare=False)


@dataclass(frozen=True)
class GSym:
    span: Span = field(default=None, compare=False)


# --------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))", re.S)


@dataclass
class Token:
    kind: str   # int | name | op | end
    text: str
    pos: int


def tokenize(text):
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        if m.group(1):
            out.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Token("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ExprError(f"unexpected character {ch!r}", text, m.start(3))
            out.append(Token("op", ch, m.start(3)))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprError(msg, self.text, tok.pos)

    def expect(self, text):
        t = self.peek()
        if t.text != text or t.kind == "int":
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def accept(self, text):
        t = self.peek()
        if t.kind == "op" and t.text == text:
            self.i += 1
            return True
        return False

    def parse(self):
        node = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        _check_vectors(node, self.text)
        return node

    def expr(self):
        start = self.peek().pos
        terms = []
        if self.accept("-"):
            t = self.term()
            terms.append(Neg(t, (start, self._end())))
        else:
            terms.append(self.term())
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next()
            t = self.term()
            terms.append(Neg(t, (op.pos, self._end())) if op.text == "-" else t)
        if len(terms) == 1:
            return terms[0]
        return Add(tuple(terms), (start, self._end()))

    def _end(self):
        return self.toks[self.i - 1].pos + len(self.toks[self.i - 1].text)

    def term(self):
        start = self.peek().pos
        factors = [self.factor()]
        cur = None
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next().text
            f = self.factor()
            if op == "*":
                factors.append(f)
            else:
                left = factors[0] if len(factors) == 1 else Mul(tuple(factors), (start, f.span[0]))
                cur = Div(left, f, (start, self._end()))
                factors = [cur]
        if len(factors) == 1:
            return factors[0]
        return Mul(tuple(factors), (start, self._end()))

    def signed_int(self):
        neg = self.accept("-")
        t = self.peek()
        if t.kind != "int":
            self.error("expected an integer")
        self.next()
        return -int(t.text) if neg else int(t.text)

    def factor(self):
        start = self.peek().pos
        base = self.atom()
        if self.accept("^"):
            e = self.signed_int()
            return Pow(base, e, (start, self._end()))
        return base

    def atom(self):
        t = self.peek()
        start = t.pos
        if t.kind == "int":
            self.next()
            return Num(int(t.text), (start, self._end()))
        if t.kind == "op":
            if t.text == "(":
                self.next()
                node = self.expr()
                self.expect(")")
                return node
            if t.text == "[":
                self.next()
                n = self.signed_int()
                self.expect("]")
                return QInt(n, (start, self._end()))
            self.error(f"unexpected {t.text!r}" if t.text else "unexpected end of input")
        if t.kind == "end":
            self.error("unexpected end of input")
        name = t.text
        self.next()
        if name in ("q", "alpha"):
            return Sym(name, (start, self._end()))
        if name in GEN_NAMES:
            return Gen(name, (start, self._end()))
        if name == "g":
            return GSym((start, self._end()))
        if name == "v":
            return ModuleVec((start, self._end()))
        if name == "qbinom":
            self.expect("(")
            n = self.signed_int()
            self.expect(",")
            k = self.signed_int()
            self.expect(")")
            if n < 0:
                raise ExprError("qbinom needs n >= 0", self.text, start)
            return QBinom(n, k, (start, self._end()))
        if name == "u":
            self.expect("(")
            n = self.signed_int()
            self.expect(",")
            l = self.signed_int()
            self.expect(",")
            qe = self.expr()
            self.expect(")")
            if n < 0:
                raise ExprError("u needs n >= 0", self.text, start)
            return UElem(n, l, qe, (start, self._end()))
        raise ExprError(f"unknown symbol {name!r}", self.text, start)


def _has_vector(node):
    if isinstance(node, (ModuleVec, UElem)):
        return True
    if isinstance(node, Mul):
        return any(_has_vector(f) for f in node.factors)
    if isinstance(node, Add):
        return any(_has_vector(t) for t in node.terms)
    if isinstance(node, (Neg,)):
        return _has_vector(node.operand)
    if isinstance(node, Div):
        return _has_vector(node.num) or _has_vector(node.den)
    if isinstance(node, Pow):
        return _has_vector(node.base)
    return False


def _check_vectors(node, text):
    """Enforce that v only appears as the rightmost factor."""
    def bad(n, why):
        off = n.span[0] if n.span else 0
        raise ExprError(why, text, off)

    if isinstance(node, Mul):
        for f in node.factors[:-1]:
            if _has_vector(f):
                bad(f, "v may only appear as the rightmost factor")
        for f in node.factors:
            _check_vectors(f, text)
    elif isinstance(node, Add):
        kinds = {_has_vector(t) for t in node.terms}
        if len(kinds) > 1:
            bad(node, "cannot add module vectors and algebra elements")
        for t in node.terms:
            _check_vectors(t, text)
    elif isinstance(node, Neg):
        _check_vectors(node.operand, text)
    elif isinstance(node, Div):
        if _has_vector(node.den):
            bad(node.den, "cannot divide by a module vector")
        _check_vectors(node.num, text)
    elif isinstance(node, Pow):
        if _has_vector(node.base):
            bad(node, "v may only appear as the rightmost factor")
    elif isinstance(node, UElem):
        if _has_vector(node.q_expr):
            bad(node.q_expr, "the polynomial argument of u must not contain v")
        _check_vectors(node.q_expr, text)


def parse_expr(text):
    """Parse text into an AST; raises ExprError with a line/column."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# rendering

_ATOMS = (Num, Sym, Gen, QInt, QBinom, UElem, GSym, ModuleVec)


def render(node):
    """Text form that parses back to an equal AST."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, (Sym, Gen)):
        return node.name
    if isinstance(node, QInt):
        return f"[{node.n}]"
    if isinstance(node, QBinom):
        return f"qbinom({node.n},{node.k})"
    if isinstance(node, GSym):
        return "g"
    if isinstance(node, ModuleVec):
        return "v"
    if isinstance(node, UElem):
        return f"u({node.n},{node.l},{render(node.q_expr)})"
    if isinstance(node, Pow):
        b = render(node.base)
        if not isinstance(node.base, _ATOMS):
            b = f"({b})"
        return f"{b}^{node.exp}"
    if isinstance(node, Mul):
        parts = []
        for i, f in enumerate(node.factors):
            s = render(f)
            if isinstance(f, (Add, Neg, Mul)) or (isinstance(f, Div) and i > 0):
                s = f"({s})"
            parts.append(s)
        return "*".join(parts)
    if isinstance(node, Div):
        n = render(node.num)
        if isinstance(node.num, (Add, Neg)):
            n = f"({n})"
        d = render(node.den)
        if isinstance(node.den, (Add, Neg, Mul, Div)):
            d = f"({d})"
        return f"{n}/{d}"
    if isinstance(node, Neg):
        s = render(node.operand)
        if isinstance(node.operand, (Add, Neg)):
            s = f"({s})"
        return f"-{s}"
    if isinstance(node, Add):
        out = []
        for i, t in enumerate(node.terms):
            if isinstance(t, Neg):
                s = render(t.operand)
                if isinstance(t.operand, (Add, Neg)):
                    s = f"({s})"
                out.append(("-" if i == 0 else " - ") + s)
            else:
                s = render(t)
                if isinstance(t, Add):
                    s = f"({s})"
                out.append(s if i == 0 else " + " + s)
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


# --------------------------------------------------------------------------
# evaluation


@dataclass
class Value:
    kind: str     # scalar | algebra | module
    value: object


class Evaluator:
    """Evaluate ASTs against a Whittaker module (and its algebra and field)."""

    def __init__(self, module=None):
        self.module = module or WhittakerModule()
        self.alg = self.module.algebra
        self.field = self.module.field

    def __call__(self, node, text=""):
        return self.eval(node, text)

    def fail(self, node, msg, text):
        raise ExprError(msg, text, node.span[0] if node.span else 0)

    def to_algebra(self, val):
        if val.kind == "algebra":
            return val.value
        if val.kind == "scalar":
            return self.alg.scalar(val.value)
        raise TypeError("module vector where an algebra element was expected")

    def eval(self, node, text=""):
        f = self.field
        if isinstance(node, Num):
            return Value("scalar", f.coerce(node.value))
        if isinstance(node, Sym):
            return Value("scalar", f.q if node.name == "q" else f.alpha)
        if isinstance(node, QInt):
            return Value("scalar", f.qint(node.n))
        if isinstance(node, QBinom):
            return Value("scalar", f.qbinom(node.n, node.k))
        if isinstance(node, Gen):
            if node.name == "C1":
                return Value("algebra", self.alg.casimir1())
            return Value("algebra", self.alg.gen(node.name))
        if isinstance(node, GSym):
            return Value("algebra", self.alg.g_operator())
        if isinstance(node, ModuleVec):
            return Value("module", self.module.v())
        if isinstance(node, UElem):
            qa = self.to_algebra(self.eval(node.q_expr, text))
            try:
                Q = self.module.as_coeff_poly(qa)
            except ValueError as e:
                self.fail(node.q_expr, str(e), text)
            return Value("module", self.module.u_element(node.n, node.l, Q))
        if isinstance(node, Neg):
            v = self.eval(node.operand, text)
            if v.kind == "module":
                return Value("module", -v.value)
            return Value(v.kind, -v.value)
        if isinstance(node, Add):
            vals = [self.eval(t, text) for t in node.terms]
            kinds = {v.kind for v in vals}
            if "module" in kinds:
                acc = vals[0].value
                for v in vals[1:]:
                    acc = acc + v.value
                return Value("module", acc)
            if kinds == {"scalar"}:
                acc = vals[0].value
                for v in vals[1:]:
                    acc = acc + v.value
                return Value("scalar", acc)
            acc = self.to_algebra(vals[0])
            for v in vals[1:]:
                acc = acc + self.to_algebra(v)
            return Value("algebra", acc)
        if isinstance(node, Mul):
            acc = self.eval(node.factors[0], text)
            for fnode in node.factors[1:]:
                acc = self._mul(acc, self.eval(fnode, text), fnode, text)
            return acc
        if isinstance(node, Div):
            num = self.eval(node.num, text)
            den = self.eval(node.den, text)
            if den.kind != "scalar":
                self.fail(node.den, "can only divide by a scalar", text)
            if den.value == 0:
                self.fail(node.den, "division by zero", text)
            inv = 1 / den.value
            if num.kind == "module":
                return Value("module", num.value.scale(inv))
            return Value(num.kind, num.value * inv)
        if isinstance(node, Pow):
            return self._pow(self.eval(node.base, text), node, text)
        raise TypeError(f"not an expression node: {node!r}")

    def _mul(self, a, b, node, text):
        if a.kind == "module":
            self.fail(node, "v may only appear as the rightmost factor", text)
        if b.kind == "module":
            if a.kind == "scalar":
                return Value("module", b.value.scale(a.value))
            return Value("module", self.module.act_algebra(a.value, b.value))
        if a.kind == "scalar" and b.kind == "scalar":
            return Value("scalar", a.value * b.value)
        return Value("algebra", self.to_algebra(a) * self.to_algebra(b))

    def _pow(self, base, node, text):
        e = node.exp
        if base.kind == "scalar":
            if e < 0 and base.value == 0:
                self.fail(node, "division by zero", text)
            return Value("scalar", base.value ** e)
        if base.kind == "module":
            self.fail(node, "cannot raise a module vector to a power", text)
        a = base.value
        if e >= 0:
            return Value("algebra", a ** e)
        inv = _cartan_inverse(a)
        if inv is None:
            self.fail(node, "negative powers are only defined for K1, K2, K and their monomials", text)
        return Value("algebra", inv ** (-e))


def _cartan_inverse(a):
    if len(a.terms) != 1:
        return None
    (m, c), = a.terms.items()
    if m._replace(k1=0, k2=0) != IDENTITY:
        return None
    return AlgebraElement(a.alg, {m._replace(k1=-m.k1, k2=-m.k2): 1 / c})


def evaluate(text_or_node, module=None):
    """Parse (if needed) and evaluate; returns a Value."""
    if isinstance(text_or_node, str):
        text = text_or_node
        node = parse_expr(text)
    else:
        text, node = "", text_or_node
    return Evaluator(module).eval(node, text)


def parse_scalar(text, field=SYMBOLIC):
    """Evaluate text that must denote a scalar (e.g. a CLI flag value)."""
    node = parse_expr(text)
    module = WhittakerModule(field) if field is not SYMBOLIC else _symbolic_module()
    val = Evaluator(module).eval(node, text)
    if val.kind != "scalar":
        raise ExprError("expected a scalar", text, 0)
    return val.value


_SYM_MODULE = []


def _symbolic_module():
    if not _SYM_MODULE:
        _SYM_MODULE.append(WhittakerModule())
    return _SYM_MODULE[0]
