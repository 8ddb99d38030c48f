"""Multivariate polynomials with exact coefficients, monomial orders and the
polynomial literal grammar.

Polynomials are stored sparsely as ``{exponent tuple: nonzero coefficient}``.
The dict-level helpers (``p_add``, ``p_mul``, ...) are what the Groebner
engine and the DG layer use internally; :class:`Poly` is a thin immutable
wrapper for callers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re
from typing import Callable, Iterable, Sequence

from .field import Field, QQ


# ---------------------------------------------------------------- orders


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _lex_key(e):
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """A term order given by a sort key (larger key = larger monomial)."""

    name: str
    key: Callable = None

    def __repr__(self):
        return self.name


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", _lex_key)
ORDERS = {"grevlex": GREVLEX, "lex": LEX}


# ---------------------------------------------------------------- dict arithmetic


def p_add(F: Field, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    add = F.add
    for m, c in b.items():
        v = out.get(m)
        if v is None:
            out[m] = c
        else:
            v = add(v, c)
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def p_neg(F: Field, a: dict) -> dict:
    neg = F.neg
    return {m: neg(c) for m, c in a.items()}


def p_sub(F: Field, a: dict, b: dict) -> dict:
    return p_add(F, a, p_neg(F, b))


def p_scale(F: Field, a: dict, c) -> dict:
    if not c:
        return {}
    mul = F.mul
    return {m: mul(v, c) for m, v in a.items()}


def p_mul_term(F: Field, a: dict, mono: tuple, c) -> dict:
    mul = F.mul
    return {tuple(x + y for x, y in zip(m, mono)): mul(v, c) for m, v in a.items()}


def p_mul(F: Field, a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    add, mul = F.add, F.mul
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = out.get(m)
            out[m] = mul(c1, c2) if v is None else add(v, mul(c1, c2))
    return {m: c for m, c in out.items() if c}


def p_pow(F: Field, a: dict, n: int, nvars: int) -> dict:
    result = {(0,) * nvars: F(1)}
    base = a
    while n:
        if n & 1:
            result = p_mul(F, result, base)
        n >>= 1
        if n:
            base = p_mul(F, base, base)
    return result


def p_eval(F: Field, a: dict, point: Sequence) -> object:
    total = F(0)
    add, mul = F.add, F.mul
    for m, c in a.items():
        v = c
        for x, e in zip(point, m):
            if e:
                v = mul(v, x**e if F.is_rational else pow(x, e, F.characteristic))
        total = add(total, v)
    return total


def p_degree(a: dict) -> int:
    return max((sum(m) for m in a), default=-1)


def p_is_constant(a: dict) -> bool:
    return all(not any(m) for m in a)


# ---------------------------------------------------------------- rings and polys


class PolyRing:
    """The polynomial ring ``field[variables]`` with a default term order."""

    def __init__(self, field: Field, variables: Iterable[str], order: MonomialOrder | str = GREVLEX):
        if isinstance(order, str):
            order = ORDERS[order]
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable names in {self.variables}")
        self.order = order
        self.nvars = len(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order.name))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.variables)}]"

    def index(self, name: str) -> int:
        return self._index[name]

    def zero_exp(self) -> tuple:
        return (0,) * self.nvars

    def __call__(self, value) -> "Poly":
        """Coerce a Poly, a literal string, a term dict or a scalar."""
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.embed(self)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, dict):
            return Poly(self, value)
        return self.const(value)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self.zero_exp(): c} if c else {})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def gen(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return Poly(self, {tuple(e): self.field(1)})

    def gens(self) -> tuple:
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): self.field(coeff)})

    def parse(self, text: str) -> "Poly":
        return evaluate(parse_expression(text), PolyEvaluator(self))

    def extend(self, names: Iterable[str]) -> "PolyRing":
        return PolyRing(self.field, self.variables + tuple(names), self.order)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)


class Poly:
    """An immutable polynomial in a :class:`PolyRing`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _coerce(self, other) -> dict:
        if isinstance(other, Poly):
            if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.terms
        return self.ring.const(other).terms

    def __add__(self, other):
        return Poly(self.ring, p_add(self.ring.field, self.terms, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Poly(self.ring, p_sub(self.ring.field, self.terms, self._coerce(other)))

    def __rsub__(self, other):
        return Poly(self.ring, p_sub(self.ring.field, self._coerce(other), self.terms))

    def __neg__(self):
        return Poly(self.ring, p_neg(self.ring.field, self.terms))

    def __mul__(self, other):
        return Poly(self.ring, p_mul(self.ring.field, self.terms, self._coerce(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        return Poly(self.ring, p_pow(self.ring.field, self.terms, n, self.ring.nvars))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.variables == other.ring.variables and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return p_is_constant(self.terms)

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp(), self.ring.field(0))

    def degree(self) -> int:
        return p_degree(self.terms)

    def leading_term(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        F = self.ring.field
        return p_eval(F, self.terms, [F(x) for x in point])

    def embed(self, ring: PolyRing) -> "Poly":
        """Map into a ring whose variables extend (or reorder) ours, by name."""
        idx = [ring.index(v) for v in self.ring.variables]
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(idx):
                e[k] = m[i]
            out[tuple(e)] = ring.field(c) if ring.field != self.ring.field else c
        return Poly(ring, out)

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __str__(self):
        return format_poly(self.terms, self.ring.variables, self.ring.field, self.ring.order)

    def __repr__(self):
        return f"Poly({str(self)!r})"


def format_poly(terms: dict, variables: Sequence[str], field: Field, order: MonomialOrder = GREVLEX) -> str:
    if not terms:
        return "0"
    pieces = []
    for m, c in sorted(terms.items(), key=lambda t: order.key(t[0]), reverse=True):
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(variables, m) if e
        )
        if field.is_rational:
            neg = c < 0
            mag = -c if neg else c
        else:
            neg, mag = False, c
        cs = field.to_str(mag)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


# ---------------------------------------------------------------- literal grammar


class ParseError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        self.column = column
        super().__init__(message if column is None else f"{message} (column {column + 1})")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif ident is not None:
            out.append(("id", ident, start))
        else:
            if op not in "+-*^()/":
                raise ParseError(f"unexpected character {op!r}", start)
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    # expr   := ['-'|'+'] term (('+'|'-') term)*
    # term   := factor ('*' factor)*
    # factor := atom ('^' INT)?
    # atom   := INT ['/' INT] | IDENT | '(' expr ')'

    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ParseError(f"expected {op!r}", t[2])
        return t

    def expr(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            node = self.term()
            if t[1] == "-":
                node = ("neg", node)
        else:
            node = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                node = ("add" if t[1] == "+" else "sub", node, rhs)
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                node = ("mul", node, self.factor())
            elif t[0] in ("num", "id") or (t[0] == "op" and t[1] == "("):
                raise ParseError("juxtaposition is not allowed; use '*'", t[2])
            else:
                return node

    def factor(self):
        node = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", e[2])
            node = ("pow", node, e[1])
        return node

    def atom(self):
        t = self.take()
        if t[0] == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num" or d[1] == 0:
                    raise ParseError("rational literal needs a nonzero integer denominator", d[2])
                return ("num", Fraction(t[1], d[1]))
            return ("num", Fraction(t[1]))
        if t[0] == "id":
            return ("var", t[1], t[2])
        if t[0] == "op" and t[1] == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t[0] == "end":
            raise ParseError("unexpected end of input", t[2])
        raise ParseError(f"unexpected {t[1]!r}", t[2])


def parse_expression(text: str):
    """Parse a polynomial literal into a small tuple AST."""
    p = _Parser(text)
    node = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected {t[1]!r}", t[2])
    return node


def evaluate(node, ev):
    """Fold an AST with an evaluator providing num/var/add/sub/neg/mul/pow."""
    kind = node[0]
    if kind == "num":
        return ev.num(node[1])
    if kind == "var":
        return ev.var(node[1], node[2])
    if kind == "neg":
        return ev.neg(evaluate(node[1], ev))
    if kind == "pow":
        return ev.pow(evaluate(node[1], ev), node[2])
    a, b = evaluate(node[1], ev), evaluate(node[2], ev)
    return getattr(ev, kind)(a, b)


def ast_variables(node) -> set:
    if node[0] == "var":
        return {node[1]}
    if node[0] == "num":
        return set()
    return set().union(*(ast_variables(c) for c in node[1:] if isinstance(c, tuple)))


class PolyEvaluator:
    def __init__(self, ring: PolyRing):
        self.ring = ring

    def num(self, q):
        return self.ring.const(q)

    def var(self, name, col):
        if name not in self.ring._index:
            raise ParseError(f"unknown variable {name!r}", col)
        return self.ring.gen(name)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        return a**n


def polynomial_ring(variables: str | Iterable[str], field: Field = QQ, order: MonomialOrder = GREVLEX):
    """Convenience: ``R, (x, y) = polynomial_ring("x,y")``."""
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",") if v.strip()]
    R = PolyRing(field, variables, order)
    return R, R.gens()
