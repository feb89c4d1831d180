"""Expression front-end shared by the CLI.

Grammar (whitespace insensitive):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | token | '(' expr ')'

Tokens: rationals "p" or "p/q"; deformation parameters h1 h2 h3; generators
Th Ph Ps Q1 Q2 P1 P2; built-ins rho, lambda, exp(c*rho); dual functionals
W[i,j,k], Y[a,b,c,d] and the aliases x1..x7.  Product order is preserved, so
entering P1*Q1 shows the reordered result.  Primal and dual tokens may not be
mixed in one expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, DeformParams, make_generator, \
    make_lambda, make_rho, make_exp_rho, normal_order_mul
from .dual import DualElement, chi, classical_product
from .series import SeriesScalar


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str           # h1..h3, generator names, rho, lambda


@dataclass(frozen=True)
class DualSym:
    kind: str           # "W" or "Y"
    index: tuple[int, ...]


@dataclass(frozen=True)
class ExpRho:
    coeff: Fraction


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Add:
    terms: tuple        # of (sign, node) pairs, sign = +1 | -1


PRIMAL_SYMBOLS = {"h1", "h2", "h3", "Th", "Ph", "Ps", "Q1", "Q2",
                  "P1", "P2", "rho", "lambda"}
_CHI_ALIASES = {f"x{i}": i for i in range(1, 8)}

_TOKEN_RE = re.compile(r"""
    (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()\[\],])
  | (?P<ws>\s+)
  | (?P<bad>.)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ExpressionError(f"unexpected character {m.group()!r}",
                                  m.start())
        out.append((kind, m.group(), m.start()))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression", len(self.text))
        self.pos += 1
        return tok

    def _expect(self, value: str):
        tok = self._next()
        if tok[1] != value:
            raise ExpressionError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        node = self.expr()
        tok = self._peek()
        if tok is not None:
            raise ExpressionError(f"trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self):
        terms = []
        sign = 1
        tok = self._peek()
        if tok is not None and tok[1] == "-":
            self._next()
            sign = -1
        terms.append((sign, self.term()))
        while True:
            tok = self._peek()
            if tok is None or tok[1] not in "+-":
                break
            self._next()
            terms.append((1 if tok[1] == "+" else -1, self.term()))
        return Add(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while True:
            tok = self._peek()
            if tok is None or tok[1] != "*":
                break
            self._next()
            factors.append(self.factor())
        return Mul(tuple(factors))

    def factor(self):
        base = self.atom()
        tok = self._peek()
        if tok is not None and tok[1] == "^":
            self._next()
            num = self._next()
            if num[0] != "number" or "/" in num[1]:
                raise ExpressionError("exponent must be a natural number", num[2])
            return Pow(base, int(num[1]))
        return base

    def atom(self):
        tok = self._next()
        kind, value, pos = tok
        if kind == "number":
            return Num(Fraction(value))
        if value == "(":
            node = self.expr()
            self._expect(")")
            return node
        if kind == "name":
            if value in ("W", "Y"):
                return self._dual(value, pos)
            if value in _CHI_ALIASES:
                i = _CHI_ALIASES[value]
                if i <= 3:
                    idx = tuple(1 if k == i - 1 else 0 for k in range(3))
                    return DualSym("W", idx)
                idx = tuple(1 if k == i - 4 else 0 for k in range(4))
                return DualSym("Y", idx)
            if value == "exp":
                return self._exp_rho(pos)
            if value in PRIMAL_SYMBOLS:
                return Sym(value)
            raise ExpressionError(f"unknown token {value!r}", pos)
        raise ExpressionError(f"unexpected {value!r}", pos)

    def _dual(self, kind: str, pos: int):
        self._expect("[")
        entries = []
        while True:
            num = self._next()
            if num[0] != "number" or "/" in num[1]:
                raise ExpressionError("dual indices must be naturals", num[2])
            entries.append(int(num[1]))
            tok = self._next()
            if tok[1] == "]":
                break
            if tok[1] != ",":
                raise ExpressionError(f"expected ',' or ']', found {tok[1]!r}",
                                      tok[2])
        want = 3 if kind == "W" else 4
        if len(entries) != want:
            raise ExpressionError(f"{kind}[...] needs {want} indices", pos)
        return DualSym(kind, tuple(entries))

    def _exp_rho(self, pos: int):
        self._expect("(")
        sign = 1
        tok = self._peek()
        if tok is not None and tok[1] == "-":
            self._next()
            sign = -1
        tok = self._next()
        if tok[0] == "number":
            coeff = Fraction(tok[1])
            self._expect("*")
            tok = self._next()
        else:
            coeff = Fraction(1)
        if tok[1] != "rho":
            raise ExpressionError("exp(...) accepts c*rho only", tok[2])
        self._expect(")")
        return ExpRho(sign * coeff)


def parse_expression(text: str):
    """Parse into an AST; raises ExpressionError with a position on bad input."""
    node = _Parser(text).parse()
    kinds = _classify(node)
    if "primal" in kinds and "dual" in kinds:
        raise ExpressionError("mixed primal and dual tokens in one expression")
    return node


def _classify(node) -> set[str]:
    if isinstance(node, Num):
        return set()
    if isinstance(node, Sym):
        return {"primal"} if node.name not in ("h1", "h2", "h3") else set()
    if isinstance(node, ExpRho):
        return {"primal"}
    if isinstance(node, DualSym):
        return {"dual"}
    if isinstance(node, Pow):
        return _classify(node.base)
    if isinstance(node, Mul):
        out = set()
        for f in node.factors:
            out |= _classify(f)
        return out
    if isinstance(node, Add):
        out = set()
        for _, t in node.terms:
            out |= _classify(t)
        return out
    raise TypeError(node)


def is_dual_expression(node) -> bool:
    return "dual" in _classify(node)


# -- evaluation -------------------------------------------------------------

def evaluate_primal(node, params: DeformParams) -> AlgebraElement:
    if isinstance(node, Num):
        return AlgebraElement.unit(params).scale(node.value)
    if isinstance(node, Sym):
        if node.name in ("h1", "h2", "h3"):
            return AlgebraElement.unit(params).scale(
                SeriesScalar.hbar(int(node.name[1]), params.trunc))
        if node.name == "rho":
            return make_rho(params)
        if node.name == "lambda":
            return make_lambda(params)
        return make_generator(node.name, params)
    if isinstance(node, ExpRho):
        return make_exp_rho(node.coeff, params)
    if isinstance(node, Pow):
        return evaluate_primal(node.base, params) ** node.exponent
    if isinstance(node, Mul):
        out = AlgebraElement.unit(params)
        for f in node.factors:
            out = normal_order_mul(out, evaluate_primal(f, params))
        return out
    if isinstance(node, Add):
        out = AlgebraElement.zero(params)
        for sign, t in node.terms:
            piece = evaluate_primal(t, params)
            out = out + (piece if sign > 0 else -piece)
        return out
    raise ExpressionError("dual token in a primal context")


def evaluate_dual(node, trunc: int) -> DualElement:
    if isinstance(node, Num):
        return DualElement.unit(trunc).scale(node.value)
    if isinstance(node, Sym):
        if node.name in ("h1", "h2", "h3"):
            return DualElement.unit(trunc).scale(
                SeriesScalar.hbar(int(node.name[1]), trunc))
        raise ExpressionError("primal token in a dual context")
    if isinstance(node, DualSym):
        if node.kind == "W":
            return DualElement.monomial(node.index, (0, 0, 0, 0), trunc)
        return DualElement.monomial((0, 0, 0), node.index, trunc)
    if isinstance(node, Pow):
        out = DualElement.unit(trunc)
        base = evaluate_dual(node.base, trunc)
        for _ in range(node.exponent):
            out = classical_product(out, base)
        return out
    if isinstance(node, Mul):
        out = DualElement.unit(trunc)
        for f in node.factors:
            out = classical_product(out, evaluate_dual(f, trunc))
        return out
    if isinstance(node, Add):
        out = DualElement.zero(trunc)
        for sign, t in node.terms:
            piece = evaluate_dual(t, trunc)
            out = out + (piece if sign > 0 else -piece)
        return out
    raise ExpressionError("primal token in a dual context")


def evaluate(text: str, params: DeformParams):
    """Parse and evaluate; dual expressions yield DualElement, everything
    else an AlgebraElement."""
    node = parse_expression(text)
    if is_dual_expression(node):
        return evaluate_dual(node, params.trunc)
    return evaluate_primal(node, params)
