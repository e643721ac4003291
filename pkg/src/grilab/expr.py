"""Generalized rational expressions: AST, text grammar, and evaluation.

Grammar (EBNF)::

    expr     := term { ("+"|"-") term } ;
    term     := factor { "*" factor } ;
    factor   := [ "-" ] atom [ "^" [ "-" ] integer ] ;
    atom     := "(" expr ")" | identifier | rational ;
    rational := integer [ "/" integer ] ;

Precedence: ``^`` over unary ``-`` over ``*`` over binary ``+``/``-``.
``x^-1`` is inversion.  Identifiers are variables unless the parser is told
they are constants; constant *values* resolve against an Environment at
evaluation time, never at parse time.

Evaluation is bottom-up and exact.  Inverting a non-invertible intermediate
is not an error: it produces the :class:`NonPermissible` outcome carrying
the AST path of the failing inversion, because identity testing quantifies
only over permissible substitutions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Mapping

from .errors import (
    ExprSyntaxError,
    NotDivisionRingError,
    NotInvertibleError,
    RingMismatchError,
    UnboundNameError,
    ZeroInverseError,
    ZeroLeadingTermError,
)
from .rings import Ring

# --------------------------------------------------------------------------
# AST nodes


@dataclass(frozen=True)
class Literal:
    value: Fraction


@dataclass(frozen=True)
class Constant:
    name: str


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("empty sum is not a well-formed expression")


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("empty product is not a well-formed expression")


@dataclass(frozen=True)
class Power:
    base: Any
    exponent: int  # may be negative; exponent 0 means the constant 1


@dataclass(frozen=True)
class Negation:
    operand: Any


ExprAst = Literal | Constant | Variable | Sum | Product | Power | Negation


@dataclass(frozen=True)
class Environment:
    """A ring together with named constants (all members of that ring)."""

    ring: Ring
    constants: Mapping[str, Any]

    def __post_init__(self) -> None:
        for name, value in self.constants.items():
            if not self.ring.contains(value):
                raise RingMismatchError(
                    f"constant {name!r} does not belong to {self.ring.describe()}"
                )


Substitution = Mapping[str, Any]


@dataclass(frozen=True)
class Value:
    element: Any


@dataclass(frozen=True)
class NonPermissible:
    """The substitution made some inversion hit a non-invertible value.

    ``path`` is the tuple of child indices from the root to the Power node
    whose inversion failed.
    """

    path: tuple[int, ...]


EvalOutcome = Value | NonPermissible


# --------------------------------------------------------------------------
# Tokenizer / parser

_INT_RE = re.compile(r"\d+")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_OPS = set("-+*^()/")


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "ident" | "op" | "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        if ch.isspace():
            pos += 1
            continue
        column = pos - line_start + 1
        if ch in _OPS:
            tokens.append(_Token("op", ch, line, column))
            pos += 1
            continue
        match = _INT_RE.match(text, pos)
        if match:
            tokens.append(_Token("int", match.group(), line, column))
            pos = match.end()
            continue
        match = _IDENT_RE.match(text, pos)
        if match:
            tokens.append(_Token("ident", match.group(), line, column))
            pos = match.end()
            continue
        raise ExprSyntaxError(f"unknown token {ch!r}", line, column)
    tokens.append(_Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], constants: frozenset[str]):
        self.tokens = tokens
        self.pos = 0
        self.constants = constants

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ExprSyntaxError(f"expected {op!r}, found {tok.text or 'end of input'!r}",
                                  tok.line, tok.column)
        return self.advance()

    def parse(self) -> ExprAst:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ExprSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.column)
        return e

    def expr(self) -> ExprAst:
        terms = [self.term()]
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                nxt = self.term()
                terms.append(Negation(nxt) if tok.text == "-" else nxt)
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> ExprAst:
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> ExprAst:
        negate = False
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            negate = True
        node = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            sign = 1
            tok = self.peek()
            if tok.kind == "op" and tok.text == "-":
                self.advance()
                sign = -1
            tok = self.peek()
            if tok.kind != "int":
                raise ExprSyntaxError(
                    f"expected an integer exponent, found {tok.text or 'end of input'!r}",
                    tok.line, tok.column,
                )
            self.advance()
            node = Power(node, sign * int(tok.text))
        return Negation(node) if negate else node

    def atom(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok.kind == "ident":
            self.advance()
            if tok.text in self.constants:
                return Constant(tok.text)
            return Variable(tok.text)
        if tok.kind == "int":
            self.advance()
            numerator = int(tok.text)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok.kind != "int":
                    raise ExprSyntaxError(
                        f"expected a denominator, found {den_tok.text or 'end of input'!r}",
                        den_tok.line, den_tok.column,
                    )
                self.advance()
                if int(den_tok.text) == 0:
                    raise ExprSyntaxError("zero denominator in rational literal",
                                          den_tok.line, den_tok.column)
                return Literal(Fraction(numerator, int(den_tok.text)))
            return Literal(Fraction(numerator))
        raise ExprSyntaxError(
            f"expected an expression, found {tok.text or 'end of input'!r}",
            tok.line, tok.column,
        )


def parse_expr(text: str, constants: Iterator[str] | frozenset[str] = frozenset()) -> ExprAst:
    """Parse expression text; identifiers in ``constants`` become Constant nodes.

    Constant values are looked up at evaluation time only.
    """
    return _Parser(_tokenize(text), frozenset(constants)).parse()


# --------------------------------------------------------------------------
# Formatting (round-trips through parse_expr to a parse-equivalent tree)


def _format(e: ExprAst, parent: str) -> str:
    if isinstance(e, Literal):
        s = str(e.value)
        return f"({s})" if (e.value < 0 and parent in ("pow", "mul", "neg")) else s
    if isinstance(e, (Constant, Variable)):
        return e.name
    if isinstance(e, Negation):
        inner = _format(e.operand, "neg")
        s = f"-{inner}"
        return f"({s})" if parent in ("pow", "mul", "neg") else s
    if isinstance(e, Power):
        base = _format(e.base, "pow")
        if not isinstance(e.base, (Constant, Variable, Literal)):
            base = f"({base})"
        s = f"{base}^{e.exponent}"
        return s
    if isinstance(e, Product):
        s = "*".join(_format(f, "mul") for f in e.factors)
        return f"({s})" if parent in ("pow", "neg") else s
    if isinstance(e, Sum):
        parts = []
        for idx, term in enumerate(e.terms):
            if idx and isinstance(term, Negation):
                parts.append(f" - {_format(term.operand, 'mul')}")
            elif idx:
                parts.append(f" + {_format(term, 'mul')}")
            else:
                parts.append(_format(term, "sum"))
        s = "".join(parts)
        return f"({s})" if parent != "top" else s
    raise TypeError(f"not an expression node: {e!r}")


def format_expr(e: ExprAst) -> str:
    return _format(e, "top")


def free_vars(e: ExprAst) -> set[str]:
    """Names of Variable nodes in the tree."""
    if isinstance(e, Variable):
        return {e.name}
    if isinstance(e, (Literal, Constant)):
        return set()
    if isinstance(e, Sum):
        out: set[str] = set()
        for t in e.terms:
            out |= free_vars(t)
        return out
    if isinstance(e, Product):
        out = set()
        for f in e.factors:
            out |= free_vars(f)
        return out
    if isinstance(e, Power):
        return free_vars(e.base)
    if isinstance(e, Negation):
        return free_vars(e.operand)
    raise TypeError(f"not an expression node: {e!r}")


# --------------------------------------------------------------------------
# Evaluation

_NON_INVERTIBLE = (
    ZeroInverseError,
    NotDivisionRingError,
    ZeroLeadingTermError,
    NotInvertibleError,
)


def _eval(e: ExprAst, env: Environment, sub: Substitution, path: tuple[int, ...]):
    ring = env.ring
    if isinstance(e, Literal):
        return ring.from_rational(e.value)
    if isinstance(e, Constant):
        try:
            return env.constants[e.name]
        except KeyError:
            raise UnboundNameError(f"constant {e.name!r} is not bound") from None
    if isinstance(e, Variable):
        if e.name in sub:
            value = sub[e.name]
        elif e.name in env.constants:
            value = env.constants[e.name]
        else:
            raise UnboundNameError(f"variable {e.name!r} is not bound") from None
        ring.check(value)
        return value
    if isinstance(e, Negation):
        inner = _eval(e.operand, env, sub, path + (0,))
        if isinstance(inner, NonPermissible):
            return inner
        return ring.neg(inner)
    if isinstance(e, Sum):
        total = None
        for idx, term in enumerate(e.terms):
            val = _eval(term, env, sub, path + (idx,))
            if isinstance(val, NonPermissible):
                return val
            total = val if total is None else ring.add(total, val)
        return total
    if isinstance(e, Product):
        total = None
        for idx, factor in enumerate(e.factors):
            val = _eval(factor, env, sub, path + (idx,))
            if isinstance(val, NonPermissible):
                return val
            total = val if total is None else ring.mul(total, val)
        return total
    if isinstance(e, Power):
        base = _eval(e.base, env, sub, path + (0,))
        if isinstance(base, NonPermissible):
            return base
        if e.exponent == 0:
            return ring.one()
        if e.exponent < 0:
            try:
                inverted = ring.inv(base)
            except _NON_INVERTIBLE:
                return NonPermissible(path)
            return ring.pow(inverted, -e.exponent)
        return ring.pow(base, e.exponent)
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: ExprAst, env: Environment, sub: Substitution) -> EvalOutcome:
    """Exact bottom-up evaluation over the environment's ring.

    Returns Value(element), or NonPermissible(path) when a Power node with a
    negative exponent received a non-invertible value (for truncated series
    this includes values whose known part is entirely zero: a unit cannot be
    certified at the available precision, so the draw is not permissible).
    """
    result = _eval(e, env, sub, ())
    if isinstance(result, NonPermissible):
        return result
    return Value(result)
