"""Surface syntax for operator expressions.

Grammar (whitespace insensitive, left associative):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'f' | 'theta' | 'delta' | rational | '(' expr ')'

Rationals are nonnegative 'p/q' or integer literals; exponents are
nonnegative integer literals.  fmt_expr is a strict inverse of
parse_expr on syntax trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AElement, APresentation, a_add, a_mul, a_pow, a_sub
from .poly import as_fraction

MAX_EXPONENT = 10 ** 6


class ExprError(ValueError):
    """Syntax error with a position into the source text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class Sym:
    name: str           # 'f' | 'theta' | 'delta'


@dataclass(frozen=True)
class RatLit:
    value: Fraction


@dataclass(frozen=True)
class BinOp:
    op: str             # '+' | '-' | '*'
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


# -- lexer ----------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == "/":
                j = i + 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
                    tokens.append(("NUM", text[start:i], start))
                    continue
            tokens.append(("NUM", text[start:i], start))
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalpha():
                i += 1
            word = text[start:i]
            if word not in ("f", "theta", "delta"):
                raise ExprError(f"unknown name {word!r}", start)
            tokens.append(("SYM", word, start))
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", "", n))
    return tokens


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ExprError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return self.advance()

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ExprError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return e

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("NUM")
            if "/" in tok[1]:
                raise ExprError("exponent must be a nonnegative integer", tok[2])
            k = int(tok[1])
            if k > MAX_EXPONENT:
                raise ExprError(f"exponent overflow (> {MAX_EXPONENT})", tok[2])
            node = Pow(node, k)
        return node

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "SYM":
            self.advance()
            return Sym(tok[1])
        if kind == "NUM":
            self.advance()
            if "/" in tok[1]:
                num, den = tok[1].split("/")
                if int(den) == 0:
                    raise ExprError("zero denominator", tok[2])
                return RatLit(Fraction(int(num), int(den)))
            return RatLit(Fraction(int(tok[1])))
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ExprError(f"expected an atom, found {tok[1]!r}", tok[2])


def parse_expr(text: str):
    """Parse source text into a syntax tree."""
    return _Parser(text).parse()


# -- printer --------------------------------------------------------------

_LEVEL_ADD = 1
_LEVEL_MUL = 2
_LEVEL_POW = 3
_LEVEL_ATOM = 4


def _fmt(node, parent_level: int) -> str:
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, RatLit):
        v = node.value
        text = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        level = _LEVEL_ATOM
        return text if level >= parent_level else f"({text})"
    if isinstance(node, Pow):
        # the grammar only allows atoms as bases
        if isinstance(node.base, (Sym, RatLit)):
            base = _fmt(node.base, _LEVEL_ATOM)
        else:
            base = "(" + _fmt(node.base, 0) + ")"
        text = f"{base}^{node.exponent}"
        return text if _LEVEL_POW >= parent_level else f"({text})"
    if isinstance(node, BinOp):
        level = _LEVEL_ADD if node.op in "+-" else _LEVEL_MUL
        left = _fmt(node.left, level)
        right = _fmt(node.right, level + 1)       # left associative
        text = f"{left} {node.op} {right}" if level == _LEVEL_ADD else f"{left}{node.op}{right}"
        return text if level >= parent_level else f"({text})"
    raise TypeError(f"not an expression node: {node!r}")


def fmt_expr(node) -> str:
    """Render a tree back to source; parse_expr(fmt_expr(e)) == e."""
    return _fmt(node, 0)


# -- evaluation into the quotient algebra ----------------------------------


def eval_expr(node, pres: APresentation) -> AElement:
    if isinstance(node, Sym):
        return AElement.generator(pres, node.name)
    if isinstance(node, RatLit):
        return AElement.scalar(pres, node.value)
    if isinstance(node, Pow):
        return a_pow(eval_expr(node.base, pres), node.exponent)
    if isinstance(node, BinOp):
        left = eval_expr(node.left, pres)
        right = eval_expr(node.right, pres)
        if node.op == "+":
            return a_add(left, right)
        if node.op == "-":
            return a_sub(left, right)
        return a_mul(left, right)
    raise TypeError(f"not an expression node: {node!r}")


def element_to_expr(x: AElement):
    """Render a normal-form element as a syntax tree in the shared grammar."""
    terms = []
    for key in sorted(x.parts, reverse=True):
        p = x.parts[key]
        for k in range(p.degree(), -1, -1):
            c = as_fraction(p.coeffs[k])
            if c == 0:
                continue
            factors = []
            if abs(c) != 1 or (k == 0 and key == 0):
                factors.append(RatLit(abs(c)))
            if key > 0:
                fe = Sym("f") if key == 1 else Pow(Sym("f"), key)
                factors.append(fe)
            if k > 0:
                te = Sym("theta") if k == 1 else Pow(Sym("theta"), k)
                factors.append(te)
            if key < 0:
                de = Sym("delta") if key == -1 else Pow(Sym("delta"), -key)
                factors.append(de)
            if not factors:
                factors.append(RatLit(abs(c)))
            node = factors[0]
            for fct in factors[1:]:
                node = BinOp("*", node, fct)
            terms.append((c < 0, node))
    if not terms:
        return RatLit(Fraction(0))
    negative, node = terms[0]
    if negative:
        # the grammar has no unary minus; lead with an explicit zero
        node = BinOp("-", RatLit(Fraction(0)), node)
    for negative, term in terms[1:]:
        node = BinOp("-" if negative else "+", node, term)
    return node
