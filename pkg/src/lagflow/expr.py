"""Closed-form scalar functions of one variable with exact derivatives.

The solution catalog takes user-supplied profile functions (shear profiles
S(eta), rotation rates N(eta), gauge functions phi(eta)) as plain text in a
small grammar::

    expr    :=  term (('+' | '-') term)*
    term    :=  factor (('*' | '/') factor)*
    factor  :=  '-' factor | power
    power   :=  atom ('^' signed-integer)?
    atom    :=  number | 'eta' | fn '(' expr ')' | '(' expr ')'
    fn      :=  exp | ln | sqrt | sin | cos

Exponents are integers only, so every derivative rule stays exact; general
powers are written via exp/ln.  Parsed trees are immutable and structurally
comparable, and ``parse(pretty(tree)) == tree`` for every tree this module
can produce.  Evaluation propagates an order-2 jet (value, first and second
derivative) through the tree, raising :class:`ExprDomainError` instead of
returning NaN or Inf when a quotient, ln or sqrt leaves its domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ExprSyntaxError(ValueError):
    """Malformed input text; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprDomainError(ArithmeticError):
    """Evaluation left the domain (division by zero, ln/sqrt of non-positive)."""


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Add:
    left: "ExprTree"
    right: "ExprTree"


@dataclass(frozen=True)
class Mul:
    left: "ExprTree"
    right: "ExprTree"


@dataclass(frozen=True)
class Div:
    num: "ExprTree"
    den: "ExprTree"


@dataclass(frozen=True)
class Pow:
    base: "ExprTree"
    exponent: int


@dataclass(frozen=True)
class Neg:
    arg: "ExprTree"


@dataclass(frozen=True)
class Call:
    fn: str  # exp | ln | sqrt | sin | cos
    arg: "ExprTree"


ExprTree = Const | Var | Add | Mul | Div | Pow | Neg | Call

_FUNCTIONS = ("exp", "ln", "sqrt", "sin", "cos")


# --------------------------------------------------------------------------
# parsing


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self) -> str:
        c = self.peek()
        if c is None:
            raise ExprSyntaxError("unexpected end of input", self.pos)
        self.pos += 1
        return c

    def expect(self, c: str) -> None:
        got = self.peek()
        if got != c:
            raise ExprSyntaxError(f"expected {c!r}", self.pos)
        self.pos += 1

    def number(self) -> float:
        self._skip_ws()
        start = self.pos
        text = self.text
        while self.pos < len(text) and text[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(text) and text[self.pos] == ".":
            self.pos += 1
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
        if self.pos < len(text) and text[self.pos] in "eE":
            mark = self.pos
            self.pos += 1
            if self.pos < len(text) and text[self.pos] in "+-":
                self.pos += 1
            if self.pos < len(text) and text[self.pos].isdigit():
                while self.pos < len(text) and text[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # not an exponent, e.g. "2*eta"
        token = text[start:self.pos]
        try:
            return float(token)
        except ValueError:
            raise ExprSyntaxError("expected a number", start) from None

    def identifier(self) -> tuple[str, int]:
        self._skip_ws()
        start = self.pos
        text = self.text
        while self.pos < len(text) and (text[self.pos].isalnum() or text[self.pos] == "_"):
            self.pos += 1
        return text[start:self.pos], start

    def integer(self) -> int:
        self._skip_ws()
        start = self.pos
        text = self.text
        if self.pos < len(text) and text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(text) and text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise ExprSyntaxError("expected an integer exponent", start)
        return int(text[start:self.pos])


def parse(text: str) -> ExprTree:
    """Parse ``text`` into an expression tree over the variable ``eta``."""
    tok = _Tokenizer(text)
    tree = _parse_expr(tok)
    if tok.peek() is not None:
        raise ExprSyntaxError("trailing input", tok.pos)
    return tree


def _parse_expr(tok: _Tokenizer) -> ExprTree:
    node = _parse_term(tok)
    while tok.peek() in ("+", "-"):
        op = tok.take()
        rhs = _parse_term(tok)
        node = Add(node, rhs) if op == "+" else Add(node, Neg(rhs))
    return node


def _parse_term(tok: _Tokenizer) -> ExprTree:
    node = _parse_factor(tok)
    while tok.peek() in ("*", "/"):
        op = tok.take()
        rhs = _parse_factor(tok)
        node = Mul(node, rhs) if op == "*" else Div(node, rhs)
    return node


def _parse_factor(tok: _Tokenizer) -> ExprTree:
    if tok.peek() == "-":
        tok.take()
        return Neg(_parse_factor(tok))
    return _parse_power(tok)


def _parse_power(tok: _Tokenizer) -> ExprTree:
    base = _parse_atom(tok)
    if tok.peek() == "^":
        tok.take()
        return Pow(base, tok.integer())
    return base


def _parse_atom(tok: _Tokenizer) -> ExprTree:
    c = tok.peek()
    if c is None:
        raise ExprSyntaxError("unexpected end of input", tok.pos)
    if c.isdigit() or c == ".":
        return Const(tok.number())
    if c.isalpha() or c == "_":
        name, start = tok.identifier()
        if name == "eta":
            return Var()
        if name in _FUNCTIONS:
            tok.expect("(")
            arg = _parse_expr(tok)
            tok.expect(")")
            return Call(name, arg)
        raise ExprSyntaxError(f"unknown identifier {name!r}", start)
    if c == "(":
        tok.take()
        node = _parse_expr(tok)
        tok.expect(")")
        return node
    raise ExprSyntaxError(f"unexpected character {c!r}", tok.pos)


# --------------------------------------------------------------------------
# printing

# precedence levels: Add=1, Mul/Div=2, Neg=3, Pow=4, atoms=5


def _prec(node: ExprTree) -> int:
    if isinstance(node, Add):
        return 1
    if isinstance(node, (Mul, Div)):
        return 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def _fmt_const(v: float) -> str:
    if v == math.floor(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def pretty(node: ExprTree) -> str:
    """Render a tree to text that re-parses to an equal tree."""
    if isinstance(node, Const):
        return _fmt_const(node.value)
    if isinstance(node, Var):
        return "eta"
    if isinstance(node, Add):
        left = pretty(node.left)
        if isinstance(node.right, Neg):
            return f"{left} - {_wrap(node.right.arg, 2)}"
        return f"{left} + {_wrap(node.right, 2)}"
    if isinstance(node, Mul):
        return f"{_wrap(node.left, 2)}*{_wrap(node.right, 3)}"
    if isinstance(node, Div):
        return f"{_wrap(node.num, 2)}/{_wrap(node.den, 3)}"
    if isinstance(node, Neg):
        return f"-{_wrap(node.arg, 3)}"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, 5)}^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.fn}({pretty(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node: ExprTree, min_prec: int) -> str:
    text = pretty(node)
    if _prec(node) < min_prec:
        return f"({text})"
    # negative constants print with a leading '-', same precedence as Neg
    if isinstance(node, Const) and node.value < 0 and min_prec > 1:
        return f"({text})"
    return text


# --------------------------------------------------------------------------
# evaluation

_Jet2 = tuple[float, float, float]


def eval_d2(tree: ExprTree, eta: float) -> _Jet2:
    """Evaluate ``tree`` at ``eta``, returning (value, d/deta, d2/deta2).

    Derivatives are exact (order-2 jet propagation), not finite differences.
    """
    v, d1, d2 = _eval(tree, float(eta))
    return v, d1, d2


def eval_value(tree: ExprTree, eta: float) -> float:
    return _eval(tree, float(eta))[0]


def _eval(node: ExprTree, eta: float) -> _Jet2:
    if isinstance(node, Const):
        return node.value, 0.0, 0.0
    if isinstance(node, Var):
        return eta, 1.0, 0.0
    if isinstance(node, Add):
        a = _eval(node.left, eta)
        b = _eval(node.right, eta)
        return a[0] + b[0], a[1] + b[1], a[2] + b[2]
    if isinstance(node, Neg):
        a = _eval(node.arg, eta)
        return -a[0], -a[1], -a[2]
    if isinstance(node, Mul):
        u, u1, u2 = _eval(node.left, eta)
        v, v1, v2 = _eval(node.right, eta)
        return u * v, u1 * v + u * v1, u2 * v + 2.0 * u1 * v1 + u * v2
    if isinstance(node, Div):
        u, u1, u2 = _eval(node.num, eta)
        v, v1, v2 = _eval(node.den, eta)
        if v == 0.0:
            raise ExprDomainError(f"division by zero at eta={eta}")
        w = u / v
        w1 = (u1 - w * v1) / v
        w2 = (u2 - 2.0 * w1 * v1 - w * v2) / v
        return w, w1, w2
    if isinstance(node, Pow):
        u, u1, u2 = _eval(node.base, eta)
        n = node.exponent
        if n == 0:
            return 1.0, 0.0, 0.0
        if n == 1:
            return u, u1, u2
        if u == 0.0 and n < 0:
            raise ExprDomainError(f"zero raised to negative power at eta={eta}")
        f = u ** n
        fn1 = n * u ** (n - 1)
        fn2 = n * (n - 1) * u ** (n - 2)  # n >= 2 keeps 0^(n-2) well-defined
        return f, fn1 * u1, fn2 * u1 * u1 + fn1 * u2
    if isinstance(node, Call):
        u, u1, u2 = _eval(node.arg, eta)
        if node.fn == "exp":
            f = math.exp(u)
            return f, f * u1, f * (u1 * u1 + u2)
        if node.fn == "ln":
            if u <= 0.0:
                raise ExprDomainError(f"ln of non-positive value {u} at eta={eta}")
            return math.log(u), u1 / u, (u2 * u - u1 * u1) / (u * u)
        if node.fn == "sqrt":
            if u <= 0.0:
                raise ExprDomainError(f"sqrt of non-positive value {u} at eta={eta}")
            f = math.sqrt(u)
            f1 = u1 / (2.0 * f)
            return f, f1, (u2 - 2.0 * f1 * f1) / (2.0 * f)
        if node.fn == "sin":
            s, c = math.sin(u), math.cos(u)
            return s, c * u1, -s * u1 * u1 + c * u2
        if node.fn == "cos":
            s, c = math.sin(u), math.cos(u)
            return c, -s * u1, -c * u1 * u1 - s * u2
        raise TypeError(f"unknown function {node.fn!r}")
    raise TypeError(f"not an expression node: {node!r}")


def is_constant(tree: ExprTree) -> bool:
    """True when the tree does not reference ``eta``."""
    if isinstance(tree, (Const,)):
        return True
    if isinstance(tree, Var):
        return False
    if isinstance(tree, (Add, Mul)):
        return is_constant(tree.left) and is_constant(tree.right)
    if isinstance(tree, Div):
        return is_constant(tree.num) and is_constant(tree.den)
    if isinstance(tree, (Neg,)):
        return is_constant(tree.arg)
    if isinstance(tree, Pow):
        return is_constant(tree.base)
    if isinstance(tree, Call):
        return is_constant(tree.arg)
    raise TypeError(f"not an expression node: {tree!r}")


def as_tree(spec: "ExprTree | str") -> ExprTree:
    """Accept either an already-parsed tree or grammar text."""
    if isinstance(spec, str):
        return parse(spec)
    return spec
