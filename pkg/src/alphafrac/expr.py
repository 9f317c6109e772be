"""Expression trees for real functions of one variable ``t``.

Text is parsed with a small recursive-descent parser::

    expr    := term (("+"|"-") term)*
    term    := factor (("*"|"/") factor)*
    factor  := "-" factor | power
    power   := atom ("^" factor)?
    atom    := NUMBER | "t" | "pi" | "e" | FUNC "(" expr ")" | "(" expr ")"
    FUNC    := "sin" | "cos" | "exp" | "ln" | "sqrt" | "abs"

Trees are immutable and compare structurally.  The parser builds them
verbatim; the lower-case builders (:func:`add`, :func:`mul`, ...) fold
constants and drop neutral elements, and are what the differentiators use.

>>> f = parse("t^2*sin(t)")
>>> render(diff_classical(f))
'2*t*sin(t)+t^2*cos(t)'
>>> evaluate(f, 0.0)
0.0
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError, NotDifferentiable, ParseError

__all__ = [
    "Expr", "Const", "Var", "Unary", "Binary", "T",
    "FUNCTIONS", "parse", "render", "evaluate", "compile_expr", "as_function",
    "diff_classical", "nth_diff", "substitute", "is_constant",
    "const", "add", "sub", "mul", "div", "power", "neg", "call",
]

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt", "abs")
UNARY_OPS = ("neg",) + FUNCTIONS
BINARY_OPS = ("add", "sub", "mul", "div", "pow")
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}
_NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}


class Expr:
    """Base of the node classes.  Arithmetic operators build folded trees."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, _lift(other))

    def __radd__(self, other):
        return add(_lift(other), self)

    def __sub__(self, other):
        return sub(self, _lift(other))

    def __rsub__(self, other):
        return sub(_lift(other), self)

    def __mul__(self, other):
        return mul(self, _lift(other))

    def __rmul__(self, other):
        return mul(_lift(other), self)

    def __truediv__(self, other):
        return div(self, _lift(other))

    def __rtruediv__(self, other):
        return div(_lift(other), self)

    def __pow__(self, other):
        return power(self, _lift(other))

    def __rpow__(self, other):
        return power(_lift(other), self)

    def __neg__(self):
        return neg(self)

    def __str__(self):
        return render(self)


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True, eq=True)
class Var(Expr):
    """The independent variable ``t``."""


@dataclass(frozen=True, eq=True)
class Unary(Expr):
    op: str
    arg: Expr

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary op {self.op!r}")


@dataclass(frozen=True, eq=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary op {self.op!r}")


T = Var()

ExprLike = Union[Expr, str, float, int]


def _lift(x: ExprLike) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, str):
        return parse(x)
    return Const(x)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<starstar>\*\*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "number", "ident", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "starstar":
            raise ParseError(pos, "'**' is not an operator, use '^'")
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def peek(self, offset: int = 1) -> _Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(self.tok.pos, f"expected {text!r}, found {self._describe()}")
        self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            raise ParseError(self.tok.pos, "empty expression")
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, f"unexpected {self._describe()}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = "add" if self.advance().text == "+" else "sub"
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = "mul" if self.advance().text == "*" else "div"
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            # "-2" is a negative literal unless it is the base of a power
            nxt = self.peek()
            if self.tok.kind == "number" and not (nxt.kind == "op" and nxt.text == "^"):
                return Const(-float(self.advance().text))
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return Binary("pow", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "t":
                return T
            if tok.text in _NAMED_CONSTANTS:
                return Const(_NAMED_CONSTANTS[tok.text])
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Unary(tok.text, arg)
            raise ParseError(tok.pos, f"unknown identifier {tok.text!r}")
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(tok.pos, f"unexpected {self._describe()}")


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# rendering

_ATOM = 5


def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return {"add": 1, "sub": 1, "mul": 2, "div": 2, "pow": 4}[e.op]
    if isinstance(e, Unary) and e.op == "neg":
        return 3
    if isinstance(e, Const) and math.copysign(1.0, e.value) < 0 and e.value != 0:
        return 3
    return _ATOM


def _number(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot render non-finite constant {x!r}")
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def render(e: Expr) -> str:
    """Render with the fewest parentheses that re-parse to the same tree."""
    if isinstance(e, Const):
        return _number(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Unary):
        if e.op != "neg":
            return f"{e.op}({render(e.arg)})"
        inner = render(e.arg)
        if isinstance(e.arg, Const) and _prec(e.arg) == _ATOM:
            return f"-({inner})"
        return "-" + (inner if _prec(e.arg) >= 3 else f"({inner})")
    p = _prec(e)
    left, right = render(e.left), render(e.right)
    if e.op == "pow":
        if _prec(e.left) != _ATOM:
            left = f"({left})"
        if _prec(e.right) < 3:
            right = f"({right})"
    else:
        if _prec(e.left) < p:
            left = f"({left})"
        if _prec(e.right) <= p:
            right = f"({right})"
    return f"{left}{_SYMBOL[e.op]}{right}"


# ---------------------------------------------------------------------------
# evaluation


def _pow(x: float, y: float) -> float:
    if y.is_integer():
        if x == 0.0 and y < 0:
            raise DomainError("zero raised to a negative power")
        return x ** y
    if x > 0.0:
        return x ** y
    if x == 0.0 and y > 0:
        return 0.0
    raise DomainError(f"non-integer power {y!r} of non-positive base {x!r}")


def _ln(x: float) -> float:
    if x <= 0.0:
        raise DomainError(f"ln of non-positive argument {x!r}")
    return math.log(x)


def _sqrt(x: float) -> float:
    if x < 0.0:
        raise DomainError(f"sqrt of negative argument {x!r}")
    return math.sqrt(x)


def _div(x: float, y: float) -> float:
    if y == 0.0:
        raise DomainError("division by zero")
    return x / y


_UNARY_FN: dict[str, Callable[[float], float]] = {
    "neg": lambda x: -x,
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "ln": _ln,
    "sqrt": _sqrt,
    "abs": abs,
}

_BINARY_FN: dict[str, Callable[[float, float], float]] = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": _div,
    "pow": _pow,
}


def _build(e: Expr) -> Callable[[float], float]:
    if isinstance(e, Const):
        v = e.value
        return lambda t: v
    if isinstance(e, Var):
        return lambda t: t
    if isinstance(e, Unary):
        fn, arg = _UNARY_FN[e.op], _build(e.arg)
        return lambda t: fn(arg(t))
    fn, lhs, rhs = _BINARY_FN[e.op], _build(e.left), _build(e.right)
    return lambda t: fn(lhs(t), rhs(t))


@functools.lru_cache(maxsize=512)
def compile_expr(e: Expr) -> Callable[[float], float]:
    """Return a plain ``float -> float`` callable for ``e``.

    Domain violations and overflow surface as :class:`DomainError`.
    """
    inner = _build(e)

    def f(t: float) -> float:
        try:
            return inner(float(t))
        except OverflowError as exc:
            raise DomainError(f"overflow evaluating {render(e)} at t={t!r}") from exc

    return f


def evaluate(e: Expr, t: float) -> float:
    return compile_expr(e)(t)


def as_function(f) -> Callable[[float], float]:
    """Accept an :class:`Expr`, expression text, or a callable."""
    if isinstance(f, str):
        f = parse(f)
    if isinstance(f, Expr):
        return compile_expr(f)
    if callable(f):
        return f
    raise TypeError(f"cannot use {type(f).__name__} as a function of t")


# ---------------------------------------------------------------------------
# folding builders


def _fold(fn, *args: float) -> Expr | None:
    try:
        v = fn(*args)
    except (DomainError, OverflowError, ZeroDivisionError):
        return None
    if isinstance(v, complex) or not math.isfinite(v):
        return None
    return Const(v)


def _is(e: Expr, value: float) -> bool:
    return isinstance(e, Const) and e.value == value


def const(x: float) -> Const:
    return Const(x)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return _fold(_BINARY_FN["add"], a.value, b.value) or Binary("add", a, b)
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    if isinstance(b, Unary) and b.op == "neg":
        return sub(a, b.arg)
    return Binary("add", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return _fold(_BINARY_FN["sub"], a.value, b.value) or Binary("sub", a, b)
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return neg(b)
    if isinstance(b, Unary) and b.op == "neg":
        return add(a, b.arg)
    return Binary("sub", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return _fold(_BINARY_FN["mul"], a.value, b.value) or Binary("mul", a, b)
    if _is(a, 0.0) or _is(b, 0.0):
        return Const(0.0)
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    if _is(a, -1.0):
        return neg(b)
    if _is(b, -1.0):
        return neg(a)
    if isinstance(b, Const):
        a, b = b, a
    if isinstance(a, Const) and isinstance(b, Binary) and b.op == "mul" and isinstance(b.left, Const):
        return mul(mul(a, b.left), b.right)
    return Binary("mul", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return _fold(_BINARY_FN["div"], a.value, b.value) or Binary("div", a, b)
    if _is(b, 1.0):
        return a
    if _is(a, 0.0) and not _is(b, 0.0):
        return Const(0.0)
    return Binary("div", a, b)


def power(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return _fold(_BINARY_FN["pow"], a.value, b.value) or Binary("pow", a, b)
    if _is(b, 1.0):
        return a
    if _is(b, 0.0) or _is(a, 1.0):
        return Const(1.0)
    return Binary("pow", a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Unary) and a.op == "neg":
        return a.arg
    return Unary("neg", a)


def call(name: str, a: Expr) -> Expr:
    if isinstance(a, Const):
        folded = _fold(_UNARY_FN[name], a.value)
        if folded is not None:
            return folded
    return Unary(name, a)


# ---------------------------------------------------------------------------
# structure helpers


def is_constant(e: Expr) -> bool:
    """True when ``e`` does not depend on ``t``."""
    if isinstance(e, Var):
        return False
    if isinstance(e, Const):
        return True
    if isinstance(e, Unary):
        return is_constant(e.arg)
    return is_constant(e.left) and is_constant(e.right)


def substitute(e: Expr, inner: Expr) -> Expr:
    """Replace every ``t`` in ``e`` by ``inner`` (builds ``e o inner``)."""
    if isinstance(e, Var):
        return inner
    if isinstance(e, Const):
        return e
    if isinstance(e, Unary):
        return Unary(e.op, substitute(e.arg, inner))
    return Binary(e.op, substitute(e.left, inner), substitute(e.right, inner))


# ---------------------------------------------------------------------------
# classical differentiation


def outer_derivative(op: str, u: Expr) -> Expr:
    """d/du of the unary function ``op`` evaluated at ``u``."""
    if op == "neg":
        return Const(-1.0)
    if op == "sin":
        return call("cos", u)
    if op == "cos":
        return neg(call("sin", u))
    if op == "exp":
        return call("exp", u)
    if op == "ln":
        return div(Const(1.0), u)
    if op == "sqrt":
        return div(Const(1.0), mul(Const(2.0), call("sqrt", u)))
    raise NotDifferentiable(f"{op} has no symbolic derivative")


def diff_classical(e: Expr) -> Expr:
    """d/dt of ``e`` by the usual rules, constant-folded."""
    if isinstance(e, Const):
        return Const(0.0)
    if isinstance(e, Var):
        return Const(1.0)
    if isinstance(e, Unary):
        if e.op == "abs":
            raise NotDifferentiable("abs is not differentiable at its kink")
        du = diff_classical(e.arg)
        if e.op == "neg":
            return neg(du)
        return mul(outer_derivative(e.op, e.arg), du)
    u, v = e.left, e.right
    if e.op in ("add", "sub"):
        du, dv = diff_classical(u), diff_classical(v)
        return add(du, dv) if e.op == "add" else sub(du, dv)
    if e.op == "mul":
        return add(mul(diff_classical(u), v), mul(u, diff_classical(v)))
    if e.op == "div":
        num = sub(mul(diff_classical(u), v), mul(u, diff_classical(v)))
        return div(num, power(v, Const(2.0)))
    # pow
    if is_constant(v):
        c = v.value if isinstance(v, Const) else None
        exponent = Const(c - 1.0) if c is not None else sub(v, Const(1.0))
        return mul(mul(v, power(u, exponent)), diff_classical(u))
    if is_constant(u):
        return mul(mul(call("ln", u), e), diff_classical(v))
    # u^v = exp(v ln u)
    inner = add(mul(diff_classical(v), call("ln", u)), div(mul(v, diff_classical(u)), u))
    return mul(e, inner)


def nth_diff(e: Expr, n: int) -> Expr:
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(n):
        e = diff_classical(e)
    return e
