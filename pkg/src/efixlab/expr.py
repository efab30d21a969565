"""Arithmetic expressions, intervals and piecewise definitions.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := number | variable | '(' expr ')' | ('min' | 'max') '(' expr ',' expr ')'

Numbers are decimal literals; a rational ``a/b`` is the quotient of two
literals, which IEEE division rounds to the nearest double exactly as a
rational literal would.  The admissible variable names depend on the caller:
``t`` for comparison functions, ``x`` for self-maps, ``x`` and ``y`` for
distances.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence, Union

import numpy as np


class ExprError(ValueError):
    """Raised for malformed expressions; ``column`` is 1-based."""

    def __init__(self, message: str, column: int | None = None, text: str | None = None):
        self.column = column
        self.text = text
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


class GuardedDivisionError(ExprError):
    """A divisor may vanish somewhere on the interval it is evaluated over."""


class PartitionError(ValueError):
    """Pieces leave a gap, overlap, or fall outside the covered interval."""


# --------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: float
    text: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    left: "Node"
    right: "Node"


Node = Union[Num, Var, BinOp, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/(),]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise ExprError(f"unexpected character {text[col - 1]!r}", col, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: frozenset[str]):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            found = tok[1] or "end of input"
            raise ExprError(f"expected {value!r}, found {found!r}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        kind, value, col = self.peek()
        if kind == "num":
            self.take()
            return Num(float(value), value)
        if kind == "name":
            self.take()
            if value in ("min", "max"):
                self.take("(")
                left = self.expr()
                self.take(",")
                right = self.expr()
                self.take(")")
                return Call(value, left, right)
            if value not in self.variables:
                allowed = ", ".join(sorted(self.variables)) or "none"
                raise ExprError(f"unknown name {value!r} (variables: {allowed})", col, self.text)
            return Var(value)
        if value == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ExprError(f"unexpected {value or 'end of input'!r}", col, self.text)


def parse_expr(text: str, variables: Iterable[str] = ("t",)) -> Node:
    if not isinstance(text, str):
        text = repr(text)
    return _Parser(text, frozenset(variables)).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(node: Node) -> str:
    """Canonical source text; ``parse_expr(to_text(n)) == n``."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({to_text(node.left)}, {to_text(node.right)})"
    prec = _PREC[node.op]
    left = to_text(node.left)
    if isinstance(node.left, BinOp) and _PREC[node.left.op] < prec:
        left = f"({left})"
    right = to_text(node.right)
    # the grammar is left-associative: equal precedence on the right needs parens
    if isinstance(node.right, BinOp) and _PREC[node.right.op] <= prec:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def variables_of(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    return variables_of(node.left) | variables_of(node.right)


# -------------------------------------------------------------- evaluation

_SCALAR_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
}


def compile_expr(node: Node, args: Sequence[str], vectorized: bool = False) -> Callable:
    """Build a closure evaluating ``node`` with positional arguments ``args``.

    The vectorized form accepts numpy arrays and performs the same IEEE
    operations element-wise, so scalar and array results agree bit for bit.
    """
    fmin, fmax = (np.minimum, np.maximum) if vectorized else (min, max)
    index = {name: k for k, name in enumerate(args)}

    def build(n: Node) -> Callable:
        if isinstance(n, Num):
            v = n.value
            return lambda env: v
        if isinstance(n, Var):
            k = index[n.name]
            return lambda env: env[k]
        left, right = build(n.left), build(n.right)
        if isinstance(n, Call):
            f = fmin if n.fn == "min" else fmax
            return lambda env: f(left(env), right(env))
        op = _SCALAR_OPS[n.op]
        return lambda env: op(left(env), right(env))

    body = build(node)
    return lambda *env: body(env)


def _mul(a: float, b: float) -> float:
    # interval endpoints: 0 * inf contributes 0
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def interval_eval(node: Node, env: Mapping[str, tuple[float, float]]) -> tuple[float, float]:
    """Enclose the range of ``node`` over the box ``env``.

    Raises GuardedDivisionError if a divisor's enclosure touches zero.
    """
    if isinstance(node, Num):
        return (node.value, node.value)
    if isinstance(node, Var):
        return env[node.name]
    a_lo, a_hi = interval_eval(node.left, env)
    b_lo, b_hi = interval_eval(node.right, env)
    if isinstance(node, Call):
        f = min if node.fn == "min" else max
        return (f(a_lo, b_lo), f(a_hi, b_hi))
    if node.op == "+":
        return (a_lo + b_lo, a_hi + b_hi)
    if node.op == "-":
        return (a_lo - b_hi, a_hi - b_lo)
    if node.op == "/":
        if b_lo <= 0.0 <= b_hi:
            raise GuardedDivisionError(
                f"divisor {to_text(node.right)!r} can vanish on range [{b_lo}, {b_hi}]"
            )
        b_lo, b_hi = 1.0 / b_hi, 1.0 / b_lo
    products = [_mul(a_lo, b_lo), _mul(a_lo, b_hi), _mul(a_hi, b_lo), _mul(a_hi, b_hi)]
    return (min(products), max(products))


# --------------------------------------------------------------- intervals


def _parse_endpoint(text: str) -> float:
    s = text.strip()
    if s in ("inf", "+inf", "oo"):
        return math.inf
    node = parse_expr(s, variables=())
    return float(compile_expr(node, ())())


_INTERVAL = re.compile(r"^\s*([\[(])\s*([^,]+?)\s*,\s*([^,]+?)\s*([\])])\s*$")


@dataclass(frozen=True)
class Interval:
    """A real interval with open or closed ends; ``hi`` may be ``inf``."""

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        if self.hi == math.inf and self.hi_closed:
            object.__setattr__(self, "hi_closed", False)
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise PartitionError(f"empty interval {self}")

    @classmethod
    def parse(cls, text: str) -> "Interval":
        m = _INTERVAL.match(text)
        if m is None:
            raise ExprError(f"malformed interval {text!r}; expected e.g. '[0, 1)'")
        lo = _parse_endpoint(m.group(2))
        hi = _parse_endpoint(m.group(3))
        return cls(lo, hi, m.group(1) == "[", m.group(4) == "]")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, t):
        lo_ok = (t >= self.lo) if self.lo_closed else (t > self.lo)
        hi_ok = (t <= self.hi) if self.hi_closed else (t < self.hi)
        return lo_ok & hi_ok

    def __str__(self) -> str:
        def fmt(v):
            return "inf" if v == math.inf else repr(float(v))

        return (
            f"{'[' if self.lo_closed else '('}{fmt(self.lo)}, {fmt(self.hi)}"
            f"{']' if self.hi_closed else ')'}"
        )


@dataclass(frozen=True)
class Piece:
    interval: Interval
    node: Node
    interval_text: str


class Piecewise:
    """Ordered pieces partitioning ``cover`` exactly, one expression each.

    Every divisor is checked by interval evaluation over the closure of its
    piece, so each expression is finite and continuous on that closure.
    """

    def __init__(self, pieces: Sequence[Piece], cover: Interval, var: str):
        if not pieces:
            raise PartitionError("no pieces given")
        self.pieces = tuple(pieces)
        self.cover = cover
        self.var = var
        self._check_partition()
        for piece in self.pieces:
            iv = piece.interval
            try:
                interval_eval(piece.node, {var: (iv.lo, iv.hi)})
            except GuardedDivisionError as exc:
                raise GuardedDivisionError(f"on piece {piece.interval_text}: {exc}") from None
        self._scalar = [compile_expr(p.node, (var,)) for p in self.pieces]
        self._vector = [compile_expr(p.node, (var,), vectorized=True) for p in self.pieces]

    @classmethod
    def from_text(cls, spec: Sequence[Sequence[str]], cover: Interval, var: str) -> "Piecewise":
        pieces = []
        for item in spec:
            if len(item) != 2:
                raise ExprError(f"piece must be [interval, expression], got {item!r}")
            iv_text, ex_text = str(item[0]), item[1]
            pieces.append(Piece(Interval.parse(iv_text), parse_expr(ex_text, (var,)), iv_text.strip()))
        return cls(pieces, cover, var)

    def _check_partition(self) -> None:
        first, last = self.pieces[0].interval, self.pieces[-1].interval
        cover = self.cover
        if first.lo != cover.lo or first.lo_closed != cover.lo_closed:
            raise PartitionError(f"first piece must start at {cover.lo} (got {self.pieces[0].interval_text})")
        if last.hi != cover.hi or last.hi_closed != cover.hi_closed:
            raise PartitionError(f"last piece must end at {cover.hi} (got {self.pieces[-1].interval_text})")
        for a, b in zip(self.pieces, self.pieces[1:]):
            ia, ib = a.interval, b.interval
            if ia.hi < ib.lo or (ia.hi == ib.lo and not ia.hi_closed and not ib.lo_closed):
                raise PartitionError(f"gap between {a.interval_text} and {b.interval_text}")
            if ia.hi > ib.lo or (ia.hi == ib.lo and ia.hi_closed and ib.lo_closed):
                raise PartitionError(f"overlap between {a.interval_text} and {b.interval_text}")

    def to_spec(self) -> list[list[str]]:
        return [[p.interval_text, to_text(p.node)] for p in self.pieces]

    @property
    def boundaries(self) -> list[float]:
        """Interior points where one piece hands over to the next."""
        return [p.interval.hi for p in self.pieces[:-1]]

    def piece_index(self, t: float) -> int:
        for k, piece in enumerate(self.pieces):
            if piece.interval.contains(t):
                return k
        raise ValueError(f"{t!r} outside {self.cover}")

    def __call__(self, t):
        if np.ndim(t) == 0:
            return self._scalar[self.piece_index(t)](float(t))
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, np.nan)
        for piece, fn in zip(self.pieces, self._vector):
            mask = piece.interval.contains(t)
            if mask.any():
                out[mask] = np.broadcast_to(fn(t[mask]), t[mask].shape)
        if np.isnan(out).any():
            bad = t[np.isnan(out)][0]
            raise ValueError(f"{bad!r} outside {self.cover}")
        return out

    def left_limit(self, b: float) -> float:
        """Limit from the left at ``b``, from the closure of the piece left of ``b``."""
        for k in range(len(self.pieces) - 1, -1, -1):
            iv = self.pieces[k].interval
            if iv.lo < b <= iv.hi:
                return self._scalar[k](float(b))
        raise ValueError(f"no piece to the left of {b!r}")

    def right_limit(self, b: float) -> float:
        """Limit from the right at ``b``, from the closure of the piece right of ``b``."""
        for k, piece in enumerate(self.pieces):
            iv = piece.interval
            if iv.lo <= b < iv.hi:
                return self._scalar[k](float(b))
        raise ValueError(f"no piece to the right of {b!r}")
