"""Formula AST, concrete syntax, and bounded enumeration.

Concrete syntax::

    formula := impTerm
    impTerm := orTerm (("->" | "->k" | "->l") impTerm)?
    orTerm  := andTerm ("|" andTerm)*
    andTerm := untilTerm ("&" untilTerm)*
    untilTerm := unary (("U" | "W") untilTerm)?
    unary   := ("~" | "F" | "X") unary | atom
    atom    := ident | "true" | "false" | "unk" | "(" formula ")"

Identifiers match ``[a-z][a-z0-9_]*`` and may not be the keywords
``true``, ``false``, ``unk``. Precedence, tightest first: unary
``~ F X``, then ``U``/``W`` (right-associative), then ``&``, then
``|``, then the implications (right-associative). The ``k``/``l``
suffix of ``->k``/``->l`` is case-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

from .errors import ParseError


class Connective(Enum):
    # Definition order is the canonical tag order used for enumeration.
    NEG = "~"
    AND = "&"
    OR = "|"
    IMP = "->"
    IMP_K = "->k"
    IMP_L = "->l"
    F = "F"
    X = "X"
    U = "U"
    W = "W"

    @property
    def arity(self) -> int:
        return 1 if self in (Connective.NEG, Connective.F, Connective.X) else 2


TAG_ORDER = {c: i for i, c in enumerate(Connective)}

# Constant symbols, in canonical enumeration order.
CONST_SYMBOLS = ("true", "false", "unk")


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    value: str

    def __post_init__(self):
        if self.value not in CONST_SYMBOLS:
            raise ValueError(f"unknown constant {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class App:
    conn: Connective
    args: tuple["Formula", ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.conn.arity:
            raise ValueError(
                f"arity violation: {self.conn.value} takes {self.conn.arity} "
                f"argument(s), got {len(self.args)}"
            )

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Var, Const, App]

TRUE = Const("true")
FALSE = Const("false")
UNKNOWN = Const("unk")


@dataclass(frozen=True)
class Signature:
    """Variables, connectives, and the constant policy for enumeration."""

    variables: tuple[str, ...]
    connectives: frozenset[Connective]
    allow_constants: bool = False

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "connectives", frozenset(self.connectives))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("signature variables must be distinct")


# ---------------------------------------------------------------------------
# Parsing

_IDENT_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789_")
_UNARY_TOKENS = {"~": Connective.NEG, "F": Connective.F, "X": Connective.X}
_IMP_TOKENS = {"->": Connective.IMP, "->k": Connective.IMP_K, "->l": Connective.IMP_L}
_UNTIL_TOKENS = {"U": Connective.U, "W": Connective.W}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()~&|":
            tokens.append((ch, i))
            i += 1
        elif ch in "FXUW":
            tokens.append((ch, i))
            i += 1
        elif ch == "-":
            if not text.startswith("->", i):
                raise ParseError("unknown token '-'", i)
            j = i + 2
            if j < n and text[j] in "kKlL" and (j + 1 >= n or text[j + 1] not in _IDENT_CHARS):
                tokens.append(("->" + text[j].lower(), i))
                i = j + 1
            else:
                tokens.append(("->", i))
                i = j
        elif "a" <= ch <= "z":
            j = i + 1
            while j < n and text[j] in _IDENT_CHARS:
                j += 1
            tokens.append((text[i:j], i))
            i = j
        else:
            raise ParseError(f"unknown token {ch!r}", i)
    tokens.append(("", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self) -> str:
        tok = self.tokens[self.pos][0]
        self.pos += 1
        return tok

    def offset(self) -> int:
        return self.tokens[self.pos][1]

    def formula(self) -> Formula:
        left = self.or_term()
        if self.peek() in _IMP_TOKENS:
            conn = _IMP_TOKENS[self.next()]
            return App(conn, (left, self.formula()))
        return left

    def or_term(self) -> Formula:
        left = self.and_term()
        while self.peek() == "|":
            self.next()
            left = App(Connective.OR, (left, self.and_term()))
        return left

    def and_term(self) -> Formula:
        left = self.until_term()
        while self.peek() == "&":
            self.next()
            left = App(Connective.AND, (left, self.until_term()))
        return left

    def until_term(self) -> Formula:
        left = self.unary()
        if self.peek() in _UNTIL_TOKENS:
            conn = _UNTIL_TOKENS[self.next()]
            return App(conn, (left, self.until_term()))
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in _UNARY_TOKENS:
            self.next()
            return App(_UNARY_TOKENS[tok], (self.unary(),))
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.next()
            inner = self.formula()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.offset())
            self.next()
            return inner
        if tok in CONST_SYMBOLS:
            self.next()
            return Const(tok)
        if tok and "a" <= tok[0] <= "z":
            self.next()
            return Var(tok)
        raise ParseError(f"expected a formula, found {tok!r}" if tok else "unexpected end of input",
                         self.offset())


def parse(text: str) -> Formula:
    """Parse concrete syntax into the unique AST under the stated precedence."""
    parser = _Parser(text)
    result = parser.formula()
    if parser.peek() != "":
        raise ParseError(f"trailing input {parser.peek()!r}", parser.offset())
    return result


# ---------------------------------------------------------------------------
# Printing

_LEVEL = {
    Connective.IMP: 0,
    Connective.IMP_K: 0,
    Connective.IMP_L: 0,
    Connective.OR: 1,
    Connective.AND: 2,
    Connective.U: 3,
    Connective.W: 3,
    Connective.NEG: 4,
    Connective.F: 4,
    Connective.X: 4,
}
_RIGHT_ASSOC = {Connective.IMP, Connective.IMP_K, Connective.IMP_L, Connective.U, Connective.W}


def format_formula(f: Formula) -> str:
    """Minimal-parenthesization text that reparses to the same AST."""
    return _fmt(f, 0)


def _fmt(f: Formula, min_level: int) -> str:
    if isinstance(f, (Var, Const)):
        return f.name if isinstance(f, Var) else f.value
    level = _LEVEL[f.conn]
    if f.conn.arity == 1:
        arg = _fmt(f.args[0], level)
        text = "~" + arg if f.conn is Connective.NEG else f"{f.conn.value} {arg}"
    elif f.conn in _RIGHT_ASSOC:
        text = f"{_fmt(f.args[0], level + 1)} {f.conn.value} {_fmt(f.args[1], level)}"
    else:
        text = f"{_fmt(f.args[0], level)} {f.conn.value} {_fmt(f.args[1], level + 1)}"
    return f"({text})" if level < min_level else text


# ---------------------------------------------------------------------------
# Structural metrics

def count_connective(f: Formula, conn: Connective) -> int:
    """Number of App nodes tagged with the given connective."""
    if isinstance(f, App):
        return int(f.conn is conn) + sum(count_connective(a, conn) for a in f.args)
    return 0


def node_count(f: Formula) -> int:
    if isinstance(f, App):
        return 1 + sum(node_count(a) for a in f.args)
    return 1


def formula_variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, App):
        out: set[str] = set()
        for a in f.args:
            out |= formula_variables(a)
        return out
    return set()


def formula_connectives(f: Formula) -> set[Connective]:
    if isinstance(f, App):
        out = {f.conn}
        for a in f.args:
            out |= formula_connectives(a)
        return out
    return set()


# ---------------------------------------------------------------------------
# Enumeration

def _serial_key(f: Formula, var_index: dict[str, int]) -> tuple:
    # Prefix-notation key: variables sort before constants before
    # applications; connectives compare by canonical tag order.
    out: list[tuple[int, int]] = []

    def walk(g: Formula) -> None:
        if isinstance(g, Var):
            out.append((0, var_index[g.name]))
        elif isinstance(g, Const):
            out.append((1, CONST_SYMBOLS.index(g.value)))
        else:
            out.append((2, TAG_ORDER[g.conn]))
            for a in g.args:
                walk(a)

    walk(f)
    return tuple(out)


def enumerate_formulas(sig: Signature, max_nodes: int) -> Iterator[Formula]:
    """Yield every formula over ``sig`` with at most ``max_nodes`` AST nodes.

    Each formula appears exactly once, ordered by node count and then
    lexicographically on the canonical prefix serialization.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be at least 1")
    var_index = {v: i for i, v in enumerate(sig.variables)}
    leaves: list[Formula] = [Var(v) for v in sig.variables]
    if sig.allow_constants:
        leaves.extend(Const(c) for c in CONST_SYMBOLS)
    unary = sorted((c for c in sig.connectives if c.arity == 1), key=TAG_ORDER.get)
    binary = sorted((c for c in sig.connectives if c.arity == 2), key=TAG_ORDER.get)

    by_size: dict[int, list[Formula]] = {1: leaves}
    for n in range(1, max_nodes + 1):
        if n > 1:
            forms: list[Formula] = []
            for c in unary:
                forms.extend(App(c, (g,)) for g in by_size[n - 1])
            for c in binary:
                for i in range(1, n - 1):
                    forms.extend(
                        App(c, (a, b))
                        for a in by_size[i]
                        for b in by_size[n - 1 - i]
                    )
            by_size[n] = forms
        yield from sorted(by_size[n], key=lambda g: _serial_key(g, var_index))


def count_formulas(sig: Signature, max_nodes: int) -> int:
    """Closed-form census of the enumeration, for cross-checking."""
    leaf_count = len(sig.variables) + (len(CONST_SYMBOLS) if sig.allow_constants else 0)
    n_unary = sum(1 for c in sig.connectives if c.arity == 1)
    n_binary = sum(1 for c in sig.connectives if c.arity == 2)
    per_size = [0, leaf_count]
    for n in range(2, max_nodes + 1):
        total = n_unary * per_size[n - 1]
        total += n_binary * sum(per_size[i] * per_size[n - 1 - i] for i in range(1, n - 1))
        per_size.append(total)
    return sum(per_size[1 : max_nodes + 1])
