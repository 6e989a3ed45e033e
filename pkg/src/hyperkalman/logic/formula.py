"""Hash-consed propositional formulas over {&, |, ->, ~}, parsing and printing.

Grammar (loosest first)::

    imp   := or ( "->" imp )?          right associative
    or    := and ( "|" and )*          left associative
    and   := unary ( "&" unary )*      left associative
    unary := "~" unary | atom
    atom  := IDENT | "(" imp ")"
"""
from __future__ import annotations

import re
from typing import Iterable, Optional

BINARY = ("and", "or", "imp")
SYMBOL = {"and": "&", "or": "|", "imp": "->"}
PREC = {"imp": 1, "or": 2, "and": 3, "not": 4, "var": 5}


class Formula:
    """An interned formula node: equal formulas are the same object."""

    __slots__ = ("op", "args", "name", "__weakref__")
    _interned: dict = {}

    def __new__(cls, op: str, args: tuple = (), name: Optional[str] = None):
        key = (op, args, name)
        node = cls._interned.get(key)
        if node is None:
            arity = {"var": 0, "not": 1}.get(op, 2 if op in BINARY else None)
            if arity is None or len(args) != arity or (op == "var") != (name is not None):
                raise ValueError(f"malformed node {op!r} with {len(args)} argument(s)")
            node = object.__new__(cls)
            node.op, node.args, node.name = op, args, name
            cls._interned[key] = node
        return node

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (Formula, (self.op, self.args, self.name))

    def __repr__(self) -> str:
        return f"Formula({format_formula(self)!r})"

    def __str__(self) -> str:
        return format_formula(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Imp(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    @property
    def is_var(self) -> bool:
        return self.op == "var"

    def variables(self) -> list:
        """Variables in order of first (leftmost) occurrence."""
        return [f for f in subformula_closure([self]) if f.is_var]

    def substitute(self, sigma: dict) -> "Formula":
        if self.is_var:
            return sigma.get(self, self)
        return Formula(self.op, tuple(a.substitute(sigma) for a in self.args))


def Var(name: str) -> Formula:
    return Formula("var", (), name)


def Not(a: Formula) -> Formula:
    return Formula("not", (a,))


def And(a: Formula, b: Formula) -> Formula:
    return Formula("and", (a, b))


def Or(a: Formula, b: Formula) -> Formula:
    return Formula("or", (a, b))


def Imp(a: Formula, b: Formula) -> Formula:
    return Formula("imp", (a, b))


def format_formula(f: Formula) -> str:
    if f.op == "var":
        return f.name
    if f.op == "not":
        (a,) = f.args
        inner = format_formula(a)
        return "~" + (inner if PREC[a.op] >= PREC["not"] else f"({inner})")
    a, b = f.args
    p = PREC[f.op]
    left, right = format_formula(a), format_formula(b)
    if PREC[a.op] < p or (f.op == "imp" and PREC[a.op] == p):
        left = f"({left})"
    if PREC[b.op] < p or (f.op != "imp" and PREC[b.op] == p):
        right = f"({right})"
    return f"{left} {SYMBOL[f.op]} {right}"


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"(->)|([~&|()])|([A-Za-z_][A-Za-z0-9_']*)")


def _tokenize(text: str) -> list:
    """``(token, position, is_identifier)`` triples."""
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        tokens.append((m.group(), pos, m.lastindex == 3))
        pos = m.end()
    return tokens


def parse_formula(text: str) -> Formula:
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i][0] if i < len(tokens) else None

    def where():
        return tokens[i][1] if i < len(tokens) else len(text)

    def take(expected=None):
        nonlocal i
        if i >= len(tokens):
            raise ParseError(f"expected {expected or 'a formula'} but input ended", text, len(text))
        tok = tokens[i]
        if expected is not None and tok[0] != expected:
            raise ParseError(f"expected {expected!r}, found {tok[0]!r}", text, tok[1])
        i += 1
        return tok

    def imp():
        left = disj()
        if peek() == "->":
            take()
            return Imp(left, imp())
        return left

    def disj():
        left = conj()
        while peek() == "|":
            take()
            left = Or(left, conj())
        return left

    def conj():
        left = unary()
        while peek() == "&":
            take()
            left = And(left, unary())
        return left

    def unary():
        if peek() == "~":
            take()
            return Not(unary())
        return atom()

    def atom():
        if peek() == "(":
            take()
            inner = imp()
            take(")")
            return inner
        if i < len(tokens) and tokens[i][2]:
            return Var(take()[0])
        if i >= len(tokens):
            raise ParseError("expected a formula but input ended", text, len(text))
        raise ParseError(f"unexpected {peek()!r}", text, where())

    result = imp()
    if i != len(tokens):
        raise ParseError(f"unexpected {peek()!r}", text, where())
    return result


def subformula_closure(formulas: Iterable[Formula]) -> list:
    """All subformulas, children before parents, first-visit order, no duplicates."""
    seen, out = set(), []

    def visit(f):
        if f in seen:
            return
        for a in f.args:
            visit(a)
        seen.add(f)
        out.append(f)

    for f in formulas:
        visit(f)
    return out


def parse_many(text: str, sep: str = ";") -> list:
    return [parse_formula(part) for part in text.split(sep) if part.strip()]


# Axiom schemas; the metavariables are the variables A, B, C.
A, B, C = Var("A"), Var("B"), Var("C")
SCHEMAS = {
    "AX1": A >> (B >> A),
    "AX2": (A >> (B >> C)) >> ((A >> B) >> (A >> C)),
    "AX3": A >> (B >> (A & B)),
    "AX4": (A & B) >> A,
    "AX5": (A & B) >> B,
    "AX6": A >> (A | B),
    "AX7": B >> (A | B),
    "AX8": (A >> C) >> ((B >> C) >> ((A | B) >> C)),
    "EM": A | ~A,
    "cf": ~~A >> A,
    "PL": A | (A >> B),
    "ce": A >> ~~A,
}
CW = ("AX1", "AX2", "AX3", "AX4", "AX5", "AX6", "AX7", "AX8", "EM", "cf")
SYSTEMS = {"cw": CW, "cmin": CW + ("PL",), "cw+": CW + ("ce",)}


def match_schema(schema: Formula, f: Formula, sigma: Optional[dict] = None) -> Optional[dict]:
    """One-sided matching: a substitution of metavariables with ``schema[sigma] == f``, or None."""
    sigma = {} if sigma is None else dict(sigma)

    def go(s, g):
        if s.is_var:
            bound = sigma.get(s)
            if bound is None:
                sigma[s] = g
                return True
            return bound is g
        return s.op == g.op and all(go(a, b) for a, b in zip(s.args, g.args))

    return sigma if go(schema, f) else None


def gn_formula(n: int) -> Formula:
    """Disjunction over ``1 <= i < j <= n+1`` of ``(p_i -> p_j) & (p_j -> p_i)``, left-associated."""
    if n < 1:
        raise ValueError("G_n needs n >= 1")
    p = [None] + [Var(f"p{i}") for i in range(1, n + 2)]
    out = None
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            d = (p[i] >> p[j]) & (p[j] >> p[i])
            out = d if out is None else out | d
    return out
