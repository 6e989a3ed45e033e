"""Bivaluation semantics for C_min.

A bivaluation is classical on ``&``, ``|``, ``->`` and constrains negation by

* (val 1) ``b(a) = 0`` implies ``b(~a) = 1``;
* (val 2) ``b(~~a) = 1`` implies ``b(a) = 1``.

Only the subformula closure is enumerated.  That suffices: a partial
bivaluation meeting the clauses extends to all formulas by reading every
negation outside the closure classically, which satisfies both clauses.
"""
from __future__ import annotations

from typing import Iterable, Optional

from .formula import Formula, subformula_closure
from .semantics import BudgetExceeded, Verdict, default_budget

_CLASSICAL = {
    "and": lambda a, b: a & b,
    "or": lambda a, b: a | b,
    "imp": lambda a, b: (1 - a) | b,
}


def _options(f: Formula, b: dict) -> tuple:
    if f.is_var:
        return (0, 1)
    if f.op == "not":
        (a,) = f.args
        opts = (1,) if b[a] == 0 else (0, 1)
        if a.op == "not" and b[a.args[0]] == 0:
            opts = tuple(v for v in opts if v == 0)
        return opts
    x, y = f.args
    return (_CLASSICAL[f.op](b[x], b[y]),)


def bival_decide(gamma: Iterable[Formula], phi: Formula, budget: Optional[int] = None) -> Verdict:
    """``gamma |= phi`` over C_min bivaluations, with a counter-bivaluation on failure."""
    budget = default_budget() if budget is None else budget
    gamma = list(gamma)
    premises = set(gamma)
    closure = subformula_closure(gamma + [phi])
    b: dict = {}
    count = 0

    def rec(i):
        nonlocal count
        if i == len(closure):
            return True
        f = closure[i]
        for v in _options(f, b):
            count += 1
            if count > budget:
                raise BudgetExceeded(f"bivaluation search exceeded {budget} branches")
            if (f in premises and v == 0) or (f is phi and v == 1):
                continue
            b[f] = v
            if rec(i + 1):
                return True
        b.pop(f, None)
        return False

    if rec(0):
        return Verdict(False, dict(b), count)
    return Verdict(True, None, count)
