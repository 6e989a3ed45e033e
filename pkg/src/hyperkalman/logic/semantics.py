"""Nmatrix semantics: legal valuations, consequence and schema validity.

A matrix is a hyperalgebra with a designated set (the top set unless stated
otherwise); a :class:`~hyperkalman.swap.SwapStructure` is accepted wherever a
matrix is expected.  Valuations are restricted to the subformula closure,
which is complete because every hyperoperation is nonempty-valued, so any
legal partial valuation extends to all formulas.

Search order is fixed: variables range over the domain in index order and a
compound node tries the members of its hyperoperation value from the highest
index down.  The first countermodel found is therefore deterministic.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence, Union

from ..order import Hyperalgebra
from ..swap import SwapStructure
from .formula import SCHEMAS, SYSTEMS, Formula, subformula_closure

OPS = {"and": "meet", "or": "join", "imp": "imp", "not": "neg"}
DEFAULT_BUDGET = 10_000_000

Matrix = Union[Hyperalgebra, SwapStructure]


class BudgetExceeded(RuntimeError):
    """The search needed more branches than the budget allows."""


def default_budget() -> int:
    return int(os.environ.get("HYPERKALMAN_BUDGET", DEFAULT_BUDGET))


def as_matrix(m: Matrix) -> Hyperalgebra:
    return m.algebra if isinstance(m, SwapStructure) else m


@dataclass
class Verdict:
    """``holds`` is the verdict; ``witness`` maps closure formulas to values when it fails."""

    holds: bool
    witness: Optional[dict] = None
    branches: int = 0

    def named(self, labels: Optional[Sequence[str]] = None) -> dict:
        if self.witness is None:
            return {}
        return {
            str(f): (labels[v] if labels is not None else v) for f, v in self.witness.items()
        }


def _candidates(h: Hyperalgebra, f: Formula, values: dict):
    if f.is_var:
        return range(h.n)
    if f.op == "not":
        if h.neg is None:
            raise ValueError("matrix has no negation")
        cell = h.neg[values[f.args[0]]]
    else:
        a, b = f.args
        cell = h.table(OPS[f.op])[values[a]][values[b]]
    return sorted(cell, reverse=True)


def legal_assignments(m: Matrix, formulas: Iterable[Formula]) -> Iterator[dict]:
    """Every legal valuation of the subformula closure, depth first."""
    h = as_matrix(m)
    closure = subformula_closure(formulas)
    values: dict = {}

    def rec(i):
        if i == len(closure):
            yield dict(values)
            return
        f = closure[i]
        for v in _candidates(h, f, values):
            values[f] = v
            yield from rec(i + 1)
        values.pop(f, None)

    yield from rec(0)


def decide_consequence(
    m: Matrix, gamma: Iterable[Formula], phi: Formula, budget: Optional[int] = None
) -> Verdict:
    """Does ``gamma |= phi`` hold in the matrix?  Fails with a countermodel otherwise.

    The search prunes a branch as soon as a premise is undesignated or the
    conclusion is designated.
    """
    h = as_matrix(m)
    budget = default_budget() if budget is None else budget
    gamma = list(gamma)
    premises = set(gamma)
    closure = subformula_closure(gamma + [phi])
    des = h.designated_set
    values: dict = {}
    count = 0

    def rec(i):
        nonlocal count
        if i == len(closure):
            return True
        f = closure[i]
        for v in _candidates(h, f, values):
            count += 1
            if count > budget:
                raise BudgetExceeded(f"consequence search exceeded {budget} branches")
            if f in premises and v not in des:
                continue
            if f is phi and v in des:
                continue
            values[f] = v
            if rec(i + 1):
                return True
        values.pop(f, None)
        return False

    if rec(0):
        return Verdict(False, dict(values), count)
    return Verdict(True, None, count)


def _bits(mask: int) -> list:
    """Set bit positions, highest first."""
    out = []
    while mask:
        top = mask.bit_length() - 1
        out.append(top)
        mask ^= 1 << top
    return out


def _mask(cell: Iterable[int]) -> int:
    out = 0
    for v in cell:
        out |= 1 << v
    return out


class _Lifted:
    """Bitmask tables with memoised set-lifted operations."""

    def __init__(self, h: Hyperalgebra):
        self.h = h
        self.bin = {
            op: [[_mask(c) for c in row] for row in h.table(OPS[op])]
            for op in ("and", "or", "imp")
            if h.table(OPS[op]) is not None
        }
        self.neg = None if h.neg is None else [_mask(c) for c in h.neg]
        self.designated = _mask(h.designated_set)
        self.cache: dict = {}

    def apply(self, op: str, args: tuple) -> int:
        key = (op,) + args
        r = self.cache.get(key)
        if r is None:
            r = 0
            if op == "not":
                if self.neg is None:
                    raise ValueError("matrix has no negation")
                for x in _bits(args[0]):
                    r |= self.neg[x]
            else:
                table = self.bin[op]
                ys = _bits(args[1])
                for x in _bits(args[0]):
                    row = table[x]
                    for y in ys:
                        r |= row[y]
            self.cache[key] = r
        return r


_LIFTED: dict = {}


def _lifted(h: Hyperalgebra) -> _Lifted:
    lifted = _LIFTED.get(h)
    if lifted is None:
        if len(_LIFTED) > 256:
            _LIFTED.clear()
        lifted = _LIFTED[h] = _Lifted(h)
    return lifted


def formula_valid(m: Matrix, phi: Formula, budget: Optional[int] = None) -> Verdict:
    """Is ``phi`` designated under every legal valuation?

    For each assignment of the variables the reachable values of every node
    are propagated as sets.  This is exact for nodes with a single parent
    occurrence; nodes occurring more than once are branched on so that all
    their occurrences share one value.
    """
    h = as_matrix(m)
    L = _lifted(h)
    budget = default_budget() if budget is None else budget
    closure = subformula_closure([phi])
    variables = [f for f in closure if f.is_var]
    compounds = [f for f in closure if not f.is_var]
    uses: dict = {}
    for f in closure:
        for a in f.args:
            uses[a] = uses.get(a, 0) + 1
    shared = {f for f in compounds if uses.get(f, 0) > 1}
    bad = ((1 << h.n) - 1) & ~L.designated
    if not bad:
        return Verdict(True, None, 0)
    masks: dict = {}
    count = 0

    def rec(i):
        nonlocal count
        if i == len(compounds):
            return masks[phi] & bad
        f = compounds[i]
        mask = L.apply(f.op, tuple(masks[a] for a in f.args))
        if f in shared:
            for v in _bits(mask):
                count += 1
                if count > budget:
                    raise BudgetExceeded(f"validity search exceeded {budget} branches")
                masks[f] = 1 << v
                if rec(i + 1):
                    return True
            del masks[f]
            return False
        masks[f] = mask
        return rec(i + 1)

    for assign in product(range(h.n), repeat=len(variables)):
        count += 1
        if count > budget:
            raise BudgetExceeded(f"validity search exceeded {budget} branches")
        for var, v in zip(variables, assign):
            masks[var] = 1 << v
        if rec(0):
            return Verdict(False, _reconstruct(h, closure, shared, masks, phi, bad), count)
    return Verdict(True, None, count)


def _reconstruct(h, closure, shared, masks, phi, bad) -> dict:
    """Pick concrete values top-down from the propagated sets of a failing search state."""
    values = {f: _bits(masks[f])[0] for f in closure if f.is_var or f in shared}
    values[phi] = _bits(masks[phi] & bad)[0]
    for f in reversed(closure):
        if f.is_var or f not in values:
            continue
        v = values[f]
        opts = [[values[a]] if a in values else _bits(masks[a]) for a in f.args]
        for combo in product(*opts):
            if f.op == "not":
                cell = h.neg[combo[0]]
            else:
                cell = h.table(OPS[f.op])[combo[0]][combo[1]]
            if v in cell:
                for a, c in zip(f.args, combo):
                    values.setdefault(a, c)
                break
        else:
            raise AssertionError("propagated sets admit no legal choice")
    return {f: values[f] for f in closure}


def schema_valid(m: Matrix, schema: Union[str, Formula], budget: Optional[int] = None) -> Verdict:
    """Validity of an axiom schema: metavariables range over the whole domain."""
    f = SCHEMAS[schema] if isinstance(schema, str) else schema
    return formula_valid(m, f, budget)


def mp_preserves(m: Matrix) -> Verdict:
    """Designated ``x`` and a designated member of ``x -> y`` force ``y`` designated."""
    h = as_matrix(m)
    des = h.designated_set
    for x in sorted(des):
        for y in range(h.n):
            if y in des:
                continue
            for u in sorted(h.imp[x][y]):
                if u in des:
                    return Verdict(False, {"x": x, "y": y, "x->y": u})
    return Verdict(True)


def battery(m: Matrix, system: str = "cw") -> dict:
    """Per-schema validity for ``system`` plus the MP check (key ``"MP"``)."""
    out = {name: schema_valid(m, name) for name in SYSTEMS[system]}
    out["MP"] = mp_preserves(m)
    return out


def passes_battery(m: Matrix, system: str = "cw") -> bool:
    return all(v.holds for v in battery(m, system).values())
