"""The Gödel-style matrix on the naturals, via exact finite truncation, and the G_n family.

``{0..N}`` is closed under all four operations once ``N >= 2``: ``|`` and ``&``
return an argument, ``->`` returns 0 or its second argument and ``~`` returns
0, 1 or 2.  Evaluating inside the truncation is therefore exact.  Validity
verdicts from :func:`audit_axioms` cover assignments valued ``<= N``;
invalidity witnesses are conclusive for the infinite matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .logic.formula import SCHEMAS, SYSTEMS, Formula, Var, format_formula, gn_formula
from .logic.semantics import Matrix, as_matrix, formula_valid, passes_battery
from .report import Report

DESIGNATED = frozenset({0, 1})
DEFAULT_BOUND = 8


def godel_apply(op: str, *args: int, bound: Optional[int] = None) -> int:
    for a in args:
        if a < 0 or (bound is not None and a > bound):
            raise ValueError(f"argument {a} outside the domain 0..{bound if bound is not None else 'inf'}")
    if op == "or":
        return min(args)
    if op == "and":
        return max(args)
    if op == "imp":
        x, y = args
        return 0 if x >= y else y
    if op == "not":
        (x,) = args
        return 0 if x == 0 else 2 if x == 1 else 1
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class GodelMatrix:
    bound: int = DEFAULT_BOUND
    designated: frozenset = field(default=DESIGNATED)

    def __post_init__(self):
        if self.bound < 2:
            raise ValueError("the truncation is closed only for bound >= 2")

    @property
    def domain(self) -> range:
        return range(self.bound + 1)

    def apply(self, op: str, *args: int) -> int:
        return godel_apply(op, *args, bound=self.bound)

    def evaluate(self, f: Formula, v: dict) -> int:
        memo: dict = {}

        def ev(g):
            r = memo.get(g)
            if r is None:
                if g.is_var:
                    if g not in v and g.name not in v:
                        raise KeyError(f"no value for variable {g.name}")
                    r = v[g] if g in v else v[g.name]
                    if not 0 <= r <= self.bound:
                        raise ValueError(f"value {r} of {g.name} exceeds the bound {self.bound}")
                else:
                    r = self.apply(g.op, *(ev(a) for a in g.args))
                memo[g] = r
            return r

        return ev(f)


def godel_eval(f: Formula, v: dict, bound: int = DEFAULT_BOUND) -> int:
    return GodelMatrix(bound).evaluate(f, v)


def gn_value(n: int, bound: Optional[int] = None) -> tuple:
    """``(value, bound used)`` of G_n under ``v(p_i) = i``; the bound grows to ``n + 1`` if needed."""
    b = max(bound or DEFAULT_BOUND, n + 1)
    v = {f"p{i}": i for i in range(1, n + 2)}
    return godel_eval(gn_formula(n), v, b), b


@dataclass
class AxiomAudit:
    schema: str
    valid: bool
    witness: Optional[dict] = None
    value: Optional[int] = None

    def to_dict(self) -> dict:
        return {"schema": self.schema, "valid": self.valid, "witness": self.witness, "value": self.value}


def audit_schema(name: str, bound: int = DEFAULT_BOUND) -> AxiomAudit:
    m = GodelMatrix(bound)
    f = SCHEMAS[name]
    mvars = f.variables()
    for assign in product(m.domain, repeat=len(mvars)):
        v = dict(zip(mvars, assign))
        val = m.evaluate(f, v)
        if val not in m.designated:
            return AxiomAudit(name, False, {x.name: a for x, a in v.items()}, val)
    return AxiomAudit(name, True)


def audit_axioms(bound: int = DEFAULT_BOUND, system: str = "cw+") -> dict:
    """Per-schema verdicts in the truncation, each invalid one with its least witness."""
    return {name: audit_schema(name, bound) for name in SYSTEMS[system]}


def mp_preserved(bound: int) -> Optional[tuple]:
    """First ``(x, y)`` with ``x`` and ``x -> y`` designated but ``y`` not, or None."""
    m = GodelMatrix(bound)
    for x, y in product(m.domain, repeat=2):
        if x in m.designated and m.apply("imp", x, y) in m.designated and y not in m.designated:
            return x, y
    return None


def audit_report(bound: int = DEFAULT_BOUND, gn: int = DEFAULT_BOUND, system: str = "cw+") -> dict:
    """JSON-ready audit: per-axiom verdicts plus the G_n value table."""
    audits = audit_axioms(bound, system)
    table = []
    for n in range(1, gn + 1):
        val, used = gn_value(n, bound)
        table.append({"n": n, "value": val, "designated": val in DESIGNATED, "bound": used})
    return {
        "bound": bound,
        "system": system,
        "designated": sorted(DESIGNATED),
        "axioms": {k: a.to_dict() for k, a in audits.items()},
        "mp_counterexample": mp_preserved(bound),
        "paraconsistency": {"0 designated": 0 in DESIGNATED, "~0": godel_apply("not", 0)},
        "gn": table,
        "note": (
            f"validity verdicts hold for all assignments valued <= {bound}; "
            "invalidity witnesses hold in the infinite matrix"
        ),
    }


@dataclass
class PigeonholeReport:
    n: int
    formula: str
    valid: bool
    witness: Optional[dict] = None
    battery_ok: Optional[bool] = None


def pigeonhole_check(m: Matrix, strict: bool = False) -> PigeonholeReport:
    """G_n is valid in a matrix with ``n`` elements modelling C_w+.

    With ``strict`` the C_w+ battery is checked first and the report refuses
    to judge G_n when it fails.
    """
    h = as_matrix(m)
    n = h.n
    f = gn_formula(n)
    battery_ok = None
    if strict:
        battery_ok = passes_battery(h, "cw+")
        if not battery_ok:
            return PigeonholeReport(n, format_formula(f), False, None, False)
    verdict = formula_valid(h, f)
    witness = None if verdict.holds else {str(k): h.labels[v] for k, v in verdict.witness.items() if k.is_var}
    return PigeonholeReport(n, format_formula(f), verdict.holds, witness, battery_ok)


def uncharacterizability_evidence(candidates, gn_max: int = DEFAULT_BOUND) -> Report:
    """Each battery-passing candidate of size n validates G_n, while no G_n is valid in M_G."""
    rep = Report("uncharacterizability", ["finite-validates-Gn", "MG-refutes-Gn"])
    for k, m in enumerate(candidates):
        h = as_matrix(m)
        if passes_battery(h, "cw+"):
            r = pigeonhole_check(h)
            if not r.valid:
                rep.fail("finite-validates-Gn", (k,), f"G_{r.n} refuted by {r.witness}")
    for n in range(1, gn_max + 1):
        val, _ = gn_value(n)
        if val in DESIGNATED:
            rep.fail("MG-refutes-Gn", (n,), f"v(G_{n}) = {val} is designated")
    return rep
