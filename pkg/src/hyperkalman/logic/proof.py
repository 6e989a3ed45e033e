"""Hilbert proof checking for C_w, C_min and C_w+."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .formula import SCHEMAS, SYSTEMS, Formula, Var, match_schema, parse_formula


@dataclass(frozen=True)
class ProofLine:
    """``rule`` is an axiom id, ``"MP"`` or ``"HYP"``.

    For MP, ``refs`` are the 1-based line numbers of the minor premise ``a``
    and the major premise ``a -> b``, in that order.  ``subst`` optionally
    pins the metavariables of an axiom instance.
    """

    formula: Formula
    rule: str
    refs: tuple = ()
    subst: Optional[dict] = field(default=None, compare=False, hash=False)


@dataclass(frozen=True)
class ProofCheck:
    accepted: bool
    bad_line: Optional[int] = None
    reason: str = ""
    conclusion: Optional[Formula] = None


def check_proof(
    lines: Sequence[ProofLine], system: str = "cw", hypotheses: Iterable[Formula] = ()
) -> ProofCheck:
    """Verify each line; stop at the first bad one (1-based line number)."""
    if system not in SYSTEMS:
        raise ValueError(f"system must be one of {sorted(SYSTEMS)}")
    allowed = SYSTEMS[system]
    hyps = set(hypotheses)
    if not lines:
        return ProofCheck(False, None, "empty proof")
    for k, line in enumerate(lines, start=1):
        f, rule = line.formula, line.rule
        if rule == "HYP":
            if f not in hyps:
                return ProofCheck(False, k, "not a hypothesis")
        elif rule == "MP":
            if len(line.refs) != 2:
                return ProofCheck(False, k, "MP needs two references")
            i, j = line.refs
            if not all(isinstance(r, int) and 1 <= r < k for r in (i, j)):
                return ProofCheck(False, k, "MP references must point to earlier lines")
            minor, major = lines[i - 1].formula, lines[j - 1].formula
            if not (major.op == "imp" and major.args[0] is minor and major.args[1] is f):
                return ProofCheck(False, k, f"line {j} is not line {i} -> this line")
        elif rule in SCHEMAS:
            if rule not in allowed:
                return ProofCheck(False, k, f"{rule} is not an axiom of {system}")
            pinned = None
            if line.subst:
                pinned = {Var(mv): val for mv, val in line.subst.items()}
            if match_schema(SCHEMAS[rule], f, pinned) is None:
                return ProofCheck(False, k, f"not an instance of {rule}")
        else:
            return ProofCheck(False, k, f"unknown rule {rule!r}")
    return ProofCheck(True, None, "", lines[-1].formula)


def proof_from_json(items: Sequence[dict]) -> list:
    """Build proof lines from ``[{"formula": ..., "rule": ..., "refs": [...]}, ...]``."""
    out = []
    for k, item in enumerate(items, start=1):
        try:
            formula = parse_formula(item["formula"])
            rule = item["rule"]
        except KeyError as e:
            raise ValueError(f"proof line {k}: missing field {e}") from None
        subst = item.get("subst")
        if subst is not None:
            subst = {mv: parse_formula(v) for mv, v in subst.items()}
        out.append(ProofLine(formula, rule, tuple(item.get("refs", ())), subst))
    return out


def proof_to_json(lines: Sequence[ProofLine]) -> list:
    out = []
    for line in lines:
        item = {"formula": str(line.formula), "rule": line.rule}
        if line.refs:
            item["refs"] = list(line.refs)
        out.append(item)
    return out


def identity_proof(a: Formula) -> list:
    """The five-line derivation of ``a -> a`` from AX1, AX2 and MP."""
    aa = a >> a
    return [
        ProofLine(a >> (aa >> a), "AX1"),
        ProofLine((a >> (aa >> a)) >> ((a >> aa) >> aa), "AX2"),
        ProofLine((a >> aa) >> aa, "MP", (1, 2)),
        ProofLine(a >> aa, "AX1"),
        ProofLine(aa, "MP", (4, 3)),
    ]


def read_battery(text: str) -> list:
    """Parse ``formula  # system`` lines; blank lines and full-line comments are skipped."""
    out = []
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        body, _, system = line.partition("#")
        system = system.strip() or None
        if system is not None and system != "none" and system not in SYSTEMS:
            raise ValueError(f"line {k}: unknown system {system!r}")
        out.append((parse_formula(body), system))
    return out


def axiom_proof(f: Formula, system: str = "cw") -> Optional[list]:
    """A short derivation of ``f``: one axiom line, or the identity proof for ``a -> a``."""
    for name in SYSTEMS[system]:
        if match_schema(SCHEMAS[name], f) is not None:
            return [ProofLine(f, name)]
    if f.op == "imp" and f.args[0] is f.args[1]:
        return identity_proof(f.args[0])
    return None
