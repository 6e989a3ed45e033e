"""JSON structure files, morphism files and content digests.

Tables are stored by index; labels are presentation only.  Output is
canonical (sorted keys, two-space indent, trailing newline) so that a
structure written and re-read serializes to the same bytes.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Union

from .order import KINDS, Hyperalgebra, Proset, StructureError, canonical_algebra, freeze_table
from .swap import SwapStructure, build_hyper_swap

OP_NAMES = ("meet", "join", "imp")


class FormatError(ValueError):
    """A structure or morphism file is malformed.  ``where`` is a line:col or a JSON path."""

    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.msg = msg
        self.where = where


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _parse(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, f"{source}:{e.lineno}:{e.colno}") from None


def _locate(text: str, key: str) -> str:
    """Line:col of the first occurrence of ``"key"`` in the raw text, for error messages."""
    pos = text.find(f'"{key}"')
    if pos < 0:
        return ""
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return f"{line}:{col}"


# structures --------------------------------------------------------------

def structure_to_dict(h: Hyperalgebra) -> dict:
    ops: dict = {name: [[sorted(c) for c in row] for row in h.table(name)] for name in ("meet", "join")}
    if h.imp is not None:
        ops["imp"] = [[sorted(c) for c in row] for row in h.imp]
    if h.neg is not None:
        ops["neg"] = [sorted(c) for c in h.neg]
    out = {
        "labels": list(h.labels),
        "leq": [list(row) for row in h.leq],
        "ops": ops,
        "kind": h.kind,
    }
    if h.designated is not None:
        out["designated"] = sorted(h.designated)
    return out


def swap_to_dict(s: SwapStructure) -> dict:
    out = structure_to_dict(s.algebra)
    out["snapshots"] = [[z.z1, z.z2] for z in s.elements]
    out["variant"] = s.variant
    out["base"] = structure_to_dict(s.base)
    return out


def _expect(cond: bool, msg: str, where: str) -> None:
    if not cond:
        raise FormatError(msg, where)


def _cells(rows, n: int, name: str, where: str):
    _expect(isinstance(rows, list) and len(rows) == n, f"{name} must be a list of {n} rows", where)
    out = []
    for x, row in enumerate(rows):
        _expect(isinstance(row, list) and len(row) == n, f"{name}[{x}] must have {n} cells", where)
        for y, cell in enumerate(row):
            _expect(
                isinstance(cell, list) and cell and all(isinstance(v, int) and 0 <= v < n for v in cell),
                f"{name}[{x}][{y}] must be a nonempty list of indices below {n}", where,
            )
        out.append(row)
    return freeze_table(out)


def structure_from_dict(d: dict, text: str = "") -> Hyperalgebra:
    where = lambda key: _locate(text, key) or key
    _expect(isinstance(d, dict), "structure must be a JSON object", "$")
    for key in ("labels", "leq"):
        _expect(key in d, f"missing field {key!r}", "$")
    labels = d["labels"]
    _expect(isinstance(labels, list) and labels and all(isinstance(l, str) for l in labels),
            "labels must be a nonempty list of strings", where("labels"))
    n = len(labels)
    leq = d["leq"]
    _expect(isinstance(leq, list) and len(leq) == n
            and all(isinstance(r, list) and len(r) == n and all(isinstance(b, bool) for b in r) for r in leq),
            f"leq must be a {n}x{n} boolean matrix", where("leq"))
    kind = d.get("kind", "IHL")
    _expect(kind in KINDS, f"kind must be one of {list(KINDS)}", where("kind"))
    try:
        p = Proset(tuple(labels), tuple(tuple(r) for r in leq))
        if d.get("canonical"):
            _expect(kind in ("HL", "IHL", "CIHL"), "canonical tables exist only for HL/IHL/CIHL", where("canonical"))
            h = canonical_algebra(p, kind)
        else:
            ops = d.get("ops")
            _expect(isinstance(ops, dict), "ops must be an object (or set \"canonical\": true)", where("ops"))
            for name in ("meet", "join"):
                _expect(name in ops, f"missing table ops.{name}", where("ops"))
            tables = {name: _cells(ops[name], n, name, where(name)) for name in OP_NAMES if name in ops}
            neg = None
            if "neg" in ops:
                raw = ops["neg"]
                _expect(isinstance(raw, list) and len(raw) == n, f"neg must have {n} cells", where("neg"))
                for x, cell in enumerate(raw):
                    _expect(isinstance(cell, list) and cell and all(isinstance(v, int) and 0 <= v < n for v in cell),
                            f"neg[{x}] must be a nonempty list of indices below {n}", where("neg"))
                neg = tuple(frozenset(c) for c in raw)
            h = Hyperalgebra(p, tables["meet"], tables["join"], tables.get("imp"), neg, kind)
        if "designated" in d:
            des = d["designated"]
            _expect(isinstance(des, list) and all(isinstance(v, int) and 0 <= v < n for v in des),
                    "designated must be a list of indices", where("designated"))
            h = h.replace(designated=frozenset(des))
    except StructureError as e:
        raise FormatError(str(e), "$") from None
    return h


def swap_from_dict(d: dict, text: str = "") -> SwapStructure:
    """Rebuild a swap structure from its base and check it against the stored tables."""
    base = structure_from_dict(d["base"], text)
    try:
        s = build_hyper_swap(base, d.get("variant", "cw"))
    except (StructureError, ValueError) as e:
        raise FormatError(str(e), _locate(text, "base") or "base") from None
    if swap_to_dict(s) != {**d, "snapshots": [list(z) for z in d["snapshots"]]}:
        raise FormatError("stored tables disagree with the swap structure of the base", "$")
    return s


def loads_structure(text: str, source: str = "<input>", annex: bool = True) -> Union[Hyperalgebra, SwapStructure]:
    """Parse a structure; with ``annex=False`` a swap file is read as its plain tables."""
    d = _parse(text, source)
    try:
        if annex and isinstance(d, dict) and "snapshots" in d:
            return swap_from_dict(d, text)
        return structure_from_dict(d, text)
    except FormatError as e:
        raise FormatError(e.msg, f"{source}:{e.where}") from None


def load_structure(path: Union[str, Path], annex: bool = True) -> Union[Hyperalgebra, SwapStructure]:
    """Read a structure file; swap structures (with a ``snapshots`` annex) come back as :class:`SwapStructure`."""
    path = Path(path)
    return loads_structure(path.read_text(encoding="utf-8"), str(path), annex)


def proset_to_dict(p: Proset) -> dict:
    return {"labels": list(p.labels), "leq": [list(r) for r in p.leq], "kind": "proset"}


def algebra_of(obj: Union[Hyperalgebra, SwapStructure]) -> Hyperalgebra:
    return obj.algebra if isinstance(obj, SwapStructure) else obj


def to_json(obj: Union[Hyperalgebra, SwapStructure]) -> str:
    return dumps(swap_to_dict(obj) if isinstance(obj, SwapStructure) else structure_to_dict(obj))


def save_structure(obj: Union[Hyperalgebra, SwapStructure], path: Union[str, Path]) -> None:
    Path(path).write_text(to_json(obj), encoding="utf-8")


def digest(h: Hyperalgebra) -> str:
    """sha256 of the canonical serialization of the structure (annex excluded)."""
    return hashlib.sha256(dumps(structure_to_dict(h)).encode("utf-8")).hexdigest()


# morphisms ---------------------------------------------------------------

def morphism_to_dict(m) -> dict:
    return {
        "map": list(m.map),
        "kind": m.kind,
        "source": digest(m.source),
        "target": digest(m.target),
    }


def morphism_from_dict(d: dict, source: Hyperalgebra, target: Hyperalgebra):
    from .functors import Morphism

    for key in ("map", "source", "target"):
        _expect(key in d, f"missing field {key!r}", "$")
    if d["source"] != digest(source):
        raise FormatError("source digest does not match the given structure", "source")
    if d["target"] != digest(target):
        raise FormatError("target digest does not match the given structure", "target")
    try:
        return Morphism(source, target, tuple(d["map"]), d.get("kind", "IHL"))
    except (StructureError, ValueError) as e:
        raise FormatError(str(e), "map") from None


def snapshot_labels(s: SwapStructure) -> list:
    p = s.base.proset
    return [(p.labels[z.z1], p.labels[z.z2]) for z in s.elements]
