"""Command line interface.

Exit codes: 0 every check passed, 1 a check failed (a witness is printed),
2 usage or parse error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .functors import phi, psi, verify_isomorphism
from .godel import audit_report
from .hcalg import BASE_VERIFIERS, quotient, verify_enriched
from .logic import (
    BudgetExceeded,
    ParseError,
    bival_decide,
    check_proof,
    decide_consequence,
    parse_formula,
    parse_many,
    proof_from_json,
)
from .order import (
    Proset,
    StructureError,
    dedupe_isomorphic,
    enumerate_structures,
    to_dot,
    verify_cihl,
    verify_hyperlattice,
    verify_ihl,
)
from .report import Report
from .swap import build_hyper_swap

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3

VERIFIERS = {
    "hl": verify_hyperlattice,
    "ihl": verify_ihl,
    "cihl": verify_cihl,
    "hcw": BASE_VERIFIERS["cw"],
    "hcmin": BASE_VERIFIERS["cmin"],
    "hcw+": BASE_VERIFIERS["cw+"],
    "ehcw": lambda h: verify_enriched(h, "cw"),
    "ehcmin": lambda h: verify_enriched(h, "cmin"),
    "ehcw+": lambda h: verify_enriched(h, "cw+"),
}
FILE_KINDS = {
    "HL": "hl", "IHL": "ihl", "CIHL": "cihl", "HCwA": "hcw", "HCminA": "hcmin",
    "HCw+A": "hcw+", "EHCwA": "ehcw",
}
VARIANTS = ("cw", "cmin", "cw+")


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(io.dumps(payload))
    else:
        print(text)


def _load(path: str, annex: bool = False):
    try:
        return io.load_structure(path, annex=annex)
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _load_proset(path: str) -> Proset:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    d = json.loads(text)
    if isinstance(d, dict) and d.get("kind") == "proset":
        try:
            return Proset(tuple(d["labels"]), tuple(tuple(r) for r in d["leq"]))
        except (KeyError, TypeError, StructureError) as e:
            raise io.FormatError(str(e), path) from None
    return io.loads_structure(text, path, annex=False).proset


def _formulas(text: str, what: str) -> list:
    try:
        return parse_many(text, ";") if text.strip() else []
    except ParseError as e:
        raise UsageError(f"{what}: {e}") from None


def _report_exit(args, rep: Report, labels, extra: Optional[dict] = None) -> int:
    payload = rep.to_dict(labels)
    if extra:
        payload.update(extra)
    _emit(args, payload, rep.render(labels))
    return OK if rep.ok else FAILED


# subcommands --------------------------------------------------------------

def cmd_verify(args) -> int:
    h = _load(args.file)
    kind = args.kind or FILE_KINDS.get(h.kind, "ihl")
    if kind not in VERIFIERS:
        raise UsageError(f"--kind must be one of {sorted(VERIFIERS)}")
    return _report_exit(args, VERIFIERS[kind](h), h.labels, {"kind": kind})


def cmd_build_swap(args) -> int:
    base = _load(args.file)
    try:
        s = build_hyper_swap(base, args.variant, allow_large=args.allow_large)
    except StructureError as e:
        _emit(args, {"ok": False, "stage": "base", "error": str(e)}, f"build-swap: FAIL\n  {e}")
        return FAILED
    text = io.to_json(s)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    summary = {
        "ok": True,
        "variant": args.variant,
        "elements": s.n,
        "designated": len(s.designated),
        "out": args.out,
    }
    if args.out or args.json:
        _emit(args, summary, f"S(L) [{args.variant}]: {s.n} elements, {len(s.designated)} designated")
    else:
        sys.stdout.write(text)
    return OK


def cmd_quotient(args) -> int:
    h = _load(args.file)
    rep = verify_enriched(h, args.variant)
    if not rep.ok:
        return _report_exit(args, rep, h.labels, {"stage": "enrichment"})
    res = quotient(h, args.variant)
    doc = {"structure": io.structure_to_dict(res.quotient), **res.to_dict()}
    text = io.dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        _emit(args, {"ok": True, "classes": len(res.classes), "out": args.out},
              f"U(A): {len(res.classes)} classes written to {args.out}")
    else:
        sys.stdout.write(text)
    return OK


def _stage_fail(args, stage: str, rep: Report, labels) -> int:
    payload = {"ok": False, "stage": stage, "report": rep.to_dict(labels)}
    _emit(args, payload, f"equiv: FAIL at stage {stage}\n" + rep.render(labels))
    return FAILED


def cmd_equiv(args) -> int:
    h = _load(args.file)
    v = args.variant
    stages = []
    if h.neg is None:
        base_rep = verify_cihl(h) if v == "cmin" else verify_ihl(h)
        if not base_rep.ok:
            return _stage_fail(args, "base", base_rep, h.labels)
        stages.append("base")
        s = build_hyper_swap(h, v)
        stages.append("swap")
        rep = verify_enriched(s.algebra, v)
        if not rep.ok:
            return _stage_fail(args, "enrichment", rep, s.algebra.labels)
        stages.append("enrichment")
        rep = verify_isomorphism(phi(h, v))
        if not rep.ok:
            return _stage_fail(args, "phi-iso", rep, h.labels)
        stages += ["quotient", "phi-iso"]
        size = (h.n, s.n)
    else:
        rep = verify_enriched(h, v)
        if not rep.ok:
            return _stage_fail(args, "enrichment", rep, h.labels)
        stages.append("enrichment")
        rep = verify_isomorphism(psi(h, v))
        if not rep.ok:
            return _stage_fail(args, "psi-iso", rep, h.labels)
        stages += ["quotient", "swap", "psi-iso"]
        size = (h.n, None)
    _emit(args, {"ok": True, "stages": stages, "sizes": list(size)},
          "equiv: PASS\n" + "\n".join(f"  {st:<10} ok" for st in stages))
    return OK


def cmd_decide(args) -> int:
    gamma = _formulas(args.gamma or "", "--gamma")
    try:
        target = parse_formula(args.phi)
    except ParseError as e:
        raise UsageError(f"--phi: {e}") from None
    budget = args.budget
    if args.semantics == "bival":
        verdict = bival_decide(gamma, target, budget)
        labels = None
    else:
        if not args.structure:
            raise UsageError("--structure is required for matrix semantics")
        h = _load(args.structure)
        verdict = decide_consequence(h, gamma, target, budget)
        labels = h.labels
    witness = verdict.named(labels)
    payload = {"holds": verdict.holds, "witness": witness or None, "branches": verdict.branches}
    text = "holds" if verdict.holds else "fails\n" + "\n".join(f"  v({k}) = {w}" for k, w in witness.items())
    _emit(args, payload, text)
    return OK if verdict.holds else FAILED


def cmd_prove(args) -> int:
    try:
        items = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except OSError as e:
        raise UsageError(f"{args.file}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise io.FormatError(e.msg, f"{args.file}:{e.lineno}:{e.colno}") from None
    if not isinstance(items, list):
        raise io.FormatError("proof must be a JSON list", args.file)
    try:
        lines = proof_from_json(items)
    except ParseError as e:
        raise UsageError(f"{args.file}: {e}") from None
    hyps = _formulas(args.hyp or "", "--hyp")
    res = check_proof(lines, args.system, hyps)
    payload = {
        "accepted": res.accepted,
        "bad_line": res.bad_line,
        "reason": res.reason,
        "conclusion": None if res.conclusion is None else str(res.conclusion),
        "system": args.system,
    }
    if res.accepted:
        text = f"accepted in {args.system}: {res.conclusion}"
    else:
        text = f"rejected at line {res.bad_line}: {res.reason}"
    _emit(args, payload, text)
    return OK if res.accepted else FAILED


def cmd_godel(args) -> int:
    rep = audit_report(args.bound, args.gn, args.system)
    checks = {
        "gn-undesignated": all(not row["designated"] for row in rep["gn"]),
        "mp-preserved": rep["mp_counterexample"] is None,
        "paraconsistent": rep["paraconsistency"]["0 designated"] and rep["paraconsistency"]["~0"] == 0,
    }
    rep["checks"] = checks
    sys.stdout.write(io.dumps(rep))
    return OK if all(checks.values()) else FAILED


def cmd_enumerate(args) -> int:
    kind = {"ihl": "IHL", "cihl": "CIHL", "hl": "hyperlattice"}.get(args.kind, args.kind)
    try:
        items = list(enumerate_structures(kind, args.size, bound=max(args.size, 4)))
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.dedupe:
        items = dedupe_isomorphic(items)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, s in enumerate(items):
            doc = io.proset_to_dict(s) if isinstance(s, Proset) else io.structure_to_dict(s)
            (out / f"{args.kind}-{args.size}-{k:04d}.json").write_text(io.dumps(doc), encoding="utf-8")
    _emit(args, {"kind": args.kind, "size": args.size, "count": len(items), "dedupe": args.dedupe, "out": args.out},
          f"{len(items)} {args.kind} structure(s) of size {args.size}")
    return OK


def cmd_export_dot(args) -> int:
    p = _load_proset(args.file)
    text = to_dot(p, args.name)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


# parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperkalman", description="Hyper swap structures and their logics.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("verify", cmd_verify, "run the verifier chain for a structure kind")
    p.add_argument("file")
    p.add_argument("--kind", type=str.lower, choices=sorted(VERIFIERS))

    p = add("build-swap", cmd_build_swap, "build the hyper swap structure S(L)")
    p.add_argument("file")
    p.add_argument("--variant", choices=VARIANTS, default="cw")
    p.add_argument("--out")
    p.add_argument("--allow-large", action="store_true")

    p = add("quotient", cmd_quotient, "quotient an enriched algebra to an IHL")
    p.add_argument("file")
    p.add_argument("--variant", choices=VARIANTS, default="cw")
    p.add_argument("--out")

    p = add("equiv", cmd_equiv, "round-trip an IHL or an enriched algebra through S and U")
    p.add_argument("file")
    p.add_argument("--variant", choices=VARIANTS, default="cw")

    p = add("decide", cmd_decide, "decide gamma |= phi in a matrix or over C_min bivaluations")
    p.add_argument("--structure")
    p.add_argument("--gamma", default="", help="premises separated by ';'")
    p.add_argument("--phi", required=True)
    p.add_argument("--semantics", choices=("nmatrix", "bival"), default="nmatrix")
    p.add_argument("--budget", type=int, help="branch budget (default: $HYPERKALMAN_BUDGET or 10^7)")

    p = add("prove", cmd_prove, "check a Hilbert proof file")
    p.add_argument("file")
    p.add_argument("--system", choices=VARIANTS, default="cw")
    p.add_argument("--hyp", default="", help="hypotheses separated by ';'")

    p = add("godel", cmd_godel, "audit the Gödel-style matrix and tabulate G_n")
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--gn", type=int, default=8)
    p.add_argument("--system", choices=VARIANTS, default="cw+")

    p = add("enumerate", cmd_enumerate, "enumerate small prosets or hyperlattices")
    p.add_argument("--kind", type=str.lower, choices=("proset", "hyperlattice", "hl", "ihl", "cihl"), required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--dedupe", action="store_true", help="one representative per isomorphism class")

    p = add("export-dot", cmd_export_dot, "DOT drawing of the order, similarity classes boxed")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--name", default="proset")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if args.command == "godel" and args.bound < 2:
        print("error: --bound must be at least 2", file=sys.stderr)
        return USAGE
    try:
        return args.fn(args)
    except BudgetExceeded as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return BUDGET
    except (UsageError, io.FormatError, ParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
