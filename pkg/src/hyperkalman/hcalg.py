"""Negation-bearing hyperalgebras: HC_wA, HC_minA, HC_w+A, enrichment and the quotient U(A)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .order import (
    Hyperalgebra,
    Proset,
    StructureError,
    canonical_implication,
    similar_sets,
    verify_cihl,
    verify_ihl,
)
from .report import Report

VARIANT_KINDS = {"cw": "HCwA", "cmin": "HCminA", "cw+": "HCw+A"}


def _require_neg(h: Hyperalgebra) -> None:
    if h.neg is None:
        raise StructureError("structure has no negation table")


def _check_h1(h: Hyperalgebra, rep: Report) -> None:
    rep.check("H1")
    for x in range(h.n):
        for y in sorted(h.neg[x]):
            for w in sorted(h.join[x][y]):
                if w not in h.top:
                    rep.fail("H1", (x, y, w), "x v ~x is not similar to the top")


def verify_hcw(h: Hyperalgebra) -> Report:
    """IHL reduct plus H1 (``x v ~x ≡ ⊤``) and H2 (``~~x ⪯ x``)."""
    _require_neg(h)
    rep = verify_ihl(h)
    rep.subject = "HCwA"
    _check_h1(h, rep)
    rep.check("H2")
    for x in range(h.n):
        for y in sorted(h.neg[x]):
            for w in sorted(h.neg[y]):
                if not h.leq[w][x]:
                    rep.fail("H2", (x, y, w), "~~x is not below x")
    return rep


def verify_hcmin(h: Hyperalgebra) -> Report:
    rep = verify_hcw(h)
    rep.subject = "HCminA"
    return rep.extend(verify_cihl(h))


def verify_hcwplus(h: Hyperalgebra) -> Report:
    """H1 together with H3 (``~~x ≡ x``) in place of H2."""
    _require_neg(h)
    rep = verify_ihl(h)
    rep.subject = "HCw+A"
    _check_h1(h, rep)
    rep.check("H3")
    for x in range(h.n):
        for y in sorted(h.neg[x]):
            for w in sorted(h.neg[y]):
                if not h.proset.similar(w, x):
                    rep.fail("H3", (x, y, w), "~~x is not similar to x")
    return rep


BASE_VERIFIERS = {"cw": verify_hcw, "cmin": verify_hcmin, "cw+": verify_hcwplus}


@dataclass(frozen=True)
class SimRelation:
    table: tuple
    is_equivalence: bool
    classes: tuple  # of frozenset, ordered by least member; empty unless an equivalence

    def related(self, x: int, y: int) -> bool:
        return self.table[x][y]


def sim_relation(h: Hyperalgebra) -> SimRelation:
    """``x ~ y`` iff both lie in some ``~z``."""
    _require_neg(h)
    n = h.n
    table = [[False] * n for _ in range(n)]
    for z in range(n):
        for x in h.neg[z]:
            for y in h.neg[z]:
                table[x][y] = True
    frozen = tuple(tuple(r) for r in table)
    equiv = all(table[x][x] for x in range(n)) and all(
        table[x][z] or not (table[x][y] and table[y][z])
        for x, y, z in product(range(n), repeat=3)
    )
    classes = ()
    if equiv:
        seen, out = set(), []
        for x in range(n):
            if x not in seen:
                c = frozenset(y for y in range(n) if table[x][y])
                seen |= c
                out.append(c)
        classes = tuple(out)
    return SimRelation(frozen, equiv, classes)


def verify_enriched(h: Hyperalgebra, variant: str = "cw") -> Report:
    """Base verification for ``variant`` followed by axioms E0-E4."""
    if variant not in BASE_VERIFIERS:
        raise ValueError(f"variant must be one of {sorted(BASE_VERIFIERS)}")
    rep = BASE_VERIFIERS[variant](h)
    rep.subject = "E" + VARIANT_KINDS[variant]
    for ax in ("E0", "E1", "E2", "E3", "E4"):
        rep.check(ax)
    if not rep.ok:
        return rep
    n, neg, p = h.n, h.neg, h.proset
    for x in range(n):
        if not any(x in neg[y] for y in neg[x]):
            rep.fail("E0", (x,), "x is not in ~~x")
        if not all(p.similar(a, b) for a in neg[x] for b in neg[x]):
            a, b = next((a, b) for a in sorted(neg[x]) for b in sorted(neg[x]) if not p.similar(a, b))
            rep.fail("E1", (x, a, b), "~x is not stable")
    sim = sim_relation(h)
    t = sim.table
    for x, y, z in product(range(n), repeat=3):
        if t[x][y] and t[y][z] and not t[x][z]:
            rep.fail("E2", (x, y, z), "~ is not transitive")
            break
    for x, y in product(range(n), repeat=2):
        if similar_sets(p, h.join[x][y], h.top):
            if not any(t[x][z] and all(t[y][u] for u in neg[z]) for z in range(n)):
                rep.fail("E3", (x, y), "no z with x ~ z and y ~ ~z")
        if x != y and t[x][y] and all(t[a][b] for a in neg[x] for b in neg[y]):
            rep.fail("E4", (x, y), "x ~ y and ~x ~ ~y but x != y")
    if rep.ok:
        for x, y in product(range(n), repeat=2):
            assert not t[x][y] or p.similar(x, y), "E1 holds but ~ does not imply similarity"
    return rep


@dataclass(frozen=True)
class QuotientResult:
    quotient: Hyperalgebra
    projection: tuple  # element index -> class index
    classes: tuple

    def to_dict(self) -> dict:
        return {"projection": list(self.projection), "classes": [sorted(c) for c in self.classes]}


def quotient(h: Hyperalgebra, variant: str = "cw") -> QuotientResult:
    """U(A): the IHL on the ~-classes of an enriched algebra."""
    rep = verify_enriched(h, variant)
    if not rep.ok:
        raise StructureError("quotient needs an enriched algebra: " + rep.violations[0].render(h.labels))
    classes = sim_relation(h).classes
    proj = [0] * h.n
    for i, c in enumerate(classes):
        for x in c:
            proj[x] = i
    reps = [min(c) for c in classes]
    k = len(classes)
    leq = tuple(tuple(h.leq[reps[i]][reps[j]] for j in range(k)) for i in range(k))
    for x, y in product(range(h.n), repeat=2):
        if h.leq[x][y] != leq[proj[x]][proj[y]]:
            raise AssertionError("quotient order depends on the representative")
    qp = Proset(tuple(f"[{h.labels[r]}]" for r in reps), leq)

    def image(table):
        out = tuple(
            tuple(frozenset(proj[z] for z in table[reps[i]][reps[j]]) for j in range(k))
            for i in range(k)
        )
        for x, y in product(range(h.n), repeat=2):
            if frozenset(proj[z] for z in table[x][y]) != out[proj[x]][proj[y]]:
                raise AssertionError("quotient operation depends on the representative")
        return out

    meet, join = image(h.meet), image(h.join)
    imp = tuple(tuple(canonical_implication(qp, i, j) for j in range(k)) for i in range(k))
    if image(h.imp) != imp:
        raise AssertionError("image of x -> y differs from the quotient implication")
    q = Hyperalgebra(qp, meet, join, imp, kind="IHL")
    check = verify_ihl(q)
    if not check.ok:
        raise AssertionError("quotient is not an IHL: " + check.violations[0].render(qp.labels))
    return QuotientResult(q, tuple(proj), classes)


def enumerate_negations(base: Hyperalgebra, variant: str = "cw+") -> Iterator[Hyperalgebra]:
    """Every negation table turning the IHL ``base`` into a structure of ``variant``.

    Candidates for ``~x`` are restricted to elements ``y`` with ``x v y`` in
    the top (H1 is pointwise); H2/H3 and the CIHL condition are then checked.
    """
    kind = VARIANT_KINDS[variant]
    n, p = base.n, base.proset
    allowed = [[y for y in range(n) if base.join[x][y] <= base.top] for x in range(n)]
    options = []
    for x in range(n):
        opts = []
        for bits in range(1, 1 << len(allowed[x])):
            opts.append(frozenset(y for k, y in enumerate(allowed[x]) if bits >> k & 1))
        options.append(opts)
    if variant == "cmin" and not verify_cihl(base).ok:
        return
    if variant == "cw+":
        ok2 = lambda w, x: p.similar(w, x)
    else:
        ok2 = lambda w, x: p.leq[w][x]
    for neg in product(*options):
        if all(ok2(w, x) for x in range(n) for y in neg[x] for w in neg[y]):
            yield base.replace(neg=tuple(neg), kind=kind)
