"""Morphisms, the Kalman functor S, the quotient functor U, and the isomorphisms Phi and Psi."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .hcalg import QuotientResult, quotient
from .order import Hyperalgebra, StructureError
from .report import Report
from .swap import Snapshot, SwapStructure, swap_of

CLAUSES = {"IHL": ("meet", "join", "imp"), "HC": ("meet", "join", "imp", "neg")}


@dataclass(frozen=True)
class Morphism:
    source: Hyperalgebra
    target: Hyperalgebra
    map: tuple
    kind: str = "IHL"

    def __post_init__(self):
        if self.kind not in CLAUSES:
            raise ValueError(f"kind must be one of {sorted(CLAUSES)}")
        if len(self.map) != self.source.n or not all(0 <= v < self.target.n for v in self.map):
            raise StructureError("map must send every source index to a target index")

    def __call__(self, x: int) -> int:
        return self.map[x]


def identity(h: Hyperalgebra, kind: str = "IHL") -> Morphism:
    return Morphism(h, h, tuple(range(h.n)), kind)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g ∘ f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise ValueError("morphisms are not composable")
    return Morphism(f.source, g.target, tuple(g.map[v] for v in f.map), f.kind)


@lru_cache(maxsize=512)
def quotient_of(h: Hyperalgebra, variant: str = "cw") -> QuotientResult:
    return quotient(h, variant)


def verify_morphism(m: Morphism) -> Report:
    rep = Report(f"{m.kind}-morphism", list(CLAUSES[m.kind]))
    src, tgt, f = m.source, m.target, m.map
    rng = range(src.n)
    for op in ("meet", "join", "imp"):
        a, b = src.table(op), tgt.table(op)
        if a is None or b is None:
            rep.fail(op, (), "operation missing")
            continue
        for x, y in product(rng, repeat=2):
            for z in sorted(a[x][y]):
                if f[z] not in b[f[x]][f[y]]:
                    rep.fail(op, (x, y, z), "f(z) is not in f(x) # f(y)")
                    break
    if m.kind == "HC":
        if src.neg is None or tgt.neg is None:
            rep.fail("neg", (), "operation missing")
        else:
            for x in rng:
                for z in sorted(src.neg[x]):
                    if f[z] not in tgt.neg[f[x]]:
                        rep.fail("neg", (x, z), "f(z) is not in ~f(x)")
                        break
    return rep


def monotone_check(m: Morphism) -> bool:
    """Verified morphisms are always monotone; ``False`` here signals a bug."""
    return all(
        m.target.leq[m.map[x]][m.map[y]]
        for x, y in product(range(m.source.n), repeat=2)
        if m.source.leq[x][y]
    )


def find_morphisms(source: Hyperalgebra, target: Hyperalgebra, kind: str = "IHL") -> Iterator[Morphism]:
    """Brute-force every map ``source -> target`` and keep the verified morphisms."""
    for f in product(range(target.n), repeat=source.n):
        m = Morphism(source, target, f, kind)
        if verify_morphism(m).ok:
            yield m


def lift_swap_morphism(f: Morphism, variant: str = "cw") -> Morphism:
    """S(f): snapshots mapped componentwise."""
    s1, s2 = swap_of(f.source, variant), swap_of(f.target, variant)
    pos = {z: i for i, z in enumerate(s2.elements)}
    out = []
    for z in s1.elements:
        w = Snapshot(f.map[z.z1], f.map[z.z2])
        if w not in pos:
            raise StructureError(f"S(f) leaves the swap domain at {s1.algebra.labels[s1.index(z)]}")
        out.append(pos[w])
    m = Morphism(s1.algebra, s2.algebra, tuple(out), "HC")
    rep = verify_morphism(m)
    if not rep.ok:
        raise AssertionError("S(f) is not an HC morphism: " + rep.violations[0].render(s1.algebra.labels))
    return m


def quotient_morphism(g: Morphism, variant: str = "cw") -> Morphism:
    """U(g): ``[x] -> [g(x)]`` on the ~-classes."""
    q1, q2 = quotient_of(g.source, variant), quotient_of(g.target, variant)
    out = [None] * len(q1.classes)
    for x in range(g.source.n):
        c, d = q1.projection[x], q2.projection[g.map[x]]
        if out[c] is None:
            out[c] = d
        elif out[c] != d:
            raise StructureError("U(g) is not well defined: g does not preserve ~")
    m = Morphism(q1.quotient, q2.quotient, tuple(out), "IHL")
    rep = verify_morphism(m)
    if not rep.ok:
        raise AssertionError("U(g) is not an IHL morphism: " + rep.violations[0].render(q1.quotient.labels))
    return m


def phi(base: Hyperalgebra, variant: str = "cw") -> Morphism:
    """Phi_L : L -> U(S(L)), ``x -> [(x, y)]`` with ``y`` the least member of ``x -> x``."""
    s = swap_of(base, variant)
    q = quotient_of(s.algebra, variant)
    out = []
    for x in range(base.n):
        y = min(base.imp[x][x])
        cls = q.projection[s.index((x, y))]
        for y2 in range(base.n):
            if base.join[x][y2] <= base.top:
                assert q.projection[s.index((x, y2))] == cls, "Phi depends on the witness"
        out.append(cls)
    return Morphism(base, q.quotient, tuple(out), "IHL")


def psi(a: Hyperalgebra, variant: str = "cw") -> Morphism:
    """Psi_A : A -> S(U(A)), ``x -> ([x], [z])`` with ``z`` the least member of ``~x``."""
    q = quotient_of(a, variant)
    s = swap_of(q.quotient, variant)
    pos = {z: i for i, z in enumerate(s.elements)}
    out = []
    for x in range(a.n):
        z = min(a.neg[x])
        assert len({q.projection[z2] for z2 in a.neg[x]}) == 1, "Psi depends on the witness"
        w = Snapshot(q.projection[x], q.projection[z])
        if w not in pos:
            raise StructureError(f"Psi({a.labels[x]}) is not a snapshot of S(U(A))")
        out.append(pos[w])
    return Morphism(a, s.algebra, tuple(out), "HC")


def verify_isomorphism(m: Morphism) -> Report:
    """Bijective morphism whose inverse is also a morphism of the same kind."""
    rep = verify_morphism(m)
    rep.subject = f"{m.kind}-isomorphism"
    rep.check("bijective")
    rep.check("inverse")
    if not rep.ok:
        return rep
    if len(set(m.map)) != m.source.n or m.source.n != m.target.n:
        seen = {}
        for x, v in enumerate(m.map):
            if v in seen:
                rep.fail("bijective", (seen[v], x), "two elements share an image")
                break
            seen[v] = x
        else:
            rep.fail("bijective", (), "map is not surjective")
        return rep
    inv = [0] * m.target.n
    for x, v in enumerate(m.map):
        inv[v] = x
    back = verify_morphism(Morphism(m.target, m.source, tuple(inv), m.kind))
    for v in back.violations:
        rep.fail("inverse", v.witness, f"inverse fails {v.axiom}")
    return rep


def verify_naturality(
    f: Optional[Morphism] = None, g: Optional[Morphism] = None, variant: str = "cw"
) -> Report:
    """Pointwise commutation of the Phi square for ``f`` and the Psi square for ``g``."""
    rep = Report("naturality")
    if f is not None:
        rep.check("Phi")
        usf = quotient_morphism(lift_swap_morphism(f, variant), variant)
        p1, p2 = phi(f.source, variant), phi(f.target, variant)
        for x in range(f.source.n):
            if usf.map[p1.map[x]] != p2.map[f.map[x]]:
                rep.fail("Phi", (x,), "U(S(f))(Phi(x)) != Phi(f(x))")
    if g is not None:
        rep.check("Psi")
        sug = lift_swap_morphism(quotient_morphism(g, variant), variant)
        p1, p2 = psi(g.source, variant), psi(g.target, variant)
        for x in range(g.source.n):
            if sug.map[p1.map[x]] != p2.map[g.map[x]]:
                rep.fail("Psi", (x,), "S(U(g))(Psi(x)) != Psi(g(x))")
    return rep


def functor_laws(pairs: Iterable[tuple], variant: str = "cw") -> Report:
    """Identity and composition laws for S and U over composable IHL pairs ``(f, g)``.

    U is exercised on the lifted morphisms S(f), S(g) between swap structures.
    """
    rep = Report("functor laws", ["S-id", "S-comp", "U-id", "U-comp"])
    seen = set()
    for k, (f, g) in enumerate(pairs):
        gf = compose(g, f)
        sf, sg = lift_swap_morphism(f, variant), lift_swap_morphism(g, variant)
        if lift_swap_morphism(gf, variant) != compose(sg, sf):
            rep.fail("S-comp", (k,), "S(g∘f) != S(g)∘S(f)")
        uf, ug = quotient_morphism(sf, variant), quotient_morphism(sg, variant)
        if quotient_morphism(compose(sg, sf), variant) != compose(ug, uf):
            rep.fail("U-comp", (k,), "U(g∘f) != U(g)∘U(f)")
        for h in (f.source, f.target, g.target):
            if h in seen:
                continue
            seen.add(h)
            s = swap_of(h, variant)
            if lift_swap_morphism(identity(h), variant) != identity(s.algebra, "HC"):
                rep.fail("S-id", (k,), "S(1) != 1")
            q = quotient_of(s.algebra, variant)
            if quotient_morphism(identity(s.algebra, "HC"), variant) != identity(q.quotient):
                rep.fail("U-id", (k,), "U(1) != 1")
    return rep


def composable_pairs(structures: Sequence[Hyperalgebra], limit: Optional[int] = None) -> list:
    """Composable IHL morphism pairs ``(f, g)`` found by brute force among ``structures``."""
    homs = {}
    for a, b in product(range(len(structures)), repeat=2):
        homs[a, b] = list(find_morphisms(structures[a], structures[b]))
    out = []
    for a, b, c in product(range(len(structures)), repeat=3):
        for f in homs[a, b]:
            for g in homs[b, c]:
                out.append((f, g))
                if limit is not None and len(out) >= limit:
                    return out
    return out
