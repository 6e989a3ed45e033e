"""Finite prosets, Morgado hyperlattices and Sette implicative hyperlattices.

Elements of a proset are the indices ``0..n-1``; labels are presentation
only.  Element sets are plain ``frozenset`` objects of indices.  Hyperoperation
tables are stored explicitly (even when canonical) so that verification is a
comparison of the stored table against the recomputed one.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Iterator, Optional, Sequence, Union

from .report import Report

ElementSet = frozenset
Table = tuple  # tuple[tuple[frozenset[int], ...], ...]

KINDS = ("HL", "IHL", "CIHL", "HCwA", "HCminA", "HCw+A", "EHCwA")
ENUM_BOUND = 4


class StructureError(ValueError):
    """A structure violates a shape invariant (not an axiom)."""


@dataclass(frozen=True)
class Proset:
    labels: tuple
    leq: tuple

    def __post_init__(self):
        n = len(self.labels)
        if n < 1:
            raise StructureError("a proset needs at least one element")
        if len(set(self.labels)) != n:
            raise StructureError("labels must be distinct")
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise StructureError(f"leq must be a {n}x{n} table")
        for x in range(n):
            if not self.leq[x][x]:
                raise StructureError(f"leq is not reflexive at {self.labels[x]}")
        for x, y, z in product(range(n), repeat=3):
            if self.leq[x][y] and self.leq[y][z] and not self.leq[x][z]:
                raise StructureError(
                    f"leq is not transitive: {self.labels[x]} <= {self.labels[y]} <= "
                    f"{self.labels[z]} but not {self.labels[x]} <= {self.labels[z]}"
                )

    @classmethod
    def generated(cls, labels: Sequence[str], pairs: Iterable[tuple]) -> "Proset":
        """Reflexive-transitive closure of ``pairs`` (label or index pairs)."""
        labels = tuple(str(l) for l in labels)
        n = len(labels)
        pos = {l: i for i, l in enumerate(labels)}
        rel = [[x == y for y in range(n)] for x in range(n)]
        for a, b in pairs:
            a = pos[a] if isinstance(a, str) else a
            b = pos[b] if isinstance(b, str) else b
            rel[a][b] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    for j in range(n):
                        if rel[k][j]:
                            rel[i][j] = True
        return cls(labels, tuple(tuple(r) for r in rel))

    @classmethod
    def chain(cls, labels: Sequence[str]) -> "Proset":
        return cls.generated(labels, [(i, i + 1) for i in range(len(labels) - 1)])

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def domain(self) -> frozenset:
        return frozenset(range(self.n))

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def similar(self, x: int, y: int) -> bool:
        return self.leq[x][y] and self.leq[y][x]

    def is_partial_order(self) -> bool:
        return all(not self.similar(x, y) for x in range(self.n) for y in range(x))

    def classes(self) -> list:
        """Similarity classes ordered by least member."""
        seen, out = set(), []
        for x in range(self.n):
            if x not in seen:
                cls_ = frozenset(y for y in range(self.n) if self.similar(x, y))
                seen |= cls_
                out.append(cls_)
        return out


def minima(p: Proset, b: Iterable[int]) -> frozenset:
    b = frozenset(b)
    return frozenset(x for x in b if all(p.leq[x][y] for y in b))


def maxima(p: Proset, b: Iterable[int]) -> frozenset:
    b = frozenset(b)
    return frozenset(x for x in b if all(p.leq[y][x] for y in b))


def upper_bounds(p: Proset, b: Iterable[int]) -> frozenset:
    b = tuple(b)
    return frozenset(z for z in range(p.n) if all(p.leq[y][z] for y in b))


def lower_bounds(p: Proset, b: Iterable[int]) -> frozenset:
    b = tuple(b)
    return frozenset(z for z in range(p.n) if all(p.leq[z][y] for y in b))


def set_precedes(p: Proset, b: Iterable[int], c: Iterable[int]) -> bool:
    c = tuple(c)
    return all(p.leq[x][y] for x in b for y in c)


def is_stable(p: Proset, a: Iterable[int]) -> bool:
    a = tuple(a)
    if not a:
        raise ValueError("stability is only defined for nonempty sets")
    return all(p.similar(x, y) for x in a for y in a)


def similar_sets(p: Proset, a: Iterable[int], b: Iterable[int]) -> bool:
    """``A ≡ B``: both nonempty and every member of one is similar to every member of the other."""
    a, b = tuple(a), tuple(b)
    return bool(a) and bool(b) and all(p.similar(x, y) for x in a for y in b)


def infimoid(p: Proset, x: int, y: int) -> frozenset:
    return maxima(p, lower_bounds(p, (x, y)))


def supremoid(p: Proset, x: int, y: int) -> frozenset:
    return minima(p, upper_bounds(p, (x, y)))


def is_hyperlattice(p: Proset) -> tuple:
    """Return ``(True, None)`` or ``(False, (x, y))`` for the first pair lacking a bound."""
    for x, y in product(range(p.n), repeat=2):
        if not infimoid(p, x, y) or not supremoid(p, x, y):
            return False, (x, y)
    return True, None


def relative_set(p: Proset, x: int, y: int) -> frozenset:
    return frozenset(z for z in range(p.n) if set_precedes(p, infimoid(p, x, z), (y,)))


def canonical_implication(p: Proset, x: int, y: int) -> frozenset:
    return maxima(p, relative_set(p, x, y))


def top_set(p: Proset) -> frozenset:
    return maxima(p, p.domain)


def bottom_set(p: Proset) -> frozenset:
    return minima(p, p.domain)


def representative(a: Iterable[int]) -> int:
    """Least index of a stable set; composite expressions are evaluated on it."""
    return min(a)


@dataclass(frozen=True)
class Hyperalgebra:
    """A proset with set-valued operation tables.

    ``imp`` is absent only for bare hyperlattices and ``neg`` only for the
    negation-free kinds.  ``designated`` defaults to the top set.
    """

    proset: Proset
    meet: Table
    join: Table
    imp: Optional[Table] = None
    neg: Optional[tuple] = None
    kind: str = "IHL"
    designated: Optional[frozenset] = None

    def __post_init__(self):
        n = self.proset.n
        if self.kind not in KINDS:
            raise StructureError(f"unknown kind {self.kind!r}")
        for name in ("meet", "join", "imp"):
            table = getattr(self, name)
            if table is None:
                if name != "imp":
                    raise StructureError(f"{name} table is required")
                continue
            if len(table) != n or any(len(row) != n for row in table):
                raise StructureError(f"{name} must be a {n}x{n} table")
            for x, row in enumerate(table):
                for y, cell in enumerate(row):
                    _check_cell(cell, n, f"{name}[{x}][{y}]")
        if self.neg is not None:
            if len(self.neg) != n:
                raise StructureError(f"neg must have {n} entries")
            for x, cell in enumerate(self.neg):
                _check_cell(cell, n, f"neg[{x}]")
        if self.designated is not None and not self.designated <= self.proset.domain:
            raise StructureError("designated set out of range")

    @property
    def n(self) -> int:
        return self.proset.n

    @property
    def labels(self) -> tuple:
        return self.proset.labels

    @property
    def leq(self) -> tuple:
        return self.proset.leq

    @cached_property
    def top(self) -> frozenset:
        return top_set(self.proset)

    @property
    def designated_set(self) -> frozenset:
        return self.top if self.designated is None else self.designated

    def table(self, op: str):
        return {"meet": self.meet, "join": self.join, "imp": self.imp, "neg": self.neg}[op]

    def replace(self, **changes) -> "Hyperalgebra":
        fields = dict(
            proset=self.proset, meet=self.meet, join=self.join, imp=self.imp,
            neg=self.neg, kind=self.kind, designated=self.designated,
        )
        fields.update(changes)
        return Hyperalgebra(**fields)


def _check_cell(cell, n: int, where: str) -> None:
    if not isinstance(cell, frozenset):
        raise StructureError(f"{where} must be a frozenset")
    if not cell:
        raise StructureError(f"{where} is empty; hyperoperations are nonempty-valued")
    if not all(isinstance(v, int) and 0 <= v < n for v in cell):
        raise StructureError(f"{where} has out-of-range members")


def freeze_table(rows) -> Table:
    return tuple(tuple(frozenset(cell) for cell in row) for row in rows)


def canonical_algebra(p: Proset, kind: str = "IHL") -> Hyperalgebra:
    """Attach the canonical infimoid/supremoid (and implication) tables to ``p``.

    Raises ``StructureError`` when ``p`` does not support the requested kind.
    """
    ok, wit = is_hyperlattice(p)
    if not ok:
        x, y = wit
        raise StructureError(f"not a hyperlattice: no bound for ({p.labels[x]}, {p.labels[y]})")
    rng = range(p.n)
    meet = tuple(tuple(infimoid(p, x, y) for y in rng) for x in rng)
    join = tuple(tuple(supremoid(p, x, y) for y in rng) for x in rng)
    if kind == "HL":
        return Hyperalgebra(p, meet, join, kind="HL")
    imp = tuple(tuple(canonical_implication(p, x, y) for y in rng) for x in rng)
    for x, y in product(rng, repeat=2):
        if not imp[x][y]:
            raise StructureError(
                f"no implicative structure: Max(R({p.labels[x]}, {p.labels[y]})) is empty"
            )
    h = Hyperalgebra(p, meet, join, imp, kind="IHL")
    if kind == "CIHL":
        rep = verify_cihl(h)
        if not rep.ok:
            raise StructureError(rep.violations[0].render(p.labels))
        h = h.replace(kind="CIHL")
    elif kind != "IHL":
        raise StructureError(f"canonical tables exist only for HL/IHL/CIHL, not {kind}")
    return h


def verify_hyperlattice(h: Hyperalgebra) -> Report:
    rep = Report("hyperlattice", ["HL"])
    p = h.proset
    for x, y in product(range(h.n), repeat=2):
        if h.meet[x][y] != infimoid(p, x, y):
            rep.fail("HL", (x, y), "meet table differs from the infimoid")
        if h.join[x][y] != supremoid(p, x, y):
            rep.fail("HL", (x, y), "join table differs from the supremoid")
    return rep


def verify_ihl(h: Hyperalgebra) -> Report:
    """Check the hyperlattice reduct and conditions I1-I3 on the stored tables."""
    rep = verify_hyperlattice(h)
    rep.subject = "IHL"
    for ax in ("I1", "I2", "I3"):
        rep.check(ax)
    if h.imp is None:
        rep.fail("I1", (), "no implication table")
        return rep
    p, rng = h.proset, range(h.n)
    for x, y in product(rng, repeat=2):
        cell = h.imp[x][y]
        for z in sorted(cell):
            if not set_precedes(p, h.meet[x][z], (y,)):
                rep.fail("I1", (x, y, z), "z in x->y but x^z is not below y")
            for z2 in rng:
                if z2 not in cell and p.similar(z, z2):
                    rep.fail("I3", (x, y, z, z2), "x->y is not closed under similarity")
        for z in rng:
            if set_precedes(p, h.meet[x][z], (y,)) and not set_precedes(p, (z,), cell):
                rep.fail("I2", (x, y, z), "x^z is below y but z is not below x->y")
    if rep.ok:
        for x, y in product(rng, repeat=2):
            assert h.imp[x][y] == canonical_implication(p, x, y), "I1-I3 hold but imp is not Max(R)"
    return rep


def verify_cihl(h: Hyperalgebra) -> Report:
    """IHL plus ``x v (x -> y) ≡ ⊤``, evaluated on the least representative of ``x -> y``."""
    rep = verify_ihl(h)
    rep.subject = "CIHL"
    rep.check("I4")
    if not rep.ok:
        return rep
    p = h.proset
    for x, y in product(range(h.n), repeat=2):
        z = representative(h.imp[x][y])
        if not similar_sets(p, h.join[x][z], h.top):
            rep.fail("I4", (x, y), "x v (x -> y) is not similar to the top")
    return rep


def enumerate_prosets(n: int) -> Iterator[Proset]:
    """All labeled prosets on ``n`` elements, off-diagonal bit patterns in ascending order."""
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    labels = tuple(str(i) for i in range(n))
    for bits in range(1 << len(offdiag)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for k, (i, j) in enumerate(offdiag):
            if bits >> k & 1:
                rel[i][j] = True
        if all(
            rel[i][k] or not (rel[i][j] and rel[j][k])
            for i in range(n) for j in range(n) for k in range(n)
        ):
            yield Proset(labels, tuple(tuple(r) for r in rel))


def enumerate_structures(
    kind: str, n: int, bound: int = ENUM_BOUND
) -> Iterator[Union[Proset, Hyperalgebra]]:
    """Labeled structures of size ``n`` of the given kind.

    ``kind="proset"`` yields ``Proset`` objects (bare prosets may lack the
    nonempty tables a ``Hyperalgebra`` requires); the other kinds yield
    hyperalgebras carrying canonical tables.
    """
    kinds = {"proset", "hyperlattice", "IHL", "CIHL"}
    if kind not in kinds:
        raise ValueError(f"kind must be one of {sorted(kinds)}")
    if not 1 <= n <= bound:
        raise ValueError(f"size {n} outside 1..{bound}; raise the bound explicitly")
    target = {"hyperlattice": "HL"}.get(kind, kind)
    for p in enumerate_prosets(n):
        if kind == "proset":
            yield p
            continue
        try:
            yield canonical_algebra(p, target)
        except StructureError:
            continue


def canonical_form(p: Proset) -> tuple:
    """Isomorphism-invariant key: the least relation matrix over all relabelings."""
    n = p.n
    return min(
        tuple(p.leq[perm[i]][perm[j]] for i in range(n) for j in range(n))
        for perm in permutations(range(n))
    )


def dedupe_isomorphic(structures: Iterable) -> list:
    """Keep the first structure of each isomorphism class (order preserved)."""
    seen, out = set(), []
    for s in structures:
        key = canonical_form(s if isinstance(s, Proset) else s.proset)
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


def to_dot(p: Proset, name: str = "proset") -> str:
    """DOT digraph of the Hasse diagram on similarity classes.

    Each class is one box listing its members; edges are the covering
    relation between classes (transitively implied edges omitted).
    """
    classes = p.classes()
    rep = [min(c) for c in classes]
    below = lambda a, b: a != b and p.leq[rep[a]][rep[b]]
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, c in enumerate(classes):
        text = "\\n".join(p.labels[x] for x in sorted(c))
        lines.append(f'  c{i} [label="{text}"];')
    k = len(classes)
    for a in range(k):
        for b in range(k):
            if below(a, b) and not any(below(a, c) and below(c, b) for c in range(k)):
                lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
