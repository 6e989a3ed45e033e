"""Hyper swap structures over (classical) implicative hyperlattices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, NamedTuple, Sequence, Union

from .hcalg import BASE_VERIFIERS, VARIANT_KINDS
from .order import (
    Hyperalgebra,
    Proset,
    StructureError,
    canonical_algebra,
    maxima,
    verify_cihl,
    verify_ihl,
)

SIZE_GUARD = 12


class Snapshot(NamedTuple):
    z1: int
    z2: int


@dataclass(frozen=True)
class SwapStructure:
    base: Hyperalgebra
    variant: str
    elements: tuple  # of Snapshot, lexicographic
    algebra: Hyperalgebra

    @property
    def designated(self) -> frozenset:
        return self.algebra.designated_set

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, z: Sequence[int]) -> int:
        return self.elements.index(Snapshot(*z))

    def snapshot(self, *labels: str) -> int:
        """Index of the snapshot given by two base labels, e.g. ``s.snapshot("1", "0")``."""
        p = self.base.proset
        return self.index((p.index(labels[0]), p.index(labels[1])))


def swap_domain(base: Hyperalgebra) -> list:
    """All pairs ``(z1, z2)`` with ``z1 v z2`` inside the top, in lexicographic order."""
    rep = verify_ihl(base)
    if not rep.ok:
        raise StructureError("swap base is not an IHL: " + rep.violations[0].render(base.labels))
    n, top = base.n, base.top
    dom = [Snapshot(a, b) for a, b in product(range(n), repeat=2) if base.join[a][b] <= top]
    members = set(dom)
    for a, b in product(range(n), sorted(top)):
        assert (a, b) in members, "a pair with a top second coordinate must be a snapshot"
    return dom


def build_hyper_swap(base: Hyperalgebra, variant: str = "cw", allow_large: bool = False) -> SwapStructure:
    """S(L) for ``variant`` in {"cw", "cmin", "cw+"}; "cmin" is S(L) over a classical base."""
    if variant not in VARIANT_KINDS:
        raise ValueError(f"variant must be one of {sorted(VARIANT_KINDS)}")
    if base.n > SIZE_GUARD and not allow_large:
        raise ValueError(f"base has {base.n} > {SIZE_GUARD} elements; pass allow_large=True")
    if variant == "cmin":
        rep = verify_cihl(base)
        if not rep.ok:
            raise StructureError("C_min needs a classical base: " + rep.violations[0].render(base.labels))
    dom = swap_domain(base)
    m = len(dom)
    p = base.proset
    fiber = {a: frozenset(i for i, z in enumerate(dom) if z.z1 == a) for a in range(base.n)}

    def lift(table):
        return tuple(
            tuple(frozenset().union(*(fiber[u] for u in table[z.z1][w.z1])) for w in dom)
            for z in dom
        )

    if variant == "cw+":
        neg_ok = lambda u, z: u.z1 == z.z2 and p.similar(u.z2, z.z1)
    else:
        neg_ok = lambda u, z: u.z1 == z.z2 and p.leq[u.z2][z.z1]
    neg = tuple(frozenset(i for i, u in enumerate(dom) if neg_ok(u, z)) for z in dom)
    leq = tuple(tuple(p.leq[z.z1][w.z1] for w in dom) for z in dom)
    labels = tuple(f"({p.labels[z.z1]},{p.labels[z.z2]})" for z in dom)
    designated = frozenset(i for i, z in enumerate(dom) if z.z1 in base.top)
    sp = Proset(labels, leq)
    algebra = Hyperalgebra(
        sp, lift(base.meet), lift(base.join), lift(base.imp), neg,
        kind=VARIANT_KINDS[variant], designated=designated,
    )
    assert designated == maxima(sp, sp.domain), "designated snapshots must be the maxima"
    rep = BASE_VERIFIERS[variant](algebra)
    if not rep.ok:
        raise AssertionError("swap structure failed its own class: " + rep.violations[0].render(labels))
    return SwapStructure(base, variant, tuple(dom), algebra)


@lru_cache(maxsize=512)
def swap_of(base: Hyperalgebra, variant: str = "cw") -> SwapStructure:
    """Memoised :func:`build_hyper_swap` (structures are immutable)."""
    return build_hyper_swap(base, variant)


def snapshot_order(s: SwapStructure, z: Sequence[int], w: Sequence[int]) -> bool:
    """``z ⪯ w`` iff ``z1 ⪯ w1`` in the base."""
    result = s.base.leq[z[0]][w[0]]
    assert s.algebra.leq[s.index(z)][s.index(w)] == result
    return result


Op = Union[Callable[[int, int], int], Sequence[Sequence[int]]]


def embed_deterministic_lattice(order: Proset, meet: Op, join: Op, imp: Op) -> Hyperalgebra:
    """Wrap an implicative lattice (singleton tables) as an IHL.

    ``meet``/``join``/``imp`` are binary functions or ``n x n`` index tables;
    they must agree with the canonical operations of ``order``.
    """
    if not order.is_partial_order():
        raise StructureError("a deterministic lattice needs an antisymmetric order")
    h = canonical_algebra(order)
    for name, op in (("meet", meet), ("join", join), ("imp", imp)):
        f = op if callable(op) else (lambda t: lambda x, y: t[x][y])(op)
        table = h.table(name)
        for x, y in product(range(order.n), repeat=2):
            if table[x][y] != frozenset({f(x, y)}):
                raise StructureError(
                    f"{name}({order.labels[x]}, {order.labels[y]}) = {order.labels[f(x, y)]} "
                    f"but the canonical value is {sorted(order.labels[v] for v in table[x][y])}"
                )
    return h
