"""Shipped example structures, always generated from their order relation."""
from __future__ import annotations

from .order import Hyperalgebra, Proset, canonical_algebra


def ch2() -> Hyperalgebra:
    """Two-element chain 0 < 1."""
    return canonical_algebra(Proset.chain(["0", "1"]))


def ch3() -> Hyperalgebra:
    """Three-element chain 0 < a < 1."""
    return canonical_algebra(Proset.chain(["0", "a", "1"]))


def eq3() -> Hyperalgebra:
    """``x ≡ x'`` (a non-antisymmetric pair) with both below ``t``."""
    p = Proset.generated(["x", "x'", "t"], [("x", "x'"), ("x'", "x"), ("x", "t")])
    return canonical_algebra(p)


def one_point() -> Hyperalgebra:
    return canonical_algebra(Proset.chain(["1"]))


def one_point_hc() -> Hyperalgebra:
    """The one-element algebra with the identity negation."""
    return one_point().replace(neg=(frozenset({0}),), kind="HCwA")


FIXTURES = {"ch2": ch2, "ch3": ch3, "eq3": eq3, "one": one_point}
