from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperkalman.fixtures import ch2, ch3, eq3, one_point
from hyperkalman.order import (
    Hyperalgebra,
    Proset,
    StructureError,
    bottom_set,
    canonical_algebra,
    canonical_implication,
    dedupe_isomorphic,
    enumerate_prosets,
    enumerate_structures,
    infimoid,
    is_hyperlattice,
    is_stable,
    lower_bounds,
    maxima,
    minima,
    relative_set,
    representative,
    set_precedes,
    similar_sets,
    supremoid,
    to_dot,
    top_set,
    upper_bounds,
    verify_cihl,
    verify_hyperlattice,
    verify_ihl,
)
from oracles import lattice_residual, residual
from strategies import prosets


def idx(h, *labels):
    return frozenset(h.proset.index(l) for l in labels)


class TestProset:
    def test_rejects_non_transitive(self):
        leq = ((True, True, False), (False, True, True), (False, False, True))
        with pytest.raises(StructureError, match="transitive"):
            Proset(("a", "b", "c"), leq)

    def test_rejects_irreflexive(self):
        with pytest.raises(StructureError):
            Proset(("a",), ((False,),))

    def test_rejects_duplicate_labels(self):
        with pytest.raises(StructureError):
            Proset(("a", "a"), ((True, False), (False, True)))

    def test_similarity_is_not_equality(self):
        p = eq3().proset
        assert p.similar(0, 1) and not p.is_partial_order()
        assert p.classes() == [frozenset({0, 1}), frozenset({2})]

    @given(prosets())
    def test_generated_is_a_preorder(self, p):
        n = p.n
        assert all(p.leq[i][i] for i in range(n))
        for i, j, k in product(range(n), repeat=3):
            assert not (p.leq[i][j] and p.leq[j][k]) or p.leq[i][k]


class TestBounds:
    def test_upper_bounds(self):
        assert upper_bounds(ch2().proset, {0}) == {0, 1}
        h = eq3()
        assert upper_bounds(h.proset, idx(h, "x", "x'")) == {0, 1, 2}

    def test_empty_set_bounds_are_everything(self):
        for h in (ch2(), ch3(), eq3()):
            assert upper_bounds(h.proset, ()) == h.proset.domain
            assert lower_bounds(h.proset, ()) == h.proset.domain

    def test_set_precedes(self):
        h = ch3()
        assert set_precedes(h.proset, idx(h, "0"), idx(h, "a", "1"))
        assert set_precedes(h.proset, (), idx(h, "a"))
        assert set_precedes(h.proset, idx(h, "a"), ())
        e = eq3()
        assert set_precedes(e.proset, idx(e, "x"), idx(e, "x'"))

    def test_stability(self):
        assert not is_stable(ch2().proset, {0, 1})
        e = eq3()
        assert is_stable(e.proset, idx(e, "x", "x'"))
        for h in (ch2(), ch3(), eq3()):
            for x in range(h.n):
                assert is_stable(h.proset, {x})
        with pytest.raises(ValueError):
            is_stable(ch2().proset, ())

    def test_minima_maxima_keep_similar_elements(self):
        e = eq3()
        assert minima(e.proset, e.proset.domain) == idx(e, "x", "x'")
        assert maxima(e.proset, e.proset.domain) == idx(e, "t")

    def test_infimoid_supremoid(self):
        e, c3 = eq3(), ch3()
        assert supremoid(e.proset, 0, 1) == idx(e, "x", "x'")
        assert infimoid(c3.proset, c3.proset.index("a"), c3.proset.index("1")) == idx(c3, "a")
        assert infimoid(ch2().proset, 0, 1) == {0}

    def test_hyperlattice(self):
        assert is_hyperlattice(ch2().proset) == (True, None)
        assert is_hyperlattice(eq3().proset)[0]
        antichain = Proset(("x", "y"), ((True, False), (False, True)))
        assert is_hyperlattice(antichain) == (False, (0, 1))

    def test_top_bottom(self):
        assert top_set(ch3().proset) == idx(ch3(), "1")
        e = eq3()
        assert top_set(e.proset) == idx(e, "t")
        assert bottom_set(e.proset) == idx(e, "x", "x'")

    def test_representative_is_least_index(self):
        assert representative({3, 1, 2}) == 1


class TestImplication:
    def test_relative_set(self):
        c3, e = ch3(), eq3()
        a, z = c3.proset.index("a"), c3.proset.index("0")
        assert relative_set(c3.proset, a, z) == {z}
        assert relative_set(ch2().proset, 0, 1) == {0, 1}
        assert relative_set(e.proset, 2, 0) == idx(e, "x", "x'")

    def test_canonical_implication(self):
        c3, e = ch3(), eq3()
        P = c3.proset
        assert canonical_implication(P, P.index("a"), P.index("0")) == idx(c3, "0")
        assert canonical_implication(P, 0, 0) == idx(c3, "1")
        assert canonical_implication(e.proset, 2, 0) == idx(e, "x", "x'")

    def test_matches_definitional_residual_on_corpus(self, corpus):
        for h in corpus:
            p = h.proset
            meet = lambda x, z: infimoid(p, x, z)
            for x, y in product(range(h.n), repeat=2):
                assert canonical_implication(p, x, y) == residual(p.leq, meet, x, y)

    def test_matches_classical_residual_on_partial_orders(self, corpus):
        lattices = [h for h in corpus if h.proset.is_partial_order()]
        assert lattices
        for h in lattices:
            for x, y in product(range(h.n), repeat=2):
                assert canonical_implication(h.proset, x, y) == {lattice_residual(h.leq, x, y)}

    def test_operation_values_are_stable(self, corpus):
        for h in corpus:
            for op in ("meet", "join", "imp"):
                for row in h.table(op):
                    for cell in row:
                        assert is_stable(h.proset, cell)


class TestVerifiers:
    @pytest.mark.parametrize("make", [ch2, ch3, eq3, one_point])
    def test_canonical_fixtures_are_ihls(self, make):
        assert verify_ihl(make()).ok

    def test_altered_implication_fails_i1(self):
        h = ch2()
        imp = [list(r) for r in h.imp]
        imp[1][0] = frozenset({1})
        bad = h.replace(imp=tuple(tuple(r) for r in imp))
        rep = verify_ihl(bad)
        assert not rep.ok
        assert rep.failed("I1").witness == (1, 0, 1)

    def test_cihl(self):
        assert verify_cihl(ch2()).ok
        assert verify_cihl(eq3()).ok
        rep = verify_cihl(ch3())
        v = rep.failed("I4")
        assert v is not None
        assert [ch3().labels[i] for i in v.witness] == ["a", "0"]

    def test_wrong_meet_is_reported(self):
        h = ch2()
        meet = ((frozenset({0}), frozenset({1})), (frozenset({0}), frozenset({1})))
        assert verify_hyperlattice(h.replace(meet=meet)).failed("HL")

    def test_empty_cells_rejected(self):
        h = ch2()
        with pytest.raises(StructureError, match="empty"):
            h.replace(imp=((frozenset(), frozenset({1})), (frozenset({0}), frozenset({1}))))

    @given(prosets())
    def test_verify_ihl_iff_canonical(self, p):
        try:
            h = canonical_algebra(p)
        except StructureError:
            return
        assert verify_ihl(h).ok
        # perturbing a single imp cell breaks the characterization
        n = p.n
        for x, y in product(range(n), repeat=2):
            for z in range(n):
                cell = frozenset({z})
                if cell == h.imp[x][y]:
                    continue
                imp = [list(r) for r in h.imp]
                imp[x][y] = cell
                assert not verify_ihl(h.replace(imp=tuple(tuple(r) for r in imp))).ok
                return

    @given(prosets(), st.data())
    def test_stable_lift_equals_representative(self, p, data):
        """For stable A, B the pointwise meet/join equals the value on any representatives."""
        try:
            h = canonical_algebra(p, "HL")
        except StructureError:
            return
        classes = p.classes()
        A = data.draw(st.sampled_from(classes))
        B = data.draw(st.sampled_from(classes))
        for op in ("meet", "join"):
            t = h.table(op)
            lifted = frozenset().union(*(t[a][b] for a in A for b in B))
            a, b = data.draw(st.sampled_from(sorted(A))), data.draw(st.sampled_from(sorted(B)))
            assert lifted == t[a][b]
            assert is_stable(p, lifted)

    @given(prosets(max_n=3), st.data())
    def test_associativity_on_stable_values(self, p, data):
        try:
            h = canonical_algebra(p, "HL")
        except StructureError:
            return
        x, y, z = (data.draw(st.integers(0, p.n - 1)) for _ in range(3))
        for op in ("meet", "join"):
            t = h.table(op)
            left = t[representative(t[x][y])][z]
            right = t[x][representative(t[y][z])]
            assert similar_sets(p, left, right)

    def test_precedes_iff_implication_is_top(self, corpus):
        for h in corpus:
            p = h.proset
            for A in p.classes():
                for B in p.classes():
                    a, b = min(A), min(B)
                    assert set_precedes(p, A, B) == similar_sets(p, h.imp[a][b], h.top)


class TestEnumeration:
    # labeled counts of prosets are OEIS A000798; hyperlattice counts follow
    # from the filter, and were checked by the independent count below
    def test_labeled_proset_counts(self):
        assert [sum(1 for _ in enumerate_prosets(n)) for n in range(1, 5)] == [1, 4, 29, 355]

    def test_unlabeled_proset_counts(self):
        # OEIS A000798 / A001930: 1, 3, 9, 33
        assert [len(dedupe_isomorphic(enumerate_prosets(n))) for n in range(1, 5)] == [1, 3, 9, 33]

    def test_proset_enumeration_matches_brute_force(self):
        n = 3
        offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
        brute = 0
        for bits in product((0, 1), repeat=len(offdiag)):
            rel = {(i, i) for i in range(n)} | {e for e, b in zip(offdiag, bits) if b}
            if all((i, k) in rel for (i, j) in rel for (j2, k) in rel if j == j2):
                brute += 1
        assert brute == sum(1 for _ in enumerate_prosets(n))

    def test_ihl_counts(self):
        counts = [sum(1 for _ in enumerate_structures("IHL", n)) for n in range(1, 5)]
        hl = [sum(1 for _ in enumerate_structures("hyperlattice", n)) for n in range(1, 5)]
        assert counts == hl == [1, 3, 13, 87]
        assert [len(dedupe_isomorphic(enumerate_structures("IHL", n))) for n in range(1, 5)] == [1, 2, 4, 9]

    def test_cihl_counts(self):
        counts = [sum(1 for _ in enumerate_structures("CIHL", n)) for n in range(1, 5)]
        assert counts == [1, 3, 7, 27]

    def test_small_sizes(self):
        assert len(list(enumerate_structures("proset", 1))) == 1
        assert len(list(enumerate_structures("proset", 2))) == 4
        two = list(enumerate_structures("IHL", 2))
        leqs = {h.leq for h in two}
        assert ch2().leq in leqs
        assert ((True, True), (True, True)) in leqs

    def test_bound(self):
        with pytest.raises(ValueError):
            list(enumerate_structures("IHL", 5))
        with pytest.raises(ValueError):
            list(enumerate_structures("lattice", 2))


class TestDot:
    def test_similarity_classes_are_boxed(self):
        text = to_dot(eq3().proset)
        assert 'label="x\\nx\'"' in text
        assert text.count("->") == 1

    def test_transitive_edges_omitted(self):
        text = to_dot(ch3().proset)
        assert text.count("->") == 2
