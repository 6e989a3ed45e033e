import copy
import pickle

import pytest
from hypothesis import given

from hyperkalman.logic import (
    SCHEMAS,
    And,
    Formula,
    Imp,
    Not,
    Or,
    ParseError,
    Var,
    format_formula,
    gn_formula,
    match_schema,
    parse_formula,
    parse_many,
    subformula_closure,
)
from oracles import schema_instance
from strategies import formulas

p0, p1, p = Var("p0"), Var("p1"), Var("p")
q = Var("q")


class TestHashConsing:
    def test_identical_formulas_are_one_object(self):
        assert (p >> q) is Imp(Var("p"), Var("q"))
        assert parse_formula("~p & q") is (~p & q)

    def test_copy_and_pickle_preserve_identity(self):
        f = p >> ~q
        assert copy.deepcopy(f) is f
        assert pickle.loads(pickle.dumps(f)) is f

    def test_rejects_bad_arity(self):
        with pytest.raises(ValueError):
            Formula("imp", (p,))


class TestParse:
    def test_cf_instance(self):
        assert parse_formula("~~p0 -> p0") is Imp(Not(Not(p0)), p0)

    def test_pl_instance(self):
        assert parse_formula("p0 | (p0 -> p1)") is Or(p0, Imp(p0, p1))

    def test_implication_is_right_associative(self):
        assert parse_formula("p0 -> p1 -> p0") is Imp(p0, Imp(p1, p0))

    def test_precedence(self):
        assert parse_formula("~p & q | p -> q") is Imp(Or(And(Not(p), q), p), q)
        assert parse_formula("p | q & p") is Or(p, And(q, p))

    def test_binary_left_associative(self):
        r = Var("r")
        assert parse_formula("p & q & r") is And(And(p, q), r)

    def test_bare_identifiers(self):
        assert parse_formula("alpha -> beta_2").variables() == [Var("alpha"), Var("beta_2")]

    @pytest.mark.parametrize("text", ["", "p &", "(p", "p q", "-> p", "p ~", "p # q", "p)"])
    def test_errors_carry_position(self, text):
        with pytest.raises(ParseError) as e:
            parse_formula(text)
        assert 0 <= e.value.pos <= len(text)

    def test_parse_many(self):
        assert parse_many("p; ~p") == [p, ~p]

    @given(formulas())
    def test_round_trip(self, f):
        assert parse_formula(format_formula(f)) is f

    @given(formulas())
    def test_format_is_canonical(self, f):
        text = format_formula(f)
        assert format_formula(parse_formula(text)) == text


class TestClosure:
    def test_conjunction(self):
        assert subformula_closure([p & q]) == [p, q, p & q]

    def test_double_negation(self):
        assert subformula_closure([~~p]) == [p, ~p, ~~p]

    def test_shared_leaves(self):
        assert len(subformula_closure([p >> q, q >> p])) == 4

    @given(formulas())
    def test_children_before_parents(self, f):
        cl = subformula_closure([f])
        pos = {g: i for i, g in enumerate(cl)}
        assert len(pos) == len(cl)
        for g in cl:
            for a in g.args:
                assert pos[a] < pos[g]
        assert cl[-1] is f


class TestSchemas:
    def test_matching(self):
        assert match_schema(SCHEMAS["PL"], parse_formula("p0 | (p0 -> p1)")) == {Var("A"): p0, Var("B"): p1}
        assert match_schema(SCHEMAS["AX1"], parse_formula("p -> q -> q")) is None
        assert match_schema(SCHEMAS["AX1"], parse_formula("(p & q) -> ~p -> p & q")) is not None

    @given(formulas(max_leaves=4), formulas(max_leaves=4), formulas(max_leaves=4))
    def test_instances_match(self, a, b, c):
        sigma = {Var("A"): a, Var("B"): b, Var("C"): c}
        for name, schema in SCHEMAS.items():
            inst = schema.substitute(sigma)
            got = match_schema(schema, inst)
            assert got is not None
            assert schema.substitute(got) is inst

    @given(formulas(max_leaves=6))
    def test_agrees_with_naive_matcher(self, f):
        for schema in SCHEMAS.values():
            assert (match_schema(schema, f) is not None) == schema_instance(schema, f)


class TestGn:
    def test_g1(self):
        p1_, p2_ = Var("p1"), Var("p2")
        assert gn_formula(1) is And(Imp(p1_, p2_), Imp(p2_, p1_))

    def test_g2_has_three_disjuncts(self):
        f = gn_formula(2)
        disjuncts = []

        def flatten(g):
            if g.op == "or":
                flatten(g.args[0])
                flatten(g.args[1])
            else:
                disjuncts.append(g)

        flatten(f)
        assert len(disjuncts) == 3
        assert f.args[0].op == "or"  # left-associated

    @pytest.mark.parametrize("n", range(1, 7))
    def test_variable_count(self, n):
        assert len(gn_formula(n).variables()) == n + 1

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            gn_formula(0)
