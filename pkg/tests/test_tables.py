"""Truth tables and exact model counting."""

import pytest
from hypothesis import given

from epimax import (
    And,
    Belief,
    Not,
    Or,
    Prop,
    TRUE,
    Vocabulary,
    evaluate_assignment,
    model_count,
    parse,
    truth_table,
)
from epimax.errors import NotPropositionalError

from .strategies import propositional_formulas

P, Q = Prop("p"), Prop("q")
V3 = Vocabulary(("p", "q", "r"))


class TestTruthTable:
    def test_single_prop_pattern(self, vocab_pq):
        # Assignment j=0..3; p reads bit 0 of j, so p holds at j=1 and j=3.
        assert truth_table(P, vocab_pq).bits == 0b1010
        assert truth_table(Q, vocab_pq).bits == 0b1100

    def test_constant_true(self, vocab_pq):
        assert truth_table(TRUE, vocab_pq).bits == 0b1111

    def test_conjunction_single_bit(self, vocab_pq):
        assert truth_table(And(P, Q), vocab_pq).bits == 0b1000

    def test_rejects_modal(self, vocab_pq):
        with pytest.raises(NotPropositionalError):
            truth_table(Belief(P), vocab_pq)

    @given(propositional_formulas(V3))
    def test_matches_per_assignment_evaluation(self, f):
        table = truth_table(f, V3)
        for j in range(V3.assignment_count):
            assert table.value(j) == evaluate_assignment(f, j, V3)


class TestModelCount:
    def test_disjunction(self, vocab_pq):
        assert model_count(Or(P, Q), vocab_pq) == 3

    def test_true_counts_all_assignments(self, vocab_pq):
        assert model_count(TRUE, vocab_pq) == 4

    def test_unused_propositions_count(self, vocab_pqr):
        assert model_count(P, vocab_pqr) == 4

    @given(propositional_formulas(V3))
    def test_complement(self, f):
        assert model_count(f, V3) + model_count(Not(f), V3) == 8

    @given(propositional_formulas(V3), propositional_formulas(V3))
    def test_split_on_second_formula(self, f, g):
        assert (
            model_count(And(f, g), V3) + model_count(And(f, Not(g)), V3)
            == model_count(f, V3)
        )

    @given(propositional_formulas(Vocabulary(("p", "q"))))
    def test_fresh_propositions_double_the_count(self, f):
        base = Vocabulary(("p", "q"))
        for k in (1, 2):
            extended = Vocabulary(("p", "q") + tuple(f"z{i}" for i in range(k)))
            assert model_count(f, extended) == model_count(f, base) << k

    def test_bounds(self, vocab_pq):
        f = parse("(p | q) & ~p", vocab_pq)
        assert 0 <= model_count(f, vocab_pq) <= 4
