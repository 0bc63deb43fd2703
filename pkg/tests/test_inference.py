"""Partition function, query probabilities, and the situation distribution."""

import math
import random

import pytest

from epimax import (
    And,
    Belief,
    KnowledgeBase,
    LogicKind,
    Not,
    Prop,
    Situation,
    TRUE,
    Vocabulary,
    conditional,
    count_formula,
    enumerate_situations,
    oracle_probability,
    parse,
    partition_function,
    probability,
    propositional_markov_probability,
    situation_probability,
    situation_space_size,
)
from epimax.errors import (
    CapExceededError,
    InconsistentKnowledgeError,
    ZeroProbabilityEventError,
)
from epimax.formulagen import (
    random_entailing_pair,
    random_formula,
    random_knowledge_base,
    random_propositional,
)

P = Prop("p")


class TestKnowledgeBase:
    def test_rejects_negative_infinity(self, vocab_p):
        with pytest.raises(ValueError):
            KnowledgeBase(LogicKind.K45, vocab_p, [(-math.inf, P)])

    def test_rejects_nan(self, vocab_p):
        with pytest.raises(ValueError):
            KnowledgeBase(LogicKind.K45, vocab_p, [(math.nan, P)])

    def test_rejects_foreign_propositions(self, vocab_p):
        with pytest.raises(Exception):
            KnowledgeBase(LogicKind.K45, vocab_p, [(1.0, Prop("q"))])

    def test_splits_hard_and_finite(self, vocab_p):
        kb = KnowledgeBase(
            LogicKind.K45, vocab_p, [(1.0, P), (math.inf, Belief(P))]
        )
        assert kb.finite_entries == ((1.0, P),)
        assert kb.hard_formulas == (Belief(P),)


class TestPartitionFunction:
    def test_weighted_belief(self, vocab_p):
        kb = KnowledgeBase(LogicKind.K45, vocab_p, [(math.log(2), Belief(P))])
        assert partition_function(kb) == pytest.approx(math.log(12), abs=1e-12)

    def test_empty_kb_is_log_space_size(self, vocab_pq):
        kb = KnowledgeBase(LogicKind.S5, vocab_pq, [])
        assert partition_function(kb) == pytest.approx(math.log(32), abs=1e-12)

    def test_inconsistent_hard_constraints(self, vocab_p):
        kb = KnowledgeBase(
            LogicKind.S5, vocab_p, [(math.inf, parse("p & ~p", vocab_p))]
        )
        with pytest.raises(InconsistentKnowledgeError):
            partition_function(kb)

    def test_finite_entry_cap(self, vocab_p):
        entries = [(0.1, P)] * 21
        kb = KnowledgeBase(LogicKind.K45, vocab_p, entries)
        with pytest.raises(CapExceededError):
            partition_function(kb)

    @pytest.mark.parametrize("logic", LogicKind)
    def test_sign_vector_blocks_partition_the_space(self, logic):
        # The exact block counts must sum to the space size, whatever the KB.
        vocab = Vocabulary(("p", "q", "r"))
        rng = random.Random(f"partition:{logic.value}")
        for _ in range(10):
            kb = random_knowledge_base(
                rng, logic, vocab, n_entries=rng.randint(1, 6)
            )
            res = probability(kb, TRUE, breakdown=True)
            assert sum(r.count for r in res.breakdown) == situation_space_size(
                logic, vocab
            )

    def test_hard_constraints_restrict_the_blocks(self, vocab_pq):
        hard = parse("p | q", vocab_pq)
        kb = KnowledgeBase(
            LogicKind.K45, vocab_pq, [(0.5, Belief(P)), (math.inf, hard)]
        )
        res = probability(kb, TRUE, breakdown=True)
        assert sum(r.count for r in res.breakdown) == count_formula(
            hard, LogicKind.K45, vocab_pq
        )


class TestProbability:
    def test_uniform_prior_on_propositions(self):
        for logic in LogicKind:
            for names in (("p",), ("p", "q")):
                vocab = Vocabulary(names)
                kb = KnowledgeBase(logic, vocab, [])
                got = probability(kb, Prop("p")).probability
                assert got == pytest.approx(0.5, abs=1e-12)

    def test_weighted_belief(self, vocab_p):
        kb = KnowledgeBase(LogicKind.K45, vocab_p, [(math.log(2), Belief(P))])
        assert probability(kb, Belief(P)).probability == pytest.approx(
            2 / 3, abs=1e-12
        )

    def test_hard_constraint(self, vocab_p):
        kb = KnowledgeBase(LogicKind.S5, vocab_p, [(math.inf, P)])
        assert probability(kb, Belief(P)).probability == pytest.approx(
            0.5, abs=1e-12
        )

    def test_tautology_is_exactly_one(self, vocab_pq):
        rng = random.Random(0)
        kb = random_knowledge_base(rng, LogicKind.KD45, vocab_pq, 3)
        assert probability(kb, TRUE).probability == 1.0

    def test_contradiction_is_exactly_zero(self, vocab_pq):
        kb = KnowledgeBase(LogicKind.K45, vocab_pq, [(0.3, P)])
        assert probability(kb, parse("p & ~p", vocab_pq)).probability == 0.0

    def test_belief_in_false_separates_the_logics(self, vocab_p):
        f = Belief(parse("false", vocab_p))
        values = {
            logic: probability(
                KnowledgeBase(logic, vocab_p, []), f
            ).probability
            for logic in LogicKind
        }
        assert values[LogicKind.K45] == pytest.approx(0.25, abs=1e-12)
        assert values[LogicKind.KD45] == 0.0
        assert values[LogicKind.S5] == 0.0

    @pytest.mark.parametrize("logic", LogicKind)
    def test_matches_oracle_probability(self, logic):
        vocab = Vocabulary(("p", "q"))
        rng = random.Random(f"oracle:{logic.value}")
        for _ in range(15):
            kb = random_knowledge_base(
                rng, logic, vocab, rng.randint(0, 4), hard_probability=0.2
            )
            query = random_formula(rng, vocab, rng.randint(2, 7))
            try:
                expected = oracle_probability(kb, query)
            except InconsistentKnowledgeError:
                with pytest.raises(InconsistentKnowledgeError):
                    probability(kb, query)
                continue
            got = probability(kb, query).probability
            assert got == pytest.approx(expected, abs=1e-9)

    def test_propositional_kb_reduces_to_markov_logic(self):
        vocab = Vocabulary(("p", "q", "r"))
        rng = random.Random(13)
        for _ in range(10):
            entries = [
                (
                    rng.uniform(-1.5, 1.5),
                    random_propositional(rng, vocab, rng.randint(2, 6)),
                )
                for _ in range(rng.randint(1, 4))
            ]
            query = random_propositional(rng, vocab, rng.randint(2, 6))
            expected = propositional_markov_probability(entries, vocab, query)
            for logic in LogicKind:
                kb = KnowledgeBase(logic, vocab, entries)
                got = probability(kb, query).probability
                assert got == pytest.approx(expected, abs=1e-12)

    def test_subsumed_formula_is_strictly_less_likely(self):
        vocab = Vocabulary(("p", "q"))
        for logic in LogicKind:
            rng = random.Random(f"subsume:{logic.value}")
            for _ in range(10):
                kb = random_knowledge_base(rng, logic, vocab, rng.randint(0, 3))
                stronger, weaker = random_entailing_pair(rng, logic, vocab)
                p_strong = probability(kb, stronger).probability
                p_weak = probability(kb, weaker).probability
                assert p_strong < p_weak


class TestConditional:
    def test_conditioning_on_the_query(self, vocab_p):
        kb = KnowledgeBase(LogicKind.S5, vocab_p, [])
        assert conditional(kb, P, P) == 1.0

    def test_belief_given_opinionated(self, vocab_p):
        kb = KnowledgeBase(LogicKind.K45, vocab_p, [])
        given = parse("Bp | B(~p)", vocab_p)
        assert conditional(kb, Belief(P), given) == pytest.approx(
            2 / 3, abs=1e-12
        )

    def test_zero_probability_event(self, vocab_pq):
        kb = KnowledgeBase(LogicKind.K45, vocab_pq, [(0.2, P)])
        with pytest.raises(ZeroProbabilityEventError):
            conditional(kb, Prop("q"), parse("p & ~p", vocab_pq))


class TestSituationProbability:
    def test_uniform(self, vocab_p):
        kb = KnowledgeBase(LogicKind.K45, vocab_p, [])
        s = Situation(0, 0, vocab_p)
        assert situation_probability(kb, s) == pytest.approx(1 / 8, abs=1e-12)

    def test_weighted(self, vocab_p):
        kb = KnowledgeBase(LogicKind.K45, vocab_p, [(math.log(2), Belief(P))])
        s = Situation(1, 0b10, vocab_p)  # p true, believes p
        assert situation_probability(kb, s) == pytest.approx(2 / 12, abs=1e-12)

    def test_hard_violation_is_zero(self, vocab_p):
        kb = KnowledgeBase(LogicKind.K45, vocab_p, [(math.inf, P)])
        s = Situation(0, 0b11, vocab_p)  # real world falsifies p
        assert situation_probability(kb, s) == 0.0

    @pytest.mark.parametrize("logic", LogicKind)
    def test_masses_sum_to_one(self, logic):
        vocab = Vocabulary(("p", "q"))
        rng = random.Random(f"mass:{logic.value}")
        for _ in range(5):
            kb = random_knowledge_base(rng, logic, vocab, rng.randint(0, 3))
            total = sum(
                situation_probability(kb, s)
                for s in enumerate_situations(logic, vocab)
            )
            assert total == pytest.approx(1.0, abs=1e-12)
