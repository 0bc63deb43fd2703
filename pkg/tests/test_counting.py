"""The closed-form counting engine against the enumeration oracle."""

import random

import pytest
from hypothesis import given, settings

from epimax import (
    And,
    BasicTerm,
    Belief,
    FALSE,
    LogicKind,
    Not,
    Prop,
    SimpleConjunction,
    TRUE,
    Vocabulary,
    count_basic,
    count_formula,
    count_simple,
    decompose,
    enumerate_situations,
    eval_situation,
    expand_simple,
    model_count,
    node_count,
    normalize_core,
    oracle_count,
    parse,
    situation_space_size,
    truth_table,
)
from epimax.errors import NotPropositionalError
from epimax.formulagen import random_formula, random_propositional

from .strategies import depth_one_formulas, propositional_formulas

P, Q = Prop("p"), Prop("q")
V2 = Vocabulary(("p", "q"))


def terms_as_keys(decomposition, vocab):
    return {
        (truth_table(t.phi0, vocab).bits, truth_table(t.psi, vocab).bits): coef
        for coef, t in decomposition
    }


class TestDecompose:
    def test_negated_belief(self):
        d = decompose(Not(Belief(P)))
        v = Vocabulary(("p",))
        assert terms_as_keys(d, v) == {
            (0b11, 0b11): 1,  # <true, true>
            (0b11, 0b10): -1,  # -<true, p>
        }

    def test_positive_and_negative_belief(self):
        d = decompose(And(Belief(P), Not(Belief(Q))))
        assert terms_as_keys(d, V2) == {
            (0b1111, 0b1010): 1,  # <true, p>
            (0b1111, 0b1000): -1,  # -<true, p & q>
        }

    def test_propositional_part_distributes(self):
        f = And(parse("p -> q", V2), Not(Belief(P)))
        d = decompose(f)
        impl = truth_table(parse("p -> q", V2), V2).bits
        assert terms_as_keys(d, V2) == {
            (impl, 0b1111): 1,
            (impl, 0b1010): -1,
        }

    def test_modal_input_requires_depth_one(self):
        with pytest.raises(Exception):
            decompose(Belief(Belief(P)))

    @given(depth_one_formulas(V2, max_leaves=6))
    @settings(max_examples=60)
    def test_pointwise_indicator(self, f):
        # The signed term sum must be exactly the 0/1 indicator of f at
        # every situation of every logic.
        d = decompose(f)
        for logic in LogicKind:
            for s in enumerate_situations(LogicKind.K45, V2):
                if not s.valid_for(logic):
                    continue
                total = sum(
                    coef * eval_situation(s, t.as_formula()) for coef, t in d
                )
                assert total == int(eval_situation(s, f))

    @given(depth_one_formulas(V2, max_leaves=6))
    @settings(max_examples=60)
    def test_size_bound(self, f):
        core = normalize_core(f)
        assert len(decompose(f)) <= 2 ** node_count(core)


class TestCountBasic:
    def test_whole_space(self):
        term = BasicTerm(TRUE, TRUE)
        assert count_basic(term, LogicKind.K45, V2) == 64

    def test_s5_instance(self):
        term = BasicTerm(parse("p -> q", V2), parse("p | q", V2))
        assert count_basic(term, LogicKind.S5, V2) == 8

    def test_kd45_contradictory_belief(self, vocab_p):
        assert count_basic(BasicTerm(TRUE, FALSE), LogicKind.KD45, vocab_p) == 0

    def test_s5_contradictory_belief_is_zero(self, vocab_p):
        assert count_basic(BasicTerm(TRUE, FALSE), LogicKind.S5, vocab_p) == 0
        assert count_basic(BasicTerm(P, FALSE), LogicKind.S5, vocab_p) == 0

    def test_closed_forms_against_model_counts(self):
        rng = random.Random(3)
        vocab = Vocabulary(("p", "q", "r"))
        worlds = vocab.assignment_count
        for _ in range(40):
            phi0 = random_propositional(rng, vocab, rng.randint(1, 6))
            psi = random_propositional(rng, vocab, rng.randint(1, 6))
            c0 = model_count(phi0, vocab)
            cp = model_count(psi, vocab)
            cb = model_count(And(phi0, psi), vocab)
            term = BasicTerm(phi0, psi)
            assert count_basic(term, LogicKind.K45, vocab) == c0 * 2**cp
            assert count_basic(term, LogicKind.KD45, vocab) == c0 * (2**cp - 1)
            expected_s5 = 0 if cp == 0 else cb * 2 ** (cp - 1)
            assert count_basic(term, LogicKind.S5, vocab) == expected_s5

    def test_matches_oracle(self):
        rng = random.Random(11)
        for _ in range(30):
            phi0 = random_propositional(rng, V2, rng.randint(1, 5))
            psi = random_propositional(rng, V2, rng.randint(1, 5))
            term = BasicTerm(phi0, psi)
            for logic in LogicKind:
                assert count_basic(term, logic, V2) == oracle_count(
                    term.as_formula(), logic, V2
                )

    def test_psi_true_specializes_to_propositional_row(self):
        for logic in LogicKind:
            got = count_basic(BasicTerm(P, TRUE), logic, V2)
            assert got == oracle_count(P, logic, V2)

    def test_rejects_modal_parts(self):
        with pytest.raises(NotPropositionalError):
            BasicTerm(Belief(P), TRUE)

    def test_k45_growth_per_fresh_proposition(self):
        # Adding one unused proposition multiplies the propositional-row
        # count by 2 * 2**(2**n).
        phi0 = parse("p | q", V2)
        for n in (2, 3):
            small = Vocabulary(("p", "q") + tuple(f"z{i}" for i in range(n - 2)))
            big = Vocabulary(("p", "q") + tuple(f"z{i}" for i in range(n - 1)))
            ratio = 2 * 2 ** (2 ** len(small))
            assert (
                count_basic(BasicTerm(phi0, TRUE), LogicKind.K45, big)
                == count_basic(BasicTerm(phi0, TRUE), LogicKind.K45, small) * ratio
            )


class TestCountSimple:
    def test_inclusion_exclusion_expansion_four_terms(self):
        conj = SimpleConjunction(
            parse("p -> q", V2), parse("p | q", V2), (P, Q)
        )
        expanded = expand_simple(conj)
        signs = [coef for coef, _ in expanded]
        assert signs == [1, -1, -1, 1]
        psis = [truth_table(t.psi, V2).bits for _, t in expanded]
        assert psis == [
            truth_table(parse("p | q", V2), V2).bits,
            truth_table(P, V2).bits,
            truth_table(Q, V2).bits,
            truth_table(And(P, Q), V2).bits,
        ]
        per_term = [
            coef * count_basic(t, LogicKind.S5, V2) for coef, t in expanded
        ]
        assert per_term == [8, -2, -4, 1]
        assert count_simple(conj, LogicKind.S5, V2) == 3

    def test_whole_space(self, vocab_p):
        conj = SimpleConjunction(TRUE, TRUE, ())
        assert count_simple(conj, LogicKind.K45, vocab_p) == 8

    @pytest.mark.parametrize("logic", LogicKind)
    def test_contradictory_beliefs(self, logic, vocab_p):
        conj = SimpleConjunction(TRUE, P, (P,))
        assert count_simple(conj, logic, vocab_p) == 0

    def test_matches_oracle(self):
        rng = random.Random(23)
        for _ in range(25):
            conj = SimpleConjunction(
                random_propositional(rng, V2, rng.randint(1, 4)),
                random_propositional(rng, V2, rng.randint(1, 4)),
                tuple(
                    random_propositional(rng, V2, rng.randint(1, 3))
                    for _ in range(rng.randint(0, 3))
                ),
            )
            for logic in LogicKind:
                assert count_simple(conj, logic, V2) == oracle_count(
                    conj.as_formula(), logic, V2
                )


class TestCountFormula:
    def test_simple_conjunction_instance(self):
        f = parse("(p -> q) & B(p|q) & ~Bp & ~Bq", V2)
        assert count_formula(f, LogicKind.S5, V2) == 3
        assert oracle_count(f, LogicKind.S5, V2) == 3

    def test_cnf_instance(self):
        f = parse("((p -> q) | Bp) & (p | B(p|q))", V2)
        expected = oracle_count(f, LogicKind.S5, V2)
        assert count_formula(f, LogicKind.S5, V2) == expected == 14

    def test_negated_belief_instance(self):
        f = parse("(p -> q) & ~Bp", V2)
        assert count_formula(f, LogicKind.S5, V2) == 22

    @given(depth_one_formulas(V2, max_leaves=6))
    @settings(max_examples=40)
    def test_complement(self, f):
        for logic in LogicKind:
            space = situation_space_size(logic, V2)
            assert (
                count_formula(f, logic, V2) + count_formula(Not(f), logic, V2)
                == space
            )

    def test_s5_belief_implies_truth(self):
        rng = random.Random(31)
        for _ in range(20):
            phi = random_propositional(rng, V2, rng.randint(1, 6))
            f = And(Belief(phi), Not(phi))
            assert count_formula(f, LogicKind.S5, V2) == 0

    @pytest.mark.parametrize("logic", LogicKind)
    def test_random_corpus_matches_oracle(self, logic):
        rng = random.Random(f"counting:{logic.value}")
        for omega in (1, 2):
            vocab = Vocabulary(tuple("pq"[:omega]))
            for _ in range(60):
                f = random_formula(rng, vocab, rng.randint(2, 9))
                assert count_formula(f, logic, vocab) == oracle_count(
                    f, logic, vocab
                )
