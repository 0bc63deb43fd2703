"""Formula and knowledge-base generators for cross-checking and tests."""

from __future__ import annotations

import math
import random
from typing import Iterator

from .counting import count_formula
from .formulas import (
    And,
    Belief,
    FALSE,
    Formula,
    Iff,
    Implies,
    LogicKind,
    Not,
    Or,
    Prop,
    TRUE,
    Vocabulary,
)
from .inference import KnowledgeBase

_BINARY_OPS = (And, Or, Implies, Iff)


def random_propositional(rng: random.Random, vocab: Vocabulary, size: int) -> Formula:
    """Random propositional formula with at most ``size`` nodes."""
    if size <= 1:
        roll = rng.random()
        if roll < 0.75:
            return Prop(rng.choice(vocab.props))
        return TRUE if roll < 0.875 else FALSE
    roll = rng.random()
    if roll < 0.25:
        return Not(random_propositional(rng, vocab, size - 1))
    op = rng.choice(_BINARY_OPS)
    left_size = rng.randint(1, size - 2) if size > 2 else 1
    return op(
        random_propositional(rng, vocab, left_size),
        random_propositional(rng, vocab, size - 1 - left_size),
    )


def random_formula(
    rng: random.Random,
    vocab: Vocabulary,
    size: int,
    modal_probability: float = 0.35,
) -> Formula:
    """Random depth-one formula with at most ``size`` nodes."""
    if size <= 1:
        roll = rng.random()
        if roll < 0.7:
            return Prop(rng.choice(vocab.props))
        return TRUE if roll < 0.85 else FALSE
    roll = rng.random()
    if roll < modal_probability and size >= 2:
        return Belief(random_propositional(rng, vocab, size - 1))
    if roll < modal_probability + 0.2:
        return Not(random_formula(rng, vocab, size - 1, modal_probability))
    op = rng.choice(_BINARY_OPS)
    left_size = rng.randint(1, size - 2) if size > 2 else 1
    return op(
        random_formula(rng, vocab, left_size, modal_probability),
        random_formula(rng, vocab, size - 1 - left_size, modal_probability),
    )


def random_knowledge_base(
    rng: random.Random,
    logic: LogicKind,
    vocab: Vocabulary,
    n_entries: int,
    max_nodes: int = 8,
    weight_range: tuple[float, float] = (-1.5, 1.5),
    hard_probability: float = 0.0,
    propositional_only: bool = False,
) -> KnowledgeBase:
    """Random knowledge base with bounded weights (optionally hard entries)."""
    entries = []
    for _ in range(n_entries):
        size = rng.randint(2, max_nodes)
        if propositional_only:
            f = random_propositional(rng, vocab, size)
        else:
            f = random_formula(rng, vocab, size)
        if rng.random() < hard_probability:
            entries.append((math.inf, f))
        else:
            entries.append((rng.uniform(*weight_range), f))
    return KnowledgeBase(logic, vocab, entries)


def random_entailing_pair(
    rng: random.Random,
    logic: LogicKind,
    vocab: Vocabulary,
    max_nodes: int = 6,
    max_attempts: int = 200,
) -> tuple[Formula, Formula]:
    """A pair (stronger, weaker) with strict one-way entailment.

    The stronger formula is a conjunction extending the weaker one, so it
    entails it; candidates are rejected until some situation of the logic
    separates them (the pair is non-equivalent).
    """
    for _ in range(max_attempts):
        weaker = random_formula(rng, vocab, max_nodes)
        stronger = And(weaker, random_formula(rng, vocab, max_nodes))
        separation = count_formula(And(weaker, Not(stronger)), logic, vocab)
        if separation > 0:
            return stronger, weaker
    raise RuntimeError("failed to generate a non-equivalent entailing pair")


def all_formulas(vocab: Vocabulary, max_nodes: int) -> Iterator[Formula]:
    """Every depth-one formula with up to ``max_nodes`` syntax nodes.

    Exhaustive over the full connective set; belief bodies range over the
    propositional formulas of the remaining size.
    """
    leaves = [TRUE, FALSE] + [Prop(name) for name in vocab.props]
    prop_by_size: list[list[Formula]] = [[], leaves]
    modal_by_size: list[list[Formula]] = [[], []]

    for size in range(2, max_nodes + 1):
        props: list[Formula] = [Not(g) for g in prop_by_size[size - 1]]
        modals: list[Formula] = [Not(g) for g in modal_by_size[size - 1]]
        modals += [Belief(g) for g in prop_by_size[size - 1]]
        for left_size in range(1, size - 1):
            right_size = size - 1 - left_size
            for op in _BINARY_OPS:
                for a in prop_by_size[left_size]:
                    for b in prop_by_size[right_size]:
                        props.append(op(a, b))
                    for b in modal_by_size[right_size]:
                        modals.append(op(a, b))
                for a in modal_by_size[left_size]:
                    for b in prop_by_size[right_size]:
                        modals.append(op(a, b))
                    for b in modal_by_size[right_size]:
                        modals.append(op(a, b))
        prop_by_size.append(props)
        modal_by_size.append(modals)

    for size in range(1, max_nodes + 1):
        yield from prop_by_size[size]
        yield from modal_by_size[size]
