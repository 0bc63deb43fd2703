"""Truth tables and exact model counting over a fixed vocabulary.

Tables are plain Python integers used as bit vectors: bit ``j`` holds the
formula's value under assignment index ``j``.  Construction is bit-parallel
(one big-integer operation per syntax node) and memoized per formula and
vocabulary, so semantically reused subformulas cost nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotPropositionalError
from .formulas import (
    And,
    Belief,
    Const,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Prop,
    Vocabulary,
    to_text,
)


@dataclass(frozen=True)
class TruthTable:
    """Bit-vector semantics of a propositional formula over a vocabulary."""

    bits: int
    vocab: Vocabulary

    def model_count(self) -> int:
        return self.bits.bit_count()

    def value(self, assignment: int) -> bool:
        return bool((self.bits >> assignment) & 1)


def full_mask(n_props: int) -> int:
    """Table of the constant ``true`` over ``n_props`` propositions."""
    return (1 << (1 << n_props)) - 1


@lru_cache(maxsize=None)
def _prop_mask(n_props: int, i: int) -> int:
    # Periodic pattern: runs of 2**i zeros then 2**i ones, built by doubling.
    half = 1 << i
    width = half << 1
    mask = ((1 << half) - 1) << half
    total = 1 << n_props
    while width < total:
        mask |= mask << width
        width <<= 1
    return mask


@lru_cache(maxsize=1 << 16)
def _tt_bits(f: Formula, vocab: Vocabulary) -> int:
    n = len(vocab)
    if isinstance(f, Const):
        return full_mask(n) if f.value else 0
    if isinstance(f, Prop):
        return _prop_mask(n, vocab.index(f.name))
    if isinstance(f, Not):
        return _tt_bits(f.body, vocab) ^ full_mask(n)
    if isinstance(f, And):
        return _tt_bits(f.left, vocab) & _tt_bits(f.right, vocab)
    if isinstance(f, Or):
        return _tt_bits(f.left, vocab) | _tt_bits(f.right, vocab)
    if isinstance(f, Implies):
        return (_tt_bits(f.left, vocab) ^ full_mask(n)) | _tt_bits(f.right, vocab)
    if isinstance(f, Iff):
        return (_tt_bits(f.left, vocab) ^ _tt_bits(f.right, vocab)) ^ full_mask(n)
    if isinstance(f, Belief):
        raise NotPropositionalError(
            f"belief operator in a propositional context: {to_text(f)}"
        )
    raise TypeError(f"not a formula: {f!r}")


def truth_table(f: Formula, vocab: Vocabulary) -> TruthTable:
    """Table of a propositional formula; rejects modal input."""
    return TruthTable(_tt_bits(f, vocab), vocab)


def model_count(f: Formula, vocab: Vocabulary) -> int:
    """Number of satisfying assignments of ``f`` over the whole vocabulary.

    Propositions of the vocabulary that do not occur in ``f`` still count:
    each unused proposition doubles the result.
    """
    return _tt_bits(f, vocab).bit_count()


def evaluate_assignment(f: Formula, assignment: int, vocab: Vocabulary) -> bool:
    """Definitional (per-assignment) evaluation; reference for the tables."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Prop):
        return bool((assignment >> vocab.index(f.name)) & 1)
    if isinstance(f, Not):
        return not evaluate_assignment(f.body, assignment, vocab)
    if isinstance(f, And):
        return evaluate_assignment(f.left, assignment, vocab) and evaluate_assignment(
            f.right, assignment, vocab
        )
    if isinstance(f, Or):
        return evaluate_assignment(f.left, assignment, vocab) or evaluate_assignment(
            f.right, assignment, vocab
        )
    if isinstance(f, Implies):
        return (not evaluate_assignment(f.left, assignment, vocab)) or evaluate_assignment(
            f.right, assignment, vocab
        )
    if isinstance(f, Iff):
        return evaluate_assignment(f.left, assignment, vocab) == evaluate_assignment(
            f.right, assignment, vocab
        )
    if isinstance(f, Belief):
        raise NotPropositionalError(
            f"belief operator in a propositional context: {to_text(f)}"
        )
    raise TypeError(f"not a formula: {f!r}")
