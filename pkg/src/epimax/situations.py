"""Brute-force enumeration of non-equivalent epistemic situations.

A situation is a distinguished real-world assignment together with the set
of assignments the agent considers possible; the three logics differ only
in which (real world, possible set) pairs exist:

* K45: any possible set, including the empty one;
* KD45: the possible set is nonempty;
* S5: the real world belongs to the possible set.

Everything in this module works by explicit enumeration, which is doubly
exponential in the vocabulary size and therefore capped.  It serves as the
ground truth the closed-form counting engine is validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .errors import CapExceededError, InconsistentKnowledgeError
from .formulas import (
    And,
    Belief,
    Const,
    Formula,
    Iff,
    Implies,
    LogicKind,
    Not,
    Or,
    Prop,
    Vocabulary,
    is_propositional,
    validate_depth_one,
)
from .tables import _tt_bits, full_mask

ORACLE_MAX_PROPS = 4


@dataclass(frozen=True)
class Situation:
    """One equivalence-class representative: real world plus possible set.

    ``possible`` is a bitmask over assignment indices (bit ``x`` set means
    assignment ``x`` is considered possible).
    """

    real_world: int
    possible: int
    vocab: Vocabulary

    def valid_for(self, logic: LogicKind) -> bool:
        if logic is LogicKind.KD45:
            return self.possible != 0
        if logic is LogicKind.S5:
            return bool((self.possible >> self.real_world) & 1)
        return True


def situation_space_size(logic: LogicKind, vocab: Vocabulary) -> int:
    """Closed-form number of non-equivalent situations of the logic."""
    worlds = vocab.assignment_count
    if logic is LogicKind.K45:
        return (1 << worlds) << len(vocab)
    if logic is LogicKind.KD45:
        return ((1 << worlds) - 1) << len(vocab)
    return (1 << (worlds - 1)) << len(vocab)


def _check_cap(vocab: Vocabulary, max_props: int) -> None:
    limit = min(max_props, ORACLE_MAX_PROPS)
    if len(vocab) > limit:
        raise CapExceededError(
            f"enumeration over {len(vocab)} propositions exceeds the cap of {limit}"
        )


def enumerate_situations(
    logic: LogicKind, vocab: Vocabulary, max_props: int = ORACLE_MAX_PROPS
) -> Iterator[Situation]:
    """Yield every situation exactly once, in a fixed order.

    Order: real world ascending, then the possible-set bitmask ascending.
    """
    _check_cap(vocab, max_props)
    worlds = vocab.assignment_count
    n_sets = 1 << worlds
    for real_world in range(worlds):
        if logic is LogicKind.K45:
            for pset in range(n_sets):
                yield Situation(real_world, pset, vocab)
        elif logic is LogicKind.KD45:
            for pset in range(1, n_sets):
                yield Situation(real_world, pset, vocab)
        else:
            bit = 1 << real_world
            for pset in range(n_sets):
                if pset & bit:
                    yield Situation(real_world, pset, vocab)


def eval_situation(s: Situation, f: Formula) -> bool:
    """Evaluate a depth-one formula at a situation.

    Propositional parts are decided at the real world; ``B phi`` holds when
    every possible world satisfies ``phi`` (vacuously true when the possible
    set is empty).
    """
    if is_propositional(f):
        return bool((_tt_bits(f, s.vocab) >> s.real_world) & 1)
    if isinstance(f, Belief):
        bits = _tt_bits(f.body, s.vocab)
        return s.possible & (bits ^ full_mask(len(s.vocab))) == 0
    if isinstance(f, Not):
        return not eval_situation(s, f.body)
    if isinstance(f, And):
        return eval_situation(s, f.left) and eval_situation(s, f.right)
    if isinstance(f, Or):
        return eval_situation(s, f.left) or eval_situation(s, f.right)
    if isinstance(f, Implies):
        return (not eval_situation(s, f.left)) or eval_situation(s, f.right)
    if isinstance(f, Iff):
        return eval_situation(s, f.left) == eval_situation(s, f.right)
    raise TypeError(f"not a formula: {f!r}")


def oracle_count(
    f: Formula,
    logic: LogicKind,
    vocab: Vocabulary,
    max_props: int = ORACLE_MAX_PROPS,
) -> int:
    """Number of situations satisfying ``f``, by sweeping the whole space."""
    _check_cap(vocab, max_props)
    validate_depth_one(f)
    return kernels.count_satisfying_situations(f, logic, vocab)


def oracle_probability(
    kb,
    f: Formula,
    max_props: int = ORACLE_MAX_PROPS,
) -> float:
    """Query probability by direct enumeration of the weighted space.

    ``kb`` is any object with ``logic``, ``vocab`` and ``entries`` (pairs of
    weight and formula; weight ``math.inf`` marks a hard constraint).
    Raises ``InconsistentKnowledgeError`` when hard constraints exclude
    every situation.
    """
    vocab = kb.vocab
    _check_cap(vocab, max_props)
    validate_depth_one(f)

    allowed = kernels.logic_mask_matrix(kb.logic, len(vocab))
    log_weight = np.zeros(allowed.shape, dtype=np.float64)
    for weight, formula in kb.entries:
        sat = kernels.satisfaction_matrix(formula, vocab)
        if math.isinf(weight):
            allowed &= sat
        else:
            log_weight += weight * sat
    if not allowed.any():
        raise InconsistentKnowledgeError(
            "hard constraints exclude every situation"
        )

    shift = float(log_weight[allowed].max())
    weights = np.where(allowed, np.exp(log_weight - shift), 0.0)
    z = float(weights.sum())
    sat_f = kernels.satisfaction_matrix(f, vocab)
    return float(weights[sat_f].sum() / z)
