"""Partition function and query probabilities from exact counts.

A knowledge base of weighted depth-one formulas induces a log-linear
distribution over situations.  Sign vectors over the finite-weight entries
partition the space into blocks of equiprobable situations, so the
partition function is a sum of ``count * exp(weight sum)`` with one exact
integer count per sign vector.  Entries with weight ``+inf`` are hard
constraints: they restrict the space instead of entering the weight sums.

Counts are exact big integers throughout; only the final log-sum-exp runs
in floating point, over terms accumulated in a fixed order so results are
bit-deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .counting import (
    BasicTerm,
    SignedDecomposition,
    TRUE,
    complement_decomposition,
    conjoin_decompositions,
    count_decomposition,
    decompose,
)
from .errors import (
    CapExceededError,
    InconsistentKnowledgeError,
    ZeroProbabilityEventError,
)
from .formulas import (
    And,
    Formula,
    LogicKind,
    Vocabulary,
    is_propositional,
    require_propositional,
    support_vocabulary,
    validate_depth_one,
    validate_vocabulary,
)
from .situations import Situation, eval_situation
from .tables import evaluate_assignment

MAX_FINITE_ENTRIES = 20


class KnowledgeBase:
    """A logic, a vocabulary, and weighted depth-one formulas.

    Weights are finite reals or ``math.inf`` (a hard constraint).  ``-inf``
    is rejected: express it as ``+inf`` on the negated formula.
    """

    __slots__ = ("logic", "vocab", "entries")

    def __init__(self, logic: LogicKind, vocab: Vocabulary, entries=()):
        if not isinstance(logic, LogicKind):
            raise TypeError(f"not a logic: {logic!r}")
        normalized = []
        for weight, formula in entries:
            weight = float(weight)
            if math.isnan(weight):
                raise ValueError("weight must not be NaN")
            if weight == -math.inf:
                raise ValueError(
                    "-inf weight is not accepted; use +inf on the negation"
                )
            validate_depth_one(formula)
            validate_vocabulary(formula, vocab)
            normalized.append((weight, formula))
        self.logic = logic
        self.vocab = vocab
        self.entries = tuple(normalized)

    @property
    def finite_entries(self) -> tuple[tuple[float, Formula], ...]:
        return tuple((w, f) for w, f in self.entries if math.isfinite(w))

    @property
    def hard_formulas(self) -> tuple[Formula, ...]:
        return tuple(f for w, f in self.entries if math.isinf(w))

    def __repr__(self) -> str:
        return (
            f"KnowledgeBase({self.logic.value}, {self.vocab!r}, "
            f"{len(self.entries)} entries)"
        )


@dataclass(frozen=True)
class TermRecord:
    """One sign vector's contribution to the partition function.

    ``sign_bits`` encodes which finite entries are taken positively (bit i
    set means entry i is asserted).  ``count`` is the exact number of
    situations in the block; ``query_count`` the number also satisfying the
    query, when one was given.
    """

    sign_bits: int
    weight: float
    count: int
    query_count: int | None = None


@dataclass(frozen=True)
class InferenceResult:
    probability: float
    log_z: float
    log_numerator: float
    breakdown: tuple[TermRecord, ...] | None = None


def _logsumexp(values) -> float:
    values = list(values)
    if not values:
        return -math.inf
    m = max(values)
    if m == -math.inf:
        return -math.inf
    return m + math.log(sum(math.exp(v - m) for v in values))


def _term_records(kb: KnowledgeBase, query: Formula | None) -> list[TermRecord]:
    """Exact block counts for every sign vector over the finite entries."""
    finite = kb.finite_entries
    hard = kb.hard_formulas
    if len(finite) > MAX_FINITE_ENTRIES:
        raise CapExceededError(
            f"{len(finite)} finite-weight entries exceed the cap of "
            f"{MAX_FINITE_ENTRIES}"
        )

    everything = [f for _, f in finite] + list(hard)
    if query is not None:
        everything.append(query)
    key_vocab = support_vocabulary(*everything)

    base = SignedDecomposition(((1, BasicTerm(TRUE, TRUE)),))
    for h in hard:
        base = conjoin_decompositions(base, decompose(h, key_vocab), key_vocab)

    positive = [decompose(f, key_vocab) for _, f in finite]
    negative = [complement_decomposition(d, key_vocab) for d in positive]
    query_decomp = decompose(query, key_vocab) if query is not None else None

    records: list[TermRecord] = []

    def descend(i: int, decomp: SignedDecomposition, bits: int, weight: float):
        if i == len(finite):
            count = count_decomposition(decomp, kb.logic, kb.vocab)
            query_count = None
            if query_decomp is not None:
                query_count = 0
                if count > 0:
                    query_count = count_decomposition(
                        conjoin_decompositions(decomp, query_decomp, key_vocab),
                        kb.logic,
                        kb.vocab,
                    )
            records.append(TermRecord(bits, weight, count, query_count))
            return
        w_i = finite[i][0]
        descend(
            i + 1,
            conjoin_decompositions(decomp, positive[i], key_vocab),
            bits | (1 << i),
            weight + w_i,
        )
        descend(i + 1, conjoin_decompositions(decomp, negative[i], key_vocab), bits, weight)

    descend(0, base, 0, 0.0)
    records.sort(key=lambda r: r.sign_bits)
    return records


def _log_z(records) -> float:
    terms = [math.log(r.count) + r.weight for r in records if r.count > 0]
    if not terms:
        raise InconsistentKnowledgeError("hard constraints exclude every situation")
    return _logsumexp(terms)


def partition_function(kb: KnowledgeBase) -> float:
    """Log of the partition function of the knowledge base.

    Hard constraints restrict the space; their weights do not enter the
    sum.  Raises ``InconsistentKnowledgeError`` when nothing survives them.
    """
    return _log_z(_term_records(kb, None))


def probability(
    kb: KnowledgeBase, f: Formula, breakdown: bool = False
) -> InferenceResult:
    """Probability of a depth-one query under the knowledge base."""
    validate_depth_one(f)
    validate_vocabulary(f, kb.vocab)
    records = _term_records(kb, f)
    log_z = _log_z(records)
    log_num = _logsumexp(
        math.log(r.query_count) + r.weight for r in records if r.query_count
    )
    prob = 0.0 if log_num == -math.inf else min(1.0, math.exp(log_num - log_z))
    return InferenceResult(
        probability=prob,
        log_z=log_z,
        log_numerator=log_num,
        breakdown=tuple(records) if breakdown else None,
    )


def conditional(kb: KnowledgeBase, f: Formula, given: Formula) -> float:
    """Conditional probability of ``f`` given ``given``.

    Raises ``ZeroProbabilityEventError`` when the conditioning event has
    probability zero (an exact, not a floating-point, test).
    """
    joint = probability(kb, And(f, given))
    marginal = probability(kb, given)
    if marginal.log_numerator == -math.inf:
        raise ZeroProbabilityEventError(
            "conditioning event has probability zero"
        )
    if joint.log_numerator == -math.inf:
        return 0.0
    return min(1.0, math.exp(joint.log_numerator - marginal.log_numerator))


def situation_probability(kb: KnowledgeBase, s: Situation) -> float:
    """Probability mass of one situation (enumeration-scale validation aid)."""
    for h in kb.hard_formulas:
        if not eval_situation(s, h):
            return 0.0
    log_z = partition_function(kb)
    weight = sum(w for w, f in kb.finite_entries if eval_situation(s, f))
    return math.exp(weight - log_z)


def propositional_markov_probability(entries, vocab: Vocabulary, query: Formula) -> float:
    """Reference log-linear probability over plain truth assignments.

    Takes finite-weight propositional entries only; used as the baseline
    the situation-space semantics must reproduce on propositional input.
    """
    require_propositional(query, "query")
    for weight, f in entries:
        if not math.isfinite(weight):
            raise ValueError("baseline accepts finite weights only")
        require_propositional(f, "entry")
    z = 0.0
    num = 0.0
    for x in range(vocab.assignment_count):
        w = sum(weight for weight, f in entries if evaluate_assignment(f, x, vocab))
        e = math.exp(w)
        z += e
        if evaluate_assignment(query, x, vocab):
            num += e
    return num / z
