"""Large-vocabulary behavior of situation counts and probabilities.

As fresh propositions are added, the ratio ``N(B(beta) & C) / N(C)`` for a
consistent simple conjunction ``C`` converges to 1 when ``psi`` entails
``beta`` and to 0 otherwise, and the negated belief atoms of ``C`` stop
mattering.  This module decides those limits symbolically (entailment is
vocabulary-independent), exposes exact finite-size ratio traces as
evidence, and computes probability trends over growing vocabularies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import BasicTerm, SimpleConjunction, count_simple
from .errors import InconsistentKnowledgeError
from .formulas import (
    Formula,
    LogicKind,
    Vocabulary,
    require_propositional,
    support,
    to_text,
)
from .inference import KnowledgeBase, probability
from .tables import _tt_bits, full_mask
from .counting import _and


@dataclass(frozen=True)
class LimitVerdict:
    """Limit of ``N(B(beta) & C) / N(C)`` as the vocabulary grows."""

    value: int  # 0 or 1
    justification: str


def _support_names(*formulas: Formula) -> list[str]:
    names: set[str] = set()
    for f in formulas:
        names |= support(f)
    return sorted(names)


def _vocab_for(*formulas: Formula, extra: int = 0) -> Vocabulary:
    names = _support_names(*formulas)
    if not names and extra == 0:
        names = ["p"]
    return Vocabulary(tuple(names) + fresh_names(names, extra))


def fresh_names(taken, k: int) -> tuple[str, ...]:
    """``k`` proposition names disjoint from ``taken`` (x1, x2, ...)."""
    taken = set(taken)
    out = []
    i = 1
    while len(out) < k:
        name = f"x{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return tuple(out)


def _with_belief(c: SimpleConjunction, beta: Formula) -> SimpleConjunction:
    return SimpleConjunction(c.phi0, _and(c.psi, beta), c.negs)


def limit_ratio(c: SimpleConjunction, beta: Formula, logic: LogicKind) -> LimitVerdict:
    """Decide the limit of ``N(B(beta) & C) / N(C)`` for growing vocabularies.

    Preconditions are verified, not assumed: both ``C`` and ``C & B(beta)``
    must be satisfiable in the logic (checked by exact counting over the
    support vocabulary), otherwise ``InconsistentKnowledgeError`` is raised.
    The verdict itself is the entailment test ``psi |= beta``, decided by
    truth tables over the joint support; entailment does not depend on the
    ambient vocabulary size.
    """
    require_propositional(beta, "beta")
    vocab = _vocab_for(c.phi0, c.psi, *c.negs, beta)
    if count_simple(c, logic, vocab) == 0:
        raise InconsistentKnowledgeError(
            f"the simple conjunction is unsatisfiable in {logic.value}"
        )
    if count_simple(_with_belief(c, beta), logic, vocab) == 0:
        raise InconsistentKnowledgeError(
            f"conjoining B({to_text(beta)}) is unsatisfiable in {logic.value}"
        )

    psi_bits = _tt_bits(c.psi, vocab)
    beta_bits = _tt_bits(beta, vocab)
    violating = psi_bits & (beta_bits ^ full_mask(len(vocab)))
    if violating == 0:
        return LimitVerdict(
            1, f"every model of {to_text(c.psi)} satisfies {to_text(beta)}"
        )
    witness = violating.bit_length() - 1
    assignment = {
        name: bool((witness >> i) & 1) for i, name in enumerate(vocab.props)
    }
    return LimitVerdict(
        0,
        f"{to_text(c.psi)} has a model violating {to_text(beta)}: {assignment}",
    )


def limit_simplify(c: SimpleConjunction) -> BasicTerm:
    """Drop the negated belief atoms: the dominant block for large vocabularies.

    Consistency of ``C`` is required and checked in K45, the weakest of the
    three logics (its situation space contains the other two, so anything
    unsatisfiable there is unsatisfiable everywhere).
    """
    vocab = _vocab_for(c.phi0, c.psi, *c.negs)
    if count_simple(c, LogicKind.K45, vocab) == 0:
        raise InconsistentKnowledgeError(
            "the simple conjunction is unsatisfiable"
        )
    return BasicTerm(c.phi0, c.psi)


def finite_size_ratios(
    c: SimpleConjunction,
    beta: Formula,
    logic: LogicKind,
    steps: int = 4,
) -> list[Fraction]:
    """Exact ``N(B(beta) & C) / N(C)`` at support size, +1, ... +(steps-1)."""
    require_propositional(beta, "beta")
    cb = _with_belief(c, beta)
    out = []
    for extra in range(steps):
        vocab = _vocab_for(c.phi0, c.psi, *c.negs, beta, extra=extra)
        denom = count_simple(c, logic, vocab)
        if denom == 0:
            raise InconsistentKnowledgeError(
                f"the simple conjunction is unsatisfiable in {logic.value}"
            )
        out.append(Fraction(count_simple(cb, logic, vocab), denom))
    return out


def trend(
    query: Formula,
    sizes,
    logic: LogicKind,
    entries=(),
) -> list[float]:
    """Exact query probability at each vocabulary size.

    The base vocabulary is the joint support of the query and the entries;
    each requested size pads it with fresh propositions.  Sizes smaller
    than the support are rejected.
    """
    base = _support_names(query, *(f for _, f in entries))
    out = []
    for size in sizes:
        if size < max(len(base), 1):
            raise ValueError(
                f"size {size} is smaller than the support ({max(len(base), 1)})"
            )
        vocab = Vocabulary(tuple(base) + fresh_names(base, size - len(base)))
        kb = KnowledgeBase(logic, vocab, entries)
        out.append(probability(kb, query).probability)
    return out
