"""Closed-form situation counting for depth-one formulas.

The engine never enumerates situations.  A formula's indicator function is
decomposed into a signed sum of `phi0 & B(psi)` building blocks, and each
block has an exact closed-form count per logic (with ``c`` the model count
over the vocabulary and ``n`` its size):

================  =======================  ==========================  =========================
block             K45                      KD45                        S5
================  =======================  ==========================  =========================
phi0 & B(psi)     c(phi0) * 2**c(psi)      c(phi0) * (2**c(psi) - 1)   c(phi0 & psi) * 2**(c(psi)-1)
================  =======================  ==========================  =========================

The S5 expression is taken as 0 when ``c(psi) = 0``: believing a
contradiction is unsatisfiable there.  With ``psi = true`` the block is a
plain propositional formula, with ``phi0 = true`` a plain belief atom.

All arithmetic is exact arbitrary-precision integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import NotPropositionalError
from .formulas import (
    And,
    Belief,
    Formula,
    LogicKind,
    Not,
    TRUE,
    FALSE,
    Vocabulary,
    is_propositional,
    normalize_core,
    support_vocabulary,
    to_text,
    validate_depth_one,
    validate_vocabulary,
)
from .tables import _tt_bits

# Beyond this many support propositions, semantic (truth-table) merge keys
# get large; fall back to structural keys, which are still sound.
_SEMANTIC_KEY_MAX_PROPS = 16


def _require_prop(f: Formula, what: str) -> None:
    if not is_propositional(f):
        raise NotPropositionalError(f"{what} must be propositional: {to_text(f)}")


@dataclass(frozen=True, slots=True)
class BasicTerm:
    """Conjunction of a propositional part and one positive belief atom.

    ``psi = true`` specializes to the plain propositional formula ``phi0``
    (``B true`` holds in every situation), and ``phi0 = true`` to the plain
    belief atom ``B psi``.
    """

    phi0: Formula = TRUE
    psi: Formula = TRUE

    def __post_init__(self):
        _require_prop(self.phi0, "phi0")
        _require_prop(self.psi, "psi")

    def as_formula(self) -> Formula:
        if self.psi == TRUE:
            return self.phi0
        if self.phi0 == TRUE:
            return Belief(self.psi)
        return And(self.phi0, Belief(self.psi))


@dataclass(frozen=True, slots=True)
class SimpleConjunction:
    """``phi0 & B(psi) & ~B(negs[0]) & ... & ~B(negs[-1])``."""

    phi0: Formula = TRUE
    psi: Formula = TRUE
    negs: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "negs", tuple(self.negs))
        _require_prop(self.phi0, "phi0")
        _require_prop(self.psi, "psi")
        for g in self.negs:
            _require_prop(g, "negated belief body")

    def as_formula(self) -> Formula:
        f = BasicTerm(self.phi0, self.psi).as_formula()
        for g in self.negs:
            f = And(f, Not(Belief(g)))
        return f


@dataclass(frozen=True, slots=True)
class SignedDecomposition:
    """Integer-weighted sum of basic-term indicators.

    Evaluating ``sum(coef * indicator(term))`` at any situation yields 0 or
    1 and matches the source formula.  Coefficients start out as +1/-1 and
    stay small; merging equal terms may produce other integers without
    changing the pointwise sum.
    """

    terms: tuple[tuple[int, BasicTerm], ...]

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)


def _and(a: Formula, b: Formula) -> Formula:
    if a == TRUE:
        return b
    if b == TRUE:
        return a
    if a == FALSE or b == FALSE:
        return FALSE
    return And(a, b)


def _merge_terms(t1: BasicTerm, t2: BasicTerm) -> BasicTerm:
    # B(a) & B(b) is B(a & b), so products of blocks stay blocks.
    return BasicTerm(_and(t1.phi0, t2.phi0), _and(t1.psi, t2.psi))


def _term_key(t: BasicTerm, key_vocab: Vocabulary):
    if len(key_vocab) <= _SEMANTIC_KEY_MAX_PROPS:
        return (_tt_bits(t.phi0, key_vocab), _tt_bits(t.psi, key_vocab))
    return (to_text(t.phi0), to_text(t.psi))


def _compact(terms, key_vocab: Vocabulary):
    merged: dict = {}
    for coef, term in terms:
        key = _term_key(term, key_vocab)
        if key in merged:
            merged[key][0] += coef
        else:
            merged[key] = [coef, term]
    return [(coef, term) for coef, term in merged.values() if coef != 0]


def _decompose_core(f: Formula, key_vocab: Vocabulary) -> list[tuple[int, BasicTerm]]:
    # Compacting at every composite node is what keeps the intermediate
    # term lists polynomial in practice; the raw product construction is
    # exponential in the nesting depth.
    if is_propositional(f):
        return [(1, BasicTerm(f, TRUE))]
    if isinstance(f, Belief):
        return [(1, BasicTerm(TRUE, f.body))]
    if isinstance(f, Not):
        # indicator(~F) = indicator(true) - indicator(F)
        inner = _decompose_core(f.body, key_vocab)
        terms = [(1, BasicTerm(TRUE, TRUE))] + [(-coef, t) for coef, t in inner]
        return _compact(terms, key_vocab)
    if isinstance(f, And):
        left = _decompose_core(f.left, key_vocab)
        right = _decompose_core(f.right, key_vocab)
        terms = [
            (c1 * c2, _merge_terms(t1, t2)) for c1, t1 in left for c2, t2 in right
        ]
        return _compact(terms, key_vocab)
    raise TypeError(f"expected a core-normalized formula, got {to_text(f)}")


def decompose(f: Formula, key_vocab: Vocabulary | None = None) -> SignedDecomposition:
    """Signed basic-term decomposition of a depth-one formula's indicator.

    The construction runs over the negation/conjunction/belief core:
    propositional subtrees and belief atoms are the base cases, negation
    subtracts from the constant-one indicator, and conjunction multiplies
    term lists pairwise.  Semantically equal terms are merged by summing
    coefficients, which keeps the term count well below the 2**nodes bound
    in practice.
    """
    validate_depth_one(f)
    if key_vocab is None:
        key_vocab = support_vocabulary(f)
    terms = _decompose_core(normalize_core(f), key_vocab)
    return SignedDecomposition(tuple(_compact(terms, key_vocab)))


def complement_decomposition(
    d: SignedDecomposition, key_vocab: Vocabulary
) -> SignedDecomposition:
    """Decomposition of the negated formula: one minus the indicator."""
    terms = [(1, BasicTerm(TRUE, TRUE))] + [(-coef, t) for coef, t in d]
    return SignedDecomposition(tuple(_compact(terms, key_vocab)))


def conjoin_decompositions(
    d1: SignedDecomposition, d2: SignedDecomposition, key_vocab: Vocabulary
) -> SignedDecomposition:
    """Decomposition of the conjunction: pointwise product of indicators."""
    terms = [
        (c1 * c2, _merge_terms(t1, t2)) for c1, t1 in d1 for c2, t2 in d2
    ]
    return SignedDecomposition(tuple(_compact(terms, key_vocab)))


@lru_cache(maxsize=1 << 16)
def _count_basic_bits(logic: LogicKind, bits0: int, bits_psi: int, n_props: int) -> int:
    c0 = bits0.bit_count()
    c_psi = bits_psi.bit_count()
    if logic is LogicKind.K45:
        return c0 << c_psi
    if logic is LogicKind.KD45:
        return c0 * ((1 << c_psi) - 1)
    if c_psi == 0:
        return 0
    return (bits0 & bits_psi).bit_count() << (c_psi - 1)


def count_basic(term: BasicTerm, logic: LogicKind, vocab: Vocabulary) -> int:
    """Closed-form count of situations satisfying ``phi0 & B(psi)``."""
    return _count_basic_bits(
        logic, _tt_bits(term.phi0, vocab), _tt_bits(term.psi, vocab), len(vocab)
    )


def expand_simple(c: SimpleConjunction) -> SignedDecomposition:
    """Inclusion-exclusion expansion of a simple conjunction.

    Subsets of the negated belief bodies are folded into the positive
    belief atom with alternating signs, enumerated in ascending bitmask
    order, giving ``2**len(negs)`` basic terms.
    """
    out = []
    for subset in range(1 << len(c.negs)):
        psi = c.psi
        sign = 1
        for i, g in enumerate(c.negs):
            if (subset >> i) & 1:
                psi = _and(psi, g)
                sign = -sign
        out.append((sign, BasicTerm(c.phi0, psi)))
    return SignedDecomposition(tuple(out))


def count_simple(c: SimpleConjunction, logic: LogicKind, vocab: Vocabulary) -> int:
    """Exact count of situations satisfying a simple conjunction."""
    total = sum(
        coef * count_basic(term, logic, vocab) for coef, term in expand_simple(c)
    )
    assert total >= 0, f"negative inclusion-exclusion total for {c}"
    return total


def count_decomposition(
    d: SignedDecomposition, logic: LogicKind, vocab: Vocabulary
) -> int:
    """Signed sum of the closed-form counts of a decomposition's terms."""
    total = sum(coef * count_basic(term, logic, vocab) for coef, term in d)
    space = _count_basic_bits(
        logic, _tt_bits(TRUE, vocab), _tt_bits(TRUE, vocab), len(vocab)
    )
    assert 0 <= total <= space, "decomposition count out of range"
    return total


def count_formula(f: Formula, logic: LogicKind, vocab: Vocabulary) -> int:
    """Number of situations of the logic satisfying a depth-one formula.

    Exact, and singly exponential in the formula and vocabulary sizes; the
    situation space itself is never enumerated.
    """
    validate_vocabulary(f, vocab)
    return count_decomposition(decompose(f), logic, vocab)
