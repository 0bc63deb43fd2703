"""Depth-one modal formulas over a fixed propositional vocabulary.

The language is classical propositional logic (constants, propositions,
``~``, ``&``, ``|``, ``->``, ``<->``) extended with a single belief operator
``B`` whose argument must be purely propositional ("depth one").  All values
are immutable and hashable so they can serve as cache keys.

Concrete syntax, high to low precedence: ``~``/``B`` (unary), ``&``, ``|``,
``->`` (right-associative), ``<->`` (right-associative).  ``B`` takes the
following atom or a parenthesized formula; ``B~p`` must be written ``B(~p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import (
    CapExceededError,
    FormulaSyntaxError,
    NestedBeliefError,
    NotPropositionalError,
    UnknownPropositionError,
)

DEFAULT_MAX_PROPS = 24

_NAME_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
_RESERVED = frozenset({"true", "false"})


class LogicKind(Enum):
    """The three single-agent logics the engine supports."""

    K45 = "K45"
    KD45 = "KD45"
    S5 = "S5"


class Vocabulary:
    """Ordered set of proposition names; fixes the assignment indexing.

    Assignment index ``j`` gives proposition ``props[i]`` the value of bit
    ``i`` of ``j``, so truth tables over the vocabulary are canonical.  The
    size cap bounds the truth-table width ``2**len(props)``.
    """

    __slots__ = ("props", "_index")

    def __init__(self, props, max_props: int = DEFAULT_MAX_PROPS):
        props = tuple(props)
        if not props:
            raise ValueError("a vocabulary needs at least one proposition")
        if len(props) > max_props:
            raise CapExceededError(
                f"{len(props)} propositions exceed the cap of {max_props}"
            )
        index = {}
        for i, name in enumerate(props):
            if not isinstance(name, str) or not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid proposition name: {name!r}")
            if name in _RESERVED:
                raise ValueError(f"{name!r} is a reserved word")
            if name in index:
                raise ValueError(f"duplicate proposition name: {name!r}")
            index[name] = i
        self.props = props
        self._index = index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownPropositionError(f"unknown proposition {name!r}") from None

    @property
    def assignment_count(self) -> int:
        return 1 << len(self.props)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.props)

    def __iter__(self):
        return iter(self.props)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.props == other.props

    def __hash__(self) -> int:
        return hash(self.props)

    def __repr__(self) -> str:
        return f"Vocabulary({list(self.props)!r})"


class Formula:
    """Base class for all syntax nodes."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True, slots=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Belief(Formula):
    body: Formula


_BINARY = (And, Or, Implies, Iff)


def is_propositional(f: Formula) -> bool:
    """True when ``f`` contains no belief operator."""
    if isinstance(f, (Const, Prop)):
        return True
    if isinstance(f, Belief):
        return False
    if isinstance(f, Not):
        return is_propositional(f.body)
    if isinstance(f, _BINARY):
        return is_propositional(f.left) and is_propositional(f.right)
    raise TypeError(f"not a formula: {f!r}")


def node_count(f: Formula) -> int:
    """Number of syntax nodes in ``f``."""
    if isinstance(f, (Const, Prop)):
        return 1
    if isinstance(f, (Not, Belief)):
        return 1 + node_count(f.body)
    if isinstance(f, _BINARY):
        return 1 + node_count(f.left) + node_count(f.right)
    raise TypeError(f"not a formula: {f!r}")


def support(f: Formula) -> frozenset[str]:
    """Set of proposition names occurring in ``f``."""
    names: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Prop):
            names.add(g.name)
        elif isinstance(g, (Not, Belief)):
            stack.append(g.body)
        elif isinstance(g, _BINARY):
            stack.append(g.left)
            stack.append(g.right)
        elif not isinstance(g, Const):
            raise TypeError(f"not a formula: {g!r}")
    return frozenset(names)


def support_vocabulary(*formulas: Formula, fallback: str = "p") -> Vocabulary:
    """Smallest vocabulary (sorted names) covering the given formulas.

    Falls back to a single dummy proposition when no formula mentions any,
    since a vocabulary cannot be empty.
    """
    names: set[str] = set()
    for f in formulas:
        names |= support(f)
    return Vocabulary(tuple(sorted(names)) if names else (fallback,))


def validate_vocabulary(f: Formula, vocab: Vocabulary) -> None:
    """Raise ``UnknownPropositionError`` if ``f`` mentions a foreign name."""
    for name in sorted(support(f)):
        if name not in vocab:
            raise UnknownPropositionError(f"unknown proposition {name!r}")


def validate_depth_one(f: Formula) -> None:
    """Raise ``NestedBeliefError`` when a belief occurs under a belief.

    The error reports the path of node kinds from the root to the inner
    belief operator.
    """

    def walk(g: Formula, in_belief: bool, path: list[str]) -> None:
        path.append(type(g).__name__)
        if isinstance(g, Belief):
            if in_belief:
                raise NestedBeliefError(path)
            walk(g.body, True, path)
        elif isinstance(g, (Not,)):
            walk(g.body, in_belief, path)
        elif isinstance(g, _BINARY):
            walk(g.left, in_belief, path)
            walk(g.right, in_belief, path)
        elif not isinstance(g, (Const, Prop)):
            raise TypeError(f"not a formula: {g!r}")
        path.pop()

    walk(f, False, [])


def require_propositional(f: Formula, what: str = "formula") -> None:
    if not is_propositional(f):
        raise NotPropositionalError(f"{what} must be purely propositional: {to_text(f)}")


def normalize_core(f: Formula) -> Formula:
    """Rewrite to the negation/conjunction/belief core.

    ``|``, ``->`` and ``<->`` outside belief operators are expanded into
    ``~``/``&``; belief bodies are left untouched because the counting layer
    canonicalizes them by truth table anyway.  The result is logically
    equivalent to the input in every situation.
    """
    if isinstance(f, (Const, Prop, Belief)):
        return f
    if isinstance(f, Not):
        return Not(normalize_core(f.body))
    if isinstance(f, And):
        return And(normalize_core(f.left), normalize_core(f.right))
    if isinstance(f, Or):
        return Not(And(Not(normalize_core(f.left)), Not(normalize_core(f.right))))
    if isinstance(f, Implies):
        return Not(And(normalize_core(f.left), Not(normalize_core(f.right))))
    if isinstance(f, Iff):
        a = normalize_core(f.left)
        b = normalize_core(f.right)
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Concrete syntax


_T_LPAREN = "("
_T_RPAREN = ")"
_T_NOT = "~"
_T_BELIEF = "B"
_T_AND = "&"
_T_OR = "|"
_T_IMPLIES = "->"
_T_IFF = "<->"
_T_IDENT = "ident"
_T_CONST = "const"
_T_EOF = "eof"


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "()~&|":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "B":
            tokens.append((_T_BELIEF, ch, i))
            i += 1
        elif text.startswith("<->", i):
            tokens.append((_T_IFF, "<->", i))
            i += 3
        elif text.startswith("->", i):
            tokens.append((_T_IMPLIES, "->", i))
            i += 2
        else:
            m = _NAME_RE.match(text, i)
            if not m:
                raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
            word = m.group(0)
            kind = _T_CONST if word in _RESERVED else _T_IDENT
            tokens.append((kind, word, i))
            i = m.end()
    tokens.append((_T_EOF, "", n))
    return tokens


class _TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.next()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {what}", tok[2])
        return tok


def _parse_iff(ts, vocab):
    left = _parse_implies(ts, vocab)
    if ts.peek()[0] == _T_IFF:
        ts.next()
        return Iff(left, _parse_iff(ts, vocab))
    return left


def _parse_implies(ts, vocab):
    left = _parse_or(ts, vocab)
    if ts.peek()[0] == _T_IMPLIES:
        ts.next()
        return Implies(left, _parse_implies(ts, vocab))
    return left


def _parse_or(ts, vocab):
    f = _parse_and(ts, vocab)
    while ts.peek()[0] == _T_OR:
        ts.next()
        f = Or(f, _parse_and(ts, vocab))
    return f


def _parse_and(ts, vocab):
    f = _parse_unary(ts, vocab)
    while ts.peek()[0] == _T_AND:
        ts.next()
        f = And(f, _parse_unary(ts, vocab))
    return f


def _parse_unary(ts, vocab):
    kind, _, pos = ts.peek()
    if kind == _T_NOT:
        ts.next()
        return Not(_parse_unary(ts, vocab))
    if kind == _T_BELIEF:
        ts.next()
        kind, word, pos = ts.peek()
        if kind in (_T_IDENT, _T_CONST):
            return Belief(_leaf(ts.next(), vocab))
        if kind == _T_LPAREN:
            ts.next()
            body = _parse_iff(ts, vocab)
            ts.expect(_T_RPAREN, "')'")
            return Belief(body)
        raise FormulaSyntaxError(
            "the belief operator takes an atom or a parenthesized formula", pos
        )
    return _parse_atom(ts, vocab)


def _parse_atom(ts, vocab):
    kind, word, pos = ts.next()
    if kind in (_T_IDENT, _T_CONST):
        return _leaf((kind, word, pos), vocab)
    if kind == _T_LPAREN:
        f = _parse_iff(ts, vocab)
        ts.expect(_T_RPAREN, "')'")
        return f
    raise FormulaSyntaxError("expected a formula", pos)


def _leaf(token, vocab):
    kind, word, pos = token
    if kind == _T_CONST:
        return TRUE if word == "true" else FALSE
    if word not in vocab:
        raise UnknownPropositionError(f"unknown proposition {word!r}", pos)
    return Prop(word)


def parse(text: str, vocab: Vocabulary) -> Formula:
    """Parse concrete syntax into a validated depth-one formula.

    Raises ``FormulaSyntaxError`` (with position) on malformed input,
    ``UnknownPropositionError`` for identifiers outside ``vocab`` and
    ``NestedBeliefError`` for beliefs under beliefs.
    """
    ts = _TokenStream(_tokenize(text))
    f = _parse_iff(ts, vocab)
    kind, word, pos = ts.peek()
    if kind != _T_EOF:
        raise FormulaSyntaxError(f"unexpected trailing input {word!r}", pos)
    validate_depth_one(f)
    return f


def parse_propositional(text: str, vocab: Vocabulary, what: str = "formula") -> Formula:
    """Parse and additionally reject belief operators."""
    f = parse(text, vocab)
    require_propositional(f, what)
    return f


_PREC_ATOM = 6
_PREC_UNARY = 5
_PREC_AND = 4
_PREC_OR = 3
_PREC_IMPLIES = 2
_PREC_IFF = 1


def _prec(f: Formula) -> int:
    if isinstance(f, (Const, Prop)):
        return _PREC_ATOM
    if isinstance(f, (Not, Belief)):
        return _PREC_UNARY
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, Implies):
        return _PREC_IMPLIES
    return _PREC_IFF


def _wrap(f: Formula, min_prec: int) -> str:
    s = to_text(f)
    return f"({s})" if _prec(f) < min_prec else s


def to_text(f: Formula) -> str:
    """Render with minimal parentheses; ``parse(to_text(f))`` returns ``f``."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Not):
        return "~" + _wrap(f.body, _PREC_UNARY)
    if isinstance(f, Belief):
        if isinstance(f.body, Prop):
            return "B" + f.body.name
        if isinstance(f.body, Const):
            return "B " + to_text(f.body)
        return f"B({to_text(f.body)})"
    if isinstance(f, And):
        return f"{_wrap(f.left, _PREC_AND)} & {_wrap(f.right, _PREC_AND + 1)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, _PREC_OR)} | {_wrap(f.right, _PREC_OR + 1)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left, _PREC_IMPLIES + 1)} -> {_wrap(f.right, _PREC_IMPLIES)}"
    if isinstance(f, Iff):
        return f"{_wrap(f.left, _PREC_IFF + 1)} <-> {_wrap(f.right, _PREC_IFF)}"
    raise TypeError(f"not a formula: {f!r}")
