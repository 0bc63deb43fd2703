"""Line-oriented knowledge-base and constraints file formats.

Knowledge base::

    # comment
    logic: K45
    props: p q
    weight 0.693147 : B p
    weight inf : p | q

Exactly one ``logic:`` line and one ``props:`` line are required (in any
order); ``weight`` lines carry a decimal real or the token ``inf``.

Constraints (one target per line)::

    B p = 0.666667
"""

from __future__ import annotations

import math

from .errors import EpimaxError, KbFileError
from .formulas import LogicKind, Vocabulary, parse
from .inference import KnowledgeBase
from .learning import Constraint


def _parse_logic(token: str, line_no: int) -> LogicKind:
    try:
        return LogicKind[token.strip().upper()]
    except KeyError:
        raise KbFileError(
            f"unknown logic {token.strip()!r} (expected K45, KD45 or S5)", line_no
        ) from None


def _parse_weight(token: str, line_no: int) -> float:
    token = token.strip()
    if token == "inf":
        return math.inf
    try:
        weight = float(token)
    except ValueError:
        raise KbFileError(f"bad weight {token!r}", line_no) from None
    if not math.isfinite(weight):
        raise KbFileError(
            f"weight {token!r} is not a finite real or 'inf'", line_no
        )
    return weight


def _content_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line


def parse_kb_text(text: str) -> KnowledgeBase:
    """Parse knowledge-base file contents."""
    logic = None
    vocab = None
    weight_lines = []
    for line_no, line in _content_lines(text):
        if line.startswith("logic:"):
            if logic is not None:
                raise KbFileError("duplicate logic line", line_no)
            logic = _parse_logic(line[len("logic:"):], line_no)
        elif line.startswith("props:"):
            if vocab is not None:
                raise KbFileError("duplicate props line", line_no)
            names = line[len("props:"):].split()
            if not names:
                raise KbFileError("props line lists no propositions", line_no)
            try:
                vocab = Vocabulary(names)
            except (ValueError, EpimaxError) as exc:
                raise KbFileError(str(exc), line_no) from None
        elif line.startswith("weight"):
            rest = line[len("weight"):]
            if ":" not in rest:
                raise KbFileError("weight line needs ':' before the formula", line_no)
            weight_token, formula_text = rest.split(":", 1)
            weight_lines.append((line_no, weight_token, formula_text))
        else:
            raise KbFileError(f"unrecognized line: {line!r}", line_no)

    if logic is None:
        raise KbFileError("missing logic line")
    if vocab is None:
        raise KbFileError("missing props line")

    entries = []
    for line_no, weight_token, formula_text in weight_lines:
        weight = _parse_weight(weight_token, line_no)
        try:
            formula = parse(formula_text.strip(), vocab)
        except EpimaxError as exc:
            raise KbFileError(str(exc), line_no) from None
        entries.append((weight, formula))
    return KnowledgeBase(logic, vocab, entries)


def load_kb(path) -> KnowledgeBase:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_kb_text(handle.read())


def parse_constraints_text(text: str, vocab: Vocabulary) -> list[Constraint]:
    """Parse ``<formula> = <target>`` lines into constraints."""
    constraints = []
    for line_no, line in _content_lines(text):
        formula_text, sep, target_token = line.rpartition("=")
        if not sep or not formula_text.strip():
            raise KbFileError("expected '<formula> = <target>'", line_no)
        try:
            target = float(target_token.strip())
        except ValueError:
            raise KbFileError(f"bad target {target_token.strip()!r}", line_no) from None
        try:
            formula = parse(formula_text.strip(), vocab)
            constraints.append(Constraint(formula, target))
        except (EpimaxError, ValueError) as exc:
            raise KbFileError(str(exc), line_no) from None
    if not constraints:
        raise KbFileError("no constraints found")
    return constraints


def load_constraints(path, vocab: Vocabulary) -> list[Constraint]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_constraints_text(handle.read(), vocab)
