"""Cross-validation harness: closed-form counts against the enumeration oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .counting import count_formula
from .errors import CapExceededError
from .formulagen import all_formulas, random_formula
from .formulas import LogicKind, Vocabulary, to_text
from .situations import ORACLE_MAX_PROPS, oracle_count

_OMEGA_NAMES = ("p", "q", "r", "s")
ALL_SMALL = "all-small"
_ALL_SMALL_MAX_NODES = 5


@dataclass(frozen=True)
class Mismatch:
    logic: str
    omega: int
    formula: str
    engine_count: int
    oracle_count: int


@dataclass
class CheckReport:
    cases: int = 0
    mismatches: int = 0
    first_mismatch: Mismatch | None = None
    cells: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatches == 0


def _check_cell(report: CheckReport, logic: LogicKind, vocab: Vocabulary, formulas):
    cell_cases = 0
    cell_mismatches = 0
    for f in formulas:
        engine = count_formula(f, logic, vocab)
        oracle = oracle_count(f, logic, vocab)
        cell_cases += 1
        if engine != oracle:
            cell_mismatches += 1
            if report.first_mismatch is None:
                report.first_mismatch = Mismatch(
                    logic.value, len(vocab), to_text(f), engine, oracle
                )
    report.cases += cell_cases
    report.mismatches += cell_mismatches
    report.cells.append(
        {
            "logic": logic.value,
            "omega": len(vocab),
            "cases": cell_cases,
            "mismatches": cell_mismatches,
        }
    )


def run_crosscheck(
    logics=None,
    max_omega: int = 3,
    cases="200",
    seed: int = 0,
    max_nodes: int = 10,
) -> CheckReport:
    """Compare the counter to the oracle over a generated corpus.

    ``cases`` is a per-(logic, size) count of random depth-one formulas, or
    the string ``"all-small"`` for the exhaustive corpus of formulas with
    at most 5 nodes over a single proposition.
    """
    if logics is None:
        logics = tuple(LogicKind)
    if max_omega < 1:
        raise ValueError("max omega must be at least 1")
    if max_omega > ORACLE_MAX_PROPS:
        raise CapExceededError(
            f"max omega {max_omega} exceeds the enumeration cap of {ORACLE_MAX_PROPS}"
        )

    report = CheckReport()
    if cases == ALL_SMALL:
        vocab = Vocabulary(_OMEGA_NAMES[:1])
        corpus = list(all_formulas(vocab, _ALL_SMALL_MAX_NODES))
        for logic in logics:
            _check_cell(report, logic, vocab, corpus)
        return report

    n_cases = int(cases)
    if n_cases < 1:
        raise ValueError("cases must be positive")
    for logic in logics:
        for omega in range(1, max_omega + 1):
            vocab = Vocabulary(_OMEGA_NAMES[:omega])
            rng = random.Random(f"{seed}:{logic.value}:{omega}")
            corpus = [
                random_formula(rng, vocab, rng.randint(3, max_nodes))
                for _ in range(n_cases)
            ]
            _check_cell(report, logic, vocab, corpus)
    return report
