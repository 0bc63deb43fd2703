"""Weight fitting: make query probabilities hit prescribed targets.

Fitting weights so that each formula's probability equals its target is
the dual of maximum-entropy estimation: minimize ``log Z(w) - sum(c_i *
w_i)``, a smooth convex function whose gradient component ``i`` is the
current probability of formula ``i`` minus its target.  Block counts per
sign vector do not depend on the weights, so they are computed once and
every iteration is a cheap log-sum-exp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .counting import BasicTerm, TRUE, count_basic, count_formula
from .errors import InfeasibleConstraintError, NonConvergenceError
from .formulas import Formula, LogicKind, Vocabulary, to_text
from .inference import KnowledgeBase, _logsumexp, _term_records


@dataclass(frozen=True)
class Constraint:
    """Target probability for one depth-one formula.

    Targets are restricted to the open interval (0, 1): no finite weight
    can drive a satisfiable, non-valid formula's probability to an
    endpoint, and for endpoints a hard (+inf) constraint is the right tool.
    """

    formula: Formula
    target: float

    def __post_init__(self):
        if not (0.0 < self.target < 1.0):
            raise ValueError(
                f"target must lie strictly between 0 and 1, got {self.target}; "
                "use a hard constraint (+inf weight) for 0/1 targets"
            )


@dataclass(frozen=True)
class FitOptions:
    grad_tol: float = 1e-8
    max_iters: int = 10_000
    armijo: float = 1e-4
    backtrack: float = 0.5


@dataclass(frozen=True)
class FitReport:
    weights: tuple[float, ...]
    achieved: tuple[float, ...]
    gradient_norm: float
    iterations: int
    converged: bool


class _DualObjective:
    """Convex dual with cached exact block counts."""

    def __init__(self, constraints, logic: LogicKind, vocab: Vocabulary):
        self.constraints = tuple(constraints)
        space = count_basic(BasicTerm(TRUE, TRUE), logic, vocab)
        for c in self.constraints:
            n = count_formula(c.formula, logic, vocab)
            if n == 0:
                raise InfeasibleConstraintError(
                    f"{to_text(c.formula)} holds in no situation; "
                    "its probability is 0 for every weight"
                )
            if n == space:
                raise InfeasibleConstraintError(
                    f"{to_text(c.formula)} holds in every situation; "
                    "its probability is 1 for every weight"
                )
        kb = KnowledgeBase(logic, vocab, [(0.0, c.formula) for c in self.constraints])
        self._records = [r for r in _term_records(kb, None) if r.count > 0]
        self._log_counts = [math.log(r.count) for r in self._records]
        self.targets = tuple(c.target for c in self.constraints)

    def value_and_gradient(self, weights):
        terms = []
        for log_count, record in zip(self._log_counts, self._records):
            w = log_count
            for i in range(len(weights)):
                if (record.sign_bits >> i) & 1:
                    w += weights[i]
            terms.append(w)
        log_z = _logsumexp(terms)
        value = log_z - sum(c * w for c, w in zip(self.targets, weights))
        gradient = []
        for i, target in enumerate(self.targets):
            log_num = _logsumexp(
                t
                for t, record in zip(terms, self._records)
                if (record.sign_bits >> i) & 1
            )
            gradient.append(math.exp(log_num - log_z) - target)
        return value, gradient

    def achieved(self, weights):
        _, gradient = self.value_and_gradient(weights)
        return tuple(g + target for g, target in zip(gradient, self.targets))


def objective_and_gradient(weights, constraints, logic: LogicKind, vocab: Vocabulary):
    """Dual objective and its exact gradient at the given weights."""
    problem = _DualObjective(constraints, logic, vocab)
    return problem.value_and_gradient(list(weights))


def fit_weights(
    constraints,
    logic: LogicKind,
    vocab: Vocabulary,
    options: FitOptions = FitOptions(),
) -> FitReport:
    """Fit finite weights meeting the probability targets.

    Gradient descent with Armijo backtracking from the uniform start
    ``w = 0``; the dual is convex, so the start only affects speed.  Raises
    ``InfeasibleConstraintError`` for targets no weight can meet and
    ``NonConvergenceError`` (with the partial fit attached) when the
    gradient tolerance is not reached within the iteration cap.
    """
    constraints = tuple(constraints)
    problem = _DualObjective(constraints, logic, vocab)
    weights = [0.0] * len(constraints)
    value, gradient = problem.value_and_gradient(weights)

    iterations = 0
    while True:
        grad_norm = max((abs(g) for g in gradient), default=0.0)
        if grad_norm <= options.grad_tol:
            return FitReport(
                weights=tuple(weights),
                achieved=problem.achieved(weights),
                gradient_norm=grad_norm,
                iterations=iterations,
                converged=True,
            )
        if iterations >= options.max_iters:
            raise NonConvergenceError(
                f"gradient norm {grad_norm:.3e} after {iterations} iterations "
                f"(tolerance {options.grad_tol:.1e}); the targets may be "
                "jointly unsatisfiable",
                report=FitReport(
                    weights=tuple(weights),
                    achieved=problem.achieved(weights),
                    gradient_norm=grad_norm,
                    iterations=iterations,
                    converged=False,
                ),
            )
        iterations += 1

        descent = -sum(g * g for g in gradient)
        step = 1.0
        while True:
            candidate = [w - step * g for w, g in zip(weights, gradient)]
            new_value, new_gradient = problem.value_and_gradient(candidate)
            if new_value <= value + options.armijo * step * descent:
                weights, value, gradient = candidate, new_value, new_gradient
                break
            step *= options.backtrack
            if step < 1e-18:
                raise NonConvergenceError(
                    "line search failed to make progress",
                    report=FitReport(
                        weights=tuple(weights),
                        achieved=problem.achieved(weights),
                        gradient_norm=grad_norm,
                        iterations=iterations,
                        converged=False,
                    ),
                )
