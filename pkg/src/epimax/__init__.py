"""Exact maximum-entropy reasoning over epistemic situations.

Knowledge bases of weighted depth-one belief formulas define log-linear
distributions over the non-equivalent epistemic situations of single-agent
K45, KD45 or S5.  The package computes exact situation counts, partition
functions and query probabilities without enumerating the (doubly
exponential) situation space, fits weights to probability targets, and
provides a brute-force enumeration oracle plus growing-vocabulary limit
tools for validation.
"""

from . import errors
from .counting import (
    BasicTerm,
    SignedDecomposition,
    SimpleConjunction,
    complement_decomposition,
    conjoin_decompositions,
    count_basic,
    count_decomposition,
    count_formula,
    count_simple,
    decompose,
    expand_simple,
)
from .formulas import (
    And,
    Belief,
    Const,
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
    is_propositional,
    node_count,
    normalize_core,
    parse,
    parse_propositional,
    support,
    support_vocabulary,
    to_text,
    validate_depth_one,
)
from .inference import (
    InferenceResult,
    KnowledgeBase,
    TermRecord,
    conditional,
    partition_function,
    probability,
    propositional_markov_probability,
    situation_probability,
)
from .kernels import active_backend, set_backend
from .learning import (
    Constraint,
    FitOptions,
    FitReport,
    fit_weights,
    objective_and_gradient,
)
from .limits import (
    LimitVerdict,
    finite_size_ratios,
    limit_ratio,
    limit_simplify,
    trend,
)
from .situations import (
    Situation,
    enumerate_situations,
    eval_situation,
    oracle_count,
    oracle_probability,
    situation_space_size,
)
from .tables import TruthTable, evaluate_assignment, model_count, truth_table

__version__ = "0.1.0"

__all__ = [
    "And",
    "BasicTerm",
    "Belief",
    "Const",
    "Constraint",
    "FALSE",
    "FitOptions",
    "FitReport",
    "Formula",
    "Iff",
    "Implies",
    "InferenceResult",
    "KnowledgeBase",
    "LimitVerdict",
    "LogicKind",
    "Not",
    "Or",
    "Prop",
    "Situation",
    "SignedDecomposition",
    "SimpleConjunction",
    "TRUE",
    "TermRecord",
    "TruthTable",
    "Vocabulary",
    "active_backend",
    "complement_decomposition",
    "conditional",
    "conjoin_decompositions",
    "count_basic",
    "count_decomposition",
    "count_formula",
    "count_simple",
    "decompose",
    "enumerate_situations",
    "errors",
    "eval_situation",
    "evaluate_assignment",
    "expand_simple",
    "finite_size_ratios",
    "fit_weights",
    "is_propositional",
    "limit_ratio",
    "limit_simplify",
    "model_count",
    "node_count",
    "normalize_core",
    "objective_and_gradient",
    "oracle_count",
    "oracle_probability",
    "parse",
    "parse_propositional",
    "partition_function",
    "probability",
    "propositional_markov_probability",
    "set_backend",
    "situation_probability",
    "situation_space_size",
    "support",
    "support_vocabulary",
    "to_text",
    "trend",
    "truth_table",
    "validate_depth_one",
    "__version__",
]
