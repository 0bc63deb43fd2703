"""Batch command-line front end.

Each subcommand prints a single JSON result document on stdout; logs and
errors go to stderr.  Documents are byte-identical across repeated runs
with the same inputs and seed: exact counts are serialized as decimal
strings, floats with full round-trip precision, and timing is only added
on request (``--timing``).

Exit codes: 0 success; 1 usage or parse errors; 2 inconsistent hard
constraints, zero-probability conditioning, infeasible or non-converged
learning; 3 a size cap was exceeded; 4 the self-check found a mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .counting import SimpleConjunction, count_formula
from .crosscheck import ALL_SMALL, run_crosscheck
from .errors import (
    CapExceededError,
    EpimaxError,
    FormulaSyntaxError,
    InconsistentKnowledgeError,
    InfeasibleConstraintError,
    KbFileError,
    NestedBeliefError,
    NonConvergenceError,
    NotPropositionalError,
    UnknownPropositionError,
    ZeroProbabilityEventError,
)
from .formulas import (
    LogicKind,
    Vocabulary,
    parse,
    parse_propositional,
    support,
)
from .inference import KnowledgeBase, conditional, partition_function, probability
from .kbfile import load_constraints, load_kb
from .learning import fit_weights
from .limits import limit_ratio

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_CAP = 3
EXIT_CHECK_FAILED = 4

_USAGE_ERRORS = (
    FormulaSyntaxError,
    UnknownPropositionError,
    NestedBeliefError,
    NotPropositionalError,
    KbFileError,
    ValueError,
)
_INCONSISTENCY_ERRORS = (
    InconsistentKnowledgeError,
    ZeroProbabilityEventError,
    InfeasibleConstraintError,
    NonConvergenceError,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_context_flags(sub):
    sub.add_argument("--kb", help="knowledge-base file (logic/props/entries)")
    sub.add_argument("--logic", help="logic when no KB file is given: K45, KD45 or S5")
    sub.add_argument("--props", help="space-separated proposition names")


def _add_common_flags(sub):
    sub.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker cap (reserved; the engine is deterministic and currently "
        "runs single-threaded, so this does not change results)",
    )
    sub.add_argument(
        "--timing",
        action="store_true",
        help="add wall-clock timing to the document (off by default so "
        "repeated runs are byte-identical)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epimax", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    count = subs.add_parser("count", help="exact situation count of a formula")
    _add_context_flags(count)
    _add_common_flags(count)
    count.add_argument("--formula", required=True)

    query = subs.add_parser("query", help="probability of a formula under a KB")
    _add_context_flags(query)
    _add_common_flags(query)
    query.add_argument("--formula", required=True)
    query.add_argument("--given", help="condition on this formula")
    query.add_argument(
        "--breakdown",
        action="store_true",
        help="emit the per-sign-vector counts and weights",
    )

    partition = subs.add_parser("partition", help="log partition function of a KB")
    _add_context_flags(partition)
    _add_common_flags(partition)
    partition.add_argument("--breakdown", action="store_true")

    learn = subs.add_parser("learn", help="fit weights to probability targets")
    _add_common_flags(learn)
    learn.add_argument("--constraints", required=True, help="constraints file")
    learn.add_argument("--logic", required=True)
    learn.add_argument("--props", required=True)

    limit = subs.add_parser(
        "limit", help="growing-vocabulary limit of a belief-count ratio"
    )
    _add_common_flags(limit)
    limit.add_argument("--logic", required=True)
    limit.add_argument("--phi0", default="true", help="propositional part")
    limit.add_argument("--psi", default="true", help="positive belief body")
    limit.add_argument(
        "--negs", default="", help="comma-separated negated belief bodies"
    )
    limit.add_argument("--beta", required=True, help="belief body whose limit is asked")
    limit.add_argument("--props", help="optional explicit vocabulary")

    check = subs.add_parser(
        "check", help="cross-validate the counter against the enumeration oracle"
    )
    _add_common_flags(check)
    check.add_argument("--logic", help="restrict to one logic (default: all three)")
    check.add_argument("--max-omega", type=int, default=3)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument(
        "--cases",
        default="200",
        help=f"random cases per logic and size, or '{ALL_SMALL}'",
    )
    return parser


def _logic_from(name: str) -> LogicKind:
    try:
        return LogicKind[name.strip().upper()]
    except KeyError:
        raise _UsageError(f"unknown logic {name!r} (expected K45, KD45 or S5)") from None


def _context(args) -> KnowledgeBase:
    """Knowledge base from --kb, or an empty one from --logic/--props."""
    if args.kb and (args.logic or args.props):
        raise _UsageError("pass either --kb or --logic/--props, not both")
    if args.kb:
        return load_kb(args.kb)
    if not args.logic or not args.props:
        raise _UsageError("need --kb, or both --logic and --props")
    logic = _logic_from(args.logic)
    vocab = Vocabulary(args.props.split())
    return KnowledgeBase(logic, vocab, ())


def _document(args, kb_logic, props, inputs, result) -> dict:
    return {
        "command": args.command,
        "engine_version": __version__,
        "logic": kb_logic.value if kb_logic else None,
        "omega": list(props) if props else None,
        "inputs": inputs,
        "result": result,
    }


def _breakdown_payload(records) -> list[dict]:
    out = []
    for r in records:
        row = {
            "sign_bits": r.sign_bits,
            "weight": r.weight,
            "count": str(r.count),
        }
        if r.query_count is not None:
            row["query_count"] = str(r.query_count)
        out.append(row)
    return out


def _cmd_count(args) -> tuple[dict, int]:
    kb = _context(args)
    f = parse(args.formula, kb.vocab)
    n = count_formula(f, kb.logic, kb.vocab)
    doc = _document(
        args, kb.logic, kb.vocab.props, {"formula": args.formula}, {"count": str(n)}
    )
    return doc, EXIT_OK


def _cmd_query(args) -> tuple[dict, int]:
    kb = _context(args)
    f = parse(args.formula, kb.vocab)
    inputs = {"formula": args.formula}
    if args.given:
        inputs["given"] = args.given
        g = parse(args.given, kb.vocab)
        prob = conditional(kb, f, g)
        result = {"probability": prob}
    else:
        res = probability(kb, f, breakdown=args.breakdown)
        result = {"probability": res.probability, "log_z": res.log_z}
        if args.breakdown:
            result["terms"] = _breakdown_payload(res.breakdown)
    return _document(args, kb.logic, kb.vocab.props, inputs, result), EXIT_OK


def _cmd_partition(args) -> tuple[dict, int]:
    kb = _context(args)
    if args.breakdown:
        res = probability(kb, parse("true", kb.vocab), breakdown=True)
        result = {"log_z": res.log_z, "terms": _breakdown_payload(res.breakdown)}
    else:
        result = {"log_z": partition_function(kb)}
    return _document(args, kb.logic, kb.vocab.props, {}, result), EXIT_OK


def _cmd_learn(args) -> tuple[dict, int]:
    logic = _logic_from(args.logic)
    vocab = Vocabulary(args.props.split())
    constraints = load_constraints(args.constraints, vocab)
    report = fit_weights(constraints, logic, vocab)
    result = {
        "weights": list(report.weights),
        "achieved": list(report.achieved),
        "gradient_norm": report.gradient_norm,
        "iterations": report.iterations,
    }
    inputs = {"constraints": args.constraints}
    return _document(args, logic, vocab.props, inputs, result), EXIT_OK


def _cmd_limit(args) -> tuple[dict, int]:
    neg_texts = [part.strip() for part in args.negs.split(",") if part.strip()]
    if args.props:
        vocab = Vocabulary(args.props.split())
    else:
        names: set[str] = set()
        probe = Vocabulary(tuple("abcdefghijklmnopqrstuvwx"))
        for text in [args.phi0, args.psi, args.beta, *neg_texts]:
            names |= support(parse(text, probe))
        vocab = Vocabulary(tuple(sorted(names)) or ("p",))
    logic = _logic_from(args.logic)
    conj = SimpleConjunction(
        parse_propositional(args.phi0, vocab, "phi0"),
        parse_propositional(args.psi, vocab, "psi"),
        tuple(parse_propositional(t, vocab, "negated body") for t in neg_texts),
    )
    beta = parse_propositional(args.beta, vocab, "beta")
    verdict = limit_ratio(conj, beta, logic)
    inputs = {
        "phi0": args.phi0,
        "psi": args.psi,
        "negs": neg_texts,
        "beta": args.beta,
    }
    result = {"value": verdict.value, "justification": verdict.justification}
    return _document(args, logic, vocab.props, inputs, result), EXIT_OK


def _cmd_check(args) -> tuple[dict, int]:
    logics = (_logic_from(args.logic),) if args.logic else None
    report = run_crosscheck(
        logics=logics, max_omega=args.max_omega, cases=args.cases, seed=args.seed
    )
    result = {
        "cases": report.cases,
        "mismatches": report.mismatches,
        "cells": report.cells,
    }
    if report.first_mismatch is not None:
        m = report.first_mismatch
        result["first_mismatch"] = {
            "logic": m.logic,
            "omega": m.omega,
            "formula": m.formula,
            "engine_count": str(m.engine_count),
            "oracle_count": str(m.oracle_count),
        }
    inputs = {
        "max_omega": args.max_omega,
        "seed": args.seed,
        "cases": args.cases,
        "logic": args.logic,
    }
    doc = _document(args, None, None, inputs, result)
    return doc, EXIT_OK if report.ok else EXIT_CHECK_FAILED


_DISPATCH = {
    "count": _cmd_count,
    "query": _cmd_query,
    "partition": _cmd_partition,
    "learn": _cmd_learn,
    "limit": _cmd_limit,
    "check": _cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "threads", 1) < 1:
            raise _UsageError("--threads must be at least 1")
        started = time.perf_counter()
        doc, code = _DISPATCH[args.command](args)
        if getattr(args, "timing", False):
            doc["timing_ms"] = (time.perf_counter() - started) * 1000.0
    except _UsageError as exc:
        print(f"epimax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _USAGE_ERRORS as exc:
        print(f"epimax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INCONSISTENCY_ERRORS as exc:
        print(f"epimax: error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except CapExceededError as exc:
        print(f"epimax: error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EpimaxError as exc:  # anything else from the engine
        print(f"epimax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(doc, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
