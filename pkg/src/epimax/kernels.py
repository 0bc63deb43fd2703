"""Situation-space evaluation kernels.

The enumeration oracle has one hot loop: evaluating a formula on every
(real world, possible set) pair.  Two interchangeable implementations are
provided, a numba JIT loop and a vectorized pure-numpy fallback, selected
through the ``EPIMAX_BACKEND`` environment variable (``auto``, ``numba`` or
``numpy``; ``auto`` prefers numba when it imports).  Both consume the same
postfix program, so they are bit-for-bit interchangeable.

Only small vocabularies are supported here by design: the loop ranges over
``2**len(vocab) * 2**(2**len(vocab))`` situations.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import CapExceededError
from .formulas import (
    And,
    Belief,
    Formula,
    Iff,
    Implies,
    LogicKind,
    Not,
    Or,
    Vocabulary,
    is_propositional,
)
from .tables import _tt_bits, full_mask

# Hard ceiling: 2**4 worlds means 16 * 65536 situations, the largest space
# that is still cheap to sweep exhaustively.
KERNEL_MAX_PROPS = 4

OP_PROP = 0  # push bit `real_world` of the truth table in args[k]
OP_BELIEF = 1  # push (possible_set subset-of table in args[k])
OP_NOT = 2
OP_AND = 3
OP_OR = 4
OP_IMPLIES = 5
OP_IFF = 6

LOGIC_CODE = {LogicKind.K45: 0, LogicKind.KD45: 1, LogicKind.S5: 2}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAVE_NUMBA = False

_VALID_BACKENDS = ("auto", "numba", "numpy")
_backend = os.environ.get("EPIMAX_BACKEND", "auto").strip().lower() or "auto"
if _backend not in _VALID_BACKENDS:
    raise ValueError(
        f"EPIMAX_BACKEND must be one of {_VALID_BACKENDS}, got {_backend!r}"
    )


def set_backend(name: str) -> None:
    """Select the kernel implementation (overrides the environment)."""
    global _backend
    name = name.strip().lower()
    if name not in _VALID_BACKENDS:
        raise ValueError(f"backend must be one of {_VALID_BACKENDS}, got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    _backend = name


def active_backend() -> str:
    """The implementation that will actually run: ``numba`` or ``numpy``."""
    if _backend == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    return _backend


def compile_program(f: Formula, vocab: Vocabulary):
    """Flatten a depth-one formula into a postfix (ops, args, depth) triple.

    Maximal propositional subformulas collapse into single table lookups,
    so the program only branches on the modal structure.  Works on the raw
    syntax tree: no normalization is involved, which keeps the oracle
    independent of the counting pipeline it validates.
    """
    if len(vocab) > KERNEL_MAX_PROPS:
        raise CapExceededError(
            f"situation kernels support at most {KERNEL_MAX_PROPS} propositions"
        )
    ops: list[int] = []
    args: list[int] = []

    def emit(node: Formula) -> None:
        if is_propositional(node):
            ops.append(OP_PROP)
            args.append(_tt_bits(node, vocab))
            return
        if isinstance(node, Belief):
            ops.append(OP_BELIEF)
            args.append(_tt_bits(node.body, vocab))
            return
        if isinstance(node, Not):
            emit(node.body)
            ops.append(OP_NOT)
            args.append(0)
            return
        opcode = {And: OP_AND, Or: OP_OR, Implies: OP_IMPLIES, Iff: OP_IFF}[type(node)]
        emit(node.left)
        emit(node.right)
        ops.append(opcode)
        args.append(0)

    emit(f)

    depth = max_depth = 0
    for op in ops:
        depth += 1 if op in (OP_PROP, OP_BELIEF) else (0 if op == OP_NOT else -1)
        max_depth = max(max_depth, depth)
    return (
        np.array(ops, dtype=np.int64),
        np.array(args, dtype=np.int64),
        max_depth,
    )


def _count_numpy(ops, args, n_props: int, logic_code: int) -> int:
    worlds = 1 << n_props
    n_sets = 1 << worlds
    full = n_sets - 1
    psets = np.arange(n_sets, dtype=np.int64)

    belief_rows = {
        k: (psets & (full ^ int(args[k]))) == 0
        for k in range(len(ops))
        if ops[k] == OP_BELIEF
    }
    kd45_mask = psets != 0

    total = 0
    for real_world in range(worlds):
        stack: list[np.ndarray] = []
        for k, op in enumerate(ops):
            if op == OP_PROP:
                bit = bool((int(args[k]) >> real_world) & 1)
                stack.append(np.full(n_sets, bit, dtype=bool))
            elif op == OP_BELIEF:
                stack.append(belief_rows[k])
            elif op == OP_NOT:
                stack[-1] = ~stack[-1]
            else:
                rhs = stack.pop()
                if op == OP_AND:
                    stack[-1] = stack[-1] & rhs
                elif op == OP_OR:
                    stack[-1] = stack[-1] | rhs
                elif op == OP_IMPLIES:
                    stack[-1] = ~stack[-1] | rhs
                else:
                    stack[-1] = ~(stack[-1] ^ rhs)
        sat = stack[0]
        if logic_code == 1:
            sat = sat & kd45_mask
        elif logic_code == 2:
            sat = sat & (((psets >> real_world) & 1) == 1)
        total += int(np.count_nonzero(sat))
    return total


if HAVE_NUMBA:

    @njit(cache=True)
    def _count_jit(ops, args, n_props, logic_code, stack_size):  # pragma: no cover
        worlds = 1 << n_props
        n_sets = 1 << worlds
        full = n_sets - 1
        stack = np.empty(stack_size, dtype=np.bool_)
        total = 0
        for real_world in range(worlds):
            for pset in range(n_sets):
                if logic_code == 1 and pset == 0:
                    continue
                if logic_code == 2 and ((pset >> real_world) & 1) == 0:
                    continue
                sp = 0
                for k in range(ops.size):
                    op = ops[k]
                    if op == 0:  # OP_PROP
                        stack[sp] = ((args[k] >> real_world) & 1) == 1
                        sp += 1
                    elif op == 1:  # OP_BELIEF
                        stack[sp] = (pset & (full ^ args[k])) == 0
                        sp += 1
                    elif op == 2:  # OP_NOT
                        stack[sp - 1] = not stack[sp - 1]
                    elif op == 3:  # OP_AND
                        sp -= 1
                        stack[sp - 1] = stack[sp - 1] and stack[sp]
                    elif op == 4:  # OP_OR
                        sp -= 1
                        stack[sp - 1] = stack[sp - 1] or stack[sp]
                    elif op == 5:  # OP_IMPLIES
                        sp -= 1
                        stack[sp - 1] = (not stack[sp - 1]) or stack[sp]
                    else:  # OP_IFF
                        sp -= 1
                        stack[sp - 1] = stack[sp - 1] == stack[sp]
                if stack[0]:
                    total += 1
        return total


def count_satisfying_situations(f: Formula, logic: LogicKind, vocab: Vocabulary) -> int:
    """Number of situations of the logic satisfying ``f``, by full sweep."""
    ops, args, depth = compile_program(f, vocab)
    code = LOGIC_CODE[logic]
    if active_backend() == "numba":
        return int(_count_jit(ops, args, len(vocab), code, max(depth, 1)))
    return _count_numpy(ops, args, len(vocab), code)


def satisfaction_matrix(f: Formula, vocab: Vocabulary) -> np.ndarray:
    """Boolean matrix ``M[real_world, possible_set]`` of satisfaction.

    No logic filter is applied; combine with ``logic_mask_matrix``.
    """
    ops, args, _ = compile_program(f, vocab)
    worlds = 1 << len(vocab)
    n_sets = 1 << worlds
    full = n_sets - 1
    psets = np.arange(n_sets, dtype=np.int64)
    out = np.empty((worlds, n_sets), dtype=bool)

    belief_rows = {
        k: (psets & (full ^ int(args[k]))) == 0
        for k in range(len(ops))
        if ops[k] == OP_BELIEF
    }
    for real_world in range(worlds):
        stack: list[np.ndarray] = []
        for k, op in enumerate(ops):
            if op == OP_PROP:
                bit = bool((int(args[k]) >> real_world) & 1)
                stack.append(np.full(n_sets, bit, dtype=bool))
            elif op == OP_BELIEF:
                stack.append(belief_rows[k])
            elif op == OP_NOT:
                stack[-1] = ~stack[-1]
            else:
                rhs = stack.pop()
                if op == OP_AND:
                    stack[-1] = stack[-1] & rhs
                elif op == OP_OR:
                    stack[-1] = stack[-1] | rhs
                elif op == OP_IMPLIES:
                    stack[-1] = ~stack[-1] | rhs
                else:
                    stack[-1] = ~(stack[-1] ^ rhs)
        out[real_world] = stack[0]
    return out


def logic_mask_matrix(logic: LogicKind, n_props: int) -> np.ndarray:
    """Boolean matrix of which (real world, possible set) pairs are situations."""
    worlds = 1 << n_props
    n_sets = 1 << worlds
    psets = np.arange(n_sets, dtype=np.int64)
    if logic is LogicKind.K45:
        return np.ones((worlds, n_sets), dtype=bool)
    if logic is LogicKind.KD45:
        return np.broadcast_to(psets != 0, (worlds, n_sets)).copy()
    rows = [((psets >> r) & 1) == 1 for r in range(worlds)]
    return np.stack(rows)
