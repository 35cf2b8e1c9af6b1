"""Equational identities over a loop signature, compiled for evaluation.

An identity is written as a string over the binary operations ``*`` (mul),
``\\`` (left division) and ``/`` (right division), with explicit parens
around every binary node, variables ``x y z u`` and the constant ``e`` for
the identity element, e.g.::

    ((e/x)*(x*y)) = y

Compilation produces a flat register program evaluated either on a full
table (boolean) or on a partial table, where evaluation of a ground
instance reports the first cell that blocks it.  The partial evaluator is
what makes sound search pruning possible: an instance is only judged when
every cell it reads is filled.
"""

from __future__ import annotations

from dataclasses import dataclass

VAR, CONST, MUL, LDIV, RDIV = range(5)
_VARS = "xyzu"
_OPS = {"*": MUL, "\\": LDIV, "/": RDIV}

UNDET, SAT, VIOLATED = range(3)


@dataclass(frozen=True)
class Program:
    source: str
    ops: tuple
    lhs: int
    rhs: int
    nvars: int


def _parse(text, pos):
    if pos >= len(text):
        raise ValueError(f"unexpected end of input in {text!r}")
    ch = text[pos]
    if ch in _VARS:
        return ("v", _VARS.index(ch)), pos + 1
    if ch == "e":
        return ("e",), pos + 1
    if ch != "(":
        raise ValueError(f"unexpected {ch!r} at {pos} in {text!r}")
    left, pos = _parse(text, pos + 1)
    if pos >= len(text) or text[pos] not in _OPS:
        raise ValueError(f"expected operator at {pos} in {text!r}")
    op = text[pos]
    right, pos = _parse(text, pos + 1)
    if pos >= len(text) or text[pos] != ")":
        raise ValueError(f"expected ')' at {pos} in {text!r}")
    return (op, left, right), pos + 1


def _emit(node, ops):
    if node[0] == "v":
        ops.append((VAR, node[1], 0))
    elif node[0] == "e":
        ops.append((CONST, 0, 0))
    else:
        a = _emit(node[1], ops)
        b = _emit(node[2], ops)
        ops.append((_OPS[node[0]], a, b))
    return len(ops) - 1


def compile_identity(source):
    """Compile "lhs = rhs" into a Program."""
    lhs_text, rhs_text = (side.replace(" ", "") for side in source.split("="))
    lhs_node, pos = _parse(lhs_text, 0)
    if pos != len(lhs_text):
        raise ValueError(f"trailing input in {lhs_text!r}")
    rhs_node, pos = _parse(rhs_text, 0)
    if pos != len(rhs_text):
        raise ValueError(f"trailing input in {rhs_text!r}")
    ops = []
    lhs = _emit(lhs_node, ops)
    rhs = _emit(rhs_node, ops)
    nvars = 0
    for op, a, _b in ops:
        if op == VAR:
            nvars = max(nvars, a + 1)
    return Program(source, tuple(ops), lhs, rhs, nvars)


def holds_at(q, prog, assign):
    """Evaluate one ground instance on a full table."""
    rows, ld, rd = q.rows, q._ldiv, q._rdiv
    regs = []
    push = regs.append
    for op, a, b in prog.ops:
        if op == MUL:
            push(rows[regs[a]][regs[b]])
        elif op == VAR:
            push(assign[a])
        elif op == LDIV:
            push(ld[regs[a]][regs[b]])
        elif op == RDIV:
            push(rd[regs[a]][regs[b]])
        else:
            push(0)
    return regs[prog.lhs] == regs[prog.rhs]


def check_identity(q, prog):
    """Whether the identity holds for all assignments; early exit on failure."""
    n = q.order
    assign = [0] * prog.nvars
    return _check_rec(q, prog, assign, 0, n)


def _check_rec(q, prog, assign, i, n):
    if i == len(assign):
        return holds_at(q, prog, assign)
    for v in range(n):
        assign[i] = v
        if not _check_rec(q, prog, assign, i + 1, n):
            return False
    return True


def eval_partial(prog, cells, n, assign):
    """Evaluate one ground instance on a partial flat table.

    ``cells`` is row-major with -1 for holes.  Returns (SAT, -1),
    (VIOLATED, -1) or (UNDET, blocking_cell) where the blocking cell is the
    first unfilled cell the evaluation needs.  Filling cells only moves the
    blocking cell forward, which is what the search's watch scheme relies
    on.
    """
    regs = []
    push = regs.append
    for op, a, b in prog.ops:
        if op == MUL:
            ci = regs[a] * n + regs[b]
            v = cells[ci]
            if v < 0:
                return UNDET, ci
            push(v)
        elif op == VAR:
            push(assign[a])
        elif op == LDIV:
            row = regs[a] * n
            want = regs[b]
            found = -1
            hole = -1
            for c in range(n):
                v = cells[row + c]
                if v == want:
                    found = c
                    break
                if v < 0 and hole < 0:
                    hole = row + c
            if found < 0:
                if hole < 0:
                    return VIOLATED, -1
                return UNDET, hole
            push(found)
        elif op == RDIV:
            col = regs[b]
            want = regs[a]
            found = -1
            hole = -1
            for r in range(n):
                v = cells[r * n + col]
                if v == want:
                    found = r
                    break
                if v < 0 and hole < 0:
                    hole = r * n + col
            if found < 0:
                if hole < 0:
                    return VIOLATED, -1
                return UNDET, hole
            push(found)
        else:
            push(0)
    if regs[prog.lhs] == regs[prog.rhs]:
        return SAT, -1
    return VIOLATED, -1
