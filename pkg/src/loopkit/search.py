"""Backtracking search for loop tables subject to variety constraints.

The engine enumerates reduced tables (row 0 and column 0 are forced by
the identity element, so every table in this package's representation is
reduced).  Required varieties with equational content drive incremental
pruning through a watch scheme over ground identity instances; forbidden
varieties and any non-equational requirements are leaf filters.  Every
leaf is re-verified with the authoritative full checkers, so pruning is
an optimization and never decides membership by itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations

from .core import LoopTable
from .errors import BudgetExceeded, InvalidSpec
from .identities import CONST, LDIV, MUL, RDIV, SAT, UNDET, VAR, VIOLATED, eval_partial
from .varieties import check_variety, get_entry, propagation_programs

_MODES = ("collect", "count", "first")
_ISOMORPHS = ("all", "reduced", "up_to_iso")
_CELL_ORDERS = ("mrv", "row_major")


@dataclass(frozen=True)
class SearchSpec:
    """What to search for: order, required and forbidden variety names.

    ``mode``: "collect" keeps every table found, "count" keeps none,
    "first" stops at the first.  ``isomorphs``: "reduced" emits one table
    per reduced form ("all" is an alias, since a table with identity 0 is
    already reduced), "up_to_iso" canonicalizes and deduplicates.
    ``shards`` > 1 splits the run into that many independent slices and
    merges them; ``shard_slice=(i, k)`` restricts to slice i of k.
    """

    order: int
    required: tuple = ()
    forbidden: tuple = ()
    mode: str = "collect"
    isomorphs: str = "reduced"
    cell_order: str = "mrv"
    shards: int = 1
    shard_slice: tuple = ()

    def __post_init__(self):
        if self.order < 1:
            raise InvalidSpec("order must be at least 1")
        if self.mode not in _MODES:
            raise InvalidSpec(f"unknown mode {self.mode!r}")
        if self.isomorphs not in _ISOMORPHS:
            raise InvalidSpec(f"unknown isomorph handling {self.isomorphs!r}")
        if self.cell_order not in _CELL_ORDERS:
            raise InvalidSpec(f"unknown cell order {self.cell_order!r}")
        if self.shards < 1:
            raise InvalidSpec("shards must be at least 1")
        if self.shard_slice:
            i, k = self.shard_slice
            if k < 1 or not 0 <= i < k:
                raise InvalidSpec(f"bad shard slice {self.shard_slice!r}")
        overlap = set(self.required) & set(self.forbidden)
        if overlap:
            raise InvalidSpec(f"required and forbidden overlap: {sorted(overlap)}")
        for name in tuple(self.required) + tuple(self.forbidden):
            get_entry(name)


def shard(spec, k):
    """Split a spec into k disjoint slices whose union covers it exactly."""
    if k < 1:
        raise InvalidSpec("shard count must be at least 1")
    if spec.shard_slice:
        raise InvalidSpec("spec is already a shard slice")
    from dataclasses import replace

    return [replace(spec, shards=1, shard_slice=(i, k)) for i in range(k)]


@dataclass
class SearchResult:
    order: int
    found: list
    count: int
    visited: int
    elapsed: float
    complete: bool = True
    shard_slice: tuple = ()

    def summary(self):
        return (
            f"order={self.order} visited={self.visited} "
            f"found={self.count} elapsed={self.elapsed:.3f}"
        )


class PartialTable:
    """A partially filled table: flat row-major cells with -1 holes.

    Row 0 and column 0 are pre-filled from the identity.  This is the
    public face of the engine's internal state, mainly for testing the
    pruning logic against brute force.
    """

    __slots__ = ("order", "cells")

    def __init__(self, order, cells=None):
        n = order
        if cells is None:
            cells = [-1] * (n * n)
            for j in range(n):
                cells[j] = j
                cells[j * n] = j
        if len(cells) != n * n:
            raise InvalidSpec("cell buffer does not match order")
        self.order = n
        self.cells = list(cells)

    def set(self, row, col, value):
        self.cells[row * self.order + col] = value

    def completions(self):
        """Brute-force generator of all Latin completions (small orders)."""
        n = self.order
        cells = self.cells
        full = (1 << n) - 1
        rowf = [full] * n
        colf = [full] * n
        for i in range(n):
            for j in range(n):
                v = cells[i * n + j]
                if v >= 0:
                    rowf[i] &= ~(1 << v)
                    colf[j] &= ~(1 << v)
        holes = [i for i, v in enumerate(cells) if v < 0]
        out = list(cells)

        def rec(k):
            if k == len(holes):
                yield [out[i * n : (i + 1) * n] for i in range(n)]
                return
            idx = holes[k]
            r, c = divmod(idx, n)
            mask = rowf[r] & colf[c]
            while mask:
                bit = mask & -mask
                mask ^= bit
                v = bit.bit_length() - 1
                out[idx] = v
                rowf[r] ^= bit
                colf[c] ^= bit
                yield from rec(k + 1)
                rowf[r] |= bit
                colf[c] |= bit
            out[idx] = -1

        yield from rec(0)


def identity_status(pt, prog):
    """Aggregate status of an identity over a partial table.

    Returns ("violated", cell_or_none), ("undetermined", blocking_cell)
    or ("satisfied", None).  "violated" means no completion can satisfy
    the identity; "satisfied" means every completion does.
    """
    n = pt.order
    first_undet = None
    for assign in _assignments(prog.nvars, n):
        status, cell = eval_partial(prog, pt.cells, n, assign)
        if status == VIOLATED:
            return "violated", None
        if status == UNDET and first_undet is None:
            first_undet = cell
    if first_undet is not None:
        return "undetermined", first_undet
    return "satisfied", None


def _assignments(nvars, n):
    if nvars == 0:
        yield ()
        return
    assign = [0] * nvars

    def rec(i):
        if i == nvars:
            yield tuple(assign)
            return
        for v in range(n):
            assign[i] = v
            yield from rec(i + 1)

    yield from rec(0)


# ---------------------------------------------------------------------------
# the engine


def _split_constraints(names):
    """Partition variety names into (propagation programs, leaf-only names)."""
    progs = []
    leaf_only = []
    for name in names:
        try:
            progs.extend(propagation_programs(name))
        except ValueError:
            leaf_only.append(name)
    return progs, leaf_only


def _build_instances(progs, n):
    """Ground every program over all assignments into flat instance arrays."""
    inst_ops = []
    inst_regs = []
    inst_ends = []
    seen_ops = {}
    for prog in progs:
        compute = []
        var_slots = []
        template = [0] * len(prog.ops)
        for i, (op, a, b) in enumerate(prog.ops):
            if op == VAR:
                var_slots.append((i, a))
            elif op == CONST:
                template[i] = 0
            else:
                compute.append((op, i, a, b))
        key = id(prog)
        if key not in seen_ops:
            seen_ops[key] = tuple(compute)
        ops = seen_ops[key]
        for assign in _assignments(prog.nvars, n):
            regs = list(template)
            for slot, v in var_slots:
                regs[slot] = assign[v]
            inst_ops.append(ops)
            inst_regs.append(regs)
            inst_ends.append((prog.lhs, prog.rhs))
    return inst_ops, inst_regs, inst_ends


def _eval_instance(ops, regs, lhs, rhs, cells, n):
    """Mirror of identities.eval_partial on a pre-grounded instance."""
    for op, dst, a, b in ops:
        va = regs[a]
        vb = regs[b]
        if op == MUL:
            ci = va * n + vb
            v = cells[ci]
            if v < 0:
                return UNDET, ci
            regs[dst] = v
        elif op == LDIV:
            row = va * n
            found = -1
            hole = -1
            for c in range(n):
                v = cells[row + c]
                if v == vb:
                    found = c
                    break
                if v < 0 and hole < 0:
                    hole = row + c
            if found < 0:
                if hole < 0:
                    return VIOLATED, -1
                return UNDET, hole
            regs[dst] = found
        else:
            col = vb
            found = -1
            hole = -1
            for r in range(n):
                v = cells[r * n + col]
                if v == va:
                    found = r
                    break
                if v < 0 and hole < 0:
                    hole = r * n + col
            if found < 0:
                if hole < 0:
                    return VIOLATED, -1
                return UNDET, hole
            regs[dst] = found
    if regs[lhs] == regs[rhs]:
        return SAT, -1
    return VIOLATED, -1


_STATE_DONE = -2


class _Stop(Exception):
    pass


def search(spec, budget_nodes=None, budget_seconds=None, prune_values=True):
    """Run the search described by ``spec``.

    ``prune_values`` additionally tests candidate values of a blocking
    cell against the instance watching it, excluding values that
    immediately violate it; it is an optimization with no effect on the
    result set.  Raises BudgetExceeded when a budget runs out.
    """
    n = spec.order
    required = tuple(spec.required)
    forbidden = tuple(spec.forbidden)
    progs, _leaf_required = _split_constraints(required)
    up_to_iso = spec.isomorphs == "up_to_iso"
    keep = spec.mode != "count"
    found_limit = 1 if spec.mode == "first" else None

    start = time.monotonic()
    found = []
    seen_canonical = set()
    counts = [0]
    visited = 0

    preseeds = [()]
    slices = [spec.shard_slice] if spec.shard_slice else None
    if slices is None and spec.shards > 1:
        slices = [(i, spec.shards) for i in range(spec.shards)]
    if slices:
        preseeds = []
        for index, count in slices:
            if count > 1:
                prefixes, _length = _row1_prefixes(n, count)
                preseeds.extend(
                    [(n + 1 + j, v) for j, v in enumerate(p)]
                    for i, p in enumerate(prefixes)
                    if i % count == index
                )
            else:
                preseeds.append(())

    for preseed in preseeds:
        visited = _search_one(
            n,
            preseed,
            progs,
            required,
            forbidden,
            up_to_iso,
            keep,
            found,
            counts,
            seen_canonical,
            visited,
            start,
            budget_nodes,
            budget_seconds,
            found_limit,
            prune_values,
            spec.cell_order == "mrv",
        )
        if found_limit is not None and counts[0] >= found_limit:
            break

    elapsed = time.monotonic() - start
    complete = found_limit is None or counts[0] < found_limit
    return SearchResult(n, found, counts[0], visited, elapsed, complete, spec.shard_slice)


def enumerate_tables(spec, **kwargs):
    """Stream the tables a spec finds, in deterministic search order."""
    yield from search(spec, **kwargs).found


def _search_one(
    n,
    preseed,
    progs,
    required,
    forbidden,
    up_to_iso,
    keep,
    found,
    counts,
    seen_canonical,
    visited,
    start,
    budget_nodes,
    budget_seconds,
    found_limit,
    prune_values,
    mrv=True,
):
    n2 = n * n
    cells = [-1] * n2
    for j in range(n):
        cells[j] = j
        cells[j * n] = j
    full = (1 << n) - 1
    row_free = [0] + [full & ~(1 << i) for i in range(1, n)]
    col_free = [0] + [full & ~(1 << j) for j in range(1, n)]
    excl = [0] * n2
    interior = [i * n + j for i in range(1, n) for j in range(1, n)]

    for idx, v in preseed:
        r, c = divmod(idx, n)
        bit = 1 << v
        if cells[idx] >= 0 or not (row_free[r] & col_free[c] & bit):
            return visited
        cells[idx] = v
        row_free[r] ^= bit
        col_free[c] ^= bit

    inst_ops, inst_regs, inst_ends = _build_instances(progs, n)
    ninst = len(inst_ops)
    inst_state = [0] * ninst
    watch = [[] for _ in range(n2)]
    for i in range(ninst):
        lhs, rhs = inst_ends[i]
        status, cell = _eval_instance(inst_ops[i], inst_regs[i], lhs, rhs, cells, n)
        if status == VIOLATED:
            return visited
        if status == SAT:
            inst_state[i] = _STATE_DONE
        else:
            inst_state[i] = cell
            watch[cell].append(i)

    counter = [visited]

    def leaf():
        rows = [cells[i * n : (i + 1) * n] for i in range(n)]
        q = LoopTable(rows)
        for name in required:
            if not check_variety(q, name):
                return
        for name in forbidden:
            if check_variety(q, name):
                return
        if up_to_iso:
            key = canonical_key(q)
            if key in seen_canonical:
                return
            seen_canonical.add(key)
            q = LoopTable([list(key[i * n : (i + 1) * n]) for i in range(n)])
        counts[0] += 1
        if keep:
            found.append(q)
        if found_limit is not None and counts[0] >= found_limit:
            raise _Stop

    def dfs():
        best = -1
        best_mask = 0
        best_count = n + 1
        for idx in interior:
            if cells[idx] >= 0:
                continue
            r, c = divmod(idx, n)
            mask = row_free[r] & col_free[c] & ~excl[idx]
            cnt = mask.bit_count()
            if cnt == 0:
                return
            if mrv:
                if cnt < best_count:
                    best = idx
                    best_mask = mask
                    best_count = cnt
                    if cnt == 1:
                        break
            elif best < 0:
                best = idx
                best_mask = mask
        if best < 0:
            leaf()
            return
        idx = best
        r, c = divmod(idx, n)
        mask = best_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            v = bit.bit_length() - 1
            counter[0] += 1
            if counter[0] & 1023 == 0:
                if budget_nodes is not None and counter[0] > budget_nodes:
                    raise BudgetExceeded(counter[0], time.monotonic() - start)
                if budget_seconds is not None and time.monotonic() - start > budget_seconds:
                    raise BudgetExceeded(counter[0], time.monotonic() - start)
            cells[idx] = v
            row_free[r] ^= bit
            col_free[c] ^= bit
            woken = watch[idx]
            watch[idx] = []
            excl_trail = []
            ok = True
            for i in woken:
                if inst_state[i] != idx:
                    continue
                lhs, rhs = inst_ends[i]
                ops = inst_ops[i]
                regs = inst_regs[i]
                status, cell = _eval_instance(ops, regs, lhs, rhs, cells, n)
                if status == VIOLATED:
                    ok = False
                    break
                if status == SAT:
                    inst_state[i] = _STATE_DONE
                    continue
                inst_state[i] = cell
                watch[cell].append(i)
                if prune_values:
                    br, bc = divmod(cell, n)
                    cand = row_free[br] & col_free[bc] & ~excl[cell]
                    removed = 0
                    m2 = cand
                    while m2:
                        b2 = m2 & -m2
                        m2 ^= b2
                        cells[cell] = b2.bit_length() - 1
                        s2, _ = _eval_instance(ops, regs, lhs, rhs, cells, n)
                        if s2 == VIOLATED:
                            removed |= b2
                        cells[cell] = -1
                    if removed:
                        excl_trail.append((cell, excl[cell]))
                        excl[cell] |= removed
                        if cand & ~removed == 0:
                            ok = False
                            break
            if ok:
                dfs()
            for pos, old in reversed(excl_trail):
                excl[pos] = old
            for i in woken:
                inst_state[i] = idx
            watch[idx] = woken
            cells[idx] = -1
            row_free[r] |= bit
            col_free[c] |= bit

    try:
        dfs()
    except _Stop:
        pass
    return counter[0]


def _row1_prefixes(n, k):
    """Row-1 prefixes of the minimal length whose count reaches k.

    Returns (prefixes, length); prefixes are tuples of values for cells
    (1,1)..(1,length) in lexicographic order.  With fewer total prefixes
    than shards, high-index shards are simply empty.
    """
    if n < 3:
        return [()], 0
    for length in range(1, n):
        prefixes = []

        def rec(j, used, acc):
            if j > length:
                prefixes.append(tuple(acc))
                return
            for v in range(n):
                if v == 1 or v == j or used & (1 << v):
                    continue
                acc.append(v)
                rec(j + 1, used | (1 << v), acc)
                acc.pop()

        rec(1, 0, [])
        if len(prefixes) >= k or length == n - 1:
            return prefixes, length
    return [()], 0


# ---------------------------------------------------------------------------
# canonical forms and counting


def canonical_key(q):
    """Lexicographically minimal flattened table over relabelings fixing 0.

    Two loops are isomorphic exactly when their canonical keys are equal,
    since any isomorphism fixes the identity element.
    """
    n = q.order
    rows = q.rows
    if n == 1:
        return (0,)
    best = None
    inv = [0] * n
    for p in permutations(range(1, n)):
        sigma = (0,) + p
        for i, v in enumerate(sigma):
            inv[v] = i
        cur = []
        append = cur.append
        abort = False
        decided = best is None
        for i in range(n):
            src = rows[inv[i]]
            for j in range(n):
                v = sigma[src[inv[j]]]
                if not decided:
                    b = best[len(cur)]
                    if v > b:
                        abort = True
                        break
                    if v < b:
                        decided = True
                append(v)
            if abort:
                break
        if not abort:
            best = cur
    return tuple(best)


def canonical_table(q):
    key = canonical_key(q)
    n = q.order
    return LoopTable([list(key[i * n : (i + 1) * n]) for i in range(n)])


def count_reduced(order, required=(), forbidden=(), **kwargs):
    spec = SearchSpec(order, tuple(required), tuple(forbidden), mode="count")
    return search(spec, **kwargs).count


def count_up_to_isomorphism(order, required=(), forbidden=(), **kwargs):
    spec = SearchSpec(order, tuple(required), tuple(forbidden), isomorphs="up_to_iso")
    return search(spec, **kwargs).count


def minimal_order(required, forbidden=(), max_order=12, **kwargs):
    """Ascending search for the smallest order admitting a loop in every
    required variety and no forbidden one.

    Returns (order, witness LoopTable) or None if there is none up to
    max_order.
    """
    for n in range(1, max_order + 1):
        spec = SearchSpec(n, tuple(required), tuple(forbidden), mode="first")
        res = search(spec, **kwargs)
        if res.count:
            return n, res.found[0]
    return None


def propagate_identity(partial, name):
    """Judge a partial table against one catalog identity.

    Returns "contradiction" when some fully determined ground instance
    fails (no completion can satisfy the identity), else "consistent".
    Only fully determined instances are judged, so a completable table
    is never rejected.  Entries with no equational content are always
    consistent.
    """
    get_entry(name)
    try:
        progs = propagation_programs(name)
    except ValueError:
        return "consistent"
    for prog in progs:
        status, _cell = identity_status(partial, prog)
        if status == "violated":
            return "contradiction"
    return "consistent"


# ---------------------------------------------------------------------------
# independent oracle


def enumerate_reduced_naive(order, required=(), forbidden=()):
    """Row-by-row enumeration sharing no code with the engine.

    Exists as an oracle for testing the engine at small orders; do not
    use beyond order 6.
    """
    n = order
    for name in tuple(required) + tuple(forbidden):
        get_entry(name)
    if n == 1:
        q = LoopTable([[0]])
        keep = all(check_variety(q, r) for r in required) and not any(
            check_variety(q, f) for f in forbidden
        )
        return [q] if keep else []
    rows = [list(range(n))]
    col_used = [1 << j for j in range(n)]
    out = []

    def fill_row(r, row, used, j):
        if j == n:
            rows.append(list(row))
            for c in range(n):
                col_used[c] |= 1 << row[c]
            next_row(r + 1)
            rows.pop()
            for c in range(n):
                col_used[c] &= ~(1 << row[c])
            return
        for v in range(n):
            bit = 1 << v
            if used & bit or col_used[j] & bit:
                continue
            row[j] = v
            fill_row(r, row, used | bit, j + 1)
        row[j] = -1

    def next_row(r):
        if r == n:
            q = LoopTable([list(x) for x in rows])
            if all(check_variety(q, name) for name in required) and not any(
                check_variety(q, name) for name in forbidden
            ):
                out.append(q)
            return
        row = [-1] * n
        row[0] = r
        fill_row(r, row, 1 << r, 1)

    next_row(1)
    return out
