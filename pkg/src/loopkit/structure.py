"""Subloops, nuclei, center, normality, quotients, nilpotency.

Nuclei are computed by the O(n^3) definition scan.  The independent route
through fixed points of inner mappings is exposed separately so the two
paths can be compared: under this package's composition convention the
fixed points of the L-family generators are the *right* nucleus and the
fixed points of the R-family generators are the *left* nucleus (verified
exhaustively on every loop table of order <= 6), while the commutators
[L(x), R(y)] fix exactly the middle nucleus.
"""

from __future__ import annotations

from . import perms
from .core import LoopTable
from .errors import IllDefined, NotASubloop, NotNormal


class SubloopSet:
    """A subset of a loop's ids, stored as a bitmask."""

    __slots__ = ("n", "mask")

    def __init__(self, n, mask):
        self.n = n
        self.mask = mask

    @classmethod
    def from_members(cls, n, members):
        mask = 0
        for x in members:
            if not 0 <= x < n:
                raise ValueError(f"id {x} out of range for order {n}")
            mask |= 1 << x
        return cls(n, mask)

    def members(self):
        return tuple(x for x in range(self.n) if self.mask >> x & 1)

    def __contains__(self, x):
        return 0 <= x < self.n and bool(self.mask >> x & 1)

    def __len__(self):
        return self.mask.bit_count()

    def __eq__(self, other):
        return isinstance(other, SubloopSet) and (self.n, self.mask) == (other.n, other.mask)

    def __hash__(self):
        return hash((self.n, self.mask))

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"SubloopSet({list(self.members())})"


def is_subloop(q, s):
    """Closure of the subset under mul, ldiv and rdiv, with 0 present."""
    if 0 not in s:
        return False
    mem = s.members()
    for x in mem:
        for y in mem:
            if q.mul(x, y) not in s or q.ldiv(x, y) not in s or q.rdiv(x, y) not in s:
                return False
    return True


def left_nucleus(q):
    n = q.order
    rows = q.rows
    out = []
    for a in range(n):
        arow = rows[a]
        if all(arow[rows[x][y]] == rows[arow[x]][y] for x in range(n) for y in range(n)):
            out.append(a)
    return SubloopSet.from_members(n, out)


def middle_nucleus(q):
    n = q.order
    rows = q.rows
    out = []
    for a in range(n):
        if all(rows[x][rows[a][y]] == rows[rows[x][a]][y] for x in range(n) for y in range(n)):
            out.append(a)
    return SubloopSet.from_members(n, out)


def right_nucleus(q):
    n = q.order
    rows = q.rows
    out = []
    for a in range(n):
        if all(rows[x][rows[y][a]] == rows[rows[x][y]][a] for x in range(n) for y in range(n)):
            out.append(a)
    return SubloopSet.from_members(n, out)


def nucleus(q):
    nl = left_nucleus(q)
    nm = middle_nucleus(q)
    nr = right_nucleus(q)
    return SubloopSet(q.order, nl.mask & nm.mask & nr.mask)


def center(q):
    nuc = nucleus(q)
    n = q.order
    out = [a for a in nuc.members() if all(q.mul(a, x) == q.mul(x, a) for x in range(n))]
    return SubloopSet.from_members(n, out)


def nuclei_from_inner_mappings(q):
    """(left, middle, right) nuclei via fixed points of inner mappings.

    Independent of the definition scans: left comes from the R-family
    generators, right from the L-family, middle from the commutators.
    """
    n = q.order
    ll = (q.L(q.mul(x, y)).inverse() * q.L(x) * q.L(y) for x in range(n) for y in range(n))
    rr = (q.R(q.mul(y, x)).inverse() * q.R(x) * q.R(y) for x in range(n) for y in range(n))
    mid = (perms.commutator_LR(q, y, x) for y in range(n) for x in range(n))
    left = SubloopSet.from_members(n, perms.fixed_points(rr))
    right = SubloopSet.from_members(n, perms.fixed_points(ll))
    middle = SubloopSet.from_members(n, perms.fixed_points(mid))
    return left, middle, right


def subloop_generated(q, seed):
    """Smallest subloop containing the seed ids (worklist closure)."""
    mem = {0}
    mem.update(seed)
    work = list(mem)
    while work:
        x = work.pop()
        for y in tuple(mem):
            for z in (q.mul(x, y), q.mul(y, x), q.ldiv(x, y), q.ldiv(y, x), q.rdiv(x, y), q.rdiv(y, x)):
                if z not in mem:
                    mem.add(z)
                    work.append(z)
    return SubloopSet.from_members(q.order, mem)


def subloop_table(q, s):
    """The subloop as a LoopTable of its own, members reindexed in
    ascending order.  The identity keeps id 0."""
    if not is_subloop(q, s):
        raise NotASubloop(f"{s} is not closed")
    mem = s.members()
    index = {x: i for i, x in enumerate(mem)}
    rows = [[index[q.mul(a, b)] for b in mem] for a in mem]
    return LoopTable(rows)


def all_subloops(q):
    """Every subloop, smallest first.  Exponential in principle; meant for
    small orders where the subloop lattice is tiny."""
    found = {subloop_generated(q, ())}
    frontier = [subloop_generated(q, (x,)) for x in range(q.order)]
    for s in frontier:
        found.add(s)
    grew = True
    while grew:
        grew = False
        cur = list(found)
        for s in cur:
            for x in range(q.order):
                if x in s:
                    continue
                bigger = subloop_generated(q, s.members() + (x,))
                if bigger not in found:
                    found.add(bigger)
                    grew = True
    return sorted(found, key=lambda s: (len(s), s.mask))


def is_normal_subloop(q, s, cap=perms.DEFAULT_CAP):
    """Invariance of s under every inner mapping."""
    if not is_subloop(q, s):
        raise NotASubloop(f"{s!r} is not a subloop")
    group = perms.inn(q, cap=cap)
    for p in group.elements:
        img = 0
        for x in s.members():
            img |= 1 << p.images[x]
        if img != s.mask:
            return False
    return True


def standard_generator_invariant(q, s):
    """Whether the three standard generator families map s into itself.

    Weaker in principle than normality; on the finite corpus no gap has
    been observed, and the agreement is recorded as an observation by a
    test, not assumed here.
    """
    if not is_subloop(q, s):
        raise NotASubloop(f"{s!r} is not a subloop")
    for _tag, p in perms.standard_generators(q):
        for x in s.members():
            if p.images[x] not in s:
                return False
    return True


def quotient(q, s, cap=perms.DEFAULT_CAP):
    """The factor loop Q/S and the projection id -> coset index.

    Cosets are indexed by their least member, ascending, so the coset of 0
    is the identity of the quotient.  Raises NotNormal if s is not normal
    and IllDefined if coset multiplication depends on representatives.
    """
    if not is_normal_subloop(q, s, cap=cap):
        raise NotNormal(f"{s!r} is not normal")
    n = q.order
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        idx = len(reps)
        members = sorted(q.mul(x, m) for m in s.members())
        for y in members:
            if coset_of[y] >= 0:
                raise IllDefined("left cosets do not partition")
            coset_of[y] = idx
        reps.append(members[0])
    m = len(reps)
    rows = [[0] * m for _ in range(m)]
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            rows[i][j] = coset_of[q.mul(a, b)]
    for x in range(n):
        for y in range(n):
            if coset_of[q.mul(x, y)] != rows[coset_of[x]][coset_of[y]]:
                raise IllDefined("coset product depends on representatives")
    table = LoopTable(tuple(tuple(r) for r in rows), check=False)
    return table, tuple(coset_of)


def nilpotency_class(q, cap=perms.DEFAULT_CAP):
    """Length of the upper central series, or None if it stalls below Q."""
    current = q
    steps = 0
    while current.order > 1:
        z = center(current)
        if len(z) == 1:
            return None
        current, _ = quotient(current, z, cap=cap)
        steps += 1
    return steps
