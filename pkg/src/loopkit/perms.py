"""Permutations and the translation groups of a loop.

Composition convention, fixed once for the whole package:

    (p * q)(x) == p(q(x))

i.e. the right factor acts first.  Commutators follow the convention
``[a, b] = a.inverse() * b.inverse() * a * b``; a calibration test pins
this against the translation identities satisfied by the corpus.
"""

from __future__ import annotations

from .errors import Capped, DegreeMismatch

DEFAULT_CAP = 1 << 20


class Perm:
    """A permutation of 0..n-1 stored as its image sequence."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        if len(self.images) != len(other.images):
            raise DegreeMismatch(f"{len(self.images)} != {len(other.images)}")
        mine = self.images
        return Perm(tuple(mine[v] for v in other.images))

    def inverse(self):
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Perm(inv)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Perm.identity(len(self.images))
        for _ in range(k):
            out = self * out
        return out

    def is_identity(self):
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self):
        """Nontrivial cycles, each rotated to start at its least element."""
        seen = [False] * len(self.images)
        out = []
        for s in range(len(self.images)):
            if seen[s]:
                continue
            cyc = []
            t = s
            while not seen[t]:
                seen[t] = True
                cyc.append(t)
                t = self.images[t]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(v) for v in c) + ")" for c in cycs)

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


class PermGroup:
    """A fully materialized permutation group."""

    __slots__ = ("degree", "generators", "elements", "_sorted")

    def __init__(self, degree, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = frozenset(elements)
        self._sorted = None

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self.elements

    def __iter__(self):
        """Deterministic iteration order (sorted by image tuple)."""
        if self._sorted is None:
            self._sorted = sorted(self.elements, key=lambda p: p.images)
        return iter(self._sorted)

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self.elements == other.elements

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={len(self.elements)})"


def closure(generators, cap=DEFAULT_CAP):
    """Breadth-first closure of a generator set under composition.

    Raises Capped if the element count passes ``cap``.  The result does not
    depend on generator order.
    """
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator to fix the degree")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"{g.degree} != {degree}")
    els = {Perm.identity(degree)}
    frontier = list(els)
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = g * p
                if q not in els:
                    els.add(q)
                    new.append(q)
                    if len(els) > cap:
                        raise Capped(len(els))
        frontier = new
    return PermGroup(degree, gens, els)


def mlt(q, cap=DEFAULT_CAP):
    """Multiplication group: closure of all left and right translations."""
    gens = [q.L(x) for x in range(q.order)] + [q.R(x) for x in range(q.order)]
    return closure(gens, cap=cap)


def mlt_left(q, cap=DEFAULT_CAP):
    return closure([q.L(x) for x in range(q.order)], cap=cap)


def mlt_right(q, cap=DEFAULT_CAP):
    return closure([q.R(x) for x in range(q.order)], cap=cap)


def inn(q, cap=DEFAULT_CAP):
    """Inner mapping group: the stabilizer of 0 inside the full mlt."""
    big = mlt(q, cap=cap)
    stab = [p for p in big if p.images[0] == 0]
    return PermGroup(q.order, tuple(sorted(stab, key=lambda p: p.images)), stab)


def standard_generators(q):
    """The three classical generator families of the inner mapping group.

    Returns a list of ((kind, x, y), Perm) with kind one of "LL", "RR",
    "TR": LL is L(x*y)^-1 L(x) L(y), RR is R(y*x)^-1 R(x) R(y), and TR is
    L(x)^-1 R(x) (tagged with y == 0).
    """
    out = []
    n = q.order
    for x in range(n):
        for y in range(n):
            lxy = q.L(q.mul(x, y)).inverse()
            out.append((("LL", x, y), lxy * q.L(x) * q.L(y)))
    for x in range(n):
        for y in range(n):
            ryx = q.R(q.mul(y, x)).inverse()
            out.append((("RR", x, y), ryx * q.R(x) * q.R(y)))
    for x in range(n):
        out.append((("TR", x, 0), q.L(x).inverse() * q.R(x)))
    return out


def inn_left(q, cap=DEFAULT_CAP):
    """Closure of the maps L(x*y)^-1 L(x) L(y)."""
    gens = []
    for x in range(q.order):
        for y in range(q.order):
            gens.append(q.L(q.mul(x, y)).inverse() * q.L(x) * q.L(y))
    return closure(gens, cap=cap)


def inn_right(q, cap=DEFAULT_CAP):
    """Closure of the maps R(y*x)^-1 R(x) R(y)."""
    gens = []
    for x in range(q.order):
        for y in range(q.order):
            gens.append(q.R(q.mul(y, x)).inverse() * q.R(x) * q.R(y))
    return closure(gens, cap=cap)


def is_normal_subgroup(h, g):
    """Whether h is normal in g.

    Conjugates generators of h by generators of g; sufficient because h is
    materialized, so its element set is the closure of its generators.
    """
    for gen in g.generators:
        gi = gen.inverse()
        for hg in h.generators:
            if gen * hg * gi not in h.elements:
                return False
    return True


def fixed_points(perms):
    """Ids fixed by every permutation in the iterable."""
    perms = list(perms)
    if not perms:
        return frozenset()
    n = perms[0].degree
    out = set(range(n))
    for p in perms:
        out = {x for x in out if p.images[x] == x}
        if not out:
            break
    return frozenset(out)


def commutator_LR(q, y, x):
    """[L(y), R(x)] under the a^-1 b^-1 a b convention."""
    ly, rx = q.L(y), q.R(x)
    return ly.inverse() * rx.inverse() * ly * rx
