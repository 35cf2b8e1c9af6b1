"""Finite loops stored as fully materialized Cayley tables.

Conventions used everywhere in this package:

* elements of a loop of order n are the ids 0..n-1, and 0 is always the
  two-sided identity;
* ``ldiv(x, y)`` is the unique z with ``x*z == y``; ``rdiv(x, y)`` is the
  unique z with ``z*y == x``;
* ``left_inv(x)`` is ``rdiv(0, x)`` and ``right_inv(x)`` is ``ldiv(x, 0)``;
* tables are immutable once built and may be shared freely.

Division tables are precomputed at construction, so all element level
operations are O(1) lookups.
"""

from __future__ import annotations

from .errors import (
    BadDimensions,
    NoIdentity,
    NotLatin,
    OrderMismatch,
    OrderTooLarge,
    ParseError,
)
from .perms import Perm

MAX_ORDER = 64


class LoopTable:
    """A loop of order n as an immutable row-major Cayley table."""

    __slots__ = ("order", "rows", "_ldiv", "_rdiv")

    def __init__(self, rows, check=True, max_order=None):
        rows = tuple(tuple(row) for row in rows)
        if check:
            _check_table(rows, max_order if max_order is not None else MAX_ORDER)
        self.order = len(rows)
        self.rows = rows
        n = self.order
        ldiv = [[0] * n for _ in range(n)]
        rdiv = [[0] * n for _ in range(n)]
        for x in range(n):
            row = rows[x]
            for z in range(n):
                ldiv[x][row[z]] = z
        for y in range(n):
            for z in range(n):
                rdiv[rows[z][y]][y] = z
        self._ldiv = tuple(tuple(r) for r in ldiv)
        self._rdiv = tuple(tuple(r) for r in rdiv)

    def mul(self, x, y):
        return self.rows[x][y]

    def ldiv(self, x, y):
        """The unique z with x*z == y."""
        return self._ldiv[x][y]

    def rdiv(self, x, y):
        """The unique z with z*y == x."""
        return self._rdiv[x][y]

    def left_inv(self, x):
        """x^lambda: the unique z with z*x == 0."""
        return self._rdiv[0][x]

    def right_inv(self, x):
        """x^rho: the unique z with x*z == 0."""
        return self._ldiv[x][0]

    def L(self, x):
        """Left translation y -> x*y as a permutation."""
        return Perm(self.rows[x])

    def R(self, x):
        """Right translation y -> y*x as a permutation."""
        return Perm(tuple(self.rows[y][x] for y in range(self.order)))

    def T(self, x):
        """The conjugation-like map R(x)^-1 * L(x)."""
        return self.R(x).inverse() * self.L(x)

    def elements(self):
        return range(self.order)

    def __eq__(self, other):
        return isinstance(other, LoopTable) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"LoopTable(order={self.order})"


def _check_table(rows, max_order):
    n = len(rows)
    if n == 0:
        raise BadDimensions("empty table")
    if n > max_order:
        raise OrderTooLarge(f"order {n} exceeds maximum {max_order}")
    for row in rows:
        if len(row) != n:
            raise BadDimensions(f"expected {n} columns, found {len(row)}")
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise BadDimensions(f"entry {v!r} out of range 0..{n - 1}")
    for i, row in enumerate(rows):
        if len(set(row)) != n:
            raise NotLatin("row", i)
    for j in range(n):
        if len({rows[i][j] for i in range(n)}) != n:
            raise NotLatin("col", j)
    for k in range(n):
        if rows[0][k] != k or rows[k][0] != k:
            raise NoIdentity("element 0 is not a two-sided identity")


def validate(order, cells, max_order=None):
    """Build a LoopTable from an iterable of rows, checking everything."""
    rows = [tuple(row) for row in cells]
    if len(rows) != order:
        raise BadDimensions(f"expected {order} rows, found {len(rows)}")
    return LoopTable(rows, check=True, max_order=max_order)


def opposite(q):
    """The loop with arguments swapped: x*y in the result is y*x in q."""
    n = q.order
    return LoopTable(
        tuple(tuple(q.rows[y][x] for y in range(n)) for x in range(n)), check=False
    )


def direct_product(q1, q2, max_order=None):
    """Componentwise product; (x1, x2) is encoded as x1 * q2.order + x2."""
    n1, n2 = q1.order, q2.order
    limit = max_order if max_order is not None else MAX_ORDER
    if n1 * n2 > limit:
        raise OrderTooLarge(f"product order {n1 * n2} exceeds maximum {limit}")
    rows = []
    for x1 in range(n1):
        for x2 in range(n2):
            row = []
            for y1 in range(n1):
                r1 = q1.rows[x1][y1] * n2
                row.extend(r1 + q2.rows[x2][y2] for y2 in range(n2))
            rows.append(tuple(row))
    return LoopTable(tuple(rows), check=False)


def principal_isotope(q, a, b):
    """The isotope x.y = rdiv(x, b) * ldiv(a, y), relabeled so 0 is its identity.

    The identity of the raw isotope is a*b; the relabeling swaps 0 with a*b
    and leaves every other id in place.
    """
    n = q.order
    e = q.mul(a, b)
    sigma = list(range(n))
    sigma[0], sigma[e] = e, 0
    rows = [[0] * n for _ in range(n)]
    for x in range(n):
        xb = q._rdiv[x][b]
        for y in range(n):
            rows[sigma[x]][sigma[y]] = sigma[q.rows[xb][q._ldiv[a][y]]]
    return LoopTable(tuple(tuple(r) for r in rows), check=False)


def _translation_fingerprints(q):
    """Per element: cycle type of its left and right translations.

    Invariant under isomorphism, used to cut the search for one.
    """
    fps = []
    for x in range(q.order):
        fps.append((_cycle_type(q.rows[x]), _cycle_type([q.rows[y][x] for y in range(q.order)])))
    return fps


def _cycle_type(images):
    n = len(images)
    seen = [False] * n
    lens = []
    for s in range(n):
        if seen[s]:
            continue
        k = 0
        t = s
        while not seen[t]:
            seen[t] = True
            t = images[t]
            k += 1
        lens.append(k)
    lens.sort()
    return tuple(lens)


def isomorphic(q1, q2):
    """An isomorphism q1 -> q2 as a Perm, or None.

    Backtracks over images of a generating sequence; candidate images are
    restricted to elements with the same translation fingerprint, and each
    assignment is propagated through the partial multiplication closure.
    """
    require_same_order(q1, q2)
    n = q1.order
    fp1 = _translation_fingerprints(q1)
    fp2 = _translation_fingerprints(q2)
    if sorted(fp1) != sorted(fp2):
        return None
    candidates = [[y for y in range(n) if fp2[y] == fp1[x]] for x in range(n)]

    img = [-1] * n
    used = [False] * n
    img[0] = 0
    used[0] = True

    def close(newly):
        """Propagate images through products; returns trail or None on clash."""
        trail = []
        queue = list(newly)
        while queue:
            x = queue.pop()
            for y in range(n):
                if img[y] < 0:
                    continue
                for a, b in ((x, y), (y, x)):
                    z = q1.rows[a][b]
                    w = q2.rows[img[a]][img[b]]
                    if img[z] < 0:
                        if used[w]:
                            _undo(trail)
                            return None
                        img[z] = w
                        used[w] = True
                        trail.append(z)
                        queue.append(z)
                    elif img[z] != w:
                        _undo(trail)
                        return None
        return trail

    def _undo(trail):
        for z in trail:
            used[img[z]] = False
            img[z] = -1

    def extend():
        try:
            x = next(x for x in range(n) if img[x] < 0)
        except StopIteration:
            return True
        for w in candidates[x]:
            if used[w]:
                continue
            img[x] = w
            used[w] = True
            trail = close([x])
            if trail is not None:
                if extend():
                    return True
                _undo(trail)
            used[w] = False
            img[x] = -1
        return False

    if not extend():
        return None
    for x in range(n):
        for y in range(n):
            if img[q1.rows[x][y]] != q2.rows[img[x]][img[y]]:
                return None
    return Perm(img)


def dumps(q):
    """Serialize to the .loop text format."""
    lines = [str(q.order)]
    lines.extend(" ".join(str(v) for v in row) for row in q.rows)
    return "\n".join(lines) + "\n"


def loads(text, max_order=None):
    """Parse the .loop text format.

    Line 1 is the order; the next n lines hold n whitespace separated ids.
    ``#`` starts a comment.  Anything after the table is an error.
    """
    tokens = []
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        tokens.extend(body.split())
    if not tokens:
        raise ParseError("empty input")
    try:
        n = int(tokens[0])
    except ValueError:
        raise ParseError(f"bad order {tokens[0]!r}") from None
    if n <= 0:
        raise ParseError(f"bad order {n}")
    need = 1 + n * n
    if len(tokens) < need:
        raise ParseError(f"expected {n * n} entries, found {len(tokens) - 1}")
    if len(tokens) > need:
        raise ParseError("trailing garbage after table")
    try:
        vals = [int(t) for t in tokens[1:]]
    except ValueError as exc:
        raise ParseError(f"bad entry: {exc}") from None
    rows = [tuple(vals[i * n : (i + 1) * n]) for i in range(n)]
    return validate(n, rows, max_order=max_order)


def load_path(path, max_order=None):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), max_order=max_order)


def dump_path(q, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(q))


def require_same_order(q1, q2):
    if q1.order != q2.order:
        raise OrderMismatch(f"{q1.order} != {q2.order}")
