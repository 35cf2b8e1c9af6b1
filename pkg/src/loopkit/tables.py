"""Named table constructions used as fixtures and reference points."""

from __future__ import annotations

from .core import LoopTable


def cyclic(n):
    """The cyclic group of order n."""
    return LoopTable([[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral(m):
    """The dihedral group of order 2m.

    Element f*m + r encodes rotation r with flip flag f; composition
    (r1,f1)(r2,f2) = (r1 + (-1)^f1 r2, f1 xor f2).
    """
    n = 2 * m
    rows = []
    for i in range(n):
        r1, f1 = i % m, i // m
        row = []
        for j in range(n):
            r2, f2 = j % m, j // m
            r = (r1 + (r2 if f1 == 0 else -r2)) % m
            row.append((f1 ^ f2) * m + r)
        rows.append(row)
    return LoopTable(rows)


def chein_double(g):
    """Order-2n loop on G u Gu with the twisted doubling product.

    Products: g*h = gh, g*(hu) = (hg)u, (gu)*h = (g h^-1)u,
    (gu)*(hu) = h^-1 g.  For a nonabelian group G the result is a
    nonassociative Moufang loop; the smallest case G = S3 gives order 12.
    """
    n = g.order
    inv = [g.ldiv(x, 0) for x in range(n)]
    rows = []
    for i in range(2 * n):
        gi, fi = i % n, i // n
        row = []
        for j in range(2 * n):
            hj, fj = j % n, j // n
            if fi == 0 and fj == 0:
                row.append(g.mul(gi, hj))
            elif fi == 0:
                row.append(n + g.mul(hj, gi))
            elif fj == 0:
                row.append(n + g.mul(gi, inv[hj]))
            else:
                row.append(g.mul(inv[hj], gi))
        rows.append(row)
    return LoopTable(rows)
