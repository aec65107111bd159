"""Independent reference computations used by the tests.

The Jones polynomial oracle is a Kauffman bracket state sum over the closure
diagram of a braid word.  It knows nothing about quantum groups.
"""

from __future__ import annotations

import cmath
import itertools


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def _closure_arcs(strands, crossings):
    """Label arcs of the closed braid diagram.

    Returns (number of arcs, per crossing (in_left, in_right, out_left, out_right)).
    """
    current = list(range(strands))
    bottom = list(current)
    nxt = strands
    quads = []
    for i, _ in crossings:
        a, b = current[i - 1], current[i]
        c, d = nxt, nxt + 1
        nxt += 2
        quads.append((a, b, c, d))
        current[i - 1], current[i] = c, d
    # closure: top arc at position j is identified with the bottom arc at j
    glue = list(zip(current, bottom))
    return nxt, quads, glue


def kauffman_bracket(strands, crossings, A: complex) -> complex:
    """<D> for the closure of a braid given as [(index, sign), ...] (sigma letters only).

    At a positive crossing the A-smoothing joins each incoming arc to the
    outgoing arc above it; at a negative crossing it joins the two incoming
    arcs (and the two outgoing ones).
    """
    n_arcs, quads, glue = _closure_arcs(strands, crossings)
    delta = -(A**2) - A ** (-2)
    total = 0j
    for state in itertools.product((0, 1), repeat=len(quads)):
        dsu = _DSU(n_arcs)
        for x, y in glue:
            dsu.union(x, y)
        power = 0
        for (a, b, c, d), (_, sign), choice in zip(quads, crossings, state):
            horizontal = (choice == 0) == (sign < 0)
            if horizontal:
                dsu.union(a, b)
                dsu.union(c, d)
            else:
                dsu.union(a, c)
                dsu.union(b, d)
            power += 1 if choice == 0 else -1
        loops = len({dsu.find(x) for x in range(n_arcs)})
        total += A**power * delta ** (loops - 1)
    return total


def jones_polynomial(strands, crossings, t: complex) -> complex:
    """V(t) = (-A^3)^{-w} <D> with A = t^{-1/4}; for knots the root choice is irrelevant."""
    A = t ** (-0.25)
    w = sum(sign for _, sign in crossings)
    return (-(A**3)) ** (-w) * kauffman_bracket(strands, crossings, A)


def jones_at_root(strands, crossings, p: int, mirror: bool = False) -> complex:
    """V(t) at t = q^{-2} (or q^{2} with ``mirror``), q = exp(pi i / p)."""
    q = cmath.exp(1j * cmath.pi / p)
    t = q**2 if mirror else q**-2
    return jones_polynomial(strands, crossings, t)


def word_crossings(word):
    """Crossing list of a FramedBraidWord without tau letters."""
    out = []
    for kind, idx, exp in word.letters:
        if kind != "s":
            raise ValueError("oracle handles sigma letters only")
        out.append((idx, exp))
    return out
