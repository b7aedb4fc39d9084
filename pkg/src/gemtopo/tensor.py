"""Trace invariants, Wick pairings and their Feynman graphs.

A trace invariant of rank-``d`` tensors is a bipartite graph with colors
``1..d``; white vertices stand for ``T`` and black ones for ``T̄``.  Each
pairing ``σ`` of white ``w_r`` with black ``b_σ(r)`` adds the color-0 edges
and gives a ``(d+1)``-colored Feynman graph.  ``N`` stays symbolic: the
histogram records the exponent ``-2 ω_G / (d-1)!`` of each term.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .graph import ColoredGraph, GraphError, bipartition, is_bipartite, is_connected
from .halfint import HalfInteger
from .topology import gurau_degree

MAX_P = 10


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TraceInvariant:
    """``graph`` holds colors ``1..d`` as its local colors ``0..d-1``."""

    graph: ColoredGraph
    white: tuple[int, ...]
    black: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        if len(self.white) != len(self.black) or len(self.white) * 2 != g.order:
            raise GraphError("white and black classes must split the vertices evenly")
        if set(self.white) | set(self.black) != set(range(g.order)):
            raise GraphError("white and black classes must cover every vertex")
        ws = set(self.white)
        for row in g.matchings:
            for v in self.white:
                if row[v] in ws:
                    raise GraphError(f"edge {v}-{row[v]} joins two white vertices")
        if not is_connected(g):
            raise GraphError("trace invariants must be connected")

    @property
    def d(self) -> int:
        """Tensor rank, i.e. number of colors."""
        return self.graph.d + 1

    @property
    def p(self) -> int:
        return len(self.white)

    def matching(self, color: int) -> tuple[int, ...]:
        """Matching of tensor color ``color`` (``1..d``)."""
        return self.graph.matchings[color - 1]

    def to_dict(self) -> dict:
        """Core graph format with ``colors_offset`` 1: ``d`` is the tensor rank
        and ``matchings[k]`` belongs to color ``k + 1``."""
        out = self.graph.to_dict()
        out["d"] = self.d
        out["colors_offset"] = 1
        out["white"] = list(self.white)
        out["black"] = list(self.black)
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "TraceInvariant":
        if obj.get("colors_offset", 1) != 1:
            raise GraphError("trace invariants use colors_offset 1")
        g = ColoredGraph.from_dict({**obj, "d": obj["d"] - 1})
        white = tuple(obj["white"])
        black = tuple(obj.get("black") or sorted(set(range(g.order)) - set(white)))
        return cls(g, white, black)

    @classmethod
    def from_graph(cls, g: ColoredGraph) -> "TraceInvariant":
        """Use the normalized bipartition: the class of vertex 0 is white."""
        parts = bipartition(g)
        if parts is None:
            raise GraphError("trace invariants must be bipartite")
        return cls(g, parts[0], parts[1])


def quartic_invariant(d: int) -> TraceInvariant:
    """The quartic invariant: ``w1 = 0, w2 = 1, b1 = 2, b2 = 3``; color 1
    joins ``b1 w2`` and ``b2 w1``, colors ``2..d`` join ``b1 w1`` and ``b2 w2``."""
    if d < 2:
        raise ValueError("the quartic invariant needs rank d >= 2")
    w1, w2, b1, b2 = 0, 1, 2, 3
    rows = []
    for c in range(1, d + 1):
        row = [0] * 4
        pairs = [(b1, w2), (b2, w1)] if c == 1 else [(b1, w1), (b2, w2)]
        for x, y in pairs:
            row[x], row[y] = y, x
        rows.append(row)
    return TraceInvariant(ColoredGraph(d - 1, rows), (w1, w2), (b1, b2))


def melon_invariant(d: int) -> TraceInvariant:
    """Two vertices joined by all ``d`` colors."""
    return TraceInvariant(ColoredGraph(d - 1, [[1, 0]] * d), (0,), (1,))


def feynman_graph(inv: TraceInvariant, sigma: Sequence[int]) -> ColoredGraph:
    """Close ``inv`` with color-0 edges ``w_r -- b_σ(r)`` (``σ`` 0-indexed)."""
    p = inv.p
    if sorted(sigma) != list(range(p)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 0..{p - 1}")
    row = [0] * (2 * p)
    for r, s in enumerate(sigma):
        w, b = inv.white[r], inv.black[s]
        row[w], row[b] = b, w
    g = ColoredGraph(inv.d, [row, *inv.graph.matchings], check=False)
    assert is_bipartite(g)
    return g


@dataclass
class ExpansionHistogram:
    d: int
    p: int
    buckets: dict[HalfInteger, int]
    disconnected: int

    def exponent(self, omega: HalfInteger) -> Fraction:
        """Power of ``N`` carried by graphs of G-degree ``omega``."""
        return -2 * omega.as_fraction() / factorial(self.d - 1)

    @property
    def exponents(self) -> dict[HalfInteger, Fraction]:
        return {w: self.exponent(w) for w in self.buckets}

    def total(self) -> int:
        return sum(self.buckets.values()) + self.disconnected

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "buckets": {str(w): n for w, n in self.buckets.items()},
            "exponents": {str(w): str(e) for w, e in self.exponents.items()},
            "disconnected": self.disconnected,
        }


def expansion_histogram(inv: TraceInvariant, max_p: int = MAX_P) -> ExpansionHistogram:
    """Count the Wick pairings of ``inv`` by the G-degree of their Feynman graph."""
    if inv.p > max_p:
        raise BudgetExceeded(f"{inv.p}! pairings exceed the limit p <= {max_p}")
    hist: Counter = Counter()
    disconnected = 0
    for sigma in itertools.permutations(range(inv.p)):
        g = feynman_graph(inv, sigma)
        if not is_connected(g):
            disconnected += 1
            continue
        hist[gurau_degree(g)] += 1
    return ExpansionHistogram(inv.d, inv.p, dict(sorted(hist.items())), disconnected)
