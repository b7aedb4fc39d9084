"""Edge-colored graphs stored as tuples of fixed-point-free involutions.

A ``(d+1)``-colored graph of order ``2p`` has vertices ``0 .. 2p-1`` and
colors ``0 .. d``; ``matchings[c][v]`` is the vertex joined to ``v`` by the
edge of color ``c``.  Parallel edges of different colors are allowed, loops
are not.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for malformed colored graphs."""


class NotInvolution(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class OddOrder(GraphError):
    pass


class BadColorCount(GraphError):
    pass


class Disconnected(GraphError):
    pass


class ColoredGraph:
    """Immutable ``(d+1)``-colored graph.

    ``d`` may be 0 for the one-colored graphs that show up as residues of a
    single color; everything user-facing works with ``d >= 1``.
    """

    __slots__ = ("d", "order", "matchings", "_hash")

    def __init__(self, d: int, matchings: Sequence[Sequence[int]], *, check: bool = True):
        self.d = int(d)
        self.matchings = tuple(tuple(int(x) for x in row) for row in matchings)
        self.order = len(self.matchings[0]) if self.matchings else 0
        self._hash = None
        if check:
            self._validate()

    def _validate(self) -> None:
        if self.d < 0 or len(self.matchings) != self.d + 1:
            raise BadColorCount(
                f"expected d+1={self.d + 1} matchings, got {len(self.matchings)}")
        n = self.order
        if n < 2 or n % 2:
            raise OddOrder(f"order must be even and >= 2, got {n}")
        for c, row in enumerate(self.matchings):
            if len(row) != n:
                raise BadColorCount(f"matching {c} has length {len(row)}, expected {n}")
            for v, w in enumerate(row):
                if not 0 <= w < n:
                    raise NotInvolution(f"color {c}: vertex {v} maps outside 0..{n - 1}")
                if w == v:
                    raise LoopEdge(f"color {c}: vertex {v} is matched to itself")
                if row[w] != v:
                    raise NotInvolution(f"color {c}: m[m[{v}]] = {row[w]} != {v}")

    @property
    def p(self) -> int:
        return self.order // 2

    @property
    def colors(self) -> range:
        return range(self.d + 1)

    def neighbor(self, v: int, c: int) -> int:
        return self.matchings[c][v]

    def edges(self, c: int) -> list[tuple[int, int]]:
        row = self.matchings[c]
        return [(v, w) for v, w in enumerate(row) if v < w]

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        n = self.order
        new = []
        for row in self.matchings:
            out = [0] * n
            for v, w in enumerate(row):
                out[perm[v]] = perm[w]
            new.append(out)
        return ColoredGraph(self.d, new, check=False)

    def permute_colors(self, perm: Sequence[int]) -> "ColoredGraph":
        """Return the graph whose color ``perm[c]`` is the old color ``c``."""
        new = [None] * (self.d + 1)
        for c, row in enumerate(self.matchings):
            new[perm[c]] = row
        return ColoredGraph(self.d, new, check=False)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, ColoredGraph) and self.d == other.d
                and self.matchings == other.matchings)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.d, self.matchings))
        return self._hash

    def __repr__(self) -> str:
        return f"ColoredGraph(d={self.d}, order={self.order})"

    def to_dict(self) -> dict:
        return {"d": self.d, "order": self.order,
                "matchings": [list(row) for row in self.matchings]}

    @classmethod
    def from_dict(cls, obj: dict) -> "ColoredGraph":
        g = cls(obj["d"], obj["matchings"])
        if "order" in obj and obj["order"] != g.order:
            raise BadColorCount(f"order field {obj['order']} != matching length {g.order}")
        return g


def new_graph(d: int, matchings: Sequence[Sequence[int]]) -> ColoredGraph:
    """Validate ``matchings`` and build a graph, raising a :class:`GraphError`."""
    return ColoredGraph(d, matchings)


# -- color sets ---------------------------------------------------------------

def colorset(colors: Iterable[int]) -> int:
    """Bit set of the given colors."""
    mask = 0
    for c in colors:
        mask |= 1 << c
    return mask


def colors_of(mask: int) -> list[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return out


def complement(mask: int, d: int) -> int:
    """``Δ_d`` minus ``mask``."""
    return ((1 << (d + 1)) - 1) & ~mask


# -- residues -----------------------------------------------------------------

@dataclass(frozen=True)
class Residue:
    """One connected component of the subgraph spanned by some colors.

    ``graph`` uses local vertex ids ``0..len(vertices)-1`` and local colors
    ``0..|B|-1`` (the colors of ``B`` in increasing order); ``vertices[i]`` is
    the parent id of local vertex ``i``.
    """

    vertices: tuple[int, ...]
    colors: tuple[int, ...]
    graph: ColoredGraph | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.vertices)


def component_labels(g: ColoredGraph, mask: int) -> tuple[list[int], int]:
    """Label each vertex with its component in ``Γ_B``; return (labels, count)."""
    rows = [g.matchings[c] for c in colors_of(mask) if c <= g.d]
    n = g.order
    label = [-1] * n
    count = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = count
        stack = [s]
        while stack:
            v = stack.pop()
            for row in rows:
                w = row[v]
                if label[w] < 0:
                    label[w] = count
                    stack.append(w)
        count += 1
    return label, count


def count_residues(g: ColoredGraph, mask: int) -> int:
    """``g_B``: the number of ``B``-residues (``2p`` when ``B`` is empty)."""
    return component_labels(g, mask)[1]


def residues(g: ColoredGraph, mask: int, *, extract: bool = True) -> list[Residue]:
    """Decompose ``g`` into its ``B``-residues for the color bit set ``mask``.

    Components are ordered by their smallest parent vertex. With ``B`` empty
    each vertex is its own residue and no graph is extracted.
    """
    labels, count = component_labels(g, mask)
    groups: list[list[int]] = [[] for _ in range(count)]
    for v, lab in enumerate(labels):
        groups[lab].append(v)
    cols = tuple(c for c in colors_of(mask) if c <= g.d)
    out = []
    for verts in groups:
        sub = None
        if extract and cols:
            local = {v: i for i, v in enumerate(verts)}
            sub = ColoredGraph(len(cols) - 1,
                               [[local[g.matchings[c][v]] for v in verts] for c in cols],
                               check=False)
        out.append(Residue(tuple(verts), cols, sub))
    return out


def is_connected(g: ColoredGraph) -> bool:
    return count_residues(g, complement(0, g.d)) == 1


def connected_components(g: ColoredGraph) -> list[ColoredGraph]:
    return [r.graph for r in residues(g, complement(0, g.d))]


def bipartition(g: ColoredGraph, mask: int | None = None,
                ) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two vertex classes crossed by every edge, or None.

    Each connected component is 2-colored from its smallest vertex, so
    vertex 0 always lands in the first class.  With ``mask`` only edges of
    those colors are considered, which answers "is every B-residue bipartite".
    """
    rows = g.matchings if mask is None else [g.matchings[c] for c in colors_of(mask)]
    n = g.order
    side = [-1] * n
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for row in rows:
                w = row[v]
                if side[w] < 0:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return (tuple(v for v in range(n) if side[v] == 0),
            tuple(v for v in range(n) if side[v] == 1))


def is_bipartite(g: ColoredGraph, mask: int | None = None) -> bool:
    return bipartition(g, mask) is not None


# -- canonical codes ----------------------------------------------------------
#
# Labelling from a root r: r -> 0 and its 0-neighbour -> 1; then vertices are
# scanned in label order and, for colors 1..d ascending, an unlabelled
# neighbour w gets the next even label and its 0-neighbour the following odd
# one.  Color 0 is therefore always the pairing (0 1)(2 3)... and the code is
# the row-major table of colors 1..d under the new labels.

COLOR_FIXED = "color-fixed"
COLOR_FREE = "color-free"


def rooted_code(matchings: Sequence[Sequence[int]], root: int) -> list[int]:
    m0 = matchings[0]
    rest = matchings[1:]
    n = len(m0)
    label = [-1] * n
    order = [0] * n
    label[root] = 0
    order[0] = root
    w = m0[root]
    label[w] = 1
    order[1] = w
    nxt = 2
    out = []
    for i in range(n):
        v = order[i]
        for row in rest:
            w = row[v]
            lw = label[w]
            if lw < 0:
                lw = nxt
                label[w] = nxt
                order[nxt] = w
                u = m0[w]
                label[u] = nxt + 1
                order[nxt + 1] = u
                nxt += 2
            out.append(lw)
    return out


def compare_rooted(matchings: Sequence[Sequence[int]], root: int, ref: Sequence[int]) -> int:
    """Compare the code from ``root`` against ``ref``; stop at the first difference.

    Returns -1, 0 or 1. ``matchings`` must describe a connected graph.
    """
    m0 = matchings[0]
    rest = matchings[1:]
    n = len(m0)
    label = [-1] * n
    order = [0] * n
    label[root] = 0
    order[0] = root
    w = m0[root]
    label[w] = 1
    order[1] = w
    nxt = 2
    k = 0
    for i in range(n):
        v = order[i]
        for row in rest:
            w = row[v]
            lw = label[w]
            if lw < 0:
                lw = nxt
                label[w] = nxt
                order[nxt] = w
                u = m0[w]
                label[u] = nxt + 1
                order[nxt + 1] = u
                nxt += 2
            r = ref[k]
            if lw != r:
                return -1 if lw < r else 1
            k += 1
    return 0


def _code_bytes(d: int, n: int, table: Sequence[int]) -> bytes:
    return b"".join(x.to_bytes(2, "big") for x in (d, n, *table))


def min_code_table(g: ColoredGraph, mode: str = COLOR_FIXED) -> list[int]:
    if not is_connected(g):
        raise Disconnected("canonical codes need a connected graph")
    if mode == COLOR_FIXED:
        perms = [tuple(g.colors)]
    elif mode == COLOR_FREE:
        perms = list(itertools.permutations(g.colors))
    else:
        raise ValueError(f"unknown canonicalization mode {mode!r}")
    best = None
    for perm in perms:
        ms = [None] * (g.d + 1)
        for c, row in enumerate(g.matchings):
            ms[perm[c]] = row
        for root in range(g.order):
            if best is None:
                best = rooted_code(ms, root)
            elif compare_rooted(ms, root, best) < 0:
                best = rooted_code(ms, root)
    return best


def canonical_code(g: ColoredGraph, mode: str = COLOR_FIXED) -> bytes:
    """Isomorphism-complete code of a connected graph.

    ``color-fixed`` identifies graphs up to color-preserving isomorphism,
    ``color-free`` additionally up to renaming the colors.  The byte layout is
    ``d``, ``order`` and then the table, each as a big-endian 16-bit word, so
    bytewise order agrees with the order of the integer tables.
    """
    return _code_bytes(g.d, g.order, min_code_table(g, mode))


def graph_from_table(d: int, n: int, table: Sequence[int]) -> ColoredGraph:
    rows = [[v ^ 1 for v in range(n)]] + [[0] * n for _ in range(d)]
    k = 0
    for v in range(n):
        for c in range(1, d + 1):
            rows[c][v] = table[k]
            k += 1
    return ColoredGraph(d, rows)


def graph_from_code(code: bytes) -> ColoredGraph:
    words = [int.from_bytes(code[i:i + 2], "big") for i in range(0, len(code), 2)]
    d, n = words[0], words[1]
    return graph_from_table(d, n, words[2:])


# -- builders -----------------------------------------------------------------

def order_two_graph(d: int) -> ColoredGraph:
    """Two vertices joined by ``d+1`` parallel edges (a gem of the d-sphere)."""
    return ColoredGraph(d, [[1, 0]] * (d + 1))


def torus_gem() -> ColoredGraph:
    """The 6-vertex 3-colored graph of the torus."""
    return ColoredGraph(2, [
        [1, 0, 3, 2, 5, 4],
        [5, 2, 1, 4, 3, 0],
        [3, 4, 5, 0, 1, 2],
    ])


def disjoint_union(graphs: Sequence[ColoredGraph]) -> ColoredGraph:
    d = graphs[0].d
    rows: list[list[int]] = [[] for _ in range(d + 1)]
    offset = 0
    for g in graphs:
        if g.d != d:
            raise BadColorCount("all graphs must have the same number of colors")
        for c in range(d + 1):
            rows[c].extend(w + offset for w in g.matchings[c])
        offset += g.order
    return ColoredGraph(d, rows, check=False)
