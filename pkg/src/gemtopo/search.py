"""Orderly generation of connected colored graphs.

Graphs are produced directly in the rooted labelling used by the canonical
codes: color 0 is the pairing ``(0 1)(2 3)...`` and the table of colors
``1..d`` is filled row by row.  Each free slot ``(i, c)`` is either closed
onto an already labelled vertex ``j > i`` or opens the next pair of labels.
A completed table is kept only if no other root (and, in color-free mode,
no color renaming) gives a smaller code, so each isomorphism class is
emitted exactly once.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .graph import COLOR_FIXED, COLOR_FREE, compare_rooted


class _Search:
    def __init__(self, d: int, max_order: int, *, bipartite: bool = False,
                 prune: bool = True):
        self.d = d
        self.n_max = max_order
        self.bipartite = bipartite
        self.prune = prune
        self.rows = [[-1] * max_order for _ in range(d + 1)]
        self.rows[0] = [v ^ 1 for v in range(max_order)]
        self.side = [v & 1 for v in range(max_order)]

    # -- the partial-code pruning --
    def _prefix_beaten(self, upto: int) -> bool:
        """Does some other root already give a smaller code on rows ``< upto``?"""
        rows = self.rows
        m0 = rows[0]
        rest = rows[1:]
        d = self.d
        limit = upto * d
        for root in range(1, self._nxt):
            label = {root: 0, m0[root]: 1}
            order = [root, m0[root]]
            nxt = 2
            k = 0
            done = False
            for i in range(upto):
                v = order[i]
                for row in rest:
                    w = row[v]
                    if w < 0:
                        done = True
                        break
                    lw = label.get(w)
                    if lw is None:
                        lw = nxt
                        label[w] = nxt
                        order.append(w)
                        label[m0[w]] = nxt + 1
                        order.append(m0[w])
                        nxt += 2
                    ref = rows[k % d + 1][k // d]
                    if lw != ref:
                        if lw < ref:
                            return True
                        done = True
                        break
                    k += 1
                if done or k >= limit:
                    break
        return False

    def run(self, prefix: Sequence[int] = (), split_depth: int | None = None,
            on_leaf: Callable = None, on_split: Callable = None) -> None:
        self._nxt = 2
        self._prefix = list(prefix)
        self._split = split_depth
        self._on_leaf = on_leaf
        self._on_split = on_split
        self._choices: list[int] = []
        self._rec(0)

    def _rec(self, pos: int) -> None:
        d = self.d
        i, c = divmod(pos, d)
        c += 1
        nxt = self._nxt
        if i >= nxt:
            self._on_leaf(self, nxt, list(self._choices))
            return
        if c == 1 and self.prune and i > 0 and self._prefix_beaten(i):
            return
        row = self.rows[c]
        if row[i] >= 0:
            self._rec(pos + 1)
            return
        depth = len(self._choices)
        if self._split is not None and depth >= self._split:
            self._on_split(list(self._choices))
            return
        side = self.side
        si = side[i]
        cands = [j for j in range(i + 1, nxt)
                 if row[j] < 0 and not (self.bipartite and side[j] == si)]
        if nxt + 2 <= self.n_max:
            cands.append(nxt)
        if depth < len(self._prefix):
            forced = self._prefix[depth]
            cands = [forced] if forced in cands else []
        for j in cands:
            self._choices.append(j)
            if j == nxt:
                side[nxt] = 1 - si
                side[nxt + 1] = si
                self._nxt = nxt + 2
            row[i] = j
            row[j] = i
            self._rec(pos + 1)
            row[i] = -1
            row[j] = -1
            self._nxt = nxt
            self._choices.pop()


def _table(search: _Search, n: int) -> list[int]:
    rows = search.rows
    return [rows[c][v] for v in range(n) for c in range(1, search.d + 1)]


def is_minimal(ms: Sequence[Sequence[int]], table: Sequence[int], mode: str) -> bool:
    """Is ``table`` (the code from root 0) minimal over all roots / renamings?"""
    n = len(ms[0])
    for root in range(1, n):
        if compare_rooted(ms, root, table) < 0:
            return False
    if mode == COLOR_FREE:
        d = len(ms) - 1
        for perm in itertools.permutations(range(d + 1)):
            if perm == tuple(range(d + 1)):
                continue
            pm = [None] * (d + 1)
            for c, row in enumerate(ms):
                pm[perm[c]] = row
            for root in range(n):
                if compare_rooted(pm, root, table) < 0:
                    return False
    return True


def split_tasks(d: int, max_order: int, depth: int, *, bipartite: bool = False) -> list[tuple[int, ...]]:
    """Disjoint search-tree prefixes that together cover the whole search."""
    tasks: list[tuple[int, ...]] = []
    s = _Search(d, max_order, bipartite=bipartite)
    s.run(split_depth=depth,
          on_leaf=lambda _s, _n, choices: tasks.append(tuple(choices)),
          on_split=lambda choices: tasks.append(tuple(choices)))
    return tasks


def generate_tables(d: int, max_order: int, *, mode: str = COLOR_FIXED, bipartite: bool = False,
                    prefix: Sequence[int] = (), prune: bool = True,
                    ) -> list[tuple[int, list[int]]]:
    """Canonical tables ``(order, table)`` of all connected graphs of order
    at most ``max_order`` below ``prefix`` in the search tree."""
    if mode not in (COLOR_FIXED, COLOR_FREE):
        raise ValueError(f"unknown canonicalization mode {mode!r}")
    found: list[tuple[int, list[int]]] = []

    def leaf(search: _Search, n: int, choices) -> None:
        if len(choices) < len(prefix):
            return
        table = _table(search, n)
        ms = [row[:n] for row in search.rows]
        if is_minimal(ms, table, mode):
            found.append((n, table))

    s = _Search(d, max_order, bipartite=bipartite, prune=prune)
    s.run(prefix=prefix, on_leaf=leaf)
    return found
