"""Colored graphs from closed pseudocomplexes via barycentric subdivision.

Every d-simplex of ``K`` splits into ``(d+1)!`` simplices of the first
barycentric subdivision, one per ordering ``π`` of its vertices (the flag
``{π0} ⊂ {π0, π1} ⊂ ...``).  Their dual graph, colored by the dimension of
the face whose barycenter is dropped, represents ``|K|``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .graph import ColoredGraph, GraphError


class NotClosed(GraphError):
    pass


class NotPure(GraphError):
    pass


@dataclass(frozen=True)
class Gluing:
    """Face of simplex ``i`` opposite its local vertex ``a`` glued to the face
    of simplex ``j`` opposite ``b``; ``perm[k]`` is the local vertex of ``j``
    matched with local vertex ``k`` of ``i`` (entry ``a`` is ignored)."""

    i: int
    a: int
    j: int
    b: int
    perm: tuple[int, ...]


@dataclass
class Pseudocomplex:
    """d-simplices as vertex tuples.

    Without ``gluings``, faces are identified when they share the same vertex
    set, which describes a simplicial complex.  Explicit gluings allow two
    simplices to meet along several faces.
    """

    simplices: list[tuple]
    gluings: list[Gluing] | None = None

    @property
    def d(self) -> int:
        return len(self.simplices[0]) - 1

    def _check_pure(self) -> None:
        if not self.simplices:
            raise NotPure("empty complex")
        k = len(self.simplices[0])
        for s in self.simplices:
            if len(s) != k:
                raise NotPure(f"simplex {s} has {len(s)} vertices, expected {k}")
            if len(set(s)) != k:
                raise NotPure(f"simplex {s} repeats a vertex")
        if k < 2:
            raise NotPure("need simplices of dimension >= 1")

    def face_pairs(self) -> dict[tuple[int, int], tuple[int, int, tuple[int, ...]]]:
        """``(i, a) -> (j, b, perm)`` for every glued facet, in both directions."""
        self._check_pure()
        d = self.d
        out = {}
        if self.gluings is None:
            faces = defaultdict(list)
            for i, s in enumerate(self.simplices):
                for a in range(d + 1):
                    faces[frozenset(s[:a] + s[a + 1:])].append((i, a))
            for key, owners in faces.items():
                if len(owners) != 2:
                    what = "boundary" if len(owners) == 1 else "branching"
                    raise NotClosed(f"{what} facet {sorted(key)} lies in {len(owners)} simplices")
                (i, a), (j, b) = owners
                si, sj = self.simplices[i], self.simplices[j]
                perm = tuple(b if k == a else sj.index(si[k]) for k in range(d + 1))
                out[(i, a)] = (j, b, perm)
                out[(j, b)] = (i, a, _invert(perm, a, b))
        else:
            for gl in self.gluings:
                for key, val in (((gl.i, gl.a), (gl.j, gl.b, tuple(gl.perm))),
                                 ((gl.j, gl.b), (gl.i, gl.a, _invert(gl.perm, gl.a, gl.b)))):
                    if key in out and out[key] != val:
                        raise NotClosed(f"facet {key} is glued twice")
                    out[key] = val
            missing = [(i, a) for i in range(len(self.simplices)) for a in range(d + 1)
                       if (i, a) not in out]
            if missing:
                raise NotClosed(f"unglued facets: {missing[:5]}")
        return out


def _invert(perm: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for k, x in enumerate(perm):
        if k != a:
            inv[x] = k
    inv[b] = a
    return tuple(inv)


def from_triangulation(k: Pseudocomplex) -> ColoredGraph:
    """Dual colored graph of the first barycentric subdivision of ``k``.

    The order is ``(d+1)!`` times the number of simplices; the vertex for
    simplex ``s`` and flag ordering ``π`` (local vertex indices) is
    ``s * (d+1)! + rank(π)`` in lexicographic rank.  A disconnected complex
    gives a disconnected graph.
    """
    pairs = k.face_pairs()
    d = k.d
    flags = list(itertools.permutations(range(d + 1)))
    rank = {f: i for i, f in enumerate(flags)}
    block = factorial(d + 1)
    n = block * len(k.simplices)
    rows = [[0] * n for _ in range(d + 1)]
    for s in range(len(k.simplices)):
        for f, pi in enumerate(flags):
            v = s * block + f
            for c in range(d):
                other = list(pi)
                other[c], other[c + 1] = other[c + 1], other[c]
                rows[c][v] = s * block + rank[tuple(other)]
            j, b, perm = pairs[(s, pi[d])]
            other = tuple(perm[x] for x in pi[:d]) + (b,)
            rows[d][v] = j * block + rank[other]
    return ColoredGraph(d, rows)


def simplex_boundary(d: int) -> Pseudocomplex:
    """Boundary of the ``(d+1)``-simplex: a closed d-sphere with ``d+2`` facets."""
    verts = range(d + 2)
    return Pseudocomplex([tuple(x for x in verts if x != skip) for skip in verts])


def cone_boundary(k: Pseudocomplex) -> Pseudocomplex:
    """Cap off each boundary component of a simplicial complex with a cone.

    Only complexes described by vertex sets are supported.
    """
    if k.gluings is not None:
        raise ValueError("capping needs faces identified by vertex sets")
    k._check_pure()
    d = k.d
    count = defaultdict(int)
    for s in k.simplices:
        for a in range(d + 1):
            count[frozenset(s[:a] + s[a + 1:])] += 1
    boundary = [f for f, c in count.items() if c == 1]
    # boundary facets sharing a ridge belong to the same component
    parent = {f: f for f in boundary}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ridges = defaultdict(list)
    for f in boundary:
        for v in f:
            ridges[f - {v}].append(f)
    for owners in ridges.values():
        for f in owners[1:]:
            parent[find(f)] = find(owners[0])
    used = {v for s in k.simplices for v in s}
    apex_base = max(used) + 1 if all(isinstance(v, int) for v in used) else None
    apexes = {}
    out = list(k.simplices)
    for f in sorted(boundary, key=lambda f: sorted(map(str, f))):
        root = find(f)
        if root not in apexes:
            apexes[root] = (apex_base + len(apexes)) if apex_base is not None else ("apex", len(apexes))
        out.append(tuple(sorted(f, key=str)) + (apexes[root],))
    return Pseudocomplex(out)
