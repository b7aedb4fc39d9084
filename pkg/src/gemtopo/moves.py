"""Dipole moves: detection, elimination, insertion and greedy reduction.

An r-dipole is a pair of vertices joined by exactly the ``r`` edges of a
color set ``R`` (``1 <= r <= d``) that lie in different components of the
subgraph spanned by the remaining colors.  Sphere recognition beyond
dimension two is only certified by reducing to the order-two graph, so
properness and contractedness are tri-valued.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from math import factorial

from .graph import (
    ColoredGraph,
    GraphError,
    canonical_code,
    complement,
    component_labels,
    is_bipartite,
    is_connected,
    residues,
)
from .halfint import HalfInteger
from .topology import (
    NO,
    UNKNOWN,
    YES,
    gurau_degree,
    membership_in_Gs,
    surface_type,
    three_residues_spherical,
)

log = logging.getLogger(__name__)

PROPER, IMPROPER = "proper", "improper"
SPHERE, IRREDUCIBLE = "sphere", "irreducible-local"

# set GEMTOPO_CHECK=1 to verify the degree law on every elimination
CHECK_INVARIANTS = os.environ.get("GEMTOPO_CHECK", "") not in ("", "0")


class InvalidDipole(GraphError):
    pass


class BadAttachment(GraphError):
    pass


@dataclass(frozen=True, order=True)
class Dipole:
    u: int
    v: int
    colors: tuple[int, ...]
    properness: str = field(default=UNKNOWN, compare=False)

    @property
    def r(self) -> int:
        return len(self.colors)

    @property
    def mask(self) -> int:
        return sum(1 << c for c in self.colors)


def degree_drop(d: int, r: int) -> HalfInteger:
    """G-degree lost by eliminating an r-dipole: ``(d-1)!/2 (r-1)(d-r)``."""
    return HalfInteger(factorial(d - 1) * (r - 1) * (d - r))


def joining_colors(g: ColoredGraph, u: int, v: int) -> tuple[int, ...]:
    return tuple(c for c in g.colors if g.matchings[c][u] == v)


def dipole_at(g: ColoredGraph, u: int, v: int) -> Dipole | None:
    """The dipole on ``{u, v}`` if the pair is one (properness not evaluated)."""
    if u == v:
        return None
    cols = joining_colors(g, u, v)
    if not 1 <= len(cols) <= g.d:
        return None
    rest = complement(sum(1 << c for c in cols), g.d)
    labels, _ = component_labels(g, rest)
    if labels[u] == labels[v]:
        return None
    u, v = min(u, v), max(u, v)
    return Dipole(u, v, cols)


def _check_dipole(g: ColoredGraph, dip: Dipole) -> None:
    found = dipole_at(g, dip.u, dip.v)
    if found is None or found.colors != tuple(dip.colors):
        raise InvalidDipole(f"({dip.u}, {dip.v}; {list(dip.colors)}) is not a dipole")


def find_dipoles(g: ColoredGraph, r: int | None = None, *, properness: bool = True) -> list[Dipole]:
    """All dipoles of ``g``, sorted by ``(u, v, colors)``."""
    out = []
    seen = set()
    for u in range(g.order):
        for c in g.colors:
            v = g.matchings[c][u]
            if v < u or (u, v) in seen:
                continue
            seen.add((u, v))
            dip = dipole_at(g, u, v)
            if dip is None or (r is not None and dip.r != r):
                continue
            if properness:
                dip = Dipole(dip.u, dip.v, dip.colors, is_proper(g, dip))
            out.append(dip)
    out.sort()
    return out


# -- sphere recognition -------------------------------------------------------

def sphere_status(g: ColoredGraph) -> bool | None:
    """True if ``g`` certainly represents a sphere, False if certainly not,
    None when undecided."""
    d = g.d
    if d <= 1:
        return True
    if d == 2:
        return surface_type(g).is_sphere
    if not is_bipartite(g):
        return False
    if not three_residues_spherical(g):
        return False
    graph, cert = reduce(g)
    return True if cert == SPHERE else None


def is_proper(g: ColoredGraph, dip: Dipole, *, in_Gs: bool | None = None) -> str:
    """``proper``, ``improper`` or ``unknown``.

    Proper when one of the two complementary residues through the dipole is
    a sphere.  ``improper`` is only reported when both are surfaces other
    than the sphere.
    """
    _check_dipole(g, dip)
    d, r = g.d, dip.r
    k = d - r
    if k <= 1:
        return PROPER
    if r > 1:
        if in_Gs is None:
            in_Gs = membership_in_Gs(g) == YES if d <= 4 else None
        if in_Gs:
            return PROPER
    rest = complement(dip.mask, d)
    found = {}
    for res in residues(g, rest):
        if dip.u in res.vertices:
            found["u"] = res.graph
        if dip.v in res.vertices:
            found["v"] = res.graph
    statuses = [sphere_status(found["u"]), sphere_status(found["v"])]
    if True in statuses:
        return PROPER
    if k == 2 and statuses == [False, False]:
        return IMPROPER
    return UNKNOWN


# -- elimination and insertion ------------------------------------------------

def _eliminate_raw(g: ColoredGraph, u: int, v: int, cols: tuple[int, ...]) -> ColoredGraph:
    n = g.order
    rows = [list(row) for row in g.matchings]
    for c in g.colors:
        if c in cols:
            continue
        x, y = rows[c][u], rows[c][v]
        rows[c][x] = y
        rows[c][y] = x
    keep = [w for w in range(n) if w != u and w != v]
    new_id = {w: i for i, w in enumerate(keep)}
    return ColoredGraph(g.d, [[new_id[row[w]] for w in keep] for row in rows], check=False)


def eliminate(g: ColoredGraph, dip: Dipole) -> ColoredGraph:
    """Delete the dipole and weld the hanging edges color by color.

    The surviving vertices keep their relative order.
    """
    _check_dipole(g, dip)
    out = _eliminate_raw(g, dip.u, dip.v, tuple(dip.colors))
    if CHECK_INVARIANTS:
        out._validate()
        assert is_connected(out)
        assert gurau_degree(g) == degree_drop(g.d, dip.r) + gurau_degree(out)
    return out


def induced_attachments(g: ColoredGraph, dip: Dipole) -> dict[int, tuple[int, int]]:
    """Attachments that re-insert ``dip`` into ``eliminate(g, dip)``."""
    n = g.order
    keep = [w for w in range(n) if w != dip.u and w != dip.v]
    new_id = {w: i for i, w in enumerate(keep)}
    return {c: (new_id[g.matchings[c][dip.u]], new_id[g.matchings[c][dip.v]])
            for c in g.colors if c not in dip.colors}


def add_dipole(g: ColoredGraph, colors, attachments: dict[int, tuple[int, int]]) -> ColoredGraph:
    """Insert two new vertices ``u = order`` and ``v = order + 1``.

    For every color ``c`` outside ``colors`` the c-edge ``x_c y_c`` given in
    ``attachments`` is replaced by ``x_c u`` and ``v y_c``; ``u`` and ``v`` are
    joined by the edges of ``colors``.  Whether the new pair is a genuine
    dipole is not guaranteed; see :func:`dipole_at`.
    """
    cols = tuple(sorted(set(colors)))
    if not cols or len(cols) > g.d or any(not 0 <= c <= g.d for c in cols):
        raise BadAttachment(f"dipole colors {list(cols)} must be a non-empty proper subset")
    need = [c for c in g.colors if c not in cols]
    if sorted(attachments) != need:
        raise BadAttachment(f"need one attachment edge for each of the colors {need}")
    n = g.order
    u, v = n, n + 1
    rows = [list(row) + [0, 0] for row in g.matchings]
    for c in cols:
        rows[c][u], rows[c][v] = v, u
    for c in need:
        x, y = attachments[c]
        if not (0 <= x < n and 0 <= y < n) or g.matchings[c][x] != y:
            raise BadAttachment(f"({x}, {y}) is not an edge of color {c}")
        rows[c][x], rows[c][u] = u, x
        rows[c][y], rows[c][v] = v, y
    return ColoredGraph(g.d, rows, check=False)


# -- contraction and reduction ------------------------------------------------

def is_contracted(g: ColoredGraph) -> str:
    """``yes`` when no ``ĉ``-residue graph is disconnected with a sphere component."""
    verdict = YES
    for c in g.colors:
        comps = residues(g, complement(1 << c, g.d))
        if len(comps) == 1:
            continue
        for res in comps:
            s = sphere_status(res.graph)
            if s is True:
                return NO
            if s is None:
                verdict = UNKNOWN
    return verdict


def contract(g: ColoredGraph) -> ColoredGraph:
    """Eliminate proper 1-dipoles until the graph is contracted."""
    while True:
        dips = [dp for dp in find_dipoles(g, r=1) if dp.properness == PROPER]
        if not dips:
            return g
        g = eliminate(g, dips[0])


@dataclass
class Reduction:
    graph: ColoredGraph
    certificate: str
    moves: list[dict] = field(default_factory=list)


def _best_move(g: ColoredGraph, in_Gs: bool | None):
    best = None
    best_key = None
    for u in range(g.order):
        for c in g.colors:
            v = g.matchings[c][u]
            if v < u:
                continue
            dip = dipole_at(g, u, v)
            if dip is None or (dip.u, dip.v) != (u, v) or dip.colors[0] != c:
                continue
            key = (-(dip.r - 1) * (g.d - dip.r), dip.u, dip.v, dip.colors)
            if best_key is not None and key >= best_key:
                continue
            if is_proper(g, dip, in_Gs=in_Gs) == PROPER:
                best, best_key = dip, key
    return best


def reduce_moves(g: ColoredGraph) -> Reduction:
    """Greedy reduction: repeatedly eliminate the proper dipole with the
    largest degree drop, ties broken by ``(u, v, colors)``."""
    moves = []
    in_Gs = membership_in_Gs(g) == YES if g.d <= 4 else None
    while g.order > 2:
        dip = _best_move(g, in_Gs)
        if dip is None:
            break
        moves.append({"op": "eliminate", "u": dip.u, "v": dip.v, "colors": list(dip.colors),
                      "r": dip.r, "dG_delta": str(-degree_drop(g.d, dip.r))})
        g = _eliminate_raw(g, dip.u, dip.v, dip.colors)
    return Reduction(g, SPHERE if g.order == 2 else IRREDUCIBLE, moves)


def reduce(g: ColoredGraph, *, exhaustive: bool = False):
    """Reduce ``g`` by proper dipole eliminations; returns (graph, certificate).

    With ``exhaustive`` and order at most 8, every elimination sequence is
    tried when the greedy one gets stuck.
    """
    res = reduce_moves(g)
    if res.certificate != SPHERE and exhaustive and g.order <= 8:
        if _exhaustive_reaches_sphere(g):
            return _order_two(g.d), SPHERE
    return res.graph, res.certificate


def _order_two(d: int) -> ColoredGraph:
    return ColoredGraph(d, [[1, 0]] * (d + 1), check=False)


def _exhaustive_reaches_sphere(g: ColoredGraph) -> bool:
    seen = set()
    stack = [g]
    while stack:
        h = stack.pop()
        if h.order == 2:
            return True
        code = canonical_code(h)
        if code in seen:
            continue
        seen.add(code)
        for dip in find_dipoles(h):
            if dip.properness == PROPER:
                stack.append(_eliminate_raw(h, dip.u, dip.v, dip.colors))
    return False


def dipole_to_dict(dip: Dipole) -> dict:
    return {"u": dip.u, "v": dip.v, "colors": list(dip.colors), "r": dip.r,
            "properness": dip.properness}


__all__ = [
    "Dipole", "InvalidDipole", "BadAttachment", "PROPER", "IMPROPER", "SPHERE", "IRREDUCIBLE",
    "degree_drop", "dipole_at", "find_dipoles", "is_proper", "eliminate", "add_dipole",
    "induced_attachments", "is_contracted", "contract", "reduce", "reduce_moves",
    "sphere_status",
]
