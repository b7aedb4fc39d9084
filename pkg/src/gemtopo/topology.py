"""Regular genera, Gurau degree, Euler characteristic and singularities.

All quantities are exact; genera and degrees are :class:`HalfInteger`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .graph import (
    ColoredGraph,
    Disconnected,
    complement,
    count_residues,
    is_bipartite,
    is_connected,
    residues,
)
from .halfint import HalfInteger

YES, NO, UNKNOWN = "yes", "no", "unknown"


class WrongDimension(ValueError):
    pass


class IntegralityViolation(ArithmeticError):
    """A quantity that must be an integer came out as a proper half-integer."""


def _require_connected(g: ColoredGraph) -> None:
    if not is_connected(g):
        raise Disconnected("operation needs a connected graph")


# -- cyclic permutations ------------------------------------------------------

def canonical_cyclic(eps: Sequence[int]) -> tuple[int, ...]:
    """Representative of ``eps`` up to rotation and reversal: starts at its
    smallest color, second entry smaller than the last."""
    eps = list(eps)
    k = eps.index(min(eps))
    eps = eps[k:] + eps[:k]
    if len(eps) > 2 and eps[1] > eps[-1]:
        eps = [eps[0]] + eps[:0:-1]
    return tuple(eps)


def cyclic_permutations(d: int) -> list[tuple[int, ...]]:
    """The ``d!/2`` cyclic orderings of ``0..d`` up to inverse (one for d=1)."""
    if d == 0:
        return [(0,)]
    if d == 1:
        return [(0, 1)]
    out = []
    for tail in itertools.permutations(range(1, d + 1)):
        if tail[0] < tail[-1]:
            out.append((0,) + tail)
    return out


# -- genera -------------------------------------------------------------------

def pair_residue_counts(g: ColoredGraph) -> dict[tuple[int, int], int]:
    """``g_{ij}`` for every pair of colors ``i < j``."""
    return {(i, j): count_residues(g, (1 << i) | (1 << j))
            for i, j in itertools.combinations(g.colors, 2)}


def _genus_twice(d: int, p: int, eps: Sequence[int], pairs: dict) -> int:
    total = 0
    for j in range(len(eps)):
        a, b = eps[j], eps[(j + 1) % len(eps)]
        total += pairs[(a, b) if a < b else (b, a)]
    return 2 - (1 - d) * p - total


def regular_genus(g: ColoredGraph, eps: Sequence[int]) -> HalfInteger:
    """Genus (half the genus if non-orientable) of the regular embedding for ``eps``."""
    _require_connected(g)
    if sorted(eps) != list(g.colors):
        raise ValueError(f"{tuple(eps)} is not an ordering of the colors 0..{g.d}")
    if g.d == 0:
        return HalfInteger(0)
    return HalfInteger(_genus_twice(g.d, g.p, eps, pair_residue_counts(g)))


def all_regular_genera(g: ColoredGraph) -> dict[tuple[int, ...], HalfInteger]:
    _require_connected(g)
    if g.d == 0:
        return {(0,): HalfInteger(0)}
    pairs = pair_residue_counts(g)
    return {eps: HalfInteger(_genus_twice(g.d, g.p, eps, pairs))
            for eps in cyclic_permutations(g.d)}


def regular_genus_min(g: ColoredGraph) -> HalfInteger:
    return min(all_regular_genera(g).values())


def gurau_degree(g: ColoredGraph) -> HalfInteger:
    """Sum of the regular genera over all cyclic permutations up to inverse.

    For ``d >= 3`` the result is an integer; anything else raises
    :class:`IntegralityViolation`.
    """
    _require_connected(g)
    if g.d <= 1:
        return HalfInteger(0)
    pairs = pair_residue_counts(g)
    twice = sum(_genus_twice(g.d, g.p, eps, pairs) for eps in cyclic_permutations(g.d))
    if g.d >= 3 and twice % 2:
        raise IntegralityViolation(f"G-degree {twice}/2 of a {g.d + 1}-colored graph")
    return HalfInteger(twice)


def _degree_recursive_twice(g: ColoredGraph) -> int:
    d = g.d
    if d <= 1:
        return 0
    if d == 2:
        return _genus_twice(2, g.p, (0, 1, 2), pair_residue_counts(g))
    total_res = 0
    sub = 0
    for c in g.colors:
        comps = residues(g, complement(1 << c, d))
        total_res += len(comps)
        for r in comps:
            sub += _degree_recursive_twice(r.graph)
    return factorial(d - 1) * (g.p + d - total_res) + sub


def gurau_degree_recursive(g: ColoredGraph) -> HalfInteger:
    """G-degree through the residue recursion

    ``ω(Γ) = (d-1)!/2 (p + d - Σ_i g_î) + Σ_i ω(Γ_î)``

    where the last sum runs over every connected component of every
    ``î``-residue graph.
    """
    _require_connected(g)
    return HalfInteger(_degree_recursive_twice(g))


def euler_characteristic(g: ColoredGraph) -> int:
    """Euler characteristic of the represented pseudocomplex.

    The ``h``-residues are the ``(d-h)``-simplices, with ``g_∅ = 2p``.
    """
    d = g.d
    chi = 0
    for h in range(d + 1):
        sign = -1 if (d - h) % 2 else 1
        for cols in itertools.combinations(range(d + 1), h):
            mask = sum(1 << c for c in cols)
            chi += sign * (g.order if h == 0 else count_residues(g, mask))
    return chi


# -- surfaces -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SurfaceType:
    """Closed surface: orientable genus, or number of crosscaps."""

    orientable: bool
    genus: int

    @property
    def gd_contribution(self) -> HalfInteger:
        return HalfInteger(2 * self.genus if self.orientable else self.genus)

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.genus == 0

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    @property
    def name(self) -> str:
        if self.orientable:
            return {0: "S2", 1: "T2"}.get(self.genus, f"Sigma{self.genus}")
        return {1: "RP2", 2: "K2"}.get(self.genus, f"N{self.genus}")

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, name: str) -> "SurfaceType":
        fixed = {"S2": (True, 0), "T2": (True, 1), "RP2": (False, 1), "K2": (False, 2)}
        if name in fixed:
            return cls(*fixed[name])
        if name.startswith("Sigma"):
            return cls(True, int(name[5:]))
        if name.startswith("N"):
            return cls(False, int(name[1:]))
        raise ValueError(f"unknown surface name {name!r}")


def surface_type(g: ColoredGraph) -> SurfaceType:
    if g.d != 2:
        raise WrongDimension(f"surface_type needs a 3-colored graph, got d={g.d}")
    _require_connected(g)
    chi = sum(pair_residue_counts(g).values()) - g.p
    if is_bipartite(g):
        return SurfaceType(True, (2 - chi) // 2)
    return SurfaceType(False, 2 - chi)


@dataclass(frozen=True)
class SingularityProfile:
    """Surfaces represented by the ``ĉ``-residues of a 4-colored graph, per color."""

    per_color: tuple[tuple[SurfaceType, ...], ...]

    @property
    def singular(self) -> list[SurfaceType]:
        return [s for row in self.per_color for s in row if not s.is_sphere]

    @property
    def h(self) -> int:
        return len(self.singular)

    @property
    def m(self) -> int:
        return sum(1 for row in self.per_color if any(not s.is_sphere for s in row))

    @property
    def singular_colors(self) -> list[int]:
        return [c for c, row in enumerate(self.per_color) if any(not s.is_sphere for s in row)]

    @property
    def boundary(self) -> tuple[SurfaceType, ...]:
        return tuple(sorted(self.singular))

    @property
    def boundary_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.boundary)

    @property
    def boundary_gd(self) -> HalfInteger:
        return sum((s.gd_contribution for s in self.singular), HalfInteger(0))

    @property
    def closed(self) -> bool:
        return self.h == 0

    def residue_counts(self) -> list[int]:
        return [len(row) for row in self.per_color]

    def to_dict(self) -> dict:
        return {
            "residues": [[s.name for s in row] for row in self.per_color],
            "h": self.h,
            "m": self.m,
            "boundary": list(self.boundary_names),
            "boundary_gdegree": str(self.boundary_gd),
        }


def boundary_label(names: Sequence[str]) -> str:
    return "+".join(names) if names else "-"


def singularity_profile(g: ColoredGraph) -> SingularityProfile:
    if g.d != 3:
        raise WrongDimension(f"singularity profiles need a 4-colored graph, got d={g.d}")
    _require_connected(g)
    rows = []
    for c in g.colors:
        rows.append(tuple(surface_type(r.graph) for r in residues(g, complement(1 << c, 3))))
    return SingularityProfile(tuple(rows))


def orientable(g: ColoredGraph) -> bool:
    return is_bipartite(g)


def three_residues_spherical(g: ColoredGraph) -> bool:
    """Whether every 3-colored residue represents the 2-sphere."""
    for cols in itertools.combinations(g.colors, 3):
        mask = sum(1 << c for c in cols)
        for r in residues(g, mask):
            if not surface_type(r.graph).is_sphere:
                return False
    return True


def membership_in_Gs(g: ColoredGraph) -> str:
    """Does ``g`` represent a singular manifold?  ``yes``, ``no`` or ``unknown``.

    Every graph with ``d <= 3`` qualifies.  From ``d = 4`` on, the 3-residues
    are links of simplices of positive dimension and must all be spheres; at
    ``d = 4`` that is also sufficient.  Above that, ``yes`` needs every
    ``d``-residue to reduce to the order-two graph.
    """
    _require_connected(g)
    if g.d <= 3:
        return YES
    if not three_residues_spherical(g):
        return NO
    if g.d == 4:
        return YES
    from .moves import sphere_status

    for c in g.colors:
        for r in residues(g, complement(1 << c, g.d)):
            if sphere_status(r.graph) is not True:
                return UNKNOWN
    return YES


def integrality_conditions(g: ColoredGraph, eps: Sequence[int]) -> bool:
    """Check the sufficient conditions for ``ρ_ε`` to be an integer.

    Returns True when some position ``i`` of ``eps`` has (a) every
    ``{ε_{i-1}, ε_i, ε_{i+1}}``-residue bipartite and (b) every
    ``ε̂_i``-residue bipartite or of integer regular genus for the induced
    ordering.  In that case the integrality of ``ρ_ε(g)`` is asserted.
    Bipartite graphs are trivially integer and return True.
    """
    _require_connected(g)
    if is_bipartite(g):
        return True
    d = g.d
    k = len(eps)
    for i in range(k):
        a, b, c = eps[(i - 1) % k], eps[i], eps[(i + 1) % k]
        if not is_bipartite(g, (1 << a) | (1 << b) | (1 << c)):
            continue
        ok = True
        for r in residues(g, complement(1 << b, d)):
            if is_bipartite(r.graph):
                continue
            local = {col: j for j, col in enumerate(r.colors)}
            induced = [local[x] for x in eps if x != b]
            if not regular_genus(r.graph, induced).is_integer():
                ok = False
                break
        if ok:
            rho = regular_genus(g, eps)
            if not rho.is_integer():
                raise IntegralityViolation(
                    f"integrality conditions hold at position {i} but rho_eps = {rho}")
            return True
    return False


def invariant_report(g: ColoredGraph) -> dict:
    """Everything computable about a connected graph, JSON-ready."""
    genera = all_regular_genera(g)
    out = {
        "order": g.order,
        "d": g.d,
        "bipartite": is_bipartite(g),
        "genera": {"".join(map(str, e)) if g.d < 10 else ",".join(map(str, e)): str(v)
                   for e, v in genera.items()},
        "regular_genus": str(min(genera.values())),
        "gdegree": str(gurau_degree(g)),
        "euler": euler_characteristic(g),
        "profile": None,
    }
    if g.d == 2:
        out["surface"] = surface_type(g).name
    if g.d == 3:
        out["profile"] = singularity_profile(g).to_dict()
    out["residue_counts"] = [count_residues(g, complement(1 << c, g.d)) for c in g.colors]
    out["membership_Gs"] = membership_in_Gs(g)
    return out


__all__ = [
    "YES", "NO", "UNKNOWN", "WrongDimension", "IntegralityViolation",
    "canonical_cyclic", "cyclic_permutations", "regular_genus", "all_regular_genera",
    "regular_genus_min", "gurau_degree", "gurau_degree_recursive", "euler_characteristic",
    "SurfaceType", "surface_type", "SingularityProfile", "singularity_profile",
    "membership_in_Gs", "orientable", "integrality_conditions", "invariant_report",
]
