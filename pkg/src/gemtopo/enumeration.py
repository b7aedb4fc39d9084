"""Exhaustive catalogs of colored graphs and what can be read off them."""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Iterable, Iterator

from .graph import (
    COLOR_FIXED,
    COLOR_FREE,
    ColoredGraph,
    _code_bytes,
    canonical_code,
    complement,
    count_residues,
    graph_from_code,
    graph_from_table,
    is_bipartite,
    is_connected,
)
from .halfint import HalfInteger
from .moves import SPHERE, find_dipoles, is_contracted, reduce
from .search import generate_tables, split_tasks
from .topology import (
    YES,
    boundary_label,
    gurau_degree,
    membership_in_Gs,
    regular_genus_min,
    singularity_profile,
)

log = logging.getLogger(__name__)


class IncompleteCatalog(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class EnumerationFilter:
    bipartite_only: bool = False
    non_bipartite_only: bool = False
    contracted_only: bool = False
    no_2_dipoles: bool = False
    require_singular: bool = False
    max_gdegree: HalfInteger | None = None
    membership_Gs_only: bool = False

    def __post_init__(self):
        if self.bipartite_only and self.non_bipartite_only:
            raise ValueError("bipartite_only and non_bipartite_only exclude each other")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["max_gdegree"] = None if self.max_gdegree is None else str(self.max_gdegree)
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "EnumerationFilter":
        obj = dict(obj)
        if obj.get("max_gdegree") is not None:
            obj["max_gdegree"] = HalfInteger.parse(str(obj["max_gdegree"]))
        return cls(**obj)

    def accepts(self, g: ColoredGraph) -> bool:
        bip = is_bipartite(g)
        if self.bipartite_only and not bip:
            return False
        if self.non_bipartite_only and bip:
            return False
        if self.max_gdegree is not None and gurau_degree(g) > self.max_gdegree:
            return False
        if self.require_singular:
            if g.d != 3 and membership_in_Gs(g) != YES:
                return False
            if g.d != 3 or singularity_profile(g).h == 0:
                return False
        if self.membership_Gs_only and membership_in_Gs(g) != YES:
            return False
        if self.no_2_dipoles and find_dipoles(g, r=2, properness=False):
            return False
        if self.contracted_only and is_contracted(g) != YES:
            return False
        return True


NO_FILTER = EnumerationFilter()


@dataclass
class CatalogEntry:
    code: str
    order: int
    d: int
    bipartite: bool
    gdegree: HalfInteger
    rho: HalfInteger
    residue_counts: list[int]
    contracted: str
    certificate: str
    reduced_code: str
    profile: dict | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.order // 2

    @property
    def residue_sum(self) -> int:
        return sum(self.residue_counts)

    @property
    def boundary(self) -> tuple[str, ...]:
        return tuple(self.profile["boundary"]) if self.profile else ()

    @property
    def h(self) -> int:
        return self.profile["h"] if self.profile else 0

    def graph(self) -> ColoredGraph:
        return graph_from_code(bytes.fromhex(self.code))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["gdegree"] = str(self.gdegree)
        out["rho"] = str(self.rho)
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "CatalogEntry":
        obj = dict(obj)
        obj["gdegree"] = HalfInteger.parse(str(obj["gdegree"]))
        obj["rho"] = HalfInteger.parse(str(obj["rho"]))
        return cls(**obj)


def make_entry(g: ColoredGraph, code: bytes | None = None, provenance: dict | None = None,
               *, mode: str = COLOR_FREE) -> CatalogEntry:
    if code is None:
        code = canonical_code(g, mode)
    reduced, cert = reduce(g)
    return CatalogEntry(
        code=code.hex(),
        order=g.order,
        d=g.d,
        bipartite=is_bipartite(g),
        gdegree=gurau_degree(g),
        rho=regular_genus_min(g),
        residue_counts=[count_residues(g, complement(1 << c, g.d)) for c in g.colors],
        contracted=is_contracted(g),
        certificate=cert,
        reduced_code=canonical_code(reduced, COLOR_FREE).hex(),
        profile=singularity_profile(g).to_dict() if g.d == 3 else None,
        provenance=dict(provenance or {}),
    )


@dataclass
class Catalog:
    d: int
    max_order: int
    mode: str
    filter: EnumerationFilter
    entries: list[CatalogEntry]
    complete: bool = True

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def graphs(self) -> list[ColoredGraph]:
        return [e.graph() for e in self.entries]


def _provenance(d, max_order, mode, filt) -> dict:
    return {"d": d, "max_order": max_order, "mode": mode, "filter": filt.to_dict()}


def _run_task(args) -> list[bytes]:
    d, max_order, mode, bipartite, prefix = args
    return [_code_bytes(d, n, t)
            for n, t in generate_tables(d, max_order, mode=mode, bipartite=bipartite,
                                        prefix=prefix)]


def enumerate_codes(d: int, max_order: int, mode: str = COLOR_FREE, *, bipartite: bool = False,
                    threads: int = 1, checkpoint: str | Path | None = None,
                    time_budget: float | None = None, split_depth: int = 4,
                    ) -> tuple[list[bytes], bool]:
    """Sorted canonical codes of all connected graphs up to ``max_order``.

    The search tree is cut into prefixes of ``split_depth`` decisions.  With a
    ``checkpoint`` path, finished prefixes and their codes are saved after
    each one, and an existing file is resumed.  Returns ``(codes, complete)``;
    ``complete`` is False when ``time_budget`` ran out first.
    """
    if max_order < 2 or max_order % 2:
        raise ValueError("max_order must be even and >= 2")
    tasks = split_tasks(d, max_order, split_depth, bipartite=bipartite)
    params = {"d": d, "max_order": max_order, "mode": mode, "bipartite": bipartite,
              "split_depth": split_depth, "tasks": len(tasks)}
    done: set[int] = set()
    codes: set[bytes] = set()
    ckpt = Path(checkpoint) if checkpoint else None
    if ckpt and ckpt.exists():
        state = json.loads(ckpt.read_text())
        if state["params"] != params:
            raise ValueError(f"checkpoint {ckpt} was written for {state['params']}")
        done = set(state["done"])
        codes = {bytes.fromhex(c) for c in state["codes"]}
        log.info("resuming: %d of %d prefixes done", len(done), len(tasks))

    def save():
        if ckpt:
            ckpt.write_text(json.dumps({"params": params, "done": sorted(done),
                                        "codes": sorted(c.hex() for c in codes)}))

    todo = [i for i in range(len(tasks)) if i not in done]
    start = time.monotonic()
    complete = True
    args = [(d, max_order, mode, bipartite, tasks[i]) for i in todo]
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            for i, found in zip(todo, pool.map(_run_task, args, chunksize=4)):
                codes.update(found)
                done.add(i)
    else:
        for k, (i, a) in enumerate(zip(todo, args)):
            if time_budget is not None and time.monotonic() - start > time_budget:
                complete = False
                break
            codes.update(_run_task(a))
            done.add(i)
            if ckpt and (k % 50 == 0):
                save()
            if k % 500 == 0:
                log.info("prefix %d/%d, %d graphs so far", len(done), len(tasks), len(codes))
    save()
    return sorted(codes), complete


def enumerate_catalog(d: int, max_order: int, filt: EnumerationFilter = NO_FILTER,
                      mode: str = COLOR_FREE, **kwargs) -> Catalog:
    """All connected ``(d+1)``-colored graphs of order ``<= max_order`` passing
    ``filt``, one entry per isomorphism class in ``mode``, sorted by code."""
    codes, complete = enumerate_codes(d, max_order, mode, bipartite=filt.bipartite_only, **kwargs)
    prov = _provenance(d, max_order, mode, filt)
    entries = []
    for code in codes:
        g = graph_from_code(code)
        if filt.accepts(g):
            entries.append(make_entry(g, code, prov))
    return Catalog(d, max_order, mode, filt, entries, complete)


def enumerate_graphs(d: int, max_order: int, filt: EnumerationFilter = NO_FILTER,
                     mode: str = COLOR_FREE) -> Iterator[ColoredGraph]:
    """Just the graphs, without computing catalog entries."""
    codes, _ = enumerate_codes(d, max_order, mode, bipartite=filt.bipartite_only)
    for code in codes:
        g = graph_from_code(code)
        if filt is NO_FILTER or filt.accepts(g):
            yield g


# -- catalog files ------------------------------------------------------------

def write_catalog(catalog: Catalog | Iterable[CatalogEntry], fh) -> None:
    for e in catalog:
        fh.write(json.dumps(e.to_dict(), sort_keys=True) + "\n")


def read_catalog(path: str | Path) -> list[CatalogEntry]:
    out = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                out.append(CatalogEntry.from_dict(json.loads(line)))
    return out


# -- classification -----------------------------------------------------------

@dataclass
class ClassificationTable:
    buckets: dict[tuple[str, bool, str], list[str]]
    identity_checked: int = 0
    identity_failures: list[str] = field(default_factory=list)

    def counts(self) -> dict[tuple[str, bool, str], int]:
        return {k: len(v) for k, v in self.buckets.items()}

    def total(self) -> int:
        return sum(len(v) for v in self.buckets.values())

    def rows(self) -> list[dict]:
        return [{"gdegree": k[0], "bipartite": k[1], "boundary": k[2], "count": len(v)}
                for k, v in self.buckets.items()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["gdegree", "bipartite", "boundary", "count"],
                           lineterminator="\n")
        w.writeheader()
        for row in self.rows():
            w.writerow({**row, "bipartite": str(row["bipartite"]).lower()})
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "buckets": [{**row, "codes": self.buckets[(row["gdegree"], row["bipartite"],
                                                        row["boundary"])]}
                        for row in self.rows()],
            "total": self.total(),
            "identity_checked": self.identity_checked,
            "identity_failures": self.identity_failures,
        }


def _degree_key(s: str):
    return HalfInteger.parse(s)


def classify(catalog: Iterable[CatalogEntry]) -> ClassificationTable:
    """Bucket entries by (G-degree, bipartiteness, boundary surfaces).

    For 4-colored contracted entries whose ``î``-residues are all connected,
    also confirm ``ω_G = p - 1 + Σ g^∂``.
    """
    buckets: dict = defaultdict(list)
    checked = 0
    failures = []
    for e in catalog:
        buckets[(str(e.gdegree), e.bipartite, boundary_label(e.boundary))].append(e.code)
        if e.d == 3 and e.contracted == YES and all(x == 1 for x in e.residue_counts):
            checked += 1
            expected = (e.p - 1) + HalfInteger.parse(e.profile["boundary_gdegree"])
            if e.gdegree != expected:
                failures.append(e.code)
    ordered = dict(sorted(buckets.items(),
                          key=lambda kv: (_degree_key(kv[0][0]), not kv[0][1], kv[0][2])))
    return ClassificationTable(ordered, checked, failures)


# -- evidence probes ----------------------------------------------------------

def finiteness_bound(d: int, gdegree, residue_sum: int) -> Fraction:
    """Largest half-order ``p`` allowed for given G-degree and ``Σ g_î``."""
    return 2 * HalfInteger.of(gdegree).as_fraction() / factorial(d - 1) + (residue_sum - d)


def finiteness_check(catalog: Catalog | list[CatalogEntry], S, R: int, *,
                     d: int | None = None, max_order: int | None = None) -> dict:
    entries = list(catalog)
    if isinstance(catalog, Catalog):
        d, max_order = catalog.d, catalog.max_order
    if d is None or max_order is None:
        if not entries:
            raise IncompleteCatalog("need d and max_order for an empty entry list")
        d = d if d is not None else entries[0].d
        max_order = max_order if max_order is not None else entries[0].provenance["max_order"]
    S = HalfInteger.of(S)
    bound = finiteness_bound(d, S, R)
    if max_order // 2 < int(bound):
        raise IncompleteCatalog(f"bound p <= {bound} but catalog stops at p = {max_order // 2}")
    cell = [e for e in entries if e.gdegree == S and e.residue_sum == R]
    by_p = Counter(e.p for e in cell)
    violations = [e.code for e in cell if e.p > bound]
    return {"d": d, "S": str(S), "R": R, "bound": str(bound), "count": len(cell),
            "by_p": dict(sorted(by_p.items())), "violations": violations,
            "ok": not violations}


def finiteness_sweep(entries: Iterable[CatalogEntry]) -> list[str]:
    """Codes of entries with ``p`` above the bound for their own cell."""
    return [e.code for e in entries
            if e.p > finiteness_bound(e.d, e.gdegree, e.residue_sum)]


def conjecture_probe(entries: Iterable[CatalogEntry]) -> list[dict]:
    """Compare minimal G-degree with ``(min p - 1) + Σ g^∂`` per signature.

    Only contracted 4-colored entries with a singular vertex take part.
    Entries are grouped by boundary surfaces, G-degree and the code of the
    graph they reduce to.  Groups with one boundary component fall under a
    proven identity; groups with several are flagged when the G-degree
    undercuts the predicted value.
    """
    groups: dict = defaultdict(list)
    for e in entries:
        if e.d != 3 or e.contracted != YES or e.h == 0:
            continue
        groups[(e.boundary, str(e.gdegree), e.reduced_code)].append(e)
    report = []
    for (bnd, deg, fp), grp in sorted(groups.items(), key=lambda kv: (len(kv[0][0]), kv[0])):
        g_bd = HalfInteger.parse(grp[0].profile["boundary_gdegree"])
        min_deg = min(e.gdegree for e in grp)
        min_p = min(e.p for e in grp)
        predicted = (min_p - 1) + g_bd
        report.append({
            "boundary": list(bnd),
            "h": len(bnd),
            "kind": "proposition" if len(bnd) == 1 else "conjecture",
            "gdegree": str(min_deg),
            "min_p": min_p,
            "predicted": str(predicted),
            "holds": min_deg == predicted,
            "flagged": min_deg < predicted,
            "size": len(grp),
            "fingerprint": fp,
        })
    return report


def free_energy_counts(d: int, p: int, bipartite_only: bool = True,
                       mode: str = "canonical", budget: int = 500_000) -> dict:
    """Connected graphs of order ``2p`` counted per G-degree.

    ``canonical`` counts color-preserving isomorphism classes; ``labeled``
    counts the tuples of matchings for colors ``1..d`` over the fixed color-0
    pairing ``(0 1)(2 3)...``.
    """
    hist: Counter = Counter()
    n = 2 * p
    if mode == "canonical":
        for m, table in generate_tables(d, n, mode=COLOR_FIXED, bipartite=bipartite_only):
            if m == n:
                hist[str(gurau_degree(graph_from_table(d, n, table)))] += 1
    elif mode == "labeled":
        matchings = list(_perfect_matchings(n))
        if len(matchings) ** d > budget:
            raise BudgetExceeded(f"{len(matchings)}^{d} labeled tuples exceed {budget}")
        m0 = [v ^ 1 for v in range(n)]
        for rows in itertools.product(matchings, repeat=d):
            g = ColoredGraph(d, [m0, *rows], check=False)
            if not is_connected(g) or (bipartite_only and not is_bipartite(g)):
                continue
            hist[str(gurau_degree(g))] += 1
    else:
        raise ValueError(f"unknown counting mode {mode!r}")
    buckets = dict(sorted(hist.items(), key=lambda kv: HalfInteger.parse(kv[0])))
    return {"d": d, "p": p, "mode": mode, "bipartite_only": bipartite_only, "buckets": buckets}


def _perfect_matchings(n: int) -> Iterator[tuple[int, ...]]:
    """Fixed-point-free involutions on ``0..n-1``."""
    def rec(row):
        try:
            v = row.index(-1)
        except ValueError:
            yield tuple(row)
            return
        for w in range(v + 1, len(row)):
            if row[w] < 0:
                row[v], row[w] = w, v
                yield from rec(row)
                row[v] = row[w] = -1
    yield from rec([-1] * n)


def certificate_sweep(entries: Iterable[CatalogEntry]) -> list[str]:
    """Codes of closed ``ω_G = 0`` entries that failed to reduce to a sphere."""
    return [e.code for e in entries
            if e.h == 0 and e.gdegree == 0 and e.certificate != SPHERE]
