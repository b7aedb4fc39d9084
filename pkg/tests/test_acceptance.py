"""Acceptance suite.  Each test prints one ``PASS``/``FAIL`` line, collected
again in the terminal summary (see conftest.py)."""

import itertools
import os
import random
import time
from collections import Counter

import pytest

from gemtopo.enumeration import EnumerationFilter, enumerate_catalog, enumerate_codes, finiteness_sweep
from gemtopo.graph import (
    COLOR_FIXED, COLOR_FREE, canonical_code, colorset, graph_from_code, is_bipartite,
    order_two_graph, residues, torus_gem,
)
from gemtopo.halfint import HalfInteger
from gemtopo.moves import SPHERE, degree_drop, eliminate, find_dipoles, is_contracted, reduce
from gemtopo.tensor import expansion_histogram, quartic_invariant
from gemtopo.topology import (
    YES, all_regular_genera, euler_characteristic, gurau_degree, gurau_degree_recursive,
    integrality_conditions, membership_in_Gs, surface_type,
)

from oracles import all_labeled_graphs, brute_canonical, isomorphic, plant_dipole, random_graph

RESULTS = []


def report(num, title, ok, detail):
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def all_graphs(d, max_order, mode=COLOR_FIXED):
    return [graph_from_code(c) for c in enumerate_codes(d, max_order, mode)[0]]


def test_01_fixtures():
    t = time.monotonic()
    g = order_two_graph(3)
    ok = (set(all_regular_genera(g).values()) == {HalfInteger(0)}
          and gurau_degree(g) == 0 and euler_characteristic(g) == 0
          and is_contracted(g) == YES and reduce(g)[1] == SPHERE)
    tg = torus_gem()
    ok = ok and (surface_type(tg).genus == 1 and surface_type(tg).orientable
                 and euler_characteristic(tg) == 0 and gurau_degree(tg) == 1)
    elapsed = time.monotonic() - t
    report(1, "order-2 and torus fixtures exact", ok and elapsed < 1, f"{elapsed:.3f}s")


def test_02_dipole_law():
    t = time.monotonic()
    rng = random.Random(20261019)
    checked = 0
    bad = 0
    by_r = Counter()
    while checked < 600:
        d = rng.choice([3, 4])
        g = random_graph(rng, d, 2 * rng.randint(1, 5))
        planted = plant_dipole(rng, g, rng.randint(1, d))
        if planted is None:
            continue
        h = planted[0]
        w = gurau_degree(h)
        for dip in find_dipoles(h, properness=False):
            drop = w - gurau_degree(eliminate(h, dip))
            bad += drop != degree_drop(d, dip.r)
            checked += 1
            by_r[(d, dip.r)] += 1
    elapsed = time.monotonic() - t
    spread = ", ".join(f"d{d}r{r}:{n}" for (d, r), n in sorted(by_r.items()))
    report(2, "degree change under dipole elimination", bad == 0 and elapsed < 30,
           f"{checked} eliminations, {bad} mismatches, {elapsed:.1f}s; {spread}")


def test_03_recursive_formula():
    counts = {}
    bad = 0
    for d, n in [(3, 8), (4, 6)]:
        graphs = all_graphs(d, n)
        counts[(d, n)] = len(graphs)
        bad += sum(gurau_degree(g) != gurau_degree_recursive(g) for g in graphs)
    report(3, "direct and recursive G-degree agree", bad == 0,
           f"{counts[(3, 8)]} graphs d=3 order<=8, {counts[(4, 6)]} graphs d=4 order<=6, "
           f"{bad} mismatches")


def test_04_integrality():
    graphs = all_graphs(3, 8)
    non_integer = sum(not gurau_degree(g).is_integer() for g in graphs)
    certified = 0
    bad = 0
    for d, n in [(3, 8), (4, 6)]:
        for g in (graphs if d == 3 else all_graphs(d, n)):
            if is_bipartite(g):
                continue
            for eps, rho in all_regular_genera(g).items():
                if integrality_conditions(g, eps):
                    certified += 1
                    bad += not rho.is_integer()
    report(4, "integer G-degree and certified integer genera", non_integer == 0 and bad == 0,
           f"{len(graphs)} d=3 graphs, {certified} certified (graph, permutation) pairs, "
           f"{non_integer + bad} violations")


def test_05_catalog_slice():
    t = time.monotonic()
    filt = EnumerationFilter(bipartite_only=True, contracted_only=True, no_2_dipoles=True,
                             require_singular=True)
    cat = enumerate_catalog(3, 8, filt)
    small = [e for e in cat if e.order <= 4]
    ok = not small
    seen = Counter()
    for e in cat:
        if e.order >= 6 and e.gdegree <= 5:
            seen[(int(e.gdegree), e.boundary)] += 1
            ok = ok and int(e.gdegree) in (3, 4, 5) and e.boundary in (("T2",), ("T2", "T2"))
        if e.gdegree == 3:
            ok = ok and e.boundary == ("T2",)
    elapsed = time.monotonic() - t
    summary = ", ".join(f"w{w}:{'+'.join(b)}x{n}" for (w, b), n in sorted(seen.items()))
    report(5, "bipartite contracted singular slice", ok and elapsed < 300,
           f"{len(small)} at order<=4; {summary}; {elapsed:.1f}s")


def test_06_prop_sphere_or_degree_three(catalog_d3_8):
    def three_residues_bipartite(g):
        return all(is_bipartite(r.graph) for cols in itertools.combinations(range(4), 3)
                   for r in residues(g, colorset(cols)))

    hits = [e for e in catalog_d3_8 if e.gdegree < 3 and three_residues_bipartite(e.graph())]
    failing = [e.code for e in hits if e.certificate != SPHERE]
    report(6, "all 3-residues bipartite and degree < 3 reduce to order 2", not failing,
           f"{len(hits)} such graphs, {len(failing)} not reduced")


def test_07_non_bipartite_floor():
    cat = enumerate_catalog(3, 6, EnumerationFilter(non_bipartite_only=True))
    found = [e for e in cat if e.gdegree == 2 and e.boundary == ("RP2", "RP2")]
    ok = bool(found)
    for e in found:
        g = e.graph()
        ok = ok and any(not is_bipartite(r.graph)
                        for cols in itertools.combinations(range(4), 3)
                        for r in residues(g, colorset(cols)))
    orders = sorted(e.order for e in found)
    report(7, "non-bipartite degree-2 graphs with two RP2 boundaries", ok,
           f"{len(found)} found at orders {orders}, each with a non-bipartite 3-residue")


def test_08_non_bipartite_bound(catalog_d4_6):
    t = time.monotonic()
    threads = min(4, os.cpu_count() or 1)
    order8 = map(graph_from_code, enumerate_codes(4, 8, COLOR_FREE, threads=threads)[0])
    qualifying = {}
    for n, graphs in ((6, [e.graph() for e in catalog_d4_6]), (8, order8)):
        qualifying[n] = [int(gurau_degree(g)) for g in graphs
                         if not is_bipartite(g) and membership_in_Gs(g) == YES]
    ok = all(w >= 12 for ws in qualifying.values() for w in ws)
    elapsed = time.monotonic() - t
    report(8, "non-bipartite singular-manifold graphs have degree >= 12 (d=4)",
           ok and elapsed < 1800,
           f"order<=6: {len(qualifying[6])} qualifying{' (vacuous)' if not qualifying[6] else ''}; "
           f"order<=8: degrees {sorted(qualifying[8])}; {elapsed:.1f}s")


def test_09_wick_q1():
    hist = expansion_histogram(quartic_invariant(3)).to_dict()
    ok = (hist["buckets"] == {"0": 1, "1": 1} and hist["disconnected"] == 0
          and set(hist["exponents"].values()) == {"0", "-1"})
    report(9, "quartic invariant Wick histogram", ok, f"{hist['buckets']}, "
           f"exponents {sorted(hist['exponents'].values())}")


@pytest.mark.parametrize("mode", [COLOR_FIXED, COLOR_FREE])
def test_10_canonical_soundness(mode):
    free = mode == COLOR_FREE
    fast_to_brute = {}
    brute_to_fast = {}
    bad = 0
    total = 0
    for n in (2, 4, 6):
        for g in all_labeled_graphs(3, n):
            total += 1
            fast = canonical_code(g, mode)
            brute = (n, brute_canonical(g, free))
            bad += fast_to_brute.setdefault(fast, brute) != brute
            bad += brute_to_fast.setdefault(brute, fast) != fast
    # spot-check the brute canonical form itself against explicit bijections
    rng = random.Random(5)
    sample = list(all_labeled_graphs(3, 4))
    for _ in range(200):
        g, h = rng.sample(sample, 2)
        same = canonical_code(g, mode) == canonical_code(h, mode)
        bad += same != isomorphic(g, h, free)
    report(10, f"canonical codes match brute-force isomorphism ({mode})", bad == 0,
           f"{total} labeled graphs, {len(fast_to_brute)} classes, {bad} disagreements")


def test_11_finiteness(catalog_d3_8, catalog_d4_6):
    bad = finiteness_sweep(catalog_d3_8) + finiteness_sweep(catalog_d4_6)
    report(11, "finiteness bound on p", not bad,
           f"{len(catalog_d3_8) + len(catalog_d4_6)} entries, {len(bad)} violations")


def test_12_performance():
    t = time.monotonic()
    codes, complete = enumerate_codes(3, 8, COLOR_FREE)
    elapsed = time.monotonic() - t
    report(12, "complete d=3 order-8 color-free enumeration", complete and elapsed < 60,
           f"{len(codes)} graphs in {elapsed:.2f}s, single process")
