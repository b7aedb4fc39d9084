import random

import pytest
from hypothesis import given, settings, strategies as st

from gemtopo.graph import ColoredGraph, canonical_code, order_two_graph, torus_gem
from gemtopo.moves import (
    IMPROPER, IRREDUCIBLE, PROPER, SPHERE, BadAttachment, Dipole, InvalidDipole, add_dipole,
    contract, degree_drop, eliminate, find_dipoles, induced_attachments,
    is_contracted, reduce, reduce_moves,
)
from gemtopo.halfint import HalfInteger
from gemtopo.tensor import feynman_graph, quartic_invariant
from gemtopo.topology import YES, gurau_degree, singularity_profile

from oracles import plant_dipole, random_graph, scan_dipoles


def test_degree_drop_values():
    assert degree_drop(3, 1) == 0
    assert degree_drop(3, 2) == 1
    assert degree_drop(3, 3) == 0
    assert degree_drop(4, 2) == 6
    assert degree_drop(4, 3) == 6
    assert degree_drop(5, 3) == 48


def test_order_two_reduces_to_sphere():
    g, cert = reduce(order_two_graph(3))
    assert cert == SPHERE and g.order == 2
    assert is_contracted(order_two_graph(3)) == YES


def test_torus_is_irreducible():
    res = reduce_moves(torus_gem())
    assert res.certificate == IRREDUCIBLE
    assert res.graph.order == 6 and res.moves == []


def test_d4_two_dipole_instance():
    rng = random.Random(7)
    g = random_graph(rng, 4, 6)
    h, dip = plant_dipole(rng, g, 2)
    assert gurau_degree(h) - gurau_degree(eliminate(h, dip)) == 6


def test_invalid_dipole_rejected():
    g = torus_gem()
    with pytest.raises(InvalidDipole):
        eliminate(g, Dipole(0, 1, (0,)))


def test_bad_attachment():
    g = order_two_graph(2)
    with pytest.raises(BadAttachment):
        add_dipole(g, [0], {1: (0, 1)})
    with pytest.raises(BadAttachment):
        add_dipole(g, [0, 1, 2], {})
    with pytest.raises(BadAttachment):
        add_dipole(g, [0], {1: (0, 0), 2: (0, 1)})


def test_reduce_log_degree_steps():
    rng = random.Random(3)
    g = order_two_graph(3)
    for _ in range(4):
        g, _ = plant_dipole(rng, g, rng.choice([1, 2, 3]))
    res = reduce_moves(g)
    total = sum(int(m["dG_delta"]) for m in res.moves)
    assert gurau_degree(res.graph) - gurau_degree(g) == total
    assert res.certificate == SPHERE


def test_contract_gives_contracted_graph():
    rng = random.Random(11)
    g = torus_gem()
    g = ColoredGraph(3, list(g.matchings) + [g.matchings[0]])
    for _ in range(3):
        g, _ = plant_dipole(rng, g, 1)
    c = contract(g)
    assert is_contracted(c) != "no"
    assert not [dp for dp in find_dipoles(c, r=1) if dp.properness == PROPER]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 4), p=st.integers(1, 5))
def test_find_dipoles_matches_scan(seed, d, p):
    rng = random.Random(seed)
    g = random_graph(rng, d, 2 * p)
    planted = plant_dipole(rng, g, rng.randint(1, d))
    if planted:
        g = planted[0]
    fast = [(x.u, x.v, x.colors) for x in find_dipoles(g, properness=False)]
    assert fast == sorted(scan_dipoles(g))


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 5), p=st.integers(1, 5))
def test_add_then_eliminate_round_trip(seed, d, p):
    rng = random.Random(seed)
    g = random_graph(rng, d, 2 * p)
    planted = plant_dipole(rng, g, rng.randint(1, d))
    if planted is None:
        return
    h, dip = planted
    assert canonical_code(eliminate(h, dip)) == canonical_code(g)
    back = add_dipole(eliminate(h, dip), dip.colors, induced_attachments(h, dip))
    assert canonical_code(back) == canonical_code(h)
    assert gurau_degree(h) - gurau_degree(g) == degree_drop(d, dip.r)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(3, 4), p=st.integers(2, 5))
def test_improper_needs_two_nonspheres(seed, d, p):
    rng = random.Random(seed)
    g = random_graph(rng, d, 2 * p)
    for dip in find_dipoles(g):
        if dip.properness == IMPROPER:
            assert d - dip.r == 2


def two_torus_graph():
    """Two torus gems joined vertex by vertex with color 3."""
    t = torus_gem().matchings
    rows = [list(row) + [x + 6 for x in row] for row in t]
    rows.append([v + 6 for v in range(6)] + list(range(6)))
    return ColoredGraph(3, rows)


def test_contracted_with_two_torus_residues():
    g = two_torus_graph()
    assert is_contracted(g) == YES
    assert singularity_profile(g).boundary_names == ("T2", "T2")


def test_not_contracted_with_sphere_component():
    rng = random.Random(2)
    g, dip = plant_dipole(rng, order_two_graph(3), 1)
    assert is_contracted(g) == "no"
    assert contract(g) == order_two_graph(3)


def test_contract_identity_on_contracted_input():
    g = two_torus_graph()
    assert contract(g) is g


def test_quartic_identity_pairing_is_sphere():
    g = feynman_graph(quartic_invariant(3), (0, 1))
    assert reduce(g)[1] == SPHERE


def test_improper_one_dipole_exists(catalog_d3_8):
    found = [e for e in catalog_d3_8 if e.order == 8
             and any(dp.properness == IMPROPER for dp in find_dipoles(e.graph(), r=1))]
    assert found


def test_contract_sweep(catalog_d3_8):
    for e in catalog_d3_8:
        g = e.graph()
        c = contract(g)
        assert is_contracted(c) == YES
        assert gurau_degree(c) == e.gdegree
        assert singularity_profile(c).boundary_names == e.boundary


def test_reduce_is_monotone(catalog_d3_8):
    for e in catalog_d3_8:
        res = reduce_moves(e.graph())
        assert all(HalfInteger.parse(m["dG_delta"]) <= 0 for m in res.moves)
        assert res.graph.order == e.order - 2 * len(res.moves)


def test_thousand_round_trips():
    rng = random.Random(1000)
    done = 0
    while done < 1000:
        d = rng.randint(2, 5)
        g = random_graph(rng, d, 2 * rng.randint(1, 4))
        planted = plant_dipole(rng, g, rng.randint(1, d))
        if planted is None:
            continue
        h, dip = planted
        assert canonical_code(eliminate(h, dip)) == canonical_code(g)
        done += 1
