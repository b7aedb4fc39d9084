from math import factorial

import pytest

from gemtopo.graph import connected_components, is_bipartite, is_connected
from gemtopo.moves import SPHERE, reduce
from gemtopo.topology import euler_characteristic, gurau_degree, gurau_degree_recursive, surface_type
from gemtopo.triangulation import (
    Gluing, NotClosed, NotPure, Pseudocomplex, cone_boundary, from_triangulation,
    simplex_boundary,
)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sphere_boundaries(d):
    g = from_triangulation(simplex_boundary(d))
    assert g.order == factorial(d + 1) * (d + 2)
    assert is_connected(g) and is_bipartite(g)
    assert reduce(g)[1] == SPHERE


def test_two_sphere_surface():
    g = from_triangulation(simplex_boundary(2))
    assert surface_type(g).name == "S2"
    assert euler_characteristic(g) == 2


def test_four_sphere_degree():
    g = from_triangulation(simplex_boundary(4))
    assert g.order == 720
    assert gurau_degree(g) == gurau_degree_recursive(g)


def test_torus_triangulation():
    # 7-vertex torus
    tris = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    tris += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    g = from_triangulation(Pseudocomplex(tris))
    assert surface_type(g).name == "T2"


def test_two_triangles_glued():
    # two triangles along all three edges: a sphere
    gl = [Gluing(0, a, 1, a, (0, 1, 2)) for a in range(3)]
    g = from_triangulation(Pseudocomplex([(0, 1, 2), (0, 1, 2)], gl))
    assert g.order == 12 and surface_type(g).name == "S2"


def test_projective_plane_triangulation():
    # 6-vertex projective plane
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
            (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    g = from_triangulation(Pseudocomplex(tris))
    assert surface_type(g).name == "RP2"


def test_errors():
    with pytest.raises(NotClosed):
        from_triangulation(Pseudocomplex([(0, 1, 2)]))
    with pytest.raises(NotPure):
        from_triangulation(Pseudocomplex([(0, 1, 2), (0, 1)]))
    with pytest.raises(NotPure):
        from_triangulation(Pseudocomplex([(0, 0, 1)]))


def test_cone_boundary_closes_disc():
    disc = Pseudocomplex([(0, 1, 2), (0, 2, 3)])
    g = from_triangulation(cone_boundary(disc))
    assert surface_type(g).name == "S2"


def test_disjoint_copies_give_components():
    a = simplex_boundary(2).simplices
    b = [tuple(x + 10 for x in s) for s in a]
    g = from_triangulation(Pseudocomplex(a + b))
    assert not is_connected(g)
    assert [c.order for c in connected_components(g)] == [24, 24]
