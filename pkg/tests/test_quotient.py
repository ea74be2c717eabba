import pytest

from cactus.pure import enumerate_pure
from cactus.quotient import (
    CellComplex2,
    SurfaceError,
    alpha2_check,
    classify_surface,
    euler_characteristic,
    orbit_invariance,
    orbit_label,
    orientable,
    quotient_complex,
    relator_isometries,
    surface_report,
    vertex_orbits,
)
from cactus.tess import build_ball, trace
from cactus.words import named_presentation, parse_word, split_form


def square_pair():
    # two squares glued along their common boundary
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    f1 = [(0, 1), (1, 1), (2, 1), (3, 1)]
    f2 = [(3, -1), (2, -1), (1, -1), (0, -1)]
    return CellComplex2([0, 1, 2, 3], edges, [f1, f2])


def projective_plane():
    # square with boundary word a b a b
    return CellComplex2([0, 1], [(0, 1), (1, 0)], [[(0, 1), (1, 1), (0, 1), (1, 1)]])


def klein_bottle():
    # one vertex, edges a, b, word a b a^-1 b
    return CellComplex2([0], [(0, 0), (0, 0)], [[(0, 1), (1, 1), (0, -1), (1, 1)]])


def torus():
    return CellComplex2([0], [(0, 0), (0, 0)], [[(0, 1), (1, 1), (0, -1), (1, -1)]])


def test_single_square():
    c = CellComplex2([0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0)], [[(0, 1), (1, 1), (2, 1), (3, 1)]])
    assert euler_characteristic(c) == 1
    assert not c.is_closed()
    with pytest.raises(SurfaceError):
        orientable(c)


def test_sphere_from_two_squares():
    c = square_pair()
    assert orientable(c)
    assert classify_surface(c) == "S0"


def test_projective_plane():
    c = projective_plane()
    assert not orientable(c)
    assert classify_surface(c) == "N1"


def test_klein_bottle_and_torus():
    assert classify_surface(klein_bottle()) == "N2"
    assert classify_surface(torus()) == "S1"


def test_bad_boundary_rejected():
    c = CellComplex2([0, 1, 2], [(0, 1), (1, 2)], [[(0, 1), (1, 1)]])
    with pytest.raises(SurfaceError):
        c.check_boundaries()


def test_orbit_labels(ball8):
    labels = vertex_orbits(ball8)
    assert len(set(labels.values())) == 12
    assert labels[ball8.root] == (1, 2, 3, 4)
    v = trace(ball8, parse_word("s13 s24", 4))
    u = trace(ball8, parse_word("s13 s24 s13 s24 s13 s24", 4))
    assert labels[u] == labels[v]


def test_orbit_invariance(ball8):
    assert orbit_invariance(ball8, enumerate_pure(ball8, 5)).passed


def test_quotient_surface(ball8):
    c = quotient_complex(ball8)
    assert c.counts == (12, 30, 15)
    assert euler_characteristic(c) == -3
    assert c.is_closed() and c.is_connected()
    assert not orientable(c)
    assert classify_surface(c) == "N5"


@pytest.mark.parametrize("radius", [6, 7])
def test_quotient_stable_in_radius(radius):
    b = build_ball(named_presentation("j4-23"), radius)
    assert surface_report(b).passed


def test_quotient_needs_radius():
    b = build_ball(named_presentation("j4-23"), 4)
    with pytest.raises(ValueError):
        vertex_orbits(b)


def test_alpha2(ball8, rt):
    rep = alpha2_check(ball8, rt)
    assert rep.passed, rep.failures
    assert rep.metrics["rev"] is True


def test_relator_isometries(rt):
    assert relator_isometries(rt).passed
