import math

import numpy as np
import pytest

from cactus.hypgeo import (
    CENTER,
    EDGE_LENGTH,
    HIso,
    MIRROR,
    classify_sides,
    corner_angle,
    dirichlet,
    element_isometry,
    from_disk,
    from_klein,
    generator_isometry,
    hdist,
    interference_check,
    generator_names,
    point_at,
    poincare_check,
    render_svg,
    root_link,
    rotation,
    square_angles,
    to_disk,
    to_klein,
    vertex_cycles,
)
from cactus.pure import enumerate_pure, expand, listed_element, parse_gword
from cactus.words import gen, parse_word, split_form


def test_edge_length_closed_form():
    # a regular quadrilateral with angles 2pi/5 has cosh(l/2) = cos(pi/4) / sin(pi/5)
    assert math.cosh(EDGE_LENGTH / 2) == pytest.approx(math.cos(math.pi / 4) / math.sin(math.pi / 5))


def test_model_conversions_roundtrip():
    for z in (1j, 0.3 + 2j, -4 + 0.1j):
        assert from_disk(to_disk(z)) == pytest.approx(z)
        assert from_klein(to_klein(z)) == pytest.approx(z)


def test_isometry_composition_and_inverse():
    a = HIso(np.array([[2.0, 1.0], [1.0, 1.0]]))
    b = MIRROR @ rotation(0.7)
    z = 0.4 + 1.3j
    assert (a @ b)(z) == pytest.approx(a(b(z)))
    assert (b.inverse() @ b).is_identity()
    assert MIRROR(2j) == pytest.approx(0.5j)
    assert (MIRROR @ MIRROR).is_identity()


def test_isometries_preserve_distance():
    f = MIRROR @ rotation(1.1) @ HIso(np.array([[1.5, 0.2], [0.0, 1 / 1.5]]))
    p, q = 0.2 + 0.7j, -1 + 3j
    assert hdist(f(p), f(q)) == pytest.approx(hdist(p, q))


def test_negative_determinant_becomes_reversal():
    h = HIso(np.array([[-1.0, 0.0], [0.0, 1.0]]))
    assert h.rev
    assert h(1 + 1j) == pytest.approx(-1 + 1j)


def test_root_link_order(ball8):
    assert [str(g) for g in root_link(ball8)] == ["s12", "s13", "s23", "s24", "s34"]


def test_realization_is_regular(rt):
    angs = square_angles(rt)
    assert max(abs(a - 2 * math.pi / 5) for a in angs) < 1e-9
    for g in rt.gen_iso:
        assert hdist(rt.gen_iso[g](CENTER), CENTER) == pytest.approx(EDGE_LENGTH)


def test_generator_isometries_are_involutions(rt):
    for g in rt.gen_iso:
        generator_isometry(rt, g)
        assert (rt.gen_iso[g] @ rt.gen_iso[g]).is_identity()
    assert (rt.flip_iso @ rt.flip_iso).is_identity()


def test_element_isometry_matches_vertex_positions(rt, ball8):
    from cactus.tess import trace
    for i in range(1, 11):
        f = split_form(listed_element(i))
        iso = element_isometry(rt, f)
        assert hdist(iso(CENTER), rt.pos[trace(ball8, f.w)]) < 1e-9
        assert hdist(iso(CENTER), CENTER) > 0


def test_relator_isometries_are_identity(rt):
    for text in ("g1 g10^-1 g2^-1", "g2 g9 g7^-1 g6 g3^-1"):
        iso = element_isometry(rt, expand(parse_gword(text)))
        assert iso.is_identity()
        assert not iso.rev


def test_corner_angle_of_right_angle():
    # geodesics from i along the imaginary axis and the unit circle meet at right angles
    a = point_at(1j, math.pi / 2, 1.0)
    b = point_at(1j, 0.0, 1.0)
    assert corner_angle(1j, a, b) == pytest.approx(math.pi / 2)


@pytest.fixture(scope="module")
def domain(rt, ball8):
    return dirichlet(rt, enumerate_pure(ball8, 4), generator_names(ball8))


def test_cellular_dirichlet_polygon(domain, rt):
    assert len(domain.sides) == 20
    spectrum = sorted(round(a * 5 / math.pi) for a in domain.angles)
    assert spectrum == [2] * 5 + [3] * 10 + [4] * 5
    assert sum(domain.angles) == pytest.approx(12 * math.pi, abs=1e-6)
    assert domain.area == pytest.approx(6 * math.pi, abs=1e-6)
    kinds = classify_sides(rt, domain)
    assert kinds.count("diagonal") == 10 and kinds.count("edge") == 10


def test_level_three_corners_are_the_labelled_vertices(domain, ball8):
    from cactus.tess import trace
    labelled = ["s13 s24 s23", "s23 s34 s12", "s24 s13 s23", "s34 s13 s12", "s12 s24 s34"]
    deep = {v for v in domain.vertex_ids if ball8.level[v] == 3}
    assert deep == {trace(ball8, parse_word(t, 4)) for t in labelled}


def test_poincare_conditions(domain, rt, ball8):
    rep = poincare_check(rt, domain, generator_names(ball8))
    assert rep.passed, rep.failures
    assert rep.metrics["cycle_count"] == 6
    assert rep.metrics["cycle_relators_in_outline_list"] == 6
    assert len(vertex_cycles(domain)) == 6


def test_hyperbolic_dirichlet_is_a_decagon(rt, ball8):
    D = dirichlet(rt, enumerate_pure(ball8, 4), generator_names(ball8), metric="hyperbolic")
    assert len(D.sides) == 10
    assert sum(D.angles) == pytest.approx(2 * math.pi, abs=1e-6)
    rep = poincare_check(rt, D, generator_names(ball8))
    # a single vertex cycle: one relator in g1, g4, g5, g8, g10 instead of the listed six
    assert rep.metrics["cycle_count"] == 1
    assert [k for k, ok in rep.checks.items() if not ok] == ["cycle relators reproduce the relator list"]


def test_no_interference(domain, rt, ball10):
    rep = interference_check(rt, domain, enumerate_pure(ball10, 6), ball10)
    assert rep.passed
    assert rep.metrics["orbit_points"] == 140


def test_unknown_metric(rt, ball8):
    with pytest.raises(ValueError):
        dirichlet(rt, enumerate_pure(ball8, 4), metric="taxicab")


def test_svg(domain, rt):
    svg = render_svg(rt, domain)
    assert 'viewBox="0 0 1000 1000"' in svg
    assert svg.count("<circle") > 20
    assert 'class="dirichlet"' in svg
    import xml.etree.ElementTree as ET
    ET.fromstring(svg)
