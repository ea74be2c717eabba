"""Acceptance suite: one test and one printed PASS/FAIL line per criterion."""

import math
import random

from cactus.cli import link_report
from cactus.confspace import build_config_complex, pj3_check, verify_phi
from cactus.hypgeo import (
    classify_sides,
    dirichlet,
    element_isometry,
    interference_check,
    generator_names,
    poincare_check,
)
from cactus.pure import (
    ALPHA2,
    THEOREM_RELATORS,
    enumerate_pure,
    expand,
    match_paper_list,
    minimal_length_scan,
    parse_gword,
    single_relator_check,
    verify_relators,
)
from cactus.quotient import alpha2_check, classify_surface, euler_characteristic, orientable, quotient_complex
from cactus.rewrite import kb_complete, rewrite
from cactus.series import guess_series
from cactus.tess import build_ball, left_mult_map, sphere_sizes, trace
from cactus.words import Generator, Word, is_pure, named_presentation, pi, split_form, split_mul

ANGLE_TOL = 1e-6
ALGEBRAIC_TOL = 1e-9


def record(log, number, title, ok, detail=""):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    log.append(line)
    print(line)
    return ok


def test_criterion_01_ball_structure(ball8, ball10, acceptance_log):
    sizes = sphere_sizes(ball8)[:3]
    links = link_report(ball10, ball8.radius - 1)
    ok = sizes == [1, 5, 15] and links.passed
    record(acceptance_log, 1, "ball structure", ok,
           f"spheres {sizes}, {links.metrics['vertices_checked']} links checked")
    assert sizes == [1, 5, 15]
    assert links.passed, links.failures


def test_criterion_02_enumeration(ball8, acceptance_log):
    r3 = enumerate_pure(ball8, 3)
    r4 = enumerate_pure(ball8, 4)
    rep = match_paper_list(ball8, r4)
    flips = rep.metrics["flip_counts"]
    ok = len(r3) == 1 and len(r4) == 21 and rep.passed and flips == {"0": 6, "1": 14}
    record(acceptance_log, 2, "enumeration", ok,
           f"R=3: {len(r3) - 1} nontrivial, R=4: {len(r4) - 1} nontrivial, flips {flips}")
    assert [e.displacement for e in r3] == [0]
    assert rep.passed, rep.failures
    assert flips == {"0": 6, "1": 14}


def test_criterion_03_presentation(ball8, acceptance_log):
    rel = verify_relators(ball8)
    single = single_relator_check(ball8)
    ok = rel.passed and single.passed
    record(acceptance_log, 3, "presentation", ok,
           f"{sum(rel.checks.values())}/12 relators trivial, single relator {single.metrics['remaining'][0]}")
    assert rel.passed, rel.failures
    assert single.passed, single.failures


def test_criterion_04_minimality(ball8, acceptance_log):
    short = minimal_length_scan(ball8, 3)
    # length 4 words cover everything strictly shorter than the length-5 elements
    longer = minimal_length_scan(ball8, 4)
    ok = short.passed and longer.passed and short.metrics["words_scanned"] == 258
    record(acceptance_log, 4, "minimality", ok,
           f"{short.metrics['words_scanned']} words of length <= 3, "
           f"{longer.metrics['words_scanned']} of length <= 4")
    assert short.metrics["words_scanned"] == 258
    assert short.passed, short.failures
    assert longer.passed, longer.failures


def test_criterion_05_dirichlet(ball8, ball10, rt, acceptance_log):
    names = generator_names(ball8)
    D = dirichlet(rt, enumerate_pure(ball8, 4), names)
    allowed = [k * math.pi / 5 for k in (2, 3, 4)]
    angles_ok = all(min(abs(a - b) for b in allowed) < ANGLE_TOL for a in D.angles)
    total = sum(D.angles)
    pc = poincare_check(rt, D, names, ANGLE_TOL)
    kinds = classify_sides(rt, D)
    non_edges = sum(1 for k in kinds if k != "edge")
    clear = interference_check(rt, D, enumerate_pure(ball10, 6), ball10)
    ok = (len(D.sides) == 20 and angles_ok and abs(total - 12 * math.pi) < ANGLE_TOL
          and pc.passed and non_edges == 10 and clear.passed)
    record(acceptance_log, 5, "Dirichlet domain", ok,
           f"{len(D.sides)} sides, angle sum {total / math.pi:.9f} pi, "
           f"{pc.metrics.get('cycle_count')} vertex cycles, {non_edges} diagonal sides")
    assert len(D.sides) == 20
    assert angles_ok
    assert abs(total - 12 * math.pi) < ANGLE_TOL
    assert pc.passed, pc.failures
    assert all(abs(c["angle_sum"] - 2 * math.pi) < ANGLE_TOL for c in pc.metrics["cycles"])
    assert non_edges == 10
    assert clear.passed


def test_criterion_06_quotient(ball8, acceptance_log):
    F = quotient_complex(ball8)
    chi = euler_characteristic(F)
    cls = classify_surface(F)
    ok = F.counts == (12, 30, 15) and chi == -3 and F.is_closed() and F.is_connected() \
        and not orientable(F) and cls == "N5"
    record(acceptance_log, 6, "quotient surface", ok, f"(V,E,F)={F.counts}, chi={chi}, {cls}")
    assert F.counts == (12, 30, 15)
    assert chi == -3
    assert F.is_closed() and F.is_connected()
    assert not orientable(F)
    assert cls == "N5"


def test_criterion_07_configuration_space(ball8, acceptance_log):
    cc = build_config_complex(5)
    degree = [0] * len(cc.vertices)
    for t, h in cc.edges:
        degree[t] += 1
        degree[h] += 1
    rep = verify_phi(cc, quotient_complex(ball8))
    rec = rep.metrics["printed_square_list"]
    ok = cc.counts == (12, 30, 15) and set(degree) == {5} and rep.passed
    record(acceptance_log, 7, "configuration space", ok,
           f"{len(rec['matched'])}/15 printed squares match; unmatched {rec['unmatched']}; "
           f"generated but not printed {rec['generated_not_listed']}")
    assert cc.counts == (12, 30, 15)
    assert set(degree) == {5}
    assert rep.passed, rep.failures
    assert rep.metrics["vertices"] == [12, 12]
    assert rep.metrics["edges"] == [30, 30]
    assert rep.metrics["faces"] == [15, 15]


def test_criterion_08_degree_three(ball3, acceptance_log):
    rep = pj3_check(ball3)
    record(acceptance_log, 8, "degree three", rep.passed,
           f"{rep.metrics['orbits']} orbits, quotient {rep.metrics['quotient']}, "
           f"displacement {rep.metrics['displacement']}")
    assert rep.passed, rep.failures


def test_criterion_09_orientation(ball8, rt, acceptance_log):
    a2 = alpha2_check(ball8, rt)
    rel_ok = []
    for text in THEOREM_RELATORS:
        iso = element_isometry(rt, expand(parse_gword(text)))
        rel_ok.append(iso.is_identity(ALGEBRAIC_TOL) and not iso.rev)
    pure = is_pure(expand(parse_gword(ALPHA2)))
    ok = pure and a2.passed and a2.metrics["rev"] and all(rel_ok)
    record(acceptance_log, 9, "orientation", ok,
           f"alpha2 rev={a2.metrics['rev']}, {sum(rel_ok)}/6 relator isometries trivial")
    assert pure
    assert a2.passed, a2.failures
    assert all(rel_ok)


J4_GENS = tuple(Generator(p, q) for p, q in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 4)])


def _all_words(gens, degree, max_len):
    import itertools
    for n in range(max_len + 1):
        for letters in itertools.product(gens, repeat=n):
            yield Word(letters, degree)


def test_criterion_10_oracle_agreement(ball8, ball3, acceptance_log):
    failures = []

    # rewriting and the ball agree on J3^[2] words of length <= 6
    system3 = kb_complete(named_presentation("j3-2"))
    pool = list(_all_words((Generator(1, 2), Generator(2, 3)), 3, 6))
    nf = [rewrite(system3, w).letters for w in pool]
    vx = [trace(ball3, w) for w in pool]
    pairs = 0
    for i in range(len(pool)):
        for j in range(len(pool)):
            pairs += 1
            if (nf[i] == nf[j]) != (vx[i] == vx[j]):
                failures.append(f"j3 pair {pool[i]} / {pool[j]}")

    # pi factors through the word problem
    rng = random.Random(2025)
    sub = J4_GENS[:5]
    rels = named_presentation("j4-23").relators
    for _ in range(10_000):
        u = Word(tuple(rng.choice(sub) for _ in range(rng.randrange(5))), 4)
        if rng.random() < 0.5:
            k = rng.randrange(len(u) + 1)
            v = u[:k] * rng.choice(rels) * u[k:]
        else:
            v = Word(tuple(rng.choice(sub) for _ in range(rng.randrange(5))), 4)
        if trace(ball8, u) == trace(ball8, v) and pi(u) != pi(v):
            failures.append(f"pi separates {u} and {v}")

    # split_mul is a homomorphism, checked against completion of the full group
    system4 = kb_complete(named_presentation("j4"))
    words = list(_all_words(J4_GENS, 4, 3))
    forms = {w: split_form(w) for w in words}
    norm = {w: rewrite(system4, w) for w in words}
    for u in words:
        for v in words:
            prod = split_mul(forms[u], forms[v])
            if rewrite(system4, prod.full_word()) != rewrite(system4, norm[u] * norm[v]):
                failures.append(f"split_mul {u} * {v}")

    # left_mult_map is an action
    maps = {}
    shallow = [v for v in ball8.vertices if ball8.level[v] <= 2]
    for _ in range(1000):
        g = Word(tuple(rng.choice(J4_GENS) for _ in range(rng.randrange(3))), 4)
        h = Word(tuple(rng.choice(J4_GENS) for _ in range(rng.randrange(3))), 4)
        v = rng.choice(shallow)
        for w in (g, h, g * h):
            if w not in maps:
                maps[w] = left_mult_map(ball8, split_form(w))
        if maps[g][maps[h][v]] != maps[g * h][v]:
            failures.append(f"action axiom {g}, {h}, {v}")

    ok = not failures
    record(acceptance_log, 10, "oracle cross-checks", ok,
           f"{pairs} j3 pairs, 10000 pi pairs, {len(words) ** 2} split pairs (length <= 3), 1000 action triples")
    assert not failures, failures[:5]


def test_criterion_11_growth(acceptance_log):
    radius = 11
    first = sphere_sizes(build_ball(named_presentation("j4-23"), radius))
    second = sphere_sizes(build_ball(named_presentation("j4-23"), radius))
    series = guess_series(first)
    ok = first == second and series is not None and series.expand(len(first)) == first \
        and series.validated_terms > 0
    record(acceptance_log, 11, "growth", ok,
           f"sizes to level {radius - 1}: {first}; series {series}, "
           f"validated on {series.validated_terms if series else 0} held-out terms")
    assert first == second
    assert series is not None
    assert series.expand(len(first)) == first
