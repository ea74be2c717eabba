"""Command line front end: ``cactus <command> [options]``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .report import CheckReport, dumps
from .words import WordSyntaxError, named_presentation, parse_word, pi, split_form, top_generator

J4_RADIUS = 8
C3_RADIUS = 10
GROWTH_RADIUS = 10


class UsageError(Exception):
    pass


def _ball(name, radius):
    from .tess import build_ball
    return build_ball(named_presentation(name), radius)


# ---------------------------------------------------------------------------
# commands


def cmd_wp(args) -> CheckReport:
    from .tess import RadiusExceeded, trace
    group = args.group
    degree = 4 if group.startswith("j4") else 3
    words = [parse_word(t, degree) for t in args.words]
    if len(words) == 1:
        words.append(parse_word("", degree))
    rep = CheckReport("wp")
    if group == "j4":
        ball = _ball("j4-23", args.radius or J4_RADIUS)
        forms = [split_form(w) for w in words]
        try:
            keys = [(trace(ball, f.w), f.flip) for f in forms]
        except RadiusExceeded as exc:
            raise UsageError(str(exc))
    else:
        if group not in ("j3-2", "j3", "j4-23"):
            raise UsageError(f"unknown group {group}")
        ball = _ball(group, args.radius or (C3_RADIUS if degree == 3 else J4_RADIUS))
        top = top_generator(degree)
        for w in words:
            if group != "j3" and top in w.letters:
                raise UsageError(f"{top} is not a generator of {group}")
        try:
            keys = [trace(ball, w) for w in words]
        except RadiusExceeded as exc:
            raise UsageError(str(exc))
    equal = keys[0] == keys[1]
    rep.metrics["words"] = [str(w) for w in words]
    rep.metrics["equal"] = equal
    rep.metrics["answer"] = ("trivial" if equal else "nontrivial") if len(args.words) == 1 else (
        "equal" if equal else "different")
    return rep


def cmd_pi(args) -> CheckReport:
    w = parse_word(args.word, args.degree)
    p = pi(w)
    rep = CheckReport("pi")
    rep.metrics["images"] = list(p.images)
    rep.metrics["pure"] = p.is_identity()
    rep.metrics["answer"] = " ".join(map(str, p.images))
    return rep


def cmd_ball(args) -> CheckReport:
    from .tess import sphere_sizes
    radius = args.radius or (J4_RADIUS if args.group.startswith("j4") else C3_RADIUS)
    ball = _ball(args.group, radius)
    rep = CheckReport("ball")
    sizes = sphere_sizes(ball)
    rep.metrics.update(radius=radius, vertices=len(ball), edges=ball.edge_count(),
                       squares=len(ball.squares), sphere_sizes=sizes)
    if args.group == "j4-23":
        from .hypgeo import root_link
        rep.expected["sphere_sizes_0_2"] = [1, 5, 15]
        rep.check("sphere sizes 1, 5, 15", sizes[:3] == [1, 5, 15], str(sizes[:3]))
        # links of every vertex trusted at this radius, read from a larger ball
        rep.merge(link_report(_ball("j4-23", radius + 2), radius - 1))
        rep.metrics["links_checked_to_level"] = radius - 1
        rep.metrics["root_link"] = [str(g) for g in root_link(ball)]
    return rep


def link_report(ball, max_level=None) -> CheckReport:
    """Degree 5 and pentagon links at every vertex of level <= max_level.

    A full link needs squares reaching two levels further out, so the default
    is radius - 2.
    """
    if max_level is None:
        max_level = ball.radius - 2
    if max_level > ball.radius - 2:
        raise UsageError("links are only complete up to level radius - 2")
    rep = CheckReport("links")
    bad_degree = bad_link = 0
    corners: dict[int, list] = {}
    for sq in ball.squares:
        for j, (v, i) in enumerate(sq):
            corners.setdefault(v, []).append((i, sq[j - 1][1]))
    checked = 0
    for v in ball.vertices:
        if ball.level[v] > max_level:
            continue
        checked += 1
        if len(set(ball.neighbours(v))) != 5:
            bad_degree += 1
        adj: dict[int, set] = {}
        for a, b in corners.get(v, []):
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        if len(adj) != 5 or any(len(s) != 2 for s in adj.values()) or not _is_cycle(adj):
            bad_link += 1
    rep.metrics["vertices_checked"] = checked
    rep.check("interior vertex degree 5", bad_degree == 0, f"{bad_degree} vertices")
    rep.check("pentagon links", bad_link == 0, f"{bad_link} vertices")
    return rep


def _is_cycle(adj) -> bool:
    start = next(iter(adj))
    prev, cur, n = None, start, 0
    while True:
        nxt = next(x for x in adj[cur] if x != prev) if prev is not None else next(iter(adj[cur]))
        prev, cur, n = cur, nxt, n + 1
        if cur == start:
            return n == len(adj)
        if n > len(adj):
            return False


def cmd_kb(args) -> CheckReport:
    from .rewrite import DEFAULT_MAX_RULES, kb_complete
    system = kb_complete(named_presentation(args.group), args.max_rules or DEFAULT_MAX_RULES)
    rep = CheckReport("kb")
    rep.metrics.update(status=system.status, rules=len(system), system=[str(r) for r in system.rules])
    rep.check("confluent", system.confluent, system.status)
    return rep


def cmd_enumerate(args) -> CheckReport:
    from .pure import enumerate_pure, match_paper_list
    R = args.radius if args.radius is not None else 4
    ball = _ball("j4-23", max(J4_RADIUS, R + 1))
    found = enumerate_pure(ball, R)
    rep = CheckReport("enumerate")
    rep.metrics["R"] = R
    rep.metrics["elements"] = [
        {"word": str(e.geodesic_word), "flip": int(e.form.flip), "displacement": e.displacement}
        for e in found]
    nontrivial = [e for e in found if e.displacement > 0]
    rep.metrics["nontrivial"] = len(nontrivial)
    if R == 4:
        rep.merge(match_paper_list(ball, found))
    elif R < 4:
        rep.check("only the identity", not nontrivial, f"{len(nontrivial)} nontrivial")
    return rep


def cmd_verify_presentation(args) -> CheckReport:
    from .pure import ELIMINATION_ORDER, minimal_length_scan, single_relator_check, verify_relators
    ball = _ball("j4-23", args.radius or J4_RADIUS)
    rep = CheckReport("verify-presentation")
    rep.merge(verify_relators(ball))
    rep.merge(single_relator_check(ball, ELIMINATION_ORDER))
    rep.merge(minimal_length_scan(ball, min(5, ball.radius - 1)))
    return rep


def _realized(args):
    from .hypgeo import realize
    ball = _ball("j4-23", args.radius or J4_RADIUS)
    return ball, realize(ball, **({"tol": args.tol} if args.tol else {}))


def cmd_dirichlet(args) -> CheckReport:
    from .hypgeo import (
        GEOMETRIC_TOL, classify_sides, dirichlet, interference_check, generator_names, poincare_check, render_svg)
    from .pure import enumerate_pure
    from .quotient import relator_isometries
    import math

    tol = args.tol or GEOMETRIC_TOL
    ball, rt = _realized(args)
    names = generator_names(ball)
    D = dirichlet(rt, enumerate_pure(ball, 4), names, metric=args.metric)
    rep = CheckReport("dirichlet")
    kinds = classify_sides(rt, D)
    allowed = [2 * math.pi / 5, 3 * math.pi / 5, 4 * math.pi / 5]
    rep.metrics.update(
        metric=D.kind,
        sides=[{"tag": s.name, "kind": k} for s, k in zip(D.sides, kinds)],
        angles=D.angles,
        angle_sum=sum(D.angles),
        diagonal_sides=kinds.count("diagonal"),
        non_edge_sides=sum(1 for k in kinds if k != "edge"),
    )
    rep.expected.update(sides=20, angle_sum=12 * math.pi, non_edge_sides=10)
    rep.check("20 sides", len(D.sides) == 20, f"{len(D.sides)} sides")
    rep.check("angles in {2pi/5, 3pi/5, 4pi/5}",
              all(min(abs(a - b) for b in allowed) < tol for a in D.angles))
    rep.check("angle sum 12pi", abs(sum(D.angles) - 12 * math.pi) < tol, f"{sum(D.angles)}")
    rep.check("10 sides are not edges", rep.metrics["non_edge_sides"] == 10, str(rep.metrics["non_edge_sides"]))
    rep.merge(poincare_check(rt, D, names, tol))
    big = _ball("j4-23", 10)
    rep.merge(interference_check(rt, D, enumerate_pure(big, 6), big))
    rep.merge(relator_isometries(rt))
    if args.svg:
        Path(args.svg).write_text(render_svg(rt, D))
        rep.metrics["svg"] = str(args.svg)
    return rep


def cmd_quotient(args) -> CheckReport:
    from .pure import enumerate_pure
    from .quotient import alpha2_check, orbit_invariance, surface_report
    ball, rt = _realized(args)
    rep = surface_report(ball)
    rep.merge(alpha2_check(ball, rt))
    rep.merge(orbit_invariance(ball, enumerate_pure(ball, 4)))
    return rep


def cmd_x5(args) -> CheckReport:
    from .confspace import x5_report
    return x5_report(_ball("j4-23", args.radius or J4_RADIUS))


def cmd_x4(args) -> CheckReport:
    from .confspace import pj3_check
    return pj3_check(_ball("j3-2", args.radius or C3_RADIUS))


def cmd_growth(args) -> CheckReport:
    from .series import guess_series
    from .tess import sphere_sizes
    radius = args.radius or GROWTH_RADIUS
    sizes = sphere_sizes(_ball("j4-23", radius))
    rep = CheckReport("growth")
    rep.metrics["radius"] = radius
    rep.metrics["sphere_sizes"] = sizes
    try:
        s = guess_series(sizes)
    except ValueError as exc:
        raise UsageError(str(exc))
    rep.metrics["series"] = str(s) if s else None
    if s:
        rep.metrics["recurrence_order"] = s.order
        rep.metrics["validated_terms"] = s.validated_terms
    rep.check("recurrence validated on held-out terms", s is not None and s.expand(len(sizes)) == sizes)
    return rep


def cmd_all(args) -> CheckReport:
    rep = CheckReport("all")
    sub = argparse.Namespace(**vars(args))
    sub.radius = None
    steps = [
        ("ball", cmd_ball, {"group": "j4-23"}),
        ("kb", cmd_kb, {"group": "j4-23", "max_rules": None}),
        ("enumerate", cmd_enumerate, {"radius": 4}),
        ("verify-presentation", cmd_verify_presentation, {}),
        ("dirichlet", cmd_dirichlet, {"svg": None, "metric": "cellular"}),
        ("quotient", cmd_quotient, {}),
        ("x5", cmd_x5, {}),
        ("x4", cmd_x4, {}),
        ("growth", cmd_growth, {}),
    ]
    for name, fn, extra in steps:
        ns = argparse.Namespace(**{**vars(sub), **extra})
        rep.merge(fn(ns), name)
    return rep


# ---------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--report", dest="out", help="alias for --out")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--radius", type=int, default=None)

    parser = argparse.ArgumentParser(prog="cactus", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wp", parents=[common], help="word problem")
    p.add_argument("--group", default="j4-23", choices=("j3-2", "j3", "j4-23", "j4"))
    p.add_argument("words", nargs="+")
    p.set_defaults(fn=cmd_wp)

    p = sub.add_parser("pi", parents=[common], help="image in the symmetric group")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("word")
    p.set_defaults(fn=cmd_pi)

    p = sub.add_parser("ball", parents=[common], help="ball of the Cayley complex")
    p.add_argument("--group", default="j4-23", choices=("j3-2", "j3", "j4-23"))
    p.set_defaults(fn=cmd_ball)

    p = sub.add_parser("kb", parents=[common], help="Knuth-Bendix completion")
    p.add_argument("--group", default="j4-23", choices=("j3-2", "j3", "j4-23", "j4"))
    p.add_argument("--max-rules", type=int, default=None)
    p.set_defaults(fn=cmd_kb)

    for name, fn, hlp in (
        ("enumerate", cmd_enumerate, "pure elements of small displacement"),
        ("verify-presentation", cmd_verify_presentation, "relators, Tietze reduction, minimality"),
        ("quotient", cmd_quotient, "quotient surface"),
        ("growth", cmd_growth, "sphere sizes and a rational growth series"),
        ("all", cmd_all, "run every check"),
    ):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.set_defaults(fn=fn)

    p = sub.add_parser("dirichlet", parents=[common], help="Dirichlet polygon")
    p.add_argument("--svg")
    p.add_argument("--metric", choices=("cellular", "hyperbolic"), default="cellular")
    p.set_defaults(fn=cmd_dirichlet)

    p = sub.add_parser("x5", parents=[common], help="five points on a circle")
    p.add_argument("--verify-phi", action="store_true", help="(always on)")
    p.set_defaults(fn=cmd_x5)

    p = sub.add_parser("x4", parents=[common], help="four points on a circle and PJ_3")
    p.add_argument("--check-pj3", action="store_true", help="(always on)")
    p.set_defaults(fn=cmd_x4)
    return parser


def _as_text(doc: dict) -> str:
    lines = []
    metrics = doc["metrics"]
    if "answer" in metrics:
        return str(metrics["answer"]) + "\n"
    for k, v in doc["checks"].items():
        lines.append(f"{'PASS' if v else 'FAIL'}  {k}")
    for k, v in metrics.items():
        if isinstance(v, (int, float, str, bool)) or v is None:
            lines.append(f"{k} = {v}")
    lines.append("passed" if doc["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        rep = args.fn(args)
    except (WordSyntaxError, UsageError) as exc:
        print(f"cactus: error: {exc}", file=sys.stderr)
        return 2
    doc = rep.as_dict()
    doc["command"] = args.command
    doc["parameters"] = {k: v for k, v in vars(args).items() if k not in ("fn", "command", "format", "out")}
    doc["version"] = __version__
    doc["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    text = dumps(doc) + "\n" if args.format == "json" or args.out else _as_text(doc)
    if args.out:
        Path(args.out).write_text(text)
        if args.format == "text":
            sys.stdout.write(_as_text(doc))
    else:
        sys.stdout.write(text)
    for f in rep.failures:
        print(f"FAIL {f}", file=sys.stderr)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
