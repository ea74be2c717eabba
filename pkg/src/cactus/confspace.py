"""Dual cell complexes of the compactified configuration spaces of k points on a circle.

A vertex is a circular order (0, a_1, ..., a_{k-1}) of the points up to
reflection, written as the code [a_1 ... a_{k-1}].  Edges switch two
neighbouring points, squares come from two disjoint switches.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations

from .quotient import CellComplex2, euler_characteristic, orbit_label, orientable, quotient_complex
from .report import CheckReport
from .tess import TessBall, fixed_points, trace
from .words import Word, is_pure, parse_word, pi, split_form

# the correspondence between codes and vertices of the quotient, as printed
PHI_TABLE = {
    "1234": "",
    "2134": "s12",
    "4123": "s13",
    "1324": "s23",
    "2341": "s24",
    "1243": "s34",
    "3124": "s13 s23",
    "3412": "s13 s24",
    "3241": "s13 s34",
    "2314": "s13 s12",
    "2431": "s24 s23",
    "3142": "s13 s24 s23",
}

# the printed list of squares, each a cyclic sequence of codes
PRINTED_SQUARES = (
    ("3124", "1324", "2314", "2134"),
    ("3124", "3142", "1342", "1324"),
    ("3214", "3142", "1342", "1324"),
    ("3412", "1243", "3124", "3214"),
    ("3412", "2134", "1234", "1243"),
    ("3412", "1432", "1342", "2134"),
    ("3142", "4132", "1432", "3412"),
    ("3142", "1342", "2134", "4132"),
    ("4231", "3241", "1243", "1342"),
    ("1324", "1234", "1432", "3241"),
    ("1432", "3241", "3214", "2314"),
    ("1342", "1243", "1234", "1432"),
    ("1234", "2134", "3124", "3214"),
    ("1234", "1324", "2314", "3214"),
    ("3214", "3412", "3142", "3241"),
)


def parse_code(text) -> tuple[int, ...]:
    if isinstance(text, str):
        return tuple(int(ch) for ch in text.strip("[] "))
    return tuple(text)


def canonical_code(seq) -> tuple[int, ...]:
    seq = parse_code(seq)
    if sorted(seq) != list(range(1, len(seq) + 1)):
        raise ValueError(f"{seq} is not a permutation of 1..{len(seq)}")
    return min(seq, tuple(reversed(seq)))


def code_str(c) -> str:
    return "[" + "".join(map(str, c)) + "]"


def _normalize(circle) -> tuple[int, ...]:
    j = circle.index(0)
    return canonical_code(circle[j + 1:] + circle[:j])


def _swap(circle, j):
    k = len(circle)
    c = list(circle)
    c[j], c[(j + 1) % k] = c[(j + 1) % k], c[j]
    return tuple(c)


def adjacent_codes(c) -> set[tuple[int, ...]]:
    circle = (0,) + canonical_code(c)
    return {_normalize(_swap(circle, j)) for j in range(len(circle))}


def all_codes(k: int) -> list[tuple[int, ...]]:
    return sorted({canonical_code(p) for p in permutations(range(1, k))})


def _cyclic_form(seq) -> tuple:
    """Representative of a cyclic sequence up to rotation and reversal."""
    seq = list(seq)
    n = len(seq)
    cands = []
    for s in (seq, seq[::-1]):
        for r in range(n):
            cands.append(tuple(s[r:] + s[:r]))
    return min(cands)


def build_config_complex(k: int) -> CellComplex2:
    if k not in (4, 5):
        raise ValueError("only k = 4 and k = 5 are modelled")
    codes = all_codes(k)
    index = {c: i for i, c in enumerate(codes)}
    edge_index: dict = {}
    edges = []
    for c in codes:
        for d in sorted(adjacent_codes(c)):
            key = tuple(sorted((index[c], index[d])))
            if key not in edge_index:
                edge_index[key] = len(edges)
                edges.append(key)
    faces = []
    seen = set()
    if k == 5:
        for c in codes:
            circle = (0,) + c
            for a in range(k):
                for b in range(k):
                    if len({a, (a + 1) % k, b, (b + 1) % k}) != 4:
                        continue
                    cyc = [circle, _swap(circle, a), _swap(_swap(circle, a), b), _swap(circle, b)]
                    verts = [index[_normalize(x)] for x in cyc]
                    key = _cyclic_form(verts)
                    if key in seen:
                        continue
                    seen.add(key)
                    bd = []
                    for j in range(4):
                        u, v = verts[j], verts[(j + 1) % 4]
                        e = edge_index[tuple(sorted((u, v)))]
                        bd.append((e, 1 if edges[e] == (u, v) else -1))
                    faces.append(bd)
    cc = CellComplex2(codes, edges, faces, index)
    cc.check_boundaries()
    return cc


def face_vertices(c: CellComplex2, bd) -> list[int]:
    out = []
    for e, s in bd:
        t, h = c.edges[e]
        out.append(t if s > 0 else h)
    return out


# ---------------------------------------------------------------------------
# the correspondence


def phi_word(c) -> Word:
    c = canonical_code(c)
    for text, w in PHI_TABLE.items():
        if canonical_code(text) == c:
            return parse_word(w, 4)
    raise KeyError(f"{code_str(c)} is not in the table")


def phi_vertex(c) -> tuple[int, ...]:
    """Orbit label of the table word for c."""
    w = phi_word(c)
    p = pi(w)
    images = tuple(p.images)
    return min(images, tuple(reversed(images)))


def derived_label(c) -> tuple[int, ...]:
    """The label {rho, rho w0} with rho spelling c on (1, ..., n)."""
    return canonical_code(c)


def _reconcile_printed_squares(cc: CellComplex2) -> dict:
    generated = {_cyclic_form([cc.vertices[v] for v in face_vertices(cc, bd)]) for bd in cc.faces}
    generated_sets = {frozenset(f) for f in generated}
    matched, wrong_order, unmatched = [], [], []
    listed = []
    for sq in PRINTED_SQUARES:
        canon = [canonical_code(x) for x in sq]
        form = _cyclic_form(canon)
        listed.append(form)
        name = "<" + ", ".join(f"[{x}]" for x in sq) + ">"
        if form in generated:
            matched.append(name)
        elif frozenset(canon) in generated_sets:
            wrong_order.append(name)
        else:
            unmatched.append(name)
    missing = sorted(f for f in generated if f not in set(listed)
                     and frozenset(f) not in {frozenset(x) for x in listed})
    dup = [f for f, n in Counter(listed).items() if n > 1]
    return {
        "matched": matched,
        "same_vertices_other_cycle": wrong_order,
        "unmatched": unmatched,
        "generated_not_listed": ["<" + ", ".join(code_str(x) for x in f) + ">" for f in missing],
        "duplicates": len(dup),
    }


def verify_phi(cc: CellComplex2, F: CellComplex2) -> CheckReport:
    rep = CheckReport("verify_phi")
    codes = cc.vertices
    for c in codes:
        rep.check(f"table row {code_str(c)} agrees with the permutation rule",
                  phi_vertex(c) == derived_label(c))
    vmap = {}
    for i, c in enumerate(codes):
        lab = phi_vertex(c)
        vmap[i] = F.vertex_names.get(lab)
        rep.check(f"{code_str(c)} lands on a vertex of F", vmap[i] is not None)
    images = [v for v in vmap.values() if v is not None]
    rep.check("vertex map is a bijection", len(set(images)) == len(F.vertices) == len(codes),
              f"{len(set(images))} images, {len(F.vertices)} vertices")

    def pair(u, v):
        return tuple(sorted((u, v)))

    cc_edges = Counter(pair(vmap[t], vmap[h]) for t, h in cc.edges)
    f_edges = Counter(pair(t, h) for t, h in F.edges)
    for e, n in cc_edges.items():
        rep.check(f"edge {e} of the image is an edge of F", f_edges.get(e, 0) >= n)
    rep.check("edge map is a bijection", cc_edges == f_edges,
              f"{sum(cc_edges.values())} vs {sum(f_edges.values())}")

    f_faces = Counter(_cyclic_form(face_vertices(F, bd)) for bd in F.faces)
    cc_faces = Counter(_cyclic_form([vmap[v] for v in face_vertices(cc, bd)]) for bd in cc.faces)
    for bd in cc.faces:
        name = "<" + ", ".join(code_str(codes[v]) for v in face_vertices(cc, bd)) + ">"
        img = _cyclic_form([vmap[v] for v in face_vertices(cc, bd)])
        rep.check(f"face {name} maps to a face of F", img in f_faces)
    rep.check("face map is a bijection", cc_faces == f_faces,
              f"{sum(cc_faces.values())} vs {sum(f_faces.values())}")
    rep.check("euler characteristics agree", euler_characteristic(cc) == euler_characteristic(F))
    rep.metrics.update(
        vertices=[len(codes), len(F.vertices)],
        edges=[len(cc.edges), len(F.edges)],
        faces=[len(cc.faces), len(F.faces)],
    )
    rep.expected.update(vertices=[12, 12], edges=[30, 30], faces=[15, 15])
    rep.metrics["printed_square_list"] = _reconcile_printed_squares(cc)
    return rep


def x5_report(ball: TessBall) -> CheckReport:
    rep = CheckReport("x5")
    cc = build_config_complex(5)
    V, E, Fc = cc.counts
    degrees = Counter()
    for t, h in cc.edges:
        degrees[t] += 1
        degrees[h] += 1
    rep.metrics.update(V=V, E=E, F=Fc, chi=euler_characteristic(cc), orientable=orientable(cc))
    rep.expected.update(V=12, E=30, F=15, chi=-3, orientable=False)
    rep.check("cell counts", (V, E, Fc) == (12, 30, 15), f"{(V, E, Fc)}")
    rep.check("every vertex has degree 5", all(degrees[v] == 5 for v in range(V)))
    rep.check("non-orientable", not orientable(cc))
    rep.merge(verify_phi(cc, quotient_complex(ball)))
    return rep


# ---------------------------------------------------------------------------
# degree three


def pj3_check(b3: TessBall) -> CheckReport:
    rep = CheckReport("pj3")
    if b3.presentation.name != "j3-2" or b3.radius < 8:
        raise ValueError("pj3_check needs a C_3^{[2]} ball of radius >= 8")
    trusted = [v for v in b3.vertices if b3.trusted(v)]
    rep.check("every trusted vertex has degree 2",
              all(len(set(b3.neighbours(v))) == 2 for v in trusted))
    rep.check("no squares", not b3.squares)
    sizes = Counter(b3.level[v] for v in b3.vertices)
    rep.check("two vertices on every sphere", all(sizes[r] == 2 for r in range(1, b3.radius + 1)))
    labels = {orbit_label(b3, v) for v in b3.vertices}
    rep.metrics["orbits"] = len(labels)
    rep.expected["orbits"] = 3
    rep.check("three vertex orbits", len(labels) == 3, f"{len(labels)}")

    Q = quotient_complex(b3)
    cc = build_config_complex(4)
    rep.metrics["quotient"] = list(Q.counts)
    rep.check("quotient is a 3-cycle", Q.counts == (3, 3, 0) and Q.is_connected()
              and all(t != h for t, h in Q.edges) and len({tuple(sorted(e)) for e in Q.edges}) == 3)
    vmap = {i: cc.vertex_names[canonical_code(lab)] for i, lab in enumerate(Q.vertices)}
    q_edges = sorted(tuple(sorted((vmap[t], vmap[h]))) for t, h in Q.edges)
    c_edges = sorted(tuple(sorted(e)) for e in cc.edges)
    rep.check("quotient is isomorphic to the dual of the 4-point space", q_edges == c_edges)

    w = parse_word("s12 s23 s12 s13", 3)
    f = split_form(w)
    rep.metrics["split"] = f"{f.w} | flip={int(f.flip)}"
    rep.check("s12 s23 s12 s13 is pure", is_pure(w))
    rep.check("pi(s12 s23 s12) is the full reversal", tuple(pi(f.w).images) == (3, 2, 1))
    disp = b3.level[trace(b3, f.w)]
    rep.metrics["displacement"] = disp
    rep.check("displacement 3", disp == 3, f"{disp}")
    rep.check("acts freely on the ball", not fixed_points(b3, f))
    rep.check("translation length equals the number of orbits", disp == len(labels))
    return rep
