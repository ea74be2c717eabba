"""The quotient surface C_4^{[2,3]} / PJ_4 as a finite cell complex.

PJ_4 acts freely, so a vertex orbit is determined by the pair {perm(v),
perm(v) w0}; a directed edge orbit by that pair together with the edge
label, transported by sigma when the second permutation is the chosen
representative.  Squares are determined by a corner and its two labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .pure import ALPHA2, THEOREM_RELATORS, expand, parse_gword, PureElement
from .report import CheckReport
from .tess import TessBall, fixed_points, left_mult_map
from .rewrite import kb_complete, rewrite
from .words import Generator, Perm, SplitForm, is_pure, longest_perm, sigma_letter, split_form


class SurfaceError(ValueError):
    pass


@dataclass
class CellComplex2:
    vertices: list
    edges: list[tuple[int, int]]                       # (tail, head)
    faces: list[list[tuple[int, int]]]                 # boundary as (edge, +1 / -1)
    vertex_names: dict = field(default_factory=dict)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def check_boundaries(self):
        for f, bd in enumerate(self.faces):
            ends = []
            for e, s in bd:
                t, h = self.edges[e]
                ends.append((t, h) if s > 0 else (h, t))
            for k in range(len(ends)):
                if ends[k][1] != ends[(k + 1) % len(ends)][0]:
                    raise SurfaceError(f"face {f} boundary is not a closed path")

    def face_sides(self) -> dict[int, list[tuple[int, int]]]:
        """edge -> list of (face, sign) occurrences."""
        out: dict[int, list[tuple[int, int]]] = {e: [] for e in range(len(self.edges))}
        for f, bd in enumerate(self.faces):
            for e, s in bd:
                out[e].append((f, s))
        return out

    def is_closed(self) -> bool:
        return all(len(v) == 2 for v in self.face_sides().values())

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in range(len(self.vertices))}
        for t, h in self.edges:
            adj[t].add(h)
            adj[h].add(t)
        seen = {0}
        todo = deque([0])
        while todo:
            v = todo.popleft()
            for u in adj[v] - seen:
                seen.add(u)
                todo.append(u)
        return len(seen) == len(self.vertices)


def euler_characteristic(c: CellComplex2) -> int:
    V, E, F = c.counts
    return V - E + F


def orientable(c: CellComplex2) -> bool:
    """Try to orient every face so that each edge is traversed once each way."""
    sides = c.face_sides()
    if any(len(v) != 2 for v in sides.values()):
        raise SurfaceError("not a closed surface: some edge has != 2 face sides")
    adj: dict[int, list[tuple[int, int]]] = {f: [] for f in range(len(c.faces))}
    for (f1, s1), (f2, s2) in sides.values():
        # orientations o1, o2 must satisfy o1*s1 = -o2*s2
        rel = -s1 * s2
        adj[f1].append((f2, rel))
        adj[f2].append((f1, rel))
    orient: dict[int, int] = {}
    for f0 in adj:
        if f0 in orient:
            continue
        orient[f0] = 1
        todo = deque([f0])
        while todo:
            f = todo.popleft()
            for g, rel in adj[f]:
                want = orient[f] * rel
                if g not in orient:
                    orient[g] = want
                    todo.append(g)
                elif orient[g] != want:
                    return False
    return True


def classify_surface(c: CellComplex2) -> str:
    if not c.is_closed() or not c.is_connected():
        raise SurfaceError("classification needs a closed connected surface")
    chi = euler_characteristic(c)
    if orientable(c):
        if chi % 2:
            raise SurfaceError(f"orientable surface with odd Euler characteristic {chi}")
        return f"S{(2 - chi) // 2}"
    return f"N{2 - chi}"


# ---------------------------------------------------------------------------
# orbits


def _flip_perm(ball: TessBall) -> Perm:
    return longest_perm(ball.degree)


def orbit_label(ball: TessBall, v: int) -> tuple:
    p = ball.perm[v]
    q = p * _flip_perm(ball)
    return min(tuple(p.images), tuple(q.images))


def vertex_orbits(ball: TessBall) -> dict[int, tuple]:
    if ball.radius < 6 and ball.degree == 4:
        raise ValueError("quotient needs a ball of radius >= 6")
    return {v: orbit_label(ball, v) for v in ball.vertices}


def _directed_key(ball: TessBall, v: int, g: Generator):
    p = ball.perm[v]
    q = p * _flip_perm(ball)
    n = ball.degree
    a = (tuple(p.images), (g.p, g.q))
    t = sigma_letter(g, n)
    b = (tuple(q.images), (t.p, t.q))
    return min(a, b)


def _corner_key(ball: TessBall, v: int, g: Generator, h: Generator):
    p = ball.perm[v]
    q = p * _flip_perm(ball)
    n = ball.degree
    a = (tuple(p.images), tuple(sorted([(g.p, g.q), (h.p, h.q)])))
    g2, h2 = sigma_letter(g, n), sigma_letter(h, n)
    b = (tuple(q.images), tuple(sorted([(g2.p, g2.q), (h2.p, h2.q)])))
    return min(a, b)


def quotient_complex(ball: TessBall) -> CellComplex2:
    labels = vertex_orbits(ball)
    names = sorted(set(labels.values()))
    vindex = {lab: k for k, lab in enumerate(names)}

    edge_index: dict = {}
    edges: list[tuple[int, int]] = []

    def edge_of(v, g):
        """(edge id, sign) for the directed edge leaving v along g."""
        u = ball.edge(v, g)
        fwd = _directed_key(ball, v, g)
        bwd = _directed_key(ball, u, g)
        key = min(fwd, bwd)
        if key not in edge_index:
            tail, head = (v, u) if fwd <= bwd else (u, v)
            edge_index[key] = len(edges)
            edges.append((vindex[labels[tail]], vindex[labels[head]]))
        e = edge_index[key]
        sign = 1 if fwd <= bwd else -1
        tail, head = edges[e]
        if (tail, head) != ((vindex[labels[v]], vindex[labels[u]]) if sign > 0 else (vindex[labels[u]], vindex[labels[v]])):
            raise SurfaceError("edge orbit representatives disagree on endpoints")
        return e, sign

    for v in ball.vertices:
        if ball.trusted(v):
            for g in ball.generators:
                edge_of(v, g)

    faces: list[list[tuple[int, int]]] = []
    seen = set()
    for sq in sorted(ball.squares):
        keys = []
        verts = [v for v, _ in sq]
        labs = [ball.generators[i] for _, i in sq]
        for j in range(4):
            # corner at verts[j] between the outgoing edge labs[j] and the incoming labs[j-1]
            keys.append(_corner_key(ball, verts[j], labs[j], labs[j - 1]))
        key = min(keys)
        if key in seen:
            continue
        seen.add(key)
        faces.append([edge_of(verts[j], labs[j]) for j in range(4)])
    c = CellComplex2(names, edges, faces, {lab: k for k, lab in enumerate(names)})
    c.check_boundaries()
    return c


def orbit_invariance(ball: TessBall, elements: list[PureElement], samples: int = 200) -> CheckReport:
    rep = CheckReport("orbit_invariance")
    labels = vertex_orbits(ball)
    bad = 0
    count = 0
    for e in elements:
        m = left_mult_map(ball, e.form)
        for v, t in list(m.items())[:samples]:
            count += 1
            if labels[v] != labels[t]:
                bad += 1
    rep.metrics["pairs"] = count
    rep.check("labels constant on orbits", bad == 0, f"{bad} mismatches")
    return rep


def surface_report(ball: TessBall) -> CheckReport:
    rep = CheckReport("quotient")
    c = quotient_complex(ball)
    V, E, F = c.counts
    chi = euler_characteristic(c)
    closed = c.is_closed()
    conn = c.is_connected()
    orient = orientable(c) if closed else None
    cls = classify_surface(c) if closed and conn else None
    rep.metrics.update(V=V, E=E, F=F, chi=chi, closed=closed, connected=conn,
                       orientable=orient, classification=cls, radius=ball.radius)
    rep.expected.update(V=12, E=30, F=15, chi=-3, orientable=False, classification="N5")
    rep.check("vertex count", V == 12, f"{V}")
    rep.check("edge count", E == 30, f"{E}")
    rep.check("face count", F == 15, f"{F}")
    rep.check("euler characteristic", chi == -3, f"{chi}")
    rep.check("closed", closed)
    rep.check("connected", conn)
    rep.check("non-orientable", orient is False)
    rep.check("classification", cls == "N5", f"{cls}")
    return rep


def alpha2_check(ball: TessBall, rt) -> CheckReport:
    """The curve alpha_2 corresponds to a pure, free, orientation-reversing element."""
    from .hypgeo import element_isometry

    rep = CheckReport("alpha2")
    w = expand(parse_gword(ALPHA2))
    f = split_form(w)
    # shortlex normal forms are geodesic, which keeps the trace inside the ball
    system = kb_complete(ball.presentation)
    f = SplitForm(rewrite(system, f.w), f.flip)
    rep.metrics["displacement"] = len(f.w)
    iso = element_isometry(rt, f)
    sq = iso @ iso
    rep.metrics["word"] = str(w)
    rep.metrics["split"] = f"{f.w} | flip={int(f.flip)}"
    rep.metrics["rev"] = iso.rev
    rep.expected.update(pure=True, fixed_points=0, rev=True, square_rev=False)
    rep.check("pure", is_pure(w))
    fp = fixed_points(ball, f)
    rep.metrics["fixed_points"] = len(fp)
    rep.check("fixed-point free on the ball", not fp)
    rep.check("orientation reversing", iso.rev)
    rep.check("square orientation preserving", not sq.rev)
    return rep


def relator_isometries(rt) -> CheckReport:
    """Each relator of the presentation acts as the identity isometry."""
    from .hypgeo import element_isometry

    rep = CheckReport("relator_isometries")
    for text in THEOREM_RELATORS:
        iso = element_isometry(rt, expand(parse_gword(text)))
        rep.check(f"{text} is the identity", iso.is_identity(), f"rev={iso.rev}")
    return rep
