"""The {4,5} tessellation realized in the hyperbolic plane.

Arithmetic happens in the upper half-plane (points are complex numbers with
positive imaginary part), isometries are SL(2,R) matrices with an
orientation flag, and the Dirichlet polygon is cut out in the Klein model
where bisectors are straight lines.  The unit disk is used for drawing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .pure import (
    LISTED_ELEMENTS,
    PureElement,
    element_key,
    format_gword,
    is_trivial_relator,
    listed_element,
    parse_gword,
    cyclic_class,
    OUTLINE_RELATORS,
    THEOREM_RELATORS,
)
from .report import CheckReport
from .tess import RadiusExceeded, TessBall, left_mult_map, trace
from .words import Generator, SplitForm, Word, sigma, sigma_letter, split_form, split_inverse, word_inverse

CENTER = 1j
LINK_ORDER = tuple(Generator(p, q) for p, q in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
EDGE_LENGTH = 2 * math.acosh(math.cos(math.pi / 4) / math.sin(math.pi / 5))
CORNER_ANGLE = 2 * math.pi / 5

ALGEBRAIC_TOL = 1e-9
GEOMETRIC_TOL = 1e-6


class GeometryError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# points


def hdist(z: complex, w: complex) -> float:
    return math.acosh(1 + abs(z - w) ** 2 / (2 * z.imag * w.imag))


def to_disk(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def from_disk(w: complex) -> complex:
    return 1j * (1 + w) / (1 - w)


def to_hyperboloid(z: complex) -> np.ndarray:
    w = to_disk(z)
    r2 = abs(w) ** 2
    return np.array([1 + r2, 2 * w.real, 2 * w.imag]) / (1 - r2)


def to_klein(z: complex) -> complex:
    w = to_disk(z)
    return 2 * w / (1 + abs(w) ** 2)


def from_klein(k: complex) -> complex:
    r2 = abs(k) ** 2
    if r2 >= 1:
        raise GeometryError("Klein point outside the disk")
    return from_disk(k / (1 + math.sqrt(1 - r2)))


def direction(p: complex, q: complex) -> float:
    """Angle of the unit tangent at p of the geodesic towards q."""
    x, y = p.real, p.imag
    qq = (q - x) / y
    return cmath.phase(to_disk(qq)) + math.pi / 2


def corner_angle(p: complex, a: complex, b: complex) -> float:
    """Angle at p between the geodesics to a and b (law of cosines)."""
    da, db, dab = hdist(p, a), hdist(p, b), hdist(a, b)
    c = (math.cosh(da) * math.cosh(db) - math.cosh(dab)) / (math.sinh(da) * math.sinh(db))
    return math.acos(max(-1.0, min(1.0, c)))


# ---------------------------------------------------------------------------
# isometries


def _flipmat(m: np.ndarray) -> np.ndarray:
    # rho m rho for rho(z) = -conj(z)
    return np.array([[m[0, 0], -m[0, 1]], [-m[1, 0], m[1, 1]]])


@dataclass(frozen=True)
class HIso:
    """z -> m.z, pre-composed with z -> -conj(z) when ``rev`` is set."""

    m: np.ndarray
    rev: bool = False

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        det = np.linalg.det(m)
        if abs(abs(det) - 1) > 1e-6:
            raise ValueError(f"|det| must be 1, got {det}")
        if det < 0:
            # det -1 matrices act by z -> m.conj(z)
            m = m @ np.diag([-1.0, 1.0])
            object.__setattr__(self, "rev", not self.rev)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "rev", bool(self.rev))

    @classmethod
    def identity(cls) -> HIso:
        return cls(np.eye(2))

    def __call__(self, z: complex) -> complex:
        if self.rev:
            z = -z.conjugate()
        a, b, c, d = self.m.ravel()
        return (a * z + b) / (c * z + d)

    def __matmul__(self, other: HIso) -> HIso:
        m2 = _flipmat(other.m) if self.rev else other.m
        return HIso(self.m @ m2, self.rev != other.rev)

    def inverse(self) -> HIso:
        inv = np.linalg.inv(self.m)
        return HIso(_flipmat(inv) if self.rev else inv, self.rev)

    def close_to(self, other: HIso, tol: float = ALGEBRAIC_TOL) -> bool:
        if self.rev != other.rev:
            return False
        d = min(np.abs(self.m - other.m).max(), np.abs(self.m + other.m).max())
        return d < tol * max(1.0, np.abs(self.m).max())

    def is_identity(self, tol: float = ALGEBRAIC_TOL) -> bool:
        return self.close_to(HIso.identity(), tol)


def rotation(alpha: float) -> HIso:
    """Rotation by ``alpha`` about i."""
    c, s = math.cos(alpha / 2), math.sin(alpha / 2)
    return HIso(np.array([[c, s], [-s, c]]))


def translation_to(p: complex) -> HIso:
    r = math.sqrt(p.imag)
    return HIso(np.array([[r, p.real / r], [0.0, 1 / r]]))


MIRROR = HIso(np.array([[0.0, 1.0], [-1.0, 0.0]]), True)   # z -> 1/conj(z), fixes direction 0 at i


def frame(p: complex, alpha: float) -> HIso:
    """Isometry taking i to p and the direction 0 at i to ``alpha`` at p."""
    return translation_to(p) @ rotation(alpha)


def point_at(p: complex, alpha: float, d: float) -> complex:
    return frame(p, alpha - math.pi / 2)(1j * math.exp(d))


def reflection_through(p: complex, q: complex) -> HIso:
    f = frame(p, direction(p, q))
    return f @ MIRROR @ f.inverse()


# ---------------------------------------------------------------------------
# realization


@dataclass(eq=False)
class RealizedTess:
    ball: TessBall
    pos: list[complex]
    frames: list[HIso]
    gen_iso: dict[Generator, HIso]
    flip_iso: HIso
    edge_length: float = EDGE_LENGTH
    angles: dict[Generator, float] = field(default_factory=dict)


def root_link(ball: TessBall) -> tuple[Generator, ...]:
    """Cyclic order of generators around the root, read from the squares."""
    adj: dict[Generator, set[Generator]] = {g: set() for g in ball.generators}
    for sq in ball.squares:
        k = len(sq)
        for j, (v, i) in enumerate(sq):
            if v == ball.root:
                prev_label = sq[(j - 1) % k][1]
                a, b = ball.generators[i], ball.generators[prev_label]
                adj[a].add(b)
                adj[b].add(a)
    if any(len(s) != 2 for s in adj.values()):
        raise GeometryError("root link is not a cycle")
    order = [LINK_ORDER[0]]
    nxt = LINK_ORDER[1]
    if nxt not in adj[order[0]]:
        raise GeometryError("link order disagrees with the relator corners")
    while nxt != order[0]:
        order.append(nxt)
        cand = [g for g in adj[nxt] if g != order[-2]]
        nxt = cand[0]
    return tuple(order)


def _common_neighbour(ball: TessBall, a: int, b: int, exclude: int) -> int:
    common = set(ball.neighbours(a)) & set(ball.neighbours(b))
    common.discard(exclude)
    if len(common) != 1:
        raise GeometryError("square corner is not unique")
    return common.pop()


def realize(ball: TessBall, tol: float = ALGEBRAIC_TOL) -> RealizedTess:
    if ball.presentation.name != "j4-23" or ball.radius < 6:
        raise ValueError("realize needs a C_4^{[2,3]} ball of radius >= 6")
    link = root_link(ball)
    if link != LINK_ORDER:
        raise GeometryError(f"unexpected root link {link}")
    theta = {g: 2 * math.pi * k / 5 for k, g in enumerate(link)}
    root = ball.root
    nbr = {g: ball.edge(root, g) for g in link}
    p = {g: point_at(CENTER, theta[g], EDGE_LENGTH) for g in link}

    gen_iso = {}
    for k, s in enumerate(link):
        u = link[(k + 1) % 5]
        x = _common_neighbour(ball, nbr[s], nbr[u], root)
        u_at_s = next(g for g in link if ball.edge(nbr[s], g) == x)
        px = reflection_through(p[s], p[u])(CENTER)
        phi = direction(p[s], CENTER)
        delta = math.remainder(direction(p[s], px) - phi, 2 * math.pi)
        if abs(abs(delta) - CORNER_ANGLE) > 1e-9:
            raise GeometryError("square corner angle is off")
        j = link.index(s)
        same_order = (u_at_s == link[(j + 1) % 5]) == (delta > 0)
        gen_iso[s] = frame(p[s], phi) @ (HIso.identity() if same_order else MIRROR) @ frame(CENTER, theta[s]).inverse()

    # conjugation by s14 as an isometry fixing the root
    s0 = link[0]
    image = [sigma_letter(g, 4) for g in link]
    step = (link.index(image[1]) - link.index(image[0])) % 5
    flip_rev = step != 1
    flip_iso = frame(CENTER, theta[image[0]]) @ (MIRROR if flip_rev else HIso.identity()) @ frame(CENTER, theta[s0]).inverse()
    for g in link:
        if abs(flip_iso(p[g]) - p[sigma_letter(g, 4)]) > tol:
            raise GeometryError("flip isometry does not match the relabelling")

    frames: list[HIso] = [HIso.identity()] * len(ball)
    for v in ball.vertices:
        if v == root:
            continue
        par, i = ball.parent[v]
        frames[v] = frames[par] @ gen_iso[ball.generators[i]]
    pos = [f(CENTER) for f in frames]
    rt = RealizedTess(ball, pos, frames, gen_iso, flip_iso)
    _check_closure(rt, tol)
    return rt


def _check_closure(rt: RealizedTess, tol: float):
    ball = rt.ball
    for v in ball.vertices:
        if not ball.trusted(v):
            continue
        for i, g in enumerate(ball.generators):
            u = ball.edges[v][i]
            q = (rt.frames[v] @ rt.gen_iso[g])(CENTER)
            if hdist(q, rt.pos[u]) > tol:
                raise GeometryError(f"closure failure at vertex {v} along {g}")
            if abs(hdist(rt.pos[v], rt.pos[u]) - EDGE_LENGTH) > tol:
                raise GeometryError(f"edge length off at vertex {v} along {g}")


def square_angles(rt: RealizedTess) -> list[float]:
    out = []
    for sq in rt.ball.squares:
        verts = [v for v, _ in sq]
        for j in range(4):
            out.append(corner_angle(rt.pos[verts[j]], rt.pos[verts[j - 1]], rt.pos[verts[(j + 1) % 4]]))
    return out


def generator_isometry(rt: RealizedTess, s: Generator, tol: float = ALGEBRAIC_TOL) -> HIso:
    """Isometry of left multiplication by ``s``, validated on the whole vertex map."""
    m = rt.gen_iso[s]
    vmap = left_mult_map(rt.ball, Word((s,), 4))
    for v, t in vmap.items():
        if hdist(m(rt.pos[v]), rt.pos[t]) > tol:
            raise GeometryError(f"{s} isometry disagrees with the vertex map at {v}")
    return m


def element_isometry(rt: RealizedTess, w: Word | SplitForm) -> HIso:
    """Composite isometry of the action of w = u s14^flip: v -> u sigma^flip(v)."""
    f = w if isinstance(w, SplitForm) else split_form(w)
    out = HIso.identity()
    for g in f.w:
        out = out @ rt.gen_iso[g]
    if f.flip:
        out = out @ rt.flip_iso
    return out


# ---------------------------------------------------------------------------
# Dirichlet polygon


@dataclass
class Side:
    start: complex
    end: complex
    key: tuple[int, bool]
    name: str


@dataclass
class DirichletDomain:
    center: complex
    vertices: list[complex]
    sides: list[Side]              # side k runs from vertex k to vertex k+1
    angles: list[float]            # interior angle at vertex k
    isometries: dict[tuple[int, bool], HIso]
    inverse_key: dict[tuple[int, bool], tuple[int, bool]]
    forms: dict[tuple[int, bool], SplitForm]
    kind: str = "cellular"
    vertex_ids: list[int] | None = None
    piece_count: int = 0
    area: float | None = None

    def side_index(self, key) -> int:
        return next(k for k, s in enumerate(self.sides) if s.key == key)


def generator_names(ball: TessBall) -> dict[tuple[int, bool], str]:
    names = {}
    for i in LISTED_ELEMENTS:
        g = listed_element(i)
        names[element_key(ball, g)] = f"g{i}"
        names[element_key(ball, word_inverse(g))] = f"g{i}^-1"
    return names


def _clip(poly, a, b, c, tag, eps=1e-13):
    out = []
    n = len(poly)
    for k in range(n):
        P, lab = poly[k]
        Q, _ = poly[(k + 1) % n]
        fp = a * P.real + b * P.imag + c
        fq = a * Q.real + b * Q.imag + c
        if fp >= -eps:
            out.append((P, lab))
            if fq < -eps and fp > eps:
                t = fp / (fp - fq)
                out.append((P + t * (Q - P), tag))
            elif fq < -eps:
                out[-1] = (P, tag)
        elif fq > eps:
            t = fp / (fp - fq)
            out.append((P + t * (Q - P), lab))
    return out


def _cleanup(poly, eps=1e-10):
    changed = True
    while changed and len(poly) > 2:
        changed = False
        for k in range(len(poly)):
            P, _ = poly[k]
            Q, _ = poly[(k + 1) % len(poly)]
            if abs(P - Q) < eps:
                # drop the degenerate edge leaving P
                lab_next = poly[(k + 1) % len(poly)][1]
                poly = poly[:k] + [(P, lab_next)] + poly[k + 2:] if k + 1 < len(poly) else [(P, lab_next)] + poly[1:k]
                changed = True
                break
    return poly


def _register(rt, pures):
    ball = rt.ball
    isos, forms, inv_key = {}, {}, {}
    for e in pures:
        if e.key == (ball.root, False):
            continue
        iso = element_isometry(rt, e.form)
        if hdist(iso(CENTER), rt.pos[e.vertex]) > ALGEBRAIC_TOL:
            raise GeometryError("orbit point disagrees with the vertex position")
        isos[e.key] = iso
        forms[e.key] = e.form
        inv_key[e.key] = element_key(ball, split_inverse(e.form))
    return isos, forms, inv_key


def dirichlet(rt: RealizedTess, pures: list[PureElement], names: dict | None = None,
              metric: str = "cellular") -> DirichletDomain:
    """Dirichlet polygon centred at the root for the orbit points of ``pures``.

    ``metric="cellular"`` measures distance in the combinatorial (l1) metric of
    the square complex, so bisectors run along edges and square diagonals.
    ``metric="hyperbolic"`` uses perpendicular bisectors in the hyperbolic plane.
    """
    if metric == "cellular":
        return _cellular_dirichlet(rt, pures, names or {})
    if metric == "hyperbolic":
        return _hyperbolic_dirichlet(rt, pures, names or {})
    raise ValueError(f"unknown metric {metric!r}")


def _hyperbolic_dirichlet(rt, pures, names):
    C = to_hyperboloid(CENTER)
    poly = [(complex(-1.5, -1.5), None), (complex(1.5, -1.5), None),
            (complex(1.5, 1.5), None), (complex(-1.5, 1.5), None)]
    isos, forms, inv_key = _register(rt, pures)
    for key in isos:
        P = to_hyperboloid(rt.pos[key[0]])
        d = C - P
        # <X, C - P> >= 0 with <X,Y> = -x0 y0 + x1 y1 + x2 y2, X ~ (1, k1, k2)
        poly = _clip(poly, d[1], d[2], -d[0], key)
    poly = _cleanup(poly)
    if any(lab is None for _, lab in poly):
        raise GeometryError("polygon is unbounded")
    verts = [from_klein(P) for P, _ in poly]
    n = len(verts)
    sides = []
    for k in range(n):
        key = poly[k][1]
        sides.append(Side(verts[k], verts[(k + 1) % n], key, names.get(key, str(forms[key]))))
    angles = [corner_angle(verts[k], verts[k - 1], verts[(k + 1) % n]) for k in range(n)]
    return DirichletDomain(CENTER, verts, sides, angles, isos, inv_key, forms, "hyperbolic")


def orbit_distances(rt: RealizedTess, keys, forms) -> dict:
    """key -> {v: d(v, g.e)} computed as the level of g^-1 v."""
    ball = rt.ball
    out = {}
    for key in keys:
        m = left_mult_map(ball, split_inverse(forms[key]))
        out[key] = {v: ball.level[t] for v, t in m.items()}
    return out


def _ccw(rt, vs):
    pts = [to_disk(rt.pos[v]) for v in vs]
    area = sum((pts[k].conjugate() * pts[(k + 1) % len(pts)]).imag for k in range(len(pts)))
    return list(vs) if area > 0 else list(reversed(vs))


def _cellular_dirichlet(rt, pures, names):
    ball = rt.ball
    isos, forms, inv_key = _register(rt, pures)
    dist = orbit_distances(rt, list(isos), forms)
    reach = max(e.displacement for e in pures) // 2 + 1

    def delta(v):
        others = [d[v] for d in dist.values() if v in d]
        if len(others) < len(dist):
            raise GeometryError(f"orbit distances undefined at vertex {v}; radius too small")
        return ball.level[v] - min(others)

    pieces = []
    for sq in ball.squares:
        vs = [v for v, _ in sq]
        if min(ball.level[v] for v in vs) >= reach:
            continue
        ds = [delta(v) for v in vs]
        if all(d <= 0 for d in ds):
            pieces.append(_ccw(rt, vs))
        elif any(d < 0 for d in ds):
            half = None
            for j in range(4):
                a, b, c, d = j, (j + 1) % 4, (j + 2) % 4, (j + 3) % 4
                if ds[a] == 0 and ds[c] == 0 and ds[b] < 0 and ds[d] > 0:
                    half = [vs[a], vs[b], vs[c]]
            if half is None:
                raise GeometryError(f"square with corner pattern {ds} is not cut along a diagonal")
            pieces.append(_ccw(rt, half))
    inside = {v for piece in pieces for v in piece}
    segs = {}
    for piece in pieces:
        for k in range(len(piece)):
            segs[(piece[k], piece[(k + 1) % len(piece)])] = True
    boundary = {u: v for (u, v) in segs if (v, u) not in segs}
    if len(boundary) != sum(1 for (u, v) in segs if (v, u) not in segs):
        raise GeometryError("boundary is not a simple cycle")
    start = min(boundary, key=lambda v: (ball.level[v], v))
    cycle = [start]
    while boundary[cycle[-1]] != start:
        cycle.append(boundary[cycle[-1]])
        if len(cycle) > len(boundary):
            raise GeometryError("boundary does not close")
    if len(cycle) != len(boundary):
        raise GeometryError("region boundary has several components")

    def tag(u, v):
        hits = [k for k, d in dist.items() if d.get(u) == ball.level[u] and d.get(v) == ball.level[v]]
        if len(hits) > 1:
            # several bisectors through an edge: keep the orbit point that wins
            # on the square just outside
            outside = [w for sq in ball.squares for w, _ in sq
                       if {u, v} <= {x for x, _ in sq} and not set(x for x, _ in sq) <= set(inside)
                       and w not in (u, v)]
            hits = [k for k in hits if all(dist[k].get(w, 1 << 30) < ball.level[w] for w in outside)]
        if len(hits) != 1:
            raise GeometryError(f"side {u}-{v} lies on {len(hits)} bisectors")
        return hits[0]

    corners: dict[int, float] = {}
    for piece in pieces:
        for k, v in enumerate(piece):
            corners[v] = corners.get(v, 0.0) + corner_angle(
                rt.pos[v], rt.pos[piece[k - 1]], rt.pos[piece[(k + 1) % len(piece)]])
    n = len(cycle)
    tags = [tag(cycle[k], cycle[(k + 1) % n]) for k in range(n)]
    # merge consecutive boundary segments on the same bisector
    keep = [k for k in range(n) if tags[k - 1] != tags[k]]
    ids = [cycle[k] for k in keep]
    verts = [rt.pos[v] for v in ids]
    m = len(ids)
    sides = [Side(verts[k], verts[(k + 1) % m], tags[keep[k]], names.get(tags[keep[k]], str(forms[tags[keep[k]]])))
             for k in range(m)]
    angles = [corners[v] for v in ids]
    D = DirichletDomain(CENTER, verts, sides, angles, isos, inv_key, forms, "cellular")
    D.vertex_ids = ids
    D.piece_count = len(pieces)
    D.area = sum(
        math.pi * (len(p) - 2) - sum(corner_angle(rt.pos[p[k]], rt.pos[p[k - 1]], rt.pos[p[(k + 1) % len(p)]])
                                     for k in range(len(p)))
        for p in pieces)
    return D


def interference_check(rt: RealizedTess, D: DirichletDomain, pures: list[PureElement],
                       ball: TessBall | None = None) -> CheckReport:
    """No orbit point of ``pures`` is strictly closer to a corner of D than the centre.

    For the cellular polygon distances are read in ``ball`` (which may be larger
    than the realized one) by tracing g^-1 v.
    """
    rep = CheckReport("interference")
    ball = ball or rt.ball
    forms = [e.form for e in pures if e.displacement > 0]
    if D.kind == "cellular":
        worst = None
        for v in D.vertex_ids:
            word = rt.ball.geodesic(v)
            lv = len(word)
            for f in forms:
                inv = split_inverse(f)
                moved = inv.w * (sigma(word) if inv.flip else word)
                try:
                    d = ball.level[trace(ball, moved)]
                except RadiusExceeded:
                    rep.check("orbit distances defined", False, f"vertex {v}")
                    continue
                worst = d - lv if worst is None else min(worst, d - lv)
        rep.metrics["min_gap"] = worst
        rep.check("no orbit point closer to a corner than the centre", worst is not None and worst >= 0)
    else:
        pts = [element_isometry(rt, f)(CENTER) for f in forms]
        worst = min(hdist(z, q) - hdist(z, CENTER) for z in D.vertices for q in pts)
        rep.metrics["min_gap"] = worst
        rep.check("no orbit point closer to a corner than the centre", worst >= -GEOMETRIC_TOL)
    rep.metrics["orbit_points"] = len(forms)
    return rep


def nearest_vertex(rt: RealizedTess, z: complex, tol: float = GEOMETRIC_TOL) -> int | None:
    best, arg = None, None
    for v, p in enumerate(rt.pos):
        d = hdist(z, p)
        if best is None or d < best:
            best, arg = d, v
    return arg if best is not None and best < tol else None


def classify_sides(rt: RealizedTess, D: DirichletDomain) -> list[str]:
    """'edge', 'diagonal' (opposite corners of a square) or 'other' per side."""
    ball = rt.ball
    out = []
    for s in D.sides:
        a, b = nearest_vertex(rt, s.start), nearest_vertex(rt, s.end)
        if a is None or b is None:
            out.append("other")
        elif b in ball.neighbours(a):
            out.append("edge")
        elif any({a, b} <= {v for v, _ in sq} for sq in ball.squares):
            out.append("diagonal")
        else:
            out.append("other")
    return out


def vertex_cycles(D: DirichletDomain, tol: float = GEOMETRIC_TOL):
    """Cycles of polygon vertices under the side pairings.

    Each entry is (vertex indices, angle sum, keys of the pairings applied in
    order).  The pairing attached to side(g) is g^-1, which carries it onto
    side(g^-1).
    """
    n = len(D.vertices)
    seen = set()
    cycles = []
    for k0 in range(n):
        if k0 in seen:
            continue
        state = (k0, k0)
        verts, keys = [], []
        while True:
            k, j = state
            verts.append(k)
            seen.add(k)
            inv = D.inverse_key[D.sides[j].key]
            T = D.isometries[inv]
            jp = D.side_index(inv)
            img = T(D.vertices[k])
            ends = [jp, (jp + 1) % n]
            m = min(ends, key=lambda e: hdist(img, D.vertices[e]))
            if hdist(img, D.vertices[m]) > tol:
                raise GeometryError("pairing does not map a vertex onto a vertex")
            keys.append(inv)
            other = (m - 1) % n if jp == m else m
            state = (m, other)
            if state == (k0, k0):
                break
            if len(verts) > n:
                raise GeometryError("vertex cycle does not close")
        cycles.append((verts, sum(D.angles[v] for v in verts), keys))
    return cycles


def poincare_check(rt: RealizedTess, D: DirichletDomain, names: dict | None = None,
                   tol: float = GEOMETRIC_TOL) -> CheckReport:
    rep = CheckReport("poincare_check")
    names = names or {}
    n = len(D.sides)
    keys = [s.key for s in D.sides]
    rep.check("each pairing element tags one side", len(set(keys)) == n)
    for s in D.sides:
        inv = D.inverse_key[s.key]
        rep.check(f"side {s.name} paired", inv in keys)
        rep.check(f"pairing of {s.name} is fixed-point free", inv != s.key)
        if inv not in keys:
            continue
        T = D.isometries[inv]
        j = D.side_index(inv)
        target = [D.vertices[j], D.vertices[(j + 1) % n]]
        imgs = [T(s.start), T(s.end)]
        ok = all(min(hdist(z, t) for t in target) < tol for z in imgs)
        rep.check(f"{s.name} maps onto its partner", ok)
    if not rep.passed:
        return rep
    cycles = vertex_cycles(D, tol)
    rep.metrics["cycles"] = []
    relator_classes = []
    ball = rt.ball
    for verts, total, used in cycles:
        word = tuple(reversed(used))
        gword = []
        for key in word:
            nm = names.get(key)
            if nm is not None:
                gword.extend(parse_gword(nm))
        product = SplitForm(Word((), 4), False)
        iso = HIso.identity()
        for key in word:
            product = product * D.forms[key]
            iso = iso @ D.isometries[key]
        rep.check(f"cycle {verts} angle sum 2pi", abs(total - 2 * math.pi) < tol, f"sum {total}")
        rep.check(f"cycle {verts} isometry is the identity", iso.is_identity(tol))
        rep.check(f"cycle {verts} relator trivial in J4", is_trivial_relator(ball, product.full_word()))
        named = len(gword) == len(word)
        if named:
            relator_classes.append(cyclic_class(tuple(gword)))
        rep.metrics["cycles"].append({
            "vertices": verts,
            "angles": [D.angles[v] for v in verts],
            "angle_sum": total,
            "relator": format_gword(gword) if named else None,
        })
    outline = {cyclic_class(parse_gword(t)) for t in OUTLINE_RELATORS}
    theorem = {cyclic_class(parse_gword(t)) for t in THEOREM_RELATORS}
    rep.metrics["cycle_count"] = len(cycles)
    rep.metrics["cycle_relators_in_outline_list"] = sum(1 for c in relator_classes if c in outline)
    rep.metrics["cycle_relators_in_theorem_list"] = sum(1 for c in relator_classes if c in theorem)
    rep.expected["cycle_count"] = 6
    rep.check("cycle relators reproduce the relator list",
              len(relator_classes) == len(cycles) and set(relator_classes) == outline,
              "cycle relators differ from the listed relators")
    return rep


# ---------------------------------------------------------------------------
# SVG


def _svg_point(w: complex, size: float = 1000.0, margin: float = 20.0):
    r = size / 2 - margin
    return (size / 2 + r * w.real, size / 2 - r * w.imag)


def _geodesic_path(a: complex, b: complex, size: float = 1000.0, margin: float = 20.0) -> str:
    """SVG path for the disk geodesic from a to b (disk coordinates)."""
    ax, ay = _svg_point(a, size, margin)
    bx, by = _svg_point(b, size, margin)
    cross = a.real * b.imag - a.imag * b.real
    if abs(cross) < 1e-9:
        return f"M {ax:.3f} {ay:.3f} L {bx:.3f} {by:.3f}"
    M = np.array([[a.real, a.imag], [b.real, b.imag]])
    rhs = np.array([(abs(a) ** 2 + 1) / 2, (abs(b) ** 2 + 1) / 2])
    cx, cy = np.linalg.solve(M, rhs)
    rad = math.sqrt(cx * cx + cy * cy - 1) * (size / 2 - margin)
    sx, sy = _svg_point(complex(cx, cy), size, margin)
    sweep = 1 if (ax - sx) * (by - sy) - (ay - sy) * (bx - sx) > 0 else 0
    return f"M {ax:.3f} {ay:.3f} A {rad:.3f} {rad:.3f} 0 0 {sweep} {bx:.3f} {by:.3f}"


def render_svg(rt: RealizedTess, D: DirichletDomain | None = None, depth: int = 2) -> str:
    ball = rt.ball
    size = 1000.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size:.0f} {size:.0f}" '
        f'width="{size:.0f}" height="{size:.0f}">',
        '<circle cx="500" cy="500" r="480" fill="none" stroke="#888" stroke-width="1"/>',
    ]
    disk = [to_disk(z) for z in rt.pos]
    drawn = [v for v in ball.vertices if ball.level[v] <= depth]
    edges = set()
    for v in drawn:
        for u in ball.neighbours(v):
            edges.add((min(u, v), max(u, v)))
    parts.append('<g class="edges" fill="none" stroke="#333" stroke-width="1.2">')
    for u, v in sorted(edges):
        parts.append(f'<path d="{_geodesic_path(disk[u], disk[v])}"/>')
    parts.append("</g>")
    parts.append('<g class="vertices" fill="#000">')
    for v in drawn:
        x, y = _svg_point(disk[v])
        parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3"/>')
    parts.append("</g>")
    if D is not None:
        dv = [to_disk(z) for z in D.vertices]
        path = []
        for k in range(len(dv)):
            seg = _geodesic_path(dv[k], dv[(k + 1) % len(dv)])
            path.append(seg if k == 0 else seg.split(" ", 3)[3])
        parts.append(f'<path class="dirichlet" d="{" ".join(path)} Z" fill="rgba(200,40,40,0.12)" '
                     'stroke="#c22" stroke-width="2.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
