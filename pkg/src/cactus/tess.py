"""Radius-R balls of the Cayley 2-complexes C_3^{[2]}, C_3 and C_4^{[2,3]}.

The ball is built by breadth-first definition of edges plus closure of the
length-4 relator squares, with union-find identification of vertices that
the squares force together (coset-enumeration style).  Inside the trusted
region (levels < radius) the result is the exact Cayley graph, so it serves
as the word-problem, distance and growth oracle for everything else.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .words import (
    Generator,
    Perm,
    Presentation,
    SplitForm,
    Word,
    generator_perm,
    sigma_letter,
)

SUPPORTED = {"j3-2", "j3", "j4-23"}


class InconsistencyError(RuntimeError):
    """Square closure tried to identify two vertices that cannot be equal."""


class RadiusExceeded(ValueError):
    """A walk left the trusted (fully saturated) part of the ball."""


@dataclass(eq=False)
class TessBall:
    presentation: Presentation
    radius: int
    generators: tuple[Generator, ...]
    edges: list[list[int]]          # edges[v][i] = neighbour along generators[i], or -1
    level: list[int]
    perm: list[Perm]
    parent: list[tuple[int, int]]   # (parent vertex, generator index); root -> (-1, -1)
    squares: frozenset[tuple[tuple[int, int], ...]]
    root: int = 0
    _index: dict[Generator, int] = field(default_factory=dict, repr=False)
    _words: dict[int, Word] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {g: i for i, g in enumerate(self.generators)}

    @property
    def degree(self) -> int:
        return self.presentation.degree

    @property
    def vertices(self) -> range:
        return range(len(self.level))

    def __len__(self):
        return len(self.level)

    def gen_index(self, g: Generator) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise ValueError(f"{g} is not a generator of {self.presentation.name or 'this group'}") from None

    def edge(self, v: int, g: Generator) -> int:
        return self.edges[v][self.gen_index(g)]

    def trusted(self, v: int) -> bool:
        return self.level[v] < self.radius

    def geodesic(self, v: int) -> Word:
        """Geodesic word from the root (BFS tree, smallest generator first)."""
        w = self._words.get(v)
        if w is None:
            letters = []
            u = v
            while u != self.root:
                u, i = self.parent[u]
                letters.append(self.generators[i])
            w = Word(tuple(reversed(letters)), self.degree)
            self._words[v] = w
        return w

    def edge_count(self) -> int:
        return sum(1 for row in self.edges for t in row if t >= 0) // 2

    def neighbours(self, v: int) -> list[int]:
        return [t for t in self.edges[v] if t >= 0]


def _relator_rotations(pres: Presentation, index: dict[Generator, int]) -> list[tuple[int, ...]]:
    rots = set()
    for r in pres.long_relators():
        if len(r) != 4:
            raise ValueError(f"only length-4 relators are supported, got {r}")
        letters = [index[g] for g in r.letters]
        for seq in (letters, letters[::-1]):
            for k in range(4):
                rots.add(tuple(seq[k:] + seq[:k]))
    return sorted(rots)


def build_ball(pres: Presentation, radius: int) -> TessBall:
    """Ball of radius ``radius`` about the identity in the Cayley complex of ``pres``."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if pres.name and pres.name not in SUPPORTED:
        raise ValueError(f"balls are only validated for {sorted(SUPPORTED)}")
    n = pres.degree
    gens = pres.generators
    ng = len(gens)
    index = {g: i for i, g in enumerate(gens)}
    gperm = [generator_perm(g, n) for g in gens]
    rotations = _relator_rotations(pres, index)

    table: list[list[int]] = []
    level: list[int] = []
    perm: list[Perm] = []
    rep: list[int] = []

    def find(x: int) -> int:
        root = x
        while rep[root] != root:
            root = rep[root]
        while rep[x] != root:
            rep[x], x = root, rep[x]
        return root

    def new_vertex(lvl: int, p: Perm) -> int:
        table.append([-1] * ng)
        level.append(lvl)
        perm.append(p)
        rep.append(len(rep))
        return len(rep) - 1

    def define(v: int, i: int) -> int:
        w = new_vertex(level[v] + 1, perm[v] * gperm[i])
        table[v][i] = w
        table[w][i] = v
        return w

    def link(a: int, i: int, b: int):
        table[a][i] = b
        table[b][i] = a

    def coincidence(a: int, b: int):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = find(a), find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            if perm[a] != perm[b]:
                raise InconsistencyError(f"merging vertices with permutations {perm[a]} and {perm[b]}")
            if level[a] != level[b]:
                raise InconsistencyError(f"merging vertices at levels {level[a]} and {level[b]}")
            rep[b] = a
            for i in range(ng):
                t = table[b][i]
                if t < 0:
                    continue
                t = find(t)
                u = table[a][i]
                if u < 0:
                    link(a, i, t)
                else:
                    u = find(u)
                    if u != t:
                        queue.append((u, t))
                    else:
                        table[a][i] = u
                        table[t][i] = a

    new_vertex(0, Perm.identity(n))
    v = 0
    while v < len(rep):
        if find(v) != v or level[v] >= radius:
            v += 1
            continue
        for i in range(ng):
            if table[v][i] < 0:
                define(v, i)
        for a, b, c, d in rotations:
            cur = find(v)
            if cur != v:
                break
            x = find(table[v][a])
            y = table[x][b]
            y = define(x, b) if y < 0 else find(y)
            z = find(table[v][d])
            yc = table[y][c]
            if yc < 0:
                zc = table[z][c]
                if zc < 0:
                    link(y, c, z)
                else:
                    coincidence(find(zc), y)
            elif find(yc) != z:
                coincidence(find(yc), z)
        v += 1

    return _compact(pres, radius, gens, gperm, table, level, perm, find)


def _compact(pres, radius, gens, gperm, table, level, perm, find) -> TessBall:
    ng = len(gens)
    old_to_new = {0: 0}
    order = [0]
    parent = [(-1, -1)]
    new_level = [0]
    queue = deque([0])
    while queue:
        u = queue.popleft()
        if new_level[old_to_new[u]] >= radius:
            continue
        for i in range(ng):
            t = table[u][i]
            if t < 0:
                raise InconsistencyError("trusted vertex with an undefined edge")
            t = find(t)
            if t not in old_to_new:
                old_to_new[t] = len(order)
                order.append(t)
                parent.append((old_to_new[u], i))
                new_level.append(new_level[old_to_new[u]] + 1)
                queue.append(t)

    edges = []
    for u in order:
        row = []
        for i in range(ng):
            t = table[u][i]
            row.append(old_to_new.get(find(t), -1) if t >= 0 else -1)
        edges.append(row)
    for u, new in old_to_new.items():
        if level[u] != new_level[new]:
            raise InconsistencyError(f"provisional level {level[u]} disagrees with BFS level {new_level[new]}")

    ball = TessBall(
        presentation=pres,
        radius=radius,
        generators=tuple(gens),
        edges=edges,
        level=new_level,
        perm=[perm[u] for u in order],
        parent=parent,
        squares=frozenset(),
    )
    ball.squares = frozenset(_collect_squares(ball))
    _check_edges(ball, gperm)
    return ball


def _square_key(flags: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    # flags: (vertex, generator index of the edge leaving it) around the cycle
    k = len(flags)
    variants = []
    for r in range(k):
        variants.append(tuple(flags[r:] + flags[:r]))
    verts = [f[0] for f in flags]
    labels = [f[1] for f in flags]
    # reverse traversal: vertex i is entered by label i-1
    rev = [(verts[(-j) % k], labels[(-j - 1) % k]) for j in range(k)]
    for r in range(k):
        variants.append(tuple(rev[r:] + rev[:r]))
    return min(variants)


def _collect_squares(ball: TessBall):
    pres = ball.presentation
    rotations = _relator_rotations(pres, ball._index)
    for v in ball.vertices:
        if not ball.trusted(v):
            continue
        for rot in rotations:
            flags = []
            cur = v
            ok = True
            for i in rot:
                nxt = ball.edges[cur][i]
                if nxt < 0:
                    ok = False
                    break
                flags.append((cur, i))
                cur = nxt
            if not ok:
                continue
            if cur != v:
                raise InconsistencyError(f"relator square at vertex {v} does not close")
            yield _square_key(flags)


def _check_edges(ball: TessBall, gperm: list[Perm]):
    for v in ball.vertices:
        for i, t in enumerate(ball.edges[v]):
            if t < 0:
                continue
            if ball.edges[t][i] != v:
                raise InconsistencyError(f"edge label {ball.generators[i]} is not involutive at {v}")
            if abs(ball.level[t] - ball.level[v]) > 1:
                raise InconsistencyError("edge joins levels differing by more than one")
            if ball.perm[t] != ball.perm[v] * gperm[i]:
                raise InconsistencyError("permutation tags disagree across an edge")


# ---------------------------------------------------------------------------
# queries


def _letter_indices(ball: TessBall, w: Word) -> list[int]:
    return [ball.gen_index(g) for g in w.letters]


def walk(ball: TessBall, start: int, indices) -> int:
    v = start
    for i in indices:
        if not ball.trusted(v):
            raise RadiusExceeded(f"walk leaves the trusted region (radius {ball.radius})")
        v = ball.edges[v][i]
    return v


def trace(ball: TessBall, w: Word) -> int:
    """Endpoint of the path from the root spelled by ``w``."""
    return walk(ball, ball.root, _letter_indices(ball, w))


def wp_equal(ball: TessBall, u: Word, v: Word) -> bool:
    return trace(ball, u) == trace(ball, v)


def distance(ball: TessBall, w: Word) -> int:
    return ball.level[trace(ball, w)]


def sphere_sizes(ball: TessBall) -> list[int]:
    counts = [0] * ball.radius
    for lv in ball.level:
        if lv < ball.radius:
            counts[lv] += 1
    return counts


def left_mult_map(ball: TessBall, g: Word | SplitForm) -> dict[int, int]:
    """Vertex map v -> g.v of the left action, where it can be certified.

    For a SplitForm (w, flip) the map is v -> w * sigma^flip(w_v), which is
    the action of w s_{1,n}^flip on the subgroup complex.
    """
    if isinstance(g, SplitForm):
        w, flip = g.w, g.flip
    else:
        w, flip = g, False
    n = ball.degree
    if flip:
        relabel = [ball.gen_index(sigma_letter(s, n)) for s in ball.generators]
    else:
        relabel = list(range(len(ball.generators)))
    start = trace(ball, w)
    image = {ball.root: start}
    for v in ball.vertices:
        if v == ball.root:
            continue
        p, i = ball.parent[v]
        src = image.get(p)
        if src is None or not ball.trusted(src):
            continue
        image[v] = ball.edges[src][relabel[i]]
    return image


def fixed_points(ball: TessBall, g: Word | SplitForm) -> list[int]:
    return [v for v, t in left_mult_map(ball, g).items() if v == t]
