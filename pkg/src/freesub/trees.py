"""Finite windows onto the Cayley tree of ``F_k`` and its ``n``-copy induced
forest, with an ``F_k``-invariant edge order.

A vertex is ``(copy, g)`` with ``g`` a reduced word.  The tree edge
``{g, g·x_i}`` is written ``(copy, g, i)``: its anchor ``g`` is the endpoint
from which it is traversed as ``x_i``.  Edges are ordered by anchor in the
Magnus order, ties broken by generator index.  This is invariant under left
multiplication because ``(zg)^-1 (zh) = g^-1 h``.

``G = F_k x Z/n`` acts by ``(w, c)·(j, g) = (j + c mod n, w·g)``: the induced
action for the coset representatives ``(1, j)``.

Orbits are computed exactly (through subgroup membership), not by
following generator steps inside the window, so nothing here depends on
how orbits wander outside the ball.  Whether a structure reaches past the
window is reported as ``truncated``.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple, Sequence

from . import magnus
from .voltage import Element, VoltageGraph, coset_key, stabilizer_generators, voltage_fold
from .words import Word, all_reduced_words, mul

INCOMPARABLE = None


class Vertex(NamedTuple):
    copy: int
    word: Word


class TreeEdge(NamedTuple):
    copy: int
    anchor: Word
    gen: int

    def endpoints(self) -> tuple[Vertex, Vertex]:
        head = mul(self.anchor, Word(self.anchor.rank, (self.gen,)))
        return Vertex(self.copy, self.anchor), Vertex(self.copy, head)


def edge_between(copy: int, prefix: Word, letter: int) -> TreeEdge:
    """The edge joining ``prefix`` and ``prefix·letter`` (the latter reduced)."""
    if letter > 0:
        return TreeEdge(copy, prefix, letter)
    return TreeEdge(copy, mul(prefix, Word(prefix.rank, (letter,))), -letter)


def _anchor_cmp(e: tuple[Word, int], f: tuple[Word, int]) -> int:
    if e == f:
        return 0
    if e[0] == f[0]:
        return -1 if e[1] < f[1] else 1
    return int(magnus.compare(e[0], f[0]))


@dataclass(frozen=True)
class ForestBall:
    rank: int
    radius: int
    copies: int
    modulus: int
    vertices: tuple[Vertex, ...]
    edges: tuple[TreeEdge, ...]
    edge_rank: dict = field(compare=False, repr=False)
    truncated: bool = False

    @property
    def group_modulus(self) -> int:
        return max(self.modulus, 1)

    def contains_vertex(self, v: Vertex) -> bool:
        return 0 <= v.copy < self.copies and len(v.word) <= self.radius

    def contains_edge(self, e: TreeEdge) -> bool:
        a, b = e.endpoints()
        return self.contains_vertex(a) and len(b.word) <= self.radius

    def restrict(self, vertices: Iterable[Vertex], edges: Iterable[TreeEdge], truncated: bool):
        vs, es = set(vertices), set(edges)
        return replace(
            self,
            vertices=tuple(v for v in self.vertices if v in vs),
            edges=tuple(e for e in self.edges if e in es),
            truncated=truncated,
        )


@functools.lru_cache(maxsize=16)
def _ball_skeleton(k: int, radius: int):
    words = list(all_reduced_words(k, radius))
    anchors = []
    for g in words:
        for i in range(1, k + 1):
            if len(g) < radius or (g.letters and g.letters[-1] == -i):
                anchors.append((g, i))
    ordered = sorted(anchors, key=functools.cmp_to_key(_anchor_cmp))
    return tuple(words), tuple(anchors), {a: r for r, a in enumerate(ordered)}


def build_ball(k: int, radius: int) -> ForestBall:
    """Radius-``radius`` ball around 1 in the Cayley tree of ``F_k``."""
    if k < 1 or radius < 1:
        raise ValueError("need k >= 1 and radius >= 1")
    words, anchors, ranks = _ball_skeleton(k, radius)
    return ForestBall(
        k,
        radius,
        1,
        0,
        tuple(Vertex(0, g) for g in words),
        tuple(TreeEdge(0, g, i) for g, i in anchors),
        ranks,
    )


def induce(b: ForestBall, n: int) -> ForestBall:
    """``n`` incomparable copies of a single-copy ball, acted on by ``F_k x Z/n``."""
    if b.copies != 1:
        raise ValueError("induce expects a single-copy ball")
    if n < 1:
        raise ValueError("n must be >= 1")
    return replace(
        b,
        copies=n,
        modulus=n,
        vertices=tuple(Vertex(j, v.word) for j in range(n) for v in b.vertices),
        edges=tuple(TreeEdge(j, e.anchor, e.gen) for j in range(n) for e in b.edges),
    )


def edge_less(b: ForestBall, e: TreeEdge, f: TreeEdge):
    """``True``/``False``, or :data:`INCOMPARABLE` for edges in different copies."""
    if e.copy != f.copy:
        return INCOMPARABLE
    if e == f:
        return False
    ka, kb = (e.anchor, e.gen), (f.anchor, f.gen)
    ra, rb = b.edge_rank.get(ka), b.edge_rank.get(kb)
    if ra is not None and rb is not None:
        return ra < rb
    return _anchor_cmp(ka, kb) < 0


def act_vertex(b: ForestBall, g: Element, v: Vertex) -> Vertex:
    w, c = g
    return Vertex((v.copy + c) % b.copies, mul(w, v.word))


def act_edge(b: ForestBall, g: Element, e: TreeEdge) -> TreeEdge:
    w, c = g
    return TreeEdge((e.copy + c) % b.copies, mul(w, e.anchor), e.gen)


def _subgroup(b: ForestBall, gens: Sequence[Element]) -> VoltageGraph:
    n = b.group_modulus
    return voltage_fold([(w, c % n) for w, c in gens], b.rank, n)


def _vertex_key(h: VoltageGraph, v: Vertex):
    return coset_key(h, v.word, v.copy)


def _edge_key(h: VoltageGraph, e: TreeEdge):
    return e.gen, coset_key(h, e.anchor, e.copy)


def geodesic_edges(copy: int, u: Word, v: Word) -> list[TreeEdge]:
    """Edges of the tree path from ``u`` to ``v``."""
    a, b = u.letters, v.letters
    p = 0
    while p < min(len(a), len(b)) and a[p] == b[p]:
        p += 1
    out = []
    for word in (a, b):
        for m in range(p, len(word)):
            out.append(edge_between(copy, Word(u.rank, word[:m]), word[m]))
    return out


def invariant_subforest(
    b: ForestBall, subgroup_gens: Sequence[Element], points: Iterable[Vertex]
) -> ForestBall:
    """The invariant subforest spanned by ``points``, intersected with the ball.

    In each copy the points are joined by geodesics, and the result is joined
    to its translates by the generators (and inverses) of the copy
    stabiliser.  All translates of this finite forest by the subgroup are
    then intersected with the ball.  ``truncated`` is set when the invariant
    forest continues past the ball's boundary.
    """
    pts = list(dict.fromkeys(points))
    if not pts:
        raise ValueError("the point set X must be nonempty")
    for p in pts:
        if not b.contains_vertex(p):
            raise ValueError(f"point {p} lies outside the ball")
    h = _subgroup(b, subgroup_gens)
    stab = [w for w, _ in stabilizer_generators(h)]
    seed_vertices: set[Vertex] = set(pts)
    seed_edges: set[TreeEdge] = set()
    by_copy: dict[int, list[Word]] = defaultdict(list)
    for p in pts:
        by_copy[p.copy].append(p.word)
    for j, words in by_copy.items():
        r0 = words[0]
        for w in words[1:]:
            seed_edges.update(geodesic_edges(j, r0, w))
        for s in stab:
            for t in (s, s.inverse()):
                seed_edges.update(geodesic_edges(j, r0, mul(t, r0)))
    for e in seed_edges:
        seed_vertices.update(e.endpoints())

    vkeys = {_vertex_key(h, v) for v in seed_vertices}
    ekeys = {_edge_key(h, e) for e in seed_edges}
    vertices = [v for v in b.vertices if _vertex_key(h, v) in vkeys]
    edges = [e for e in b.edges if _edge_key(h, e) in ekeys]

    truncated = False
    for v in vertices:
        if len(v.word) < b.radius:
            continue
        last = v.word.letters[-1] if v.word.letters else 0
        for g in range(1, b.rank + 1):
            for a in (g, -g):
                if a == -last:
                    continue
                if _edge_key(h, edge_between(v.copy, v.word, a)) in ekeys:
                    truncated = True
                    break
    return b.restrict(vertices, edges, truncated)


def copies_connected(b: ForestBall) -> bool:
    """Whether the part of ``b`` in each copy is connected (or empty)."""
    adj: dict[Vertex, list[Vertex]] = defaultdict(list)
    for e in b.edges:
        u, v = e.endpoints()
        adj[u].append(v)
        adj[v].append(u)
    for j in range(b.copies):
        vs = [v for v in b.vertices if v.copy == j]
        if not vs:
            continue
        seen = {vs[0]}
        todo = [vs[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(vs):
            return False
    return True


def orbit_classes(
    b: ForestBall, subgroup_gens: Sequence[Element], edge_set: Iterable[TreeEdge]
) -> dict:
    """Partition ``edge_set`` into orbits of the generated subgroup.

    Returns ``{orbit key: edges}`` with edges listed in ball order.
    """
    h = _subgroup(b, subgroup_gens)
    classes: dict = defaultdict(list)
    for e in edge_set:
        classes[_edge_key(h, e)].append(e)
    for key in classes:
        classes[key].sort(key=lambda e: (e.copy, b.edge_rank.get((e.anchor, e.gen), -1)))
    return dict(classes)


def count_orbits(
    b: ForestBall, subgroup_gens: Sequence[Element], edge_set: Iterable[TreeEdge]
) -> int:
    return len(orbit_classes(b, subgroup_gens, edge_set))


@dataclass(frozen=True)
class Certificate:
    depth: int
    representatives: tuple[TreeEdge, ...]
    certified: tuple[TreeEdge, ...]
    subforest: ForestBall

    @property
    def orbit_count(self) -> int:
        return len(self.representatives)


def _rank_of(b: ForestBall, e: TreeEdge) -> int:
    return b.edge_rank[(e.anchor, e.gen)]


def certify_order_essential(
    b: ForestBall,
    subgroup_gens: Sequence[Element],
    depth: int,
    points: Iterable[Vertex] | None = None,
) -> Certificate:
    """Edges with a witness of order-essentiality to the given depth.

    An edge ``e`` of the invariant subforest is certified when, beyond each
    of its endpoints, a non-backtracking path of ``depth`` edges inside the
    subforest uses only edges below ``e``.  Passing is necessary, not
    sufficient, for lying on a bi-infinite path of edges below ``e``.
    ``points`` defaults to the root of every copy.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    if depth > b.radius:
        raise ValueError(f"depth {depth} exceeds ball radius {b.radius}")
    if points is None:
        points = [Vertex(j, Word(b.rank)) for j in range(b.copies)]
    sub = invariant_subforest(b, subgroup_gens, points)
    adj: dict[Vertex, list[tuple[TreeEdge, Vertex]]] = defaultdict(list)
    for e in sub.edges:
        u, v = e.endpoints()
        adj[u].append((e, v))
        adj[v].append((e, u))

    def descends(v: Vertex, came: TreeEdge, ceiling: int, need: int) -> bool:
        if need == 0:
            return True
        for f, w in adj[v]:
            if f != came and _rank_of(b, f) < ceiling and descends(w, f, ceiling, need - 1):
                return True
        return False

    certified = []
    for e in sub.edges:
        r = _rank_of(b, e)
        u, v = e.endpoints()
        if descends(u, e, r, depth) and descends(v, e, r, depth):
            certified.append(e)
    classes = orbit_classes(b, subgroup_gens, certified)
    reps = sorted(
        (edges[0] for edges in classes.values()), key=lambda e: (e.copy, _rank_of(b, e))
    )
    return Certificate(depth, tuple(reps), tuple(certified), sub)
