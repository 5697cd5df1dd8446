"""Stallings core graphs of finitely generated subgroups of a free group.

Every graph produced here is in canonical form: vertices are numbered in
breadth-first order from the base (vertex 0), scanning at each vertex the
generators in increasing index with the outgoing edge before the incoming
one.  Edges are sorted by ``(source, generator)``.  Two core graphs are
isomorphic as based labelled graphs iff they compare equal.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import _backend
from .words import RankMismatch, Word, mul, inv

INFINITE = math.inf

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class CoreGraph:
    """Folded, connected, base-pointed graph labelled by generators ``1..rank``.

    ``edges`` holds ``(source, target, generator)`` triples.  ``rank`` is the
    rank of the ambient free group, not of the subgroup; see :func:`rank`.
    """

    rank: int
    n_vertices: int
    edges: tuple[Edge, ...]
    base: int = 0

    @cached_property
    def out_table(self) -> dict[tuple[int, int], int]:
        return {(s, g): t for s, t, g in self.edges}

    @cached_property
    def in_table(self) -> dict[tuple[int, int], int]:
        return {(t, g): s for s, t, g in self.edges}

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {(s, g): i for i, (s, _, g) in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return sum((s == v) + (t == v) for s, t, _ in self.edges)

    def kernel_form(self, voltages: Sequence[int] | None = None) -> tuple:
        volts = list(voltages) if voltages is not None else [0] * len(self.edges)
        return (
            self.n_vertices,
            self.base,
            [s for s, _, _ in self.edges],
            [t for _, t, _ in self.edges],
            [g - 1 for _, _, g in self.edges],
            volts,
        )


def bouquet(rank: int) -> CoreGraph:
    """The graph of the whole free group."""
    return CoreGraph(rank, 1, tuple((0, 0, g) for g in range(1, rank + 1)))


def trivial_graph(rank: int) -> CoreGraph:
    return CoreGraph(rank, 1, ())


def _canonicalize(rank, n_vertices, base, src, tgt, lab, volt, modulus):
    """Renumber breadth-first from ``base`` and gauge tree edges to residue 0.

    ``lab`` is zero-based here.  Returns ``(CoreGraph, voltages)`` with the
    voltages aligned to ``CoreGraph.edges`` and reduced mod ``modulus``.
    """
    out: dict[tuple[int, int], tuple[int, int]] = {}
    inn: dict[tuple[int, int], tuple[int, int]] = {}
    for e in range(len(src)):
        out[src[e], lab[e]] = (tgt[e], e)
        inn[tgt[e], lab[e]] = (src[e], e)
    order = {base: 0}
    pot = {base: 0}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for g in range(rank):
            hit = out.get((v, g))
            if hit is not None and hit[0] not in order:
                t, e = hit
                order[t] = len(order)
                pot[t] = pot[v] + volt[e]
                queue.append(t)
            hit = inn.get((v, g))
            if hit is not None and hit[0] not in order:
                s, e = hit
                order[s] = len(order)
                pot[s] = pot[v] - volt[e]
                queue.append(s)
    edges = []
    for e in range(len(src)):
        s, t = src[e], tgt[e]
        if s not in order:
            continue
        c = (volt[e] + pot[s] - pot[t]) % modulus
        edges.append((order[s], order[t], lab[e] + 1, c))
    edges.sort()
    graph = CoreGraph(rank, len(order), tuple((s, t, g) for s, t, g, _ in edges))
    return graph, tuple(c for *_, c in edges)


def _core_and_canonicalize(rank, n_vertices, base, src, tgt, lab, volt, modulus):
    vkeep, ekeep = _backend.kernels.prune(n_vertices, base, src, tgt)
    keep = [e for e in range(len(src)) if ekeep[e]]
    return _canonicalize(
        rank,
        n_vertices,
        base,
        [src[e] for e in keep],
        [tgt[e] for e in keep],
        [lab[e] for e in keep],
        [volt[e] for e in keep],
        modulus,
    )


def fold_pairs(pairs: Iterable[tuple[Word, int]], rank: int, modulus: int = 1):
    """Fold ``(word, residue)`` petals into a canonical voltage core graph.

    Returns ``(CoreGraph, voltages, defect)``; ``defect`` is the divisor of
    ``modulus`` generating the subgroup's intersection with the torsion factor.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    src: list[int] = []
    tgt: list[int] = []
    lab: list[int] = []
    volt: list[int] = []
    nv = 1
    defect = modulus
    for w, c in pairs:
        if w.rank != rank:
            raise RankMismatch(f"generator of rank {w.rank} in rank-{rank} group")
        c %= modulus
        if not w.letters:
            defect = gcd(defect, c)
            continue
        prev = 0
        last = len(w.letters) - 1
        for i, a in enumerate(w.letters):
            if i == last:
                nxt = 0
            else:
                nxt = nv
                nv += 1
            first = c if i == 0 else 0
            if a > 0:
                src.append(prev), tgt.append(nxt), lab.append(a - 1), volt.append(first)
            else:
                src.append(nxt), tgt.append(prev), lab.append(-a - 1), volt.append(-first % modulus)
            prev = nxt
    n2, base, s2, t2, l2, c2, d = _backend.kernels.fold(nv, 0, src, tgt, lab, volt, modulus, rank)
    defect = gcd(defect, d)
    graph, volts = _core_and_canonicalize(rank, n2, base, s2, t2, l2, c2, defect)
    return graph, volts, defect


def fold_from_generators(gens: Iterable[Word], rank: int) -> CoreGraph:
    """Core graph of the subgroup generated by ``gens``."""
    return fold_pairs(((w, 0) for w in gens), rank, 1)[0]


def read(g: CoreGraph, w: Word, voltages: Sequence[int] | None = None):
    """Follow ``w`` from the base as far as the graph allows.

    Returns ``(vertex, consumed, residue)``: the vertex reached, how many
    letters were read, and the residue accumulated along the way (0 when no
    voltages are given).
    """
    if w.rank != g.rank:
        raise RankMismatch(f"word of rank {w.rank} against graph of rank {g.rank}")
    v = g.base
    acc = 0
    out, inn, idx = g.out_table, g.in_table, g.edge_index
    for n, a in enumerate(w.letters):
        if a > 0:
            t = out.get((v, a))
            if t is None:
                return v, n, acc
            if voltages is not None:
                acc += voltages[idx[v, a]]
        else:
            t = inn.get((v, -a))
            if t is None:
                return v, n, acc
            if voltages is not None:
                acc -= voltages[idx[t, -a]]
        v = t
    return v, len(w.letters), acc


def membership(g: CoreGraph, w: Word) -> bool:
    v, consumed, _ = read(g, w)
    return consumed == len(w.letters) and v == g.base


def rank(g: CoreGraph) -> int:
    """Free rank of the represented subgroup (``|E| - |V| + 1``)."""
    return len(g.edges) - g.n_vertices + 1


def reduced_rank(g: CoreGraph) -> int:
    return max(rank(g) - 1, 0)


def is_covering(g: CoreGraph) -> bool:
    out, inn = g.out_table, g.in_table
    return all(
        (v, i) in out and (v, i) in inn
        for v in range(g.n_vertices)
        for i in range(1, g.rank + 1)
    )


def index_or_infinite(g: CoreGraph) -> int | float:
    """Index in the ambient free group, or :data:`INFINITE`."""
    return g.n_vertices if is_covering(g) else INFINITE


def fiber_product(a: CoreGraph, b: CoreGraph) -> CoreGraph:
    """Core graph of ``A ∩ B`` (based component of the pullback)."""
    if a.rank != b.rank:
        raise RankMismatch(f"ambient ranks differ: {a.rank} vs {b.rank}")
    n, src, tgt, lab, volt = _backend.kernels.product(a.rank, a.kernel_form(), b.kernel_form(), 1)
    return _core_and_canonicalize(a.rank, n, 0, src, tgt, lab, volt, 1)[0]


def spanning_tree(g: CoreGraph):
    """Breadth-first spanning tree from the base.

    Returns ``(paths, tree_edges)``: ``paths[v]`` is the tree word from the
    base to ``v`` and ``tree_edges`` the set of edge indices in the tree.
    """
    out, inn, idx = g.out_table, g.in_table, g.edge_index
    paths = {g.base: Word(g.rank)}
    tree = set()
    queue = deque([g.base])
    while queue:
        v = queue.popleft()
        for i in range(1, g.rank + 1):
            t = out.get((v, i))
            if t is not None and t not in paths:
                paths[t] = mul(paths[v], Word(g.rank, (i,)))
                tree.add(idx[v, i])
                queue.append(t)
            s = inn.get((v, i))
            if s is not None and s not in paths:
                paths[s] = mul(paths[v], Word(g.rank, (-i,)))
                tree.add(idx[s, i])
                queue.append(s)
    return paths, tree


def basis(g: CoreGraph) -> list[Word]:
    """Free basis: one word per edge outside the breadth-first spanning tree,
    listed in edge order."""
    paths, tree = spanning_tree(g)
    out = []
    for e, (s, t, i) in enumerate(g.edges):
        if e in tree:
            continue
        out.append(mul(mul(paths[s], Word(g.rank, (i,))), inv(paths[t])))
    return out
