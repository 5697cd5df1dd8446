"""Euler characteristics, reduced rank and maximal essential edge sets of
finite directed multigraphs (loops and multiple edges allowed)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class FiniteGraph:
    """Vertices ``0..n_vertices-1``; edge ids are positions in ``edges``."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: tuple | None = None

    def __post_init__(self):
        for s, t in self.edges:
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise ValueError(f"edge ({s}, {t}) references a missing vertex")

    @classmethod
    def from_core_graph(cls, g) -> FiniteGraph:
        return cls(
            g.n_vertices,
            tuple((s, t) for s, t, _ in g.edges),
            tuple(lab for _, _, lab in g.edges),
        )

    def without(self, removed: Iterable[int]) -> FiniteGraph:
        drop = set(removed)
        keep = [e for e in range(len(self.edges)) if e not in drop]
        labels = None if self.labels is None else tuple(self.labels[e] for e in keep)
        return FiniteGraph(self.n_vertices, tuple(self.edges[e] for e in keep), labels)


def components(g: FiniteGraph) -> list[tuple[list[int], list[int]]]:
    """Connected components (direction ignored) as ``(vertices, edge ids)``,
    ordered by smallest vertex; vertices in breadth-first order from it."""
    adj: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for e, (s, t) in enumerate(g.edges):
        adj[s].append(e)
        if t != s:
            adj[t].append(e)
    seen = [False] * g.n_vertices
    out = []
    for root in range(g.n_vertices):
        if seen[root]:
            continue
        seen[root] = True
        verts, edges = [], set()
        queue = deque([root])
        while queue:
            v = queue.popleft()
            verts.append(v)
            for e in adj[v]:
                edges.add(e)
                s, t = g.edges[e]
                w = t if s == v else s
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append((verts, sorted(edges)))
    return out


def component_euler_characteristics(g: FiniteGraph) -> list[int]:
    return [len(vs) - len(es) for vs, es in components(g)]


def reduced_rank(g: FiniteGraph) -> int:
    return sum(max(0, -chi) for chi in component_euler_characteristics(g))


def _non_tree_edges(g: FiniteGraph, verts: Sequence[int], edges: Sequence[int]) -> list[int]:
    # BFS from the lowest vertex, incident edges in ascending id
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for e in edges:
        s, t = g.edges[e]
        adj[s].append(e)
        if t != s:
            adj[t].append(e)
    root = min(verts)
    reached = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in sorted(adj[v]):
            s, t = g.edges[e]
            w = t if s == v else s
            if w not in reached:
                reached.add(w)
                tree.add(e)
                queue.append(w)
    return [e for e in edges if e not in tree]


def max_essential_set(g: FiniteGraph) -> list[int]:
    """A maximal essential edge set, as sorted edge ids.

    Per component, the edges outside a breadth-first spanning tree span the
    cycle space; all of them except the highest-id one are returned, so each
    component is left as a tree plus at most one cycle.
    """
    removed: list[int] = []
    for verts, edges in components(g):
        extra = _non_tree_edges(g, verts, edges)
        removed.extend(extra[:-1])
    return sorted(removed)
