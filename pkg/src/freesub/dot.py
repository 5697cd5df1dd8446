"""Graphviz DOT rendering. Output is deterministic for identical inputs."""

from __future__ import annotations

from functools import singledispatch
from typing import Iterable, Sequence

from .graphrank import FiniteGraph
from .stallings import CoreGraph
from .syntax import COMPACT_ALPHABET, format_word
from .trees import ForestBall, TreeEdge


def _gen_name(rank: int, i: int) -> str:
    return COMPACT_ALPHABET[i - 1] if rank <= len(COMPACT_ALPHABET) else f"x{i}"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


@singledispatch
def export_dot(graph, **annotations) -> str:
    raise TypeError(f"cannot render {type(graph).__name__} as DOT")


@export_dot.register
def _(graph: CoreGraph, voltages: Sequence[int] | None = None, name: str = "core") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in range(graph.n_vertices):
        attrs = ' shape=doublecircle label="base"' if v == graph.base else f' label="{v}"'
        lines.append(f"  v{v} [{attrs.strip()}];")
    for e, (s, t, i) in enumerate(graph.edges):
        label = _gen_name(graph.rank, i)
        if voltages is not None:
            label += f" / {voltages[e]}"
        lines.append(f"  v{s} -> v{t} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@export_dot.register
def _(graph: FiniteGraph, removed: Iterable[int] = (), name: str = "multigraph") -> str:
    drop = set(removed)
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in range(graph.n_vertices):
        lines.append(f'  v{v} [label="{v}"];')
    for e, (s, t) in enumerate(graph.edges):
        label = f"e{e}"
        if graph.labels is not None:
            label += f" {graph.labels[e]}"
        style = " style=dashed color=red" if e in drop else ""
        lines.append(f"  v{s} -> v{t} [label={_quote(label)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


@export_dot.register
def _(graph: ForestBall, certified: Iterable[TreeEdge] = (), name: str = "ball") -> str:
    marked = set(certified)

    def node(copy: int, word) -> str:
        return _quote(f"{copy}:{format_word(word)}")

    lines = [f"digraph {name} {{", "  node [shape=point];"]
    for v in graph.vertices:
        root = " shape=circle" if not v.word.letters else ""
        lines.append(f"  {node(v.copy, v.word)} [xlabel={_quote(format_word(v.word))}{root}];")
    for e in graph.edges:
        tail, head = e.endpoints()
        rank = graph.edge_rank.get((e.anchor, e.gen))
        label = _gen_name(graph.rank, e.gen) + (f" #{rank}" if rank is not None else "")
        style = " penwidth=3 color=blue" if e in marked else ""
        lines.append(
            f"  {node(tail.copy, tail.word)} -> {node(head.copy, head.word)}"
            f" [label={_quote(label)}{style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
