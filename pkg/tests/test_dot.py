from freesub.dot import export_dot
from freesub.graphrank import FiniteGraph, max_essential_set
from freesub.stallings import bouquet
from freesub.trees import build_ball


def edge_lines(text):
    return [ln for ln in text.splitlines() if "->" in ln]


def node_lines(text):
    return [ln for ln in text.splitlines() if "[" in ln and "->" not in ln and "node [" not in ln]


def test_bouquet():
    text = export_dot(bouquet(2))
    assert text.startswith("digraph core {")
    assert len(node_lines(text)) == 1 and "doublecircle" in text
    edges = edge_lines(text)
    assert edges == ['  v0 -> v0 [label="x"];', '  v0 -> v0 [label="y"];']


def test_essential_set_dashed():
    g = FiniteGraph(1, ((0, 0), (0, 0)))
    text = export_dot(g, removed=max_essential_set(g))
    assert sum("dashed" in ln for ln in edge_lines(text)) == 1


def test_ball():
    text = export_dot(build_ball(2, 1))
    assert len(node_lines(text)) == 5 and len(edge_lines(text)) == 4
    assert export_dot(build_ball(2, 1)) == text
