"""
DOT Export Service

Graphviz text for dependency digraphs: inner edges solid, outer edges dashed, crossing
edges dotted, and an optional cycle drawn bold in red. Members of the subset are boxes.
Nodes and edges are written in index order so reruns are byte-identical.

"""
from typing import Optional, Sequence

from src.operations.dependency import CROSSING, INNER, OUTER, DependencyDigraph

EDGE_STYLE = {INNER: "solid", OUTER: "dashed", CROSSING: "dotted"}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(digraph: DependencyDigraph, cycle: Optional[Sequence[int]] = None, name: str = "dependency") -> str:
    """
    :param digraph: The dependency digraph.
    :type digraph: DependencyDigraph
    :param cycle: Vertices of a cycle to highlight, closing edge implied.
    :type cycle: Optional[Sequence[int]]
    :return: The DOT document.
    :rtype: str
    """
    labels = digraph.lattice.labels
    highlighted = set()
    if cycle:
        closed = list(cycle) + [cycle[0]]
        highlighted = set(zip(closed, closed[1:]))
    out = [f"digraph {name} {{", "node [", '  fontsize = "12"', "];"]
    for x in range(digraph.lattice.n):
        shape = "box" if x in digraph else "ellipse"
        out.append(f"n{x} [label={_quote(labels[x])}, shape={shape}];")
    for a, b in digraph.edges():
        data = digraph.graph.edges[a, b]
        attrs = [f"style={EDGE_STYLE[data['kind']]}"]
        if data["witness"] is not None:
            attrs.append(f"label={_quote(data['clause'] + ' ' + labels[data['witness']])}")
        if (a, b) in highlighted:
            attrs.append("color=red, penwidth=2")
        out.append(f"n{a} -> n{b} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
