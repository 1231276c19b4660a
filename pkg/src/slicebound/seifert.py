"""Seifert circles, the signed Seifert graph, and the auxiliary circle graph.

Smoothing every crossing coherently with orientation partitions the edges
into Seifert circles.  The Seifert graph has one node per circle and one
signed edge per crossing; removing + (resp. -) edges gives the subgraphs
whose component counts drive the bounds.  The auxiliary graph joins each
circle's negative-subgraph component to its positive-subgraph component;
its first Betti number equals the error width of the bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import ConsistencyError, Diagram


class DisconnectedDiagramError(ValueError):
    """Operation needs a connected diagram; caller should go per-component."""


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True

    def component_count(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


@dataclass(frozen=True)
class SeifertCircles:
    """Partition of the edges into circles of the oriented resolution.

    Circle ids are assigned by increasing minimum edge id, so output is
    deterministic across runs and implementations.
    """

    circle_of_edge: dict[int, int]
    count: int


@dataclass(frozen=True)
class SeifertGraph:
    """Signed multigraph on Seifert circles: one edge per crossing."""

    node_count: int
    edges: tuple[tuple[int, int, int, int], ...]  # (u, v, sign, crossing index)


@dataclass(frozen=True)
class AuxGraph:
    """One node per component of each signed subgraph, one edge per circle."""

    node_count: int
    edges: tuple[tuple[int, int], ...]


def _canonical_ids(d: Diagram, uf: UnionFind, index: dict[int, int]) -> SeifertCircles:
    min_edge: dict[int, int] = {}
    for e in d.edge_ids:
        root = uf.find(index[e])
        min_edge.setdefault(root, e)
    ordered = sorted(min_edge, key=lambda root: min_edge[root])
    circle_id = {root: i for i, root in enumerate(ordered)}
    return SeifertCircles(
        {e: circle_id[uf.find(index[e])] for e in d.edge_ids}, len(ordered)
    )


def oriented_resolution(d: Diagram) -> SeifertCircles:
    """Seifert circles: smooth every crossing compatibly with orientation.

    At each crossing the incoming under-edge joins the outgoing over-edge and
    vice versa, i.e. the pairing {a,b},{c,d} at positive and {a,d},{b,c} at
    negative crossings.  Free loops are circles of their own.
    """
    ids = d.edge_ids
    index = {e: i for i, e in enumerate(ids)}
    uf = UnionFind(len(ids))
    for c in d.crossings:
        a, b, cc, dd = c.edges
        if c.sign > 0:
            uf.union(index[a], index[b])
            uf.union(index[cc], index[dd])
        else:
            uf.union(index[a], index[dd])
            uf.union(index[b], index[cc])
    circles = _canonical_ids(d, uf, index)
    for i, c in enumerate(d.crossings):
        a, b = _circles_at(circles, c.edges, c.sign)
        if a == b:
            raise ConsistencyError(
                f"crossing {i} smooths onto a single circle; orientation data invalid"
            )
    return circles


def _circles_at(circles: SeifertCircles, edges: tuple[int, int, int, int], sign: int) -> tuple[int, int]:
    a, b, cc, dd = edges
    if sign > 0:
        return circles.circle_of_edge[a], circles.circle_of_edge[cc]
    return circles.circle_of_edge[a], circles.circle_of_edge[b]


def seifert_graph(d: Diagram) -> SeifertGraph:
    """One signed edge per crossing between the two circles it touches."""
    circles = oriented_resolution(d)
    edges = []
    for i, c in enumerate(d.crossings):
        u, v = _circles_at(circles, c.edges, c.sign)
        edges.append((u, v, c.sign, i))
    return SeifertGraph(circles.count, tuple(edges))


def component_count(g: SeifertGraph, keep_sign: int) -> int:
    """Components of the subgraph keeping only edges of one sign (all nodes kept)."""
    uf = UnionFind(g.node_count)
    for u, v, sign, _ in g.edges:
        if sign == keep_sign:
            uf.union(u, v)
    return uf.component_count()


def _subgraph_component_ids(g: SeifertGraph, keep_sign: int) -> list[int]:
    uf = UnionFind(g.node_count)
    for u, v, sign, _ in g.edges:
        if sign == keep_sign:
            uf.union(u, v)
    roots: dict[int, int] = {}
    out = []
    for node in range(g.node_count):
        r = uf.find(node)
        out.append(roots.setdefault(r, len(roots)))
    return out


def aux_graph(g: SeifertGraph, circles: SeifertCircles) -> AuxGraph:
    """Join each circle's negative-subgraph component to its positive one.

    Nodes: components of the minus-subgraph followed by components of the
    plus-subgraph; one edge per Seifert circle.
    """
    if circles.count != g.node_count:
        raise ValueError("circles and graph come from different diagrams")
    minus = _subgraph_component_ids(g, -1)
    plus = _subgraph_component_ids(g, +1)
    n_minus = max(minus) + 1
    n_plus = max(plus) + 1
    edges = tuple((minus[c], n_minus + plus[c]) for c in range(g.node_count))
    return AuxGraph(n_minus + n_plus, edges)


def betti1(g: AuxGraph) -> int:
    """First Betti number 1 - #nodes + #edges of a connected auxiliary graph.

    Raises DisconnectedDiagramError for split diagrams; use
    betti1_components for per-piece values there.
    """
    parts = betti1_components(g)
    if len(parts) != 1:
        raise DisconnectedDiagramError(
            f"auxiliary graph has {len(parts)} components; per-component b1 = {parts}"
        )
    return parts[0]


def betti1_components(g: AuxGraph) -> list[int]:
    """First Betti numbers of the auxiliary graph's connected components."""
    uf = UnionFind(g.node_count)
    for u, v in g.edges:
        uf.union(u, v)
    nodes: dict[int, int] = {}
    edge_count: dict[int, int] = {}
    for node in range(g.node_count):
        r = uf.find(node)
        nodes[r] = nodes.get(r, 0) + 1
        edge_count.setdefault(r, 0)
    for u, _ in g.edges:
        edge_count[uf.find(u)] += 1
    return [1 - nodes[r] + edge_count[r] for r in sorted(nodes, key=lambda r: r)]


def two_coloring(g: SeifertGraph) -> list[int]:
    """2-color the Seifert graph (adjacent circles get opposite classes).

    The graph is bipartite for every genuine planar diagram; the coloring
    picks out the canonical generator labels for the Lee complex.  Isolated
    or per-component choices are normalized so the circle with the smallest
    id in each piece gets class 0.
    """
    adj: dict[int, list[int]] = {i: [] for i in range(g.node_count)}
    for u, v, _, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * g.node_count
    for start in range(g.node_count):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            node = stack.pop()
            for other in adj[node]:
                if color[other] == -1:
                    color[other] = 1 - color[node]
                    stack.append(other)
                elif color[other] == color[node]:
                    raise ConsistencyError(
                        "Seifert graph is not bipartite; diagram data is not planar"
                    )
    return color
