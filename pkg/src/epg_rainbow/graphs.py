"""Enhanced power graphs and power graphs of finite groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

import networkx as nx

from .cyclic import CyclicDecomposition
from .groups import FiniteGroup, generated_subgroup

if TYPE_CHECKING:
    from .rainbow import EdgeColoring


class DisconnectedGraph(ValueError):
    pass


class ColoringSizeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on ``0..n-1``; edge ids follow lexicographic (u, v)."""

    n: int
    edges: tuple[tuple[int, int], ...]
    edge_id: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edge_id", {uv: k for k, uv in enumerate(self.edges)})
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(x)) for x in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            es.add((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(es)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def eid(self, u: int, v: int) -> int:
        return self.edge_id[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_id

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2


def enhanced_power_graph(G: FiniteGroup, d: CyclicDecomposition) -> SimpleGraph:
    """Union of the cliques on the maximal cyclic subgroups."""
    es = set()
    for _, members in d.subgroups:
        s = sorted(members)
        for a in range(len(s)):
            for b in range(a + 1, len(s)):
                es.add((s[a], s[b]))
    return SimpleGraph(G.order, tuple(sorted(es)))


def power_graph(G: FiniteGroup) -> SimpleGraph:
    cyc = [generated_subgroup(G, g) for g in range(G.order)]
    es = set()
    for x in range(G.order):
        for y in cyc[x]:
            if y != x:
                es.add((min(x, y), max(x, y)))
    return SimpleGraph(G.order, tuple(sorted(es)))


@dataclass(frozen=True)
class GraphMetrics:
    diameter: int
    bridge_count: int
    is_complete: bool


def graph_metrics(g: SimpleGraph) -> GraphMetrics:
    if g.n == 0:
        raise DisconnectedGraph("empty graph")
    nxg = g.to_networkx()
    if not nx.is_connected(nxg):
        raise DisconnectedGraph(f"graph on {g.n} vertices is not connected")
    diam = nx.diameter(nxg) if g.n > 1 else 0
    return GraphMetrics(diam, sum(1 for _ in nx.bridges(nxg)), g.is_complete())


PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown",
           "magenta", "cyan", "gold", "gray", "olive", "navy")


def export_dot(g: SimpleGraph, labels: Optional[Sequence[str]] = None,
               coloring: Optional["EdgeColoring"] = None, name: str = "G") -> str:
    if coloring is not None and len(coloring.assignment) != g.m:
        raise ColoringSizeMismatch(
            f"coloring covers {len(coloring.assignment)} edges, graph has {g.m}")
    labels = labels or [str(i) for i in range(g.n)]
    out = [f"graph {json.dumps(name)} {{"]
    for v in range(g.n):
        out.append(f"  {v} [label={json.dumps(labels[v])}];")
    for k, (u, v) in enumerate(g.edges):
        if coloring is None:
            out.append(f"  {u} -- {v};")
        else:
            c = coloring.assignment[k]
            out.append(f'  {u} -- {v} [color="{PALETTE[(c - 1) % len(PALETTE)]}", label="{c}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def graph_to_json(g: SimpleGraph, labels: Optional[Sequence[str]] = None) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges],
            "labels": list(labels) if labels is not None else [str(i) for i in range(g.n)]}


def graph_from_json(obj: dict) -> SimpleGraph:
    return SimpleGraph.from_edges(obj["n"], (tuple(e) for e in obj["edges"]))
