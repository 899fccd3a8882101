"""Strong, cardinal (direct) and corona products.

Strong and cardinal products number vertex ``(u, v)`` as ``u * |V(H)| + v``.
Corona ``G o H`` keeps the base vertices of G as ``0..n-1``; copy ``i`` of H
occupies ``n + i*|V(H)| .. n + (i+1)*|V(H)| - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError


@dataclass(frozen=True)
class ProductVertexMap:
    kind: str  # "strong" | "cardinal" | "corona"
    coords: tuple[tuple, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "coords": [list(c) for c in self.coords]}


def _grid_map(kind: str, g: Graph, h: Graph) -> ProductVertexMap:
    return ProductVertexMap(kind, tuple((u, v) for u in range(g.n) for v in range(h.n)))


def _check_nonempty(g: Graph, h: Graph) -> None:
    if g.n == 0 or h.n == 0:
        raise GraphError("product factors must be nonempty")


def strong_product(g: Graph, h: Graph) -> tuple[Graph, ProductVertexMap]:
    _check_nonempty(g, h)
    k = h.n
    edges = []
    for u in range(g.n):
        for v in range(k):
            a = u * k + v
            for v2 in h.adj[v]:
                edges.append((a, u * k + v2))
            for u2 in g.adj[u]:
                edges.append((a, u2 * k + v))
                for v2 in h.adj[v]:
                    edges.append((a, u2 * k + v2))
    return Graph.from_edges(g.n * k, edges), _grid_map("strong", g, h)


def cardinal_product(g: Graph, h: Graph) -> tuple[Graph, ProductVertexMap]:
    _check_nonempty(g, h)
    k = h.n
    edges = [
        (u * k + v, u2 * k + v2)
        for u in range(g.n)
        for u2 in g.adj[u]
        for v in range(k)
        for v2 in h.adj[v]
    ]
    return Graph.from_edges(g.n * k, edges), _grid_map("cardinal", g, h)


def corona(g: Graph, h: Graph) -> tuple[Graph, ProductVertexMap]:
    """Coordinates are ``("base", i)`` or ``("copy", i, w)`` for vertex ``w`` of copy ``i``."""
    if g.n == 0:
        raise GraphError("corona base graph must be nonempty")
    n, k = g.n, h.n
    edges = list(g.edges())
    coords: list[tuple] = [("base", i) for i in range(n)]
    for i in range(n):
        off = n + i * k
        for w in range(k):
            coords.append(("copy", i, w))
            edges.append((i, off + w))
        edges += [(off + a, off + b) for a, b in h.edges()]
    return Graph.from_edges(n * (1 + k), edges), ProductVertexMap("corona", tuple(coords))
