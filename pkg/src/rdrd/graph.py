"""Simple undirected graphs on vertices 0..n-1, family constructors and predicates."""
from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Invalid graph data or family parameters."""


class ParseError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``adj[v]`` is the sorted tuple of neighbours of ``v``."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal n >= 0")
        for v, nbrs in enumerate(self.adj):
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise GraphError(f"neighbour {w} of {v} out of range")
                if w == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.nbr_sets[w]:
                    raise GraphError(f"asymmetric adjacency {v}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            sets[u].add(v)
            sets[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in sets))

    @cached_property
    def nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def m(self) -> int:
        return self.edge_count

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.nbr_sets[u]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Open-neighbourhood bitmasks."""
        out = []
        for nbrs in self.adj:
            mk = 0
            for w in nbrs:
                mk |= 1 << w
            out.append(mk)
        return tuple(out)

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled so that ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = tuple(
            tuple(sorted(index[w] for w in self.adj[v] if w in index)) for v in vertices
        )
        return Graph(len(vertices), adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def distances_from(self, s: int) -> list[Optional[int]]:
        dist: list[Optional[int]] = [None] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in self.adj[v]:
                if dist[w] is None:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist


# ---------------------------------------------------------------------------
# families

FAMILIES = ("path", "cycle", "complete", "complete_bipartite", "star", "wounded_spider", "empty")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = field(default=())

    def __str__(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"cycle:5"`` or ``"complete_bipartite:2,3"``."""
        m = re.fullmatch(r"\s*([a-z_]+)\s*(?::\s*([0-9,\s]*))?", text)
        if not m:
            raise GraphError(f"bad family spec {text!r}")
        params = tuple(int(p) for p in (m.group(2) or "").split(",") if p.strip())
        return cls(m.group(1), params)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def path_graph(n: int) -> Graph:
    _need(n >= 1, "path requires n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    _need(n >= 3, "cycle requires n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    _need(n >= 1, "complete requires n >= 1")
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite_graph(p: int, q: int) -> Graph:
    _need(p >= 1 and q >= 1, "complete_bipartite requires p >= 1 and q >= 1")
    return Graph.from_edges(p + q, ((i, p + j) for i in range(p) for j in range(q)))


def star_graph(n: int) -> Graph:
    """K_{1,n} with centre 0."""
    _need(n >= 1, "star requires n >= 1")
    return complete_bipartite_graph(1, n)


def wounded_spider(n: int, t: int) -> Graph:
    """Star K_{1,n} with its first ``t`` legs subdivided.

    Centre 0, leg vertices 1..n; the subdivided leg ``i`` (1 <= i <= t) gets an
    outer vertex ``n + i``.
    """
    _need(n >= 1, "wounded_spider requires n >= 1")
    _need(0 <= t <= n - 1, "wounded_spider requires 0 <= t <= n-1")
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, n + i) for i in range(1, t + 1)]
    return Graph.from_edges(n + 1 + t, edges)


def empty_graph(n: int) -> Graph:
    _need(n >= 0, "empty requires n >= 0")
    return Graph(n, tuple(() for _ in range(n)))


_BUILDERS = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "complete_bipartite": (complete_bipartite_graph, 2),
    "star": (star_graph, 1),
    "wounded_spider": (wounded_spider, 2),
    "empty": (empty_graph, 1),
}


def build_family(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec.parse(spec)
    if spec.family not in _BUILDERS:
        raise GraphError(f"unknown family {spec.family!r}; expected one of {FAMILIES}")
    fn, arity = _BUILDERS[spec.family]
    if len(spec.params) != arity:
        raise GraphError(f"{spec.family} takes {arity} parameter(s), got {len(spec.params)}")
    return fn(*spec.params)


def random_connected_graph(n: int, rng: random.Random, p: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# statistics and predicates


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    max_degree: int
    min_degree: int
    connected: bool
    bipartite: bool
    coloring: Optional[tuple[int, ...]]
    components: int


def two_coloring(g: Graph) -> Optional[tuple[int, ...]]:
    """Proper 2-colouring (BFS, each component rooted at its smallest vertex) or None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return tuple(color)


def graph_stats(g: Graph) -> GraphStats:
    degs = [g.degree(v) for v in range(g.n)]
    coloring = two_coloring(g)
    ncomp = len(g.components())
    return GraphStats(
        n=g.n,
        m=g.edge_count,
        max_degree=max(degs, default=0),
        min_degree=min(degs, default=0),
        connected=ncomp == 1,
        bipartite=coloring is not None,
        coloring=coloring,
        components=ncomp,
    )


@dataclass(frozen=True)
class ChordalityReport:
    chordal: bool
    elimination_order: Optional[tuple[int, ...]] = None
    chordless_cycle: Optional[tuple[int, ...]] = None


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic BFS by partition refinement; ties broken by smallest vertex."""
    order: list[int] = []
    slices: list[list[int]] = [list(range(g.n))] if g.n else []
    while slices:
        v = slices[0].pop(0)
        if not slices[0]:
            slices.pop(0)
        order.append(v)
        nbrs = g.nbr_sets[v]
        refined: list[list[int]] = []
        for sl in slices:
            inside = [w for w in sl if w in nbrs]
            outside = [w for w in sl if w not in nbrs]
            if inside:
                refined.append(inside)
            if outside:
                refined.append(outside)
        slices = refined
    return order


def _peo_violation(g: Graph, peo: Sequence[int]) -> Optional[tuple[int, int, int]]:
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        p = min(later, key=pos.__getitem__)
        for w in later:
            if w != p and not g.has_edge(p, w):
                return v, p, w
    return None


def is_perfect_elimination_order(g: Graph, order: Sequence[int]) -> bool:
    return sorted(order) == list(range(g.n)) and _peo_violation(g, order) is None


def find_chordless_cycle(g: Graph) -> Optional[tuple[int, ...]]:
    """Some induced cycle of length >= 4, or None.

    Every such cycle passes through a vertex ``v`` with non-adjacent cycle
    neighbours ``a, b`` joined by a path avoiding the rest of ``N[v]``; a
    shortest such path closes a chordless cycle.
    """
    for v in range(g.n):
        nbrs = g.adj[v]
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if g.has_edge(a, b):
                    continue
                blocked = (set(nbrs) | {v}) - {a, b}
                prev = {a: a}
                queue = deque([a])
                while queue and b not in prev:
                    x = queue.popleft()
                    for y in g.adj[x]:
                        if y not in prev and y not in blocked:
                            prev[y] = x
                            queue.append(y)
                if b in prev:
                    path = [b]
                    while path[-1] != a:
                        path.append(prev[path[-1]])
                    return (v, *reversed(path))
    return None


def is_chordal(g: Graph) -> ChordalityReport:
    peo = list(reversed(lex_bfs(g)))
    if _peo_violation(g, peo) is None:
        return ChordalityReport(True, elimination_order=tuple(peo))
    cycle = find_chordless_cycle(g)
    assert cycle is not None, "LexBFS order failed but no chordless cycle found"
    return ChordalityReport(False, chordless_cycle=cycle)


# ---------------------------------------------------------------------------
# edge-list text format


def parse_graph(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` edge-list format. ``#`` starts a comment."""
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"expected two integers, got {line!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(lineno, "negative n or m")
            header = (a, b)
            continue
        n = header[0]
        if a == b:
            raise ParseError(lineno, f"self-loop at vertex {a}")
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(lineno, f"vertex index out of range for n={n}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError(0, "missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(0, f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
