"""Explicit labelings witnessing the closed-form values.

Index conventions follow :mod:`rdrd.products`:

* strips ``P_r [x] P_m`` and ``C_3 x C_m``: vertex ``v_{i,j}`` (row i, column j,
  both 0-based) is ``i*m + j``;
* coronas ``G o K_1``: base vertex ``u_i`` (1-based i) is ``i - 1`` and its
  pendant ``u'_i`` is ``n + i - 1``;
* ``(G o K_1) o K_1``: ``u_i = i-1``, ``v_i = n+i-1``, ``u'_i = 2n+i-1``,
  ``v'_i = 3n+i-1``;
* ``K_{p,q} o K_1``: ``u_i = i-1``, ``v_j = p+j-1``, pendants offset by ``p+q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .catalog import FormulaInapplicable, _as_graph, _int, catalog_graph, catalog_value
from .graph import Graph, GraphError, graph_stats
from .labeling import Labeling, LabelsLike, validate


class ConstructionInapplicable(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    family: str
    params: dict
    graph: Graph
    labeling: Labeling
    claimed_weight: int
    citation: str

    @property
    def weight(self) -> int:
        return self.labeling.weight

    def check(self) -> bool:
        return self.weight == self.claimed_weight and validate(self.graph, self.labeling).valid


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ConstructionInapplicable(f"construction inapplicable: {msg}")


# -- paths and cycles (period-3 patterns, checked against exhaustive search) --

def path_labels(n: int) -> list[int]:
    _need(n >= 1, "path requires n >= 1")
    if n <= 3:
        return {1: [2], 2: [1, 2], 3: [1, 2, 1]}[n]
    k, r = divmod(n, 3)
    if r == 1:
        return [3, 0, 0] * k + [3]
    if r == 2:
        return [3, 0, 0] * k + [3, 1]
    return [1] + [3, 0, 0] * (k - 1) + [3, 1]


def cycle_labels(n: int) -> list[int]:
    _need(n >= 3, "cycle requires n >= 3")
    k, r = divmod(n, 3)
    return [3, 0, 0] * k + {0: [], 1: [3], 2: [3, 1]}[r]


# -- strong strips -------------------------------------------------------------

def strip_labels(rows: int, m: int) -> list[int]:
    """3 on row 1 at columns 3k+1, plus column m-2 when m is not a multiple of 3."""
    _need(rows in (2, 3), "strong_strip requires n in {2, 3}")
    _need(m >= 1, "strong_strip requires m >= 1")
    if m == 1:
        return path_labels(rows)
    labels = [0] * (rows * m)
    cols = [3 * k + 1 for k in range(m // 3)]
    if m % 3:
        cols.append(m - 2)
    for j in cols:
        labels[1 * m + j] = 3
    return labels


def c3xcm_labels(m: int) -> list[int]:
    """Row 1 all 2."""
    _need(m >= 3, "c3xcm requires m >= 3")
    labels = [0] * (3 * m)
    for j in range(m):
        labels[m + j] = 2
    return labels


# -- coronas ---------------------------------------------------------------------

def _corona_k1(n: int, base: dict[int, int], pend: dict[int, int]) -> list[int]:
    """Assemble a G o K_1 labeling from 1-based base and pendant assignments."""
    labels = [0] * (2 * n)
    for i, x in base.items():
        labels[i - 1] = x
    for i, x in pend.items():
        labels[n + i - 1] = x
    return labels


def corona_cn_labels(n: int) -> list[int]:
    _need(n >= 3, "corona_cn requires n >= 3")
    base: dict[int, int] = {}
    pend: dict[int, int] = {}
    for k in range(n // 3):
        base[3 * k + 3] = 2
        pend[3 * k + 1] = pend[3 * k + 2] = 2
        pend[3 * k + 3] = 1
    if n % 3 == 1:
        base[n] = 2
        pend[n] = 1
    elif n % 3 == 2:
        base[n] = 2
        pend[n - 1] = 2
        base[n - 1] = 1
        pend[n] = 1
    return _corona_k1(n, base, pend)


def corona_pn_labels(n: int) -> list[int]:
    _need(n >= 1, "corona_pn requires n >= 1")
    base: dict[int, int] = {}
    pend: dict[int, int] = {}
    r = n % 3
    if r == 0:
        for k in range(n // 3):
            base[3 * k + 1] = pend[3 * k + 2] = 2
            pend[3 * k + 1] = 1
        for k in range(n // 3 - 1):
            pend[3 * k + 3] = 2
        pend[n] = 3
    elif r == 1:
        for k in range(n // 3 + 1):
            base[3 * k + 1] = 2
            pend[3 * k + 1] = 1
        for k in range(n // 3):
            pend[3 * k + 2] = pend[3 * k + 3] = 2
    else:
        for k in range(n // 3 + 1):
            base[3 * k + 1] = pend[3 * k + 2] = 2
            pend[3 * k + 1] = 1
        for k in range(n // 3):
            pend[3 * k + 3] = 2
        base[n] = 1
    return _corona_k1(n, base, pend)


def corona_kn_labels(n: int) -> list[int]:
    """1 on one pendant, 2 on its base vertex and on every other pendant."""
    _need(n >= 1, "corona_kn requires n >= 1")
    if n == 2:
        # K_2 o K_1 is P_4 (u'_1 u_1 u_2 u'_2); use the path pattern 3 0 0 3
        return _corona_k1(2, {}, {1: 3, 2: 3})
    pend = {i: 2 for i in range(2, n + 1)}
    pend[1] = 1
    return _corona_k1(n, {1: 2}, pend)


def corona_general_labels(g: Graph, h: Graph) -> list[int]:
    """3 on every base vertex."""
    _need(g.n >= 1, "G must be nonempty")
    _need(h.n >= 2, "H must not be K1")
    _need(graph_stats(h).min_degree >= 1,
          "H has an isolated vertex, which would be isolated inside V0")
    return [3] * g.n + [0] * (g.n * h.n)


def corona_kpq_labels(p: int, q: int) -> list[int]:
    _need(p >= 1 and q >= 1, "corona_kpq requires p, q >= 1")
    n = p + q
    labels = [0] * (2 * n)
    u = lambda i: i - 1  # noqa: E731
    v = lambda j: p + j - 1  # noqa: E731
    if p >= 2 and q >= 2:
        labels[u(1)] = labels[v(1)] = 2
        for i in range(2, p + 1):
            labels[n + u(i)] = 2
        for j in range(2, q + 1):
            labels[n + v(j)] = 2
        labels[n + u(1)] = labels[n + v(1)] = 1
        return labels
    if p == q == 1:
        labels[n + u(1)] = labels[n + v(1)] = 3
        return labels
    # star K_{1,s}: centre pendant 2, first s-1 leaf pendants 3, last leaf 2 with pendant 1
    centre, leaves = (u(1), [v(j) for j in range(1, q + 1)]) if p == 1 else \
        (v(1), [u(i) for i in range(1, p + 1)])
    labels[n + centre] = 2
    for leaf in leaves[:-1]:
        labels[n + leaf] = 3
    labels[leaves[-1]] = 2
    labels[n + leaves[-1]] = 1
    return labels


def corona_double_labels(g: Graph) -> list[int]:
    """2 on u'_i and v_i, 1 on v'_i."""
    _need(g.n >= 2 and graph_stats(g).connected, "G must be connected with order >= 2")
    n = g.n
    labels = [0] * (4 * n)
    for i in range(n):
        labels[n + i] = 2       # v_i
        labels[2 * n + i] = 2   # u'_i
        labels[3 * n + i] = 1   # v'_i
    return labels


def wounded_spider_labels(n: int, t: int) -> list[int]:
    _need(n >= 1 and t == n - 1, "only ws(1,n,n-1) is covered")
    if n == 1:
        return [2, 1]
    if n == 2:
        # P_4 laid out as 3-1-0-2
        return [0, 0, 3, 3]
    # legs 1..n-1 subdivided (outer vertex n+i), leg n is a single leaf
    labels = [0] * (2 * n)
    for i in range(1, n - 1):
        labels[n + i] = 3
    labels[n - 1] = 2
    labels[2 * n - 1] = 1
    labels[n] = 2
    return labels


# -- cardinal products with P_2 ----------------------------------------------------

def p2_times(factor_labels: LabelsLike) -> list[int]:
    """Labeling of P_2 x G for bipartite G: both copies inherit G's labels."""
    f = list(factor_labels)
    return f + f


def p2x_odd_cycle_labels(n: int, g: Graph) -> list[int]:
    """Walk the single cycle P_2 x C_{2n+1} from vertex 0 and lay the cycle pattern on it."""
    walk = [0]
    prev = None
    while len(walk) < g.n:
        cur = walk[-1]
        nxt = next(w for w in g.adj[cur] if w != prev and w not in walk[-2:])
        prev = cur
        walk.append(nxt)
    pattern = cycle_labels(g.n)
    labels = [0] * g.n
    for pos, v in enumerate(walk):
        labels[v] = pattern[pos]
    return labels


CITATIONS = {
    "path": "period-3 pattern, checked by exhaustive search (n <= 12)",
    "cycle": "period-3 pattern 3 0 0, checked by exhaustive search (n <= 12)",
    "strong_strip": "3 on v_{1,3k+1} and v_{1,m-2}",
    "c3xcm": "f(v_{1,j}) = 2 for all columns j",
    "p2xpn": "two copies of the path labeling",
    "p2x_bipartite": "two copies of a labeling of the factor",
    "p2x_odd_cycle": "cycle labeling along P_2 x C_{2n+1} = C_{4n+2}",
    "corona_general": "3 on every vertex of G",
    "corona_kn": "1 on a pendant, 2 on its neighbour and the other pendants",
    "corona_cn": "three-case construction on C_n o K_1",
    "corona_pn": "three-case construction on P_n o K_1",
    "corona_kpq": "2 on u_1, v_1 and the other pendants, 1 on u'_1, v'_1; stars: derived",
    "corona_double": "2 on u'_i and v_i, 1 on v'_i",
    "wounded_spider": "derived: pendant-heavy labeling of K_{1,n-1} o K_1",
}


def _labels_for(family: str, params: dict, g: Graph) -> list[int]:
    if family == "path":
        return path_labels(_int(params, "n"))
    if family == "cycle":
        return cycle_labels(_int(params, "n"))
    if family == "strong_strip":
        return strip_labels(_int(params, "n"), _int(params, "m"))
    if family == "c3xcm":
        return c3xcm_labels(_int(params, "m"))
    if family == "p2xpn":
        return p2_times(path_labels(_int(params, "n")))
    if family == "p2x_bipartite":
        factor = _as_graph(params["factor"])
        fl = params.get("factor_labels")
        if fl is None:
            from .solver import solve_rdrd_bnb
            fl = solve_rdrd_bnb(factor).certificate
        return p2_times(fl)
    if family == "p2x_odd_cycle":
        return p2x_odd_cycle_labels(_int(params, "n"), g)
    if family == "corona_general":
        return corona_general_labels(_as_graph(params["G"]), _as_graph(params["H"]))
    if family == "corona_kn":
        return corona_kn_labels(_int(params, "n"))
    if family == "corona_cn":
        return corona_cn_labels(_int(params, "n"))
    if family == "corona_pn":
        return corona_pn_labels(_int(params, "n"))
    if family == "corona_kpq":
        return corona_kpq_labels(_int(params, "p"), _int(params, "q"))
    if family == "corona_double":
        return corona_double_labels(_as_graph(params["G"]))
    if family == "wounded_spider":
        return wounded_spider_labels(_int(params, "n"), _int(params, "t"))
    raise ConstructionInapplicable(f"construction inapplicable: no construction for {family!r}")


def construct_certificate(family: str, params: Optional[dict] = None, **kw) -> Certificate:
    """Build the family's graph and its explicit labeling; claimed weight is the catalog value."""
    params = dict(params or {}, **kw)
    try:
        fr = catalog_value(family, params)
        g = catalog_graph(family, params)
    except (FormulaInapplicable, GraphError) as exc:
        raise ConstructionInapplicable(str(exc).replace("formula", "construction")) from None
    labels = Labeling(tuple(_labels_for(family, params, g)))
    return Certificate(family, params, g, labels, fr.value, CITATIONS[family])


# -- combining two labelings on a strong product -----------------------------------

# label of (u, v) from (f1(u), f2(v)); pairs not listed get 0
_COMBINE = {
    (3, 3): 3, (2, 3): 3, (3, 2): 3,
    (2, 2): 2,
    (1, 1): 1, (1, 2): 1, (1, 3): 1, (2, 1): 1, (3, 1): 1,
}


def combine_strong(g: Graph, h: Graph, f1: LabelsLike, f2: LabelsLike) -> Labeling:
    """Labeling of ``g [x] h`` built from optimal labelings of the factors."""
    f1, f2 = Labeling.of(f1), Labeling.of(f2)
    for name, graph, f in (("f1", g, f1), ("f2", h, f2)):
        rep = validate(graph, f)
        if not rep.valid:
            raise ValueError(f"{name} is not a valid RDRD labeling of its factor")
    return Labeling(tuple(_COMBINE.get((a, b), 0) for a in f1 for b in f2))


def combine_deduction(f1: LabelsLike, f2: LabelsLike) -> int:
    """w(f1) w(f2) - w(combine_strong(...)) as predicted from the partition sizes."""
    a = [sum(1 for x in f1 if x == i) for i in range(4)]
    b = [sum(1 for x in f2 if x == i) for i in range(4)]
    return (6 * a[3] * b[3] + 3 * a[3] * b[2] + 2 * a[3] * b[1] + 3 * a[2] * b[3]
            + 2 * a[2] * b[2] + a[2] * b[1] + a[1] * b[2] + 2 * a[1] * b[3])
