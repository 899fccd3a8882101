"""Shared strategies and deliberately naive reference implementations."""
import itertools

from hypothesis import strategies as st

from rdrd.graph import Graph


def naive_valid(g, f, restrained=True):
    for v in range(g.n):
        nb = [f[w] for w in g.adj[v]]
        if f[v] == 0:
            if not (3 in nb or nb.count(2) >= 2):
                return False
            if restrained and 0 not in nb:
                return False
        if f[v] == 1 and not any(x >= 2 for x in nb):
            return False
    return True


def naive_rdrd(g, restrained=True):
    """Minimum weight by plain itertools enumeration (n <= 7)."""
    return min(sum(f) for f in itertools.product(range(4), repeat=g.n) if naive_valid(g, f, restrained))


def naive_domination(g):
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            cov = set(s)
            for v in s:
                cov.update(g.adj[v])
            if len(cov) == g.n:
                return k


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    edges = set(chosen)
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.add((u, v))
    return Graph.from_edges(n, edges)


# one PASS/FAIL line per acceptance criterion, shown at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
