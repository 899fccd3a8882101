"""Exact solvers: vectorised exhaustive search and branch-and-bound.

The brute-force routines are the independent oracle: they enumerate every
labeling (4^n) or vertex set (2^n) and share no code with the
branch-and-bound search beyond the Graph type.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np

from .graph import Graph


class Problem(str, Enum):
    RDRD_MIN = "RDRD_MIN"
    DRD_MIN = "DRD_MIN"
    DOM_MIN = "DOM_MIN"
    TWOPACK_MAX = "TWOPACK_MAX"

    @classmethod
    def parse(cls, name: str) -> "Problem":
        short = {"rdrd": cls.RDRD_MIN, "drd": cls.DRD_MIN, "dom": cls.DOM_MIN,
                 "twopack": cls.TWOPACK_MAX}
        return short.get(name.lower()) or cls(name.upper())


LABEL_LIMIT = 13
SET_LIMIT = 22
_CHUNK = 1 << 18


class SolverLimitError(ValueError):
    pass


@dataclass
class SolveResult:
    problem: Problem
    value: Optional[int]
    certificate: Optional[tuple[int, ...]]
    optimal: bool = True
    lower_bound: Optional[int] = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    optimum_count: Optional[int] = None
    optima: Optional[list[tuple[int, ...]]] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "problem": self.problem.value,
            "value": self.value,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "optimal": self.optimal,
            "lower_bound": self.lower_bound,
            "nodes": self.nodes_explored,
            "optimum_count": self.optimum_count,
            "timing": {"ms": round(self.elapsed * 1000, 3)},
        }


# ---------------------------------------------------------------------------
# brute force


def brute_force(g: Graph, problem: Problem | str = Problem.RDRD_MIN,
                enumerate_all: bool = False, limit: Optional[int] = None) -> SolveResult:
    problem = Problem.parse(problem) if isinstance(problem, str) else problem
    t0 = time.perf_counter()
    if problem in (Problem.RDRD_MIN, Problem.DRD_MIN):
        limit = LABEL_LIMIT if limit is None else limit
        if g.n > limit:
            raise SolverLimitError(f"brute force over labelings is limited to n <= {limit} (n={g.n})")
        res = _brute_labels(g, problem is Problem.RDRD_MIN, enumerate_all)
    else:
        limit = SET_LIMIT if limit is None else limit
        if g.n > limit:
            raise SolverLimitError(f"brute force over vertex sets is limited to n <= {limit} (n={g.n})")
        res = _brute_sets(g, problem, enumerate_all)
    res.problem = problem
    res.elapsed = time.perf_counter() - t0
    return res


def _digits(idx: np.ndarray, n: int) -> np.ndarray:
    # vertex 0 is the most significant base-4 digit, so index order is lexicographic
    shifts = np.array([2 * (n - 1 - v) for v in range(n)], dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 3).astype(np.int8)


def _brute_labels(g: Graph, restrained: bool, enumerate_all: bool) -> SolveResult:
    n = g.n
    if n == 0:
        return SolveResult(Problem.RDRD_MIN, 0, (), nodes_explored=1, optimum_count=1,
                           optima=[()] if enumerate_all else None)
    adj = np.zeros((n, n), dtype=np.float32)
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1.0
    total = 4 ** n
    best = 2 * n + 1  # the all-2 labeling always works, so the optimum is <= 2n
    first: Optional[int] = None
    optima: list[np.ndarray] = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        lab = _digits(idx, n)
        w = lab.sum(axis=1, dtype=np.int32)
        keep = w <= best if enumerate_all else w < best
        if not keep.any():
            continue
        idx, lab, w = idx[keep], lab[keep], w[keep]
        is0 = lab == 0
        c3 = (lab == 3).astype(np.float32) @ adj
        c2 = (lab == 2).astype(np.float32) @ adj
        ok = ~is0 | (c3 > 0) | (c2 >= 2)
        if restrained:
            c0 = is0.astype(np.float32) @ adj
            ok &= ~is0 | (c0 > 0)
        ok &= (lab != 1) | ((c2 + c3) > 0)
        good = ok.all(axis=1)
        if not good.any():
            continue
        wmin = int(w[good].min())
        if wmin < best:
            best = wmin
            first = int(idx[good & (w == wmin)][0])
            optima = []
        if enumerate_all and wmin == best:
            optima.append(idx[good & (w == best)])
    cert = tuple(int(x) for x in _digits(np.array([first]), n)[0])
    res = SolveResult(Problem.RDRD_MIN, best, cert, lower_bound=best, nodes_explored=total)
    if enumerate_all:
        all_idx = np.concatenate(optima)
        res.optima = [tuple(int(x) for x in row) for row in _digits(all_idx, n)]
        res.optimum_count = len(res.optima)
    return res


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int32)


def _brute_sets(g: Graph, problem: Problem, enumerate_all: bool) -> SolveResult:
    n = g.n
    closed = [g.masks[v] | (1 << v) for v in range(n)]
    if problem is Problem.TWOPACK_MAX:
        # S is a 2-packing iff no other member lies within distance 2 of a member
        ball2 = []
        for v in range(n):
            mk = closed[v]
            for w in g.adj[v]:
                mk |= closed[w]
            ball2.append(mk & ~(1 << v))
    total = 1 << n
    best: Optional[int] = None
    first = None
    optima: list[np.ndarray] = []
    maximize = problem is Problem.TWOPACK_MAX
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        ok = np.ones(idx.shape, dtype=bool)
        if maximize:
            for v in range(n):
                ok &= (((idx >> v) & 1) == 0) | ((idx & ball2[v]) == 0)
        else:
            for v in range(n):
                ok &= (idx & closed[v]) != 0
        if not ok.any():
            continue
        idx = idx[ok]
        size = _popcount(idx)
        val = int(size.max() if maximize else size.min())
        if best is None or (val > best if maximize else val < best):
            best, first, optima = val, int(idx[size == val][0]), []
        if enumerate_all and val == best:
            optima.append(idx[size == best])
    cert = tuple(v for v in range(n) if first >> v & 1)
    res = SolveResult(problem, best, cert, lower_bound=best, nodes_explored=total)
    if enumerate_all:
        all_idx = np.concatenate(optima)
        res.optima = [tuple(v for v in range(n) if int(x) >> v & 1) for x in all_idx]
        res.optimum_count = len(res.optima)
    return res


# ---------------------------------------------------------------------------
# branch and bound

LABEL_ORDER = (3, 2, 0, 1)


class _Timeout(Exception):
    pass


class _Search:
    """Depth-first search over one connected graph.

    Vertices are fixed in descending-degree order (ties by index), labels in
    the order 3, 2, 0, 1. A partial labeling is cut when its weight plus an
    admissible completion bound reaches the incumbent (exceeds it when
    enumerating all optima). The bound is the larger of a packing bound
    (residual demands with disjoint unassigned closed neighbourhoods add up)
    and a counting bound (total residual demand / (max degree + 1)).
    """

    def __init__(self, g: Graph, restrained: bool, cutoff: int, enumerate_all: bool,
                 deadline: Optional[float], prefix: tuple[int, ...] = ()):
        self.g = g
        self.n = n = g.n
        self.restrained = restrained
        self.enumerate_all = enumerate_all
        self.deadline = deadline
        self.order = sorted(range(n), key=lambda v: (-g.degree(v), v))
        self.bound_order = sorted(range(n), key=lambda v: (g.degree(v), v))
        self.adj = g.adj
        self.open_mask = g.masks
        self.closed_mask = tuple(g.masks[v] | (1 << v) for v in range(n))
        self.dp1 = max((g.degree(v) for v in range(n)), default=0) + 1
        self.lab = [-1] * n
        self.c3 = [0] * n
        self.c2 = [0] * n
        self.c0 = [0] * n
        self.unas = [g.degree(v) for v in range(n)]
        self.umask = (1 << n) - 1
        self.best = cutoff  # search for weight < best (<= best when enumerating)
        self.best_labels: Optional[tuple[int, ...]] = None
        self.optima: list[tuple[int, ...]] = []
        self.nodes = 0
        self.prefix = prefix

    def bound(self) -> int:
        lab, c3, c2 = self.lab, self.c3, self.c2
        umask = self.umask
        used = 0
        packed = 0
        total = 0
        for v in self.bound_order:
            x = lab[v]
            if x == -1:
                if c3[v] or c2[v] >= 2:
                    continue
                r = 1 if c2[v] else 2
                prov = self.closed_mask[v] & umask
            elif x == 0:
                if c3[v] or c2[v] >= 2:
                    continue
                r = 2 if c2[v] else 3
                prov = self.open_mask[v] & umask
            elif x == 1:
                if c3[v] or c2[v]:
                    continue
                r = 2
                prov = self.open_mask[v] & umask
            else:
                continue
            total += r
            if not prov & used:
                packed += r
                used |= prov
        return max(packed, -(-total // self.dp1))

    def _ok(self, v: int) -> bool:
        x = self.lab[v]
        if x == 0:
            return (self.c3[v] > 0 or self.c2[v] >= 2) and (not self.restrained or self.c0[v] > 0)
        if x == 1:
            return self.c3[v] + self.c2[v] > 0
        return True

    def _assign(self, v: int, x: int) -> bool:
        self.lab[v] = x
        self.umask &= ~(1 << v)
        feasible = True
        for w in self.adj[v]:
            self.unas[w] -= 1
            if x == 3:
                self.c3[w] += 1
            elif x == 2:
                self.c2[w] += 1
            elif x == 0:
                self.c0[w] += 1
            if self.unas[w] == 0 and self.lab[w] >= 0 and not self._ok(w):
                feasible = False
        if self.unas[v] == 0 and not self._ok(v):
            feasible = False
        return feasible

    def _unassign(self, v: int, x: int) -> None:
        for w in self.adj[v]:
            self.unas[w] += 1
            if x == 3:
                self.c3[w] -= 1
            elif x == 2:
                self.c2[w] -= 1
            elif x == 0:
                self.c0[w] -= 1
        self.lab[v] = -1
        self.umask |= 1 << v

    def run(self) -> None:
        self._dfs(0, 0)

    def _dfs(self, depth: int, w: int) -> None:
        if depth == self.n:
            if w < self.best:
                self.best = w
                self.best_labels = tuple(self.lab)
                self.optima = [self.best_labels] if self.enumerate_all else []
            elif self.enumerate_all and w == self.best:
                self.optima.append(tuple(self.lab))
                if self.best_labels is None:
                    self.best_labels = tuple(self.lab)
            return
        v = self.order[depth]
        labels = (self.prefix[depth],) if depth < len(self.prefix) else LABEL_ORDER
        for x in labels:
            self.nodes += 1
            if self.deadline is not None and not self.nodes & 1023 \
                    and time.perf_counter() > self.deadline:
                raise _Timeout
            if self._assign(v, x):
                lb = w + x + self.bound()
                if lb < self.best or (self.enumerate_all and lb == self.best):
                    self._dfs(depth + 1, w + x)
            self._unassign(v, x)


def _solve_component(g: Graph, restrained: bool, cutoff: Optional[int], enumerate_all: bool,
                     deadline: Optional[float], threads: int) -> SolveResult:
    n = g.n
    problem = Problem.RDRD_MIN if restrained else Problem.DRD_MIN
    # the all-2 labeling (weight 2n) is always feasible
    limit = 2 * n if cutoff is None else cutoff
    # normal mode looks for weight < start_best, enumeration for weight <= start_best
    start_best = limit if enumerate_all else limit + 1
    fallback = None
    if cutoff is None and not enumerate_all:
        start_best, fallback = 2 * n, tuple([2] * n)
    root = _Search(g, restrained, start_best, enumerate_all, deadline)
    root_lb = root.bound()
    if threads > 1 and n >= 8:
        best, labels, optima, nodes, timed_out = _parallel(
            g, restrained, start_best, enumerate_all, deadline, threads)
    else:
        best, labels, optima, nodes, timed_out = _run_search(root)
    value = best if labels is not None else None
    if labels is None and fallback is not None:
        labels, value = fallback, 2 * n
    if timed_out:
        lower = root_lb
    else:
        lower = value if value is not None else cutoff + 1
    res = SolveResult(problem, value, labels, optimal=not timed_out and value is not None,
                      lower_bound=lower, nodes_explored=nodes)
    if enumerate_all:
        res.optima = sorted(optima)
        res.optimum_count = len(optima)
    return res


def _run_search(s: _Search):
    try:
        s.run()
        timed_out = False
    except _Timeout:
        timed_out = True
    return s.best, s.best_labels, s.optima, s.nodes, timed_out


def _run_task(args):
    return _run_search(_Search(*args))


def _parallel(g, restrained, start_best, enumerate_all, deadline, threads):
    """Split on the labels of the first two branching vertices.

    Subtrees do not share incumbents, so node counts differ from a serial run;
    the optimum and the optimality flag do not.
    """
    tasks = [(g, restrained, start_best, enumerate_all, deadline, (a, b))
             for a in LABEL_ORDER for b in LABEL_ORDER]
    best, best_labels, optima, nodes, any_timeout = start_best, None, [], 0, False
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for b, labels, opt, cnt, timed_out in pool.map(_run_task, tasks):
            nodes += cnt
            any_timeout |= timed_out
            if labels is None:
                continue
            if best_labels is None or b < best:
                best, best_labels, optima = b, labels, list(opt)
            elif enumerate_all and b == best:
                optima.extend(opt)
    return best, best_labels, optima, nodes, any_timeout


def solve_rdrd_bnb(g: Graph, *, restrained: bool = True, timeout: Optional[float] = None,
                   cutoff: Optional[int] = None, enumerate_all: bool = False,
                   threads: int = 1) -> SolveResult:
    """Exact minimum (restrained) double Roman labeling by branch and bound.

    Disconnected graphs are solved component by component and summed.

    ``cutoff`` turns the search into the decision problem "is there a labeling
    of weight <= cutoff?": when none exists the result has ``value=None`` and
    ``lower_bound=cutoff+1``. On timeout the best labeling found so far is
    returned with ``optimal=False`` and a (weak) proven ``lower_bound``.
    ``enumerate_all`` collects every optimal labeling.
    """
    t0 = time.perf_counter()
    if timeout is None and os.environ.get("RDRD_TIMEOUT"):
        timeout = float(os.environ["RDRD_TIMEOUT"])
    deadline = t0 + timeout if timeout else None
    problem = Problem.RDRD_MIN if restrained else Problem.DRD_MIN
    comps = g.components()
    if g.n == 0:
        return SolveResult(problem, 0, (), lower_bound=0, nodes_explored=0,
                           optimum_count=1 if enumerate_all else None,
                           optima=[()] if enumerate_all else None)
    if len(comps) > 1:
        if cutoff is not None:
            # decision mode needs the exact component optima; solve them fully
            full = solve_rdrd_bnb(g, restrained=restrained, timeout=timeout,
                                  enumerate_all=enumerate_all, threads=threads)
            if full.optimal and full.value > cutoff:
                return replace(full, value=None, certificate=None, optimal=False,
                               lower_bound=full.value, optima=None, optimum_count=None,
                               elapsed=time.perf_counter() - t0)
            return full
        labels = [0] * g.n
        value = lower = nodes = 0
        optimal = True
        optima: Optional[list[tuple[int, ...]]] = [()] if enumerate_all else None
        for comp in comps:
            sub = _solve_component(g.subgraph(comp), restrained, None, enumerate_all,
                                   deadline, threads)
            for i, v in enumerate(comp):
                labels[v] = sub.certificate[i]
            value += sub.value
            lower += sub.lower_bound
            nodes += sub.nodes_explored
            optimal &= sub.optimal
            if enumerate_all:
                optima = [prev + (opt,) for prev in optima for opt in sub.optima]
        res = SolveResult(problem, value, tuple(labels), optimal=optimal, lower_bound=lower,
                          nodes_explored=nodes)
        if enumerate_all:
            res.optima = sorted(_scatter(g.n, comps, combo) for combo in optima)
            res.optimum_count = len(res.optima)
    else:
        res = _solve_component(g, restrained, cutoff, enumerate_all, deadline, threads)
    res.elapsed = time.perf_counter() - t0
    return res


def _scatter(n, comps, combo):
    labels = [0] * n
    for comp, part in zip(comps, combo):
        for i, v in enumerate(comp):
            labels[v] = part[i]
    return tuple(labels)


def solve(g: Graph, problem: Problem | str = Problem.RDRD_MIN, method: str = "bnb",
          timeout: Optional[float] = None, enumerate_all: bool = False,
          threads: int = 1) -> SolveResult:
    """Dispatch to brute force or branch and bound (the latter for RDRD/DRD only)."""
    problem = Problem.parse(problem) if isinstance(problem, str) else problem
    if method == "brute":
        return brute_force(g, problem, enumerate_all=enumerate_all)
    if method != "bnb":
        raise ValueError(f"unknown method {method!r}")
    if problem not in (Problem.RDRD_MIN, Problem.DRD_MIN):
        raise ValueError("branch and bound supports the rdrd and drd problems only")
    return solve_rdrd_bnb(g, restrained=problem is Problem.RDRD_MIN, timeout=timeout,
                          enumerate_all=enumerate_all, threads=threads)


def rdrd_number(g: Graph) -> int:
    return solve_rdrd_bnb(g).value


def domination_number(g: Graph) -> int:
    return brute_force(g, Problem.DOM_MIN).value


def two_packing_number(g: Graph) -> int:
    return brute_force(g, Problem.TWOPACK_MAX).value

