"""Exact Cover by 3-Sets -> restrained double Roman domination on chordal graphs.

Vertex numbering for an instance with universe size 3q and t triples:

    x_i   = i                 (0 <= i < 3q)   element vertices
    y_i   = 3q + i                            pendant on x_i
    c_j   = 6q + j            (0 <= j < t)    triple vertices
    c'_j  = 6q + t + j                        twin of c_j
    z     = 6q + 2t
    z1..z4 = 6q + 2t + 1 .. 6q + 2t + 4

The c/c' vertices form a clique B, z is joined to all of B, and z closes the
triangles z-z1-z2 and z-z3-z4. The decision threshold is k = 8q + 3.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph
from .labeling import Labeling, LabelsLike, validate


class ReductionError(ValueError):
    pass


NOT_NORMALIZED = "NOT_NORMALIZED"
UNSOLVABLE = "UNSOLVABLE"


@dataclass(frozen=True)
class X3CInstance:
    q: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.q < 1:
            raise ReductionError("q must be a positive integer")
        if not self.triples:
            raise ReductionError("triple list must be nonempty")
        for j, tr in enumerate(self.triples):
            if len(tr) != 3 or len(set(tr)) != 3:
                raise ReductionError(f"triple {j} must have 3 distinct elements: {tr}")
            if not all(0 <= x < 3 * self.q for x in tr):
                raise ReductionError(f"triple {j} has an element outside 0..{3 * self.q - 1}")

    @classmethod
    def of(cls, q: int, triples: Sequence[Sequence[int]]) -> "X3CInstance":
        return cls(q, tuple(tuple(sorted(int(x) for x in tr)) for tr in triples))

    @classmethod
    def from_json(cls, text: str) -> "X3CInstance":
        data = json.loads(text)
        try:
            return cls.of(data["q"], data["triples"])
        except (KeyError, TypeError) as exc:
            raise ReductionError(f"bad X3C JSON: {exc}") from None

    def to_json(self) -> str:
        return json.dumps({"q": self.q, "triples": [list(t) for t in self.triples]})

    @property
    def t(self) -> int:
        return len(self.triples)


@dataclass(frozen=True)
class Reduction:
    instance: X3CInstance
    graph: Graph
    k: int
    roles: tuple[str, ...]

    def x(self, i: int) -> int:
        return i

    def y(self, i: int) -> int:
        return 3 * self.instance.q + i

    def c(self, j: int) -> int:
        return 6 * self.instance.q + j

    def c_twin(self, j: int) -> int:
        return 6 * self.instance.q + self.instance.t + j

    @property
    def z(self) -> int:
        return 6 * self.instance.q + 2 * self.instance.t


def build_reduction(inst: X3CInstance) -> Reduction:
    q, t = inst.q, inst.t
    nx = 3 * q
    z = 6 * q + 2 * t
    edges = [(i, nx + i) for i in range(nx)]
    for j, tr in enumerate(inst.triples):
        for i in tr:
            edges.append((i, 6 * q + j))
            edges.append((i, 6 * q + t + j))
    bset = list(range(6 * q, 6 * q + 2 * t))
    edges += [(a, b) for k, a in enumerate(bset) for b in bset[k + 1:]]
    edges += [(z, b) for b in bset]
    edges += [(z, z + 1), (z, z + 2), (z + 1, z + 2), (z, z + 3), (z, z + 4), (z + 3, z + 4)]
    roles = ([f"x_{i}" for i in range(nx)] + [f"y_{i}" for i in range(nx)]
             + [f"c_{j}" for j in range(t)] + [f"c'_{j}" for j in range(t)]
             + ["z", "z1", "z2", "z3", "z4"])
    g = Graph.from_edges(6 * q + 2 * t + 5, edges)
    return Reduction(inst, g, 8 * q + 3, tuple(roles))


def _cover_problem(inst: X3CInstance, cover: Sequence[int]) -> Optional[str]:
    counts = [0] * (3 * inst.q)
    for j in cover:
        if not 0 <= j < inst.t:
            return f"triple index {j} out of range"
        for x in inst.triples[j]:
            counts[x] += 1
    for x, c in enumerate(counts):
        if c == 0:
            return f"element {x} uncovered"
        if c > 1:
            return f"element {x} covered {c} times"
    return None


def is_exact_cover(inst: X3CInstance, cover: Sequence[int]) -> bool:
    return _cover_problem(inst, cover) is None


def cover_to_labeling(r: Reduction, cover: Sequence[int]) -> Labeling:
    """z -> 3, every y_i and every chosen c_j -> 2, everything else -> 0."""
    problem = _cover_problem(r.instance, cover)
    if problem:
        raise ReductionError(f"not an exact cover: {problem}")
    labels = [0] * r.graph.n
    labels[r.z] = 3
    for i in range(3 * r.instance.q):
        labels[r.y(i)] = 2
    for j in cover:
        labels[r.c(j)] = 2
    return Labeling(tuple(labels))


def labeling_to_cover(r: Reduction, f: LabelsLike):
    """Project a labeling of weight <= k onto the triples whose c_j or c'_j carries >= 2.

    Returns the sorted cover, or ``NOT_NORMALIZED`` when the projection is not
    an exact cover.
    """
    f = Labeling.of(f)
    rep = validate(r.graph, f)
    if not rep.valid:
        raise ReductionError(f"labeling is not a valid RDRD function ({len(rep.violations)} violations)")
    if f.weight > r.k:
        raise ReductionError(f"labeling weight {f.weight} exceeds k={r.k}")
    cand = [j for j in range(r.instance.t) if f[r.c(j)] >= 2 or f[r.c_twin(j)] >= 2]
    return cand if is_exact_cover(r.instance, cand) else NOT_NORMALIZED


def all_exact_covers(inst: X3CInstance) -> list[list[int]]:
    by_elem: list[list[int]] = [[] for _ in range(3 * inst.q)]
    for j, tr in enumerate(inst.triples):
        for x in tr:
            by_elem[x].append(j)
    found: list[list[int]] = []

    def rec(covered: set[int], chosen: list[int]) -> None:
        free = next((x for x in range(3 * inst.q) if x not in covered), None)
        if free is None:
            found.append(sorted(chosen))
            return
        for j in by_elem[free]:
            tr = inst.triples[j]
            if not covered.intersection(tr):
                rec(covered | set(tr), chosen + [j])

    rec(set(), [])
    return found


def x3c_brute(inst: X3CInstance):
    """Lexicographically first exact cover (as a sorted index list) or ``UNSOLVABLE``."""
    covers = all_exact_covers(inst)
    return min(covers) if covers else UNSOLVABLE
