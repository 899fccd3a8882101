"""Column-weight audits for strip-shaped graphs and the bagging lower bound on C_3 x C_m.

Column j of a layout is the vertex set V^j; the column weight is f_j = f(V^j).

* ``strong_strip`` (P_r [x] P_m, r in {2,3}): V^j = {i*m + j : 0 <= i < r}, path-like.
* ``c3xcm`` (C_3 x C_m): V^j = {j, m+j, 2m+j}, cyclic.
* ``corona_path`` / ``corona_cycle`` (G o K_1, G in {P_n, C_n}): V^j = {j, n+j}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph
from .labeling import Labeling, LabelsLike, validate


class AuditPreconditionError(ValueError):
    pass


LAYOUT_KINDS = ("strong_strip", "c3xcm", "corona_path", "corona_cycle")


@dataclass(frozen=True)
class StripLayout:
    kind: str
    m: int          # number of columns
    rows: int = 3   # strong_strip only

    def __post_init__(self):
        if self.kind not in LAYOUT_KINDS:
            raise ValueError(f"unknown layout {self.kind!r}; expected one of {', '.join(LAYOUT_KINDS)}")
        if self.kind == "strong_strip" and self.rows not in (2, 3):
            raise ValueError("strong_strip layout needs rows in {2, 3}")
        if self.m < 1:
            raise ValueError("layout needs at least one column")

    @classmethod
    def strong_strip(cls, rows: int, m: int) -> "StripLayout":
        return cls("strong_strip", m, rows)

    @classmethod
    def c3xcm(cls, m: int) -> "StripLayout":
        return cls("c3xcm", m, 3)

    @classmethod
    def corona(cls, base: str, n: int) -> "StripLayout":
        return cls(f"corona_{base}", n, 2)

    @classmethod
    def for_graph(cls, kind: str, g: Graph) -> "StripLayout":
        """Infer the column count from the graph order; ``kind`` may be ``strong_strip:R``."""
        rows = 3
        if kind.startswith("strong_strip"):
            _, _, r = kind.partition(":")
            rows = int(r) if r else 2
            kind = "strong_strip"
        per = {"strong_strip": rows, "c3xcm": 3}.get(kind, 2)
        if g.n % per:
            raise ValueError(f"graph order {g.n} is not a multiple of the column size {per}")
        return cls(kind, g.n // per, rows)

    @property
    def cyclic(self) -> bool:
        return self.kind in ("c3xcm", "corona_cycle")

    @property
    def column_size(self) -> int:
        return {"strong_strip": self.rows, "c3xcm": 3}.get(self.kind, 2)

    @property
    def order(self) -> int:
        return self.m * self.column_size

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(i * self.m + j for i in range(self.column_size))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.m)]

    def graph(self) -> Graph:
        from .catalog import catalog_graph
        if self.kind == "strong_strip":
            return catalog_graph("strong_strip", {"n": self.rows, "m": self.m})
        if self.kind == "c3xcm":
            return catalog_graph("c3xcm", {"m": self.m})
        return catalog_graph("corona_pn" if self.kind == "corona_path" else "corona_cn", {"n": self.m})


def column_weights(layout: StripLayout, f: LabelsLike) -> list[int]:
    f = Labeling.of(f)
    if len(f) != layout.order:
        raise ValueError(f"labeling has {len(f)} entries but layout has {layout.order} vertices")
    return [sum(f[v] for v in col) for col in layout.columns()]


@dataclass(frozen=True)
class Inequality:
    name: str
    columns: tuple[int, ...]
    lhs: int
    rhs: int
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        d = {"name": self.name, "columns": list(self.columns), "lhs": self.lhs,
             "rhs": self.rhs, "passed": self.passed}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class LemmaReport:
    layout: str
    weights: list[int]
    checks: list[Inequality] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Inequality]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"layout": self.layout, "passed": self.passed, "weights": self.weights,
                "checks": [c.to_json() for c in self.checks]}


def _require_valid(layout: StripLayout, f: Labeling, g: Optional[Graph]) -> None:
    g = layout.graph() if g is None else g
    if g.n != layout.order:
        raise AuditPreconditionError(f"graph has {g.n} vertices, layout expects {layout.order}")
    if len(f) != g.n:
        raise AuditPreconditionError(f"labeling has {len(f)} entries, graph has {g.n} vertices")
    rep = validate(g, f)
    if not rep.valid:
        raise AuditPreconditionError(
            f"precondition failed: labeling is not RDRD-valid ({len(rep.violations)} violations, "
            f"first at vertex {rep.violations[0].vertex})")


def _strip_checks(w: list[int]) -> list[Inequality]:
    m = len(w)
    out = []
    for j in range(1, m - 1):
        s = w[j - 1] + w[j] + w[j + 1]
        out.append(Inequality("window3", (j - 1, j, j + 1), s, 3, s >= 3))
    if m >= 2:
        for cols in ((0, 1), (m - 2, m - 1)):
            s = w[cols[0]] + w[cols[1]]
            out.append(Inequality("end_pair", cols, s, 3, s >= 3))
    return out


def _cyclic_checks(w: list[int]) -> list[Inequality]:
    m = len(w)
    out = []
    for j in range(m):
        a, b = (j - 1) % m, (j + 1) % m
        s = w[a] + w[b]
        if w[j] == 0:
            out.append(Inequality("L1", (a, j, b), s, 6, s >= 6))
        elif w[j] == 1:
            out.append(Inequality("L2", (a, j, b), s, 5, s >= 5))
        elif w[j] == 3:
            out.append(Inequality("L3", (a, j, b), s, 3, s >= 3))
        elif 4 <= w[j] <= 5:
            big = max(w[a], w[b])
            out.append(Inequality("L4", (a, j, b), big, 2, big >= 2,
                                  "max neighbouring column weight"))
    return out


def _corona_checks(w: list[int], cyclic: bool, optimal: bool) -> list[Inequality]:
    n = len(w)
    starts = range(n) if cyclic else range(n - 2)
    windows = []
    out = []
    for j in starts:
        cols = tuple((j + d) % n for d in range(3))
        s = sum(w[c] for c in cols)
        windows.append(s)
        out.append(Inequality("window_ge_7", cols, s, 7, s >= 7))
    if optimal and cyclic and n % 3 == 2 and n >= 3:
        total = sum(w)
        if max(windows, default=0) >= 9:
            # one heavy window already forces 3 f(V) >= 9 + 7(n-1)
            need = -(-(7 * n + 2) // 3)
            out.append(Inequality("heavy_window_bound", tuple(range(n)), total, need, total >= need,
                                  "some window >= 9; total weight vs ceil(7n/3)+1"))
        cnt = sum(1 for s in windows if s >= 8)
        out.append(Inequality("two_windows_ge_8", tuple(range(n)), cnt, 2, cnt >= 2,
                              "number of windows with sum >= 8"))
    return out


def audit_columns(layout: StripLayout, f: LabelsLike, g: Optional[Graph] = None,
                  optimal: bool = False) -> LemmaReport:
    """Evaluate every applicable column inequality for a valid labeling.

    ``optimal=True`` adds the extra window-count check for C_n o K_1, n = 2 (mod 3),
    which only holds for minimum-weight labelings.
    """
    f = Labeling.of(f)
    _require_valid(layout, f, g)
    w = column_weights(layout, f)
    if layout.kind == "strong_strip":
        checks = _strip_checks(w)
    elif layout.kind == "c3xcm":
        checks = _cyclic_checks(w)
    else:
        checks = _corona_checks(w, layout.cyclic, optimal)
    return LemmaReport(layout.kind, w, checks)


# -- bagging -------------------------------------------------------------------------

@dataclass(frozen=True)
class Bag:
    stage: int
    columns: tuple[int, ...]
    weight: int

    @property
    def valid(self) -> bool:
        return self.weight >= 2 * len(self.columns)


@dataclass
class BagReport:
    m: int
    bags: list[Bag]
    unbagged: list[int]
    certified_bound: Optional[int]
    failure: str = ""

    @property
    def certified(self) -> bool:
        return self.certified_bound is not None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "bags": [{"stage": b.stage, "columns": list(b.columns), "weight": b.weight,
                      "valid": b.valid} for b in self.bags],
            "unbagged": self.unbagged,
            "certified_bound": self.certified_bound,
            "failure": self.failure or None,
        }


def bagging_certificate(layout: StripLayout, f: LabelsLike, g: Optional[Graph] = None) -> BagReport:
    """Partition the columns of C_3 x C_m into bags of average weight >= 2.

    Stages run in order, ascending column index within a stage:

    1. f_j >= 6 opens a bag and absorbs unbagged neighbours with weight <= 1;
    2. 4 <= f_j <= 5, same absorption;
    3. f_j = 3 with an unbagged neighbour of weight exactly 1 absorbs those neighbours;
    4. remaining f_j = 3 absorb an unbagged 0-neighbour plus the unbagged column beyond it;
    5. f_j = 2 become singleton bags.

    Every absorption requires the target column to still be unbagged. The bound 2m is
    certified only when every column ends up in a bag of weight >= 2 * size.
    """
    if layout.kind != "c3xcm":
        raise ValueError("bagging applies to the c3xcm layout only")
    f = Labeling.of(f)
    _require_valid(layout, f, g)
    w = column_weights(layout, f)
    m = layout.m
    bagged = [False] * m
    bags: list[Bag] = []

    def free(j: int) -> bool:
        return not bagged[j % m]

    def close(stage: int, cols: list[int]) -> None:
        cols = sorted({c % m for c in cols})
        for c in cols:
            bagged[c] = True
        bags.append(Bag(stage, tuple(cols), sum(w[c] for c in cols)))

    for stage, pick in ((1, lambda x: x >= 6), (2, lambda x: 4 <= x <= 5)):
        for j in range(m):
            if pick(w[j]) and free(j):
                bagged[j] = True
                cols = [j] + [j + d for d in (-1, 1) if w[(j + d) % m] <= 1 and free(j + d)]
                close(stage, cols)

    for j in range(m):
        if w[j] == 3 and free(j):
            ones = [j + d for d in (-1, 1) if w[(j + d) % m] == 1 and free(j + d)]
            if ones:
                bagged[j] = True
                close(3, [j] + ones)

    for j in range(m):
        if w[j] == 3 and free(j):
            bagged[j] = True
            cols = [j]
            for d in (-1, 1):
                if w[(j + d) % m] == 0 and free(j + d):
                    cols.append(j + d)
                    bagged[(j + d) % m] = True
                    if free(j + 2 * d):
                        cols.append(j + 2 * d)
                        bagged[(j + 2 * d) % m] = True
            close(4, cols)

    for j in range(m):
        if w[j] == 2 and free(j):
            close(5, [j])

    unbagged = [j for j in range(m) if not bagged[j]]
    bad = [b for b in bags if not b.valid]
    failure = ""
    if unbagged:
        failure = f"column {unbagged[0]} (weight {w[unbagged[0]]}) could not be bagged"
    elif bad:
        failure = f"bag {list(bad[0].columns)} has weight {bad[0].weight} < {2 * len(bad[0].columns)}"
    return BagReport(m, bags, unbagged, None if failure else 2 * m, failure)
