"""(Restrained) double Roman labelings and their validator."""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

from .graph import Graph


class LabelingError(ValueError):
    pass


class Variant(str, Enum):
    RDRD = "RDRD"
    DRD = "DRD"


ZERO_NEEDS_DEFENSE = "ZERO_NEEDS_DEFENSE"
ONE_NEEDS_STRONG_NEIGHBOR = "ONE_NEEDS_STRONG_NEIGHBOR"
ZERO_ISOLATED_IN_V0 = "ZERO_ISOLATED_IN_V0"


@dataclass(frozen=True)
class Labeling:
    labels: tuple[int, ...]

    def __post_init__(self):
        bad = [x for x in self.labels if x not in (0, 1, 2, 3)]
        if bad:
            raise LabelingError(f"labels must be in {{0,1,2,3}}, got {bad[0]!r}")

    @classmethod
    def of(cls, labels: "LabelsLike") -> "Labeling":
        return labels if isinstance(labels, Labeling) else cls(tuple(int(x) for x in labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    @property
    def weight(self) -> int:
        return sum(self.labels)

    def partition(self) -> tuple[frozenset[int], ...]:
        """(V0, V1, V2, V3)."""
        parts: list[set[int]] = [set(), set(), set(), set()]
        for v, x in enumerate(self.labels):
            parts[x].add(v)
        return tuple(frozenset(p) for p in parts)


LabelsLike = Union[Labeling, Sequence[int]]


def weight(f: LabelsLike) -> int:
    return sum(f)


@dataclass(frozen=True)
class Violation:
    vertex: int
    rule: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    variant: Variant
    violations: tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "variant": self.variant.value,
            "violations": [
                {"vertex": x.vertex, "rule": x.rule, "detail": x.detail} for x in self.violations
            ],
        }


def validate(g: Graph, f: LabelsLike, variant: Variant | str = Variant.RDRD) -> ValidationReport:
    """Check every vertex against every rule; all violations are reported."""
    f = Labeling.of(f)
    variant = Variant(variant)
    if len(f) != g.n:
        raise LabelingError(f"labeling has {len(f)} entries but graph has {g.n} vertices")
    out = []
    for v in range(g.n):
        x = f[v]
        nbr = [f[w] for w in g.adj[v]]
        if x == 0:
            if 3 not in nbr and nbr.count(2) < 2:
                out.append(Violation(v, ZERO_NEEDS_DEFENSE,
                                     f"vertex {v} has label 0 but no neighbour labelled 3 "
                                     f"and {nbr.count(2)} labelled 2"))
            if variant is Variant.RDRD and 0 not in nbr:
                out.append(Violation(v, ZERO_ISOLATED_IN_V0,
                                     f"vertex {v} has label 0 but no neighbour labelled 0"))
        elif x == 1 and max(nbr, default=0) < 2:
            out.append(Violation(v, ONE_NEEDS_STRONG_NEIGHBOR,
                                 f"vertex {v} has label 1 but no neighbour labelled >= 2"))
    return ValidationReport(variant, tuple(out))


def is_valid(g: Graph, f: LabelsLike, variant: Variant | str = Variant.RDRD) -> bool:
    return validate(g, f, variant).valid


def parse_labels(text: str) -> Labeling:
    """JSON ``{"labels": [...]}`` (or a bare JSON list), else whitespace-separated integers."""
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise LabelingError(f"bad labeling JSON: {exc}") from None
        if isinstance(data, dict):
            if "labels" not in data:
                raise LabelingError('labeling JSON needs a "labels" key')
            data = data["labels"]
        if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
            raise LabelingError("labels must be a list of integers")
        return Labeling(tuple(data))
    try:
        return Labeling(tuple(int(tok) for tok in text.split()))
    except ValueError:
        raise LabelingError(f"labels must be integers: {text[:40]!r}") from None


def dump_labels(f: LabelsLike) -> str:
    return json.dumps({"labels": list(f)})
