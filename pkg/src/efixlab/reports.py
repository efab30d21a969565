"""Verdicts, witnesses and the report records every checker returns."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Any, Iterable, Sequence

import numpy as np

WITNESS_LIMIT = 10


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Witness:
    """Concrete inputs with both sides of the inequality they violate."""

    inputs: tuple
    lhs: float
    rhs: float

    @property
    def excess(self) -> float:
        return self.lhs - self.rhs

    def sort_key(self):
        return (-self.excess, self.inputs)

    def to_dict(self) -> dict:
        return {"inputs": list(self.inputs), "lhs": self.lhs, "rhs": self.rhs}

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        return cls(tuple(d["inputs"]), d["lhs"], d["rhs"])


def make_witness(inputs: Iterable, lhs, rhs) -> Witness:
    clean = tuple(int(v) if isinstance(v, (int, np.integer)) else float(v) for v in inputs)
    return Witness(clean, float(lhs), float(rhs))


def order_witnesses(
    candidates: Iterable[Witness],
    limit: int = WITNESS_LIMIT,
    pinned: Iterable[Witness] = (),
) -> list[Witness]:
    """Keep the ``limit`` worst candidates plus every pinned one.

    Order is by violation size, then lexicographically by inputs, so the
    result never depends on evaluation order.
    """
    chosen = sorted(set(candidates), key=Witness.sort_key)[:limit]
    extra = [w for w in pinned if w not in chosen]
    return sorted(set(chosen) | set(extra), key=Witness.sort_key)


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


@dataclass
class _Report:
    verdict: Verdict
    witnesses: list[Witness] = field(default_factory=list)
    tolerance: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAIL

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "witnesses":
                value = [w.to_dict() for w in value]
            out[f.name] = _plain(value)
        return out

    @classmethod
    def from_dict(cls, d: dict):
        kwargs = dict(d)
        kwargs["verdict"] = Verdict(d["verdict"])
        kwargs["witnesses"] = [Witness.from_dict(w) for w in d["witnesses"]]
        if "n_range" in kwargs:
            kwargs["n_range"] = tuple(kwargs["n_range"])
        return cls(**kwargs)


@dataclass
class AxiomReport(_Report):
    axiom: str = ""
    samples_checked: int = 0


@dataclass
class HypothesisReport(_Report):
    hypothesis: str = ""
    checked_pairs: int = 0
    n_range: tuple = (1, 1)


def combine(verdicts: Sequence[Verdict]) -> Verdict:
    """FAIL dominates, then INCONCLUSIVE."""
    if any(v is Verdict.FAIL for v in verdicts):
        return Verdict.FAIL
    if any(v is Verdict.INCONCLUSIVE for v in verdicts):
        return Verdict.INCONCLUSIVE
    return Verdict.PASS
