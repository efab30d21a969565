"""Comparison functions on the half-line and membership in the classes Phi and Psi.

``Phi``: continuous, with ``f(t) < t`` for every ``t > 0`` (forcing ``f(0) = 0``).
``Psi``: upper semicontinuous from the right, ``f(t) < t`` for ``t > 0`` and
``f(0) = 0``.  Pieces are continuous on their closures by construction, so
continuity and right upper semicontinuity reduce to comparing one-sided
limits with values at the finitely many piece boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .expr import Interval, Piecewise
from .reports import HypothesisReport, Verdict, combine, make_witness, order_witnesses

DEFAULT_TOL = 1e-9
GRID_POINTS = 201
PROBE_LEVELS = 30
HALF_LINE = Interval(0.0, math.inf, True, False)


class DomainError(ValueError):
    pass


class ScalarFunc:
    """Piecewise function ``[0, inf) -> R``; pieces partition the half-line."""

    def __init__(self, name: str, pieces: Piecewise):
        self.name = name
        self.pieces = pieces

    @classmethod
    def from_spec(cls, name: str, spec) -> "ScalarFunc":
        """``spec`` is a list of ``[interval, expr]`` pairs or one expression."""
        if isinstance(spec, (str, int, float)):
            spec = [["[0, inf)", str(spec)]]
        return cls(name, Piecewise.from_text(spec, HALF_LINE, "t"))

    def to_spec(self) -> list[list[str]]:
        return self.pieces.to_spec()

    def __call__(self, t):
        if np.ndim(t) == 0:
            if not t >= 0:
                raise DomainError(f"{self.name} is defined on t >= 0, got {t!r}")
            return self.pieces(float(t))
        t = np.asarray(t, dtype=float)
        if not (t >= 0).all():
            raise DomainError(f"{self.name} is defined on t >= 0")
        return self.pieces(t)

    @property
    def boundaries(self) -> list[float]:
        return sorted(set(self.pieces.boundaries))

    def left_limit(self, b: float) -> float:
        return self.pieces.left_limit(b)

    def right_limit(self, b: float) -> float:
        return self.pieces.right_limit(b)

    def __repr__(self) -> str:
        return f"ScalarFunc({self.name!r}, {self.to_spec()!r})"


def eval(f: ScalarFunc, t: float) -> float:  # noqa: A001 - mirrors the documented operation name
    return f(t)


def default_grid(funcs: Sequence[ScalarFunc], range_hi: float | None = None) -> np.ndarray:
    """201 points on ``[0, max(2, range_hi)]`` plus boundaries and their dyadic probes."""
    top = max(2.0, range_hi or 0.0)
    pts = [top * np.arange(GRID_POINTS) / (GRID_POINTS - 1)]
    steps = 2.0 ** -np.arange(1, PROBE_LEVELS + 1)
    for f in funcs:
        for b in f.boundaries:
            pts.append(np.array([b]))
            pts.append(b + steps)
            pts.append(b - steps)
    grid = np.unique(np.concatenate(pts))
    return grid[grid >= 0]


def _probe_limit(f: ScalarFunc, b: float, side: int) -> float:
    # linear extrapolation from the two deepest one-sided dyadic probes
    h = 2.0**-PROBE_LEVELS
    return 2.0 * f(b + side * h) - f(b + 2 * side * h)


def find_jumps(f: ScalarFunc, tol: float) -> list[dict]:
    """Boundaries where a one-sided limit differs from the value by more than ``tol``.

    Each record carries the exact one-sided limits and the dyadic-probe
    estimates of the same limits.
    """
    out = []
    for b in f.boundaries:
        value = f(b)
        left = f.left_limit(b) if b > 0 else value
        right = f.right_limit(b)
        jump = max(abs(left - value), abs(right - value))
        if jump > tol:
            out.append({
                "at": b, "left": left, "value": value, "right": right, "jump": jump,
                "probe_left": _probe_limit(f, b, -1) if b > 0 else value,
                "probe_right": _probe_limit(f, b, +1),
            })
    return out


def _below_identity(f: ScalarFunc, grid: np.ndarray):
    pos = grid[grid > 0]
    vals = f(pos)
    bad = vals >= pos
    return [make_witness((t,), v, t) for t, v in zip(pos[bad], vals[bad])]


def _nonnegative(f: ScalarFunc, grid: np.ndarray):
    vals = f(grid)
    bad = vals < 0
    return [make_witness((t,), 0.0, v) for t, v in zip(grid[bad], vals[bad])]


def _prepare_grid(f: ScalarFunc, grid) -> np.ndarray:
    if grid is None:
        return default_grid([f])
    grid = np.asarray(grid, dtype=float)
    if grid.size < 2 or (grid < 0).any() or (np.diff(grid) < 0).any():
        raise ValueError("grid must be sorted, nonnegative, with at least 2 points")
    return grid


def check_phi_class(f: ScalarFunc, grid=None, tol: float = DEFAULT_TOL) -> HypothesisReport:
    """Membership in Phi: ``f(t) < t`` on grid ``t > 0`` and no jump at any boundary.

    ``f(0) <= tol`` is checked explicitly since it follows from the other two
    conditions on the continuum.
    """
    grid = _prepare_grid(f, grid)
    below = _below_identity(f, grid)
    jumps = find_jumps(f, tol)
    zero = f(0.0)
    negative = _nonnegative(f, grid)
    witnesses = below + negative + [make_witness((j["at"],), j["jump"], tol) for j in jumps]
    if zero > tol:
        witnesses.append(make_witness((0.0,), zero, tol))
    conditions = {
        "below_identity": Verdict.FAIL if below else Verdict.PASS,
        "continuity": Verdict.FAIL if jumps else Verdict.PASS,
        "vanishes_at_zero": Verdict.FAIL if zero > tol else Verdict.PASS,
        "nonnegative": Verdict.FAIL if negative else Verdict.PASS,
    }
    return HypothesisReport(
        hypothesis=f"phi_class:{f.name}",
        verdict=combine(list(conditions.values())),
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        checked_pairs=int(grid.size),
        details={"conditions": conditions, "jumps": jumps},
    )


def check_psi_class(f: ScalarFunc, grid=None, tol: float = DEFAULT_TOL) -> HypothesisReport:
    """Membership in Psi: ``f(0) <= tol``, ``f(t) < t`` for grid ``t > 0``, and
    right upper semicontinuity ``lim_{s -> t+} f(s) <= f(t) + tol`` at every
    grid point and boundary."""
    grid = _prepare_grid(f, grid)
    below = _below_identity(f, grid)
    negative = _nonnegative(f, grid)
    zero = f(0.0)
    usc = []
    for t in np.unique(np.concatenate([grid, f.boundaries])):
        t = float(t)
        right = f.right_limit(t)
        value = f(t)
        if right > value + tol:
            usc.append({"at": t, "value": value, "right": right,
                        "probe_right": _probe_limit(f, t, +1)})
    witnesses = below + negative + [make_witness((u["at"],), u["right"], u["value"]) for u in usc]
    if zero > tol:
        witnesses.append(make_witness((0.0,), zero, tol))
    conditions = {
        "vanishes_at_zero": Verdict.FAIL if zero > tol else Verdict.PASS,
        "below_identity": Verdict.FAIL if below else Verdict.PASS,
        "right_usc": Verdict.FAIL if usc else Verdict.PASS,
        "nonnegative": Verdict.FAIL if negative else Verdict.PASS,
    }
    return HypothesisReport(
        hypothesis=f"psi_class:{f.name}",
        verdict=combine(list(conditions.values())),
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        checked_pairs=int(grid.size),
        details={"conditions": conditions, "usc_violations": usc[:10], "value_at_zero": zero},
    )


def check_nondecreasing(f: ScalarFunc, grid=None, tol: float = DEFAULT_TOL) -> HypothesisReport:
    grid = _prepare_grid(f, grid)
    vals = f(grid)
    drops = np.flatnonzero(vals[1:] < vals[:-1] - tol)
    witnesses = [make_witness((grid[i], grid[i + 1]), vals[i], vals[i + 1]) for i in drops]
    return HypothesisReport(
        hypothesis=f"nondecreasing:{f.name}",
        verdict=Verdict.FAIL if witnesses else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        checked_pairs=int(grid.size),
    )


@dataclass
class PhiSequence:
    """The comparison functions ``phi_n`` and their claimed uniform limit.

    ``phi_n`` for ``n <= len(prefix)`` is ``prefix[n-1]``; later indices use
    ``tail`` itself (``tail_kind='constant'``) or its ``n``-fold composition
    (``tail_kind='iterate'``).
    """

    prefix: tuple
    tail: ScalarFunc
    tail_kind: str
    limit: ScalarFunc

    def __post_init__(self):
        self.prefix = tuple(self.prefix)
        if self.tail_kind not in ("constant", "iterate"):
            raise ValueError(f"unknown tail rule {self.tail_kind!r}")
        if self.tail_kind == "iterate":
            mono = check_nondecreasing(self.tail)
            if not mono.passed:
                w = mono.witnesses[0]
                raise ValueError(f"iterate family needs a nondecreasing base; "
                                 f"{self.tail.name} drops on {w.inputs}")

    @classmethod
    def constant(cls, phi: ScalarFunc, prefix=()) -> "PhiSequence":
        return cls(tuple(prefix), phi, "constant", phi)

    @classmethod
    def iterates(cls, phi: ScalarFunc, limit: ScalarFunc | None = None) -> "PhiSequence":
        return cls((), phi, "iterate", limit or ScalarFunc.from_spec("zero", "0"))

    @property
    def functions(self) -> list[ScalarFunc]:
        return list(self.prefix) + [self.tail, self.limit]

    def iter_values(self, t, n_max: int) -> Iterator[np.ndarray]:
        """Yield ``phi_n(t)`` for ``n = 1..n_max``."""
        t = np.asarray(t, dtype=float)
        power = t
        for n in range(1, n_max + 1):
            if self.tail_kind == "iterate":
                power = self.tail(power)
            if n <= len(self.prefix):
                yield self.prefix[n - 1](t)
            elif self.tail_kind == "iterate":
                yield power
            else:
                yield self.tail(t)

    def value(self, n: int, t):
        if n < 1:
            raise ValueError("phi_n is indexed from n = 1")
        for k, v in enumerate(self.iter_values(t, n), start=1):
            if k == n:
                return v


def _range_grid(seq: PhiSequence, range_hi: float) -> np.ndarray:
    pts = [range_hi * np.arange(GRID_POINTS) / (GRID_POINTS - 1), [range_hi]]
    for f in seq.functions:
        pts.append([b for b in f.boundaries if b <= range_hi])
    grid = np.unique(np.concatenate([np.asarray(p, dtype=float) for p in pts]))
    grid[-1] = range_hi
    return grid


def check_uniform_convergence(seq: PhiSequence, range_hi: float, n_max: int,
                              tol: float = DEFAULT_TOL, grid=None) -> HypothesisReport:
    """Sup-gaps ``s_n = max_t |phi_n(t) - phi(t)|`` over ``t`` in ``[0, range_hi]``."""
    if not range_hi > 0 or n_max < 1:
        raise ValueError("need range_hi > 0 and n_max >= 1")
    grid = _range_grid(seq, range_hi) if grid is None else np.asarray(grid, dtype=float)
    target = seq.limit(grid)
    gaps = []
    argmax = []
    for vals in seq.iter_values(grid, n_max):
        diff = np.abs(vals - target)
        k = int(np.argmax(diff))
        gaps.append(float(diff[k]))
        argmax.append(float(grid[k]))
    below_from = None
    for n in range(n_max, 0, -1):
        if gaps[n - 1] <= tol:
            below_from = n
        else:
            break
    witnesses = []
    if below_from is None:
        witnesses.append(make_witness((argmax[-1], n_max), gaps[-1], tol))
    return HypothesisReport(
        hypothesis="uniform_convergence",
        verdict=Verdict.PASS if below_from is not None else Verdict.FAIL,
        witnesses=witnesses,
        tolerance=tol,
        checked_pairs=int(grid.size),
        n_range=(1, n_max),
        details={"sup_gaps": gaps, "below_tol_from": below_from, "range_hi": range_hi,
                 "limit": seq.limit.name, "witness_order": "t, n"},
    )


def check_tail_continuity(seq: PhiSequence, tol: float = DEFAULT_TOL) -> HypothesisReport:
    """Continuity of ``phi_n`` for all large ``n``.

    A constant tail is continuous iff the tail function is; an iterate tail
    inherits continuity from its base.
    """
    jumps = find_jumps(seq.tail, tol)
    start = len(seq.prefix) + 1
    return HypothesisReport(
        hypothesis="tail_continuity",
        verdict=Verdict.FAIL if jumps else Verdict.PASS,
        witnesses=order_witnesses(make_witness((j["at"],), j["jump"], tol) for j in jumps),
        tolerance=tol,
        n_range=(start, start),
        details={"tail": seq.tail.name, "tail_kind": seq.tail_kind, "jumps": jumps},
    )
