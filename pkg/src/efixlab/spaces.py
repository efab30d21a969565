"""Sampled interval domains, E-distances and their axiom checkers.

A uniformity is always the one induced by a base metric on an interval, so
the compatibility axiom of an E-distance becomes a finite search over
sampled triples.  Verdicts are honest about sampling: FAIL comes with a
re-checkable witness, PASS only means no violation was found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .expr import Interval, compile_expr, interval_eval, parse_expr, to_text
from .reports import WITNESS_LIMIT, AxiomReport, Verdict, make_witness, order_witnesses

DEFAULT_TOL = 1e-9
DEFAULT_COUNT = 101
DELTA_HALVINGS = 21
PROBE_DEPTH = 40
PROBE_TAIL = 5


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    """Closed interval ``[lo, hi]`` with a deterministic sampler."""

    lo: float
    hi: float
    kind: str = "grid"
    count: int = DEFAULT_COUNT
    seed: int | None = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"domain needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.kind not in ("grid", "random"):
            raise ValueError(f"unknown sampler {self.kind!r}")
        if self.count < 1 or (self.kind == "grid" and self.count < 2):
            raise ValueError(f"sampler count too small: {self.count}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random sampler needs a seed")

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi, True, True)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x):
        return (x >= self.lo) & (x <= self.hi)

    def points(self) -> np.ndarray:
        if self.kind == "grid":
            frac = np.arange(self.count) / (self.count - 1)
            pts = self.lo + (self.hi - self.lo) * frac
            pts[-1] = self.hi
            return pts
        rng = np.random.default_rng(self.seed)
        return np.sort(rng.uniform(self.lo, self.hi, self.count))

    def sample(self, extra: Iterable[float] = ()) -> np.ndarray:
        """Sampler points plus any ``extra`` points inside the domain, sorted."""
        pts = list(self.points())
        pts.extend(float(e) for e in extra if self.lo <= e <= self.hi)
        return np.unique(np.asarray(pts, dtype=float))


def _euclidean(x, y):
    return np.abs(np.subtract(x, y))


def _as_array(value, shape):
    return np.broadcast_to(np.asarray(value, dtype=float), shape)


@dataclass(frozen=True)
class DistanceStructure:
    """An E-distance candidate ``p`` together with the base metric ``d``.

    ``func`` and ``base_metric`` must accept numpy arrays (broadcasting) as
    well as scalars.  Neither symmetry nor ``p(x, x) = 0`` is assumed.
    """

    name: str
    func: Callable
    base_metric: Callable = _euclidean
    declared_symmetric: bool = False
    declared_reflexive: bool = False
    source: str | None = field(default=None, compare=False)

    def __call__(self, x, y):
        if np.ndim(x) == 0 and np.ndim(y) == 0:
            return float(self.func(float(x), float(y)))
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        return np.array(_as_array(self.func(x, y), x.shape))

    def matrix(self, pts) -> np.ndarray:
        """``P[i, j] = p(pts[i], pts[j])``."""
        pts = np.asarray(pts, dtype=float)
        return self(pts[:, None], pts[None, :])

    def base_matrix(self, pts) -> np.ndarray:
        pts = np.asarray(pts, dtype=float)
        X, Y = np.broadcast_arrays(pts[:, None], pts[None, :])
        return np.array(_as_array(self.base_metric(X, Y), X.shape))

    def with_base_as_p(self) -> "DistanceStructure":
        """The metric special case: the base metric used as its own E-distance."""
        return DistanceStructure(
            name=f"{self.name}@base_metric",
            func=self.base_metric,
            base_metric=self.base_metric,
            declared_symmetric=True,
            declared_reflexive=True,
            source="euclidean",
        )


def euclidean() -> DistanceStructure:
    return DistanceStructure("euclidean", _euclidean, declared_symmetric=True,
                             declared_reflexive=True, source="euclidean")


def range_projection() -> DistanceStructure:
    """``p(x, y) = y``: asymmetric, and ``p(x, x) = x``."""
    return DistanceStructure("range-projection", lambda x, y: y + 0.0 * x, source="range-projection")


def max_pair() -> DistanceStructure:
    """``p(x, y) = max{x, y}``."""
    return DistanceStructure("max-pair", np.maximum, declared_symmetric=True, source="max-pair")


BUILTIN_DISTANCES = {
    "euclidean": euclidean,
    "range-projection": range_projection,
    "max-pair": max_pair,
}


def builtin_distance(name: str) -> DistanceStructure:
    try:
        return BUILTIN_DISTANCES[name]()
    except KeyError:
        raise ValueError(
            f"unknown builtin distance {name!r} (known: {', '.join(sorted(BUILTIN_DISTANCES))})"
        ) from None


def distance_from_expr(text: str, dom: Domain, name: str = "custom",
                       symmetric: bool = False, reflexive: bool = False) -> DistanceStructure:
    """Compile ``p`` from an expression in ``x`` and ``y`` guarded over ``dom``."""
    node = parse_expr(text, ("x", "y"))
    interval_eval(node, {"x": (dom.lo, dom.hi), "y": (dom.lo, dom.hi)})
    fn = compile_expr(node, ("x", "y"), vectorized=True)
    return DistanceStructure(name, fn, declared_symmetric=symmetric,
                             declared_reflexive=reflexive, source=to_text(node))


# ------------------------------------------------------------------ checks


def check_triangle(p: DistanceStructure, dom: Domain, tol: float = DEFAULT_TOL,
                   points=None) -> AxiomReport:
    """Triangle inequality ``p(x, y) <= p(x, z) + p(z, y)`` on sampled triples."""
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    if pts.size < 3:
        raise PreconditionError("triangle check needs at least 3 sample points")
    count, top = kernels.triangle_scan(p.matrix(pts), tol, WITNESS_LIMIT)
    witnesses = [make_witness((pts[i], pts[j], pts[k]), lhs, rhs) for i, j, k, lhs, rhs in top]
    return AxiomReport(
        axiom="triangle",
        verdict=Verdict.FAIL if count else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        samples_checked=int(pts.size) ** 3,
        details={"violations": int(count), "distance": p.name, "witness_order": "x, y, z"},
    )


def check_uniformity_compat(p: DistanceStructure, dom: Domain, eps_grid: Sequence[float],
                            tol: float = DEFAULT_TOL, points=None) -> AxiomReport:
    """Compatibility of ``p`` with the uniformity of the base metric.

    For each ``eps`` the thresholds ``eps * 2**-j`` (j = 0..20) are tried in
    decreasing order; a threshold works when some sampled triple meets the
    premise ``p(z, x) <= delta, p(z, y) <= delta`` and all such triples have
    ``d(x, y) < eps``.
    """
    eps_grid = [float(e) for e in eps_grid]
    if not eps_grid or any(e <= 0 for e in eps_grid):
        raise PreconditionError("eps_grid must be nonempty with positive entries")
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    P = p.matrix(pts)
    D = p.base_matrix(pts)
    table = []
    witnesses = []
    verdicts = []
    for eps in eps_grid:
        deltas = [eps * 2.0**-j for j in range(DELTA_HALVINGS)]
        rows = kernels.ladder_diameters(P, D, [d + tol for d in deltas])
        found = None
        vacuous = False
        for delta, (nonempty, diam, z, x, y) in zip(deltas, rows):
            if not nonempty:
                vacuous = True
            elif diam < eps:
                found = delta
                break
        if found is not None:
            verdicts.append(Verdict.PASS)
        elif vacuous:
            verdicts.append(Verdict.INCONCLUSIVE)
        else:
            verdicts.append(Verdict.FAIL)
            _, diam, z, x, y = rows[-1]
            witnesses.append(make_witness((eps, deltas[-1], pts[z], pts[x], pts[y]), diam, eps))
        table.append({"eps": eps, "delta": found})
    if Verdict.FAIL in verdicts:
        verdict = Verdict.FAIL
    elif Verdict.INCONCLUSIVE in verdicts:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.PASS
    return AxiomReport(
        axiom="uniformity_compat",
        verdict=verdict,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        samples_checked=int(pts.size) ** 3,
        details={"table": table, "witness_order": "eps, delta, z, x, y"},
    )


def check_p_bounded(p: DistanceStructure, dom: Domain, points=None) -> tuple[float, AxiomReport]:
    """Estimate ``sup p`` over sampled pairs.

    A finite sample always yields a finite estimate, so the verdict is PASS
    while ``details['global']`` stays INCONCLUSIVE.
    """
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    P = p.matrix(pts)
    flat = int(np.argmax(P))
    i, j = divmod(flat, pts.size)
    estimate = float(P[i, j])
    report = AxiomReport(
        axiom="p_bounded",
        verdict=Verdict.PASS if math.isfinite(estimate) else Verdict.FAIL,
        tolerance=0.0,
        samples_checked=int(pts.size) ** 2,
        details={"estimate": estimate, "argmax": [float(pts[i]), float(pts[j])],
                 "global": Verdict.INCONCLUSIVE.value},
    )
    return estimate, report


def _probe_candidates(x: float, dom: Domain, pts: np.ndarray) -> np.ndarray:
    steps = dom.width * 2.0 ** -np.arange(1, PROBE_DEPTH + 1)
    probes = np.concatenate([x - steps, x + steps])
    cand = np.unique(np.concatenate([pts, probes[dom.contains(probes)]]))
    return cand[cand != x]


def check_p_continuity(T: Callable, p: DistanceStructure, dom: Domain, tol: float = DEFAULT_TOL,
                       points=None) -> AxiomReport:
    """p-continuity of ``T`` probed along constructed p-convergent sequences.

    For each sampled target ``x`` the candidates are the sample plus dyadic
    probes ``x +- w 2**-j``.  Level ``j`` keeps candidates with
    ``p(z, x) <= w 2**-j``; the worst ``p(Tz, Tx)`` over the last
    ``PROBE_TAIL`` levels must be ``<= tol``.  Targets whose deepest level is
    empty admit no p-convergent sequence in the sample and are skipped.
    """
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    thresholds = dom.width * 2.0 ** -np.arange(1, PROBE_DEPTH + 1)
    witnesses = []
    tested = 0
    worst_ladder = None
    for x in pts:
        x = float(x)
        cand = _probe_candidates(x, dom, pts)
        pz = p(cand, np.full(cand.shape, x))
        if not (pz <= thresholds[-1]).any():
            continue
        tested += 1
        Tx = float(T(x))
        Tc = np.asarray(T(cand), dtype=float)
        gap = p(Tc, np.full(cand.shape, Tx))
        ladder = []
        for theta in thresholds[-PROBE_TAIL:]:
            mask = pz <= theta
            k = int(np.argmax(np.where(mask, gap, -np.inf)))
            ladder.append((float(gap[k]), float(cand[k])))
        g, z = max(ladder, key=lambda item: (item[0], -item[1]))
        if g > tol:
            witnesses.append(make_witness((x, z), g, tol))
            if worst_ladder is None or g > worst_ladder[0]:
                worst_ladder = (g, x, [v for v, _ in ladder])
    if witnesses:
        verdict = Verdict.FAIL
    elif tested == 0:
        verdict = Verdict.INCONCLUSIVE
    else:
        verdict = Verdict.PASS
    details = {"targets_with_sequences": tested, "probe_depth": PROBE_DEPTH,
               "witness_order": "target x, sequence point z"}
    if worst_ladder is not None:
        details["worst_target"] = worst_ladder[1]
        details["worst_tail"] = worst_ladder[2]
    return AxiomReport(
        axiom="p_continuity",
        verdict=verdict,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        samples_checked=int(pts.size),
        details=details,
    )


def check_symmetry(p: DistanceStructure, dom: Domain, tol: float = DEFAULT_TOL,
                   points=None) -> AxiomReport:
    """Informational: does ``p(x, y) = p(y, x)`` hold on the sample?"""
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    P = p.matrix(pts)
    gap = np.abs(P - P.T)
    ii, jj = np.nonzero(np.triu(gap > tol))
    witnesses = [make_witness((pts[i], pts[j]), max(P[i, j], P[j, i]), min(P[i, j], P[j, i]))
                 for i, j in zip(ii, jj)]
    return AxiomReport(
        axiom="symmetry",
        verdict=Verdict.FAIL if witnesses else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        samples_checked=int(pts.size) ** 2,
        details={"declared_symmetric": p.declared_symmetric, "violations": int(len(ii))},
    )


def check_reflexivity(p: DistanceStructure, dom: Domain, tol: float = DEFAULT_TOL,
                      points=None) -> AxiomReport:
    """Informational: does ``p(x, x) = 0`` hold on the sample?  Never assumed."""
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    diag = p(pts, pts)
    bad = np.flatnonzero(diag > tol)
    witnesses = [make_witness((pts[i], pts[i]), diag[i], 0.0) for i in bad]
    return AxiomReport(
        axiom="reflexivity",
        verdict=Verdict.FAIL if witnesses else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        samples_checked=int(pts.size),
        details={"declared_reflexive": p.declared_reflexive, "violations": int(bad.size),
                 "max_self_distance": float(diag.max())},
    )


def check_nonnegative(p: DistanceStructure, dom: Domain, points=None) -> AxiomReport:
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    P = p.matrix(pts)
    ii, jj = np.nonzero(~(P >= 0.0))
    witnesses = [make_witness((pts[i], pts[j]), 0.0, P[i, j]) for i, j in zip(ii, jj)]
    return AxiomReport(
        axiom="nonnegative",
        verdict=Verdict.FAIL if witnesses else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        samples_checked=int(pts.size) ** 2,
    )


def check_base_metric(p: DistanceStructure, dom: Domain, tol: float = DEFAULT_TOL,
                      points=None) -> AxiomReport:
    """Metric axioms of the base metric: symmetry, identity, triangle."""
    pts = dom.sample() if points is None else np.asarray(points, dtype=float)
    D = p.base_matrix(pts)
    n = pts.size
    witnesses = []
    asym = np.abs(D - D.T) > tol
    for i, j in zip(*np.nonzero(np.triu(asym))):
        witnesses.append(make_witness((pts[i], pts[j]), D[i, j], D[j, i]))
    off = ~np.eye(n, dtype=bool)
    for i in np.flatnonzero(np.abs(np.diag(D)) > tol):
        witnesses.append(make_witness((pts[i], pts[i]), D[i, i], 0.0))
    for i, j in zip(*np.nonzero(off & (D <= tol))):
        witnesses.append(make_witness((pts[i], pts[j]), tol, D[i, j]))
    count, top = kernels.triangle_scan(D, tol, WITNESS_LIMIT)
    witnesses.extend(make_witness((pts[i], pts[j], pts[k]), l, r) for i, j, k, l, r in top)
    return AxiomReport(
        axiom="base_metric",
        verdict=Verdict.FAIL if witnesses else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        samples_checked=n**3,
        details={"triangle_violations": int(count)},
    )
