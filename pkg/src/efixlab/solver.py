"""Picard iteration under an E-distance, with convergence diagnostics.

Because ``p`` may be asymmetric, stopping requires both ``p(x_n, x_{n+1})``
and ``p(x_{n+1}, x_n)`` to stay below ``tol`` for ``window`` consecutive
steps.  Fixed points are identified with the base metric, since ``p(u, u)``
need not vanish; p-residuals are reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .contraction import DEFAULT_N_MAX, DomainEscape, SelfMap, _escape_report, _violations
from .contraction import check_boyd_wong, sample_points
from .compfun import ScalarFunc
from .reports import HypothesisReport, Verdict, make_witness, order_witnesses
from .spaces import DEFAULT_TOL, DistanceStructure, Domain

DEFAULT_MAX_ITER = 10_000
DEFAULT_WINDOW = 3
IDENTIFICATION_TOL = 1e-7

CONVERGED = "CONVERGED"
MAX_ITER = "MAX_ITER"
DIVERGED_FROM_DOMAIN = "DIVERGED_FROM_DOMAIN"


@dataclass
class PicardTrace:
    start: float
    iterates: list
    fwd_dist: list
    bwd_dist: list
    stopped_at: int
    verdict: str
    candidate: float | None = None
    cycle: list | None = None  # [first index, period] of the first exact repeat

    def to_dict(self) -> dict:
        return {
            "start": self.start, "iterates": list(self.iterates),
            "fwd_dist": list(self.fwd_dist), "bwd_dist": list(self.bwd_dist),
            "stopped_at": self.stopped_at, "verdict": self.verdict,
            "candidate": self.candidate, "cycle": self.cycle,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PicardTrace":
        return cls(**d)


def picard(T: SelfMap, p: DistanceStructure, x0: float, tol: float = DEFAULT_TOL,
           max_iter: int = DEFAULT_MAX_ITER, window: int = DEFAULT_WINDOW) -> PicardTrace:
    """Iterate ``x_{n+1} = T x_n`` from ``x0``."""
    if not 1 <= window <= max_iter:
        raise ValueError("need max_iter >= window >= 1")
    x = float(x0)
    if not T.domain.contains(x):
        raise ValueError(f"start {x0!r} outside the domain")
    iterates, fwd, bwd = [x], [], []
    seen = {x: 0}
    cycle = None
    streak = 0
    verdict = MAX_ITER
    for k in range(max_iter):
        nxt = float(T(x))
        iterates.append(nxt)
        fwd.append(float(p(x, nxt)))
        bwd.append(float(p(nxt, x)))
        if not T.domain.contains(nxt):
            verdict = DIVERGED_FROM_DOMAIN
            break
        if cycle is None:
            if nxt in seen:
                cycle = [seen[nxt], k + 1 - seen[nxt]]
            else:
                seen[nxt] = k + 1
        streak = streak + 1 if (fwd[-1] <= tol and bwd[-1] <= tol) else 0
        x = nxt
        if streak >= window:
            verdict = CONVERGED
            break
    return PicardTrace(
        start=float(x0),
        iterates=iterates,
        fwd_dist=fwd,
        bwd_dist=bwd,
        stopped_at=len(iterates) - 1,
        verdict=verdict,
        candidate=iterates[-1] if verdict == CONVERGED else None,
        cycle=cycle,
    )


def verify_fixed_point(T: SelfMap, p: DistanceStructure, u: float,
                       tol: float = DEFAULT_TOL) -> tuple[tuple[float, float, float], bool]:
    """Residuals ``(p(u, Tu), p(Tu, u), d(u, Tu))``; fixed iff ``d(u, Tu) <= tol``."""
    u = float(u)
    if not T.domain.contains(u):
        raise ValueError(f"{u!r} outside the domain")
    Tu = float(T(u))
    d = float(p.base_metric(u, Tu))
    return (float(p(u, Tu)), float(p(Tu, u)), d), d <= tol


def pair_decay_check(T: SelfMap, p: DistanceStructure, dom: Domain,
                     n_max: int = DEFAULT_N_MAX, tol: float = DEFAULT_TOL) -> HypothesisReport:
    """Orbit pairs merge: ``p(T^n x, T^n y) <= tol`` at ``n = n_max`` for all sampled pairs."""
    pts = sample_points(T, dom)
    try:
        O = T.orbits(pts, n_max)
    except DomainEscape as exc:
        return _escape_report("pair_decay", exc, tol)
    lhs = p(O[n_max][:, None], O[n_max][None, :])
    count, top = _violations(lhs, np.zeros_like(lhs), tol, pts, n_max)
    return HypothesisReport(
        hypothesis="pair_decay",
        verdict=Verdict.FAIL if count else Verdict.PASS,
        witnesses=order_witnesses(top),
        tolerance=tol,
        checked_pairs=int(pts.size) ** 2,
        n_range=(n_max, n_max),
        details={"violations": count, "max_final_distance": float(lhs.max()),
                 "witness_order": "x, y, n"},
    )


def boyd_wong_monotonicity_check(T: SelfMap, p: DistanceStructure, psi: ScalarFunc | None,
                                 dom: Domain, n_max: int = DEFAULT_N_MAX,
                                 tol: float = DEFAULT_TOL) -> HypothesisReport:
    """``n -> p(T^n x, T^n y)`` is nonincreasing within ``tol`` for ``n <= n_max``.

    The Boyd-Wong premise is checked too (when ``psi`` is given) and reported
    in ``details['premise']``; it does not affect the verdict.
    """
    pts = sample_points(T, dom)
    try:
        O = T.orbits(pts, n_max)
    except DomainEscape as exc:
        return _escape_report("monotonicity", exc, tol)
    prev = p(O[0][:, None], O[0][None, :])
    total = 0
    candidates = []
    for n in range(1, n_max + 1):
        cur = p(O[n][:, None], O[n][None, :])
        count, top = _violations(cur, prev, tol, pts, n)
        total += count
        candidates.extend(top)
        prev = cur
    details = {"violations": total, "witness_order": "x, y, n (distance at n exceeds n-1)"}
    if psi is not None:
        details["premise"] = check_boyd_wong(T, p, psi, dom, tol).verdict.value
    return HypothesisReport(
        hypothesis="monotonicity",
        verdict=Verdict.FAIL if total else Verdict.PASS,
        witnesses=order_witnesses(candidates),
        tolerance=tol,
        checked_pairs=int(pts.size) ** 2,
        n_range=(1, n_max),
        details=details,
    )


def uniqueness_probe(T: SelfMap, p: DistanceStructure, dom: Domain, tol: float = DEFAULT_TOL,
                     id_tol: float = IDENTIFICATION_TOL, extra: Sequence[float] = ()) -> HypothesisReport:
    """At most one sampled fixed point, up to ``id_tol`` in the base metric."""
    pts = sample_points(T, dom) if not extra else np.unique(
        np.concatenate([sample_points(T, dom), [e for e in extra if dom.contains(e)]]))
    Tp = np.asarray(T(pts), dtype=float)
    fixed = pts[np.asarray(p.base_metric(pts, Tp)) <= tol]
    reps = []
    for v in fixed:
        if not reps or float(p.base_metric(reps[-1], v)) > id_tol:
            reps.append(float(v))
    witnesses = []
    if len(reps) > 1:
        u = reps[0]
        for v in reps[1:]:
            witnesses.append(make_witness((u, v), float(p.base_metric(u, v)), id_tol))
    details = {"fixed_points": reps[:20], "count": len(reps)}
    if len(reps) > 1:
        u, v = reps[0], reps[1]
        details["p_between_first_two"] = [float(p(u, v)), float(p(v, u))]
    return HypothesisReport(
        hypothesis="uniqueness",
        verdict=Verdict.FAIL if len(reps) > 1 else Verdict.PASS,
        witnesses=order_witnesses(witnesses),
        tolerance=tol,
        checked_pairs=int(pts.size),
        details=details,
    )


@dataclass
class ConvergenceReport:
    traces: list
    candidate: float | None
    equiconvergent: bool
    pair_decay: str
    cauchy: str
    fixed_point_residuals: list | None
    fixed_point_verified: bool
    uniqueness: str
    uniqueness_witness: list | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "traces": [t.to_dict() for t in self.traces],
            "candidate": self.candidate,
            "equiconvergent": self.equiconvergent,
            "pair_decay": self.pair_decay,
            "cauchy": self.cauchy,
            "fixed_point_residuals": self.fixed_point_residuals,
            "fixed_point_verified": self.fixed_point_verified,
            "uniqueness": self.uniqueness,
            "uniqueness_witness": self.uniqueness_witness,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConvergenceReport":
        d = dict(d)
        d["traces"] = [PicardTrace.from_dict(t) for t in d["traces"]]
        return cls(**d)


def _window_cauchy(trace: PicardTrace, p: DistanceStructure, tol: float, window: int) -> bool:
    if trace.verdict != CONVERGED:
        return False
    tail = trace.iterates[-(window + 1):]
    return all(p(a, b) <= tol for i, a in enumerate(tail) for j, b in enumerate(tail) if i != j)


def _identified(p: DistanceStructure, u: float, v: float, pool: Sequence[float], id_tol: float) -> bool:
    # some z with p(z, u), p(z, v) both small, and u, v close in the base metric
    if float(p.base_metric(u, v)) > id_tol:
        return False
    return any(p(z, u) <= id_tol and p(z, v) <= id_tol for z in pool)


def equiconvergence(T: SelfMap, p: DistanceStructure, dom: Domain, starts: Sequence[float],
                    tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER,
                    window: int = DEFAULT_WINDOW, n_max: int = DEFAULT_N_MAX,
                    id_tol: float = IDENTIFICATION_TOL) -> ConvergenceReport:
    """Run Picard iteration from every start and compare the limits."""
    if len(starts) == 0:
        raise ValueError("starts must be nonempty")
    starts = sorted(float(s) for s in starts)
    traces = [picard(T, p, s, tol, max_iter, window) for s in starts]
    converged = [t for t in traces if t.verdict == CONVERGED]
    notes = ["cauchy is a surrogate: pairwise p-distances over the final stability window"]
    candidate = converged[0].candidate if converged else None
    equi = False
    residuals, verified = None, False
    if candidate is not None:
        pool = [candidate] + [t.iterates[-1] for t in converged]
        equi = len(converged) == len(traces) and all(
            _identified(p, candidate, t.candidate, pool + [t.candidate], id_tol) for t in converged)
        res, verified = verify_fixed_point(T, p, candidate, tol)
        residuals = list(res)
    else:
        notes.append("no trace converged; no fixed-point candidate")
    decay = pair_decay_check(T, p, dom, n_max, tol)
    cauchy = all(_window_cauchy(t, p, tol, window) for t in traces)
    uniq = uniqueness_probe(T, p, dom, tol, id_tol, extra=[candidate] if candidate is not None else ())
    return ConvergenceReport(
        traces=traces,
        candidate=candidate,
        equiconvergent=equi,
        pair_decay=decay.verdict.value,
        cauchy=Verdict.PASS.value if cauchy else Verdict.FAIL.value,
        fixed_point_residuals=residuals,
        fixed_point_verified=verified,
        uniqueness=uniq.verdict.value,
        uniqueness_witness=list(uniq.witnesses[0].inputs) if uniq.witnesses else None,
        notes=notes,
    )
