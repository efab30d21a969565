"""Self-maps and the contraction inequalities behind the fixed-point guarantees.

Checked inequalities, on the full Cartesian product of sampled points (plus
the piece boundaries of ``T``, where violations concentrate):

* asymptotic:  ``p(T^n x, T^n y) <= phi_n(p(x, y))`` for ``n = 1..n_max``
* Boyd-Wong:   ``p(Tx, Ty) <= psi(p(x, y))``
* monotone iterate: nondecreasing continuous ``phi`` with ``phi^n -> 0`` on the
  p-diameter and the one-step inequality with ``phi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .compfun import (PhiSequence, ScalarFunc, check_nondecreasing, check_phi_class,
                      default_grid, find_jumps)
from .expr import Piecewise
from .reports import (WITNESS_LIMIT, HypothesisReport, Verdict, _plain, combine, make_witness,
                      order_witnesses)
from .spaces import DEFAULT_TOL, DistanceStructure, Domain, check_p_bounded

DEFAULT_N_MAX = 16


class DomainEscape(ValueError):
    """An orbit left the domain, so ``T`` is not a self-map there."""

    def __init__(self, x: float, n: int, value: float):
        self.x, self.n, self.value = x, n, value
        super().__init__(f"T^{n}({x!r}) = {value!r} lies outside the domain")


class SelfMap:
    """Piecewise map of a closed interval into itself."""

    def __init__(self, name: str, pieces: Piecewise, domain: Domain):
        self.name = name
        self.pieces = pieces
        self.domain = domain

    @classmethod
    def from_spec(cls, name: str, spec, domain: Domain) -> "SelfMap":
        if isinstance(spec, (str, int, float)):
            spec = [[f"[{domain.lo!r}, {domain.hi!r}]", str(spec)]]
        return cls(name, Piecewise.from_text(spec, domain.interval, "x"), domain)

    def to_spec(self) -> list[list[str]]:
        return self.pieces.to_spec()

    def __call__(self, x):
        return self.pieces(x)

    @property
    def boundaries(self) -> list[float]:
        pts = set(self.pieces.boundaries)
        for piece in self.pieces.pieces:
            if piece.interval.is_point:
                pts.add(piece.interval.lo)
        return sorted(pts)

    def orbits(self, pts, n_max: int) -> np.ndarray:
        """``O[n, i] = T^n(pts[i])`` for ``n = 0..n_max``; raises DomainEscape."""
        pts = np.asarray(pts, dtype=float)
        out = np.empty((n_max + 1, pts.size))
        out[0] = pts
        for n in range(1, n_max + 1):
            nxt = np.asarray(self(out[n - 1]), dtype=float)
            bad = ~self.domain.contains(nxt)
            if bad.any():
                i = int(np.flatnonzero(bad)[0])
                raise DomainEscape(float(pts[i]), n, float(nxt[i]))
            out[n] = nxt
        return out

    def __repr__(self) -> str:
        return f"SelfMap({self.name!r})"


def sample_points(T: SelfMap, dom: Domain, focus: Iterable[Sequence[float]] = ()) -> np.ndarray:
    extra = list(T.boundaries)
    for pair in focus:
        extra.extend(pair)
    return dom.sample(extra)


def _escape_report(hypothesis: str, exc: DomainEscape, tol: float) -> HypothesisReport:
    return HypothesisReport(
        hypothesis="maps_into_domain",
        verdict=Verdict.FAIL,
        witnesses=[make_witness((exc.x, exc.n), exc.value, exc.value)],
        tolerance=tol,
        details={"while_checking": hypothesis, "message": str(exc)},
    )


def _violations(lhs, rhs, tol, pts, n, limit=WITNESS_LIMIT):
    """Count and top witnesses ``(x, y, n)`` where ``lhs > rhs + tol``."""
    bad = lhs > rhs + tol
    count = int(bad.sum())
    if not count:
        return 0, []
    ii, jj = np.nonzero(bad)
    l, r = lhs[ii, jj], rhs[ii, jj]
    order = np.lexsort((jj, ii, -(l - r)))[:limit]
    return count, [make_witness((pts[ii[o]], pts[jj[o]], n), l[o], r[o]) for o in order]


def _focus_witnesses(lhs, rhs, tol, pts, n, focus):
    out = []
    index = {float(v): k for k, v in enumerate(pts)}
    for x, y in focus:
        i, j = index[float(x)], index[float(y)]
        if lhs[i, j] > rhs[i, j] + tol:
            out.append(make_witness((pts[i], pts[j], n), lhs[i, j], rhs[i, j]))
    return out


def check_maps_into_domain(T: SelfMap, dom: Domain, n_max: int = 1,
                           tol: float = DEFAULT_TOL) -> HypothesisReport:
    pts = sample_points(T, dom)
    try:
        T.orbits(pts, n_max)
    except DomainEscape as exc:
        return _escape_report("maps_into_domain", exc, tol)
    return HypothesisReport(hypothesis="maps_into_domain", verdict=Verdict.PASS,
                            tolerance=tol, checked_pairs=int(pts.size), n_range=(1, n_max))


def check_asymptotic(T: SelfMap, p: DistanceStructure, seq: PhiSequence, dom: Domain,
                     n_max: int = DEFAULT_N_MAX, tol: float = DEFAULT_TOL,
                     focus: Iterable[Sequence[float]] = ()) -> HypothesisReport:
    """``p(T^n x, T^n y) <= phi_n(p(x, y)) + tol`` for all sampled pairs and ``n <= n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    focus = list(focus)
    pts = sample_points(T, dom, focus)
    try:
        O = T.orbits(pts, n_max)
    except DomainEscape as exc:
        return _escape_report("asymptotic", exc, tol)
    P0 = p.matrix(pts)
    candidates, pinned, per_n = [], [], []
    total = 0
    first = None
    for n, rhs in enumerate(seq.iter_values(P0, n_max), start=1):
        lhs = p(O[n][:, None], O[n][None, :])
        count, top = _violations(lhs, rhs, tol, pts, n)
        total += count
        per_n.append(count == 0)
        candidates.extend(top)
        pinned.extend(_focus_witnesses(lhs, rhs, tol, pts, n, focus))
        if count and first is None:
            first = min(top, key=lambda w: w.inputs)
    witnesses = order_witnesses(candidates, pinned=pinned)
    return HypothesisReport(
        hypothesis="asymptotic",
        verdict=Verdict.FAIL if total else Verdict.PASS,
        witnesses=witnesses,
        tolerance=tol,
        checked_pairs=int(pts.size) ** 2,
        n_range=(1, n_max),
        details={
            "distance": p.name,
            "violations": total,
            "per_n_pass": per_n,
            "first_failing_n": None if first is None else int(first.inputs[2]),
            "first_witness": None if first is None else first.to_dict(),
            "witness_order": "x, y, n",
        },
    )


def _one_step(T, p, comp, dom, tol, focus, hypothesis):
    focus = list(focus)
    pts = sample_points(T, dom, focus)
    try:
        O = T.orbits(pts, 1)
    except DomainEscape as exc:
        return _escape_report(hypothesis, exc, tol)
    rhs = comp(p.matrix(pts))
    lhs = p(O[1][:, None], O[1][None, :])
    count, top = _violations(lhs, rhs, tol, pts, 1)
    pinned = _focus_witnesses(lhs, rhs, tol, pts, 1, focus)
    return HypothesisReport(
        hypothesis=hypothesis,
        verdict=Verdict.FAIL if count else Verdict.PASS,
        witnesses=order_witnesses(top, pinned=pinned),
        tolerance=tol,
        checked_pairs=int(pts.size) ** 2,
        n_range=(1, 1),
        details={"distance": p.name, "comparison": comp.name, "violations": count,
                 "witness_order": "x, y, n"},
    )


def check_boyd_wong(T: SelfMap, p: DistanceStructure, psi: ScalarFunc, dom: Domain,
                    tol: float = DEFAULT_TOL,
                    focus: Iterable[Sequence[float]] = ()) -> HypothesisReport:
    """``p(Tx, Ty) <= psi(p(x, y)) + tol`` on all sampled pairs."""
    return _one_step(T, p, psi, dom, tol, focus, "boyd_wong")


def check_monotone_iterate(T: SelfMap, p: DistanceStructure, phi: ScalarFunc, dom: Domain,
                           n_max: int = DEFAULT_N_MAX, tol: float = DEFAULT_TOL,
                           focus: Iterable[Sequence[float]] = ()) -> HypothesisReport:
    """Hypotheses of the monotone-iterate criterion on a p-bounded space.

    Parts: ``phi`` nondecreasing; ``phi`` continuous; ``phi^n_max(t) <= tol`` for
    ``t`` up to the p-diameter estimate; and ``p(Tx, Ty) <= phi(p(x, y)) + tol``.
    The top-level witnesses are those of the one-step inequality.
    """
    pts = sample_points(T, dom, focus)
    diameter, bounded = check_p_bounded(p, dom, points=pts)
    grid = default_grid([phi], diameter)
    mono = check_nondecreasing(phi, grid, tol)
    jumps = find_jumps(phi, tol)
    decay_grid = grid[grid <= max(diameter, 0.0)]
    if decay_grid.size == 0 or decay_grid[-1] != diameter:
        decay_grid = np.append(decay_grid, diameter)
    vals = decay_grid
    for _ in range(n_max):
        vals = phi(vals)
    k = int(np.argmax(vals))
    decay_ok = bool(vals[k] <= tol)
    decay = {
        "verdict": Verdict.PASS if decay_ok else Verdict.FAIL,
        "max_iterate": float(vals[k]),
        "at": float(decay_grid[k]),
        "at_diameter": float(vals[-1]),
    }
    step = check_boyd_wong(T, p, phi, dom, tol, focus)
    conditions = {
        "p_bounded": bounded.verdict,
        "nondecreasing": mono.verdict,
        "continuity": Verdict.FAIL if jumps else Verdict.PASS,
        "iterates_vanish": decay["verdict"],
        "one_step": step.verdict,
    }
    return HypothesisReport(
        hypothesis="monotone_iterate",
        verdict=combine(list(conditions.values())),
        witnesses=step.witnesses if step.hypothesis == "boyd_wong" else [],
        tolerance=tol,
        checked_pairs=step.checked_pairs,
        n_range=(1, n_max),
        details=_plain({
            "conditions": conditions,
            "p_diameter": diameter,
            "iterate_decay": decay,
            "jumps": jumps,
            "nondecreasing_witnesses": [w.to_dict() for w in mono.witnesses],
            "one_step": step.to_dict(),
        }),
    )


# ------------------------------------------------------------------ selector

BOYD_WONG = "BOYD_WONG"
ASYMPTOTIC = "ASYMPTOTIC"
MONOTONE_ITERATE = "MONOTONE_ITERATE"
POWER_BOYD_WONG = "POWER_BOYD_WONG"
NONE = "NONE"

PREREQUISITES = {
    BOYD_WONG: ("boyd_wong", "psi_class"),
    ASYMPTOTIC: ("asymptotic", "uniform_convergence", "tail_continuity", "limit_phi_class",
                 "p_continuity"),
    MONOTONE_ITERATE: ("monotone_iterate",),
}


@dataclass
class TheoremVerdict:
    """Which fixed-point guarantee the checked hypotheses support.

    Advisory only: the solver runs regardless.
    """

    guarantee: str
    passed: list = field(default_factory=list)
    failed: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    power_index: int | None = None

    def to_dict(self) -> dict:
        return {"guarantee": self.guarantee, "passed": list(self.passed),
                "failed": list(self.failed), "missing": list(self.missing),
                "power_index": self.power_index}

    @classmethod
    def from_dict(cls, d: dict) -> "TheoremVerdict":
        return cls(**d)


def select_theorem(reports: Mapping[str, HypothesisReport], seq: PhiSequence | None = None,
                   psi_membership: HypothesisReport | None = None,
                   tol: float = DEFAULT_TOL) -> TheoremVerdict:
    """Pick the strongest applicable guarantee.

    Priority: Boyd-Wong (inequality + Psi membership), asymptotic (inequality,
    uniform convergence to a Phi limit, continuous tail, p-continuity),
    monotone iterate, then a power map ``T^k`` that is Boyd-Wong because some
    explicit ``phi_k`` lies in Phi and the asymptotic inequality holds at ``k``.
    """
    reports = dict(reports)
    if psi_membership is not None:
        reports["psi_class"] = psi_membership
    if not reports:
        raise ValueError("select_theorem needs at least one report")
    passed = sorted(k for k, r in reports.items() if r.verdict is Verdict.PASS)
    failed = sorted(k for k, r in reports.items() if r.verdict is not Verdict.PASS)

    def holds(name: str) -> bool:
        return all(k in reports and reports[k].passed for k in PREREQUISITES[name])

    for name in (BOYD_WONG, ASYMPTOTIC, MONOTONE_ITERATE):
        if holds(name):
            return TheoremVerdict(name, passed, failed)

    asym = reports.get("asymptotic")
    if seq is not None and asym is not None and asym.hypothesis == "asymptotic":
        per_n = asym.details.get("per_n_pass", [])
        for k, phi_k in enumerate(seq.prefix, start=1):
            if k <= len(per_n) and per_n[k - 1] and check_phi_class(phi_k, tol=tol).passed:
                return TheoremVerdict(POWER_BOYD_WONG, passed, failed, power_index=k)

    wanted = {k for names in PREREQUISITES.values() for k in names}
    missing = sorted(wanted - set(reports))
    return TheoremVerdict(NONE, passed, failed, missing)
