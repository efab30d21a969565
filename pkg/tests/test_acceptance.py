"""End-to-end acceptance criteria, one test group per criterion."""

import json
from fractions import Fraction

import pytest

from efixlab.compfun import PhiSequence, ScalarFunc, check_phi_class, check_psi_class, check_uniform_convergence
from efixlab.contraction import SelfMap, check_asymptotic, check_boyd_wong, check_monotone_iterate
from efixlab.scenario import corpus_list, golden_path, load_scenario, parse_scenario, run_scenario
from efixlab.solver import CONVERGED, MAX_ITER, boyd_wong_monotonicity_check, equiconvergence, picard
from efixlab.spaces import (Domain, check_reflexivity, check_symmetry, check_triangle, distance_from_expr,
                            euclidean, max_pair, range_projection)

from helpers import UNIT, f, half_tail_sequence, jump_map

crit = pytest.mark.criterion


@crit(1, "range-projection asymptotic PASS; Euclidean FAIL with 1/8 > 1/16")
def test_asymptotic_separation():
    T = jump_map("1/8")
    seq = half_tail_sequence()
    assert UNIT.points()[-1] == 1.0
    ok = check_asymptotic(T, range_projection(), seq, UNIT, n_max=5, tol=0.0)
    assert ok.verdict.value == "PASS"
    bad = check_asymptotic(T, euclidean(), seq, UNIT, n_max=5, tol=0.0, focus=[(0.5, 1.0)])
    assert bad.verdict.value == "FAIL"
    exact = [w for w in bad.witnesses if w.lhs == 0.125 and w.rhs == 0.0625]
    assert exact, bad.witnesses
    assert any(w.inputs == (0.5, 1.0, 1) for w in exact)
    # recompute in exact arithmetic: |T1 - T(1/2)| = 1/8 and phi_1(1/2) = 1/16
    assert (Fraction(1, 8) - 0, Fraction(1, 16)) == (Fraction(0.125), Fraction(0.0625))
    assert abs(T(1.0) - T(0.5)) == 0.125 and seq.value(1, 0.5) == 0.0625


@crit(2, "max-pair Boyd-Wong PASS; Euclidean FAIL with 1/4 > 1/16")
def test_boyd_wong_separation():
    T = jump_map("1/4")
    psi = f("t/4", "psi")
    assert check_boyd_wong(T, max_pair(), psi, UNIT, tol=0.0).verdict.value == "PASS"
    bad = check_boyd_wong(T, euclidean(), psi, UNIT, tol=0.0, focus=[(0.75, 1.0)])
    assert bad.verdict.value == "FAIL"
    hits = [w for w in bad.witnesses if w.lhs == 0.25 and w.rhs == 0.0625]
    assert any(w.inputs[:2] == (0.75, 1.0) for w in hits), bad.witnesses


@crit(3, "max-pair solve converges to 0 from 11 starts within 2 + window steps")
def test_boyd_wong_solve():
    T = jump_map("1/4")
    starts = Domain(0.0, 1.0, "grid", 11).points()
    rep = equiconvergence(T, max_pair(), UNIT, starts, window=3)
    assert rep.candidate == 0.0
    assert rep.fixed_point_residuals == [0.0, 0.0, 0.0]
    assert rep.fixed_point_verified and rep.equiconvergent
    assert len(rep.traces) == 11
    for trace in rep.traces:
        assert trace.verdict == CONVERGED
        assert trace.stopped_at <= 2 + 3


BUILTIN_FUNCS = {
    "zero": "0",
    "half": "t/2",
    "quarter": "t/4",
    "sublinear": "t/(1 + t)",
    "capped": "min(t/2, 1)",
    "two_slopes": [["[0, 1)", "t/2"], ["[1, inf)", "t - 1/2"]],
    "step": [["[0, 1)", "0"], ["[1, inf)", "1/2"]],
    "not_vanishing": [["[0, 0]", "0.3"], ["(0, 1)", "t/2"], ["[1, inf)", "1/(2*t)"]],
    "identity": "t",
    "left_usc_only": [["[0, 1]", "0"], ["(1, inf)", "1/2"]],
}


@crit(4, "class separation and Phi within Psi")
def test_class_separation():
    step = f(BUILTIN_FUNCS["step"])
    assert check_psi_class(step).passed and check_phi_class(step).failed
    nv = check_psi_class(f(BUILTIN_FUNCS["not_vanishing"]))
    assert nv.failed and nv.details["conditions"]["vanishes_at_zero"] == "FAIL"
    assert any(w.inputs[0] == 0.0 for w in nv.witnesses)
    assert check_psi_class(f("t/4")).passed


@crit(4, "class separation and Phi within Psi")
def test_phi_contained_in_psi():
    funcs = [f(spec, name) for name, spec in BUILTIN_FUNCS.items()]
    for name in corpus_list():
        hyp = load_scenario(name).compiled["hypothesis"]
        if "boyd_wong" in hyp:
            funcs.append(hyp["boyd_wong"]["psi"])
        if "monotone_iterate" in hyp:
            funcs.append(hyp["monotone_iterate"]["phi"])
        if "asymptotic" in hyp:
            funcs.extend(hyp["asymptotic"]["seq"].functions)
    phi_passers = [g for g in funcs if check_phi_class(g).passed]
    assert len(phi_passers) >= 5
    for g in phi_passers:
        assert check_psi_class(g).passed, g.name


@crit(5, "affine oracle: monotone-iterate PASS, Picard reaches 2 within 60 steps")
def test_affine_oracle():
    dom = Domain(0.0, 4.0, "grid", 101)
    T = SelfMap.from_spec("T", "x/2 + 1", dom)
    rep = check_monotone_iterate(T, euclidean(), f("t/2", "phi"), dom, n_max=60)
    assert rep.verdict.value == "PASS"
    for x0 in (0.0, 1.0, 4.0):
        trace = picard(T, euclidean(), x0, tol=1e-9, max_iter=60)
        for n, xn in enumerate(trace.iterates):
            assert xn == pytest.approx(2 - (2 - x0) * 2.0**-n, abs=1e-15)
        hit = [n for n, xn in enumerate(trace.iterates) if abs(xn - 2) <= 1e-9]
        assert hit and hit[0] <= 60
        assert trace.verdict == CONVERGED and abs(trace.candidate - 2) <= 1e-9


@crit(6, "fixed-point-free map: MAX_ITER everywhere, asymptotic FAIL at n = 2")
def test_fixed_point_free():
    s = load_scenario("example_2_3")
    report = run_scenario(s)
    conv = report.solver["convergence"]
    assert conv.candidate is None
    for trace in conv.traces:
        assert trace.verdict == MAX_ITER
        assert trace.cycle is not None and trace.cycle[1] == 2
        assert set(trace.iterates[2:]) == {0.0, 1.0}
    asym = report.contraction["asymptotic"]
    assert asym.verdict.value == "FAIL"
    assert asym.details["first_failing_n"] == 2

    def T(x):  # independent of the library's map evaluation
        return 1.0 if x == 0 else 0.0

    for w in asym.witnesses:
        x, y, n = w.inputs
        assert n == 2
        lhs = T(T(y))  # p(a, b) = b
        rhs = y / 2  # phi_2 = t/2 applied to p(x, y) = y
        assert (lhs, rhs) == (w.lhs, w.rhs) and lhs > rhs
    golden = json.loads(golden_path("example_2_3").read_text())
    assert "Discrepancy" in golden["notes"]
    assert golden["contraction"]["asymptotic"]["verdict"] == "FAIL"


@crit(7, "iterate family t/2 has sup gaps 2^-n for n <= 40")
def test_uniform_convergence_gaps():
    seq = PhiSequence.iterates(ScalarFunc.from_spec("phi", "t/2"))
    rep = check_uniform_convergence(seq, 1.0, 40, 1e-9)
    gaps = rep.details["sup_gaps"]
    assert len(gaps) == 40
    for n, s in enumerate(gaps, start=1):
        assert abs(s - 2.0**-n) <= 1e-15


@crit(8, "distances along orbits are nonincreasing for Boyd-Wong corpus scenarios")
def test_monotone_distance_corpus():
    checked = 0
    for name in corpus_list():
        s = load_scenario(name)
        hyp = s.compiled["hypothesis"]
        if "boyd_wong" not in hyp:
            continue
        psi = hyp["boyd_wong"]["psi"]
        tol = s.settings["tol"]
        if not (check_boyd_wong(s.T, s.p, psi, s.dom, tol).passed and check_psi_class(psi, tol=tol).passed):
            continue
        checked += 1
        rep = boyd_wong_monotonicity_check(s.T, s.p, psi, s.dom, n_max=16, tol=tol)
        assert rep.verdict.value == "PASS", name
    assert checked >= 3


@crit(9, "axiom honesty for built-in distances and the squared metric")
def test_axiom_honesty():
    for dom in (Domain(0.0, 1.0, "grid", 21), UNIT):
        for p in (range_projection(), max_pair()):
            assert check_triangle(p, dom, tol=0.0).verdict.value == "PASS"
        sym = check_symmetry(range_projection(), dom)
        assert sym.verdict.value == "FAIL"
        refl = check_reflexivity(range_projection(), dom)
        assert refl.details["max_self_distance"] == 1.0
        assert refl.witnesses[0].inputs == (1.0, 1.0) and refl.witnesses[0].lhs == 1.0
        sq = distance_from_expr("(x - y)*(x - y)", dom, name="squared", symmetric=True, reflexive=True)
        tri = check_triangle(sq, dom, tol=0.0)
        assert tri.verdict.value == "FAIL"
        assert tri.witnesses[0].inputs == (0.0, 1.0, 0.5)
        assert (tri.witnesses[0].lhs, tri.witnesses[0].rhs) == (1.0, 0.5)


@crit(10, "byte-identical reruns, golden match, parser round-trip")
def test_determinism_and_golden():
    for name in corpus_list():
        s = load_scenario(name)
        first = run_scenario(s).to_json()
        second = run_scenario(load_scenario(name)).to_json()
        assert first == second, name
        assert first == golden_path(name).read_text(), name
        again = parse_scenario(s.to_text())
        assert again == s and again.to_text() == s.to_text()
