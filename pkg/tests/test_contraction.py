import pytest
from hypothesis import given, settings, strategies as st

from efixlab.compfun import PhiSequence, check_phi_class, check_psi_class
from efixlab.contraction import (ASYMPTOTIC, BOYD_WONG, MONOTONE_ITERATE, NONE, POWER_BOYD_WONG, DomainEscape,
                                 SelfMap, TheoremVerdict, check_asymptotic, check_boyd_wong,
                                 check_maps_into_domain, check_monotone_iterate, select_theorem)
from efixlab.spaces import Domain, check_p_continuity, euclidean, max_pair, range_projection

from helpers import UNIT, f, half_tail_sequence, jump_map


def test_selfmap_pieces_and_orbits():
    T = jump_map("1/8")
    assert T(1.0) == 0.125 and T(0.999) == 0.0
    assert T.boundaries == [1.0]
    O = T.orbits([1.0, 0.5], 2)
    assert O.tolist() == [[1.0, 0.5], [0.125, 0.0], [0.0, 0.0]]


def test_domain_escape():
    T = SelfMap.from_spec("T", "x + 1/2", UNIT)
    with pytest.raises(DomainEscape) as info:
        T.orbits([0.75], 3)
    assert info.value.n == 1
    rep = check_maps_into_domain(T, UNIT)
    assert rep.failed and rep.witnesses[0].inputs == (0.51, 1) and rep.witnesses[0].lhs == 1.01
    asym = check_boyd_wong(T, euclidean(), f("t/2"), UNIT)
    assert asym.hypothesis == "maps_into_domain" and asym.failed


def test_asymptotic_details():
    T = jump_map("1/8")
    rep = check_asymptotic(T, euclidean(), half_tail_sequence(), UNIT, n_max=5, tol=0.0)
    assert rep.details["per_n_pass"] == [False, True, True, True, True]
    assert rep.details["first_failing_n"] == 1
    ok = check_asymptotic(T, range_projection(), half_tail_sequence(), UNIT, n_max=5, tol=0.0)
    assert ok.passed and ok.details["per_n_pass"] == [True] * 5


def test_equality_case_is_not_a_violation():
    # p(Tx, T1) = 1/8 = phi_1(p(x, 1)) exactly, which tol = 0 must accept
    rep = check_asymptotic(jump_map("1/8"), range_projection(), half_tail_sequence(), Domain(0, 1, "grid", 3),
                           n_max=1, tol=0.0)
    assert rep.passed


def test_monotone_iterate_on_max_pair():
    rep = check_monotone_iterate(jump_map("1/4"), max_pair(), f("t/4"), UNIT)
    assert rep.passed
    assert rep.details["iterate_decay"]["at_diameter"] == 4.0**-16


def test_monotone_iterate_rejects_decreasing_phi():
    phi = f([["[0, 1/2)", "t/2"], ["[1/2, inf)", "1/4 - (t - 1/2)/4"]])
    rep = check_monotone_iterate(SelfMap.from_spec("T", "x/8", UNIT), euclidean(), phi, UNIT)
    assert rep.details["conditions"]["nondecreasing"] == "FAIL"


def _reports_for(T, p, seq=None, psi=None, phi=None):
    out = {"p_continuity": check_p_continuity(T, p, UNIT)}
    if psi is not None:
        out["boyd_wong"] = check_boyd_wong(T, p, psi, UNIT)
        out["psi_class"] = check_psi_class(psi)
    if seq is not None:
        from efixlab.compfun import check_tail_continuity, check_uniform_convergence
        out["asymptotic"] = check_asymptotic(T, p, seq, UNIT, n_max=5)
        out["uniform_convergence"] = check_uniform_convergence(seq, 1.0, 5)
        out["tail_continuity"] = check_tail_continuity(seq)
        out["limit_phi_class"] = check_phi_class(seq.limit)
    if phi is not None:
        out["monotone_iterate"] = check_monotone_iterate(T, p, phi, UNIT, n_max=60)
    return out


def test_selector_priorities():
    T = jump_map("1/4")
    assert select_theorem(_reports_for(T, max_pair(), psi=f("t/4"))).guarantee == BOYD_WONG
    T2 = jump_map("1/8")
    seq = half_tail_sequence()
    assert select_theorem(_reports_for(T2, range_projection(), seq=seq), seq=seq).guarantee == ASYMPTOTIC
    half = SelfMap.from_spec("T", "x/2", UNIT)
    assert select_theorem(_reports_for(half, euclidean(), phi=f("t/2"))).guarantee == MONOTONE_ITERATE
    none = select_theorem(_reports_for(T, euclidean(), psi=f("t/4")))
    assert none.guarantee == NONE and "boyd_wong" in none.failed


def test_selector_power_guarantee():
    half = SelfMap.from_spec("T", "x/2", UNIT)
    # phi_1 = t/2 is in Phi and the inequality holds at n = 1, but the claimed limit t is not in Phi
    seq = PhiSequence((f("t/2", "phi_1"),), f("t", "tail"), "constant", f("t", "limit"))
    verdict = select_theorem(_reports_for(half, euclidean(), seq=seq), seq=seq)
    assert verdict.guarantee == POWER_BOYD_WONG and verdict.power_index == 1
    assert TheoremVerdict.from_dict(verdict.to_dict()) == verdict


def test_focus_witness_is_pinned():
    rep = check_boyd_wong(jump_map("1/4"), euclidean(), f("t/4"), UNIT, tol=0.0, focus=[(0.75, 1.0)])
    assert len(rep.witnesses) == 11
    assert any(w.inputs == (0.75, 1.0, 1) for w in rep.witnesses)


slopes = st.sampled_from(["0", "1/8", "1/4", "1/2", "3/4", "1"])


@given(slopes, slopes, st.sampled_from(["t/2", "t/4", "3*t/4", "t/8"]))
@settings(max_examples=40, deadline=None)
def test_grid_refinement_never_clears_a_failure(a, b, psi_text):
    # T x = a x on [0, 1/2), b x on [1/2, 1]; refining the grid keeps every coarse point
    T = SelfMap.from_spec("T", [["[0, 1/2)", f"{a}*x"], ["[1/2, 1]", f"{b}*x"]], UNIT)
    psi = f(psi_text)
    coarse = check_boyd_wong(T, euclidean(), psi, Domain(0, 1, "grid", 11), tol=0.0)
    fine = check_boyd_wong(T, euclidean(), psi, Domain(0, 1, "grid", 21), tol=0.0)
    if coarse.failed:
        assert fine.failed
    for w in fine.witnesses:
        x, y, _ = w.inputs
        assert w.lhs == abs(T(x) - T(y)) and w.rhs == psi(abs(x - y)) and w.lhs > w.rhs


@given(slopes, slopes)
@settings(max_examples=20, deadline=None)
def test_checks_are_deterministic(a, b):
    T = SelfMap.from_spec("T", [["[0, 1/2)", f"{a}*x"], ["[1/2, 1]", f"{b}*x"]], UNIT)
    seq = half_tail_sequence(prefix=[])
    one = check_asymptotic(T, euclidean(), seq, UNIT, n_max=4).to_dict()
    two = check_asymptotic(T, euclidean(), seq, UNIT, n_max=4).to_dict()
    assert one == two
