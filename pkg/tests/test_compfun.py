import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from efixlab.compfun import (DomainError, PhiSequence, check_nondecreasing, check_phi_class,
                             check_psi_class, check_tail_continuity, check_uniform_convergence,
                             default_grid, eval as eval_at, find_jumps)

from helpers import f, half_tail_sequence, step_phi1


def test_step_values_and_jump():
    phi1 = step_phi1()
    assert eval_at(phi1, 0.5) == 1 / 16 and eval_at(phi1, 1.0) == 1 / 8
    jumps = find_jumps(phi1, 1e-9)
    assert len(jumps) == 1
    j = jumps[0]
    assert (j["at"], j["left"], j["value"], j["right"]) == (1.0, 0.0625, 0.125, 0.125)
    assert j["probe_left"] == pytest.approx(0.0625)


def test_negative_argument_rejected():
    with pytest.raises(DomainError):
        f("t/2")(-0.1)


def test_phi_class_conditions():
    rep = check_phi_class(step_phi1())
    c = rep.details["conditions"]
    assert rep.failed
    assert c["continuity"] == "FAIL" and c["below_identity"] == "FAIL" and c["vanishes_at_zero"] == "FAIL"
    assert check_phi_class(f("t/2")).passed
    assert check_phi_class(f("t/(1 + t)")).passed
    # f(t) = t touches the identity
    assert check_phi_class(f("t")).details["conditions"]["below_identity"] == "FAIL"


def test_psi_class_conditions():
    assert check_psi_class(f([["[0, 1)", "0"], ["[1, inf)", "1/2"]])).passed
    # same step, closed on the left piece, is not upper semicontinuous from the right at 1
    rep = check_psi_class(f([["[0, 1]", "0"], ["(1, inf)", "1/2"]]))
    assert rep.details["conditions"]["right_usc"] == "FAIL"
    nv = check_psi_class(f([["[0, 0]", "0.3"], ["(0, 1)", "t/2"], ["[1, inf)", "1/(2*t)"]]))
    assert [k for k, v in nv.details["conditions"].items() if v == "FAIL"] == ["vanishes_at_zero"]
    assert nv.details["value_at_zero"] == 0.3


def test_default_grid_covers_boundaries_and_range():
    g = default_grid([step_phi1()], range_hi=5.0)
    assert g[0] == 0.0 and g[-1] >= 5.0 and 1.0 in g
    assert np.all(np.diff(g) > 0)


def test_nondecreasing():
    assert check_nondecreasing(f("t/2")).passed
    assert check_nondecreasing(f([["[0, 1)", "t"], ["[1, inf)", "0"]])).failed


def test_iterate_family_requires_monotone_base():
    with pytest.raises(ValueError):
        PhiSequence.iterates(f([["[0, 1)", "t/2"], ["[1, inf)", "0"]]))


def test_sequence_values():
    seq = half_tail_sequence()
    assert seq.value(1, 0.5) == 1 / 16 and seq.value(2, 0.5) == 0.25 and seq.value(9, 0.5) == 0.25
    it = PhiSequence.iterates(f("t/2"))
    assert [float(v) for v in it.iter_values(1.0, 4)] == [0.5, 0.25, 0.125, 0.0625]


def test_constant_tail_converges_after_prefix():
    rep = check_uniform_convergence(half_tail_sequence(), 1.0, 5)
    assert rep.passed
    assert rep.details["sup_gaps"][1:] == [0.0] * 4
    assert rep.details["below_tol_from"] == 2
    assert check_tail_continuity(half_tail_sequence()).passed


def test_nonconvergent_sequence_fails():
    seq = PhiSequence((), f("t/2"), "constant", f("t/4", "limit"))
    rep = check_uniform_convergence(seq, 1.0, 8)
    assert rep.failed and rep.witnesses[0].inputs == (1.0, 8)
    assert rep.details["sup_gaps"] == [0.25] * 8


_coef = st.sampled_from(["0", "1/8", "1/4", "1/2", "3/4", "1", "2"])


@st.composite
def piecewise_linear(draw):
    cuts = sorted(draw(st.sets(st.sampled_from([0.25, 0.5, 1.0, 2.0, 3.0]), max_size=3)))
    edges = [0.0] + cuts + [math.inf]
    pieces = []
    for lo, hi in zip(edges, edges[1:]):
        closed_left = draw(st.booleans()) or lo == 0.0
        left = "[" if closed_left else "("
        if pieces and closed_left:
            pieces[-1][0] = pieces[-1][0][:-1] + ")"
        elif pieces:
            pieces[-1][0] = pieces[-1][0][:-1] + "]"
        hi_text = "inf" if hi == math.inf else repr(hi)
        expr = f"{draw(_coef)}*t + {draw(_coef)}" if draw(st.booleans()) else f"{draw(_coef)}*t"
        pieces.append([f"{left}{lo!r}, {hi_text})", expr])
    return f(pieces, "random")


@given(piecewise_linear())
@settings(max_examples=150, deadline=None)
def test_phi_membership_implies_psi_membership(g):
    if check_phi_class(g).passed:
        assert check_psi_class(g).passed


@given(piecewise_linear())
@settings(max_examples=60, deadline=None)
def test_class_witnesses_are_sound(g):
    for rep in (check_phi_class(g), check_psi_class(g)):
        assert rep.passed == (not rep.witnesses)
        for w in rep.witnesses:
            assert w.lhs > w.rhs or w.lhs >= w.rhs > 0
