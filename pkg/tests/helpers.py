"""Shared constructions for the tests."""

from efixlab.compfun import PhiSequence, ScalarFunc
from efixlab.contraction import SelfMap
from efixlab.spaces import Domain

UNIT = Domain(0.0, 1.0, "grid", 101)


def jump_map(value: str, dom: Domain = UNIT) -> SelfMap:
    """0 on [0, 1) and ``value`` at 1."""
    return SelfMap.from_spec("T", [["[0, 1)", "0"], ["[1, 1]", value]], dom)


def step_phi1() -> ScalarFunc:
    return ScalarFunc.from_spec("phi_1", [["[0, 1)", "1/16"], ["[1, inf)", "1/8"]])


def half_tail_sequence(prefix=None) -> PhiSequence:
    tail = ScalarFunc.from_spec("phi", "t/2")
    return PhiSequence.constant(tail, prefix=[step_phi1()] if prefix is None else prefix)


def f(spec, name="f") -> ScalarFunc:
    return ScalarFunc.from_spec(name, spec)
