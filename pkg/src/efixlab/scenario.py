"""Declarative scenarios, the built-in corpus and run reports.

A scenario is a YAML mapping (see ``docs/scenario_format.md``).  Running one
executes the requested checks in a fixed order (axioms, classes,
contraction, selector, solver) and never stops on a FAIL verdict: failures
are results.  Reports serialize to JSON with sorted keys.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import __version__
from .compfun import (PhiSequence, ScalarFunc, check_phi_class, check_psi_class,
                      check_tail_continuity, check_uniform_convergence)
from .contraction import (DEFAULT_N_MAX, SelfMap, TheoremVerdict, check_asymptotic,
                          check_boyd_wong, check_maps_into_domain, check_monotone_iterate,
                          select_theorem)
from .expr import ExprError, PartitionError, parse_expr, to_text
from .reports import AxiomReport, HypothesisReport
from .solver import (DEFAULT_MAX_ITER, DEFAULT_WINDOW, ConvergenceReport,
                     boyd_wong_monotonicity_check, equiconvergence, pair_decay_check,
                     uniqueness_probe)
from .spaces import (DEFAULT_COUNT, DEFAULT_TOL, Domain, builtin_distance, check_base_metric,
                     check_nonnegative, check_p_bounded, check_p_continuity, check_reflexivity,
                     check_symmetry, check_triangle, check_uniformity_compat, distance_from_expr)

SCHEMA_VERSION = 1
CORPUS_ENV = "EFIXLAB_CORPUS_DIR"
BUILTIN_CORPUS = Path(__file__).parent / "corpus"
GOLDEN_DIR = BUILTIN_CORPUS / "golden"
DEFAULT_EPS_GRID = [0.5, 0.1, 0.05]

AXIOM_CHECKS = ("maps_into_domain", "nonnegative", "base_metric", "triangle", "symmetry",
                "reflexivity", "uniformity", "p_bounded", "p_continuity")
CLASS_CHECKS = ("psi_class", "phi_class", "uniform_convergence", "tail_continuity")
CONTRACTION_CHECKS = ("asymptotic", "boyd_wong", "monotone_iterate")
SOLVER_CHECKS = ("pair_decay", "monotonicity", "uniqueness")
CHECK_REGISTRY = AXIOM_CHECKS + CLASS_CHECKS + CONTRACTION_CHECKS + SOLVER_CHECKS
HYPOTHESES = ("boyd_wong", "asymptotic", "monotone_iterate")


class ScenarioError(ValueError):
    """Invalid scenario document; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


# ------------------------------------------------------------------ parsing


class _Marks:
    """Source positions of every node, keyed by path from the root."""

    def __init__(self, text: str):
        self.marks: dict = {}
        try:
            root = yaml.compose(text)
        except yaml.MarkedYAMLError as exc:
            mark = exc.problem_mark or exc.context_mark
            raise ScenarioError(f"syntax error: {exc.problem}",
                                mark.line + 1 if mark else None,
                                mark.column + 1 if mark else None) from None
        if root is not None:
            self._walk(root, ())

    def _walk(self, node, path):
        self.marks[path] = node
        if isinstance(node, yaml.MappingNode):
            for key, value in node.value:
                self._walk(value, path + (key.value,))
        elif isinstance(node, yaml.SequenceNode):
            for i, value in enumerate(node.value):
                self._walk(value, path + (i,))

    def error(self, path, message: str, column: int | None = None) -> ScenarioError:
        while path and path not in self.marks:
            path = path[:-1]
        node = self.marks.get(path)
        if node is None:
            return ScenarioError(message)
        line, col = node.start_mark.line + 1, node.start_mark.column + 1
        if column is not None:
            quoted = isinstance(node, yaml.ScalarNode) and node.style in ("'", '"')
            col += column - 1 + (1 if quoted else 0)
        return ScenarioError(message, line, col)


def _float(value, marks, path) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise marks.error(path, f"expected a number, got {value!r}") from None


def _canon_pieces(spec, var: str, marks, path) -> Any:
    """Canonical text of a function spec: one expression, or [interval, expr] pairs."""
    if isinstance(spec, (int, float)):
        spec = str(spec)
    if isinstance(spec, str):
        try:
            return to_text(parse_expr(spec, (var,)))
        except ExprError as exc:
            raise marks.error(path, str(exc.args[0]).split(" (column")[0], exc.column) from None
    if not isinstance(spec, list) or not spec:
        raise marks.error(path, "expected an expression or a list of [interval, expression] pairs")
    out = []
    for i, item in enumerate(spec):
        if not isinstance(item, list) or len(item) != 2:
            raise marks.error(path + (i,), "each piece must be [interval, expression]")
        try:
            node = parse_expr(str(item[1]), (var,))
        except ExprError as exc:
            raise marks.error(path + (i, 1), str(exc.args[0]).split(" (column")[0], exc.column) from None
        out.append([str(item[0]).strip(), to_text(node)])
    return out


def _build_func(name, spec, marks, path) -> ScalarFunc:
    try:
        return ScalarFunc.from_spec(name, spec)
    except (ExprError, PartitionError) as exc:
        raise marks.error(path, f"{name}: {exc}") from None


@dataclass
class Scenario:
    """Canonical scenario data; compiled objects are derived and not compared."""

    name: str
    domain: dict
    map: Any
    distance: dict
    hypothesis: dict
    checks: list
    solver: dict
    settings: dict
    compare_base_metric: bool = False
    focus_pairs: list = field(default_factory=list)
    expect: dict = field(default_factory=dict)
    notes: str = ""
    compiled: dict = field(default_factory=dict, compare=False, repr=False)

    # compiled accessors
    @property
    def dom(self) -> Domain:
        return self.compiled["domain"]

    @property
    def T(self) -> SelfMap:
        return self.compiled["map"]

    @property
    def p(self):
        return self.compiled["distance"]

    def to_data(self) -> dict:
        data = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "compiled"}
        return json.loads(json.dumps(data))

    def to_text(self) -> str:
        return yaml.safe_dump(self.to_data(), sort_keys=True, default_flow_style=None, width=100)

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


def _parse_domain(raw, marks) -> tuple[dict, Domain]:
    if not isinstance(raw, dict):
        raise marks.error(("domain",), "domain must be a mapping with lo and hi")
    lo = _float(raw.get("lo"), marks, ("domain", "lo"))
    hi = _float(raw.get("hi"), marks, ("domain", "hi"))
    sampler = raw.get("sampler", "grid")
    count = int(raw.get("count", DEFAULT_COUNT))
    seed = raw.get("seed")
    data = {"lo": lo, "hi": hi, "sampler": sampler, "count": count}
    if seed is not None:
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise marks.error(("domain", "seed"), "seed must be a 64-bit unsigned integer")
        data["seed"] = seed
    try:
        dom = Domain(lo, hi, "random" if sampler in ("random", "seeded-random") else sampler,
                     count, seed)
    except ValueError as exc:
        raise marks.error(("domain",), str(exc)) from None
    return data, dom


def _parse_distance(raw, dom, marks):
    path = ("distance",)
    if isinstance(raw, str):
        raw = {"builtin": raw}
    if not isinstance(raw, dict):
        raise marks.error(path, "distance must be a builtin name or a mapping")
    if "builtin" in raw:
        try:
            p = builtin_distance(raw["builtin"])
        except ValueError as exc:
            raise marks.error(path + ("builtin",), str(exc)) from None
        return {"builtin": raw["builtin"]}, p
    if "expr" not in raw:
        raise marks.error(path, "distance needs 'builtin' or 'expr'")
    try:
        node = parse_expr(str(raw["expr"]), ("x", "y"))
        p = distance_from_expr(str(raw["expr"]), dom, name=str(raw.get("name", "custom")),
                               symmetric=bool(raw.get("symmetric", False)),
                               reflexive=bool(raw.get("reflexive", False)))
    except ExprError as exc:
        raise marks.error(path + ("expr",), str(exc.args[0]).split(" (column")[0], exc.column) from None
    data = {"expr": to_text(node), "name": p.name, "symmetric": p.declared_symmetric,
            "reflexive": p.declared_reflexive}
    return data, p


def _parse_hypothesis(raw, marks):
    path = ("hypothesis",)
    if not isinstance(raw, dict) or not raw:
        raise marks.error(path, f"hypothesis must map one or more of {', '.join(HYPOTHESES)}")
    data, compiled = {}, {}
    for key, value in raw.items():
        hp = path + (key,)
        if key not in HYPOTHESES:
            raise marks.error(hp, f"unknown hypothesis {key!r} (known: {', '.join(HYPOTHESES)})")
        if not isinstance(value, dict):
            raise marks.error(hp, "hypothesis entry must be a mapping")
        if key == "boyd_wong":
            spec = _canon_pieces(value.get("psi"), "t", marks, hp + ("psi",))
            data[key] = {"psi": spec}
            compiled[key] = {"psi": _build_func("psi", spec, marks, hp + ("psi",))}
        elif key == "monotone_iterate":
            spec = _canon_pieces(value.get("phi"), "t", marks, hp + ("phi",))
            data[key] = {"phi": spec}
            compiled[key] = {"phi": _build_func("phi", spec, marks, hp + ("phi",))}
        else:
            rule = value.get("tail_rule", "constant")
            if rule not in ("constant", "iterate"):
                raise marks.error(hp + ("tail_rule",), "tail_rule must be 'constant' or 'iterate'")
            prefix = [_canon_pieces(s, "t", marks, hp + ("prefix", i))
                      for i, s in enumerate(value.get("prefix", []) or [])]
            tail = _canon_pieces(value.get("tail"), "t", marks, hp + ("tail",))
            default_limit = tail if rule == "constant" else "0"
            limit = _canon_pieces(value.get("limit", default_limit), "t", marks, hp + ("limit",))
            data[key] = {"prefix": prefix, "tail": tail, "tail_rule": rule, "limit": limit}
            funcs = [_build_func(f"phi_{i + 1}", s, marks, hp + ("prefix", i))
                     for i, s in enumerate(prefix)]
            tail_f = _build_func("phi_tail", tail, marks, hp + ("tail",))
            limit_f = _build_func("phi_limit", limit, marks, hp + ("limit",))
            try:
                seq = PhiSequence(tuple(funcs), tail_f, rule, limit_f)
            except ValueError as exc:
                raise marks.error(hp + ("tail",), str(exc)) from None
            compiled[key] = {"seq": seq}
    return data, compiled


def _parse_starts(raw, dom, marks):
    path = ("solver", "starts")
    if raw is None:
        raw = {"grid": 11}
    if isinstance(raw, dict):
        if set(raw) != {"grid"}:
            raise marks.error(path, "starts must be a list or {grid: count}")
        n = int(raw["grid"])
        return {"grid": n}, list(Domain(dom.lo, dom.hi, "grid", n).points())
    if not isinstance(raw, list) or not raw:
        raise marks.error(path, "starts must be a nonempty list")
    starts = [_float(v, marks, path + (i,)) for i, v in enumerate(raw)]
    for i, s in enumerate(starts):
        if not dom.lo <= s <= dom.hi:
            raise marks.error(path + (i,), f"start {s} outside the domain")
    return starts, starts


def parse_scenario(text: str) -> Scenario:
    """Parse and fully resolve a scenario document."""
    marks = _Marks(text)
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:  # composed fine but failed to construct
        raise ScenarioError(f"syntax error: {exc}") from None
    if not isinstance(raw, dict):
        raise ScenarioError("scenario must be a mapping", 1, 1)
    known = {f.name for f in fields(Scenario)} - {"compiled"}
    for key in raw:
        if key not in known:
            raise marks.error((key,), f"unknown key {key!r}")
    for key in ("name", "domain", "map", "distance", "hypothesis"):
        if key not in raw:
            raise ScenarioError(f"missing required key {key!r}")

    domain_data, dom = _parse_domain(raw["domain"], marks)
    map_spec = _canon_pieces(raw["map"], "x", marks, ("map",))
    try:
        T = SelfMap.from_spec("T", map_spec, dom)
    except (ExprError, PartitionError) as exc:
        raise marks.error(("map",), f"map: {exc}") from None
    distance_data, p = _parse_distance(raw["distance"], dom, marks)
    hyp_data, hyp = _parse_hypothesis(raw["hypothesis"], marks)

    checks = raw.get("checks")
    if checks is None:
        checks = list(CHECK_REGISTRY)
    for i, c in enumerate(checks):
        if c not in CHECK_REGISTRY:
            raise marks.error(("checks", i), f"unknown check {c!r}")
    checks = [c for c in CHECK_REGISTRY if c in checks]

    settings_raw = raw.get("settings") or {}
    settings = {
        "tol": _float(settings_raw.get("tol", DEFAULT_TOL), marks, ("settings", "tol")),
        "n_max": int(settings_raw.get("n_max", DEFAULT_N_MAX)),
        "eps_grid": [_float(e, marks, ("settings", "eps_grid", i))
                     for i, e in enumerate(settings_raw.get("eps_grid", DEFAULT_EPS_GRID))],
    }
    solver_raw = raw.get("solver") or {}
    starts_data, starts = _parse_starts(solver_raw.get("starts"), dom, marks)
    solver = {
        "starts": starts_data,
        "tol": _float(solver_raw.get("tol", DEFAULT_TOL), marks, ("solver", "tol")),
        "max_iter": int(solver_raw.get("max_iter", DEFAULT_MAX_ITER)),
        "window": int(solver_raw.get("window", DEFAULT_WINDOW)),
    }
    if not 1 <= solver["window"] <= solver["max_iter"]:
        raise marks.error(("solver",), "need max_iter >= window >= 1")

    focus = []
    for i, pair in enumerate(raw.get("focus_pairs") or []):
        if not isinstance(pair, list) or len(pair) != 2:
            raise marks.error(("focus_pairs", i), "focus pair must be [x, y]")
        x, y = (_float(v, marks, ("focus_pairs", i, k)) for k, v in enumerate(pair))
        if not (dom.contains(x) and dom.contains(y)):
            raise marks.error(("focus_pairs", i), "focus pair outside the domain")
        focus.append([x, y])

    name = str(raw["name"])
    return Scenario(
        name=name,
        domain=domain_data,
        map=map_spec,
        distance=distance_data,
        hypothesis=hyp_data,
        checks=checks,
        solver=solver,
        settings=settings,
        compare_base_metric=bool(raw.get("compare_base_metric", False)),
        focus_pairs=focus,
        expect=dict(raw.get("expect") or {}),
        notes=str(raw.get("notes", "")).strip(),
        compiled={"domain": dom, "map": T, "distance": p, "hypothesis": hyp, "starts": starts},
    )


def serialize_scenario(s: Scenario) -> str:
    return s.to_text()


def with_overrides(s: Scenario, tol: float | None = None, n_max: int | None = None,
                   grid: int | None = None, seed: int | None = None) -> Scenario:
    """Re-resolve ``s`` with command-line overrides applied."""
    data = s.to_data()
    if tol is not None:
        data["settings"]["tol"] = tol
        data["solver"]["tol"] = tol
    if n_max is not None:
        data["settings"]["n_max"] = n_max
    if grid is not None:
        data["domain"]["count"] = grid
    if seed is not None:
        data["domain"]["sampler"] = "random"
        data["domain"]["seed"] = seed
    return parse_scenario(yaml.safe_dump(data, sort_keys=True))


# ------------------------------------------------------------------ corpus


def corpus_dir() -> Path:
    override = os.environ.get(CORPUS_ENV)
    return Path(override) if override else BUILTIN_CORPUS


def corpus_list() -> list[str]:
    return sorted(path.stem for path in corpus_dir().glob("*.yaml"))


def corpus_path(name: str) -> Path:
    path = corpus_dir() / f"{name}.yaml"
    if not path.exists():
        raise FileNotFoundError(f"no corpus scenario named {name!r}")
    return path


def load_scenario(ref: str) -> Scenario:
    """Load a scenario from a file path or a corpus name."""
    path = Path(ref)
    if not path.exists():
        path = corpus_path(ref)
    return parse_scenario(path.read_text())


# ------------------------------------------------------------------ running


def _report_from_dict(d: dict):
    return AxiomReport.from_dict(d) if "axiom" in d else HypothesisReport.from_dict(d)


@dataclass
class RunReport:
    scenario: str
    notes: str
    axioms: dict
    classes: dict
    contraction: dict
    selector: TheoremVerdict
    solver: dict
    expectations: list
    input_digest: str
    artifact_version: str = __version__
    schema_version: int = SCHEMA_VERSION
    wall_time: float | None = None

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "schema_version": self.schema_version,
            "artifact_version": self.artifact_version,
            "scenario": self.scenario,
            "notes": self.notes,
            "input_digest": self.input_digest,
            "axioms": {k: r.to_dict() for k, r in self.axioms.items()},
            "classes": {k: r.to_dict() for k, r in self.classes.items()},
            "contraction": {k: r.to_dict() for k, r in self.contraction.items()},
            "selector": self.selector.to_dict(),
            "solver": {k: v.to_dict() for k, v in self.solver.items()},
            "expectations": self.expectations,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=1, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        solver = {}
        for k, v in d["solver"].items():
            solver[k] = ConvergenceReport.from_dict(v) if k == "convergence" else _report_from_dict(v)
        return cls(
            scenario=d["scenario"],
            notes=d["notes"],
            axioms={k: _report_from_dict(v) for k, v in d["axioms"].items()},
            classes={k: _report_from_dict(v) for k, v in d["classes"].items()},
            contraction={k: _report_from_dict(v) for k, v in d["contraction"].items()},
            selector=TheoremVerdict.from_dict(d["selector"]),
            solver=solver,
            expectations=d["expectations"],
            input_digest=d["input_digest"],
            artifact_version=d["artifact_version"],
            schema_version=d["schema_version"],
            wall_time=d.get("wall_time"),
        )

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))

    def verdicts(self) -> dict:
        out = {}
        for section in ("axioms", "classes", "contraction"):
            for k, r in getattr(self, section).items():
                out[f"{section}.{k}"] = r.verdict
        return out


def _lookup(data, dotted: str):
    cur = data
    for part in dotted.split("."):
        if isinstance(cur, list):
            cur = cur[int(part)]
        elif isinstance(cur, dict) and part in cur:
            cur = cur[part]
        else:
            raise KeyError(dotted)
    return cur


def run_scenario(s: Scenario) -> RunReport:
    """Execute every requested check, the theorem selector, then the solver."""
    started = time.perf_counter()
    dom, T, p = s.dom, s.T, s.p
    hyp = s.compiled["hypothesis"]
    tol, n_max = s.settings["tol"], s.settings["n_max"]
    focus = [tuple(f) for f in s.focus_pairs]
    want = set(s.checks)
    pts = np.unique(np.concatenate([dom.sample(T.boundaries)]))

    axioms: dict = {}
    if "maps_into_domain" in want:
        axioms["maps_into_domain"] = check_maps_into_domain(T, dom, n_max, tol)
    if "nonnegative" in want:
        axioms["nonnegative"] = check_nonnegative(p, dom, points=pts)
    if "base_metric" in want:
        axioms["base_metric"] = check_base_metric(p, dom, tol, points=pts)
    if "triangle" in want:
        axioms["triangle"] = check_triangle(p, dom, tol, points=pts)
    if "symmetry" in want:
        axioms["symmetry"] = check_symmetry(p, dom, tol, points=pts)
    if "reflexivity" in want:
        axioms["reflexivity"] = check_reflexivity(p, dom, tol, points=pts)
    if "uniformity" in want:
        axioms["uniformity"] = check_uniformity_compat(p, dom, s.settings["eps_grid"], tol, points=pts)
    diameter, bounded = check_p_bounded(p, dom, points=pts)
    if "p_bounded" in want:
        axioms["p_bounded"] = bounded
    if "p_continuity" in want:
        axioms["p_continuity"] = check_p_continuity(T, p, dom, tol, points=pts)

    classes: dict = {}
    contraction: dict = {}
    variants = [("", p)] + ([("@base_metric", p.with_base_as_p())] if s.compare_base_metric else [])

    if "boyd_wong" in hyp:
        psi = hyp["boyd_wong"]["psi"]
        if "psi_class" in want:
            classes["psi_class"] = check_psi_class(psi, tol=tol)
        if "phi_class" in want:
            classes["psi_phi_class"] = check_phi_class(psi, tol=tol)
    if "asymptotic" in hyp:
        seq = hyp["asymptotic"]["seq"]
        if "phi_class" in want:
            classes["limit_phi_class"] = check_phi_class(seq.limit, tol=tol)
            for k, f in enumerate(seq.prefix, start=1):
                classes[f"prefix_phi_class_{k}"] = check_phi_class(f, tol=tol)
        if "uniform_convergence" in want:
            classes["uniform_convergence"] = check_uniform_convergence(
                seq, diameter if diameter > 0 else 1.0, n_max, tol)
        if "tail_continuity" in want:
            classes["tail_continuity"] = check_tail_continuity(seq, tol)
    if "monotone_iterate" in hyp and "phi_class" in want:
        classes["monotone_phi_class"] = check_phi_class(hyp["monotone_iterate"]["phi"], tol=tol)

    for suffix, dist in variants:
        if "asymptotic" in hyp and "asymptotic" in want:
            contraction["asymptotic" + suffix] = check_asymptotic(
                T, dist, hyp["asymptotic"]["seq"], dom, n_max, tol, focus)
        if "boyd_wong" in hyp and "boyd_wong" in want:
            contraction["boyd_wong" + suffix] = check_boyd_wong(
                T, dist, hyp["boyd_wong"]["psi"], dom, tol, focus)
        if "monotone_iterate" in hyp and "monotone_iterate" in want:
            contraction["monotone_iterate" + suffix] = check_monotone_iterate(
                T, dist, hyp["monotone_iterate"]["phi"], dom, n_max, tol, focus)

    selectable = {k: v for k, v in contraction.items() if "@" not in k}
    for k in ("psi_class", "uniform_convergence", "tail_continuity", "limit_phi_class"):
        if k in classes:
            selectable[k] = classes[k]
    if "p_continuity" in axioms:
        selectable["p_continuity"] = axioms["p_continuity"]
    if selectable:
        seq = hyp["asymptotic"]["seq"] if "asymptotic" in hyp else None
        selector = select_theorem(selectable, seq=seq, tol=tol)
    else:
        selector = TheoremVerdict("NONE", missing=["no hypothesis reports were requested"])

    sv = s.solver
    solver: dict = {}
    solver["convergence"] = equiconvergence(T, p, dom, s.compiled["starts"], sv["tol"],
                                            sv["max_iter"], sv["window"], n_max)
    if "pair_decay" in want:
        solver["pair_decay"] = pair_decay_check(T, p, dom, n_max, sv["tol"])
    if "monotonicity" in want:
        psi = hyp["boyd_wong"]["psi"] if "boyd_wong" in hyp else None
        solver["monotonicity"] = boyd_wong_monotonicity_check(T, p, psi, dom, n_max, sv["tol"])
    if "uniqueness" in want:
        cand = solver["convergence"].candidate
        solver["uniqueness"] = uniqueness_probe(T, p, dom, sv["tol"],
                                                extra=[cand] if cand is not None else ())

    report = RunReport(
        scenario=s.name,
        notes=s.notes,
        axioms=axioms,
        classes=classes,
        contraction=contraction,
        selector=selector,
        solver=solver,
        expectations=[],
        input_digest=s.digest(),
    )
    data = report.to_dict()
    for key in sorted(s.expect):
        expected = s.expect[key]
        try:
            actual = _lookup(data, key)
        except (KeyError, IndexError, ValueError):
            actual = None
        report.expectations.append({"key": key, "expected": expected, "actual": actual,
                                    "met": actual == expected})
    report.wall_time = time.perf_counter() - started
    return report


def golden_path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.json"


def write_golden(names=None) -> list[Path]:
    """Regenerate golden reports for built-in corpus scenarios."""
    written = []
    for name in names or corpus_list():
        report = run_scenario(load_scenario(name))
        path = golden_path(name)
        path.write_text(report.to_json())
        written.append(path)
    return written
