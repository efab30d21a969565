"""Command-line entry point: ``efixlab run|list|check``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .reports import Verdict
from .scenario import (ScenarioError, corpus_list, load_scenario, parse_scenario, run_scenario,
                       with_overrides)

EXIT_OK = 0
EXIT_INFRA = 1
EXIT_PARSE = 2
EXIT_STRICT = 3


def _summary(report) -> str:
    lines = [f"scenario {report.scenario}"]
    for key, verdict in report.verdicts().items():
        lines.append(f"  {key:<44} {verdict.value}")
    lines.append(f"  {'selector':<44} {report.selector.guarantee}")
    conv = report.solver["convergence"]
    verdicts = sorted({t.verdict for t in conv.traces})
    lines.append(f"  {'solver':<44} {', '.join(verdicts)}; candidate={conv.candidate}")
    for e in report.expectations:
        mark = "ok" if e["met"] else "MISMATCH"
        lines.append(f"  expect {e['key']} = {e['expected']!r}: {mark}")
    return "\n".join(lines)


def _fail(code: int, message: str) -> int:
    print(f"efixlab: {message}", file=sys.stderr)
    return code


def cmd_run(args) -> int:
    s = load_scenario(args.scenario)
    if any(v is not None for v in (args.tol, args.n_max, args.grid, args.seed)):
        s = with_overrides(s, args.tol, args.n_max, args.grid, args.seed)
    report = run_scenario(s)
    text = report.to_json()
    if args.json_out:
        Path(args.json_out).write_text(text)
    if not args.quiet:
        print(_summary(report))
    if args.strict:
        failed = any(v is Verdict.FAIL for v in report.verdicts().values())
        if failed or not all(e["met"] for e in report.expectations):
            return EXIT_STRICT
    return EXIT_OK


def cmd_list(args) -> int:
    for name in corpus_list():
        print(name)
    return EXIT_OK


def cmd_check(args) -> int:
    s = parse_scenario(Path(args.file).read_text())
    if not args.quiet:
        print(f"{s.name}: ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="efixlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file or corpus name")
    run.add_argument("scenario")
    run.add_argument("--tol", type=float)
    run.add_argument("--n-max", type=int)
    run.add_argument("--grid", type=int, help="sample count for the domain")
    run.add_argument("--seed", type=int, help="switch to seeded random sampling")
    run.add_argument("--json-out", metavar="PATH")
    run.add_argument("--quiet", action="store_true")
    run.add_argument("--strict", action="store_true",
                     help="exit 3 on any FAIL verdict or unmet expectation")
    run.set_defaults(func=cmd_run)

    lst = sub.add_parser("list", help="list corpus scenarios")
    lst.set_defaults(func=cmd_list)

    check = sub.add_parser("check", help="parse a scenario without running it")
    check.add_argument("file")
    check.add_argument("--quiet", action="store_true")
    check.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        return _fail(EXIT_PARSE, f"parse error: {exc}")
    except (OSError, FileNotFoundError) as exc:
        return _fail(EXIT_INFRA, str(exc))


if __name__ == "__main__":
    sys.exit(main())
