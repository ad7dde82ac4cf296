"""Command-line front end.

Every subcommand prints a deterministic report (text by default, JSON with
--format json) and exits 0 for a true/successful verdict, 1 for a false or
none-found verdict, and 2 for usage or input errors.  Wall-clock timing goes
to stderr so reports stay byte-identical across runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Sequence

from cologic import formulas, fraisse, semantics, suites
from cologic.algebra import ContactAlgebra, contact_from_graph
from cologic.covers import Arrangement
from cologic.graphs import FiniteGraph, GraphFormatError
from cologic.limits import SizeGuardError

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


class InputError(ValueError):
    """Bad file or argument content; reported with exit code 2."""


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()[:16]


def _load_graph(path: str, inputs: dict) -> FiniteGraph:
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    inputs[path] = _digest(raw)
    try:
        return FiniteGraph.from_json_dict(json.loads(raw))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    except GraphFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_algebra(path: str, inputs: dict) -> ContactAlgebra:
    try:
        return contact_from_graph(_load_graph(path, inputs))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_tuple(text: str) -> tuple[frozenset[int], ...]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"tuple {text!r}: invalid JSON at column {exc.colno}") from None
    if not isinstance(data, list) or not all(isinstance(block, list) for block in data):
        raise InputError("tuple must be a JSON list of atom-index lists")
    out = []
    for block in data:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in block):
            raise InputError("tuple blocks must hold integers")
        out.append(frozenset(block))
    return tuple(out)


def _parse_images(text: str) -> tuple[int, ...]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"map {text!r}: invalid JSON at column {exc.colno}") from None
    if not isinstance(data, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in data
    ):
        raise InputError("map must be a JSON list of integers")
    return tuple(data)


def _parse_formula(text: str) -> formulas.Formula:
    try:
        return formulas.parse(text)
    except formulas.ParseError as exc:
        raise InputError(f"formula: {exc}") from None


def _tuple_json(entries: Sequence[frozenset[int]]) -> list[list[int]]:
    return [sorted(block) for block in entries]


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    print(f"command: {report['command']}")
    for key, value in sorted(report.get("inputs", {}).items()):
        print(f"input {key}: {value}")
    print(f"verdict: {report['verdict']}")
    for line in report.get("lines", []):
        print(line)


def _trace_lines(trace: semantics.EfTrace) -> list[str]:
    lines = [f"reason: {trace.reason}"]
    if trace.losing_arrangement is not None:
        lines.append(
            f"losing challenge: side {trace.losing_side}, arrangement "
            f"{list(trace.losing_arrangement.images)}, tuple "
            f"{_tuple_json(trace.losing_tuple)}"
        )
    for pair in trace.matched:
        lines.append(
            f"matched: side {pair.side} arrangement {list(pair.arrangement.images)} "
            f"challenge {_tuple_json(pair.challenge)} response {_tuple_json(pair.response)}"
        )
    return lines


def _cmd_mc(args: argparse.Namespace) -> tuple[int, dict]:
    inputs: dict = {}
    algebra = _load_algebra(args.model, inputs)
    formula = _parse_formula(args.formula)
    inputs["formula"] = args.formula
    if args.tuple is None:
        entries: tuple[frozenset[int], ...] = (algebra.full_set,)
    else:
        entries = _parse_tuple(args.tuple)
        inputs["tuple"] = args.tuple
    try:
        verdict = semantics.satisfies(algebra, entries, formula)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = {
        "command": "mc",
        "inputs": inputs,
        "verdict": verdict,
        "lines": [f"tuple: {_tuple_json(entries)}"],
    }
    return (EXIT_TRUE if verdict else EXIT_FALSE), report


def _cmd_sat_search(args: argparse.Namespace) -> tuple[int, dict]:
    formula = _parse_formula(args.formula)
    try:
        model = semantics.find_model(formula, args.max_vertices)
    except (ValueError, SizeGuardError) as exc:
        raise InputError(str(exc)) from None
    report = {
        "command": "sat-search",
        "inputs": {"formula": args.formula, "max_vertices": args.max_vertices},
        "verdict": model is not None,
        "lines": [],
    }
    if model is not None:
        report["model"] = model.to_json_dict()
        report["lines"].append(f"model: {json.dumps(model.to_json_dict(), sort_keys=True)}")
    return (EXIT_TRUE if model is not None else EXIT_FALSE), report


def _cmd_ef(args: argparse.Namespace) -> tuple[int, dict]:
    inputs: dict = {}
    algebra_a = _load_algebra(args.model_a, inputs)
    algebra_b = _load_algebra(args.model_b, inputs)
    tuple_a = (
        (algebra_a.full_set,) if args.tuple_a is None else _parse_tuple(args.tuple_a)
    )
    tuple_b = (
        (algebra_b.full_set,) if args.tuple_b is None else _parse_tuple(args.tuple_b)
    )
    try:
        verdict, trace = semantics.ef_equivalent(
            algebra_a, tuple_a, algebra_b, tuple_b, args.depth
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = {
        "command": "ef",
        "inputs": {**inputs, "depth": args.depth},
        "verdict": verdict,
        "lines": _trace_lines(trace),
    }
    return (EXIT_TRUE if verdict else EXIT_FALSE), report


def _cmd_tv_check(args: argparse.Namespace) -> tuple[int, dict]:
    inputs: dict = {}
    algebra = _load_algebra(args.model, inputs)
    blocks = _parse_tuple(args.blocks)
    inputs["blocks"] = args.blocks
    try:
        result = semantics.generated_substructure_check(algebra, blocks, args.bound)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    lines = [
        f"obligations checked: {result.obligations_checked}",
        f"ambient refinements seen: {result.refinements_checked}",
    ]
    for violation in result.violations[:10]:
        lines.append(
            f"violation: tuple {_tuple_json(violation.coarse)} arrangement "
            f"{list(violation.arrangement.images)} ambient witness "
            f"{_tuple_json(violation.witness)}"
        )
    report = {
        "command": "tv-check",
        "inputs": {**inputs, "bound": args.bound},
        "verdict": result.passed,
        "violations": len(result.violations),
        "lines": lines,
    }
    return (EXIT_TRUE if result.passed else EXIT_FALSE), report


def _cmd_epi_check(args: argparse.Namespace) -> tuple[int, dict]:
    inputs: dict = {}
    source = _load_graph(args.source, inputs)
    target = _load_graph(args.target, inputs)
    images = _parse_images(args.map)
    inputs["map"] = args.map
    try:
        verdict = fraisse.is_is_epi(images, source, target)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = {
        "command": "epi-check",
        "inputs": inputs,
        "verdict": verdict,
        "lines": [],
    }
    return (EXIT_TRUE if verdict else EXIT_FALSE), report


def _cmd_patterns(args: argparse.Namespace) -> tuple[int, dict]:
    if args.source < 1 or args.target < 1:
        raise InputError("pattern sizes must be positive")
    found = fraisse.enumerate_patterns(args.source, args.target)
    report = {
        "command": "patterns",
        "inputs": {"source": args.source, "target": args.target},
        "verdict": bool(found),
        "count": len(found),
        "patterns": [list(images) for images in found],
        "lines": [f"count: {len(found)}"] + [f"  {list(images)}" for images in found],
    }
    return (EXIT_TRUE if found else EXIT_FALSE), report


def _cmd_amalgamate(args: argparse.Namespace) -> tuple[int, dict]:
    f = _parse_images(args.f)
    g = _parse_images(args.g)
    try:
        found = fraisse.amalgamate(f, g, args.bound)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = {
        "command": "amalgamate",
        "inputs": {"f": args.f, "g": args.g, "bound": args.bound},
        "verdict": found is not None,
        "lines": [],
    }
    if found is not None:
        size, u, v = found
        report["result"] = {"size": size, "u": list(u), "v": list(v)}
        report["lines"] = [f"size: {size}", f"u: {list(u)}", f"v: {list(v)}"]
    return (EXIT_TRUE if found is not None else EXIT_FALSE), report


def _cmd_fraisse_build(args: argparse.Namespace) -> tuple[int, dict]:
    try:
        sequence = fraisse.build_fraisse_sequence(
            args.stages, args.bound, args.amalgamation_bound
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except fraisse.AmalgamationError as exc:
        report = {
            "command": "fraisse build",
            "inputs": {"stages": args.stages, "bound": args.bound},
            "verdict": False,
            "lines": [str(exc)],
        }
        return EXIT_FALSE, report
    document = sequence.to_json()
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8") as handle:
                handle.write(document + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from None
    discharged = sum(1 for entry in sequence.ledger if entry.discharged_at is not None)
    lines = [
        f"stage sizes: {list(sequence.stage_sizes)}",
        f"ledger: {discharged} discharged, {len(sequence.ledger) - discharged} queued",
    ]
    report = {
        "command": "fraisse build",
        "inputs": {"stages": args.stages, "bound": args.bound},
        "verdict": True,
        "stage_sizes": list(sequence.stage_sizes),
        "ledger_discharged": discharged,
        "ledger_total": len(sequence.ledger),
        "lines": lines,
    }
    if args.out is None:
        report["sequence"] = sequence.to_json_dict()
    return EXIT_TRUE, report


def _cmd_fraisse_audit(args: argparse.Namespace) -> tuple[int, dict]:
    inputs: dict = {}
    try:
        with open(args.sequence, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.sequence}: {exc}") from None
    inputs[args.sequence] = _digest(raw)
    try:
        sequence = fraisse.FraisseSequence.from_json_dict(json.loads(raw))
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{args.sequence}: invalid JSON at line {exc.lineno}, column {exc.colno}"
        ) from None
    except ValueError as exc:
        raise InputError(f"{args.sequence}: {exc}") from None
    try:
        audit = fraisse.extension_property_audit(sequence, args.stage, args.bound)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    lines = []
    for entry in audit.entries:
        if entry.discharged_at is None:
            lines.append(f"undischarged: {list(entry.epi)}")
        else:
            lines.append(
                f"discharged: {list(entry.epi)} at stage {entry.discharged_at} "
                f"via {list(entry.witness)}"
            )
    report = {
        "command": "fraisse audit",
        "inputs": {**inputs, "stage": args.stage, "bound": args.bound},
        "verdict": audit.all_discharged,
        "entries": len(audit.entries),
        "undischarged": len(audit.undischarged()),
        "lines": lines,
    }
    return (EXIT_TRUE if audit.all_discharged else EXIT_FALSE), report


def _cmd_gn(args: argparse.Namespace) -> tuple[int, dict]:
    if args.n < 0:
        raise InputError("n must be non-negative")
    graph = fraisse.example_gn(args.n)
    report = {
        "command": "gn",
        "inputs": {"n": args.n},
        "verdict": True,
        "graph": graph.to_json_dict(),
        "lines": [f"graph: {json.dumps(graph.to_json_dict(), sort_keys=True)}"],
    }
    if args.epi_to is not None:
        try:
            images = fraisse.example_gn_epi(args.epi_to, args.n)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        verdict = fraisse.is_is_epi(
            images, graph, fraisse.example_gn(args.epi_to)
        )
        report["epi"] = {"to": args.epi_to, "images": list(images), "is_epi": verdict}
        report["verdict"] = verdict
        report["lines"].append(
            f"epi to {args.epi_to}: {list(images)} (valid: {verdict})"
        )
        return (EXIT_TRUE if verdict else EXIT_FALSE), report
    return EXIT_TRUE, report


def _cmd_verify(args: argparse.Namespace) -> tuple[int, dict]:
    if args.list:
        lines = [
            f"{name}: {description}"
            for name, (_, description) in sorted(suites.REGISTRY.items())
        ]
        report = {
            "command": "verify",
            "inputs": {},
            "verdict": True,
            "suites": sorted(suites.REGISTRY),
            "lines": lines,
        }
        return EXIT_TRUE, report
    if args.suite is None:
        raise InputError("verify needs a suite name or --list")
    try:
        result = suites.run_suite(args.suite)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    lines = [result.render()]
    report = {
        "command": "verify",
        "inputs": {"suite": args.suite},
        "verdict": result.passed,
        "checked": result.checked,
        "violations": list(result.violations[:10]),
        "lines": lines,
    }
    return (EXIT_TRUE if result.passed else EXIT_FALSE), report


def _cmd_chain_report(args: argparse.Namespace) -> tuple[int, dict]:
    report_obj = fraisse.chain_type_report(
        args.max_stage, args.max_chain_length, tuple(args.depths), args.budget
    )
    report = {
        "command": "chain-report",
        "inputs": {
            "max_stage": args.max_stage,
            "max_chain_length": args.max_chain_length,
            "depths": list(args.depths),
            "budget": args.budget,
        },
        "verdict": True,
        "report": report_obj.to_json_dict(),
        "lines": report_obj.render().splitlines(),
    }
    return EXIT_TRUE, report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cologic",
        description="Model checking and refinement combinatorics for finite contact algebras.",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="report rendering (verdicts agree between the two)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    mc = commands.add_parser("mc", help="model-check a formula against a tuple")
    mc.add_argument("--model", required=True, help="graph JSON file")
    mc.add_argument("--tuple", help="good tuple as JSON lists (default: singleton)")
    mc.add_argument("--formula", required=True)
    mc.set_defaults(func=_cmd_mc)

    sat = commands.add_parser("sat-search", help="search for a smallest model")
    sat.add_argument("--formula", required=True)
    sat.add_argument("--max-vertices", type=int, default=5)
    sat.set_defaults(func=_cmd_sat_search)

    ef = commands.add_parser("ef", help="depth-bounded equivalence of two tuples")
    ef.add_argument("--model-a", required=True)
    ef.add_argument("--model-b", required=True)
    ef.add_argument("--tuple-a", help="default: singleton tuple")
    ef.add_argument("--tuple-b", help="default: singleton tuple")
    ef.add_argument("--depth", type=int, required=True)
    ef.set_defaults(func=_cmd_ef)

    tv = commands.add_parser("tv-check", help="generated-substructure check")
    tv.add_argument("--model", required=True)
    tv.add_argument("--blocks", required=True, help="atom partition as JSON lists")
    tv.add_argument("--bound", type=int, default=4)
    tv.set_defaults(func=_cmd_tv_check)

    epi = commands.add_parser("epi-check", help="Irwin-Solecki epimorphism check")
    epi.add_argument("--map", required=True, help="vertex images as a JSON list")
    epi.add_argument("--source", required=True, help="source graph JSON file")
    epi.add_argument("--target", required=True, help="target graph JSON file")
    epi.set_defaults(func=_cmd_epi_check)

    patterns = commands.add_parser("patterns", help="enumerate patterns m onto n")
    patterns.add_argument("source", type=int)
    patterns.add_argument("target", type=int)
    patterns.set_defaults(func=_cmd_patterns)

    amal = commands.add_parser("amalgamate", help="complete two patterns to a square")
    amal.add_argument("--f", required=True, help="first pattern as a JSON list")
    amal.add_argument("--g", required=True, help="second pattern as a JSON list")
    amal.add_argument("--bound", type=int, default=30)
    amal.set_defaults(func=_cmd_amalgamate)

    fr = commands.add_parser("fraisse", help="bounded limit sequences")
    fr_sub = fr.add_subparsers(dest="fraisse_command", required=True)
    build = fr_sub.add_parser("build", help="build stages, discharging obligations")
    build.add_argument("--stages", type=int, required=True)
    build.add_argument("--bound", type=int, default=3, help="obligation source size bound")
    build.add_argument("--amalgamation-bound", type=int, default=30)
    build.add_argument("--out", help="write the sequence JSON here")
    build.set_defaults(func=_cmd_fraisse_build)
    audit = fr_sub.add_parser("audit", help="audit the factorisation property")
    audit.add_argument("sequence", help="sequence JSON file")
    audit.add_argument("--stage", type=int, required=True)
    audit.add_argument("--bound", type=int, required=True)
    audit.set_defaults(func=_cmd_fraisse_audit)

    gn = commands.add_parser("gn", help="the strings-plus-star example family")
    gn.add_argument("n", type=int)
    gn.add_argument("--epi-to", type=int, help="also emit the truncation epi onto this member")
    gn.set_defaults(func=_cmd_gn)

    verify = commands.add_parser("verify", help="run an exhaustive verification suite")
    verify.add_argument("suite", nargs="?")
    verify.add_argument("--list", action="store_true", help="list registered suites")
    verify.set_defaults(func=_cmd_verify)

    chain = commands.add_parser(
        "chain-report", help="pairwise bounded-type equivalence of chains"
    )
    chain.add_argument("--max-stage", type=int, default=8)
    chain.add_argument("--max-chain-length", type=int, default=4)
    chain.add_argument("--depths", type=int, nargs="+", default=[0, 1, 2])
    chain.add_argument("--budget", type=int, default=2_000_000)
    chain.set_defaults(func=_cmd_chain_report)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    started = time.perf_counter()
    try:
        code, report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.format)
    elapsed = time.perf_counter() - started
    print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
