"""Command-line front end.

Exit codes: 0 ok, 1 the computation ran and the answer is negative, 2 user
error (bad flags, unreadable files, parse failures), 3 internal error.
"""
from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bisim as bisim_mod
from .charform import DEFAULT_NODE_BUDGET, CharKey, FormulaDag, require_b
from .correspond import fo_text, translate
from .errors import NotDistinguishable, RMError
from .formula import degree, to_text, tree_size
from .frames import SystemClass, check_frame, generate_model
from .model import RMModel, load_model, satisfies
from .parser import FormulaSyntaxError, parse


class Status(enum.IntEnum):
    Ok = 0
    FailedCheck = 1
    UserError = 2
    InternalError = 3


@dataclass
class CommandResult:
    status: Status
    payload: dict = field(default_factory=dict)
    command: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _pair(text: str) -> tuple[str, str]:
    left, sep, right = text.partition(":")
    if not sep or not left or not right:
        raise argparse.ArgumentTypeError(f"expected w:v, got {text!r}")
    return left, right


def _props(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")

    ap = _Parser(prog="rmlogic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("check", parents=[common], help="model-check a formula at a world")
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--formula", required=True)

    p = sub.add_parser("frame", parents=[common], help="check B/R/RM frame conditions")
    p.add_argument("--model", required=True)
    p.add_argument("--system", required=True, choices=("B", "R", "RM"))

    p = sub.add_parser("bisim", parents=[common], help="greatest directed bisimulation")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--pair", type=_pair)
    p.add_argument("--trace")
    p.add_argument("--props", type=_props)

    p = sub.add_parser("distinguish", parents=[common], help="separating formula for two pointed models")
    p.add_argument("--left", required=True)
    p.add_argument("--left-world", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--right-world", required=True)
    p.add_argument("--props", type=_props)

    p = sub.add_parser("charform", parents=[common], help="characteristic formula of a pointed model")
    p.add_argument("--model", required=True)
    p.add_argument("--world", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--stage", type=int)
    p.add_argument("--emit", action="store_true")
    p.add_argument("--props", type=_props)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--max-size", type=int, default=200_000,
                   help="refuse --emit when the materialized tree has more nodes")

    p = sub.add_parser("translate", parents=[common], help="standard translation to first order")
    p.add_argument("--formula", required=True)
    p.add_argument("--var", default="x")

    p = sub.add_parser("gen", parents=[common], help="generate a random model")
    p.add_argument("--worlds", type=int, required=True)
    p.add_argument("--props", type=int, required=True)
    p.add_argument("--system", required=True, choices=("Raw", "B", "R", "RM"))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    return ap


def _formula(text: str):
    try:
        return parse(text)
    except FormulaSyntaxError as e:
        raise UsageError(f"formula: {e}") from None


def _load(path: str) -> RMModel:
    try:
        return load_model(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON: {e}") from None
    except RMError as e:
        raise UsageError(f"{path}: {e}") from None


def cmd_check(a) -> CommandResult:
    m = _load(a.model)
    holds = satisfies(m, a.world, _formula(a.formula))
    return CommandResult(Status.Ok if holds else Status.FailedCheck, {"holds": holds})


def cmd_frame(a) -> CommandResult:
    report = check_frame(_load(a.model), SystemClass(a.system))
    return CommandResult(Status.Ok if report.passed else Status.FailedCheck, report.to_json())


def cmd_bisim(a) -> CommandResult:
    m1, m2 = _load(a.left), _load(a.right)
    strat = bisim_mod.stratify(m1, m2, a.props)
    if a.trace:
        Path(a.trace).write_text(json.dumps(strat.to_json(), indent=2, sort_keys=True) + "\n")
    final = strat.final
    payload = {"alpha": strat.alpha, "props": list(strat.props), **final.to_json(m1, m2)}
    if a.pair is None:
        present = bool(final.Z1 and final.Z2)
        payload["bisimilar"] = present
        return CommandResult(Status.Ok if present else Status.FailedCheck, payload)
    x, y = a.pair
    if x not in m1.index:
        raise UsageError(f"unknown world {x!r} in {a.left}")
    if y not in m2.index:
        raise UsageError(f"unknown world {y!r} in {a.right}")
    related = strat.related(1, x, y)
    payload.update(pair=[x, y], related=related)
    if related:
        return CommandResult(Status.Ok, payload)
    f = bisim_mod.distinguishing_formula(strat, 1, x, y)
    payload["drop"] = strat.drops[(1, x, y)].to_json()
    payload["distinguishing"] = to_text(f)
    return CommandResult(Status.FailedCheck, payload)


def cmd_distinguish(a) -> CommandResult:
    m1, m2 = _load(a.left), _load(a.right)
    for m, w, path in ((m1, a.left_world, a.left), (m2, a.right_world, a.right)):
        if w not in m.index:
            raise UsageError(f"unknown world {w!r} in {path}")
    strat = bisim_mod.stratify(m1, m2, a.props)
    try:
        f = bisim_mod.distinguishing_formula(strat, 1, a.left_world, a.right_world)
    except NotDistinguishable:
        return CommandResult(Status.FailedCheck, {"distinguishable": False})
    rec = strat.drops[(1, a.left_world, a.right_world)]
    return CommandResult(Status.Ok, {
        "distinguishable": True,
        "formula": to_text(f),
        "degree": degree(f),
        "stage": rec.stage,
    })


def cmd_charform(a) -> CommandResult:
    mi, mj = _load(a.model), _load(a.target)
    if a.world not in mi.index:
        raise UsageError(f"unknown world {a.world!r} in {a.model}")
    if a.stage is not None and a.stage < 0:
        raise UsageError("--stage must be >= 0")
    dag = FormulaDag(mi, mj, a.props, a.max_nodes)
    payload = {}
    if a.stage is None:
        require_b(mi, mj)
        stage = dag.stabilization_stage()
        payload["stabilization_stage"] = stage
    else:
        stage = a.stage
    f = dag.formula(CharKey(1, a.world, stage))
    payload.update(
        stage=stage,
        dag_nodes=dag.nodes,
        degree=degree(f),
        target_satisfying=mj.sorted_worlds(dag.extension(f, 2)),
    )
    if a.emit:
        size = tree_size(f)
        if size > a.max_size:
            raise UsageError(f"formula has {size} nodes, above --max-size {a.max_size}")
        payload["formula"] = to_text(f)
    return CommandResult(Status.Ok, payload)


def cmd_translate(a) -> CommandResult:
    return CommandResult(Status.Ok, {"fo": fo_text(translate(_formula(a.formula), a.var))})


def cmd_gen(a) -> CommandResult:
    if a.worlds < 1 or a.props < 0:
        raise UsageError("need --worlds >= 1 and --props >= 0")
    m = generate_model(a.worlds, a.props, SystemClass(a.system), a.seed)
    doc = m.to_json()
    if a.out is None:
        return CommandResult(Status.Ok, doc)
    try:
        Path(a.out).write_text(json.dumps(doc, indent=2) + "\n")
    except OSError as e:
        raise UsageError(f"cannot write {a.out}: {e.strerror or e}") from None
    return CommandResult(Status.Ok, {"out": a.out, "system": a.system, "worlds": a.worlds})


COMMANDS = {
    "check": cmd_check,
    "frame": cmd_frame,
    "bisim": cmd_bisim,
    "distinguish": cmd_distinguish,
    "charform": cmd_charform,
    "translate": cmd_translate,
    "gen": cmd_gen,
}


def dispatch(argv: list[str]) -> tuple[CommandResult, str]:
    """Run one command; returns the result and the requested output format."""
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        result = COMMANDS[args.command](args)
        result.command = args.command
    except UsageError as e:
        result = CommandResult(Status.UserError, {"error": str(e)})
    except RMError as e:
        result = CommandResult(Status.UserError, {"error": str(e), "kind": type(e).__name__})
    except Exception as e:  # noqa: BLE001
        result = CommandResult(Status.InternalError, {"error": repr(e), "kind": type(e).__name__})
    return result, fmt


def _text_lines(result: CommandResult) -> list[str]:
    p = result.payload
    if "error" in p:
        return [f"ERROR: {p['error']}"]
    if result.command == "frame":
        if p["passed"]:
            return ["PASSED"]
        lines = []
        for v in p["violations"]:
            s = f"VIOLATION {v['condition']}: witness " + " ".join(f"{k}={w}" for k, w in v["witness"].items())
            if "prop" in v:
                s += f" (prop {v['prop']})"
            lines.append(s)
        return lines
    lines = []
    for key in sorted(p):
        val = p[key]
        if isinstance(val, list) and val and isinstance(val[0], list):
            val = " ".join("(" + ",".join(map(str, pair)) + ")" for pair in val)
        elif isinstance(val, (list, dict)):
            val = json.dumps(val, sort_keys=True)
        elif isinstance(val, bool):
            val = str(val).lower()
        lines.append(f"{key}: {val}")
    return lines


def report(result: CommandResult, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(result.payload, sort_keys=True, separators=(",", ":")) + "\n").encode()
    return ("\n".join(_text_lines(result)) + "\n").encode()


def main(argv: list[str] | None = None) -> int:
    result, fmt = dispatch(sys.argv[1:] if argv is None else argv)
    sys.stdout.buffer.write(report(result, fmt))
    sys.stdout.flush()
    return int(result.status)


if __name__ == "__main__":
    sys.exit(main())
