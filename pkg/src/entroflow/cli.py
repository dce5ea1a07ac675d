"""The ``entroflow`` command line.

Commands build a report dictionary; its body (everything but ``timing``)
is a deterministic function of the workspace, flags and seed. Exit codes:
0 success, 1 verification failure, 2 usage error, 3 computational error,
4 workspace error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import modules as mc
from .entropy import (
    entropy_lattice_side,
    entropy_of_endo,
    entropy_of_flow_preradical,
    entropy_of_module,
    entropy_of_preradical,
)
from .errors import EntroflowError
from .flows import Flow
from .invariants import InvariantTag, invariant
from .normvalue import format_norm, format_numeric
from .preradicals import eval_preradical
from .suites import SUITES, run_suite
from .workspace import SCHEMA_VERSION, Workspace, WorkspaceError, load_workspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE, EXIT_WORKSPACE = 0, 1, 2, 3, 4


def _value(v) -> dict:
    return {"formal": format_norm(v), "numeric": format_numeric(v)}


def _report(command: dict, results: list, verdict: str, provenance: dict | None = None) -> dict:
    out = {"schema": SCHEMA_VERSION, "command": command, "results": results, "verdict": verdict}
    if provenance:
        out["provenance"] = provenance
    return out


# ---------------------------------------------------------------- commands


def cmd_eval(ws: Workspace, expr: str, module: str) -> dict:
    m = ws.lookup("modules", module)
    e = ws.expr(expr)
    sub = eval_preradical(e, m)
    item = {
        "module": module,
        "expr": str(e),
        "submodule": str(sub),
        "generators": [list(g) for g in sub.generators()],
        "log": _value(invariant(InvariantTag.LOG, sub)),
    }
    if not m.is_shift:
        item["order"] = "inf" if mc.cardinality(sub) == float("inf") else mc.cardinality(sub)
        if m.is_finite:
            item["elements"] = [list(x.coords) for x in mc.elements(m) if x in sub]
    return _report({"name": "eval", "expr": expr, "module": module}, [item], "ok")


def cmd_entropy(ws: Workspace, target: str, args) -> dict:
    tag = InvariantTag.parse(args.tag)
    opts = ws.options
    if args.window is not None:
        opts = replace(opts, s_max=args.window)
    family_names = None
    if args.family:
        if args.family in ws.families:
            fam = ws.families[args.family]
            family_names = [ws.morphism_name(f) for f in fam]
        else:
            family_names = [n.strip() for n in args.family.split(",") if n.strip()]
            fam = tuple(ws.lookup("morphisms", n) for n in family_names)
        opts = opts.with_family(fam)
    expr = ws.expr(args.expr) if args.expr else None
    flow = ws.lookup("flows", args.flow) if args.flow else None
    module = ws.lookup("modules", args.module) if args.module else None
    if flow is None and args.endo:
        eta = ws.lookup("morphisms", args.endo)
        flow = Flow(eta.dom, eta)
    if module is None and flow is not None:
        module = flow.carrier

    def need(x, what):
        if x is None:
            raise EntroflowError(f"--target {target} needs {what}")
        return x

    item = {"target": target, "tag": str(tag)}
    if target == "endo":
        f = need(flow, "--flow or --endo")
        value = entropy_of_endo(tag, f, opts)
        item["endo"] = ws.morphism_name(f.endo)
    elif target == "module":
        value = entropy_of_module(tag, need(module, "--module"), opts)
    elif target == "preradical":
        value = entropy_of_preradical(tag, need(expr, "--expr"), need(module, "--module"), opts)
        item["expr"] = str(expr)
    elif target == "flow-preradical":
        f = need(flow, "--flow or --endo")
        value = entropy_of_flow_preradical(tag, need(expr, "--expr"), f, opts)
        item["expr"] = str(expr)
    elif target == "lattice":
        m = need(module, "--module")
        value = entropy_lattice_side(tag, m, expr, opts)
        side = entropy_of_module(tag, m, opts) if expr is None else entropy_of_preradical(tag, expr, m, opts)
        item["module_side"] = _value(side)
        item["equal"] = side == value
        if expr is not None:
            item["expr"] = str(expr)
    else:
        raise EntroflowError(f"unknown target {target!r}")
    if module is not None:
        item["module"] = str(module)
    item["value"] = _value(value)
    provenance = {"candidates": opts.candidates}
    if module is not None and module.is_shift:
        provenance["windows"] = f"1..{opts.s_max}"
        provenance["stable_last"] = opts.stable
    if family_names is not None:
        provenance["family"] = family_names
        provenance["relative_to"] = "declared family"
    verdict = "ok" if item.get("equal", True) else "fail"
    command = {"name": "entropy", "target": target, "tag": str(tag)}
    return _report(command, [item], verdict, provenance)


def cmd_verify(suite: str, seed: int, size: int) -> dict:
    results = []
    failed = errored = False
    for res in run_suite(suite, seed, size):
        summary = res.summary()
        summary["items"] = res.items
        failed |= bool(res.violations)
        errored |= bool(res.errors)
        results.append(summary)
    verdict = "fail" if failed else "error" if errored else "ok"
    command = {"name": "verify", "suite": suite, "seed": seed, "size": size}
    return _report(command, results, verdict, {"scope": "on battery"})


# ---------------------------------------------------------------- rendering


def report_body(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    cmd = report["command"]
    head = " ".join(f"{k}={v}" for k, v in cmd.items() if k != "name")
    lines = [f"entroflow {cmd['name']} {head}".rstrip()]
    if cmd["name"] == "verify":
        for res in report["results"]:
            lines.append(
                f"[{res['suite']}] checked {res['checked']}, "
                f"violations {res['violations']}, errors {res['errors']} (on battery)"
            )
            for it in res["items"]:
                mark = "ERROR" if "error" in it else ("ok" if it.get("ok") else "FAIL")
                extra = ""
                if "error" in it:
                    extra = f"  {it['error']}"
                elif "witness" in it:
                    extra = f"  witness {it['witness']}"
                lines.append(f"  {mark:5} {it['case']}{extra}")
    else:
        for it in report["results"]:
            for k, v in it.items():
                if isinstance(v, dict) and "formal" in v:
                    v = f"{v['formal']}  (~ {v['numeric']})"
                lines.append(f"  {k}: {v}")
    for k, v in report.get("provenance", {}).items():
        lines.append(f"  provenance.{k}: {v}")
    lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines)


def emit(report: dict, fmt: str, output: str | None, stream=None) -> None:
    stream = stream or sys.stdout
    text = render_json(report) if fmt == "json" else render_text(report)
    stream.write(text + "\n")
    if "timing" in report and fmt == "text":
        stream.write(f"timing: {report['timing']['seconds']:.3f} s\n")
    if output:
        Path(output).write_text(render_json(report) + "\n")


def _exit_code(report: dict) -> int:
    return {"ok": EXIT_OK, "fail": EXIT_FAIL, "error": EXIT_COMPUTE}[report["verdict"]]


# ---------------------------------------------------------------- argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entroflow", description="Exact preradical and entropy workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workspace_required=True):
        sp.add_argument("-w", "--workspace", required=workspace_required, help="workspace JSON file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("-o", "--output", help="also write the JSON report here")

    sp = sub.add_parser("eval", help="evaluate a preradical on a module")
    common(sp)
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("-m", "--module", required=True)

    sp = sub.add_parser("entropy", help="compute an entropy")
    common(sp)
    sp.add_argument("--target", required=True,
                    choices=("endo", "module", "preradical", "flow-preradical", "lattice"))
    sp.add_argument("--tag", default="log", choices=("log", "rank"))
    sp.add_argument("--flow")
    sp.add_argument("--endo")
    sp.add_argument("-m", "--module")
    sp.add_argument("-e", "--expr")
    sp.add_argument("--family", help="family name or comma-separated morphism names")
    sp.add_argument("--window", type=int, help="largest window size for shift modules")

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, workspace_required=False)
    sp.add_argument("--suite", required=True, choices=tuple(SUITES) + ("all",))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=20)

    sp = sub.add_parser("report", help="re-render a saved JSON report")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("-i", "--input", help="report file (default: stdin)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "report":
            text = Path(args.input).read_text() if args.input else sys.stdin.read()
            report = json.loads(text)
            emit(report, args.format, None)
            return EXIT_OK
        ws = load_workspace(args.workspace) if getattr(args, "workspace", None) else Workspace()
        if args.command == "eval":
            report = cmd_eval(ws, args.expr, args.module)
        elif args.command == "entropy":
            report = cmd_entropy(ws, args.target, args)
        else:
            report = cmd_verify(args.suite, args.seed, args.size)
    except WorkspaceError as exc:
        print(f"entroflow: workspace error: {exc}", file=sys.stderr)
        return EXIT_WORKSPACE
    except EntroflowError as exc:
        print(f"entroflow: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    emit(report, args.format, args.output)
    return _exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
