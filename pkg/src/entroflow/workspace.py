"""JSON workspaces: named modules, submodules, morphisms, flows and preradicals.

The document is validated against ``workspace.schema.json`` and then
resolved section by section. Modules are given by canonical invariant
factors, so matrix and generator coordinates refer to those generators.
Every error names the offending entry as a dotted location such as
``morphisms.f``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import modules as mc
from .entropy import EntropyOptions
from .errors import EntroflowError
from .flows import Flow
from .modules import ModuleObject, Morphism, RingSpec, Submodule
from .parser import parse_preradical
from .preradicals import PreradicalExpr

SCHEMA_VERSION = 1


class WorkspaceError(EntroflowError):
    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class WorkspaceParseError(WorkspaceError):
    pass


class WorkspaceNameError(WorkspaceError, NameError):
    pass


class WorkspaceTypeError(WorkspaceError, TypeError):
    pass


def load_schema() -> dict:
    text = resources.files("entroflow").joinpath("workspace.schema.json").read_text()
    return json.loads(text)


def parse_ring(text: str) -> RingSpec:
    if text == "Z":
        return RingSpec(0)
    return RingSpec.integers_mod(int(text.split("/", 1)[1]))


@dataclass
class Workspace:
    ring: RingSpec = field(default_factory=RingSpec)
    modules: dict[str, ModuleObject] = field(default_factory=dict)
    submodules: dict[str, Submodule] = field(default_factory=dict)
    morphisms: dict[str, Morphism] = field(default_factory=dict)
    flows: dict[str, Flow] = field(default_factory=dict)
    preradicals: dict[str, PreradicalExpr] = field(default_factory=dict)
    families: dict[str, tuple[Morphism, ...]] = field(default_factory=dict)
    options: EntropyOptions = field(default_factory=EntropyOptions)

    def names(self) -> dict[str, Any]:
        return {**self.modules, **self.submodules}

    def expr(self, text: str) -> PreradicalExpr:
        """A named preradical, or an expression in the preradical grammar."""
        if text in self.preradicals:
            return self.preradicals[text]
        return parse_preradical(text, self.names())

    def lookup(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise WorkspaceNameError(f"unknown name {name!r}", section)
        return table[name]

    def morphism_name(self, f: Morphism) -> str:
        for name, g in self.morphisms.items():
            if g == f:
                return name
        return str(f)


def _need(table: dict, name: str, location: str, what: str):
    if name not in table:
        raise WorkspaceNameError(f"unknown {what} {name!r}", location)
    return table[name]


def build_workspace(doc: dict) -> Workspace:
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        loc = ".".join(str(p) for p in exc.absolute_path)
        raise WorkspaceParseError(exc.message, loc) from None
    ws = Workspace(ring=parse_ring(doc.get("ring", "Z")))
    for name, spec in doc.get("modules", {}).items():
        loc = f"modules.{name}"
        try:
            if isinstance(spec, list):
                spec = {"factors": spec}
            ring = parse_ring(spec["ring"]) if "ring" in spec else ws.ring
            if "shift" in spec:
                ws.modules[name] = mc.shift_module(ModuleObject(ring, tuple(spec["shift"])))
            else:
                ws.modules[name] = ModuleObject(ring, tuple(spec["factors"]))
        except (ValueError, EntroflowError) as exc:
            raise WorkspaceTypeError(str(exc), loc) from None
    for name, spec in doc.get("submodules", {}).items():
        loc = f"submodules.{name}"
        parent = _need(ws.modules, spec["module"], loc, "module")
        try:
            ws.submodules[name] = mc.submodule(parent, _in_canonical(parent, spec["generators"]))
        except (ValueError, EntroflowError) as exc:
            raise WorkspaceTypeError(str(exc), loc) from None
    for name, spec in doc.get("morphisms", {}).items():
        loc = f"morphisms.{name}"
        try:
            if "shift" in spec:
                m = _need(ws.modules, spec["module"], loc, "module")
                if not m.is_shift:
                    raise WorkspaceTypeError(f"{spec['module']!r} is not a shift module", loc)
                terms = [(t["offset"], t["block_matrix"]) for t in spec["shift"]]
                ws.morphisms[name] = mc.shift_morphism(m, terms)
            else:
                dom = _need(ws.modules, spec.get("dom", spec.get("module")), loc, "module")
                cod = _need(ws.modules, spec.get("cod", spec.get("module")), loc, "module")
                ws.morphisms[name] = mc.matrix_morphism(dom, cod, spec["matrix"])
        except (ValueError, EntroflowError) as exc:
            if isinstance(exc, WorkspaceError):
                raise
            raise WorkspaceTypeError(f"morphism {name!r}: {exc}", loc) from None
    for name, spec in doc.get("flows", {}).items():
        loc = f"flows.{name}"
        m = _need(ws.modules, spec["module"], loc, "module")
        f = _need(ws.morphisms, spec["endo"], loc, "morphism")
        try:
            ws.flows[name] = Flow(m, f)
        except EntroflowError as exc:
            raise WorkspaceTypeError(str(exc), loc) from None
    for name, names in doc.get("families", {}).items():
        loc = f"families.{name}"
        ws.families[name] = tuple(_need(ws.morphisms, n, loc, "morphism") for n in names)
    for name, text in doc.get("preradicals", {}).items():
        loc = f"preradicals.{name}"
        try:
            ws.preradicals[name] = parse_preradical(text, ws.names())
        except EntroflowError as exc:
            raise WorkspaceTypeError(str(exc), loc) from None
    ws.options = EntropyOptions(**doc.get("options", {}))
    return ws


def _in_canonical(parent: ModuleObject, gens):
    if parent.is_shift:
        return gens
    for g in gens:
        if len(g) != parent.ngens:
            raise WorkspaceTypeError(f"generator {g} has {len(g)} coordinates, {parent} has {parent.ngens}")
    return gens


def load_workspace(path: str | Path) -> Workspace:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise WorkspaceParseError(f"no such file {str(path)!r}") from None
    except json.JSONDecodeError as exc:
        raise WorkspaceParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return build_workspace(doc)
