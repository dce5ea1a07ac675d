"""Surface syntax for preradical expressions.

Grammar, loosest to tightest binding, all binary operators left associative::

    expr    := coprod
    coprod  := join { ":" join }
    join    := meet { "|" meet }
    meet    := prod { "&" prod }
    prod    := atom { "." atom }
    atom    := "zero" | "id" | "tor" | "ptor" "(" prime ")"
             | "alpha" "(" name "," name ")" | "omega" "(" name "," name ")"
             | "(" expr ")"

``alpha``/``omega`` arguments are a module name and a submodule name that
resolve against a name table (normally the workspace).
"""

from __future__ import annotations

import re
from typing import Mapping

from .errors import PreradicalSyntaxError, UnknownName
from .modules import ModuleObject, Submodule
from .preradicals import (
    Alpha,
    Coproduct,
    Identity,
    Join,
    Meet,
    Omega,
    PreradicalExpr,
    Product,
    PTorsion,
    Torsion,
    Zero,
)

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[().,&|:]))")

_BINARY = [(":", Coproduct), ("|", Join), ("&", Meet), (".", Product)]
_SYMBOL = {cls: sym for sym, cls in _BINARY}
_LEVEL = {cls: i for i, (_, cls) in enumerate(_BINARY)}
_ATOM_LEVEL = len(_BINARY)
_KEYWORDS = {"zero": Zero, "id": Identity, "tor": Torsion}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise PreradicalSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, names: Mapping[str, object]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str | None = None, value: str | None = None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = repr(value) if value else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PreradicalSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> PreradicalExpr:
        e = self.level(0)
        self.take("end")
        return e

    def level(self, k: int) -> PreradicalExpr:
        if k == _ATOM_LEVEL:
            return self.atom()
        sym, cls = _BINARY[k]
        left = self.level(k + 1)
        while self.peek()[:2] == ("op", sym):
            self.i += 1
            left = cls(left, self.level(k + 1))
        return left

    def atom(self) -> PreradicalExpr:
        kind, value, pos = self.peek()
        if (kind, value) == ("op", "("):
            self.i += 1
            e = self.level(0)
            self.take("op", ")")
            return e
        if kind != "name":
            got = "end of input" if kind == "end" else repr(value)
            raise PreradicalSyntaxError(f"expected a preradical, found {got}", pos)
        self.i += 1
        if value in _KEYWORDS:
            return _KEYWORDS[value]()
        if value == "ptor":
            self.take("op", "(")
            p = int(self.take("num")[1])
            self.take("op", ")")
            return PTorsion(p)
        if value in ("alpha", "omega"):
            self.take("op", "(")
            m_name, m_pos = self.take("name")[1:]
            self.take("op", ",")
            n_name, n_pos = self.take("name")[1:]
            self.take("op", ")")
            m = self.resolve(m_name, m_pos, ModuleObject, "module")
            n = self.resolve(n_name, n_pos, Submodule, "submodule")
            cls = Alpha if value == "alpha" else Omega
            return cls(m, n, (m_name, n_name))
        raise PreradicalSyntaxError(f"unknown preradical {value!r}", pos)

    def resolve(self, name, pos, kind, label):
        obj = self.names.get(name)
        if not isinstance(obj, kind):
            raise UnknownName(f"{name!r} at position {pos} is not a known {label}")
        return obj


def parse_preradical(text: str, names: Mapping[str, object] | None = None) -> PreradicalExpr:
    return _Parser(text, names or {}).parse()


def format_preradical(e: PreradicalExpr) -> str:
    """Render with the fewest parentheses that parse back to the same tree."""
    if isinstance(e, Zero):
        return "zero"
    if isinstance(e, Identity):
        return "id"
    if isinstance(e, Torsion):
        return "tor"
    if isinstance(e, PTorsion):
        return f"ptor({e.p})"
    if isinstance(e, (Alpha, Omega)):
        head = "alpha" if isinstance(e, Alpha) else "omega"
        m_name, n_name = e.names or ("?", "?")
        return f"{head}({m_name}, {n_name})"
    level = _LEVEL[type(e)]
    left = format_preradical(e.left)
    right = format_preradical(e.right)
    if _level_of(e.left) < level:
        left = f"({left})"
    if _level_of(e.right) <= level:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(e)]} {right}"


def _level_of(e: PreradicalExpr) -> int:
    return _LEVEL.get(type(e), _ATOM_LEVEL)
