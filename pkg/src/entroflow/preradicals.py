"""Preradicals on R-Mod as evaluable expression trees.

Builtins are ``zero``, ``id``, ``tor``, ``ptor(p)``, ``alpha(M, N)`` and
``omega(M, N)``; they combine under meet ``&``, join ``|``, product ``.``
and coproduct ``:``. Evaluation is pointwise: :func:`eval_preradical`
returns the submodule a preradical picks out of one module.

Order checks (:func:`compare_preradicals`) and naturality checks
(:func:`check_naturality`) only ever see a finite battery of modules or
morphisms; their verdicts are evidence on that battery, not proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from sympy import isprime

from . import modules as mc
from .errors import BadPrime, MismatchedRing, ShiftUnsupported
from .modules import ModuleObject, Morphism, Submodule


class PreradicalExpr:
    """Base class of the expression tree. Subclasses are frozen dataclasses."""

    def __and__(self, other):
        return Meet(self, other)

    def __or__(self, other):
        return Join(self, other)

    def __mul__(self, other):
        return Product(self, other)

    def coproduct(self, other):
        return Coproduct(self, other)

    def __call__(self, m: ModuleObject) -> Submodule:
        return eval_preradical(self, m)

    def __str__(self):
        from .parser import format_preradical

        return format_preradical(self)


@dataclass(frozen=True)
class Zero(PreradicalExpr):
    pass


@dataclass(frozen=True)
class Identity(PreradicalExpr):
    pass


@dataclass(frozen=True)
class Torsion(PreradicalExpr):
    pass


@dataclass(frozen=True)
class PTorsion(PreradicalExpr):
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise BadPrime(f"{self.p} is not prime")


@dataclass(frozen=True)
class Alpha(PreradicalExpr):
    """``K -> sum { f(N) : f in Hom(M, K) }``."""

    module: ModuleObject
    sub: Submodule
    names: tuple[str, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.sub.parent != self.module:
            raise mc.MismatchedParent("alpha needs N <= M")


@dataclass(frozen=True)
class Omega(PreradicalExpr):
    """``K -> intersection { f^-1(N) : f in Hom(K, M) }``."""

    module: ModuleObject
    sub: Submodule
    names: tuple[str, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.sub.parent != self.module:
            raise mc.MismatchedParent("omega needs N <= M")


@dataclass(frozen=True)
class Meet(PreradicalExpr):
    left: PreradicalExpr
    right: PreradicalExpr


@dataclass(frozen=True)
class Join(PreradicalExpr):
    left: PreradicalExpr
    right: PreradicalExpr


@dataclass(frozen=True)
class Product(PreradicalExpr):
    """``(left . right)(M) = left(right(M))``."""

    left: PreradicalExpr
    right: PreradicalExpr


@dataclass(frozen=True)
class Coproduct(PreradicalExpr):
    """``(left : right)(M) / left(M) = right(M / left(M))``."""

    left: PreradicalExpr
    right: PreradicalExpr


BINARY = (Meet, Join, Product, Coproduct)
BUILTINS = (Zero(), Identity(), Torsion(), PTorsion(2), PTorsion(3), PTorsion(5))


def uses_hom_builtins(e: PreradicalExpr) -> bool:
    if isinstance(e, (Alpha, Omega)):
        return True
    if isinstance(e, BINARY):
        return uses_hom_builtins(e.left) or uses_hom_builtins(e.right)
    return False


# ---------------------------------------------------------------- evaluation


def torsion_submodule(m: ModuleObject) -> Submodule:
    if m.is_shift:
        return mc.whole(m)
    gens = [[int(i == j) for j in range(m.ngens)] for i, d in enumerate(m.factors) if d]
    return mc.submodule(m, gens)


def p_torsion_submodule(m: ModuleObject, p: int) -> Submodule:
    """``{x : p x = 0}``."""
    if m.is_shift:
        return mc.uniform_submodule(m, p_torsion_submodule(m.block, p))
    gens = []
    for i, d in enumerate(m.factors):
        if d and d % p == 0:
            gens.append([d // p if j == i else 0 for j in range(m.ngens)])
    return mc.submodule(m, gens)


def alpha_value(module: ModuleObject, sub: Submodule, k: ModuleObject) -> Submodule:
    out = mc.zero_submodule(k)
    for g in mc.hom_generators(module, k):
        out = mc.sum_submodules(out, mc.image_of(g, sub))
    return out


def omega_value(module: ModuleObject, sub: Submodule, k: ModuleObject) -> Submodule:
    out = mc.whole(k)
    for g in mc.hom_generators(k, module):
        out = mc.intersect_submodules(out, mc.preimage_of(g, sub))
    return out


def eval_preradical(e: PreradicalExpr, m: ModuleObject) -> Submodule:
    """The submodule ``e(m)``."""
    if m.is_shift:
        if uses_hom_builtins(e):
            raise ShiftUnsupported("alpha/omega cannot be evaluated on shift modules")
        # preradicals commute with direct sums, so act blockwise
        return mc.uniform_submodule(m, eval_preradical(e, m.block))
    if isinstance(e, Zero):
        return mc.zero_submodule(m)
    if isinstance(e, Identity):
        return mc.whole(m)
    if isinstance(e, Torsion):
        return torsion_submodule(m)
    if isinstance(e, PTorsion):
        return p_torsion_submodule(m, e.p)
    if isinstance(e, (Alpha, Omega)):
        if e.module.ring != m.ring:
            raise MismatchedRing(f"preradical over {e.module.ring}, module over {m.ring}")
        fn = alpha_value if isinstance(e, Alpha) else omega_value
        return fn(e.module, e.sub, m)
    if isinstance(e, Meet):
        return mc.intersect_submodules(eval_preradical(e.left, m), eval_preradical(e.right, m))
    if isinstance(e, Join):
        return mc.sum_submodules(eval_preradical(e.left, m), eval_preradical(e.right, m))
    if isinstance(e, Product):
        inner = eval_preradical(e.right, m)
        sub_mod, inclusion = mc.submodule_as_module(inner)
        return mc.image_of(inclusion, eval_preradical(e.left, sub_mod))
    if isinstance(e, Coproduct):
        first = eval_preradical(e.left, m)
        q, proj = mc.quotient(m, first)
        return mc.preimage_of(proj, eval_preradical(e.right, q))
    raise TypeError(f"not a preradical expression: {e!r}")


# ---------------------------------------------------------------- brute-force oracles


def alpha_brute_force(module, sub, k, cap=1 << 14) -> Submodule:
    out = mc.zero_submodule(k)
    for f in mc.all_homs(module, k, cap):
        out = mc.sum_submodules(out, mc.image_of(f, sub))
    return out


def omega_brute_force(module, sub, k, cap=1 << 14) -> Submodule:
    out = mc.whole(k)
    for f in mc.all_homs(k, module, cap):
        out = mc.intersect_submodules(out, mc.preimage_of(f, sub))
    return out


# ---------------------------------------------------------------- naturality and order


Assignment = Union[PreradicalExpr, Callable[[ModuleObject], Submodule]]


@dataclass
class Violation:
    morphism: Morphism
    source: ModuleObject
    target: ModuleObject
    witness: tuple[int, ...]


@dataclass
class NaturalityReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _evaluate(e: Assignment, m: ModuleObject) -> Submodule:
    if isinstance(e, PreradicalExpr):
        return eval_preradical(e, m)
    return e(m)


def check_naturality(e: Assignment, battery: Iterable[Morphism]) -> NaturalityReport:
    """Check ``f(e(M)) <= e(M')`` for every ``f: M -> M'`` in the battery."""
    report = NaturalityReport()
    cache: dict[ModuleObject, Submodule] = {}
    for f in battery:
        for m in (f.dom, f.cod):
            if m not in cache:
                cache[m] = _evaluate(e, m)
        src, dst = cache[f.dom], cache[f.cod]
        report.checked += 1
        for g in src.generators():
            img = mc.Element(f.cod, tuple(mc.linalg.apply(f.matrix, g)))
            if img not in dst:
                report.violations.append(Violation(f, f.dom, f.cod, tuple(g)))
                break
    return report


LE, GE, EQ, INCOMPARABLE = "LE", "GE", "EQ", "Incomparable"


@dataclass
class OrderVerdict:
    verdict: str
    checked: int
    witnesses: dict[str, ModuleObject] = field(default_factory=dict)


def compare_preradicals(a: Assignment, b: Assignment, battery: Sequence[ModuleObject]) -> OrderVerdict:
    """Order of two preradicals *on the given battery*."""
    le_witness = ge_witness = None
    for m in battery:
        x, y = _evaluate(a, m), _evaluate(b, m)
        if le_witness is None and not mc.is_contained(x, y):
            le_witness = m
        if ge_witness is None and not mc.is_contained(y, x):
            ge_witness = m
    witnesses = {}
    if le_witness is not None:
        witnesses["not_le"] = le_witness
    if ge_witness is not None:
        witnesses["not_ge"] = ge_witness
    if le_witness is None and ge_witness is None:
        verdict = EQ
    elif le_witness is None:
        verdict = LE
    elif ge_witness is None:
        verdict = GE
    else:
        verdict = INCOMPARABLE
    return OrderVerdict(verdict, len(battery), witnesses)
