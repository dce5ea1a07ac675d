"""Flows ``(M, eta)``, their morphisms and subobjects, and induced preradicals.

Subobjects are always stored by their canonical representative: the image
submodule of the carrier together with the restricted endomorphism. The
functors are ``E(M) = (M, id)`` and ``U(M, eta) = M``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import modules as mc
from .errors import MismatchedParent, NotAFlowMorphism, NotMono, ShiftUnsupported
from .modules import ModuleObject, Morphism, Submodule
from .preradicals import PreradicalExpr, eval_preradical


@dataclass(frozen=True)
class Flow:
    carrier: ModuleObject
    endo: Morphism

    def __post_init__(self):
        if self.endo.dom != self.carrier or self.endo.cod != self.carrier:
            raise MismatchedParent("a flow needs an endomorphism of its carrier")


@dataclass(frozen=True)
class SubFlow:
    """``(sub, endo|_sub)`` inside ``flow``; ``restricted`` is ``None`` for shift carriers."""

    flow: Flow
    sub: Submodule
    restricted: Morphism | None

    @property
    def carrier(self) -> ModuleObject:
        return self.sub.parent

    def __le__(self, other: SubFlow) -> bool:
        return self.flow == other.flow and mc.is_contained(self.sub, other.sub)


def E(m: ModuleObject) -> Flow:
    return Flow(m, mc.identity_morphism(m))


def U(x: Flow | SubFlow):
    return x.sub if isinstance(x, SubFlow) else x.carrier


def is_stable(eta: Morphism, sub: Submodule) -> bool:
    """``eta(sub) <= sub``."""
    if sub.is_uniform:
        return all(mc.is_contained(mc.image_of(phi, sub.uniform), sub.uniform) for _, phi in eta.terms)
    return mc.is_contained(mc.image_of(eta, sub), sub)


def subflow(x: Flow, sub: Submodule) -> SubFlow:
    if sub.parent != x.carrier:
        raise MismatchedParent("submodule is not inside the flow's carrier")
    if not is_stable(x.endo, sub):
        raise MismatchedParent("submodule is not stable under the endomorphism")
    restricted = None if x.carrier.is_shift else mc.restrict_endomorphism(x.endo, sub)
    return SubFlow(x, sub, restricted)


def is_flow_morphism(f: Morphism, a: Flow, b: Flow) -> bool:
    """``f o eta_a == eta_b o f``."""
    if f.dom != a.carrier or f.cod != b.carrier:
        raise MismatchedParent("morphism does not run between the flow carriers")
    return mc.morphisms_equal(mc.compose(f, a.endo), mc.compose(b.endo, f))


def is_flow_mono(f: Morphism, a: Flow, b: Flow) -> bool:
    """Mono in the flow category whenever ``f`` is injective (sufficient direction only)."""
    if not is_flow_morphism(f, a, b):
        raise NotAFlowMorphism("f does not commute with the endomorphisms")
    if f.is_shift:
        raise ShiftUnsupported("injectivity of shift sums is not decided here")
    return mc.kernel(f) == mc.zero_submodule(f.dom)


def canonical_subflow(f: Morphism, a: Flow, b: Flow) -> SubFlow:
    """The representative ``(f(A), eta_b|)`` of the subobject given by ``f``."""
    if not is_flow_mono(f, a, b):
        raise NotMono("f is not injective")
    return subflow(b, mc.image(f))


def induce_flow_preradical(e: PreradicalExpr, x: Flow) -> SubFlow:
    """``sigma-bar(M, eta) = (sigma(M), eta|)``; stability follows from naturality."""
    return subflow(x, eval_preradical(e, x.carrier))


def _as_sub(n: SubFlow | Submodule) -> Submodule:
    return n.sub if isinstance(n, SubFlow) else n


def alpha_flow(source: Flow, n: SubFlow | Submodule, target: Flow) -> SubFlow:
    """Sum of ``f(N)`` over flow morphisms ``source -> target``."""
    n = _as_sub(n)
    out = mc.zero_submodule(target.carrier)
    for g in mc.flow_hom_generators((source.carrier, source.endo), (target.carrier, target.endo)):
        out = mc.sum_submodules(out, mc.image_of(g, n))
    return subflow(target, out)


def omega_flow(source: Flow, n: SubFlow | Submodule, target: Flow) -> SubFlow:
    """Intersection of ``f^-1(N)`` over flow morphisms ``target -> source``."""
    n = _as_sub(n)
    out = mc.whole(target.carrier)
    for g in mc.flow_hom_generators((target.carrier, target.endo), (source.carrier, source.endo)):
        out = mc.intersect_submodules(out, mc.preimage_of(g, n))
    return subflow(target, out)


def alpha_flow_brute_force(source: Flow, n, target: Flow, cap: int = 1 << 14) -> Submodule:
    n = _as_sub(n)
    out = mc.zero_submodule(target.carrier)
    for f in mc.equivariant_homs((source.carrier, source.endo), (target.carrier, target.endo), cap):
        out = mc.sum_submodules(out, mc.image_of(f, n))
    return out


def omega_flow_brute_force(source: Flow, n, target: Flow, cap: int = 1 << 14) -> Submodule:
    n = _as_sub(n)
    out = mc.whole(target.carrier)
    for f in mc.equivariant_homs((target.carrier, target.endo), (source.carrier, source.endo), cap):
        out = mc.intersect_submodules(out, mc.preimage_of(f, n))
    return out


def project_flow_preradical(e: PreradicalExpr, m: ModuleObject) -> Submodule:
    """``(U o sigma-bar o E)(M)``."""
    return U(induce_flow_preradical(e, E(m)))
