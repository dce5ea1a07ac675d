"""Trajectories, Fekete limits and every entropy quantity built on them.

``H_i(L, eta)`` is the limit of ``i(T_n)/n`` for the trajectory
``T_1 = L``, ``T_{n+1} = L + eta(T_n)``. The norm sequence is subadditive
and, for every object this package can represent, eventually affine along
some period, so the limit is read off exactly from the formal tail instead
of being extrapolated numerically.

Suprema over infinite families are replaced by explicit schedules: a
declared endomorphism family, and for shift modules the growing windows
``L_w`` (the first ``w`` blocks inside the preradical's value), whose
entropies must agree on the last few window sizes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import lattice as lat
from . import modules as mc
from .errors import (
    EmptyFamily,
    InfiniteNorm,
    MismatchedRing,
    NoStabilization,
    NotSubadditive,
    TooLarge,
    Undetermined,
    UnsupportedRingMap,
)
from .invariants import LOG, RANK, InvariantTag, invariant
from .modules import ZZ, ModuleObject, Morphism, RingSpec, Submodule
from .normvalue import NormValue, norm_max
from .preradicals import PreradicalExpr, eval_preradical, torsion_submodule

__all__ = [
    "InvariantTag",
    "LOG",
    "RANK",
    "invariant",
    "EntropyOptions",
    "trajectory",
    "trajectory_profile",
    "fekete_limit",
    "fekete_detail",
    "entropy_at",
    "entropy_of_endo",
    "entropy_of_module",
    "entropy_of_preradical",
    "entropy_of_flow_preradical",
    "entropy_lattice_side",
    "RingMap",
    "restrict_scalars",
    "phi_t_eval",
    "ring_change_report",
]

TOLERANCE = 1e-9


@dataclass(frozen=True)
class EntropyOptions:
    """Knobs for every entropy computation; all have conservative defaults.

    ``candidates`` is ``"cofinal"`` (use the largest element of ``F_i``
    below the preradical's value, which dominates every other candidate
    because ``H`` is monotone in ``L``) or ``"all"`` (enumerate ``F_i``).
    """

    terms: int = 6
    max_terms: int = 48
    tail: int = 3
    max_period: int = 2
    s_max: int = 4
    stable: int = 3
    candidates: str = "cofinal"
    family: tuple[Morphism, ...] | None = None
    max_window: int = int(os.environ.get("ENTROFLOW_MAX_WINDOW", "64"))
    end_cap: int = 1 << 12
    bound: int | None = None

    def with_family(self, family: Iterable[Morphism] | None) -> EntropyOptions:
        return replace(self, family=None if family is None else tuple(family))


DEFAULT = EntropyOptions()


# ---------------------------------------------------------------- trajectories


def trajectory(l_sub: Submodule, eta: Morphism, n: int, max_window: int | None = None) -> Submodule:
    """``T_n(L, eta) = L + eta(L) + ... + eta^{n-1}(L)``."""
    if n < 1:
        raise ValueError("trajectories start at n = 1")
    t = l_sub
    for _ in range(n - 1):
        t = mc.sum_submodules(l_sub, mc.image_of(eta, t, max_window))
    return t


@dataclass
class FeketeResult:
    limit: NormValue
    start: int
    period: int
    gaps: list[float]


def _check_subadditive(values: Sequence[NormValue]):
    n = len(values)
    for i in range(1, n + 1):
        for j in range(i, n + 1 - i):
            if values[i + j - 1] > values[i - 1] + values[j - 1]:
                raise NotSubadditive(f"a_{i + j} > a_{i} + a_{j}")


def fekete_detail(values: Sequence[NormValue], window: int = 3, max_period: int = 2) -> FeketeResult:
    """Exact limit of ``a_n / n`` for an eventually affine subadditive sequence.

    The tail is affine with period ``q`` when ``a_{k+q} - a_k`` is formally
    constant over the last ``window`` indices; the limit is that constant
    divided by ``q``. The result is cross-checked against ``a_k / k``.
    """
    values = list(values)
    if any(v.infinite for v in values):
        raise InfiniteNorm("trajectory norm is infinite")
    if len(values) < window + 2:
        raise NoStabilization(f"need at least {window + 2} terms, got {len(values)}")
    _check_subadditive(values)
    n = len(values)
    for q in range(1, max_period + 1):
        if n < window + q + 1:
            break
        diffs = [values[k + q] - values[k] for k in range(n - q - window, n - q)]
        if all(d == diffs[-1] for d in diffs):
            limit = diffs[-1] / q
            if limit.sign() < 0:
                raise NotSubadditive("decreasing tail")
            x = float(limit.numeric())
            gaps = [float((v / k).numeric()) - x for k, v in enumerate(values, start=1)]
            if min(gaps) < -TOLERANCE:
                continue
            return FeketeResult(limit if limit.sign() else NormValue.zero(), n - q - window + 1, q, gaps)
    raise NoStabilization("no affine tail within the supplied terms")


def fekete_limit(values: Sequence[NormValue], window: int = 3, max_period: int = 2) -> NormValue:
    return fekete_detail(values, window, max_period).limit


@dataclass
class TrajectoryProfile:
    base: Submodule
    endo: Morphism
    values: list[tuple[int, Submodule, NormValue]] = field(default_factory=list)
    verdict: str = "Undetermined"
    start: int | None = None
    slope: NormValue | None = None
    fekete: FeketeResult | None = None

    @property
    def norms(self) -> list[NormValue]:
        return [v for _, _, v in self.values]


def trajectory_profile(
    tag: InvariantTag | str, l_sub: Submodule, eta: Morphism, opts: EntropyOptions = DEFAULT
) -> TrajectoryProfile:
    """Compute ``T_n`` until it stabilizes or its norms show an affine tail."""
    tag = InvariantTag.parse(tag)
    base_norm = invariant(tag, l_sub)
    if base_norm.infinite:
        raise InfiniteNorm(f"i({l_sub}) is infinite")
    prof = TrajectoryProfile(l_sub, eta, [(1, l_sub, base_norm)])
    t = l_sub
    for n in range(2, opts.max_terms + 1):
        nxt = mc.sum_submodules(l_sub, mc.image_of(eta, t, opts.max_window))
        if nxt == t:
            prof.verdict, prof.start, prof.slope = "Stabilized", n - 1, NormValue.zero()
            return prof
        t = nxt
        prof.values.append((n, t, invariant(tag, t)))
        if n >= opts.terms:
            try:
                res = fekete_detail(prof.norms, opts.tail, opts.max_period)
            except NoStabilization:
                continue
            prof.verdict, prof.start, prof.slope, prof.fekete = "AffineSlope", res.start, res.limit, res
            return prof
    return prof


def entropy_at(
    tag: InvariantTag | str, l_sub: Submodule, eta: Morphism, opts: EntropyOptions = DEFAULT
) -> NormValue:
    """``H_i(L, eta)``."""
    prof = trajectory_profile(tag, l_sub, eta, opts)
    if prof.slope is None:
        raise NoStabilization(f"trajectory of {l_sub} did not settle in {opts.max_terms} terms")
    return prof.slope


# ---------------------------------------------------------------- candidates and suprema


def _cofinal(tag: InvariantTag, upper: Submodule) -> Submodule:
    """Largest finite-norm submodule of a finitely generated ``upper``."""
    if tag is RANK or mc.cardinality(upper) != float("inf"):
        return upper
    sub_mod, inclusion = mc.submodule_as_module(upper)
    return mc.image_of(inclusion, torsion_submodule(sub_mod))


def _all_candidates(tag: InvariantTag, upper: Submodule, opts: EntropyOptions) -> list[Submodule]:
    sub_mod, inclusion = mc.submodule_as_module(upper)
    sl = lat.normed_semilattice(sub_mod, tag, bound=opts.bound)
    return [mc.image_of(inclusion, n) for n in sl]


def _sup_over(tag, upper: Submodule, etas: Sequence[Morphism], opts: EntropyOptions) -> NormValue:
    m = upper.parent
    if not etas:
        raise EmptyFamily("no endomorphisms to take the supremum over")
    if m.is_shift and upper.is_uniform:
        best = NormValue.zero()
        for eta in etas:
            series = [
                entropy_at(tag, lat.window_top(m, w, upper), eta, opts)
                for w in range(1, opts.s_max + 1)
            ]
            tail = series[-opts.stable :]
            if len(tail) < opts.stable or any(v != tail[-1] for v in tail):
                raise Undetermined(f"window values {[str(v) for v in series]} did not stabilize")
            best = norm_max([best, tail[-1]])
        return best
    if m.is_shift or opts.candidates == "cofinal":
        cands = [_cofinal(tag, upper)]
    else:
        cands = _all_candidates(tag, upper, opts)
    return norm_max(entropy_at(tag, c, eta, opts) for eta in etas for c in cands)


def _endo_family(m: ModuleObject, opts: EntropyOptions) -> list[Morphism]:
    if opts.family is not None:
        fam = list(opts.family)
        if not fam:
            raise EmptyFamily("declared endomorphism family is empty")
        return fam
    if not m.is_finite:
        raise EmptyFamily(f"End({m}) is infinite; declare a family")
    return list(mc.all_homs(m, m, opts.end_cap))


def entropy_of_endo(tag: InvariantTag | str, flow, opts: EntropyOptions = DEFAULT) -> NormValue:
    """``ent_i(eta)`` for a flow ``(M, eta)`` (a :class:`Flow` or a pair)."""
    m, eta = _unpack_flow(flow)
    return _sup_over(InvariantTag.parse(tag), mc.whole(m), [eta], opts)


def entropy_of_module(tag: InvariantTag | str, m: ModuleObject, opts: EntropyOptions = DEFAULT) -> NormValue:
    """``ent_i(M)``; relative to ``opts.family`` when one is declared."""
    return _sup_over(InvariantTag.parse(tag), mc.whole(m), _endo_family(m, opts), opts)


def entropy_of_preradical(
    tag: InvariantTag | str,
    e: PreradicalExpr | Submodule,
    m: ModuleObject,
    opts: EntropyOptions = DEFAULT,
) -> NormValue:
    """``ent_i(sigma)|_M``; ``e`` may also be the already evaluated ``sigma(M)``."""
    upper = e if isinstance(e, Submodule) else eval_preradical(e, m)
    return _sup_over(InvariantTag.parse(tag), upper, _endo_family(m, opts), opts)


def entropy_of_flow_preradical(
    tag: InvariantTag | str, e: PreradicalExpr | Submodule, flow, opts: EntropyOptions = DEFAULT
) -> NormValue:
    """``ent_i(sigma-bar)`` at the flow ``(M, eta)``."""
    m, eta = _unpack_flow(flow)
    upper = e if isinstance(e, Submodule) else eval_preradical(e, m)
    return _sup_over(InvariantTag.parse(tag), upper, [eta], opts)


def _unpack_flow(flow) -> tuple[ModuleObject, Morphism]:
    if hasattr(flow, "carrier"):
        return flow.carrier, flow.endo
    m, eta = flow
    return m, eta


# ---------------------------------------------------------------- lattice side


def _lattice_walk(start, join, act, norm, opts: EntropyOptions) -> NormValue:
    """``H(N, X)`` from the semilattice operations alone."""
    t = start
    norms = [norm(t)]
    for _ in range(2, opts.max_terms + 1):
        nxt = join(start, act(t))
        if nxt == t:
            return NormValue.zero()
        t = nxt
        norms.append(norm(t))
        if len(norms) >= opts.terms:
            try:
                return fekete_limit(norms, opts.tail, opts.max_period)
            except NoStabilization:
                continue
    raise NoStabilization("lattice trajectory did not settle")


def entropy_lattice_side(
    tag: InvariantTag | str,
    m: ModuleObject,
    e: PreradicalExpr | None = None,
    opts: EntropyOptions = DEFAULT,
) -> NormValue:
    """``ent_i(sigma~)|_{L(M)}`` (``ent_i(L(M))`` when ``e`` is omitted).

    Finite-type modules walk every element of ``F_i(L(M))`` below
    ``sigma(M)`` using the join table and the index map of ``X_eta``. Shift
    modules use the top of each window semilattice below ``sigma(M)``.
    """
    tag = InvariantTag.parse(tag)
    upper = mc.whole(m) if e is None else eval_preradical(e, m)
    etas = _endo_family(m, opts)
    if m.is_shift:
        best = NormValue.zero()
        for eta in etas:
            xs = lat.lattice_morphism(eta, max_window=opts.max_window)
            series = []
            for w in range(1, opts.s_max + 1):
                sl = lat.normed_semilattice(m, tag, window=w)
                top = lat.window_top(m, w, upper)
                series.append(_lattice_walk(top, sl.join, xs, sl.norm, opts))
            tail = series[-opts.stable :]
            if any(v != tail[-1] for v in tail):
                raise Undetermined(f"window values {[str(v) for v in series]} did not stabilize")
            best = norm_max([best, tail[-1]])
        return best
    sl = lat.normed_semilattice(m, tag, bound=opts.bound)
    lattice = sl.lattice
    if lattice is None:
        lattice = lat.SubmoduleLattice(m, sl.elements)
    elif not m.is_finite:
        raise TooLarge("lattice-side entropy needs an exhaustive F_i")
    top = lattice.index[mc.intersect_submodules(upper, sl.top())]
    region = [i for i in range(len(lattice)) if lattice.le_index(i, top)]
    norms = {}

    def norm(i):
        if i not in norms:
            norms[i] = sl.norm(lattice[i])
        return norms[i]

    best = NormValue.zero()
    for eta in etas:
        xs = lat.lattice_morphism(eta, lattice, lattice)
        for i in region:
            best = norm_max([best, _lattice_walk(i, lattice.join_index, xs.apply_index, norm, opts)])
    return best


# ---------------------------------------------------------------- change of rings


@dataclass(frozen=True)
class RingMap:
    """A ring map ``t: source -> target``; only ``Z -> Z/n`` is supported."""

    source: RingSpec
    target: RingSpec

    @classmethod
    def surjection(cls, n: int) -> RingMap:
        return cls(ZZ, RingSpec.integers_mod(n))

    def check(self):
        if not (self.source.is_integers and not self.target.is_integers):
            raise UnsupportedRingMap(f"{self.source} -> {self.target} is not Z -> Z/n")


def restrict_scalars(t: RingMap, m: ModuleObject) -> ModuleObject:
    """``F_t(M)``: the same group with ``r . x = t(r) x``."""
    t.check()
    if m.ring != t.target:
        raise MismatchedRing(f"{m} is not a {t.target}-module")
    if m.is_shift:
        return mc.shift_module(restrict_scalars(t, m.block))
    return ModuleObject(t.source, m.factors)


def restrict_morphism(t: RingMap, f: Morphism) -> Morphism:
    dom, cod = restrict_scalars(t, f.dom), restrict_scalars(t, f.cod)
    if f.is_shift:
        return mc.shift_morphism(dom, [(s, restrict_morphism(t, phi)) for s, phi in f.terms])
    return Morphism(dom, cod, f.matrix)


def restrict_submodule(t: RingMap, n: Submodule) -> Submodule:
    parent = restrict_scalars(t, n.parent)
    if n.is_uniform:
        return mc.uniform_submodule(parent, restrict_submodule(t, n.uniform))
    return Submodule(parent, n.basis, n.window)


def phi_t_eval(e: PreradicalExpr, t: RingMap, m_s: ModuleObject) -> Submodule:
    """``phi_t(sigma)`` at ``F_t(M_S)``, i.e. ``sigma(M_S)`` viewed over ``Z``."""
    return restrict_submodule(t, eval_preradical(e, m_s))


@dataclass
class RingChangeReport:
    lhs: NormValue
    rhs: NormValue
    expr: PreradicalExpr | None

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def ring_change_report(
    t: RingMap,
    m_s: ModuleObject,
    e: PreradicalExpr | None = None,
    opts: EntropyOptions = DEFAULT,
    tag: InvariantTag | str = LOG,
) -> RingChangeReport:
    """Both sides of the ring-change inequality over ``S`` and over ``R``."""
    m_r = restrict_scalars(t, m_s)
    opts_r = opts
    if opts.family is not None:
        opts_r = opts.with_family(restrict_morphism(t, f) for f in opts.family)
    if e is None:
        lhs = entropy_of_module(tag, m_s, opts)
        rhs = entropy_of_module(tag, m_r, opts_r)
    else:
        lhs = entropy_of_preradical(tag, e, m_s, opts)
        rhs = entropy_of_preradical(tag, phi_t_eval(e, t, m_s), m_r, opts_r)
    return RingChangeReport(lhs, rhs, e)
