"""Seeded verification suites; each returns a deterministic :class:`SuiteResult`.

Every suite checks one family of statements on a generated battery and
records each instance. Computational errors are recorded on the item and
the sweep continues. Verdicts are evidence on the battery only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import battery as bt
from . import modules as mc
from .entropy import (
    EntropyOptions,
    RingMap,
    entropy_lattice_side,
    entropy_of_flow_preradical,
    entropy_of_module,
    entropy_of_preradical,
    fekete_detail,
    ring_change_report,
    trajectory_profile,
)
from .errors import EntroflowError, TooLarge
from .flows import (
    Flow,
    alpha_flow,
    alpha_flow_brute_force,
    induce_flow_preradical,
    omega_flow,
    omega_flow_brute_force,
    project_flow_preradical,
)
from .invariants import LOG, RANK
from .lattice import window_top
from .modules import ModuleObject
from .normvalue import format_norm
from .preradicals import (
    BUILTINS,
    Coproduct,
    Identity,
    Join,
    Meet,
    Product,
    Torsion,
    alpha_brute_force,
    alpha_value,
    check_naturality,
    eval_preradical,
    omega_brute_force,
    omega_value,
)

TOLERANCE = 1e-9


@dataclass
class SuiteResult:
    name: str
    items: list[dict] = field(default_factory=list)

    @property
    def checked(self) -> int:
        return len(self.items)

    @property
    def violations(self) -> list[dict]:
        return [it for it in self.items if it.get("ok") is False]

    @property
    def errors(self) -> list[dict]:
        return [it for it in self.items if "error" in it]

    def add(self, case: str, fn: Callable[[], dict]):
        item = {"case": case}
        try:
            item.update(fn())
        except EntroflowError as exc:
            item["error"] = f"{type(exc).__name__}: {exc}"
        self.items.append(item)
        return item

    def summary(self) -> dict:
        return {
            "suite": self.name,
            "checked": self.checked,
            "violations": len(self.violations),
            "errors": len(self.errors),
        }


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _fmt(v) -> str:
    return format_norm(v)


def family_for(rng: random.Random, m: ModuleObject, limit: int = 1024) -> tuple | None:
    """``None`` (all of ``End(M)``) when small enough, else a sampled family."""
    if m.is_shift:
        return bt.shift_family(m) + (bt.random_shift_endo(rng, m),)
    if m.is_finite:
        orders = mc.hom_group_orders(m, m)
        size = 1
        for o in orders:
            size *= o
        if size <= limit:
            return None
    fam = [mc.zero_morphism(m, m), mc.identity_morphism(m)]
    fam += [bt.random_morphism(rng, m, m) for _ in range(6)]
    return tuple(fam)


def _module(rng: random.Random, shift: bool, max_order: int = 32) -> ModuleObject:
    return bt.random_shift_module(rng) if shift else bt.random_finite_module(rng, max_order, 2)


OPS = (("product", Product), ("meet", Meet), ("join", Join), ("coproduct", Coproduct))


# ---------------------------------------------------------------- suites


def suite_naturality(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "naturality")
    res = SuiteResult("naturality")
    exprs = list(BUILTINS) + bt.hom_builtins(rng, 2)
    exprs += [bt.random_expr(rng, 3, min_depth=1) for _ in range(size)]
    morphisms = bt.morphism_battery(rng, 2 * size)

    def run(e):
        rep = check_naturality(e, morphisms)
        out = {"squares": rep.checked, "ok": rep.passed}
        if rep.violations:
            v = rep.violations[0]
            out["witness"] = {"source": str(v.source), "target": str(v.target), "element": list(v.witness)}
        return out

    for e in exprs:
        res.add(str(e), lambda e=e: run(e))
    return res


def suite_order(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "order")
    res = SuiteResult("order")
    for i in range(size):
        m = _module(rng, shift=i % 2 == 0)
        s, r = bt.random_expr(rng), bt.random_expr(rng)
        a, b = eval_preradical(s, m), eval_preradical(r, m)
        if mc.is_contained(a, b):
            pair = (s, r)
        elif mc.is_contained(b, a):
            pair = (r, s)
        else:
            pair = (s, Join(s, r))
        tag = LOG if i % 4 != 3 else RANK
        opts = EntropyOptions(family=family_for(rng, m))

        def run(m=m, pair=pair, tag=tag, opts=opts):
            lo = entropy_of_preradical(tag, pair[0], m, opts)
            hi = entropy_of_preradical(tag, pair[1], m, opts)
            return {"tag": str(tag), "lhs": _fmt(lo), "rhs": _fmt(hi), "ok": lo <= hi}

        res.add(f"{pair[0]} <= {pair[1]} on {m}", run)
    return res


def _chain_ok(values) -> bool:
    return all(x <= y for x, y in zip(values, values[1:]))


def suite_chain(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "chain")
    res = SuiteResult("chain")
    for i in range(size):
        m = _module(rng, shift=i % 2 == 0)
        s, t = bt.random_expr(rng), bt.random_expr(rng)
        tag = LOG if i % 3 else RANK
        opts = EntropyOptions(family=family_for(rng, m))

        def run(m=m, s=s, t=t, tag=tag, opts=opts):
            subs = [eval_preradical(op(s, t), m) for _, op in OPS]
            vals = [entropy_of_preradical(tag, sub, m, opts) for sub in subs]
            nested = all(mc.is_contained(x, y) for x, y in zip(subs, subs[1:]))
            return {"kind": "module", "tag": str(tag), "values": [_fmt(v) for v in vals],
                    "ok": nested and _chain_ok(vals)}

        res.add(f"({s}, {t}) on {m}", run)
    for i in range(size):
        flow = bt.random_flow(rng)
        s, t = bt.random_expr(rng), bt.random_expr(rng)
        tag = LOG if i % 3 else RANK

        def run(flow=flow, s=s, t=t, tag=tag):
            vals = [entropy_of_flow_preradical(tag, op(s, t), flow) for _, op in OPS]
            return {"kind": "flow", "tag": str(tag), "values": [_fmt(v) for v in vals], "ok": _chain_ok(vals)}

        res.add(f"({s}, {t}) on ({flow.carrier}, {flow.endo})", run)
    return res


def suite_flow_roundtrip(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "flow-roundtrip")
    res = SuiteResult("flow-roundtrip")
    for i in range(size):
        shift = i % 3 == 0
        m = _module(rng, shift, 256)
        leaves = bt.LEAVES if shift else bt.LEAVES + tuple(bt.hom_builtins(rng, 1))
        e = bt.random_expr(rng, 2, leaves)

        def run(e=e, m=m):
            return {"kind": "roundtrip", "ok": project_flow_preradical(e, m) == eval_preradical(e, m)}

        res.add(f"U.{e}.E on {m}", run)
    for i in range(size // 2):
        flow = bt.random_flow(rng)
        s = bt.random_expr(rng)
        t = Join(s, bt.random_expr(rng))

        def run(flow=flow, s=s, t=t):
            lo, hi = induce_flow_preradical(s, flow), induce_flow_preradical(t, flow)
            return {"kind": "order", "ok": lo <= hi}

        res.add(f"{s} <= {t} on ({flow.carrier}, {flow.endo})", run)
    return res


def suite_lattice_equality(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "lattice-equality")
    res = SuiteResult("lattice-equality")

    def compare(label, module_side, lattice_side):
        a, b = module_side(), lattice_side()
        return {"kind": label, "module": _fmt(a), "lattice": _fmt(b), "ok": a == b}

    cases = []
    for i in range(size):
        m = bt.random_finite_module(rng, 32, 2)
        cases.append((m, LOG if i % 2 == 0 else RANK, i % 3))
    for p in (2, 3, 5):
        cases.append((mc.shift_module(mc.finite_module([p])), LOG, 1))
    for _ in range(max(size // 5, 1)):
        cases.append((bt.random_shift_module(rng), LOG, 2))
    for m, tag, kind in cases:
        fam = bt.shift_family(m) if m.is_shift else family_for(rng, m, 256)
        opts = EntropyOptions(family=fam)
        if kind == 0:
            res.add(f"ent(M) = ent(L(M)) for {m} [{tag}]", lambda m=m, tag=tag, opts=opts: compare(
                "module", lambda: entropy_of_module(tag, m, opts), lambda: entropy_lattice_side(tag, m, None, opts)))
        elif kind == 1:
            e = Torsion() if m.is_shift else bt.random_expr(rng)
            res.add(f"ent({e}) on {m} [{tag}]", lambda m=m, tag=tag, opts=opts, e=e: compare(
                "preradical", lambda: entropy_of_preradical(tag, e, m, opts),
                lambda: entropy_lattice_side(tag, m, e, opts)))
        else:
            s, t = bt.random_expr(rng), bt.random_expr(rng)
            for name, op in OPS:
                e = op(s, t)
                res.add(f"ent({e}) on {m} [{tag}]", lambda m=m, tag=tag, opts=opts, e=e, name=name: compare(
                    name, lambda: entropy_of_preradical(tag, e, m, opts),
                    lambda: entropy_lattice_side(tag, m, e, opts)))
    return res


def suite_ring_change(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "ring-change")
    res = SuiteResult("ring-change")
    for i in range(size):
        n = rng.randint(2, 12)
        t = RingMap.surjection(n)
        if i % 5 == 4:
            m = bt.random_shift_module(rng, ring=t.target)
            opts = EntropyOptions(family=(mc.bernoulli_shift(m),))
        else:
            m = bt.random_finite_module(rng, 64, 2, t.target)
            opts = EntropyOptions()
        e = bt.random_expr(rng) if i % 2 else None

        def run(t=t, m=m, e=e, opts=opts):
            rep = ring_change_report(t, m, e, opts)
            return {"lhs": _fmt(rep.lhs), "rhs": _fmt(rep.rhs), "ok": rep.holds}

        res.add(f"t: Z -> Z/{n}, M = {m}" + (f", sigma = {e}" if e else ""), run)
    return res


def suite_alpha_omega(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "alpha-omega")
    res = SuiteResult("alpha-omega")
    for i in range(size):
        m = bt.random_finite_module(rng, 32, 2)
        k = bt.random_finite_module(rng, 32, 2)
        n = mc.submodule(m, [[rng.randrange(d) for d in m.factors]])

        def run(m=m, k=k, n=n):
            ok = alpha_value(m, n, k) == alpha_brute_force(m, n, k)
            ok &= omega_value(m, n, k) == omega_brute_force(m, n, k)
            return {"kind": "plain", "ok": ok}

        res.add(f"alpha/omega({m}, {n}) at {k}", run)
        src = Flow(m, bt.random_endo(rng, m))
        n_flow = induce_flow_preradical(bt.random_expr(rng, 1), src).sub
        dst = Flow(k, bt.random_endo(rng, k))

        def run_flow(src=src, n=n_flow, dst=dst):
            ok = alpha_flow(src, n, dst).sub == alpha_flow_brute_force(src, n, dst)
            ok &= omega_flow(src, n, dst).sub == omega_flow_brute_force(src, n, dst)
            return {"kind": "equivariant", "ok": ok}

        res.add(f"equivariant alpha/omega from ({m}, {src.endo}) at ({k}, {dst.endo})", run_flow)
    return res


def suite_fekete(seed: int, size: int) -> SuiteResult:
    rng = _rng(seed, "fekete")
    res = SuiteResult("fekete")
    for i in range(size):
        flow = bt.random_flow(rng, shift=i % 4 != 3)
        tag = LOG if i % 2 == 0 else RANK
        if flow.carrier.is_shift:
            base = window_top(flow.carrier, rng.randint(1, 3))
        else:
            base = mc.whole(flow.carrier)

        def run(flow=flow, base=base, tag=tag):
            prof = trajectory_profile(tag, base, flow.endo)
            norms = prof.norms
            if prof.verdict == "Stabilized":
                norms = norms + [norms[-1]] * 5
            fk = fekete_detail(norms)
            tail = fk.gaps[fk.start - 1:]
            ok = min(fk.gaps) >= -TOLERANCE and fk.limit == prof.slope
            ok &= all(tail[-1] <= g + TOLERANCE for g in tail)
            return {"verdict": prof.verdict, "slope": _fmt(fk.limit), "last_gap": f"{fk.gaps[-1]:.3e}", "ok": ok}

        res.add(f"{tag} trajectory of {base} under {flow.endo} in {flow.carrier}", run)
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "naturality": suite_naturality,
    "order": suite_order,
    "chain": suite_chain,
    "flow-roundtrip": suite_flow_roundtrip,
    "lattice-equality": suite_lattice_equality,
    "ring-change": suite_ring_change,
    "alpha-omega": suite_alpha_omega,
    "fekete": suite_fekete,
}


def run_suite(name: str, seed: int, size: int) -> list[SuiteResult]:
    if name == "all":
        return [fn(seed, size) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](seed, size)]


__all__ = ["SuiteResult", "SUITES", "run_suite", "family_for", "TooLarge"]
