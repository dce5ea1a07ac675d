import random
from fractions import Fraction

import pytest
from conftest import element_set

from entroflow import battery as bt
from entroflow import modules as mc
from entroflow.entropy import (
    EntropyOptions,
    RingMap,
    entropy_at,
    entropy_lattice_side,
    entropy_of_endo,
    entropy_of_flow_preradical,
    entropy_of_module,
    entropy_of_preradical,
    fekete_detail,
    fekete_limit,
    phi_t_eval,
    restrict_scalars,
    ring_change_report,
    trajectory,
    trajectory_profile,
)
from entroflow.errors import (
    EmptyFamily,
    InfiniteNorm,
    NoStabilization,
    NotSubadditive,
    UnsupportedRingMap,
)
from entroflow.flows import E, Flow
from entroflow.invariants import LOG, RANK, invariant
from entroflow.lattice import window_top
from entroflow.modules import RingSpec, finite_module, shift_module, submodule
from entroflow.normvalue import NormValue
from entroflow.preradicals import Coproduct, Identity, Join, Meet, Product, PTorsion, Torsion, Zero, eval_preradical

ZERO = NormValue.zero()


def bernoulli(p, ring=mc.ZZ):
    s = shift_module(finite_module([p], ring))
    return s, mc.bernoulli_shift(s)


def shift_opts(*family):
    return EntropyOptions().with_family(family) if family else EntropyOptions()


# ---------------------------------------------------------------- invariants


def test_invariant_examples():
    assert invariant(LOG, finite_module([12])) == NormValue.log(2, 2) + NormValue.log(3)
    assert invariant(RANK, finite_module([5, 0, 0])) == NormValue.unit(2)
    empty = finite_module([])
    assert invariant(LOG, empty) == ZERO and invariant(RANK, empty) == ZERO
    assert invariant(LOG, finite_module([0])).infinite


@pytest.mark.parametrize("seed", range(4))
def test_invariant_axioms(seed):
    rng = random.Random(seed)
    for _ in range(10):
        m = bt.random_fg_module(rng)
        a = submodule(m, [[rng.randrange(d) if d else rng.randint(-2, 2) for d in m.factors]])
        b = submodule(m, [[rng.randrange(d) if d else rng.randint(-2, 2) for d in m.factors]])
        q, _ = mc.quotient(m, a)
        for tag in (LOG, RANK):
            assert invariant(tag, mc.sum_submodules(a, b)) <= invariant(tag, a) + invariant(tag, b)
            assert invariant(tag, q) <= invariant(tag, m)
            assert invariant(tag, mc.zero_submodule(m)) == ZERO
            sub_mod, _ = mc.submodule_as_module(a)
            assert invariant(tag, sub_mod) == invariant(tag, a)


# ---------------------------------------------------------------- trajectories and limits


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bernoulli_trajectory(p):
    s, beta = bernoulli(p)
    first = submodule(s, [[1]])
    assert trajectory(first, beta, 1) == first
    for n in range(1, 13):
        t = trajectory(first, beta, n)
        assert t == window_top(s, n)
        assert invariant(LOG, t) == NormValue.log(p, n)
    assert trajectory(first, mc.identity_morphism(s), 5) == first


@pytest.mark.parametrize("seed", range(4))
def test_trajectory_subadditive_and_monotone(seed):
    rng = random.Random(seed)
    for _ in range(5):
        f = bt.random_flow(rng)
        m = f.carrier
        base = window_top(m, 1) if m.is_shift else submodule(m, [[rng.randrange(d) for d in m.factors]])
        ts = [trajectory(base, f.endo, n) for n in range(1, 9)]
        for lo, hi in zip(ts, ts[1:]):
            assert mc.is_contained(lo, hi)
        norms = [invariant(LOG, t) for t in ts]
        for i in range(1, 5):
            for j in range(1, 9 - i):
                assert norms[i + j - 1] <= norms[i - 1] + norms[j - 1]


def test_fekete_examples():
    for p in (2, 3, 5):
        assert fekete_limit([NormValue.log(p, n) for n in range(1, 8)]) == NormValue.log(p)
    assert fekete_limit([NormValue.unit(3)] * 6) == ZERO
    assert fekete_limit([NormValue.log(2, min(n, 5)) for n in range(1, 10)]) == ZERO


def test_fekete_periodic_tail():
    values = [NormValue.log(2, c) for c in (1, 2, 2, 3, 3, 4, 4, 5, 5, 6)]
    res = fekete_detail(values)
    assert res.period == 2 and res.limit == NormValue.log(2, Fraction(1, 2))


def test_fekete_errors():
    with pytest.raises(NotSubadditive):
        fekete_limit([NormValue.unit(c) for c in (1, 3, 4, 5, 6, 7)])
    with pytest.raises(NoStabilization):
        fekete_limit([NormValue.unit(1)] * 3)
    concave = [NormValue.unit(Fraction(c)) for c in ("1", "1.5", "1.9", "2.2", "2.4", "2.5", "2.55")]
    with pytest.raises(NoStabilization):
        fekete_limit(concave)
    with pytest.raises(InfiniteNorm):
        fekete_limit([NormValue.inf()] * 6)


@pytest.mark.parametrize("seed", range(4))
def test_fekete_consistency_on_trajectories(seed):
    rng = random.Random(seed)
    for _ in range(8):
        f = bt.random_flow(rng, shift=True)
        prof = trajectory_profile(LOG, window_top(f.carrier, 1), f.endo)
        assert prof.verdict in ("Stabilized", "AffineSlope")
        if prof.fekete is not None:
            gaps = prof.fekete.gaps
            assert min(gaps) >= -1e-9
            assert abs(gaps[-1]) <= min(abs(g) for g in gaps) + 1e-12


# ---------------------------------------------------------------- entropies


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bernoulli_entropies(p):
    s, beta = bernoulli(p)
    first = submodule(s, [[1]])
    logp = NormValue.log(p)
    assert entropy_at(LOG, first, beta) == logp
    assert entropy_at(RANK, first, beta) == ZERO
    assert entropy_of_endo(LOG, Flow(s, beta)) == logp
    assert entropy_of_endo(LOG, E(s)) == ZERO
    family = bt.shift_family(s) + (mc.power(beta, 2),)
    assert entropy_of_module(LOG, s, shift_opts(*family)) == NormValue.log(p, 2)
    assert entropy_of_preradical(LOG, Torsion(), s, shift_opts(*bt.shift_family(s))) == logp
    assert entropy_of_preradical(RANK, Torsion(), s, shift_opts(*bt.shift_family(s))) == ZERO
    assert entropy_of_preradical(LOG, Zero(), s, shift_opts(*bt.shift_family(s))) == ZERO
    assert entropy_of_flow_preradical(LOG, Torsion(), Flow(s, beta)) == logp
    assert entropy_lattice_side(LOG, s, Torsion(), shift_opts(*bt.shift_family(s))) == logp
    assert entropy_lattice_side(LOG, s, Zero(), shift_opts(*bt.shift_family(s))) == ZERO


def test_family_required_for_infinite_modules():
    s, _ = bernoulli(2)
    with pytest.raises(EmptyFamily):
        entropy_of_module(LOG, s)
    with pytest.raises(EmptyFamily):
        entropy_of_module(LOG, s, shift_opts().with_family([]))
    with pytest.raises(InfiniteNorm):
        entropy_at(LOG, mc.whole(finite_module([0])), mc.identity_morphism(finite_module([0])))


@pytest.mark.parametrize("seed", range(4))
def test_finite_modules_have_zero_entropy(seed):
    rng = random.Random(seed)
    for _ in range(5):
        m = bt.random_finite_module(rng, 64)
        eta = bt.random_endo(rng, m)
        assert entropy_of_endo(LOG, (m, eta)) == ZERO
        assert entropy_at(LOG, submodule(m, [[1] * len(m.factors)]), eta) == ZERO
    z8 = finite_module([8])
    assert entropy_of_module(LOG, z8) == ZERO == entropy_lattice_side(LOG, z8)
    assert entropy_of_module(LOG, finite_module([])) == ZERO


def test_rank_entropy_of_torsion_is_zero():
    rng = random.Random(11)
    for _ in range(6):
        m = bt.random_fg_module(rng)
        opts = EntropyOptions(bound=1).with_family([bt.random_endo(rng, m), mc.identity_morphism(m)])
        assert entropy_of_preradical(RANK, Torsion(), m, opts) == ZERO
        assert entropy_of_flow_preradical(RANK, Identity(), E(m)) == ZERO


@pytest.mark.parametrize("seed", range(3))
def test_monotonicity_and_module_bound(seed):
    rng = random.Random(seed)
    for _ in range(6):
        m = bt.random_shift_module(rng)
        opts = shift_opts(*bt.shift_family(m))
        s, t = bt.random_expr(rng, 2), bt.random_expr(rng, 2)
        vs, vt = eval_preradical(s, m), eval_preradical(t, m)
        es = entropy_of_preradical(LOG, s, m, opts)
        if mc.is_contained(vs, vt):
            assert es <= entropy_of_preradical(LOG, t, m, opts)
        assert es <= entropy_of_module(LOG, m, opts)


@pytest.mark.parametrize("seed", range(3))
def test_four_operation_chain(seed):
    rng = random.Random(seed)
    for _ in range(5):
        f = bt.random_flow(rng, shift=True)
        opts = shift_opts(*bt.shift_family(f.carrier))
        s, t = bt.random_expr(rng, 1), bt.random_expr(rng, 1)
        vals = [entropy_of_preradical(LOG, op(s, t), f.carrier, opts) for op in (Product, Meet, Join, Coproduct)]
        flow_vals = [entropy_of_flow_preradical(LOG, op(s, t), f) for op in (Product, Meet, Join, Coproduct)]
        for seq in (vals, flow_vals):
            for lo, hi in zip(seq, seq[1:]):
                assert lo <= hi


@pytest.mark.parametrize("seed", range(3))
def test_lattice_side_matches_module_side(seed):
    rng = random.Random(seed)
    for _ in range(4):
        m = bt.random_finite_module(rng, 16, 2)
        e = bt.random_expr(rng, 1)
        opts = EntropyOptions(candidates="all")
        assert entropy_lattice_side(LOG, m, e, opts) == entropy_of_preradical(LOG, e, m, opts)
        s = bt.random_shift_module(rng)
        sopts = shift_opts(*bt.shift_family(s))
        assert entropy_lattice_side(LOG, s, e, sopts) == entropy_of_preradical(LOG, e, s, sopts)


# ---------------------------------------------------------------- change of rings


def test_restrict_scalars_examples():
    t6, t4 = RingMap.surjection(6), RingMap.surjection(4)
    z6 = finite_module([6], RingSpec.integers_mod(6))
    assert restrict_scalars(t6, z6) == finite_module([6])
    assert restrict_scalars(t6, finite_module([], RingSpec.integers_mod(6))) == finite_module([])
    assert restrict_scalars(t4, finite_module([2], RingSpec.integers_mod(4))) == finite_module([2])
    with pytest.raises(UnsupportedRingMap):
        restrict_scalars(RingMap(RingSpec.integers_mod(4), mc.ZZ), finite_module([2]))


def test_phi_t_examples():
    t = RingMap.surjection(6)
    z6 = finite_module([6], RingSpec.integers_mod(6))
    assert element_set(phi_t_eval(PTorsion(2), t, z6)) == {(0,), (3,)}
    assert phi_t_eval(Identity(), t, z6) == mc.whole(finite_module([6]))
    assert phi_t_eval(Zero(), t, z6) == mc.zero_submodule(finite_module([6]))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ring_change_examples(p):
    t = RingMap.surjection(p)
    s, beta = bernoulli(p, RingSpec.integers_mod(p))
    rep = ring_change_report(t, s, opts=shift_opts(beta))
    assert rep.holds and rep.lhs == rep.rhs == NormValue.log(p)
    fin = finite_module([p], RingSpec.integers_mod(p))
    rep = ring_change_report(t, fin)
    assert rep.holds and rep.lhs == rep.rhs == ZERO
    rep = ring_change_report(t, fin, Torsion())
    assert rep.holds and rep.lhs == ZERO
