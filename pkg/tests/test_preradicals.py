import random

import pytest
from conftest import brute_homs, closure, element_set

from entroflow import battery as bt
from entroflow import modules as mc
from entroflow.errors import BadPrime, MismatchedParent, ShiftUnsupported
from entroflow.preradicals import (
    BUILTINS,
    EQ,
    GE,
    INCOMPARABLE,
    LE,
    Alpha,
    Coproduct,
    Identity,
    Join,
    Meet,
    Omega,
    Product,
    PTorsion,
    Torsion,
    Zero,
    alpha_brute_force,
    check_naturality,
    compare_preradicals,
    eval_preradical,
    omega_brute_force,
)
from entroflow.modules import finite_module, shift_module, submodule


def apply(matrix, m, k, x):
    return tuple(sum(row[j] * x[j] for j in range(m.ngens)) % e for row, e in zip(matrix, k.factors))


def test_eval_examples():
    z9 = finite_module([9])
    assert element_set(eval_preradical(PTorsion(3), z9)) == {(0,), (3,), (6,)}
    m = finite_module([4, 0])
    assert eval_preradical(Torsion(), m) == submodule(m, [[1, 0]])
    z2, z4 = finite_module([2]), finite_module([4])
    assert element_set(eval_preradical(Alpha(z2, mc.whole(z2)), z4)) == {(0,), (2,)}
    for p in (2, 3, 5):
        zp, zpp = finite_module([p]), finite_module([p * p])
        assert eval_preradical(Omega(zp, mc.zero_submodule(zp)), zpp) == submodule(zpp, [[p]])
        assert eval_preradical(Coproduct(PTorsion(p), PTorsion(p)), zpp) == mc.whole(zpp)
    assert eval_preradical(Zero(), z9) == mc.zero_submodule(z9)
    assert eval_preradical(Identity(), z9) == mc.whole(z9)


def test_eval_errors():
    with pytest.raises(BadPrime):
        PTorsion(4)
    z2, z4 = finite_module([2]), finite_module([4])
    with pytest.raises(MismatchedParent):
        Alpha(z2, mc.whole(z4))
    s = shift_module(z2)
    with pytest.raises(ShiftUnsupported):
        eval_preradical(Alpha(z2, mc.whole(z2)), s)
    assert eval_preradical(Torsion() & PTorsion(2), s) == mc.uniform_submodule(s, mc.whole(z2))


@pytest.mark.parametrize("seed", range(4))
def test_builtins_match_element_definitions(seed):
    rng = random.Random(seed)
    for _ in range(8):
        m = bt.random_finite_module(rng, 64)
        elems = [x.coords for x in mc.elements(m)]
        for p in (2, 3, 5):
            want = {x for x in elems if all((p * c) % d == 0 for c, d in zip(x, m.factors))}
            assert element_set(eval_preradical(PTorsion(p), m)) == want
        assert eval_preradical(Torsion(), m) == mc.whole(m)


@pytest.mark.parametrize("seed", range(4))
def test_operations_match_element_semantics(seed):
    rng = random.Random(seed)
    for _ in range(6):
        m = bt.random_finite_module(rng, 64, 2)
        s, t = bt.random_expr(rng, 1), bt.random_expr(rng, 1)
        a, b = element_set(eval_preradical(s, m)), element_set(eval_preradical(t, m))
        assert element_set(eval_preradical(Meet(s, t), m)) == a & b
        assert element_set(eval_preradical(Join(s, t), m)) == closure(m, list(a | b))
        assert element_set(eval_preradical(Meet(s, s), m)) == a
        assert element_set(eval_preradical(Join(s, s), m)) == a


@pytest.mark.parametrize("seed", range(4))
def test_chain(seed):
    rng = random.Random(seed)
    for _ in range(10):
        m = bt.random_fg_module(rng, 64)
        s, t = bt.random_expr(rng, 2), bt.random_expr(rng, 2)
        chain = [eval_preradical(op(s, t), m) for op in (Product, Meet, Join, Coproduct)]
        for lo, hi in zip(chain, chain[1:]):
            assert mc.is_contained(lo, hi)


def test_naturality_examples():
    rng = random.Random(5)
    battery = bt.morphism_battery(rng, 60)
    for e in BUILTINS:
        assert check_naturality(e, battery).passed
    report = check_naturality(Torsion(), battery)
    assert report.checked == 60


def test_non_natural_assignment_is_caught():
    z4 = finite_module([4])
    z2 = finite_module([2])
    special = submodule(z4, [[2]])

    def bad(m):
        return special if m == z4 else mc.zero_submodule(m)

    auto = mc.matrix_morphism(z2, z4, [[2]])
    report = check_naturality(bad, [mc.identity_morphism(z4), auto])
    assert report.passed
    z8 = finite_module([8])
    report = check_naturality(bad, [mc.matrix_morphism(z4, z8, [[2]])])
    assert not report.passed
    v = report.violations[0]
    assert v.source == z4 and v.target == z8 and v.witness == (2,)


@pytest.mark.parametrize("seed", range(3))
def test_closures_are_natural(seed):
    rng = random.Random(seed)
    battery = bt.morphism_battery(rng, 40, 128)
    for _ in range(6):
        assert check_naturality(bt.random_expr(rng, 2), battery).passed


def test_compare_examples():
    rng = random.Random(2)
    battery = [bt.random_fg_module(rng) for _ in range(15)]
    for p in (2, 3, 5):
        assert compare_preradicals(PTorsion(p), Torsion(), battery).verdict == LE
        assert compare_preradicals(Torsion(), PTorsion(p), battery).verdict == GE
    for e in BUILTINS:
        assert compare_preradicals(Zero(), e, battery).verdict in (LE, EQ)
    s, t = PTorsion(2), Torsion() & PTorsion(3)
    assert compare_preradicals(Product(s, t), Coproduct(s, t), battery).verdict in (LE, EQ)
    v = compare_preradicals(PTorsion(2), PTorsion(3), battery)
    assert v.verdict == INCOMPARABLE
    assert {"not_le", "not_ge"} <= set(v.witnesses)
    assert compare_preradicals(Torsion(), Torsion(), battery).verdict == EQ


@pytest.mark.parametrize("seed", range(4))
def test_alpha_omega_bounds_and_oracle(seed):
    rng = random.Random(seed)
    for _ in range(5):
        m = bt.random_finite_module(rng, 16, 2)
        k = bt.random_finite_module(rng, 32, 2)
        n = submodule(m, [[rng.randrange(d) for d in m.factors]])
        a, o = Alpha(m, n), Omega(m, n)
        assert mc.is_contained(n, eval_preradical(a, m))
        assert mc.is_contained(eval_preradical(o, m), n)
        ns = element_set(n)
        want_a = set()
        for h in brute_homs(m, k):
            want_a |= {apply(h, m, k, x) for x in ns}
        assert element_set(eval_preradical(a, k)) == closure(k, list(want_a))
        want_o = {x.coords for x in mc.elements(k)}
        for h in brute_homs(k, m):
            want_o = {x for x in want_o if apply(h, k, m, x) in ns}
        assert element_set(eval_preradical(o, k)) == want_o
        assert eval_preradical(a, k) == alpha_brute_force(m, n, k)
        assert eval_preradical(o, k) == omega_brute_force(m, n, k)
