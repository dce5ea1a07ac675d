import random

import pytest
from conftest import all_subgroups, element_set

from entroflow import battery as bt
from entroflow import modules as mc
from entroflow.errors import ShiftUnsupported, TooLarge
from entroflow.invariants import LOG, RANK
from entroflow.lattice import (
    enumerate_submodules,
    lattice_morphism,
    normed_semilattice,
    semilattice_map,
    window_top,
)
from entroflow.modules import finite_module, matrix_morphism, shift_module, submodule
from entroflow.normvalue import NormValue

Z4 = finite_module([4])


def test_enumeration_examples():
    assert len(enumerate_submodules(finite_module([9]))) == 3
    assert len(enumerate_submodules(finite_module([2, 2]))) == 5
    assert len(enumerate_submodules(finite_module([]))) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_p_plus_three(p):
    assert len(enumerate_submodules(finite_module([p, p]))) == p + 3


def test_enumeration_errors():
    with pytest.raises(TooLarge):
        enumerate_submodules(finite_module([64, 64]), cap=1000)
    with pytest.raises(ShiftUnsupported):
        enumerate_submodules(shift_module(finite_module([2])))


@pytest.mark.parametrize("seed", range(4))
def test_enumeration_matches_brute_force(seed):
    rng = random.Random(seed)
    for _ in range(6):
        m = bt.random_finite_module(rng, 48, 2)
        lat = enumerate_submodules(m)
        assert {frozenset(element_set(n)) for n in lat} == set(all_subgroups(m))
        assert len(set(lat.elements)) == len(lat)
        assert mc.zero_submodule(m) in lat and mc.whole(m) in lat


@pytest.mark.parametrize("seed", range(4))
def test_modular_law_and_closure(seed):
    rng = random.Random(seed)
    m = bt.random_finite_module(rng, 64, 3)
    lat = enumerate_submodules(m)
    for _ in range(60):
        a, b, c = (rng.choice(lat.elements) for _ in range(3))
        assert lat.join(a, b) in lat and lat.meet(a, b) in lat
        c = lat.join(a, c)
        assert lat.join(a, lat.meet(b, c)) == lat.meet(lat.join(a, b), c)


def test_lattice_morphism_examples():
    double = matrix_morphism(Z4, Z4, [[2]])
    x = lattice_morphism(double)
    two = submodule(Z4, [[2]])
    assert x(mc.whole(Z4)) == two
    assert x(two) == mc.zero_submodule(Z4)
    ident = lattice_morphism(mc.identity_morphism(Z4))
    assert ident.table() == list(range(len(ident.source)))


@pytest.mark.parametrize("seed", range(4))
def test_lattice_morphisms_compose_and_preserve_joins(seed):
    rng = random.Random(seed)
    for _ in range(6):
        m = bt.random_finite_module(rng, 32, 2)
        eta, theta = bt.random_endo(rng, m), bt.random_endo(rng, m)
        lat = enumerate_submodules(m)
        xe, xt = lattice_morphism(eta, lat), lattice_morphism(theta, lat)
        xet = lattice_morphism(mc.compose(eta, theta), lat)
        assert xet.table() == [xe.apply_index(j) for j in xt.table()]
        for _ in range(20):
            i, j = rng.randrange(len(lat)), rng.randrange(len(lat))
            assert xe.apply_index(lat.join_index(i, j)) == lat.join_index(xe.apply_index(i), xe.apply_index(j))


def test_normed_semilattice_examples():
    s = normed_semilattice(Z4, LOG)
    assert sorted(s.norm(n) for n in s) == [NormValue.zero(), NormValue.log(2), NormValue.log(2, 2)]
    z = finite_module([0])
    s = normed_semilattice(z, LOG)
    assert list(s) == [mc.zero_submodule(z)]
    r = normed_semilattice(z, RANK, bound=4)
    assert len(r) == 5
    assert {r.norm(n) for n in r} == {NormValue.zero(), NormValue.unit()}
    assert s.norm(mc.zero_submodule(z)) == NormValue.zero()


def test_shift_semilattice_is_windowed():
    m = shift_module(finite_module([2]))
    s = normed_semilattice(m, LOG, window=3)
    assert s.top() == window_top(m, 3)
    assert s.norm(s.top()) == NormValue.log(2, 3)
    assert window_top(m, 4) not in s
    with pytest.raises(TooLarge):
        len(s)
    with pytest.raises(TooLarge):
        normed_semilattice(m, LOG)


def test_semilattice_map_examples():
    surj = matrix_morphism(Z4, finite_module([2]), [[1]])
    f = semilattice_map(surj, LOG)
    assert f(mc.whole(Z4)) == mc.whole(finite_module([2]))
    assert f.contracts(mc.whole(Z4))
    ident = semilattice_map(mc.identity_morphism(Z4))
    assert all(ident(n) == n for n in enumerate_submodules(Z4))


@pytest.mark.parametrize("seed", range(4))
def test_contractive_and_subadditive(seed):
    rng = random.Random(seed)
    for _ in range(5):
        m = bt.random_fg_module(rng, 16)
        eta = bt.random_endo(rng, m)
        for tag in (LOG, RANK):
            s = normed_semilattice(m, tag, bound=1)
            f = semilattice_map(eta, tag)
            elems = list(s)
            for n in elems:
                assert f.contracts(n)
            for _ in range(30):
                a, b = rng.choice(elems), rng.choice(elems)
                assert s.norm(s.join(a, b)) <= s.norm(a) + s.norm(b)
