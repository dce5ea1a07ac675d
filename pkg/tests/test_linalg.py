import random

from hypothesis import given
from hypothesis import strategies as st

from entroflow import linalg
from entroflow.modules import ZZ, RingSpec, present_module, smith_normal_form

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_snf_diag_2_3():
    u, d, v = smith_normal_form([[2, 0], [0, 3]])
    assert linalg.matmul(linalg.matmul(u, [[2, 0], [0, 3]]), v) == d
    assert d == [[1, 0], [0, 6]]


def test_snf_zero_and_identity():
    u, d, v = smith_normal_form([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]] and u == linalg.identity(2) and v == linalg.identity(2)
    _, d, _ = smith_normal_form(linalg.identity(3))
    assert d == linalg.identity(3)


@given(matrices)
def test_snf_round_trip(a):
    u, d, v = smith_normal_form(a)
    assert linalg.matmul(linalg.matmul(u, a), v) == d
    assert abs(linalg.determinant(u)) == 1 and abs(linalg.determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(a), len(a[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    assert diag == nonzero + [0] * (len(diag) - len(nonzero))
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(matrices)
def test_hnf_depends_only_on_lattice(a):
    width = len(a[0])
    h = linalg.hnf(a, width)
    shuffled = [list(r) for r in a]
    random.Random(len(a)).shuffle(shuffled)
    mixed = shuffled + [[x + y for x, y in zip(shuffled[0], shuffled[-1])]]
    assert linalg.hnf(mixed, width) == h
    assert all(linalg.contains(h, row) for row in a)


def test_present_module_examples():
    assert present_module(ZZ, [[2, 0], [0, 3]]).factors == (6,)
    assert present_module(ZZ, [[]], 1).factors == (0,)
    assert present_module(RingSpec(4), [[2]]).factors == (2,)


@given(matrices, st.randoms(use_true_random=False))
def test_present_module_is_canonical(a, rnd):
    ngens = len(a)
    cols = [list(c) for c in zip(*a)]
    base = present_module(ZZ, a, ngens).factors
    rnd.shuffle(cols)
    perm = list(range(ngens))
    rnd.shuffle(perm)
    shuffled = [[cols[j][perm[i]] for j in range(len(cols))] for i in range(ngens)]
    assert present_module(ZZ, shuffled, ngens).factors == base
