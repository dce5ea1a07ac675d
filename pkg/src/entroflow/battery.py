"""Seeded generators of modules, morphisms, flows and expressions.

Everything is driven by a caller-supplied :class:`random.Random`, so a
seed fixes the whole battery. Modules keep at most three invariant
factors, which keeps ``End(M)`` and ``L(M)`` small enough to enumerate.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import prod

from . import modules as mc
from .flows import Flow
from .modules import ZZ, ModuleObject, Morphism, RingSpec
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

SHIFT_BLOCKS = ((2,), (3,), (4,), (5,), (6,), (2, 2), (8,), (9,))
PRIMES = (2, 3, 5)


@lru_cache(maxsize=None)
def divisibility_chains(max_order: int, max_factors: int, modulus: int = 0) -> tuple[tuple[int, ...], ...]:
    """All chains ``d_1 | ... | d_k`` (``d_i >= 2``) with product at most ``max_order``.

    With ``modulus`` set, every factor must divide it.
    """
    out = [()]

    def grow(chain, budget):
        if len(chain) == max_factors:
            return
        start = chain[-1] if chain else 1
        k = 1 if chain else 2
        while True:
            d, k = start * k, k + 1
            if d > budget:
                return
            if modulus and modulus % d:
                continue
            new = chain + (d,)
            out.append(new)
            grow(new, budget // d)

    grow((), max_order)
    return tuple(sorted(out, key=lambda c: (prod(c), c)))


def random_finite_module(
    rng: random.Random, max_order: int = 256, max_factors: int = 3, ring: RingSpec = ZZ
) -> ModuleObject:
    chains = divisibility_chains(max_order, max_factors, ring.modulus)
    return mc.finite_module(rng.choice(chains), ring)


def random_fg_module(rng: random.Random, max_torsion: int = 64, max_free: int = 1) -> ModuleObject:
    torsion = rng.choice(divisibility_chains(max_torsion, 2))
    return mc.finite_module(torsion + (0,) * rng.randint(0, max_free))


def random_shift_module(rng: random.Random, blocks=SHIFT_BLOCKS, ring: RingSpec | None = None) -> ModuleObject:
    if ring is not None and ring.modulus:
        blocks = [b for b in blocks if all(ring.modulus % d == 0 for d in b)] or [(ring.modulus,)]
    block = rng.choice(list(blocks))
    return mc.shift_module(mc.finite_module(block, ring or ZZ))


def random_morphism(rng: random.Random, dom: ModuleObject, cod: ModuleObject, spread: int = 3) -> Morphism:
    """A random element of ``Hom(dom, cod)`` as a combination of generators."""
    gens = mc.hom_generators(dom, cod)
    orders = mc.hom_group_orders(dom, cod)
    if not gens:
        return mc.zero_morphism(dom, cod)
    coeffs = [rng.randrange(o) if o else rng.randint(-spread, spread) for o in orders]
    return mc.add_morphisms(gens, coeffs)


def random_block_endo(rng: random.Random, block: ModuleObject) -> Morphism:
    return random_morphism(rng, block, block)


def random_shift_endo(rng: random.Random, m: ModuleObject, max_offset: int = 2) -> Morphism:
    """A random shift sum with nonnegative offsets; half the time the Bernoulli shift."""
    if rng.random() < 0.5:
        return mc.bernoulli_shift(m, rng.randint(1, max_offset))
    offsets = rng.sample(range(max_offset + 1), rng.randint(1, max_offset + 1))
    terms = [(s, random_block_endo(rng, m.block)) for s in sorted(offsets)]
    return mc.shift_morphism(m, terms)


def random_endo(rng: random.Random, m: ModuleObject) -> Morphism:
    if m.is_shift:
        return random_shift_endo(rng, m)
    return random_morphism(rng, m, m)


def shift_family(m: ModuleObject) -> tuple[Morphism, ...]:
    """The declared family ``{0, id, beta}`` used for shift-module suprema."""
    return (mc.zero_morphism(m, m), mc.identity_morphism(m), mc.bernoulli_shift(m))


def random_flow(rng: random.Random, shift: bool | None = None, max_order: int = 64) -> Flow:
    if shift is None:
        shift = rng.random() < 0.5
    m = random_shift_module(rng) if shift else random_finite_module(rng, max_order)
    return Flow(m, random_endo(rng, m))


def hom_builtins(rng: random.Random, count: int = 2, max_order: int = 16) -> list[PreradicalExpr]:
    """Random ``alpha(M, N)`` / ``omega(M, N)`` builtins over small finite ``M``."""
    out = []
    for _ in range(count):
        m = random_finite_module(rng, max_order, 2)
        n = mc.submodule(m, [[rng.randrange(d) for d in m.factors]])
        cls = Alpha if rng.random() < 0.5 else Omega
        out.append(cls(m, n, (str(m), str(n))))
    return out


LEAVES = (Zero(), Identity(), Torsion()) + tuple(PTorsion(p) for p in PRIMES)
OPERATIONS = (Meet, Join, Product, Coproduct)


def random_expr(
    rng: random.Random, depth: int = 2, leaves=LEAVES, min_depth: int = 0
) -> PreradicalExpr:
    """A random operation-closure of the given builtins."""
    if depth == 0 or (min_depth <= 0 and rng.random() < 0.35):
        return rng.choice(list(leaves))
    op = rng.choice(OPERATIONS)
    return op(
        random_expr(rng, depth - 1, leaves, min_depth - 1),
        random_expr(rng, depth - 1, leaves, min_depth - 1),
    )


def morphism_battery(rng: random.Random, count: int, max_order: int = 256) -> list[Morphism]:
    """Morphisms between random modules, mixing endomorphisms and free summands."""
    out = []
    for i in range(count):
        if i % 4 == 3:
            dom, cod = random_fg_module(rng), random_fg_module(rng)
        else:
            dom = random_finite_module(rng, max_order)
            cod = dom if i % 3 == 0 else random_finite_module(rng, max_order)
        out.append(random_morphism(rng, dom, cod))
    return out
