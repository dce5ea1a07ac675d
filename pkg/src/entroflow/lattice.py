"""Submodule lattices ``L(M)``, the maps ``X_eta`` and normed semilattices ``F_i``.

Finite modules get a fully enumerated lattice with lazily filled join and
meet tables indexed by position, so lattice-side computations can run on
integer indices alone. Shift modules are never materialized: their normed
semilattice is bounded by a support window and answers queries on demand.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import modules as mc
from .errors import ShiftUnsupported, TooLarge
from .invariants import InvariantTag, invariant
from .modules import ModuleObject, Morphism, Submodule
from .normvalue import NormValue

MAX_ORDER = int(os.environ.get("ENTROFLOW_MAX_ORDER", "4096"))
MAX_COUNT = 50_000


class SubmoduleLattice:
    """The complete list of submodules of one module, with indexed operations."""

    def __init__(self, parent: ModuleObject, elements: Sequence[Submodule]):
        self.parent = parent
        self.elements = tuple(sorted(elements, key=_sort_key))
        self.index = {n: i for i, n in enumerate(self.elements)}
        self._join: dict[tuple[int, int], int] = {}
        self._meet: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Submodule]:
        return iter(self.elements)

    def __contains__(self, n: Submodule) -> bool:
        return n in self.index

    def __getitem__(self, i: int) -> Submodule:
        return self.elements[i]

    @property
    def bottom(self) -> int:
        return self.index[mc.zero_submodule(self.parent)]

    def join_index(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        if key not in self._join:
            self._join[key] = self.index[mc.sum_submodules(self.elements[i], self.elements[j])]
        return self._join[key]

    def meet_index(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        if key not in self._meet:
            s = mc.intersect_submodules(self.elements[i], self.elements[j])
            self._meet[key] = self.index[s]
        return self._meet[key]

    def le_index(self, i: int, j: int) -> bool:
        return self.join_index(i, j) == j

    def join(self, a: Submodule, b: Submodule) -> Submodule:
        return self.elements[self.join_index(self.index[a], self.index[b])]

    def meet(self, a: Submodule, b: Submodule) -> Submodule:
        return self.elements[self.meet_index(self.index[a], self.index[b])]


def _sort_key(n: Submodule):
    return (len(n.basis), n.basis)


def _vectors(m: ModuleObject, bound: int | None) -> Iterator[tuple[int, ...]]:
    ranges = []
    for d in m.factors:
        if d:
            ranges.append(range(d))
        else:
            if bound is None:
                raise TooLarge(f"{m} is infinite; supply a generator bound")
            ranges.append(range(-bound, bound + 1))
    return itertools.product(*ranges)


def enumerate_submodules(
    m: ModuleObject,
    cap: int | None = None,
    bound: int | None = None,
    max_count: int = MAX_COUNT,
) -> SubmoduleLattice:
    """All submodules of a finite ``m`` as the closure of its cyclic submodules under sum.

    For infinite finitely generated ``m`` a ``bound`` restricts free
    coordinates of the cyclic generators to ``[-bound, bound]``; the result is
    then the sub-semilattice those generators produce, not all of ``L(m)``.
    """
    if m.is_shift:
        raise ShiftUnsupported("L(M) of a shift module is never materialized")
    cap = MAX_ORDER if cap is None else cap
    size = 1
    for d in m.factors:
        size *= d if d else 2 * (bound or 0) + 1
    if size > cap:
        raise TooLarge(f"{m} has {size} candidate generators, cap is {cap}")
    cyclic = {}
    for v in _vectors(m, bound):
        c = mc.submodule(m, [v])
        cyclic.setdefault(c, None)
    cyclic = list(cyclic)
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for a in frontier:
            for c in cyclic:
                s = mc.sum_submodules(a, c)
                if s not in found:
                    found.add(s)
                    nxt.append(s)
                    if len(found) > max_count:
                        raise TooLarge(f"more than {max_count} submodules")
        frontier = nxt
    return SubmoduleLattice(m, found)


# ---------------------------------------------------------------- X_eta


@dataclass
class LatticeMorphism:
    """``X_eta : N -> eta(N)``; index map cached when both lattices are enumerated."""

    carrier: Morphism
    source: SubmoduleLattice | None = None
    target: SubmoduleLattice | None = None
    max_window: int | None = None
    _map: dict[int, int] = field(default_factory=dict, repr=False)

    def __call__(self, n: Submodule) -> Submodule:
        return mc.image_of(self.carrier, n, self.max_window)

    def apply_index(self, i: int) -> int:
        if i not in self._map:
            self._map[i] = self.target.index[self(self.source[i])]
        return self._map[i]

    def table(self) -> list[int]:
        return [self.apply_index(i) for i in range(len(self.source))]


def lattice_morphism(
    eta: Morphism,
    source: SubmoduleLattice | None = None,
    target: SubmoduleLattice | None = None,
    max_window: int | None = None,
) -> LatticeMorphism:
    if not eta.dom.is_shift:
        source = source or enumerate_submodules(eta.dom)
        target = target or (source if eta.cod == eta.dom else enumerate_submodules(eta.cod))
    return LatticeMorphism(eta, source, target, max_window)


# ---------------------------------------------------------------- F_i(L(M))


class NormedSemilattice:
    """``F_i(L(M))``: the finite-norm submodules, join = sum, norm = ``i``.

    ``elements`` is ``None`` for shift modules, whose semilattice is bounded
    by ``window`` (finitely supported submodules within the first ``window``
    blocks) and answered lazily.
    """

    def __init__(
        self,
        parent: ModuleObject,
        tag: InvariantTag,
        lattice: SubmoduleLattice | None,
        elements: Sequence[Submodule] | None,
        window: int | None = None,
    ):
        self.parent = parent
        self.tag = tag
        self.lattice = lattice
        self.elements = None if elements is None else tuple(elements)
        self._members = None if elements is None else frozenset(self.elements)
        self.window = window
        self._norms: dict[Submodule, NormValue] = {}

    def __contains__(self, n: Submodule) -> bool:
        if n.parent != self.parent:
            return False
        if self.elements is not None:
            return n in self._members
        return not n.is_uniform and n.window <= self.window and self.norm(n).is_finite

    def __iter__(self):
        if self.elements is None:
            raise TooLarge("the semilattice of a shift module is not enumerated")
        return iter(self.elements)

    def __len__(self):
        if self.elements is None:
            raise TooLarge("the semilattice of a shift module is not enumerated")
        return len(self.elements)

    def norm(self, n: Submodule) -> NormValue:
        if n not in self._norms:
            self._norms[n] = invariant(self.tag, n)
        return self._norms[n]

    def join(self, a: Submodule, b: Submodule) -> Submodule:
        if self.lattice is not None:
            return self.lattice.join(a, b)
        return mc.sum_submodules(a, b)

    def top(self) -> Submodule | None:
        """The largest element, when the semilattice has one."""
        if self.elements is not None:
            out = mc.zero_submodule(self.parent)
            for n in self.elements:
                out = mc.sum_submodules(out, n)
            return out if out in self._members else None
        return window_top(self.parent, self.window)

    def below(self, upper: Submodule) -> list[Submodule]:
        """Elements contained in ``upper`` (the interval ``[0, upper]``)."""
        return [n for n in self if mc.is_contained(n, upper)]


def window_top(m: ModuleObject, w: int, within: Submodule | None = None) -> Submodule:
    """The largest submodule supported in the first ``w`` blocks (inside ``within``)."""
    top = mc.submodule(m, _block_identity(m, w))
    if within is None:
        return top
    return mc.intersect_submodules(top, within)


def _block_identity(m: ModuleObject, w: int):
    k = m.block.ngens
    return [[int(i == j) for j in range(w * k)] for i in range(w * k)]


def normed_semilattice(
    m: ModuleObject,
    tag: InvariantTag | str,
    bound: int | None = None,
    window: int | None = None,
    cap: int | None = None,
) -> NormedSemilattice:
    tag = InvariantTag.parse(tag)
    if m.is_shift:
        if window is None:
            raise TooLarge("shift semilattices need a support window")
        return NormedSemilattice(m, tag, None, None, window)
    if m.is_finite:
        lat = enumerate_submodules(m, cap)
        return NormedSemilattice(m, tag, lat, lat.elements)
    if tag is InvariantTag.LOG:
        # finite-norm submodules of M are exactly the submodules of Tor(M)
        from .preradicals import torsion_submodule

        tor_mod, inclusion = mc.submodule_as_module(torsion_submodule(m))
        elements = [mc.image_of(inclusion, n) for n in enumerate_submodules(tor_mod, cap)]
        return NormedSemilattice(m, tag, None, elements)
    lat = enumerate_submodules(m, cap, bound)
    return NormedSemilattice(m, tag, lat, lat.elements)


@dataclass
class SemilatticeMap:
    """``F_i(eta) : N -> eta(N)``; join-preserving and contractive."""

    carrier: Morphism
    tag: InvariantTag
    max_window: int | None = None

    def __call__(self, n: Submodule) -> Submodule:
        return mc.image_of(self.carrier, n, self.max_window)

    def contracts(self, n: Submodule) -> bool:
        return invariant(self.tag, self(n)) <= invariant(self.tag, n)


def semilattice_map(eta: Morphism, tag: InvariantTag | str = InvariantTag.LOG, max_window=None):
    return SemilatticeMap(eta, InvariantTag.parse(tag), max_window)
