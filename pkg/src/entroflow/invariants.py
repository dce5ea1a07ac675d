"""The two shipped invariants, ``Log`` (log of the order) and ``Rank`` (free rank)."""

from __future__ import annotations

from enum import Enum
from math import prod

from . import modules as mc
from .modules import ModuleObject, Submodule
from .normvalue import NormValue


class InvariantTag(Enum):
    LOG = "log"
    RANK = "rank"

    @classmethod
    def parse(cls, text) -> InvariantTag:
        if isinstance(text, cls):
            return text
        return cls(str(text).lower())

    def __str__(self):
        return self.value


LOG = InvariantTag.LOG
RANK = InvariantTag.RANK


def _module_of(x: ModuleObject | Submodule) -> ModuleObject | None:
    """Isomorphism type of ``x``; ``None`` for infinitely generated objects."""
    if isinstance(x, Submodule):
        if x.is_uniform:
            return None
        return mc.structure(x).module
    if x.is_shift:
        return None
    return x


def invariant(tag: InvariantTag | str, x: ModuleObject | Submodule) -> NormValue:
    """``i(x)`` as an exact :class:`NormValue`."""
    tag = InvariantTag.parse(tag)
    m = _module_of(x)
    if tag is LOG:
        if m is None or not m.is_finite:
            return NormValue.inf()
        return NormValue.log(prod(m.factors)) if m.factors else NormValue.zero()
    if m is None:
        # every block is finite, so shift modules and their submodules are torsion
        return NormValue.zero()
    return NormValue.unit(m.free_rank)


def is_finite_norm(tag: InvariantTag | str, x: ModuleObject | Submodule) -> bool:
    return invariant(tag, x).is_finite
