"""Finitely presented modules over Z and Z/n, plus the shift family.

A finitely presented module is stored by its invariant factors
``d_1 | d_2 | ... | d_k`` (``0`` marks a free Z summand). Every other
object refers to coordinates with respect to those canonical generators:

* a :class:`Morphism` is an integer matrix, column ``j`` being the image of
  generator ``j``;
* a :class:`Submodule` is the row-HNF basis of the lattice spanned by its
  generators and the relations of the parent, so equality is tuple
  equality.

Shift modules ``(+)_{i in N} B`` over a finite block ``B`` carry
finitely supported submodules inside a window of ``W`` blocks, or
*uniform* submodules ``(+)_i S`` for ``S <= B``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from . import linalg
from .errors import (
    InvalidMorphism,
    MismatchedParent,
    MismatchedRing,
    ShiftUnsupported,
    SupportOverflow,
)

Basis = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RingSpec:
    """``Z`` when ``modulus == 0``, otherwise ``Z/modulus``."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"invalid ring modulus {self.modulus}")

    @classmethod
    def integers(cls) -> RingSpec:
        return cls(0)

    @classmethod
    def integers_mod(cls, n: int) -> RingSpec:
        if n < 2:
            raise ValueError("Z/n requires n >= 2")
        return cls(n)

    @property
    def is_integers(self) -> bool:
        return self.modulus == 0

    def __str__(self):
        return "Z" if self.modulus == 0 else f"Z/{self.modulus}"


ZZ = RingSpec(0)


@dataclass(frozen=True)
class ModuleObject:
    ring: RingSpec
    factors: tuple[int, ...] = ()
    block: ModuleObject | None = None

    def __post_init__(self):
        if self.block is not None:
            if self.factors:
                raise ValueError("shift modules carry no factors of their own")
            if not self.block.is_finite:
                raise ValueError("shift blocks must be finite")
            if self.block.ring != self.ring:
                raise MismatchedRing("shift block over a different ring")
            return
        fs = self.factors
        if any(f < 0 or f == 1 for f in fs):
            raise ValueError(f"invalid invariant factors {fs}")
        nonzero = [f for f in fs if f]
        if fs != tuple(nonzero) + (0,) * (len(fs) - len(nonzero)):
            raise ValueError(f"free factors must come last: {fs}")
        if any(b % a for a, b in zip(nonzero, nonzero[1:])):
            raise ValueError(f"factors {fs} do not form a divisibility chain")
        n = self.ring.modulus
        if n and any(f == 0 or n % f for f in fs):
            raise ValueError(f"factors {fs} are not a Z/{n}-module")

    @property
    def is_shift(self) -> bool:
        return self.block is not None

    @property
    def moduli(self) -> tuple[int, ...]:
        if self.is_shift:
            raise ShiftUnsupported("shift modules have no finite coordinate system")
        return self.factors

    @property
    def ngens(self) -> int:
        return len(self.factors)

    @property
    def is_finite(self) -> bool:
        return not self.is_shift and 0 not in self.factors

    @property
    def free_rank(self) -> int:
        return self.factors.count(0)

    def __str__(self):
        if self.is_shift:
            return f"Shift({self.block})"
        if not self.factors:
            return "0"
        return " + ".join("Z" if f == 0 else f"Z/{f}" for f in self.factors)


def finite_module(factors: Iterable[int], ring: RingSpec = ZZ) -> ModuleObject:
    return ModuleObject(ring, tuple(factors))


def shift_module(block: ModuleObject) -> ModuleObject:
    return ModuleObject(block.ring, (), block)


def _require_finite_presentation(*mods: ModuleObject):
    for m in mods:
        if m.is_shift:
            raise ShiftUnsupported(f"{m} is a shift module")


def _same_ring(a: ModuleObject, b: ModuleObject):
    if a.ring != b.ring:
        raise MismatchedRing(f"{a} is over {a.ring}, {b} is over {b.ring}")


def smith_normal_form(a: Sequence[Sequence[int]]):
    """``(U, D, V)`` with ``U A V = D`` diagonal and ``U``, ``V`` unimodular."""
    m = len(a)
    n = len(a[0]) if a else 0
    u, d, v, _ = linalg.smith(a, m, n)
    return u, d, v


def present_module(ring: RingSpec, relations: Sequence[Sequence[int]], ngens: int | None = None):
    """Canonical form of ``R^k / (column span of relations)``."""
    if ngens is None:
        ngens = len(relations)
    rows = linalg.transpose(relations, 0) if relations and relations[0] else []
    if ring.modulus:
        rows = rows + linalg.relation_rows([ring.modulus] * ngens)
    q, _ = _quotient_of_lattice(linalg.hnf(rows, ngens), ngens, ring)
    return q


def _quotient_of_lattice(basis: Basis, width: int, ring: RingSpec):
    factors, keep, v, _ = linalg.quotient_structure(basis, width)
    mod = ModuleObject(ring, tuple(factors[i] for i in keep))
    # column j of the projection is row j of V restricted to kept coordinates
    matrix = [[v[j][i] for j in range(width)] for i in keep]
    return mod, matrix


# ---------------------------------------------------------------- morphisms


@dataclass(frozen=True)
class Morphism:
    dom: ModuleObject
    cod: ModuleObject
    matrix: tuple[tuple[int, ...], ...] = ()
    terms: tuple[tuple[int, Morphism], ...] | None = None

    def __post_init__(self):
        _same_ring(self.dom, self.cod)
        if self.terms is not None:
            self._check_shift()
            return
        _require_finite_presentation(self.dom, self.cod)
        k, m = self.cod.ngens, self.dom.ngens
        mat = [list(r) for r in self.matrix] if self.matrix else [[0] * m for _ in range(k)]
        if len(mat) != k or any(len(r) != m for r in mat):
            raise InvalidMorphism(f"matrix shape does not match {self.cod} <- {self.dom}")
        for i, e in enumerate(self.cod.factors):
            for j, d in enumerate(self.dom.factors):
                x = mat[i][j] * d
                if (e == 0 and x != 0) or (e and x % e):
                    raise InvalidMorphism(
                        f"generator {j} of order {d} cannot map to entry {mat[i][j]} mod {e}"
                    )
                if e:
                    mat[i][j] %= e
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in mat))

    def _check_shift(self):
        if not (self.dom.is_shift and self.dom == self.cod):
            raise ShiftUnsupported("shift sums must be endomorphisms of a shift module")
        offsets = [s for s, _ in self.terms]
        if len(set(offsets)) != len(offsets):
            raise InvalidMorphism("shift terms need distinct offsets")
        cleaned = []
        for s, phi in sorted(self.terms, key=lambda t: t[0]):
            if phi.dom != self.dom.block or phi.cod != self.dom.block:
                raise InvalidMorphism("shift terms must be block endomorphisms")
            if any(any(r) for r in phi.matrix):
                cleaned.append((s, phi))
        object.__setattr__(self, "terms", tuple(cleaned))

    @property
    def is_shift(self) -> bool:
        return self.terms is not None

    def __call__(self, x: Element) -> Element:
        if x.parent != self.dom:
            raise MismatchedParent("element outside the domain")
        if self.is_shift:
            w = len(x.coords) // max(self.dom.block.ngens, 1)
            mat, w2 = _shift_matrix(self, w)
            out = linalg.apply(mat, x.coords)
            return Element(self.cod, tuple(out))
        return Element(self.cod, tuple(linalg.apply(self.matrix, x.coords)))

    def __str__(self):
        if self.is_shift:
            return " + ".join(f"S^{s}*{list(map(list, p.matrix))}" for s, p in self.terms) or "0"
        return str([list(r) for r in self.matrix])


def matrix_morphism(dom: ModuleObject, cod: ModuleObject, matrix) -> Morphism:
    return Morphism(dom, cod, tuple(tuple(r) for r in matrix))


def shift_morphism(module: ModuleObject, terms: Iterable[tuple[int, Morphism | Sequence]]):
    """``sum_s S^s . phi_s``; ``phi_s`` may be given as a block matrix."""
    b = module.block
    out = []
    for s, phi in terms:
        if not isinstance(phi, Morphism):
            phi = matrix_morphism(b, b, phi)
        out.append((int(s), phi))
    return Morphism(module, module, (), tuple(out))


def identity_morphism(m: ModuleObject) -> Morphism:
    if m.is_shift:
        return shift_morphism(m, [(0, identity_morphism(m.block))])
    return matrix_morphism(m, m, linalg.identity(m.ngens))


def zero_morphism(dom: ModuleObject, cod: ModuleObject) -> Morphism:
    if dom.is_shift:
        return shift_morphism(dom, [])
    return matrix_morphism(dom, cod, [[0] * dom.ngens for _ in range(cod.ngens)])


def bernoulli_shift(module: ModuleObject, step: int = 1) -> Morphism:
    """Right shift ``(x_1, x_2, ...) -> (0, ..., 0, x_1, x_2, ...)`` by ``step`` places."""
    return shift_morphism(module, [(step, identity_morphism(module.block))])


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f o g``."""
    if g.cod != f.dom:
        raise MismatchedParent("composition of non-composable morphisms")
    if f.is_shift or g.is_shift:
        if any(t < 0 for t, _ in g.terms):
            raise ShiftUnsupported("cannot compose after a truncating left shift")
        acc: dict[int, list] = {}
        for s, phi in f.terms:
            for t, psi in g.terms:
                acc.setdefault(s + t, []).append(compose(phi, psi))
        terms = [(o, add_morphisms(ps)) for o, ps in acc.items()]
        return Morphism(g.dom, f.cod, (), tuple(terms))
    k, n, m = f.cod.ngens, f.dom.ngens, g.dom.ngens
    rows = [
        [sum(f.matrix[i][t] * g.matrix[t][j] for t in range(n)) for j in range(m)]
        for i in range(k)
    ]
    return matrix_morphism(g.dom, f.cod, rows)


def add_morphisms(ms: Sequence[Morphism], coeffs: Sequence[int] | None = None) -> Morphism:
    dom, cod = ms[0].dom, ms[0].cod
    coeffs = coeffs or [1] * len(ms)
    rows = [
        [sum(c * m.matrix[i][j] for c, m in zip(coeffs, ms)) for j in range(dom.ngens)]
        for i in range(cod.ngens)
    ]
    return matrix_morphism(dom, cod, rows)


def power(f: Morphism, n: int) -> Morphism:
    out = identity_morphism(f.dom)
    for _ in range(n):
        out = compose(f, out)
    return out


def morphisms_equal(f: Morphism, g: Morphism) -> bool:
    return f.dom == g.dom and f.cod == g.cod and f.matrix == g.matrix and f.terms == g.terms


# ---------------------------------------------------------------- elements


@dataclass(frozen=True)
class Element:
    parent: ModuleObject
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.parent.is_shift:
            k = self.parent.block.ngens
            c = list(linalg.reduce_vector(self.coords, self.parent.block.factors * (len(self.coords) // max(k, 1))))
            while k and len(c) >= k and not any(c[-k:]):
                del c[-k:]
            object.__setattr__(self, "coords", tuple(c))
        else:
            if len(self.coords) != self.parent.ngens:
                raise ValueError("coordinate vector has the wrong length")
            object.__setattr__(self, "coords", linalg.reduce_vector(self.coords, self.parent.factors))

    def __add__(self, other: Element) -> Element:
        if other.parent != self.parent:
            raise MismatchedParent("adding elements of different modules")
        a, b = list(self.coords), list(other.coords)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return Element(self.parent, tuple(x + y for x, y in zip(a, b)))

    def __rmul__(self, n: int) -> Element:
        return Element(self.parent, tuple(n * x for x in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def elements(m: ModuleObject) -> Iterator[Element]:
    """All elements of a finite module (test oracles and witnesses)."""
    if not m.is_finite:
        raise ShiftUnsupported(f"{m} is infinite")
    for c in itertools.product(*(range(d) for d in m.factors)):
        yield Element(m, c)


# ---------------------------------------------------------------- submodules


@dataclass(frozen=True)
class Submodule:
    """Canonical submodule; see the module docstring for the encoding.

    For shift parents exactly one of ``window`` (finite support in the first
    ``window`` blocks, ``basis`` in block coordinates) or ``uniform``
    (``(+)_i uniform``) is meaningful.
    """

    parent: ModuleObject
    basis: Basis
    window: int | None = None
    uniform: Submodule | None = field(default=None)

    @property
    def is_uniform(self) -> bool:
        return self.uniform is not None

    def generators(self) -> list[tuple[int, ...]]:
        """Basis rows that are not pure relation vectors of the parent."""
        mod = _coordinate_moduli(self)
        rel = set(map(tuple, linalg.relation_rows(mod)))
        return [r for r in self.basis if r not in rel]

    def __contains__(self, x: Element) -> bool:
        if x.parent != self.parent:
            return False
        if self.is_uniform:
            k = self.parent.block.ngens
            c = x.coords
            return all(
                linalg.contains(self.uniform.basis, c[i : i + k]) for i in range(0, len(c), k)
            )
        if self.parent.is_shift:
            k = self.parent.block.ngens
            w = max(self.window, len(x.coords) // max(k, 1))
            return linalg.contains(_windowed_basis(self, w), _pad(x.coords, w * k))
        return linalg.contains(self.basis, x.coords)

    def __le__(self, other: Submodule) -> bool:
        return is_contained(self, other)

    def __str__(self):
        if self.is_uniform:
            return f"(+)_i {self.uniform}"
        gens = self.generators()
        return "<" + ", ".join(str(list(g)) for g in gens) + ">" if gens else "0"


def _coordinate_moduli(sub: Submodule) -> tuple[int, ...]:
    m = sub.parent
    if m.is_shift:
        return m.block.factors * (sub.window or 0)
    return m.factors


def _pad(v, n):
    v = list(v)
    return v + [0] * (n - len(v))


def submodule(parent: ModuleObject, gens: Iterable[Sequence[int]] = ()) -> Submodule:
    """Submodule generated by coordinate vectors (finitely supported for shifts)."""
    gens = [list(g) for g in gens]
    if parent.is_shift:
        k = parent.block.ngens
        w = max([-(-len(g) // k) for g in gens if k] + [0])
        return _make_windowed(parent, [_pad(g, w * k) for g in gens], w)
    for g in gens:
        if len(g) != parent.ngens:
            raise ValueError("generator has the wrong length")
    return Submodule(parent, linalg.span(gens, parent.factors))


def zero_submodule(m: ModuleObject) -> Submodule:
    return submodule(m, [])


def whole(m: ModuleObject) -> Submodule:
    if m.is_shift:
        return uniform_submodule(m, whole(m.block))
    return submodule(m, linalg.identity(m.ngens))


def uniform_submodule(m: ModuleObject, s: Submodule) -> Submodule:
    if s.parent != m.block:
        raise MismatchedParent("uniform part must be a block submodule")
    if s == zero_submodule(m.block):
        return zero_submodule(m)
    return Submodule(m, (), None, s)


def _make_windowed(parent: ModuleObject, gens, w: int) -> Submodule:
    b = parent.block
    mod = b.factors * w
    basis = linalg.span(gens, mod)
    k = b.ngens
    # trim trailing blocks that carry only relation rows
    while w > 0:
        cut = (w - 1) * k
        head = [r for r in basis if linalg.pivot(r) < cut]
        if any(any(r[cut:]) for r in head):
            break
        tail = [r for r in basis if linalg.pivot(r) >= cut]
        expected = linalg.relation_rows(mod)[len(linalg.relation_rows(mod[:cut])):]
        if sorted(tail) != sorted(map(tuple, expected)):
            break
        basis = tuple(tuple(r[:cut]) for r in head)
        mod = mod[:cut]
        w -= 1
    return Submodule(parent, basis, w)


def _windowed_basis(sub: Submodule, w: int) -> Basis:
    """Basis of a finitely supported shift submodule re-embedded in ``w`` blocks."""
    b = sub.parent.block
    if sub.is_uniform:
        k = b.ngens
        rows = []
        for i in range(w):
            for r in sub.uniform.basis:
                rows.append([0] * (i * k) + list(r) + [0] * ((w - i - 1) * k))
        return linalg.span(rows, b.factors * w)
    if w < sub.window:
        raise SupportOverflow("window smaller than the support")
    n = w * b.ngens
    return linalg.span([_pad(r, n) for r in sub.basis], b.factors * w)


def _same_parent(a: Submodule, b: Submodule):
    if a.parent != b.parent:
        raise MismatchedParent(f"submodules of {a.parent} and {b.parent}")


def sum_submodules(a: Submodule, b: Submodule) -> Submodule:
    _same_parent(a, b)
    m = a.parent
    if not m.is_shift:
        return Submodule(m, linalg.span(list(a.basis) + list(b.basis), m.factors))
    if a.is_uniform and b.is_uniform:
        return uniform_submodule(m, sum_submodules(a.uniform, b.uniform))
    if a.is_uniform or b.is_uniform:
        u, f = (a, b) if a.is_uniform else (b, a)
        if is_contained(f, u):
            return u
        raise ShiftUnsupported("sum of a uniform and a finite shift submodule")
    w = max(a.window, b.window)
    gens = list(_windowed_basis(a, w)) + list(_windowed_basis(b, w))
    return _make_windowed(m, gens, w)


def intersect_submodules(a: Submodule, b: Submodule) -> Submodule:
    _same_parent(a, b)
    m = a.parent
    if not m.is_shift:
        return Submodule(m, linalg.intersect(a.basis, b.basis, m.factors))
    if a.is_uniform and b.is_uniform:
        return uniform_submodule(m, intersect_submodules(a.uniform, b.uniform))
    w = max(x.window for x in (a, b) if not x.is_uniform)
    mod = m.block.factors * w
    return _make_windowed(m, linalg.intersect(_windowed_basis(a, w), _windowed_basis(b, w), mod), w)


def is_contained(a: Submodule, b: Submodule) -> bool:
    _same_parent(a, b)
    m = a.parent
    if not m.is_shift:
        return linalg.lattice_le(a.basis, b.basis)
    if a.is_uniform:
        if b.is_uniform:
            return is_contained(a.uniform, b.uniform)
        return False
    w = max(a.window, 0 if b.is_uniform else b.window)
    return linalg.lattice_le(_windowed_basis(a, w), _windowed_basis(b, w))


# ---------------------------------------------------------------- maps on submodules


def _shift_matrix(f: Morphism, w: int):
    """Matrix of a shift sum from ``B^w`` into ``B^w'``, with ``w'`` covering all images."""
    b = f.dom.block
    k = b.ngens
    top = max([s for s, _ in f.terms] + [0])
    w2 = w + top
    mat = [[0] * (w * k) for _ in range(w2 * k)]
    for s, phi in f.terms:
        for i in range(w):
            i2 = i + s
            if 0 <= i2 < w2:
                for r in range(k):
                    for c in range(k):
                        mat[i2 * k + r][i * k + c] += phi.matrix[r][c]
    return mat, w2


MAX_WINDOW = 64


def image_of(f: Morphism, n: Submodule, max_window: int | None = None) -> Submodule:
    if n.parent != f.dom:
        raise MismatchedParent("submodule is not inside the domain")
    if f.is_shift:
        if n.is_uniform:
            raise ShiftUnsupported("image of an infinitely supported submodule")
        mat, w2 = _shift_matrix(f, n.window)
        if w2 > (max_window or MAX_WINDOW):
            raise SupportOverflow(f"image needs {w2} blocks")
        return _make_windowed(f.cod, [linalg.apply(mat, r) for r in n.basis], w2)
    return Submodule(f.cod, linalg.image(f.matrix, n.basis, f.cod.factors))


def image(f: Morphism) -> Submodule:
    return image_of(f, whole(f.dom))


def preimage_of(f: Morphism, n: Submodule, window: int | None = None) -> Submodule:
    """``f^{-1}(n)``; for shift sums the result is cut down to ``window`` blocks."""
    if n.parent != f.cod:
        raise MismatchedParent("submodule is not inside the codomain")
    if f.is_shift:
        if window is None:
            raise ShiftUnsupported("shift preimages need an explicit window")
        mat, w2 = _shift_matrix(f, window)
        b = f.dom.block
        wt = w2 if n.is_uniform else max(w2, n.window)
        target = _windowed_basis(n, wt)
        mat = mat + [[0] * (window * b.ngens) for _ in range((wt - w2) * b.ngens)]
        basis = linalg.preimage(mat, b.factors * window, target, b.factors * wt)
        return _make_windowed(f.dom, basis, window)
    return Submodule(f.dom, linalg.preimage(f.matrix, f.dom.factors, n.basis, f.cod.factors))


def kernel(f: Morphism, window: int | None = None) -> Submodule:
    return preimage_of(f, zero_submodule(f.cod), window)


# ---------------------------------------------------------------- quotients, structure


def quotient(m: ModuleObject, n: Submodule) -> tuple[ModuleObject, Morphism]:
    _require_finite_presentation(m)
    if n.parent != m:
        raise MismatchedParent("submodule is not inside the module")
    q, mat = _quotient_of_lattice(n.basis, m.ngens, m.ring)
    return q, matrix_morphism(m, q, mat)


@dataclass(frozen=True)
class SubmoduleStructure:
    """A canonical module isomorphic to a submodule, with the inclusion."""

    module: ModuleObject
    inclusion: Morphism | None
    source: Submodule
    _to_coords: tuple = ()

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates in ``module`` of a parent vector lying in ``source``."""
        basis, v_mat, keep = self._to_coords
        x = linalg.solve_in(basis, v)
        if x is None:
            raise MismatchedParent("vector is not in the submodule")
        y = [sum(x[t] * v_mat[t][i] for t in range(len(x))) for i in keep]
        return linalg.reduce_vector(y, self.module.factors)


def structure(n: Submodule) -> SubmoduleStructure:
    """Abstract isomorphism type of ``n`` (with its inclusion when the parent is finite-type)."""
    m = n.parent
    if n.is_uniform:
        raise ShiftUnsupported("uniform shift submodules are infinitely generated")
    mod = _coordinate_moduli(n)
    basis = n.basis
    r = len(basis)
    rel = [linalg.solve_in(basis, row) for row in linalg.relation_rows(mod)]
    factors, keep, v, vi = linalg.quotient_structure(linalg.hnf(rel, r), r)
    sub = ModuleObject(m.ring, tuple(factors[i] for i in keep))
    inclusion = None
    if not m.is_shift:
        gens = [
            [sum(vi[i][t] * basis[t][c] for t in range(r)) for c in range(len(mod))] for i in keep
        ]
        inclusion = matrix_morphism(sub, m, linalg.transpose(gens, sub.ngens) if gens else [[] for _ in mod])
    return SubmoduleStructure(sub, inclusion, n, (basis, v, keep))


def submodule_as_module(n: Submodule) -> tuple[ModuleObject, Morphism]:
    s = structure(n)
    return s.module, s.inclusion


def cardinality(x: ModuleObject | Submodule) -> int | float:
    """Exact order, or ``math.inf``."""
    if isinstance(x, Submodule):
        if x.is_uniform:
            return float("inf")
        x = structure(x).module
    if not x.is_finite:
        return float("inf")
    return prod(x.factors)


def restrict_endomorphism(eta: Morphism, n: Submodule) -> Morphism:
    """``eta`` restricted to an ``eta``-stable submodule, on its canonical module."""
    s = structure(n)
    if not is_contained(image_of(eta, n), n):
        raise MismatchedParent("submodule is not stable under the endomorphism")
    cols = []
    for j in range(s.module.ngens):
        g = [s.inclusion.matrix[i][j] for i in range(eta.dom.ngens)]
        cols.append(s.coordinates(linalg.reduce_vector(linalg.apply(eta.matrix, g), eta.dom.factors)))
    return matrix_morphism(s.module, s.module, linalg.transpose(cols, s.module.ngens) if cols else [])


# ---------------------------------------------------------------- Hom groups


def _hom_pieces(m: ModuleObject, k: ModuleObject):
    """Cyclic decomposition of Hom(m, k): ``(i, j, entry, order)`` per piece."""
    pieces = []
    for j, d in enumerate(m.factors):
        for i, e in enumerate(k.factors):
            if e == 0:
                if d == 0:
                    pieces.append((i, j, 1, 0))
                continue
            g = gcd(d, e)
            if g > 1:
                pieces.append((i, j, e // g, g))
    return pieces


def _piece_morphism(m, k, i, j, entry):
    mat = [[0] * m.ngens for _ in range(k.ngens)]
    mat[i][j] = entry
    return matrix_morphism(m, k, mat)


def hom_generators(m: ModuleObject, k: ModuleObject) -> list[Morphism]:
    """Generators of the abelian group Hom(m, k)."""
    _require_finite_presentation(m, k)
    _same_ring(m, k)
    return [_piece_morphism(m, k, i, j, x) for i, j, x, _ in _hom_pieces(m, k)]


def hom_group_orders(m: ModuleObject, k: ModuleObject) -> list[int]:
    """Orders of the generators returned by :func:`hom_generators` (0 = infinite)."""
    return [o for *_, o in _hom_pieces(m, k)]


def all_homs(m: ModuleObject, k: ModuleObject, cap: int = 1 << 16) -> Iterator[Morphism]:
    """Every element of a finite Hom group, as integer combinations of generators."""
    from .errors import TooLarge

    gens = hom_generators(m, k)
    orders = hom_group_orders(m, k)
    if 0 in orders:
        raise TooLarge("Hom group is infinite")
    if prod(orders) > cap:
        raise TooLarge(f"Hom group of order {prod(orders)} exceeds {cap}")
    if not gens:
        yield zero_morphism(m, k)
        return
    for cs in itertools.product(*(range(o) for o in orders)):
        yield add_morphisms(gens, cs)


def flow_hom_generators(src: tuple[ModuleObject, Morphism], dst: tuple[ModuleObject, Morphism]):
    """Generators of ``{f : f o eta = mu o f}`` for flows ``(M, eta) -> (K, mu)``."""
    m, eta = src
    k, mu = dst
    _require_finite_presentation(m, k)
    pieces = _hom_pieces(m, k)
    gens = [_piece_morphism(m, k, i, j, x) for i, j, x, _ in pieces]
    if not gens:
        return []
    h_mod = [o for *_, o in pieces]
    cells = [(i, j) for i in range(k.ngens) for j in range(m.ngens)]
    z_mod = [k.factors[i] for i, _ in cells]
    cols = []
    for g in gens:
        a = compose(g, eta).matrix
        b = compose(mu, g).matrix
        cols.append([a[i][j] - b[i][j] for i, j in cells])
    phi = linalg.transpose(cols, len(gens))
    ker = linalg.preimage(phi, h_mod, linalg.span([], z_mod), z_mod)
    out, seen = [], set()
    for row in ker:
        f = add_morphisms(gens, row)
        if any(any(r) for r in f.matrix) and f.matrix not in seen:
            seen.add(f.matrix)
            out.append(f)
    return out


def equivariant_homs(src, dst, cap: int = 1 << 16) -> Iterator[Morphism]:
    """Brute-force enumeration of all flow morphisms between finite flows."""
    m, eta = src
    k, mu = dst
    for f in all_homs(m, k, cap):
        if compose(f, eta).matrix == compose(mu, f).matrix:
            yield f
