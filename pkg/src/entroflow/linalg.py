"""Integer matrix normal forms and lattice arithmetic.

Matrices are lists of rows of Python ints, so entries never overflow.
A *moduli* tuple ``(d_1, ..., d_k)`` describes the group
``Z/d_1 + ... + Z/d_k`` (``d_i = 0`` is a free summand); a submodule of
it is stored as the row-Hermite basis of the lattice spanned by its
generators together with the relation vectors ``d_i e_i``.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(inner)) for j in range(cols)] for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf(rows: Sequence[Sequence[int]], width: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Rows are returned in echelon order with positive pivots and every entry
    above a pivot reduced into ``[0, pivot)``. The result depends only on
    the lattice, so two spanning sets agree iff their HNFs are identical.
    """
    a = [list(r) for r in rows if any(r)]
    r = 0
    for col in range(width):
        if r >= len(a):
            break
        while True:
            nz = [i for i in range(r, len(a)) if a[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[r], a[piv] = a[piv], a[r]
            prow = a[r]
            p = prow[col]
            clean = True
            for i in range(r + 1, len(a)):
                v = a[i][col]
                if v:
                    q = v // p
                    if q:
                        row = a[i]
                        a[i] = [x - q * y for x, y in zip(row, prow)]
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if a[r][col] == 0:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][col]
        for i in range(r):
            q = a[i][col] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        a = a[:r] + [row for row in a[r:] if any(row)]
    return tuple(tuple(row) for row in a[:r])


def pivot(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def solve_in(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Coefficients ``c`` with ``c . basis == v`` for an HNF ``basis``, else None."""
    v = list(v)
    coeffs = []
    for row in basis:
        c = pivot(row)
        if v[c] % row[c]:
            return None
        q = v[c] // row[c]
        coeffs.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coeffs


def contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return solve_in(basis, v) is not None


def relation_rows(moduli: Sequence[int]) -> list[list[int]]:
    k = len(moduli)
    return [[d if j == i else 0 for j in range(k)] for i, d in enumerate(moduli) if d]


def reduce_vector(v: Sequence[int], moduli: Sequence[int]) -> tuple[int, ...]:
    return tuple(x % d if d else x for x, d in zip(v, moduli))


def span(gens: Sequence[Sequence[int]], moduli: Sequence[int]):
    return hnf(list(gens) + relation_rows(moduli), len(moduli))


def lattice_le(a, b) -> bool:
    return all(contains(b, row) for row in a)


def _zero_left_part(rows: Sequence[Sequence[int]], left: int, width: int) -> list[list[int]]:
    h = hnf(rows, left + width)
    return [list(row[left:]) for row in h if not any(row[:left])]


def intersect(a, b, moduli: Sequence[int]):
    k = len(moduli)
    rows = [list(x) + list(x) for x in a] + [list(y) + [0] * k for y in b]
    return span(_zero_left_part(rows, k, k), moduli)


def apply(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Image of a coordinate vector under a column-convention matrix."""
    return [sum(x * y for x, y in zip(row, v)) for row in matrix]


def image(matrix, basis, cod_moduli):
    return span([apply(matrix, row) for row in basis], cod_moduli)


def preimage(matrix, dom_moduli, target_basis, cod_moduli):
    """Lattice of ``x`` with ``matrix . x`` inside ``target_basis``."""
    n, m = len(cod_moduli), len(dom_moduli)
    rows = []
    for j in range(m):
        col = [matrix[i][j] for i in range(n)]
        rows.append(col + [int(t == j) for t in range(m)])
    rows += [list(p) + [0] * m for p in target_basis]
    return span(_zero_left_part(rows, n, m), dom_moduli)


def smith(a: Sequence[Sequence[int]], nrows: int | None = None, ncols: int | None = None):
    """Smith normal form ``U A V = D`` with unimodular ``U``, ``V``.

    Returns ``(U, D, V, V_inv)``. The diagonal of ``D`` is nonnegative, its
    nonzero entries form a divisibility chain, and zeros come last.
    """
    m = len(a) if nrows is None else nrows
    n = (len(a[0]) if a else 0) if ncols is None else ncols
    d = [list(r) for r in a]
    u = identity(m)
    v = identity(n)
    vi = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        d[dst] = [x - q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        # col_dst -= q * col_src; inverse adds q * row_dst to row_src
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]
        vi[src] = [x + q * y for x, y in zip(vi[src], vi[dst])]

    for t in range(min(m, n)):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, d[i][t] // d[t][t])
                    if d[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, d[t][j] // d[t][t])
                    if d[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            p = d[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v, vi


def quotient_structure(basis, width: int):
    """Invariant factors of ``Z^width / L`` and the coordinate change ``x -> x V``.

    Returns ``(factors, keep, V, V_inv)`` where ``factors[i]`` is the order of
    the ``i``-th transformed coordinate (``0`` for free) and ``keep`` lists
    the coordinates whose factor is not 1.
    """
    r = len(basis)
    _, d, v, vi = smith([list(row) for row in basis], r, width)
    factors = [d[i][i] if i < r else 0 for i in range(width)]
    keep = [i for i, f in enumerate(factors) if f != 1]
    return factors, keep, v, vi
