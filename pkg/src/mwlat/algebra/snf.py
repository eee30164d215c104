"""Smith normal form of integer matrices, plus kernel and quotient helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "integer_kernel",
    "quotient_invariants",
    "matmul",
    "identity",
]

Matrix = list[list[int]]


@dataclass(frozen=True)
class SmithForm:
    """``u @ a @ v == diag(d)`` with ``d[i] | d[i+1]`` and u, v unimodular.

    ``d`` has ``min(rows, cols)`` entries; trailing zeros mark the rank deficit.
    """

    d: tuple[int, ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form by pivoting on the smallest nonzero entry.

    ``ncols`` is needed only for matrices with zero rows.
    """
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if m else (ncols or 0)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            m[dst] = [x + c * y for x, y in zip(m[dst], m[src])]
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        if c:
            for row in m:
                row[dst] += c * row[src]
            for row in v:
                row[dst] += c * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = m[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            piv = m[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = m[i][t] // piv
                add_row(t, i, -q)
                if m[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = m[t][j] // piv
                add_col(t, j, -q)
                if m[t][j]:
                    clean = False
            if not clean:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]

    d = tuple(m[i][i] for i in range(min(rows, cols)))
    return SmithForm(d, tuple(map(tuple, u)), tuple(map(tuple, v)))


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as columns-list of vectors) of {x in Z^n : a x = 0}.

    Returns a list of basis vectors.  The basis is saturated: the kernel
    of an integer matrix is a direct summand of Z^n.
    """
    cols = len(a[0]) if a else (ncols or 0)
    if not a:
        return identity(cols)
    sf = smith_normal_form(a)
    r = sf.rank
    return [[sf.v[i][j] for i in range(cols)] for j in range(r, cols)]


def quotient_invariants(gens: Sequence[Sequence[int]], ambient: int) -> tuple[list[int], int]:
    """Structure of Z^ambient / span(gens).

    Returns (nontrivial finite invariant factors, free rank).
    """
    if not gens:
        return [], ambient
    # columns are the generators
    mat = [[g[i] for g in gens] for i in range(ambient)]
    sf = smith_normal_form(mat)
    finite = [x for x in sf.d if x > 1]
    return finite, ambient - sf.rank
