"""Exact linear algebra over Q.

Rows are either dense sequences or sparse ``{column: value}`` dicts and are
reduced with :class:`fractions.Fraction` Gauss-Jordan elimination.
:func:`bareiss_rank` is a fraction-free alternative for integer matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import StructuralError

SparseRow = dict[int, Fraction]


def _sparse(row) -> SparseRow:
    if isinstance(row, Mapping):
        return {int(k): Fraction(v) for k, v in row.items() if v != 0}
    return {j: Fraction(v) for j, v in enumerate(row) if v != 0}


def rref(rows: Iterable) -> dict[int, SparseRow]:
    """Reduced row echelon form as ``{pivot column: row}`` with unit pivots."""
    pivots: dict[int, SparseRow] = {}
    for raw in rows:
        row = _sparse(raw)
        for col in [c for c in row if c in pivots]:
            f = row.get(col)
            if not f:
                continue
            for c, v in pivots[col].items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for pc, prow in pivots.items():
            f = prow.get(lead)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[lead] = row
    return pivots


def rank(rows: Iterable) -> int:
    return len(rref(rows))


def nullspace(rows: Iterable, ncols: int) -> list[SparseRow]:
    """Basis of ``{x : row . x = 0}``; one vector per free column."""
    piv = rref(rows)
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        vec = {free: Fraction(1)}
        for pc, prow in piv.items():
            v = prow.get(free)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``a x = b`` or ``None`` when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [_sparse(list(r) + [bv]) for r, bv in zip(a, b)]
    piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for pc, prow in piv.items():
        x[pc] = prow.get(n, Fraction(0))
    return x


def inverse(a: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(a)
    if any(len(r) != n for r in a):
        raise StructuralError("inverse needs a square matrix")
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(a)]
    piv = rref(aug)
    if any(c not in piv for c in range(n)):
        return None
    return [[piv[i].get(n + j, Fraction(0)) for j in range(n)] for i in range(n)]


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        prow = m[r]
        for i in range(r + 1, len(m)):
            row = m[i]
            f = row[c]
            if f:
                m[i] = [(pv * x - f * y) // prev for x, y in zip(row, prow)]
            elif pv != prev:
                m[i] = [(pv * x) // prev for x in row]
        prev = pv
        r += 1
        if r == len(m):
            break
    return r
