"""Quadratic forms over GF(2).

Vectors of ``F_2^n`` are packed into Python ints with coordinate ``i``
(0-based) stored at bit ``n - 1 - i``.  Counting from 0 to ``2^n - 1`` then
walks the vectors in lexicographic order, the same order
:class:`~twisted_clifford.groups.FinAbGroup` uses for ``C_2^n``.
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .cocycles import Bicharacter
from .errors import (CapacityError, DomainError, ParseError, StructuralError,
                     UnsupportedInputError, ValidationError)
from .groups import FinAbGroup

MAX_BRUTE_DIM = 32
MAX_WITNESS_DIM = 6
CHUNK = 1 << 20


def _bit(i: int, n: int) -> int:
    return 1 << (n - 1 - i)


def vector_to_int(v: Sequence[int]) -> int:
    n = len(v)
    out = 0
    for i, x in enumerate(v):
        if x & 1:
            out |= _bit(i, n)
    return out


def int_to_vector(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - i)) & 1 for i in range(n))


def _parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class QuadraticFormF2:
    """``q(x) = sum_i linear[i] x_i + sum_{i<j} quad[i][j] x_i x_j`` over GF(2).

    ``quad`` is an ``n x n`` 0/1 matrix of which only the strict upper
    triangle is read; the constructor zeroes the rest.
    """

    n: int
    linear: tuple[int, ...]
    quad: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise StructuralError("dimension must be non-negative")
        lin = tuple(int(a) & 1 for a in self.linear)
        if len(lin) != self.n:
            raise StructuralError(f"linear part has length {len(lin)}, expected {self.n}")
        if len(self.quad) != self.n or any(len(r) != self.n for r in self.quad):
            raise StructuralError(f"quadratic part must be {self.n}x{self.n}")
        quad = tuple(
            tuple((int(self.quad[i][j]) & 1) if j > i else 0 for j in range(self.n))
            for i in range(self.n))
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quad", quad)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_terms(cls, n: int, linear=(), pairs=()) -> "QuadraticFormF2":
        """Build from 0-based linear indices and ``(i, j)`` cross terms.

        Repeated terms cancel mod 2.
        """
        lin = [0] * n
        quad = [[0] * n for _ in range(n)]
        for i in linear:
            if not 0 <= i < n:
                raise StructuralError(f"index {i} out of range for n={n}")
            lin[i] ^= 1
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise StructuralError(f"pair {(i, j)} out of range for n={n}")
            if i == j:
                lin[i] ^= 1
                continue
            i, j = min(i, j), max(i, j)
            quad[i][j] ^= 1
        return cls(n, tuple(lin), tuple(tuple(r) for r in quad))

    @classmethod
    def zero(cls, n: int) -> "QuadraticFormF2":
        return cls.from_terms(n)

    @classmethod
    def from_table(cls, values: Sequence[int]) -> "QuadraticFormF2":
        """Recover the polynomial from a value table indexed by packed vectors."""
        size = len(values)
        n = size.bit_length() - 1
        if size != 1 << n:
            raise ValidationError("value table length must be a power of two")
        vals = [int(v) & 1 for v in values]
        if vals[0] != 0:
            raise ValidationError("a quadratic form vanishes at 0")
        lin = [vals[_bit(i, n)] for i in range(n)]
        pairs = []
        for i in range(n):
            for j in range(i + 1, n):
                bi, bj = _bit(i, n), _bit(j, n)
                if vals[bi | bj] ^ vals[bi] ^ vals[bj]:
                    pairs.append((i, j))
        q = cls.from_terms(n, [i for i in range(n) if lin[i]], pairs)
        if q.value_table() != vals:
            raise ValidationError("value table is not a quadratic form")
        return q

    # -- evaluation ---------------------------------------------------

    @cached_property
    def linear_mask(self) -> int:
        return vector_to_int(self.linear)

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        """Row ``i`` packs the ``j > i`` with a cross term ``x_i x_j``."""
        return tuple(vector_to_int(row) for row in self.quad)

    def __call__(self, x: int) -> int:
        n = self.n
        v = _parity(x & self.linear_mask)
        for i, row in enumerate(self.row_masks):
            if row and (x >> (n - 1 - i)) & 1:
                v ^= _parity(x & row)
        return v

    def evaluate(self, vector: Sequence[int]) -> int:
        if len(vector) != self.n:
            raise StructuralError("vector has wrong length")
        return self(vector_to_int(vector))

    def values(self, start: int, stop: int) -> np.ndarray:
        """Vectorised values on the packed vectors ``start .. stop-1``."""
        n = self.n
        x = np.arange(start, stop, dtype=np.uint64)
        v = np.bitwise_count(x & np.uint64(self.linear_mask)) & np.uint8(1)
        for i, row in enumerate(self.row_masks):
            if not row:
                continue
            xi = ((x >> np.uint64(n - 1 - i)) & np.uint64(1)).astype(np.uint8)
            v ^= xi & (np.bitwise_count(x & np.uint64(row)) & np.uint8(1))
        return v

    def value_table(self) -> list[int]:
        if self.n > 24:
            raise CapacityError("value tables are limited to n <= 24")
        return self.values(0, 1 << self.n).astype(int).tolist()

    def polynomial(self) -> str:
        terms = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.quad[i][j]:
                    terms.append(f"x{i + 1}*x{j + 1}")
        terms += [f"x{i + 1}" for i in range(self.n) if self.linear[i]]
        return "+".join(terms) if terms else "0"

    def __str__(self):
        return self.polynomial()


@dataclass(frozen=True)
class BilinearFormF2:
    n: int
    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> int:
        n = self.n
        out = 0
        for i, row in enumerate(self.row_masks):
            if (x >> (n - 1 - i)) & 1:
                out ^= _parity(y & row)
        return out

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        return tuple(vector_to_int(r) for r in self.matrix)


class ArfCount(NamedTuple):
    arf: int
    difference: int


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


# -- bilinear form, radical, regularity -------------------------------

def bilinear_of(q: QuadraticFormF2) -> BilinearFormF2:
    n = q.n
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = q.quad[i][j]
    return BilinearFormF2(n, tuple(tuple(r) for r in m))


def _nullspace_gf2(rows: Sequence[int], n: int) -> list[int]:
    """Basis (packed) of ``{x : row . x = 0 for every row}``."""
    pivots: dict[int, int] = {}  # pivot bit -> reduced row
    for r in rows:
        for bit, prow in pivots.items():
            if r & bit:
                r ^= prow
        if not r:
            continue
        lead = 1 << (r.bit_length() - 1)
        for bit in list(pivots):
            if pivots[bit] & lead:
                pivots[bit] ^= r
        pivots[lead] = r
    basis = []
    for i in range(n):
        free = _bit(i, n)
        if free in pivots:
            continue
        x = free
        for bit, prow in pivots.items():
            if prow & free:
                x |= bit
        basis.append(x)
    return basis


def radical_masks(b: BilinearFormF2) -> list[int]:
    return _nullspace_gf2(b.row_masks, b.n)


def radical(b: BilinearFormF2) -> list[tuple[int, ...]]:
    """Basis of the radical of ``b`` as 0/1 coordinate tuples."""
    return [int_to_vector(x, b.n) for x in radical_masks(b)]


def radical_dim(q: QuadraticFormF2) -> int:
    return len(radical_masks(bilinear_of(q)))


def is_regular(q: QuadraticFormF2) -> bool:
    rad = radical_masks(bilinear_of(q))
    if not rad:
        return True
    return len(rad) == 1 and q(rad[0]) == 1


# -- Arf invariant ----------------------------------------------------

def _chunked_difference(n: int, count_ones, workers: int) -> int:
    total = 1 << n
    bounds = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]

    def work(span):
        s, e = span
        return (e - s) - 2 * int(count_ones(s, e))

    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    return sum(parts)


def arf_brute(q: QuadraticFormF2, workers: int = 1) -> ArfCount:
    """Count ``#{q=0} - #{q=1}`` over all of ``F_2^n`` and take its sign."""
    if q.n > MAX_BRUTE_DIM:
        raise CapacityError(f"arf_brute enumerates 2^n vectors; n={q.n} > {MAX_BRUTE_DIM}")
    diff = _chunked_difference(
        q.n, lambda s, e: np.count_nonzero(q.values(s, e)), workers)
    return ArfCount(_sign(diff), diff)


def count_difference_pq(p: int, q: int, workers: int = 1) -> int:
    """``#{q_pq=0} - #{q_pq=1}`` using popcounts.

    The cross terms contribute ``C(|w|, 2) mod 2`` and the squares the
    popcount of the last ``q`` coordinates, which are the low bits.
    """
    n = p + q
    if p < 0 or q < 0:
        raise DomainError("p and q must be non-negative")
    if n > MAX_BRUTE_DIM:
        raise CapacityError(f"p+q={n} exceeds {MAX_BRUTE_DIM}")
    low = np.uint64((1 << q) - 1)

    def ones(s, e):
        x = np.arange(s, e, dtype=np.uint64)
        c = np.bitwise_count(x).astype(np.int64)
        v = ((c * (c - 1)) // 2 + np.bitwise_count(x & low)) & 1
        return np.count_nonzero(v)

    return _chunked_difference(n, ones, workers)


# -- canonical forms and q_pq -----------------------------------------

def dickson_canonical(n: int, kind: str) -> QuadraticFormF2:
    """``q0``: hyperbolic pairs; ``q1``: plus ``x1 + x2``; ``q2`` (n odd): plus ``x_n``."""
    if n < 0:
        raise DomainError("dimension must be non-negative")
    pairs = [(2 * k, 2 * k + 1) for k in range(n // 2)]
    if kind == "q0":
        return QuadraticFormF2.from_terms(n, (), pairs)
    if kind == "q1":
        if n < 2:
            raise DomainError("q1 needs n >= 2")
        return QuadraticFormF2.from_terms(n, (0, 1), pairs)
    if kind == "q2":
        if n % 2 == 0:
            raise DomainError("q2 exists only in odd dimension")
        return QuadraticFormF2.from_terms(n, (n - 1,), pairs)
    raise DomainError(f"unknown canonical kind {kind!r}")


def canonical_kinds(n: int) -> list[str]:
    kinds = ["q0"]
    if n >= 2:
        kinds.append("q1")
    if n % 2 == 1:
        kinds.append("q2")
    return kinds


def q_pq(p: int, q: int) -> QuadraticFormF2:
    """All cross terms, squares on the last ``q`` coordinates.

    So ``q(e_i) = 0`` for the first ``p`` basis vectors and ``1`` for the
    rest, matching ``Cl_{p,q}`` generators squaring to ``+1`` then ``-1``.
    """
    if p < 0 or q < 0:
        raise DomainError("p and q must be non-negative")
    n = p + q
    if n > MAX_BRUTE_DIM:
        raise CapacityError(f"p+q={n} exceeds {MAX_BRUTE_DIM}")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return QuadraticFormF2.from_terms(n, range(p, n), pairs)


def orthogonal_sum(a: QuadraticFormF2, b: QuadraticFormF2) -> QuadraticFormF2:
    n = a.n + b.n
    lin = list(a.linear) + list(b.linear)
    quad = [[0] * n for _ in range(n)]
    for i in range(a.n):
        for j in range(a.n):
            quad[i][j] = a.quad[i][j]
    for i in range(b.n):
        for j in range(b.n):
            quad[a.n + i][a.n + j] = b.quad[i][j]
    return QuadraticFormF2(n, tuple(lin), tuple(tuple(r) for r in quad))


# -- classification ---------------------------------------------------

class FormInvariants(NamedTuple):
    n: int
    radical_dim: int
    regular: bool
    arf: int


@lru_cache(maxsize=4096)
def invariants(q: QuadraticFormF2) -> FormInvariants:
    return FormInvariants(q.n, radical_dim(q), is_regular(q), arf_brute(q).arf)


def equivalent(a: QuadraticFormF2, b: QuadraticFormF2) -> bool:
    """Decide equivalence of forms whose radicals have dimension <= 1."""
    ia, ib = invariants(a), invariants(b)
    if ia.radical_dim > 1 or ib.radical_dim > 1:
        raise UnsupportedInputError(
            "equivalence is only decided for forms with dim rad(b_q) <= 1")
    return ia == ib


def canonical_of(q: QuadraticFormF2) -> tuple[str, QuadraticFormF2]:
    """The Dickson canonical form equivalent to ``q``."""
    matches = [k for k in canonical_kinds(q.n)
               if equivalent(q, dickson_canonical(q.n, k))]
    if len(matches) != 1:
        raise ValidationError(f"expected one canonical match, found {matches}")
    return matches[0], dickson_canonical(q.n, matches[0])


def _columns(phi: Sequence[Sequence[int]], n: int) -> list[int]:
    return [vector_to_int([phi[r][c] for r in range(len(phi))]) for c in range(n)]


def apply_matrix(phi: Sequence[Sequence[int]], x: int, n: int) -> int:
    """Image of packed ``x`` under the GF(2) matrix ``phi`` (columns = images of e_i)."""
    out = 0
    for i, col in enumerate(_columns(phi, n)):
        if (x >> (n - 1 - i)) & 1:
            out ^= col
    return out


def is_witness(phi, a: QuadraticFormF2, b: QuadraticFormF2) -> bool:
    """``b(phi(w)) == a(w)`` for every ``w`` and ``phi`` is invertible."""
    n = a.n
    if len(phi) != b.n or any(len(r) != n for r in phi):
        return False
    cols = _columns(phi, n)
    size = 1 << n
    images = [0] * size
    for x in range(1, size):
        low = (x & -x).bit_length() - 1
        images[x] = images[x & (x - 1)] ^ cols[n - 1 - low]
    if len(set(images)) != size:
        return False
    qa = a.value_table()
    qb = b.value_table()
    return all(qb[images[x]] == qa[x] for x in range(size))


def find_witness(a: QuadraticFormF2, b: QuadraticFormF2):
    """Search for an invertible ``phi`` with ``b(phi(w)) = a(w)``.

    Returns the matrix as a tuple of rows, or ``None``.
    """
    if a.n != b.n:
        raise StructuralError("forms live on spaces of different dimension")
    n = a.n
    if n > MAX_WITNESS_DIM:
        raise CapacityError(f"witness search is capped at n <= {MAX_WITNESS_DIM}")
    size = 1 << n
    qb = b.values(0, size).tolist()
    basis = [_bit(i, n) for i in range(n)]
    target_q = [a(e) for e in basis]
    ba = bilinear_of(a)
    target_b = [[ba(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    # b_b(u, v) = parity(u & dual[v])
    dual = [0] * size
    for v in range(size):
        for u in basis:
            if qb[u ^ v] ^ qb[u] ^ qb[v]:
                dual[v] |= u
    by_value = [[v for v in range(1, size) if qb[v] == t] for t in (0, 1)]

    images: list[int] = []

    def search(k: int, span: int, cands: list[list[int]]):
        # cands[l] holds the vectors still compatible with level l >= k
        if k == n:
            return True
        for v in cands[k]:
            if span >> v & 1:
                continue
            dv = dual[v]
            nxt = [[w for w in cands[l] if ((w & dv).bit_count() & 1) == target_b[l][k]]
                   for l in range(k + 1, n)]
            if any(not c for c in nxt):
                continue
            images.append(v)
            shifted = 0
            rest = span
            while rest:
                low = rest & -rest
                shifted |= 1 << ((low.bit_length() - 1) ^ v)
                rest ^= low
            if search(k + 1, span | shifted, [None] * (k + 1) + nxt):
                return True
            images.pop()
        return False

    if not search(0, 1, [by_value[t] for t in target_q]):
        return None
    phi = tuple(tuple((images[c] >> (n - 1 - r)) & 1 for c in range(n)) for r in range(n))
    if not is_witness(phi, a, b):
        raise AssertionError("witness search produced an invalid map")
    return phi


# -- multiplicative version -------------------------------------------

@dataclass(frozen=True)
class MultQuadForm:
    """``mu(w) = (-1)^{q(w)}`` on ``C_2^n``, indexed by packed vectors."""

    n: int
    base: QuadraticFormF2

    @property
    def group(self) -> FinAbGroup:
        return FinAbGroup.elementary2(self.n)

    def __call__(self, w: int) -> int:
        return -1 if self.base(w) else 1

    def generator_values(self) -> list[int]:
        return [self(_bit(i, self.n)) for i in range(self.n)]

    def beta(self, r: int, s: int) -> int:
        return self(r ^ s) * self(r) * self(s)


def to_multiplicative(q: QuadraticFormF2) -> MultQuadForm:
    return MultQuadForm(q.n, q)


def beta_mu(m: MultQuadForm) -> Bicharacter:
    n = m.n
    basis = [_bit(i, n) for i in range(n)]
    values = {(i, j): m.beta(basis[i], basis[j]) for i in range(n) for j in range(i)}
    return Bicharacter(m.group, values)


# -- input grammar ----------------------------------------------------

_TERM = re.compile(r"^x(\d+)(?:\^2|\*x(\d+))?$")


def parse_form(expr: str, dim: int | None = None) -> QuadraticFormF2:
    """Parse ``x1*x2 + x1 + x3^2`` style input; duplicate terms cancel."""
    text = re.sub(r"\s+", "", expr)
    if not text:
        raise ParseError("empty expression")
    linear: list[int] = []
    pairs: list[tuple[int, int]] = []
    top = 0
    for term in text.split("+"):
        if term == "0":
            continue
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"cannot parse term {term!r}")
        i = int(m.group(1))
        if i < 1:
            raise ParseError(f"variable indices start at 1: {term!r}")
        top = max(top, i)
        if m.group(2) is None:
            linear.append(i - 1)
            continue
        j = int(m.group(2))
        if j <= i:
            raise ParseError(f"cross terms are written xI*xJ with I < J: {term!r}")
        top = max(top, j)
        pairs.append((i - 1, j - 1))
    n = top if dim is None else dim
    if n < top:
        raise ParseError(f"--dim {dim} is smaller than the largest index {top}")
    return QuadraticFormF2.from_terms(n, linear, pairs)
