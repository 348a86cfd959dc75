"""Finite abelian groups given by generator orders.

Elements are exponent vectors reduced modulo the orders.  Every group also
carries a mixed-radix integer index for its elements, with the first
coordinate most significant, so that counting up through the indices walks
the exponent vectors in lexicographic order.  When all orders are 2 the index
*is* the packed bit vector and multiplication is XOR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import CapacityError, StructuralError

MAX_ENUMERABLE = 2**32


@dataclass(frozen=True)
class GroupElement:
    exponents: tuple[int, ...]

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def is_identity(self) -> bool:
        return not any(self.exponents)


@dataclass(frozen=True)
class FinAbGroup:
    """Direct product of cyclic groups ``C_{m_1} x ... x C_{m_N}``."""

    orders: tuple[int, ...]
    _strides: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, orders: Sequence[int]):
        orders = tuple(int(m) for m in orders)
        for m in orders:
            if m < 2:
                raise StructuralError(f"generator orders must be >= 2, got {m}")
        object.__setattr__(self, "orders", orders)
        strides = []
        s = 1
        for m in reversed(orders):
            strides.append(s)
            s *= m
        object.__setattr__(self, "_strides", tuple(reversed(strides)))

    @classmethod
    def elementary2(cls, n: int) -> "FinAbGroup":
        return cls([2] * n)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def is_elementary2(self) -> bool:
        return all(m == 2 for m in self.orders)

    def __len__(self) -> int:
        return self.size

    # -- elements -----------------------------------------------------

    def element(self, exponents) -> GroupElement:
        """Reduce an exponent vector into a group element."""
        exps = tuple(exponents)
        if len(exps) != self.rank:
            raise StructuralError(
                f"expected {self.rank} exponents, got {len(exps)}")
        return GroupElement(tuple(a % m for a, m in zip(exps, self.orders)))

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    def generator(self, i: int) -> GroupElement:
        exps = [0] * self.rank
        exps[i] = 1
        return GroupElement(tuple(exps))

    def _check(self, a: GroupElement) -> None:
        if len(a.exponents) != self.rank:
            raise StructuralError(
                f"element of rank {len(a.exponents)} used in group of rank {self.rank}")

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._check(a)
        self._check(b)
        return GroupElement(tuple((x + y) % m for x, y, m in zip(a, b, self.orders)))

    def inv(self, a: GroupElement) -> GroupElement:
        self._check(a)
        return GroupElement(tuple((-x) % m for x, m in zip(a, self.orders)))

    def power(self, a: GroupElement, n: int) -> GroupElement:
        self._check(a)
        return GroupElement(tuple((x * n) % m for x, m in zip(a, self.orders)))

    def order_of(self, a: GroupElement) -> int:
        self._check(a)
        out = 1
        for x, m in zip(a, self.orders):
            out = math.lcm(out, m // math.gcd(x, m))
        return out

    # -- integer indices ----------------------------------------------

    def index(self, a: GroupElement) -> int:
        self._check(a)
        return sum(x * s for x, s in zip(a, self._strides))

    def from_index(self, idx: int) -> GroupElement:
        if not 0 <= idx < self.size:
            raise StructuralError(f"index {idx} out of range for group of size {self.size}")
        exps = []
        for s, m in zip(self._strides, self.orders):
            exps.append((idx // s) % m)
        return GroupElement(tuple(exps))

    def exponents_of(self, idx: int) -> tuple[int, ...]:
        return tuple((idx // s) % m for s, m in zip(self._strides, self.orders))

    def mul_index(self, i: int, j: int) -> int:
        if self.is_elementary2:
            return i ^ j
        out = 0
        for s, m in zip(self._strides, self.orders):
            out += (((i // s) + (j // s)) % m) * s
        return out

    def inv_index(self, i: int) -> int:
        if self.is_elementary2:
            return i
        out = 0
        for s, m in zip(self._strides, self.orders):
            out += ((-(i // s)) % m) * s
        return out

    def generator_index(self, i: int) -> int:
        return self._strides[i]

    def mul_table(self):
        """``|G| x |G|`` numpy table of product indices."""
        import numpy as np

        self._require_enumerable()
        n = self.size
        idx = np.arange(n, dtype=np.int64)
        if self.is_elementary2:
            return idx[:, None] ^ idx[None, :]
        table = np.zeros((n, n), dtype=np.int64)
        for s, m in zip(self._strides, self.orders):
            digit = (idx // s) % m
            table += ((digit[:, None] + digit[None, :]) % m) * s
        return table

    # -- enumeration --------------------------------------------------

    def _require_enumerable(self) -> None:
        if self.size > MAX_ENUMERABLE:
            raise CapacityError(
                f"group of size {self.size} exceeds the enumeration cap 2^32")

    def enumerate(self) -> Iterator[GroupElement]:
        """Yield every element once, identity first, lexicographically."""
        self._require_enumerable()
        for idx in range(self.size):
            yield self.from_index(idx)

    def __iter__(self) -> Iterator[GroupElement]:
        return self.enumerate()


def mul(group: FinAbGroup, a: GroupElement, b: GroupElement) -> GroupElement:
    return group.mul(a, b)


def enumerate_group(group: FinAbGroup) -> Iterator[GroupElement]:
    return group.enumerate()
