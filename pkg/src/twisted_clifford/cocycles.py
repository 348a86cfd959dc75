"""Alternating bicharacters and 2-cocycles with exact rational values.

Cocycles either carry the closed-form parameters ``(beta, mu)`` of the
standard construction over ``C_{m_1} x ... x C_{m_N}`` or a full table.
Values are :class:`fractions.Fraction`; when every value is ``+-1`` the fast
paths work with GF(2) exponent arrays (0 for +1, 1 for -1) instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (CapacityError, DomainError, StructuralError,
                     UnsupportedInputError, ValidationError)
from .groups import FinAbGroup, GroupElement

EXHAUSTIVE_TRIPLES_MAX = 256
EXHAUSTIVE_PAIRS_MAX = 1 << 12
DEFAULT_SAMPLES = 100_000
COHOMOLOGOUS_MAX = 1 << 10

ONE = Fraction(1)


def _frac(x) -> Fraction:
    f = Fraction(x)
    if f == 0:
        raise ValidationError("cocycle and bicharacter values must be nonzero")
    return f


def _digits(group: FinAbGroup) -> np.ndarray:
    """``(N, |G|)`` array of exponent digits for every element index."""
    idx = np.arange(group.size, dtype=np.int64)
    rows = []
    stride = group.size
    for m in group.orders:
        stride //= m
        rows.append((idx // stride) % m)
    return np.array(rows, dtype=np.int64).reshape(group.rank, group.size)


# -- bicharacters -----------------------------------------------------

@dataclass(frozen=True)
class Bicharacter:
    """Alternating bicharacter fixed by its values on generator pairs.

    ``gen_values`` maps ``(i, j)`` with ``i > j`` to ``beta(g_i, g_j)``;
    missing pairs are 1.  The rest follows from ``beta(g, g) = 1``,
    antisymmetry and bimultiplicativity.
    """

    group: FinAbGroup
    gen_values: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        n = self.group.rank
        clean = {}
        for (i, j), v in dict(self.gen_values).items():
            if not (0 <= j < i < n):
                raise StructuralError(f"generator pair {(i, j)} must satisfy 0 <= j < i < {n}")
            v = _frac(v)
            if v != 1:
                clean[(i, j)] = v
        object.__setattr__(self, "gen_values", clean)
        self.validate()

    @classmethod
    def trivial(cls, group: FinAbGroup) -> "Bicharacter":
        return cls(group, {})

    @classmethod
    def all_minus(cls, group: FinAbGroup) -> "Bicharacter":
        n = group.rank
        return cls(group, {(i, j): -1 for i in range(n) for j in range(i)})

    def validate(self) -> None:
        orders = self.group.orders
        for (i, j), v in self.gen_values.items():
            if v ** orders[i] != 1 or v ** orders[j] != 1:
                raise ValidationError(
                    f"beta(g_{i + 1}, g_{j + 1}) = {v} is incompatible with orders "
                    f"{orders[i]} and {orders[j]}")

    def generator_value(self, i: int, j: int) -> Fraction:
        if i == j:
            return ONE
        if i > j:
            return self.gen_values.get((i, j), ONE)
        return 1 / self.gen_values.get((j, i), ONE)

    @property
    def is_pm1(self) -> bool:
        return all(abs(v) == 1 for v in self.gen_values.values())

    def minus_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for (i, j), v in self.gen_values.items() if v == -1]

    def __call__(self, g: GroupElement, h: GroupElement) -> Fraction:
        out = ONE
        n = self.group.rank
        for i in range(n):
            if not g.exponents[i]:
                continue
            for j in range(n):
                if i != j and h.exponents[j]:
                    out *= self.generator_value(i, j) ** (g.exponents[i] * h.exponents[j])
        return out

    def value(self, a: int, b: int) -> Fraction:
        return self(self.group.from_index(a), self.group.from_index(b))

    def sign_table(self) -> np.ndarray:
        """Exponent table: ``beta(g, h) = (-1)^T[g, h]``."""
        if not self.is_pm1:
            raise UnsupportedInputError("sign tables need +-1 values")
        d = _digits(self.group)
        out = np.zeros((self.group.size, self.group.size), dtype=np.int64)
        for i, j in self.minus_pairs():
            # beta(g_i, g_j) = beta(g_j, g_i) = -1
            out += np.outer(d[i], d[j]) + np.outer(d[j], d[i])
        return (out & 1).astype(np.int8)

    def check_invariants(self, limit: int = 256) -> bool:
        """Alternating and bimultiplicative, checked on every pair/triple up to ``limit``."""
        G = self.group
        if G.size > limit:
            raise CapacityError(f"exhaustive bicharacter check limited to |G| <= {limit}")
        elems = list(G.enumerate())
        vals = [[self(g, h) for h in elems] for g in elems]
        mt = G.mul_table()
        n = len(elems)
        for a in range(n):
            if vals[a][a] != 1:
                return False
            for b in range(n):
                if vals[a][b] * vals[b][a] != 1:
                    return False
                for c in range(n):
                    if vals[int(mt[a, b])][c] != vals[a][c] * vals[b][c]:
                        return False
        return True


# -- cocycles ---------------------------------------------------------

class Cocycle:
    """A map ``sigma: G x G -> Q^x`` in closed form or as a table.

    Not every ``Cocycle`` instance satisfies the cocycle identity: tables
    are accepted as given so that broken inputs can be tested.
    """

    def __init__(self, group: FinAbGroup, beta: Bicharacter | None = None,
                 mu: Sequence | None = None, table=None):
        self.group = group
        self.beta = beta
        self.mu = None if mu is None else tuple(_frac(m) for m in mu)
        self._table = None
        if table is not None:
            if beta is not None or mu is not None:
                raise StructuralError("give either (beta, mu) or a table, not both")
            group._require_enumerable()
            arr = np.empty((group.size, group.size), dtype=object)
            for a in range(group.size):
                for b in range(group.size):
                    arr[a, b] = _frac(table[a][b])
            self._table = arr
        elif beta is None or mu is None:
            raise StructuralError("closed-form cocycles need both beta and mu")
        else:
            if beta.group != group:
                raise StructuralError("bicharacter lives on a different group")
            if len(self.mu) != group.rank:
                raise StructuralError(f"need {group.rank} mu values, got {len(self.mu)}")
        self._sign_cache = None

    # constructors

    @classmethod
    def from_function(cls, group: FinAbGroup,
                      fn: Callable[[GroupElement, GroupElement], object]) -> "Cocycle":
        elems = list(group.enumerate())
        return cls(group, table=[[fn(g, h) for h in elems] for g in elems])

    @classmethod
    def from_sign_table(cls, group: FinAbGroup, exps) -> "Cocycle":
        exps = np.asarray(exps)
        return cls(group, table=[[-1 if exps[a, b] & 1 else 1 for b in range(group.size)]
                                 for a in range(group.size)])

    @classmethod
    def trivial(cls, group: FinAbGroup) -> "Cocycle":
        return cls(group, Bicharacter.trivial(group), [1] * group.rank)

    @property
    def is_closed_form(self) -> bool:
        return self._table is None

    @property
    def is_pm1(self) -> bool:
        if self._table is None:
            return self.beta.is_pm1 and all(abs(m) == 1 for m in self.mu)
        return all(abs(v) == 1 for v in self._table.flat)

    # evaluation

    def value(self, a: int, b: int) -> Fraction:
        if self._table is not None:
            return self._table[a, b]
        G = self.group
        if G.is_elementary2 and self.is_pm1:
            return Fraction(-1) if self._pm1_exponent_e2(a, b) else ONE
        return self._closed_value(G.exponents_of(a), G.exponents_of(b))

    def __call__(self, g: GroupElement, h: GroupElement) -> Fraction:
        return self.value(self.group.index(g), self.group.index(h))

    def _closed_value(self, a, b) -> Fraction:
        out = ONE
        for (i, j), v in self.beta.gen_values.items():
            e = a[i] * b[j]
            if e:
                out *= v ** e
        for i, m in enumerate(self.group.orders):
            if a[i] + b[i] >= m:
                out *= self.mu[i]
        return out

    @property
    def _e2_masks(self):
        # For C_2^N with packed indices: coordinate i sits at bit N-1-i.
        if not hasattr(self, "_masks"):
            n = self.group.rank
            lower = [0] * n
            for i, j in self.beta.minus_pairs():
                lower[i] |= 1 << (n - 1 - j)
            mu_mask = 0
            for i, m in enumerate(self.mu):
                if m == -1:
                    mu_mask |= 1 << (n - 1 - i)
            self._masks = (tuple((1 << (n - 1 - i), lower[i]) for i in range(n) if lower[i]),
                           mu_mask)
        return self._masks

    def _pm1_exponent_e2(self, a: int, b: int) -> int:
        rows, mu_mask = self._e2_masks
        e = (a & b & mu_mask).bit_count()
        for bit, low in rows:
            if a & bit:
                e += (b & low).bit_count()
        return e & 1

    def sign_table(self) -> np.ndarray:
        """``|G| x |G|`` int8 exponents, ``sigma = (-1)^T``; needs +-1 values."""
        if self._sign_cache is not None:
            return self._sign_cache
        G = self.group
        G._require_enumerable()
        if G.size > EXHAUSTIVE_PAIRS_MAX * 4:
            raise CapacityError("sign table too large")
        if not self.is_pm1:
            raise UnsupportedInputError("sign tables need +-1 values")
        if self._table is not None:
            out = np.vectorize(lambda v: 0 if v == 1 else 1, otypes=[np.int8])(self._table)
        else:
            d = _digits(G)
            acc = np.zeros((G.size, G.size), dtype=np.int64)
            for i, j in self.beta.minus_pairs():
                acc += np.outer(d[i], d[j])
            for i, m in enumerate(G.orders):
                if self.mu[i] == -1:
                    acc += (d[i][:, None] + d[i][None, :]) >= m
            out = (acc & 1).astype(np.int8)
        self._sign_cache = out
        return out

    def value_table(self) -> np.ndarray:
        if self._table is not None:
            return self._table
        G = self.group
        G._require_enumerable()
        if self.is_pm1:
            st = self.sign_table()
            return np.where(st == 1, Fraction(-1), ONE).astype(object)
        out = np.empty((G.size, G.size), dtype=object)
        for a in range(G.size):
            ea = G.exponents_of(a)
            for b in range(G.size):
                out[a, b] = self._closed_value(ea, G.exponents_of(b))
        return out

    def tabulated(self) -> "Cocycle":
        return Cocycle(self.group, table=self.value_table().tolist())


# -- construction -----------------------------------------------------

def build_sigma(group: FinAbGroup, beta: Bicharacter, mu: Sequence) -> Cocycle:
    """The explicit cocycle with commutation factor ``beta`` and ``x_i^{m_i} = mu_i``."""
    if beta.group != group:
        raise ValidationError("bicharacter and group disagree")
    if len(mu) != group.rank:
        raise ValidationError(f"need {group.rank} mu values, got {len(mu)}")
    beta.validate()
    return Cocycle(group, beta, mu)


# -- verification -----------------------------------------------------

class CocycleReport(NamedTuple):
    ok: bool
    checked: int
    exhaustive: bool
    witness: tuple[int, int, int] | None


def check_cocycle(s: Cocycle, samples: int = DEFAULT_SAMPLES, seed: int = 0,
                  exhaustive_max: int = EXHAUSTIVE_TRIPLES_MAX) -> CocycleReport:
    """Test ``s(g,h) s(gh,k) == s(h,k) s(g,hk)``.

    Every triple is checked when ``|G| <= exhaustive_max``; otherwise
    ``samples`` random triples are drawn.  ``witness`` holds the indices of a
    failing triple.
    """
    G = s.group
    n = G.size
    if n <= exhaustive_max:
        mt = G.mul_table()
        if s.is_pm1:
            T = s.sign_table().astype(np.int8)
            if n <= 64:
                lhs = T[:, :, None] ^ T[mt]
                rhs = T[None, :, :] ^ T[np.arange(n)[:, None, None], mt[None, :, :]]
                bad = np.argwhere(lhs != rhs)
                if len(bad):
                    return CocycleReport(False, n ** 3, True, tuple(int(x) for x in bad[0]))
                return CocycleReport(True, n ** 3, True, None)
            for g in range(n):
                gh = mt[g]                              # (h,)
                lhs = T[g][:, None] ^ T[gh]            # (h, k)
                rhs = T ^ T[g][mt]                      # (h, k)
                bad = np.nonzero(lhs != rhs)
                if len(bad[0]):
                    return CocycleReport(False, n ** 3, True,
                                         (g, int(bad[0][0]), int(bad[1][0])))
            return CocycleReport(True, n ** 3, True, None)
        V = s.value_table()
        for g in range(n):
            for h in range(n):
                gh = mt[g, h]
                for k in range(n):
                    if V[g, h] * V[gh, k] != V[h, k] * V[g, mt[h, k]]:
                        return CocycleReport(False, n ** 3, True, (g, h, k))
        return CocycleReport(True, n ** 3, True, None)
    rng = random.Random(seed)
    mul = G.mul_index
    val = s.value
    for _ in range(samples):
        g, h, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if val(g, h) * val(mul(g, h), k) != val(h, k) * val(g, mul(h, k)):
            return CocycleReport(False, samples, False, (g, h, k))
    return CocycleReport(True, samples, False, None)


def is_cocycle(s: Cocycle, **kwargs) -> bool:
    return check_cocycle(s, **kwargs).ok


def beta_of(s: Cocycle, check_limit: int = 256) -> Bicharacter:
    """Commutation factor ``sigma(g,h) / sigma(h,g)`` as a bicharacter."""
    if not is_cocycle(s):
        raise ValidationError("beta_of needs a 2-cocycle")
    G = s.group
    gens = [G.generator_index(i) for i in range(G.rank)]
    values = {(i, j): s.value(gens[i], gens[j]) / s.value(gens[j], gens[i])
              for i in range(G.rank) for j in range(i)}
    try:
        beta = Bicharacter(G, values)
    except ValidationError as exc:
        raise ValidationError(f"commutation factor is not a bicharacter: {exc}") from None
    if G.size <= check_limit:
        for a in range(G.size):
            for b in range(a, G.size):
                if s.value(a, b) / s.value(b, a) != beta.value(a, b):
                    raise ValidationError("commutation factor is not bimultiplicative")
    return beta


def power_scalar(s: Cocycle, g: GroupElement, n: int) -> Fraction:
    """``prod_{i<n} sigma(g^i, g)``, the scalar in ``eps_g^n = lambda 1``."""
    G = s.group
    if n < 1 or G.order_of(g) != n:
        raise DomainError(f"{n} is not the order of {g.exponents}")
    gi = G.index(g)
    cur = 0
    out = ONE
    for _ in range(n):
        out *= s.value(cur, gi)
        cur = G.mul_index(cur, gi)
    return out


def cohomologous(s: Cocycle, t: Cocycle) -> tuple[int, ...] | None:
    """Find ``mu: G -> {+-1}`` with ``mu(gh) s(g,h) = mu(g) mu(h) t(g,h)``.

    Works in GF(2) exponents.  Each ``mu(x)`` is written as an affine
    function of the unknowns ``mu(g_i)`` by walking ``x = y g_i`` in index
    order; every pair then yields one affine equation in at most ``N``
    unknowns.  The result (indexed by element index) is verified on all
    pairs before it is returned.
    """
    G = s.group
    if t.group != G:
        raise StructuralError("cocycles live on different groups")
    if G.size > COHOMOLOGOUS_MAX:
        raise CapacityError(f"cohomologous is limited to |G| <= {COHOMOLOGOUS_MAX}")
    if not (s.is_pm1 and t.is_pm1):
        raise UnsupportedInputError("cohomologous handles +-1 valued cocycles only")
    n, r = G.size, G.rank
    S = s.sign_table().astype(np.int64)
    T = t.sign_table().astype(np.int64)
    D = (S ^ T)                        # need m(gh) = m(g) + m(h) + D(g,h)
    mt = G.mul_table()
    const = 1 << r                     # bit r is the constant term
    expr = [0] * n
    expr[0] = const if D[0, 0] else 0
    gens = [G.generator_index(i) for i in range(r)]
    for x in range(1, n):
        digits = G.exponents_of(x)
        i = max(k for k in range(r) if digits[k])
        y = x - gens[i]
        if y == 0:
            expr[x] = 1 << i
        else:
            expr[x] = expr[y] ^ expr[gens[i]] ^ (const if D[y, gens[i]] else 0)
    # collect the affine equations expr(gh) + expr(g) + expr(h) + D = 0
    E = np.array(expr, dtype=np.int64)
    eqs = (E[mt] ^ E[:, None] ^ E[None, :] ^ (D * const))
    pivots: dict[int, int] = {}
    for row in np.unique(eqs).tolist():
        for bit, prow in pivots.items():
            if row & bit:
                row ^= prow
        if not row:
            continue
        if row == const:
            return None
        lead = 1 << ((row & (const - 1)).bit_length() - 1)
        for bit in list(pivots):
            if pivots[bit] & lead:
                pivots[bit] ^= row
        pivots[lead] = row
    assign = 0                          # free unknowns set to 0
    for bit, prow in pivots.items():
        if prow & const:
            assign |= bit
    m = np.array([((e & assign).bit_count() + (1 if e & const else 0)) & 1 for e in expr],
                 dtype=np.int64)
    if np.any(m[mt] ^ S ^ m[:, None] ^ m[None, :] ^ T):
        raise AssertionError("coboundary solution failed verification")
    return tuple(-1 if v else 1 for v in m.tolist())


def verify_coboundary(s: Cocycle, t: Cocycle, mu: Sequence[int]) -> bool:
    G = s.group
    for a in range(G.size):
        for b in range(G.size):
            if mu[G.mul_index(a, b)] * s.value(a, b) != mu[a] * mu[b] * t.value(a, b):
                return False
    return True


# -- JSON -------------------------------------------------------------

def cocycle_to_json(s: Cocycle) -> dict:
    G = s.group
    G._require_enumerable()
    values = []
    for a in range(G.size):
        ea = list(G.exponents_of(a))
        for b in range(G.size):
            v = s.value(a, b)
            if v != 1:
                values.append({"g": ea, "h": list(G.exponents_of(b)),
                               "num": v.numerator, "den": v.denominator})
    return {"orders": list(G.orders), "values": values}


def cocycle_from_json(data: Mapping) -> Cocycle:
    try:
        G = FinAbGroup(data["orders"])
        entries = data.get("values", [])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed cocycle JSON: {exc}") from None
    table = [[ONE] * G.size for _ in range(G.size)]
    seen = set()
    for e in entries:
        g, h = e["g"], e["h"]
        if len(g) != G.rank or len(h) != G.rank or any(
                not 0 <= x < m for v in (g, h) for x, m in zip(v, G.orders)):
            raise ValidationError(f"entry {e} is not a pair of reduced group elements")
        a, b = G.index(GroupElement(tuple(g))), G.index(GroupElement(tuple(h)))
        if (a, b) in seen:
            raise ValidationError(f"duplicate entry for pair {g}, {h}")
        seen.add((a, b))
        table[a][b] = _frac(Fraction(int(e["num"]), int(e.get("den", 1))))
    return Cocycle(G, table=table)
