"""Twisted group algebras ``F^sigma G`` over exact rationals.

The basis is ``{eps_g : g in G}`` with ``eps_g eps_h = sigma(g, h) eps_{gh}``.
Elements are sparse maps from element indices to :class:`Fraction`.  The
cocycle need not satisfy the cocycle identity, so non-associative algebras
such as the octonions share the same code path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from . import linalg
from .cocycles import Bicharacter, Cocycle, build_sigma
from .errors import CapacityError, DomainError, StructuralError, ValidationError
from .groups import FinAbGroup, GroupElement

ASSOC_EXHAUSTIVE_MAX = 256
CENTER_MAX = 1 << 10


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "TwistedAlgebra", coeffs: Mapping[int, object] = ()):
        self.algebra = algebra
        self.coeffs = {int(k): Fraction(v) for k, v in dict(coeffs).items() if v != 0}

    def _wrap(self, coeffs):
        return AlgebraElement(self.algebra, coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self._wrap({k: v * other for k, v in self.coeffs.items()})

    def __rmul__(self, scalar):
        return self._wrap({k: v * scalar for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs(self) -> Fraction:
        return max((abs(v) for v in self.coeffs.values()), default=Fraction(0))

    def dense(self) -> list[Fraction]:
        return [self.coeffs.get(i, Fraction(0)) for i in range(self.algebra.dimension)]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        G = self.algebra.group
        return " + ".join(f"{v}*e{list(G.exponents_of(k))}" for k, v in sorted(self.coeffs.items()))


class TwistedAlgebra:
    def __init__(self, group: FinAbGroup, sigma: Cocycle):
        if sigma.group != group:
            raise StructuralError("cocycle lives on a different group")
        self.group = group
        self.sigma = sigma

    @property
    def dimension(self) -> int:
        return self.group.size

    def __repr__(self):
        return f"TwistedAlgebra(orders={list(self.group.orders)})"

    # elements

    def element(self, coeffs: Mapping[int, object]) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def from_dense(self, values: Sequence) -> AlgebraElement:
        return AlgebraElement(self, dict(enumerate(values)))

    def basis(self, g) -> AlgebraElement:
        idx = g if isinstance(g, int) else self.group.index(g)
        return AlgebraElement(self, {idx: 1})

    def unit(self) -> AlgebraElement:
        return AlgebraElement(self, {0: 1 / self.sigma.value(0, 0)})

    def scalar(self, c) -> AlgebraElement:
        return self.unit() * Fraction(c)

    def generators(self) -> list[AlgebraElement]:
        return [self.basis(self.group.generator_index(i)) for i in range(self.group.rank)]

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    # products

    def basis_product(self, a: int, b: int) -> tuple[int, Fraction]:
        return self.group.mul_index(a, b), self.sigma.value(a, b)

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        out: dict[int, Fraction] = {}
        mul = self.group.mul_index
        sig = self.sigma.value
        for a, ca in x.coeffs.items():
            for b, cb in y.coeffs.items():
                k = mul(a, b)
                out[k] = out.get(k, 0) + ca * cb * sig(a, b)
        return AlgebraElement(self, out)

    def power(self, x: AlgebraElement, n: int) -> AlgebraElement:
        """Left-nested power ``((x x) x) ... x``."""
        if n < 1:
            raise DomainError("powers start at 1")
        out = x
        for _ in range(n - 1):
            out = self.multiply(out, x)
        return out

    def associator(self, x, y, z) -> AlgebraElement:
        m = self.multiply
        return m(m(x, y), z) - m(x, m(y, z))

    def random_element(self, rng: random.Random) -> AlgebraElement:
        vals = []
        for _ in range(self.dimension):
            num = rng.choice([k for k in range(-9, 10) if k])
            den = rng.choice([k for k in range(-9, 10) if k])
            vals.append(Fraction(num, den))
        return self.from_dense(vals)


def multiply(A: TwistedAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return A.multiply(x, y)


# -- construction -----------------------------------------------------

def from_presentation(n: int, orders: Sequence[int], mu: Sequence,
                      beta: Bicharacter | None = None,
                      beta_values: Mapping | None = None) -> TwistedAlgebra:
    """``alg< x_1..x_n | x_i^{m_i} = mu_i, x_i x_j = beta(g_i,g_j) x_j x_i >``.

    Realised as ``F^sigma G`` for the closed-form ``sigma``; the defining
    relations are checked on the generators before returning.
    """
    if len(orders) != n:
        raise ValidationError(f"expected {n} generator orders, got {len(orders)}")
    G = FinAbGroup(orders)
    if beta is None:
        beta = Bicharacter(G, beta_values or {})
    elif beta.group != G:
        raise ValidationError("bicharacter was built for another group")
    A = TwistedAlgebra(G, build_sigma(G, beta, mu))
    gens = A.generators()
    one = A.unit()
    for i, x in enumerate(gens):
        if A.power(x, G.orders[i]) != one * Fraction(mu[i]):
            raise ValidationError(f"x_{i + 1}^{G.orders[i]} != mu_{i + 1}")
        for j, y in enumerate(gens):
            if A.multiply(x, y) != A.multiply(y, x) * beta.generator_value(i, j):
                raise ValidationError(f"commutation relation fails for x_{i + 1}, x_{j + 1}")
    return A


# -- structural checks ------------------------------------------------

class AssociativityReport(NamedTuple):
    associative: bool
    checked: int
    exhaustive: bool
    witness: tuple[int, int, int] | None


def associativity_report(A: TwistedAlgebra, samples: int = 100_000,
                         seed: int = 0) -> AssociativityReport:
    """Compare ``(eps_g eps_h) eps_k`` with ``eps_g (eps_h eps_k)`` on basis triples."""
    G = A.group
    n = G.size
    if n <= ASSOC_EXHAUSTIVE_MAX:
        mt = G.mul_table()
        if A.sigma.is_pm1:
            C = np.where(A.sigma.sign_table() == 1, -1, 1).astype(np.int64)
            if n <= 64:
                rows = np.arange(n)[:, None, None]
                left_idx = mt[mt]                            # (g,h,k): (gh)k
                right_idx = mt[rows, mt[None, :, :]]         # g(hk)
                left = C[:, :, None] * C[mt]
                right = C[None, :, :] * C[rows, mt[None, :, :]]
                bad = np.argwhere((left_idx != right_idx) | (left != right))
                if len(bad):
                    return AssociativityReport(False, n ** 3, True, tuple(int(x) for x in bad[0]))
                return AssociativityReport(True, n ** 3, True, None)
            for g in range(n):
                left_idx = mt[mt[g]]                     # (h, k): (gh)k
                right_idx = mt[g][mt]                    # (h, k): g(hk)
                left = C[g][:, None] * C[mt[g]]
                right = C * C[g][mt]
                bad = np.nonzero((left_idx != right_idx) | (left != right))
                if len(bad[0]):
                    return AssociativityReport(False, n ** 3, True,
                                               (g, int(bad[0][0]), int(bad[1][0])))
            return AssociativityReport(True, n ** 3, True, None)
        for g in range(n):
            for h in range(n):
                gh, c1 = A.basis_product(g, h)
                for k in range(n):
                    i1, c2 = A.basis_product(gh, k)
                    hk, c3 = A.basis_product(h, k)
                    i2, c4 = A.basis_product(g, hk)
                    if i1 != i2 or c1 * c2 != c3 * c4:
                        return AssociativityReport(False, n ** 3, True, (g, h, k))
        return AssociativityReport(True, n ** 3, True, None)
    rng = random.Random(seed)
    for _ in range(samples):
        g, h, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if not A.associator(A.basis(g), A.basis(h), A.basis(k)).is_zero():
            return AssociativityReport(False, samples, False, (g, h, k))
    return AssociativityReport(True, samples, False, None)


def is_associative(A: TwistedAlgebra) -> bool:
    return associativity_report(A).associative


class AlternativityReport(NamedTuple):
    trials: int
    max_violation: Fraction
    associator_witness: tuple[int, int, int, AlgebraElement] | None

    @property
    def alternative(self) -> bool:
        return self.max_violation == 0


def alternativity_report(A: TwistedAlgebra, trials: int = 100,
                         seed: int = 0) -> AlternativityReport:
    """Left/right alternative laws at seeded random rational points."""
    rng = random.Random(seed)
    m = A.multiply
    worst = Fraction(0)
    for _ in range(trials):
        x, y = A.random_element(rng), A.random_element(rng)
        xx = m(x, x)
        left = m(x, m(x, y)) - m(xx, y)
        right = m(m(y, x), x) - m(y, xx)
        worst = max(worst, left.max_abs(), right.max_abs())
    witness = None
    rep = associativity_report(A)
    if not rep.associative:
        g, h, k = rep.witness
        witness = (g, h, k, A.associator(A.basis(g), A.basis(h), A.basis(k)))
    return AlternativityReport(trials, worst, witness)


def is_graded_division(A: TwistedAlgebra) -> bool:
    """Every ``eps_g`` has a two-sided inverse, checked by multiplication.

    The candidate inverse of ``eps_g`` is the multiple of ``eps_{g^-1}``
    read off from ``eps_g eps_{g^-1}``; both products with it must give
    the unit.  Small +-1 algebras do this on the whole basis at once.
    """
    G = A.group
    if A.sigma.is_pm1 and G.size <= ASSOC_EXHAUSTIVE_MAX:
        return _graded_division_pm1(A)
    one = A.unit()
    for g in range(G.size):
        e = A.basis(g)
        if A.multiply(one, e) != e or A.multiply(e, one) != e:
            return False
    for g in range(G.size):
        e = A.basis(g)
        ginv = G.inv_index(g)
        prod = A.multiply(e, A.basis(ginv))
        c = prod.coeffs.get(0)
        if c is None or len(prod.coeffs) != 1:
            return False
        y = A.basis(ginv) * (one.coeffs[0] / c)
        if A.multiply(e, y) != one or A.multiply(y, e) != one:
            return False
    return True


def _graded_division_pm1(A: TwistedAlgebra) -> bool:
    G = A.group
    n = G.size
    mt = G.mul_table()
    C = np.where(A.sigma.sign_table() == 1, -1, 1).astype(np.int64)
    u = C[0, 0]                                      # unit is u * eps_e (u = 1/u)
    g = np.arange(n)
    # unit law on every basis element
    if np.any(mt[0] != g) or np.any(mt[:, 0] != g) or np.any(u * C[0] != 1) or np.any(u * C[:, 0] != 1):
        return False
    ginv = np.array([G.inv_index(int(i)) for i in g])
    if np.any(mt[g, ginv] != 0) or np.any(mt[ginv, g] != 0):
        return False
    c = C[g, ginv]                                   # eps_g eps_{g^-1} = c eps_e
    y = u * c                                        # y_g = (u / c) eps_{g^-1}; c = 1/c
    right = C[g, ginv] * y                           # eps_g y_g = right * eps_e
    left = y * C[ginv, g]                            # y_g eps_g = left * eps_e
    return bool(np.all(right == u) and np.all(left == u))


def center(A: TwistedAlgebra) -> list[AlgebraElement]:
    """Basis of ``{x : x eps_g = eps_g x for every generator g}``."""
    G = A.group
    if G.size > CENTER_MAX:
        raise CapacityError(f"center is limited to |G| <= {CENTER_MAX}")
    if not is_associative(A):
        raise DomainError("center needs an associative algebra")
    rows: list[dict[int, Fraction]] = []
    for i in range(G.rank):
        g = G.generator_index(i)
        # coefficient of eps_{hg} in x eps_g - eps_g x
        eqs: dict[int, dict[int, Fraction]] = {}
        for h in range(G.size):
            d = A.sigma.value(h, g) - A.sigma.value(g, h)
            if d:
                eqs.setdefault(G.mul_index(h, g), {})[h] = d
        rows.extend(eqs.values())
    return [A.element(v) for v in linalg.nullspace(rows, G.size)]


# -- gradings ---------------------------------------------------------

@dataclass
class GradingAssignment:
    """Homogeneous elements and their degrees in ``C_{orders}``."""

    orders: tuple[int, ...]
    pairs: list[tuple[GroupElement, AlgebraElement]]

    def __post_init__(self):
        self.group = FinAbGroup(self.orders)
        self.pairs = [(d if isinstance(d, GroupElement) else self.group.element(d), x)
                      for d, x in self.pairs]


def _inverse_of(A: TwistedAlgebra, x: AlgebraElement) -> AlgebraElement | None:
    """Solve ``x y = 1`` via the left multiplication matrix, then check ``y x = 1``."""
    n = A.dimension
    cols = [A.multiply(x, A.basis(b)).dense() for b in range(n)]
    mat = [[cols[c][r] for c in range(n)] for r in range(n)]
    y = linalg.solve(mat, A.unit().dense())
    if y is None:
        return None
    y = A.from_dense(y)
    if A.multiply(y, x) != A.unit():
        return None
    return y


def verify_grading(A: TwistedAlgebra, asg: GradingAssignment) -> bool:
    """Check that ``asg`` is a grading of ``A`` whose homogeneous elements are invertible.

    Only the algebra structure of ``A`` is used, not its own grading.
    """
    n = A.dimension
    if len(asg.pairs) != n:
        return False
    vecs = [x.dense() for _, x in asg.pairs]
    inv = linalg.inverse([[vecs[c][r] for c in range(n)] for r in range(n)])
    if inv is None:
        return False
    G = asg.group
    degs = [d for d, _ in asg.pairs]
    for a, (da, xa) in enumerate(asg.pairs):
        for b, (db, xb) in enumerate(asg.pairs):
            prod = A.multiply(xa, xb).dense()
            target = G.mul(da, db)
            for c in range(n):
                coord = sum(inv[c][r] * prod[r] for r in range(n) if prod[r])
                if coord and degs[c] != target:
                    return False
    return all(_inverse_of(A, x) is not None for _, x in asg.pairs)


def natural_grading(A: TwistedAlgebra) -> GradingAssignment:
    G = A.group
    return GradingAssignment(G.orders, [(G.from_index(i), A.basis(i)) for i in range(G.size)])


def is_graded_isomorphism(A: TwistedAlgebra, B: TwistedAlgebra, mu: Sequence) -> bool:
    """``eps_g -> mu(g) eps'_g`` respects products on every basis pair."""
    if A.group != B.group:
        return False
    G = A.group
    for a in range(G.size):
        for b in range(G.size):
            k, c = A.basis_product(a, b)
            k2, c2 = B.basis_product(a, b)
            if k != k2 or c * mu[k] != mu[a] * mu[b] * c2:
                return False
    return True


# -- JSON -------------------------------------------------------------

MAX_EXPORT = 1 << 10


def algebra_to_json(A: TwistedAlgebra) -> dict:
    G = A.group
    if G.size > MAX_EXPORT:
        raise CapacityError(f"structure-constant export is limited to dimension {MAX_EXPORT}")
    table = []
    for a in range(G.size):
        ea = list(G.exponents_of(a))
        for b in range(G.size):
            k, c = A.basis_product(a, b)
            table.append({"g": ea, "h": list(G.exponents_of(b)), "k": list(G.exponents_of(k)),
                          "num": c.numerator, "den": c.denominator})
    return {"orders": list(G.orders), "table": table}


def algebra_from_json(data: Mapping) -> TwistedAlgebra:
    """Rebuild an algebra, requiring one nonzero entry per basis pair."""
    try:
        G = FinAbGroup(data["orders"])
        entries = data["table"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed algebra JSON: {exc}") from None
    if G.size > MAX_EXPORT:
        raise CapacityError("algebra too large to import")
    table: list[list] = [[None] * G.size for _ in range(G.size)]
    for e in entries:
        try:
            g, h = G.element(e["g"]), G.element(e["h"])
            if list(g) != list(e["g"]) or list(h) != list(e["h"]):
                raise ValidationError(f"entry {e} uses unreduced exponents")
            num, den = int(e["num"]), int(e.get("den", 1))
        except (KeyError, TypeError, StructuralError) as exc:
            raise ValidationError(f"bad table entry {e}: {exc}") from None
        if "k" in e and list(G.mul(g, h)) != list(e["k"]):
            raise ValidationError(f"entry {e} breaks the grading: product degree must be g*h")
        if den == 0 or num == 0:
            raise ValidationError(f"entry {e} has a zero or undefined structure constant")
        a, b = G.index(g), G.index(h)
        if table[a][b] is not None:
            raise ValidationError(f"duplicate entry for {list(g)}, {list(h)}")
        table[a][b] = Fraction(num, den)
    if any(v is None for row in table for v in row):
        raise ValidationError("structure-constant table is not closed: missing basis pairs")
    return TwistedAlgebra(G, Cocycle(G, table=table))


# -- classical examples -----------------------------------------------

def complex_numbers() -> TwistedAlgebra:
    return from_presentation(1, [2], [-1])


def quaternions() -> TwistedAlgebra:
    return from_presentation(2, [2, 2], [-1, -1], beta_values={(1, 0): -1})


def exponent_cocycle(n: int, exponent) -> Cocycle:
    """``sigma(x, y) = (-1)^{exponent(x, y)}`` on ``C_2^n``."""
    G = FinAbGroup.elementary2(n)
    return Cocycle.from_function(G, lambda x, y: -1 if exponent(x.exponents, y.exponents) % 2 else 1)


def quaternion_exponent_cocycle() -> Cocycle:
    return exponent_cocycle(2, lambda x, y: x[0] * y[0] + (x[0] + x[1]) * y[1])


def octonion_cocycle() -> Cocycle:
    def e(x, y):
        cubic = y[0] * x[1] * x[2] + x[0] * y[1] * x[2] + x[0] * x[1] * y[2]
        return cubic + sum(x[i] * y[j] for i in range(3) for j in range(i, 3))
    return exponent_cocycle(3, e)


def octonions() -> TwistedAlgebra:
    s = octonion_cocycle()
    return TwistedAlgebra(s.group, s)


HAMILTON = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def hamilton_units(A: TwistedAlgebra) -> dict[str, AlgebraElement]:
    """``1, i, j, k`` with ``i, j`` the generators and ``k = i j``."""
    i, j = A.generators()
    return {"1": A.unit(), "i": i, "j": j, "k": A.multiply(i, j)}


def hamilton_mismatches(A: TwistedAlgebra) -> list[tuple[str, str]]:
    """Entries of the 4x4 Hamilton table that ``A`` fails to reproduce."""
    u = hamilton_units(A)
    bad = []
    for (a, b), (sign, c) in HAMILTON.items():
        if A.multiply(u[a], u[b]) != u[c] * sign:
            bad.append((a, b))
    return bad
