"""Explicit rational matrix models of ``Cl_{p,q}(R)``.

Models are built recursively from the three periodicity isomorphisms and
then checked directly on the matrices, independently of the
cocycle/Arf machinery: defining relations, rank of the ``2^N`` monomials,
center dimension, the minimal polynomial of a central element, and the
trace signature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from . import forms, linalg
from .clifford import IsoClass, Signature, classify
from .errors import CapacityError, DomainError, StructuralError, ValidationError

MAX_MODEL_N = 8
_INT64_SAFE = 1 << 62


class RatMatrix:
    """Exact rational matrix stored as integer numerators over one denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: int = 1):
        arr = np.asarray(num)
        if arr.ndim != 2:
            raise StructuralError("RatMatrix needs a 2-d array")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if arr.dtype == object:
            arr = np.array([[int(x) for x in row] for row in arr.tolist()], dtype=object
                           ).reshape(arr.shape)
        else:
            arr = arr.astype(np.int64)
        if den < 0:
            arr, den = -arr, -den
        g = math.gcd(den, *[int(x) for x in np.unique(arr).tolist()]) if arr.size else den
        if g > 1:
            arr, den = arr // g, den // g
        self.num = self._shrink(arr)
        self.den = int(den)

    @staticmethod
    def _shrink(arr):
        if arr.dtype == object and arr.size and max(abs(int(x)) for x in arr.flat) < _INT64_SAFE:
            return arr.astype(np.int64)
        return arr

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        fr = [[Fraction(x) for x in r] for r in rows]
        den = math.lcm(*[x.denominator for r in fr for x in r]) if fr and fr[0] else 1
        return cls(np.array([[int(x * den) for x in r] for r in fr], dtype=object), den)

    @classmethod
    def identity(cls, d: int) -> "RatMatrix":
        return cls(np.eye(d, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape

    def _bound(self) -> int:
        return int(np.max(np.abs(self.num))) if self.num.size else 0

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape[1] != other.shape[0]:
            raise StructuralError(f"cannot multiply {self.shape} by {other.shape}")
        inner = self.shape[1]
        if self._bound() * other._bound() * max(inner, 1) < _INT64_SAFE:
            prod = self.num.astype(np.int64) @ other.num.astype(np.int64)
        else:
            prod = self.num.astype(object) @ other.num.astype(object)
        return RatMatrix(prod, self.den * other.den)

    def _aligned(self, other: "RatMatrix"):
        if self.shape != other.shape:
            raise StructuralError("shape mismatch")
        den = math.lcm(self.den, other.den)
        return (self.num.astype(object) * (den // self.den),
                other.num.astype(object) * (den // other.den), den)

    def __add__(self, other):
        a, b, den = self._aligned(other)
        return RatMatrix(a + b, den)

    def __sub__(self, other):
        a, b, den = self._aligned(other)
        return RatMatrix(a - b, den)

    def __neg__(self):
        return RatMatrix(-self.num, self.den)

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix(self.num.astype(object) * c.numerator, self.den * c.denominator)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.den == other.den and bool(
            np.all(self.num == other.num))

    def __hash__(self):
        return hash((self.shape, self.den, tuple(int(x) for x in self.num.flat)))

    def kron(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(np.kron(self.num, other.num), self.den * other.den)

    def trace(self) -> Fraction:
        return Fraction(int(np.trace(self.num)), self.den)

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), self.den)

    def is_zero(self) -> bool:
        return not np.any(self.num)

    def rank(self) -> int:
        return linalg.bareiss_rank(self.num.tolist())

    def to_strings(self) -> list[list[str]]:
        out = []
        for row in self.num.tolist():
            fr = [Fraction(int(x), self.den) for x in row]
            out.append([f"{f.numerator}/{f.denominator}" for f in fr])
        return out

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> "RatMatrix":
        return cls.from_fractions([[Fraction(s) for s in r] for r in rows])

    def __repr__(self):
        return f"RatMatrix({self.num.tolist()}, den={self.den})"


def _mat(rows) -> RatMatrix:
    return RatMatrix(np.array(rows, dtype=np.int64))


A_DIAG = _mat([[1, 0], [0, -1]])
B_PLUS = _mat([[0, 1], [1, 0]])
B_MINUS = _mat([[0, 1], [-1, 0]])


def _quaternion_left_regular():
    # basis 1, i, j, k; column c is the image of basis vector c
    table = {
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    }
    names = ["1", "i", "j", "k"]
    out = {}
    for u in ("i", "j"):
        m = np.zeros((4, 4), dtype=np.int64)
        for c, v in enumerate(names):
            sign, w = table[(u, v)]
            m[names.index(w), c] = sign
        out[u] = RatMatrix(m)
    out["k"] = out["i"] @ out["j"]
    return out["i"], out["j"], out["k"]


I_H, J_H, K_H = _quaternion_left_regular()


@dataclass(frozen=True)
class MatrixModel:
    """Generators ``gen_1..gen_N`` of a common size ``d``.

    The first ``p`` square to the identity and the last ``q`` to minus the
    identity; all pairs anticommute.
    """

    sig: Signature
    generators: tuple[RatMatrix, ...]

    @property
    def d(self) -> int:
        if not self.generators:
            return 1
        return self.generators[0].shape[0]

    def relation_failures(self) -> list[str]:
        d = self.d
        one = RatMatrix.identity(d)
        p = self.sig.p
        bad = []
        if len(self.generators) != self.sig.N:
            return [f"expected {self.sig.N} generators, got {len(self.generators)}"]
        for i, g in enumerate(self.generators):
            if g.shape != (d, d):
                bad.append(f"gen_{i + 1} has shape {g.shape}")
                continue
            want = one if i < p else -one
            if g @ g != want:
                bad.append(f"gen_{i + 1}^2 != {'+' if i < p else '-'}1")
        for i, g in enumerate(self.generators):
            for j in range(i + 1, self.sig.N):
                h = self.generators[j]
                if not (g @ h + h @ g).is_zero():
                    bad.append(f"gen_{i + 1}, gen_{j + 1} do not anticommute")
        return bad

    def monomials(self) -> list[RatMatrix]:
        """``gen_I`` for every subset ``I``, indices increasing.

        Subsets are packed like ``C_2^N`` elements: index ``i`` at bit
        ``N-1-i``, so entry 0 is the identity.
        """
        N = self.sig.N
        out = [RatMatrix.identity(self.d)]
        for w in range(1, 1 << N):
            low = (w & -w).bit_length() - 1          # highest index in the subset
            out.append(out[w & (w - 1)] @ self.generators[N - 1 - low])
        return out

    def to_json(self) -> dict:
        return {"p": self.sig.p, "q": self.sig.q, "d": self.d,
                "generators": [g.to_strings() for g in self.generators]}

    @classmethod
    def from_json(cls, data) -> "MatrixModel":
        sig = Signature(int(data["p"]), int(data["q"]))
        return _checked(sig, [RatMatrix.from_strings(g) for g in data["generators"]])


def _checked(sig: Signature, gens: Sequence[RatMatrix]) -> MatrixModel:
    p = sig.p
    d = gens[0].shape[0] if gens else 1
    one = RatMatrix.identity(d)
    pos = [g for g in gens if g @ g == one]
    neg = [g for g in gens if g @ g == -one]
    if len(pos) != p or len(pos) + len(neg) != len(gens):
        raise ValidationError(f"generators do not have signature {(sig.p, sig.q)}")
    model = MatrixModel(sig, tuple(pos + neg))
    bad = model.relation_failures()
    if bad:
        raise ValidationError(f"model for {(sig.p, sig.q)} fails: {bad[0]}")
    return model


BASE_SIGNATURES = {(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)}


def base_model(sig) -> MatrixModel:
    sig = sig if isinstance(sig, Signature) else Signature(*sig)
    key = (sig.p, sig.q)
    if key not in BASE_SIGNATURES:
        raise DomainError(f"no base model for {key}")
    gens = {
        (0, 0): [],
        (1, 0): [A_DIAG],
        (0, 1): [_mat([[0, -1], [1, 0]])],
        (1, 1): [A_DIAG, _mat([[0, 1], [-1, 0]])],
        (2, 0): [A_DIAG, B_PLUS],
        (0, 2): [I_H, J_H],
    }[key]
    return _checked(sig, gens)


def build_model(sig) -> MatrixModel:
    sig = sig if isinstance(sig, Signature) else Signature(*sig)
    if sig.N > MAX_MODEL_N:
        raise CapacityError(f"matrix models are limited to p+q <= {MAX_MODEL_N}")
    return _build(sig.p, sig.q)


@lru_cache(maxsize=None)
def _build(p: int, q: int) -> MatrixModel:
    sig = Signature(p, q)
    if p >= 1 and q >= 1:
        # Cl_{p,q} = Cl_{p-1,q-1} (x) M_2(R)
        inner = _build(p - 1, q - 1)
        d = inner.d
        gens = [m.kron(A_DIAG) for m in inner.generators]
        gens += [RatMatrix.identity(d).kron(B_PLUS), RatMatrix.identity(d).kron(B_MINUS)]
    elif p >= 2:
        # Cl_{p,0} = Cl_{0,p-2} (x) M_2(R)
        inner = _build(q, p - 2)
        one = RatMatrix.identity(inner.d)
        gens = [one.kron(A_DIAG), one.kron(B_PLUS)]
        gens += [m.kron(A_DIAG @ B_PLUS) for m in inner.generators]
    elif q >= 2:
        # Cl_{0,q} = Cl_{q-2,0} (x) H
        inner = _build(q - 2, p)
        one = RatMatrix.identity(inner.d)
        gens = [one.kron(I_H), one.kron(J_H)]
        gens += [m.kron(K_H) for m in inner.generators]
    else:
        return base_model(sig)
    return _checked(sig, gens)


# -- verification -----------------------------------------------------

class ModelReport(NamedTuple):
    sig: Signature
    d: int
    relations_ok: bool
    span_rank: int
    center_dim: int
    discriminant_sign: int | None
    trace_signature: int
    expected_class: IsoClass
    expected_count_difference: int

    @property
    def rank_ok(self) -> bool:
        return self.span_rank == 2 ** self.sig.N

    @property
    def center_ok(self) -> bool:
        return self.center_dim == self.expected_class.center_dimension

    @property
    def discriminant_ok(self) -> bool:
        tag = self.expected_class.tag
        if tag in ("R", "H"):
            return self.discriminant_sign is None
        return self.discriminant_sign == (-1 if tag == "C" else 1)

    @property
    def trace_ok(self) -> bool:
        return self.trace_signature == self.expected_count_difference

    @property
    def passed(self) -> bool:
        return (self.relations_ok and self.rank_ok and self.center_ok
                and self.discriminant_ok and self.trace_ok)


def _flat(mats: Sequence[RatMatrix]) -> np.ndarray:
    if any(m.den != 1 for m in mats):
        raise ValidationError("monomials are expected to be integral")
    return np.stack([m.num.astype(np.int64).ravel() for m in mats])


def _gram_rows(P: np.ndarray) -> list[dict[int, int]]:
    # rank(P) = rank(P P^T) and ker(P^T P) = ker(P) over Q
    G = P @ P.T
    return [{j: int(v) for j, v in enumerate(row) if v} for row in G.tolist()]


def span_rank(monos: Sequence[RatMatrix]) -> int:
    return linalg.rank(_gram_rows(_flat(monos)))


def center_basis(model: MatrixModel, monos: Sequence[RatMatrix] | None = None):
    """Coefficient vectors ``c`` with ``sum c_I gen_I`` commuting with every generator."""
    monos = monos if monos is not None else model.monomials()
    n = len(monos)
    M = np.zeros((n, n), dtype=np.int64)
    for g in model.generators:
        C = _flat([m @ g - g @ m for m in monos])
        M += C @ C.T
    rows = [{j: int(v) for j, v in enumerate(row) if v} for row in M.tolist()]
    return linalg.nullspace(rows, n)


def _combine(monos, coeffs: dict[int, Fraction]) -> RatMatrix:
    den = math.lcm(*[c.denominator for c in coeffs.values()])
    acc = np.zeros(monos[0].shape, dtype=object)
    for i, c in coeffs.items():
        acc = acc + monos[i].num.astype(object) * int(c * den)
    return RatMatrix(acc, den)


def discriminant_sign(model: MatrixModel, z: RatMatrix) -> int:
    """Sign of ``a^2 + 4b`` where ``z0^2 = a z0 + b`` for the traceless part ``z0`` of ``z``."""
    d = model.d
    one = RatMatrix.identity(d)
    z0 = z - one.scale(z.trace() / d)
    if z0.is_zero():
        raise ValidationError("central element is a scalar")
    sq = z0 @ z0
    b = sq.trace() / d
    r, c = map(int, np.argwhere(z0.num != 0)[0])
    a = (sq.entry(r, c) - (b if r == c else 0)) / z0.entry(r, c)
    if sq != z0.scale(a) + one.scale(b):
        raise ValidationError("central element has no quadratic minimal polynomial")
    disc = a * a + 4 * b
    return (disc > 0) - (disc < 0)


def trace_signature(model: MatrixModel, monos: Sequence[RatMatrix] | None = None) -> int:
    """``sum_I sign(trace(gen_I^2))``."""
    monos = monos if monos is not None else model.monomials()
    total = 0
    for m in monos:
        t = (m @ m).trace()
        total += (t > 0) - (t < 0)
    return total


def verify_model(model: MatrixModel) -> ModelReport:
    sig = model.sig
    monos = model.monomials()
    relations_ok = not model.relation_failures()
    rank = span_rank(monos)
    cen = center_basis(model, monos)
    disc = None
    if len(cen) == 2:
        vec = next(v for v in cen if any(i != 0 for i in v))
        disc = discriminant_sign(model, _combine(monos, vec))
    return ModelReport(
        sig=sig, d=model.d, relations_ok=relations_ok, span_rank=rank,
        center_dim=len(cen), discriminant_sign=disc,
        trace_signature=trace_signature(model, monos),
        expected_class=classify(sig),
        expected_count_difference=forms.count_difference_pq(sig.p, sig.q))
