"""Real Clifford algebras ``Cl_{p,q}(R)`` as twisted group algebras over ``C_2^N``."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from typing import NamedTuple

from . import forms
from .algebra import TwistedAlgebra, from_presentation
from .cocycles import Bicharacter
from .errors import CapacityError, DomainError, UnsupportedInputError
from .groups import FinAbGroup

MAX_ALGEBRA_N = 16
MAX_BRUTE_N = 24


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise DomainError("signature entries must be non-negative")

    @property
    def N(self) -> int:
        return self.p + self.q

    def __iter__(self):
        return iter((self.p, self.q))


def _sig(sig_or_p, q=None) -> Signature:
    if isinstance(sig_or_p, Signature):
        return sig_or_p
    if q is None:
        return Signature(*sig_or_p)
    return Signature(sig_or_p, q)


# -- isomorphism classes ----------------------------------------------

_TAGS = {
    "R": ("M_{k}(R)", 1),
    "C": ("M_{k}(C)", 2),
    "H": ("M_{k}(H)", 4),
    "RR": ("M_{k}(R)xM_{k}(R)", 2),
    "HH": ("M_{k}(H)xM_{k}(H)", 8),
}


@dataclass(frozen=True)
class IsoClass:
    """Wedderburn type ``M_k(D)`` or ``M_k(D) x M_k(D)`` for ``D`` in R, C, H."""

    tag: str
    k: int

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise DomainError(f"unknown iso-class tag {self.tag!r}")
        if self.k < 1 or self.k & (self.k - 1):
            raise DomainError(f"matrix size must be a power of two, got {self.k}")

    @property
    def real_dimension(self) -> int:
        return _TAGS[self.tag][1] * self.k * self.k

    @property
    def center_dimension(self) -> int:
        return 1 if self.tag in ("R", "H") else 2

    def __str__(self):
        return _TAGS[self.tag][0].format(k=self.k)

    @classmethod
    def parse(cls, text: str) -> "IsoClass":
        m = _ISO_RE.match(text.strip())
        if not m:
            raise DomainError(f"cannot parse iso class {text!r}")
        k, d, doubled = int(m.group(1)), m.group(2), m.group(3)
        if doubled and d == "C":
            raise DomainError("M_k(C)xM_k(C) is not a real Clifford type")
        return cls(d * 2 if doubled else d, k)


_ISO_RE = re.compile(r"^M_(\d+)\(([RCH])\)(xM_\1\(\2\))?$")


# -- Gaussian integers ------------------------------------------------

@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int = 0

    def __add__(self, other):
        other = _gauss(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        other = _gauss(other)
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("only non-negative powers of Gaussian integers")
        out, base = GaussianInt(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def _gauss(x) -> GaussianInt:
    return x if isinstance(x, GaussianInt) else GaussianInt(int(x))


# -- construction -----------------------------------------------------

def clifford_algebra(sig) -> TwistedAlgebra:
    """``Cl_{p,q}`` over ``C_2^N``: ``x_i^2 = +1`` for ``i <= p``, ``-1`` after, all anticommuting."""
    sig = _sig(sig)
    N = sig.N
    if N > MAX_ALGEBRA_N:
        raise CapacityError(f"Clifford tables are limited to N <= {MAX_ALGEBRA_N}")
    G = FinAbGroup.elementary2(N)
    mu = [1] * sig.p + [-1] * sig.q
    return from_presentation(N, [2] * N, mu, Bicharacter.all_minus(G))


# -- Arf invariants ---------------------------------------------------

_ARF_BY_RESIDUE = {0: 0, 1: 1, 2: 1, 3: 1, 4: 0, 5: -1, 6: -1, 7: -1}


def arf_closed(sig_or_p, q=None) -> int:
    """Arf invariant of ``mu_{p,q}`` from ``(p - q + 1) mod 8``."""
    sig = _sig(sig_or_p, q)
    return _ARF_BY_RESIDUE[(sig.p - sig.q + 1) % 8]


def arf_pq_brute(sig_or_p, q=None, workers: int = 1) -> forms.ArfCount:
    """Arf invariant of ``q_{p,q}`` by enumerating all ``2^N`` vectors."""
    sig = _sig(sig_or_p, q)
    if sig.N > MAX_BRUTE_N:
        raise CapacityError(f"brute-force Arf is limited to N <= {MAX_BRUTE_N}")
    diff = forms.count_difference_pq(sig.p, sig.q, workers=workers)
    return forms.ArfCount((diff > 0) - (diff < 0), diff)


# -- classification ---------------------------------------------------

def _iso_from(N: int, arf: int) -> IsoClass:
    if N % 2 == 0:
        if arf == 1:
            return IsoClass("R", 2 ** (N // 2))
        if arf == -1:
            return IsoClass("H", 2 ** ((N - 2) // 2))
        raise DomainError("an even-dimensional form with dim rad <= 1 has nonzero Arf invariant")
    if arf == 1:
        return IsoClass("RR", 2 ** ((N - 1) // 2))
    if arf == -1:
        return IsoClass("HH", 2 ** ((N - 3) // 2))
    return IsoClass("C", 2 ** ((N - 1) // 2))


def classify(sig_or_p, q=None) -> IsoClass:
    sig = _sig(sig_or_p, q)
    return _iso_from(sig.N, arf_closed(sig))


def classify_form(m: forms.MultQuadForm) -> IsoClass:
    """Iso class of the algebra attached to a form with ``dim rad <= 1``."""
    q = m.base
    if forms.radical_dim(q) > 1:
        raise UnsupportedInputError("forms with dim rad(b_q) >= 2 are outside the classified family")
    return _iso_from(q.n, forms.arf_brute(q).arf)


M2R = IsoClass("R", 2)
QUAT = IsoClass("H", 1)


def tensor_iso(a: IsoClass, b: IsoClass) -> IsoClass:
    """``a (x)_R b`` for ``b`` one of ``M_2(R)`` and ``H``."""
    if b == M2R:
        return IsoClass(a.tag, 2 * a.k)
    if b == QUAT:
        return {
            "R": IsoClass("H", a.k),
            "C": IsoClass("C", 2 * a.k),
            "H": IsoClass("R", 4 * a.k),
            "RR": IsoClass("HH", a.k),
            "HH": IsoClass("RR", 4 * a.k),
        }[a.tag]
    raise DomainError(f"tensor_iso only supports M_2(R) and H on the right, got {b}")


class PeriodicityViolation(NamedTuple):
    item: int
    p: int
    q: int
    lhs: IsoClass
    rhs: IsoClass


class PeriodicityReport(NamedTuple):
    checked: int
    violations: list[PeriodicityViolation]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_periodicity(max_pq: int = 8) -> PeriodicityReport:
    if max_pq > 16:
        raise CapacityError("periodicity checks are limited to p, q <= 16")
    bad = []
    checked = 0
    for p in range(max_pq + 1):
        for q in range(max_pq + 1):
            cases = [
                (1, classify(p + 1, q + 1), tensor_iso(classify(p, q), M2R)),
                (2, classify(p + 2, q), tensor_iso(classify(q, p), M2R)),
                (3, classify(p, q + 2), tensor_iso(classify(q, p), QUAT)),
                (4, classify(p + 4, q), classify(p, q + 4)),
            ]
            for item, lhs, rhs in cases:
                checked += 1
                if lhs != rhs:
                    bad.append(PeriodicityViolation(item, p, q, lhs, rhs))
    return PeriodicityReport(checked, bad)


# -- binomial sums ----------------------------------------------------

def binomial_sums_direct(N: int) -> tuple[int, int, int, int]:
    """``S_r = sum of C(N, k) over k = r mod 4``."""
    if N < 0:
        raise DomainError("N must be non-negative")
    sums = [0, 0, 0, 0]
    for k in range(N + 1):
        sums[k % 4] += math.comb(N, k)
    return tuple(sums)


def binomial_sums_closed(N: int) -> tuple[int, int, int, int]:
    """Same sums via ``(1+t)^N`` in ``R[t]/(t^4-1) = R x R x R[i]``.

    The image of ``1+t`` is ``(2, 0, 1+i)``; its ``N``-th power is mapped
    back with the idempotents ``(1+t+t^2+t^3)/4``, ``(1-t+t^2-t^3)/4``,
    ``(1-t^2)/2`` and ``i -> (t-t^3)/2``.
    """
    if N < 0:
        raise DomainError("N must be non-negative")
    a = 2 ** N
    b = 0 ** N
    z = GaussianInt(1, 1) ** N
    c, d = z.re, z.im
    num = (a + b + 2 * c, a - b + 2 * d, a + b - 2 * c, a - b - 2 * d)
    if any(x % 4 for x in num):
        raise ArithmeticError("closed-form binomial sums are not integral")
    return tuple(x // 4 for x in num)


def signed_count_N0(N: int) -> int:
    s0, s1, s2, s3 = binomial_sums_closed(N)
    return s0 + s1 - s2 - s3


def signed_count_0N(N: int) -> int:
    s0, s1, s2, s3 = binomial_sums_closed(N)
    return s0 - s1 - s2 + s3


# -- tables -----------------------------------------------------------

def clock_rows(max_n: int) -> list[dict]:
    if max_n > 32:
        raise CapacityError("clock tables are limited to N <= 32")
    rows = []
    for p in range(max_n + 1):
        for q in range(max_n + 1 - p):
            iso = classify(p, q)
            rows.append({"p": p, "q": q, "N": p + q, "arf": arf_closed(p, q),
                         "iso_class": str(iso), "real_dimension": iso.real_dimension})
    return rows


def clock_table(max_n: int, fmt: str = "csv") -> str:
    rows = clock_rows(max_n)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["p", "q", "N", "arf", "iso_class", "real_dimension"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps({"max": max_n, "entries": rows}, indent=1) + "\n"
    if fmt == "md":
        cell = {(r["p"], r["q"]): r["iso_class"] for r in rows}
        lines = ["| p \\ q | " + " | ".join(str(q) for q in range(max_n + 1)) + " |",
                 "|---" * (max_n + 2) + "|"]
        for p in range(max_n + 1):
            lines.append(f"| {p} | " + " | ".join(cell.get((p, q), "") for q in range(max_n + 1)) + " |")
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown table format {fmt!r}")


# -- a non-Clifford division grading on Cl_3 ---------------------------

def cl3_z2z4_assignment(swap: tuple[int, int] | None = None):
    """The ``Z_2 x Z_4 = <a> x <b>`` division grading of ``Cl_{3,0}``.

    Returns ``(algebra, assignment)``.  ``swap`` exchanges the degrees of
    two listed elements to produce a perturbed assignment.
    """
    from .algebra import GradingAssignment

    A = clifford_algebra((3, 0))
    v1, v2, v3 = A.generators()
    m = A.multiply
    one = A.unit()
    listed = [
        ((0, 0), one),
        ((1, 0), v1),
        ((0, 1), v2 + m(v3, v1)),
        ((1, 1), v3 - m(v1, v2)),
        ((0, 2), m(m(v1, v2), v3)),
        ((1, 2), m(v2, v3)),
        ((0, 3), v2 - m(v3, v1)),
        ((1, 3), v3 + m(v1, v2)),
    ]
    if swap is not None:
        i, j = swap
        (di, xi), (dj, xj) = listed[i], listed[j]
        listed[i], listed[j] = (dj, xi), (di, xj)
    return A, GradingAssignment((2, 4), listed)
