"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of :class:`Check` lines; a suite passes when
every line does.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from typing import Callable, NamedTuple

from . import algebra, clifford, cocycles, forms, models
from .groups import FinAbGroup


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f" ({self.detail})" if self.detail else "")


# -- Clifford clock ---------------------------------------------------

def expected_clock_entry(p: int, q: int) -> str:
    """The iso class read straight from the residue of ``p - q + 1`` mod 8.

    Written independently of :func:`clifford.classify`, which goes through
    the Arf invariant.
    """
    N = p + q
    r = (p - q + 1) % 8
    if N % 2 == 0:
        if r in (1, 3):
            return f"M_{2 ** (N // 2)}(R)"
        if r in (5, 7):
            return f"M_{2 ** ((N - 2) // 2)}(H)"
    else:
        if r == 2:
            k = 2 ** ((N - 1) // 2)
            return f"M_{k}(R)xM_{k}(R)"
        if r in (0, 4):
            return f"M_{2 ** ((N - 1) // 2)}(C)"
        if r == 6:
            k = 2 ** ((N - 3) // 2)
            return f"M_{k}(H)xM_{k}(H)"
    raise AssertionError(f"residue {r} impossible for N={N}")


def clock(max_n: int = 8) -> list[Check]:
    rows = clifford.clock_rows(max_n)
    bad = [(r["p"], r["q"]) for r in rows if r["iso_class"] != expected_clock_entry(r["p"], r["q"])]
    dims = [(r["p"], r["q"]) for r in rows if r["real_dimension"] != 2 ** r["N"]]
    return [
        Check(f"clock cells match the residue cases for p+q <= {max_n}", not bad,
              f"{len(rows)} cells" + (f", mismatches {bad[:5]}" if bad else "")),
        Check("real dimension is 2^N in every cell", not dims, f"{len(rows)} cells"),
    ]


# -- Arf --------------------------------------------------------------

def arf(max_n: int = 20, workers: int = 1) -> list[Check]:
    bad = []
    count = 0
    for N in range(max_n + 1):
        for p in range(N + 1):
            q = N - p
            count += 1
            brute = clifford.arf_pq_brute(p, q, workers=workers)
            if brute.arf != clifford.arf_closed(p, q):
                bad.append((p, q))
    return [Check(f"closed Arf formula equals brute force for p+q <= {max_n}", not bad,
                  f"{count} signatures" + (f", mismatches {bad[:5]}" if bad else ""))]


def arf_relations(max_pq: int = 16) -> list[Check]:
    a = clifford.arf_closed
    rng = range(max_pq + 1)
    pairs = list(itertools.product(rng, rng))
    rel = {
        "Arf(p+1,q+1) = Arf(p,q)": all(a(p + 1, q + 1) == a(p, q) for p, q in pairs),
        "Arf(p+2,q) = Arf(q,p)": all(a(p + 2, q) == a(q, p) for p, q in pairs),
        "Arf(p,q+2) = -Arf(q,p)": all(a(p, q + 2) == -a(q, p) for p, q in pairs),
        "Arf(p+4,q) = Arf(p,q+4)": all(a(p + 4, q) == a(p, q + 4) for p, q in pairs),
    }
    return [Check(name, ok, f"p,q <= {max_pq}") for name, ok in rel.items()]


# -- periodicity ------------------------------------------------------

def periodicity(max_pq: int = 8) -> list[Check]:
    rep = clifford.check_periodicity(max_pq)
    out = []
    for item in (1, 2, 3, 4):
        bad = [v for v in rep.violations if v.item == item]
        out.append(Check(f"periodicity item {item} for p,q <= {max_pq}", not bad,
                         f"{len(bad)} violations" + (f", first {bad[0]}" if bad else "")))
    return out + arf_relations(max_pq)


# -- cocycles ---------------------------------------------------------

def groups_with_orders(allowed=(2, 4), max_size: int = 64) -> list[tuple[int, ...]]:
    """Non-decreasing order tuples from ``allowed`` with product ``<= max_size``."""
    out = []
    for r in itertools.count(1):
        if min(allowed) ** r > max_size:
            break
        for combo in itertools.combinations_with_replacement(sorted(allowed), r):
            if math.prod(combo) <= max_size:
                out.append(combo)
    return out


def random_parameters(G: FinAbGroup, rng: random.Random):
    n = G.rank
    vals = {}
    for i in range(n):
        for j in range(i):
            even = G.orders[i] % 2 == 0 and G.orders[j] % 2 == 0
            vals[(i, j)] = rng.choice((1, -1)) if even else 1
    mu = [rng.choice((1, -1)) for _ in range(n)]
    return cocycles.Bicharacter(G, vals), mu


def cocycle_suite(max_size: int = 64, trials: int = 100, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    out = []
    for orders in groups_with_orders((2, 4), max_size):
        G = FinAbGroup(orders)
        fails = {"cocycle": 0, "associative": 0, "graded-division": 0, "beta": 0, "powers": 0}
        for _ in range(trials):
            beta, mu = random_parameters(G, rng)
            s = cocycles.build_sigma(G, beta, mu)
            if not cocycles.check_cocycle(s).ok:
                fails["cocycle"] += 1
                continue
            A = algebra.TwistedAlgebra(G, s)
            fails["associative"] += not algebra.is_associative(A)
            fails["graded-division"] += not algebra.is_graded_division(A)
            gens = [G.generator(i) for i in range(G.rank)]
            fails["beta"] += cocycles.beta_of(s, check_limit=0) != beta
            fails["powers"] += any(cocycles.power_scalar(s, g, m) != mu[i]
                                   for i, (g, m) in enumerate(zip(gens, G.orders)))
        bad = {k: v for k, v in fails.items() if v}
        out.append(Check(f"orders {list(orders)}: {trials} random (beta, mu)", not bad,
                         f"|G|={G.size}, exhaustive {G.size ** 3} triples each"
                         + (f", failures {bad}" if bad else "")))
    return out


# -- Dickson ----------------------------------------------------------

def all_forms(n: int):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for lin_bits in range(1 << n):
        lin = [i for i in range(n) if lin_bits >> i & 1]
        for quad_bits in range(1 << len(pairs)):
            yield forms.QuadraticFormF2.from_terms(
                n, lin, [pr for k, pr in enumerate(pairs) if quad_bits >> k & 1])


def dickson_dimension(n: int) -> Check:
    canon = {k: forms.dickson_canonical(n, k) for k in forms.canonical_kinds(n)}
    total = classified = 0
    bad = []
    for q in all_forms(n):
        total += 1
        if forms.radical_dim(q) > 1:
            continue
        classified += 1
        matches = [k for k, c in canon.items() if forms.equivalent(q, c)]
        if len(matches) != 1:
            bad.append((q.polynomial(), matches))
            continue
        phi = forms.find_witness(q, canon[matches[0]])
        if phi is None or not forms.is_witness(phi, q, canon[matches[0]]):
            bad.append((q.polynomial(), "no witness"))
    return Check(f"n={n}: every form with dim rad <= 1 has one canonical class and a witness",
                 not bad, f"{total} forms, {classified} with dim rad <= 1"
                 + (f", failures {bad[:3]}" if bad else ""))


def dickson(max_n: int = 5) -> list[Check]:
    return [dickson_dimension(n) for n in range(1, max_n + 1)]


# -- matrix models ----------------------------------------------------

def model_suite(max_n: int = 6) -> list[Check]:
    out = []
    for N in range(max_n + 1):
        for p in range(N + 1):
            q = N - p
            rep = models.verify_model(models.build_model((p, q)))
            detail = (f"d={rep.d}, rank={rep.span_rank}, center={rep.center_dim}, "
                      f"disc={rep.discriminant_sign}, traces={rep.trace_signature}, "
                      f"class {rep.expected_class}")
            out.append(Check(f"model Cl_{p},{q}", rep.passed, detail))
    return out


# -- binomial sums ----------------------------------------------------

def binomial(max_n: int = 64, arf_max: int = 20) -> list[Check]:
    agree = all(clifford.binomial_sums_direct(N) == clifford.binomial_sums_closed(N)
                for N in range(max_n + 1))
    totals = all(sum(clifford.binomial_sums_closed(N)) == 2 ** N for N in range(max_n + 1))

    def sign(x):
        return (x > 0) - (x < 0)

    n0 = all(sign(clifford.signed_count_N0(N)) == clifford.arf_closed(N, 0)
             for N in range(arf_max + 1))
    on = all(sign(clifford.signed_count_0N(N)) == clifford.arf_closed(0, N)
             for N in range(arf_max + 1))
    return [
        Check(f"direct and Gaussian-integer binomial sums agree for N <= {max_n}", agree),
        Check(f"S0+S1+S2+S3 = 2^N for N <= {max_n}", totals),
        Check(f"sign(S0+S1-S2-S3) = Arf(N,0) for N <= {arf_max}", n0),
        Check(f"sign(S0-S1-S2+S3) = Arf(0,N) for N <= {arf_max}", on),
    ]


# -- demos ------------------------------------------------------------

def division_demos(trials: int = 100, seed: int = 0) -> list[Check]:
    H = algebra.quaternions()
    O = algebra.octonions()
    mism = algebra.hamilton_mismatches(H)
    rep = algebra.alternativity_report(O, trials=trials, seed=seed)
    w = rep.associator_witness
    return [
        Check("quaternions reproduce the Hamilton table", not mism, f"mismatches {mism}" if mism else "16 products"),
        Check("octonions are not associative", w is not None and not w[3].is_zero(),
              f"associator on basis {w[:3]} = {w[3]}" if w else "no witness"),
        Check(f"octonions satisfy both alternative laws at {trials} random points",
              rep.alternative, f"max violation {rep.max_violation}"),
        Check("quaternions and octonions are graded-division algebras",
              algebra.is_graded_division(H) and algebra.is_graded_division(O)),
    ]


# -- Z_2 x Z_4 grading ------------------------------------------------

def z2z4_grading() -> list[Check]:
    A, asg = clifford.cl3_z2z4_assignment()
    _, bad = clifford.cl3_z2z4_assignment(swap=(1, 5))
    return [
        Check("Z2xZ4 assignment on Cl_3,0 is a division grading", algebra.verify_grading(A, asg)),
        Check("degrees of v1 and v2v3 swapped is rejected", not algebra.verify_grading(A, bad)),
    ]


SUITES: dict[str, Callable[..., list[Check]]] = {
    "periodicity": periodicity,
    "cocycles": cocycle_suite,
    "dickson": dickson,
    "models": model_suite,
    "remark-z2z4": z2z4_grading,
    "arf": arf,
    "binomial": binomial,
    "clock": clock,
    "demos": division_demos,
}

DEFAULT_MAX = {
    "periodicity": 8,
    "cocycles": 64,
    "dickson": 5,
    "models": 6,
    "arf": 20,
    "binomial": 64,
    "clock": 8,
}


def run_suite(name: str, max_value: int | None = None, seed: int = 0, workers: int = 1):
    fn = SUITES[name]
    kwargs = {}
    if name in DEFAULT_MAX:
        kwargs[{"periodicity": "max_pq", "cocycles": "max_size", "dickson": "max_n",
                "models": "max_n", "arf": "max_n", "binomial": "max_n",
                "clock": "max_n"}[name]] = DEFAULT_MAX[name] if max_value is None else max_value
    if name in ("cocycles", "demos"):
        kwargs["seed"] = seed
    if name == "arf":
        kwargs["workers"] = workers
    t0 = time.perf_counter()
    checks = fn(**kwargs)
    return checks, time.perf_counter() - t0
