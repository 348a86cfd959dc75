"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line with its timing and then
asserts both the outcome and the time budget.
"""

from __future__ import annotations

import io
import math
import time
from fractions import Fraction

import pytest

from twisted_clifford import algebra, clifford, forms, models, suites
from twisted_clifford.cli import run

RESULTS: list[str] = []


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, elapsed: float, limit: float, detail: str = ""):
        within = elapsed <= limit
        status = "PASS" if ok and within else "FAIL"
        line = f"{status} criterion {number}: {title} [{elapsed:.2f}s / {limit:g}s]"
        if detail:
            line += f" {detail}"
        RESULTS.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        assert within, line
    return emit


def clock_oracle(p: int, q: int) -> str:
    """The five residue cases of the classification, spelled out."""
    N = p + q
    r = (p - q + 1) % 8
    if r in (1, 3):
        return f"M_{2 ** (N // 2)}(R)"
    if r in (5, 7):
        return f"M_{2 ** ((N - 2) // 2)}(H)"
    if r == 2:
        return "M_{0}(R)xM_{0}(R)".format(2 ** ((N - 1) // 2))
    if r in (0, 4):
        return f"M_{2 ** ((N - 1) // 2)}(C)"
    return "M_{0}(H)xM_{0}(H)".format(2 ** ((N - 3) // 2))


def test_criterion_1_clock(report):
    t0 = time.perf_counter()
    out = io.StringIO()
    code = run(["clock", "--max", "8"], out)
    lines = out.getvalue().splitlines()
    header, body = lines[0], [ln.split(",") for ln in lines[1:]]
    cells = {(int(r[0]), int(r[1])): r[4] for r in body}
    want = {(p, q) for p in range(9) for q in range(9 - p)}
    bad = [(p, q) for (p, q) in want if cells.get((p, q)) != clock_oracle(p, q)]
    row0 = [cells[(0, q)] for q in range(4)]
    ok = (code == 0 and header == "p,q,N,arf,iso_class,real_dimension" and set(cells) == want
          and not bad and row0 == ["M_1(R)", "M_1(C)", "M_1(H)", "M_1(H)xM_1(H)"]
          and cells[(0, 4)] == "M_2(H)")
    report(1, "clock --max 8 matches the residue cases cell by cell", ok,
           time.perf_counter() - t0, 1.0, f"({len(cells)} cells, {len(bad)} mismatches)")


def test_criterion_2_arf(report):
    t0 = time.perf_counter()
    bad = []
    count = 0
    for N in range(21):
        for p in range(N + 1):
            q = N - p
            count += 1
            brute = clifford.arf_pq_brute(p, q)
            closed = clifford.arf_closed(p, q)
            if brute.arf != closed or (brute.difference > 0) - (brute.difference < 0) != closed:
                bad.append((p, q))
    report(2, "arf_closed equals arf_pq_brute for all p+q <= 20", count == 231 and not bad,
           time.perf_counter() - t0, 30.0, f"({count} signatures, mismatches {bad})")


def test_criterion_3_periodicity(report):
    t0 = time.perf_counter()
    rep = clifford.check_periodicity(8)
    items = {v.item for v in rep.violations}
    report(3, "check_periodicity(8) has no violations in any of the four items",
           rep.ok and rep.checked == 4 * 81, time.perf_counter() - t0, 1.0,
           f"({rep.checked} identities, violating items {sorted(items)})")


def test_criterion_4_cocycles(report):
    t0 = time.perf_counter()
    checks = suites.cocycle_suite(max_size=64, trials=100, seed=0)
    orders = suites.groups_with_orders((2, 4), 64)
    ok = all(c.ok for c in checks) and len(checks) == len(orders) == 15
    failed = [c.name for c in checks if not c.ok]
    report(4, "build_sigma: 100 random (beta, mu) per group with orders in {2,4}, |G| <= 64",
           ok, time.perf_counter() - t0, 10.0, f"({len(checks)} groups, failed {failed})")


def test_criterion_5_binomial(report):
    t0 = time.perf_counter()
    ok = True
    for N in range(65):
        direct = tuple(sum(math.comb(N, k) for k in range(r, N + 1, 4)) for r in range(4))
        ok &= clifford.binomial_sums_direct(N) == direct == clifford.binomial_sums_closed(N)
    for N in range(21):
        s0, s1, s2, s3 = clifford.binomial_sums_closed(N)
        n0, on = s0 + s1 - s2 - s3, s0 - s1 - s2 + s3
        ok &= (n0 > 0) - (n0 < 0) == clifford.arf_closed(N, 0)
        ok &= (on > 0) - (on < 0) == clifford.arf_closed(0, N)
        ok &= n0 == forms.count_difference_pq(N, 0) and on == forms.count_difference_pq(0, N)
    report(5, "binomial sums agree for N <= 64 and signed sums give Arf(N,0), Arf(0,N) for N <= 20",
           bool(ok), time.perf_counter() - t0, 1.0)


def test_criterion_6_dickson(report):
    t0 = time.perf_counter()
    checks = suites.dickson(5)
    counts = [c.detail.split(",")[0] for c in checks]
    expected = [f"{2 ** (n + n * (n - 1) // 2)} forms" for n in range(1, 6)]
    report(6, "Dickson classification with verified witnesses for every n <= 5",
           all(c.ok for c in checks) and counts == expected, time.perf_counter() - t0, 60.0,
           f"({'; '.join(c.detail for c in checks)})")


def test_criterion_7_models(report):
    t0 = time.perf_counter()
    failed = []
    count = 0
    for N in range(7):
        for p in range(N + 1):
            q = N - p
            count += 1
            rep = models.verify_model(models.build_model((p, q)))
            if not (rep.passed and rep.expected_class == clifford.classify(p, q)):
                failed.append((p, q))
    report(7, "matrix models pass every check and match classify for p+q <= 6",
           count == 28 and not failed, time.perf_counter() - t0, 60.0,
           f"({count} signatures, failed {failed})")


def test_criterion_8_division_algebras(report):
    t0 = time.perf_counter()
    H = algebra.quaternions()
    O = algebra.octonions()
    mism = algebra.hamilton_mismatches(H)
    alt = algebra.alternativity_report(O, trials=100, seed=0)
    g, h, k, assoc = alt.associator_witness
    ok = (not mism and algebra.is_associative(H) and not algebra.is_associative(O)
          and not assoc.is_zero() and alt.alternative and alt.max_violation == Fraction(0))
    report(8, "Hamilton table, octonion associator, alternative laws at 100 seeded points",
           ok, time.perf_counter() - t0, 1.0,
           f"(associator(eps_{g}, eps_{h}, eps_{k}) = {assoc})")


def test_criterion_9_z2z4(report):
    t0 = time.perf_counter()
    A, asg = clifford.cl3_z2z4_assignment()
    _, perturbed = clifford.cl3_z2z4_assignment(swap=(1, 5))
    ok = algebra.verify_grading(A, asg) and not algebra.verify_grading(A, perturbed)
    report(9, "Z2xZ4 grading of Cl_3,0 accepted, perturbed assignment rejected",
           ok, time.perf_counter() - t0, 1.0)
