from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twisted_clifford import algebra, clifford, cocycles
from twisted_clifford.algebra import GradingAssignment, TwistedAlgebra, from_presentation
from twisted_clifford.cocycles import Cocycle, build_sigma
from twisted_clifford.errors import CapacityError, DomainError, ValidationError
from twisted_clifford.groups import FinAbGroup
from twisted_clifford.suites import random_parameters


def test_presentations():
    C = from_presentation(1, [2], [-1])
    (i,) = C.generators()
    assert C.multiply(i, i) == -C.unit()
    H = algebra.quaternions()
    i, j = H.generators()
    assert H.multiply(i, j) == -H.multiply(j, i)
    assert H.multiply(i, i) == H.multiply(j, j) == -H.unit()
    Cl = from_presentation(2, [2, 2], [1, 1], beta_values={(1, 0): -1})
    x1, x2 = Cl.generators()
    assert Cl.multiply(x1, x1) == Cl.multiply(x2, x2) == Cl.unit()
    assert Cl.multiply(x1, x2) == -Cl.multiply(x2, x1)


def test_product_rule_and_unit():
    G = FinAbGroup([2, 4])
    beta, mu = random_parameters(G, random.Random(3))
    s = build_sigma(G, beta, mu)
    A = TwistedAlgebra(G, s)
    for a in range(G.size):
        assert A.multiply(A.unit(), A.basis(a)) == A.basis(a) == A.multiply(A.basis(a), A.unit())
        for b in range(G.size):
            assert A.multiply(A.basis(a), A.basis(b)) == A.basis(G.mul_index(a, b)) * s.value(a, b)


def test_unit_with_nontrivial_identity_value():
    G = FinAbGroup([2])
    A = TwistedAlgebra(G, Cocycle(G, table=[[2, 2], [2, -2]]))
    assert A.unit() == A.basis(0) * Fraction(1, 2)
    x = A.basis(1)
    assert A.multiply(A.unit(), x) == x == A.multiply(x, A.unit())


def test_associativity_examples():
    assert algebra.is_associative(algebra.quaternions())
    assert not algebra.is_associative(algebra.octonions())
    assert algebra.is_associative(TwistedAlgebra(FinAbGroup([2, 3]), Cocycle.trivial(FinAbGroup([2, 3]))))


def test_group_algebra_is_alternative_and_associative():
    G = FinAbGroup.elementary2(3)
    rep = algebra.alternativity_report(TwistedAlgebra(G, Cocycle.trivial(G)), trials=20)
    assert rep.alternative and rep.associator_witness is None


def test_octonions():
    O = algebra.octonions()
    rep = algebra.alternativity_report(O, trials=100, seed=0)
    assert rep.alternative
    g, h, k, assoc = rep.associator_witness
    assert not assoc.is_zero()
    assert assoc == O.associator(O.basis(g), O.basis(h), O.basis(k))
    # the imaginary units square to -1 and anticommute
    for a in range(1, 8):
        assert O.multiply(O.basis(a), O.basis(a)) == -O.unit()
        for b in range(1, 8):
            if a != b:
                assert O.multiply(O.basis(a), O.basis(b)) == -O.multiply(O.basis(b), O.basis(a))


def test_hamilton_table():
    H = algebra.quaternions()
    assert algebra.hamilton_mismatches(H) == []
    u = algebra.hamilton_units(H)
    units = ("i", "j", "k")
    cyclic = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j"}
    hits = 0
    for a in units:
        for b in units:
            if a == b:
                continue
            prod = H.multiply(u[a], u[b])
            c = cyclic.get((a, b)) or cyclic[(b, a)]
            sign = 1 if (a, b) in cyclic else -1
            hits += prod == u[c] * sign
    assert hits == 6


def test_exponent_quaternions_match_presentation():
    s = algebra.quaternion_exponent_cocycle()
    A = TwistedAlgebra(s.group, s)
    assert algebra.hamilton_mismatches(A) == []
    assert cocycles.cohomologous(s, algebra.quaternions().sigma) is not None


def test_graded_division():
    for A in (algebra.complex_numbers(), algebra.quaternions(), algebra.octonions(),
              clifford.clifford_algebra((2, 3))):
        assert algebra.is_graded_division(A)
    # sigma(g, e) != sigma(e, e): eps_e is no longer a unit multiple
    G = FinAbGroup([2])
    assert not algebra.is_graded_division(TwistedAlgebra(G, Cocycle(G, table=[[1, 1], [-1, 1]])))


def test_graded_division_general_path():
    G = FinAbGroup([3])
    good = [[1, 1, 1], [1, 3, Fraction(1, 2)], [1, Fraction(1, 2), 7]]
    assert algebra.is_graded_division(TwistedAlgebra(G, Cocycle(G, table=good)))
    # eps_g eps_{g^2} = 1/2 but eps_{g^2} eps_g = 2: no two-sided inverse
    bad = [[1, 1, 1], [1, 2, Fraction(1, 2)], [1, 2, 1]]
    assert not algebra.is_graded_division(TwistedAlgebra(G, Cocycle(G, table=bad)))


def test_centers():
    assert len(algebra.center(algebra.quaternions())) == 1
    assert len(algebra.center(clifford.clifford_algebra((1, 0)))) == 2
    assert len(algebra.center(clifford.clifford_algebra((2, 0)))) == 1
    assert len(algebra.center(clifford.clifford_algebra((3, 0)))) == 2
    with pytest.raises(DomainError):
        algebra.center(algebra.octonions())


@pytest.mark.parametrize("p,q", [(p, q) for p in range(5) for q in range(5) if p + q <= 5])
def test_center_dimension_matches_class(p, q):
    A = clifford.clifford_algebra((p, q))
    assert len(algebra.center(A)) == clifford.classify(p, q).center_dimension


@pytest.mark.parametrize("sig", [(1, 0), (0, 3), (2, 2)])
def test_natural_grading_accepted(sig):
    A = clifford.clifford_algebra(sig)
    assert algebra.verify_grading(A, algebra.natural_grading(A))


def test_z2z4_grading_on_cl3():
    A, asg = clifford.cl3_z2z4_assignment()
    assert algebra.verify_grading(A, asg)
    for swap in [(1, 5), (2, 3), (4, 7)]:
        _, bad = clifford.cl3_z2z4_assignment(swap=swap)
        assert not algebra.verify_grading(A, bad)


def test_grading_needs_spanning_set():
    A, asg = clifford.cl3_z2z4_assignment()
    short = GradingAssignment(asg.orders, asg.pairs[:-1])
    assert not algebra.verify_grading(A, short)
    dup = GradingAssignment(asg.orders, asg.pairs[:-1] + [asg.pairs[0]])
    assert not algebra.verify_grading(A, dup)


def test_power_scalar_by_multiplication():
    G = FinAbGroup([4, 2, 4])
    rng = random.Random(11)
    for _ in range(10):
        beta, mu = random_parameters(G, rng)
        s = build_sigma(G, beta, mu)
        A = TwistedAlgebra(G, s)
        for g in G:
            n = G.order_of(g)
            x = A.basis(G.index(g))
            assert A.power(x, n) == A.unit() * cocycles.power_scalar(s, g, n)


def test_associativity_agrees_with_cocycle_check():
    rng = random.Random(4)
    for orders in [(2, 2), (2, 4), (2, 2, 2), (4, 4), (2, 2, 2, 2, 2, 2)]:
        G = FinAbGroup(orders)
        for trial in range(100 // 5):
            beta, mu = random_parameters(G, rng)
            table = build_sigma(G, beta, mu).value_table().tolist()
            if trial % 3 == 0:
                a, b = rng.randrange(G.size), rng.randrange(G.size)
                table[a][b] = -table[a][b]
            s = Cocycle(G, table=table)
            assert algebra.is_associative(TwistedAlgebra(G, s)) == cocycles.is_cocycle(s)


@st.composite
def small_elements(draw):
    vals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return [draw(vals) for _ in range(8)]


@settings(max_examples=50, deadline=None)
@given(small_elements(), small_elements(), small_elements(), st.fractions(max_denominator=9, min_value=-9, max_value=9))
def test_bilinearity_and_distributivity(x, y, z, c):
    O = algebra.octonions()
    X, Y, Z = O.from_dense(x), O.from_dense(y), O.from_dense(z)
    m = O.multiply
    assert m(X + Y, Z) == m(X, Z) + m(Y, Z)
    assert m(X, Y + Z) == m(X, Y) + m(X, Z)
    assert m(X * c, Y) == m(X, Y) * c == m(X, Y * c)
    assert X + Y == Y + X and (X - X).is_zero()
    # alternative laws
    assert m(X, m(X, Y)) == m(m(X, X), Y)
    assert m(m(Y, X), X) == m(Y, m(X, X))


@settings(max_examples=30, deadline=None)
@given(small_elements(), small_elements(), small_elements())
def test_clifford_products_associate(x, y, z):
    A = clifford.clifford_algebra((1, 2))
    X, Y, Z = A.from_dense(x), A.from_dense(y), A.from_dense(z)
    assert A.associator(X, Y, Z).is_zero()


def test_random_elements_are_seeded_and_bounded():
    A = algebra.quaternions()
    a = [A.random_element(random.Random(9)) for _ in range(2)]
    assert a[0] == a[1]
    for c in a[0].dense():
        assert c != 0 and abs(c.numerator) <= 9 and 1 <= c.denominator <= 9


def test_json_round_trip():
    A = clifford.clifford_algebra((1, 2))
    data = json.loads(json.dumps(algebra.algebra_to_json(A)))
    B = algebra.algebra_from_json(data)
    assert all(A.basis_product(a, b) == B.basis_product(a, b) for a in range(8) for b in range(8))


def test_json_import_validation():
    data = algebra.algebra_to_json(algebra.quaternions())
    broken = dict(data, table=data["table"][:-1])
    with pytest.raises(ValidationError):
        algebra.algebra_from_json(broken)
    wrong_k = json.loads(json.dumps(data))
    assert wrong_k["table"][1]["k"] == [0, 1]
    wrong_k["table"][1]["k"] = [1, 1]
    with pytest.raises(ValidationError):
        algebra.algebra_from_json(wrong_k)
    zero = json.loads(json.dumps(data))
    zero["table"][0]["num"] = 0
    with pytest.raises(ValidationError):
        algebra.algebra_from_json(zero)


def test_export_capacity():
    with pytest.raises(CapacityError):
        algebra.algebra_to_json(clifford.clifford_algebra((11, 0)))
