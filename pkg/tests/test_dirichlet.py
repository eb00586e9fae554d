import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from genhyper.dirichlet import (
    DirichletPolynomial, _bareiss_solve, detect_p_solvable, detect_solvable, p_gen_bruteforce,
    p_gen_exact, p_solvability_violations, probabilities, recover_a_from_P, solvability_violations,
)
from genhyper.errors import CapExceeded, InputError
from genhyper.group import prime_factors
from genhyper.lattice import EulerianSequence, a_sequence, all_subgroups

from conftest import construct, corpus_group


def seq_of(name):
    return a_sequence(all_subgroups(corpus_group(name)))


def euler_product(primes, t):
    out = Fraction(1)
    for p in primes:
        out *= 1 - Fraction(1, p ** t)
    return out


@pytest.mark.parametrize("n", [2, 6, 12, 30])
def test_cyclic_probability_is_euler_product(n):
    seq = a_sequence(all_subgroups(construct(f"cyclic:{n}")))
    for t in (1, 2, 3):
        assert p_gen_exact(seq, t) == euler_product(prime_factors(n), t)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2)])
def test_elementary_abelian_probability(p, k):
    seq = a_sequence(all_subgroups(construct(f"elementary_abelian:{p},{k}")))
    for t in (1, 2, 3, 4):
        expect = Fraction(1)
        for i in range(k):
            expect *= 1 - Fraction(p ** i, p ** t)
        assert p_gen_exact(seq, t) == expect


@pytest.mark.parametrize("name,t,value", [("A5", 2, Fraction(19, 30)), ("S4", 2, Fraction(3, 8)),
                                          ("S3", 2, Fraction(1, 2)), ("S3", 3, Fraction(7, 9))])
def test_known_probabilities(name, t, value):
    assert p_gen_exact(seq_of(name), t) == value


@pytest.mark.parametrize("name", ["S3", "Q8", "D8", "A4", "F20", "C2xC6"])
def test_exact_matches_bruteforce(name):
    G = corpus_group(name)
    seq = seq_of(name)
    for t in (1, 2, 3):
        assert p_gen_exact(seq, t) == p_gen_bruteforce(G, t)


def test_bruteforce_cap_and_bad_t():
    with pytest.raises(CapExceeded):
        p_gen_bruteforce(corpus_group("A5"), 4, cap=10**6)
    with pytest.raises(InputError):
        p_gen_bruteforce(corpus_group("S3"), 0)
    with pytest.raises(InputError):
        p_gen_exact(seq_of("S3"), 0)


@pytest.mark.parametrize("name", ["S3", "C12", "A4", "F20", "VX(3,2,2)", "S4"])
def test_round_trip(name):
    seq = seq_of(name)
    m = seq.group_order
    P = probabilities(seq, range(1, m + 1))
    assert recover_a_from_P(P, m).as_list() == seq.as_list()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=9))
def test_round_trip_arbitrary_sequences(coeffs):
    m = len(coeffs)
    poly = DirichletPolynomial({n: a for n, a in enumerate(coeffs, start=1)})
    P = [poly(t) for t in range(1, m + 1)]
    assert recover_a_from_P(P, m).as_list() == coeffs


def test_recover_rejects_non_integer_and_size():
    with pytest.raises(InputError):
        recover_a_from_P([Fraction(1, 2)], 1)
    with pytest.raises(InputError):
        recover_a_from_P([Fraction(1)], 2)
    with pytest.raises(CapExceeded):
        recover_a_from_P([0] * 30, 30)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.integers(-9, 9), min_size=n, max_size=n))))
def test_bareiss_solves_integer_systems(system):
    A, b = system
    try:
        x = _bareiss_solve(A, b)
    except ArithmeticError:
        # must really be singular: check with Fractions
        n = len(A)
        M = [[Fraction(v) for v in row] for row in A]
        rank = 0
        for c in range(n):
            piv = next((r for r in range(rank, n) if M[r][c]), None)
            if piv is None:
                continue
            M[rank], M[piv] = M[piv], M[rank]
            for r in range(n):
                if r != rank and M[r][c]:
                    f = M[r][c] / M[rank][c]
                    M[r] = [u - f * w for u, w in zip(M[r], M[rank])]
            rank += 1
        assert rank < n
        return
    for row, rhs in zip(A, b):
        assert sum(c * v for c, v in zip(row, x)) == rhs


def test_detectors_on_hand_sequences():
    # multiplicative on coprime pairs
    good = EulerianSequence({1: 1, 2: -3, 3: -4, 6: 12}, 6)
    assert detect_solvable(good)
    bad = EulerianSequence({1: 1, 2: -3, 3: -4, 6: 11}, 6)
    assert solvability_violations(bad) == [(2, 3)]
    assert p_solvability_violations(bad, 2) == [(2, 3)]
    assert not detect_p_solvable(bad, 3)


def test_detect_p_solvable_needs_prime():
    with pytest.raises(InputError):
        detect_p_solvable(seq_of("S3"), 4)


@pytest.mark.parametrize("name,expect", [("S4", True), ("F20", True), ("A5", False), ("S5", False)])
def test_detect_solvable_corpus(name, expect):
    assert detect_solvable(seq_of(name)) is expect


def test_a5_not_p_solvable_for_any_divisor():
    seq = seq_of("A5")
    assert not any(detect_p_solvable(seq, p) for p in (2, 3, 5))
    assert detect_p_solvable(seq, 7)


def test_polynomial_repr():
    assert repr(DirichletPolynomial({1: 1, 2: -1})) == "DirichletPolynomial(1/1^s + -1/2^s)"
    assert DirichletPolynomial({1: 1, 2: -1})(1) == Fraction(1, 2)
    assert math.isclose(float(DirichletPolynomial({1: 1, 2: -1})(3)), 7 / 8)
