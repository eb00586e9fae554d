import itertools

import pytest

from genhyper.errors import InputError
from genhyper.fields import field, prime_power


@pytest.mark.parametrize("q,pk", [(2, (2, 1)), (4, (2, 2)), (9, (3, 2)), (8, (2, 3)), (7, (7, 1))])
def test_prime_power(q, pk):
    assert prime_power(q) == pk


@pytest.mark.parametrize("q", [1, 6, 12])
def test_not_prime_power(q):
    with pytest.raises(InputError):
        prime_power(q)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    F = field(q)
    R = range(q)
    for a, b, c in itertools.product(R, R, R):
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
        assert F.mul[F.mul[a, b], c] == F.mul[a, F.mul[b, c]]
    for a in range(1, q):
        assert F.mul[a, F.inv[a]] == 1
    # the multiplicative group is cyclic
    assert len(F.elements_of_order(q - 1)) > 0


def test_mult_order():
    F = field(4)
    assert sorted(F.mult_order(a) for a in range(1, 4)) == [1, 3, 3]
    with pytest.raises(InputError):
        F.mult_order(0)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_det_matches_permutation_expansion(q):
    F = field(q)

    def leibniz(M):
        n = len(M)
        total = 0
        for perm in itertools.permutations(range(n)):
            inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
            term = 1
            for i in range(n):
                term = int(F.mul[term, M[i][perm[i]]])
            if inversions % 2:
                term = int(F.neg[term])
            total = int(F.add[total, term])
        return total

    for entries in itertools.product(range(q), repeat=4):
        M = [list(entries[:2]), list(entries[2:])]
        assert F.det(M) == leibniz(M)
    for k, entries in enumerate(itertools.product(range(q), repeat=9)):
        if k % 7:
            continue
        M = [list(entries[i:i + 3]) for i in (0, 3, 6)]
        assert F.det(M) == leibniz(M)
