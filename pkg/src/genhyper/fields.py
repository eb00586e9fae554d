"""Small finite fields GF(p^k) as lookup tables.

Elements are ints ``0..q-1``; the base-p digits of an element are the
coefficients of its polynomial representative (least significant first).
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import InputError


def prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, k


def _digits(x, p, k):
    return [(x // p ** i) % p for i in range(k)]


def _undigits(ds, p):
    return sum(int(d) * p ** i for i, d in enumerate(ds))


def _polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return prod[:k]


class GF:
    def __init__(self, q: int):
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            r = np.arange(q)
            self.add = (r[:, None] + r[None, :]) % q
            self.mul = (r[:, None] * r[None, :]) % q
        else:
            self.add = np.array([[_undigits([(x + y) % p for x, y in
                                             zip(_digits(a, p, k), _digits(b, p, k))], p)
                                  for b in range(q)] for a in range(q)])
            self.mul = self._find_mul_table()
        self.neg = np.array([int(np.flatnonzero(self.add[a] == 0)[0]) for a in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])

    def _find_mul_table(self):
        p, k, q = self.p, self.k, self.q
        for tail in itertools.product(range(p), repeat=k):
            modulus = list(tail) + [1]          # monic, degree k
            table = np.array([[_undigits(_polymulmod(_digits(a, p, k), _digits(b, p, k),
                                                     modulus, p), p)
                               for b in range(q)] for a in range(q)])
            # a field iff every nonzero row is a permutation of the nonzero elements
            if all(len(set(table[a, 1:])) == q - 1 and 0 not in table[a, 1:]
                   for a in range(1, q)):
                return table
        raise AssertionError(f"no irreducible polynomial of degree {k} over GF({p})")

    def sub(self, a, b):
        return int(self.add[a, self.neg[b]])

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise InputError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = int(self.mul[x, a])
            k += 1
        return k

    def elements_of_order(self, n: int) -> list[int]:
        return [a for a in range(1, self.q) if self.mult_order(a) == n]

    def det(self, M) -> int:
        A = [[int(v) for v in row] for row in M]
        n = len(A)
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if A[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                det = int(self.neg[det])
            det = int(self.mul[det, A[c][c]])
            ic = int(self.inv[A[c][c]])
            for r in range(c + 1, n):
                if A[r][c]:
                    f = int(self.mul[A[r][c], ic])
                    A[r] = [self.sub(A[r][j], int(self.mul[f, A[c][j]])) for j in range(n)]
        return det


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
