"""Generation probabilities and the Eulerian coefficients a_n(G).

All arithmetic is exact (:class:`fractions.Fraction` and Python ints).
"""
from __future__ import annotations

import math
from fractions import Fraction

from . import _kernels
from .errors import CapExceeded, InputError
from .group import FiniteGroup, prime_factors
from .lattice import EulerianSequence

TUPLE_CAP = 10**7
RECOVER_CAP = 24


class DirichletPolynomial:
    """``sum(a_n / n**s)`` with finite integer support."""

    def __init__(self, terms: dict[int, int]):
        self.terms = {int(n): int(a) for n, a in terms.items() if a}

    @classmethod
    def from_sequence(cls, seq: EulerianSequence) -> DirichletPolynomial:
        return cls(seq.a)

    def __call__(self, t: int) -> Fraction:
        return sum((Fraction(a, n ** t) for n, a in self.terms.items()), Fraction(0))

    def __repr__(self):
        body = " + ".join(f"{a}/{n}^s" for n, a in sorted(self.terms.items()))
        return f"DirichletPolynomial({body})"


def p_gen_exact(seq: EulerianSequence, t: int) -> Fraction:
    if t < 1:
        raise InputError("t must be a positive integer")
    return DirichletPolynomial.from_sequence(seq)(t)


def p_gen_bruteforce(G: FiniteGroup, t: int, cap: int = TUPLE_CAP) -> Fraction:
    """Fraction of ordered t-tuples of G that generate G, by exhaustive count."""
    if t < 1:
        raise InputError("t must be a positive integer")
    total = G.order ** t
    if total > cap:
        raise CapExceeded(f"|G|^t = {total} exceeds tuple cap {cap}")
    if G.order == 1:
        return Fraction(1)
    count = int(_kernels.count_generating_tuples(G.mult, t))
    return Fraction(count, total)


def _bareiss_solve(A: list[list[int]], b: list[int]) -> list[Fraction]:
    """Solve ``A x = b`` over Q with fraction-free elimination on integers."""
    m = len(A)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    prev = 1
    for k in range(m - 1):
        if M[k][k] == 0:
            for r in range(k + 1, m):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    break
            else:
                raise ArithmeticError("singular system")
        pivot = M[k][k]
        for i in range(k + 1, m):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, m + 1):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    if M[m - 1][m - 1] == 0:
        raise ArithmeticError("singular system")
    x = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        acc = Fraction(M[i][m])
        for j in range(i + 1, m):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    return x


def recover_a_from_P(P, m: int, cap: int = RECOVER_CAP) -> EulerianSequence:
    """Recover ``a_1..a_m`` from ``P(1), ..., P(m)``.

    Row ``i`` of the system is ``sum_j a_j / j**i = P(i)``; it is scaled by
    ``lcm(1..m)**i`` and by the common denominator of the right-hand sides
    so elimination runs on integers.
    """
    if m < 1:
        raise InputError("m must be positive")
    if m > cap:
        raise CapExceeded(f"system size {m} exceeds recovery cap {cap}")
    P = [Fraction(v) for v in P]
    if len(P) != m:
        raise InputError(f"expected {m} probabilities, got {len(P)}")
    L = math.lcm(*range(1, m + 1))
    A, rhs = [], []
    for i in range(1, m + 1):
        scale = L ** i
        A.append([scale // j ** i for j in range(1, m + 1)])
        rhs.append(P[i - 1] * scale)
    den = math.lcm(*(v.denominator for v in rhs))
    b = [int(v * den) for v in rhs]
    A = [[c * den for c in row] for row in A]
    sol = _bareiss_solve(A, b)
    a = {}
    for n, v in enumerate(sol, start=1):
        if v.denominator != 1:
            raise InputError(f"a_{n} = {v} is not an integer; inconsistent probabilities")
        if v:
            a[n] = int(v)
    return EulerianSequence(a, m)


def _coprime_pairs(limit: int):
    for r in range(2, limit + 1):
        for s in range(r + 1, limit // r + 1):
            if math.gcd(r, s) == 1:
                yield r, s


def solvability_violations(seq: EulerianSequence) -> list[tuple[int, int]]:
    """Coprime ``(r, s)`` with ``a_rs != a_r * a_s`` and ``rs <= |G|``."""
    return [(r, s) for r, s in _coprime_pairs(seq.group_order)
            if seq[r * s] != seq[r] * seq[s]]


def detect_solvable(seq: EulerianSequence) -> bool:
    return not solvability_violations(seq)


def p_solvability_violations(seq: EulerianSequence, p: int) -> list[tuple[int, int]]:
    """``(p**c, d)`` with ``gcd(p, d) = 1`` and ``a_{p^c d} != a_{p^c} a_d``."""
    out = []
    n = seq.group_order
    pc = p
    while pc <= n:
        for d in range(2, n // pc + 1):
            if d % p and seq[pc * d] != seq[pc] * seq[d]:
                out.append((pc, d))
        pc *= p
    return out


def detect_p_solvable(seq: EulerianSequence, p: int) -> bool:
    if prime_factors(p) != [p]:
        raise InputError(f"{p} is not prime")
    return not p_solvability_violations(seq, p)


def probabilities(seq: EulerianSequence, ts) -> list[Fraction]:
    poly = DirichletPolynomial.from_sequence(seq)
    return [poly(t) for t in ts]

