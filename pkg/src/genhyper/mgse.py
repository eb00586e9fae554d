"""Exchange properties of generating sets and the solvable classification.

Two verdicts are computed separately:

* MGSE: for generating sets X, Y of size d(G) and every position i of X,
  some y in Y replaces x_i and still generates G.
* the matroid basis-exchange axiom on a hyperedge family.

``predict_mgse_structurally`` gives the classification-based prediction
for non-cyclic solvable groups, so the two routes can be compared.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, InputError
from .fields import field as gf
from .group import (
    FiniteGroup, Subgroup, prime_factors, derived_subgroup, fitting_subgroup,
    is_nilpotent_oracle, is_solvable_oracle, quotient_group, subgroup_generated,
    subgroup_join,
)
from .hypergraph import GenHypergraph, colex_key, delta, gamma
from .lattice import SubgroupLattice, all_subgroups, frattini

MGSE_BUDGET = 10**8


@dataclass
class MgseReport:
    holds: bool
    witness: tuple | None           # (X, Y, i): no y in Y can replace X[i]
    exchange_holds: bool
    exchange_witness: tuple | None  # (A, B, a) on Gamma
    uniform: bool
    matroid: bool
    gamma_edges: int = 0
    delta_edges: int = 0

    def export(self, G: FiniteGroup) -> dict:
        def lab(edge):
            return [G.label(v) for v in edge]

        out = {
            "group": G.name,
            "mgse": self.holds,
            "uniform": self.uniform,
            "exchange": self.exchange_holds,
            "matroid": self.matroid,
            "gamma_edges": self.gamma_edges,
            "delta_edges": self.delta_edges,
            "witness": None,
            "exchange_witness": None,
        }
        if self.witness:
            X, Y, i = self.witness
            out["witness"] = {"X": lab(X), "Y": lab(Y), "position": i,
                              "replaced": G.label(X[i])}
        if self.exchange_witness:
            A, B, a = self.exchange_witness
            out["exchange_witness"] = {"A": lab(A), "B": lab(B), "a": G.label(a)}
        return out


def _completion_table(G: FiniteGroup, edges: list[tuple[int, ...]]) -> np.ndarray:
    """Row ``x*d + i`` marks the vertices v with ``X - {X[i]} + {v}`` a hyperedge."""
    d = len(edges[0])
    completions: dict[tuple, list[int]] = {}
    for e in edges:
        for j in range(d):
            completions.setdefault(e[:j] + e[j + 1:], []).append(e[j])
    table = np.zeros((len(edges) * d, G.order), dtype=np.bool_)
    for x, e in enumerate(edges):
        for i in range(d):
            table[x * d + i, completions[e[:i] + e[i + 1:]]] = True
    return table


def _scan(G: FiniteGroup, gamma_h: GenHypergraph, budget: int):
    edges = gamma_h.hyperedges
    d = gamma_h.rank
    m = len(edges)
    if m * m * max(d, 1) > budget:
        raise BudgetExceeded(f"{m}^2 * {d} exchange tests exceed budget {budget}",
                             progress={"hyperedges": m})
    if d == 0:
        return True, None
    table = _completion_table(G, edges)
    E = np.array(edges, dtype=np.int64).reshape(m, d)
    x, y, i = _kernels.first_exchange_failure(table, E)
    if x < 0:
        return True, None
    return False, (edges[x], edges[y], int(i))


def mgse_holds(G: FiniteGroup, budget: int = MGSE_BUDGET) -> bool:
    return _scan(G, gamma(G), budget)[0]


def mgse_check(G: FiniteGroup, budget: int = MGSE_BUDGET,
               gamma_h: GenHypergraph | None = None,
               delta_h: GenHypergraph | None = None) -> MgseReport:
    """Decide MGSE by scanning all ordered pairs of Gamma hyperedges.

    A replacement ``X - {x_i} + {y}`` has size d(G), so it generates exactly
    when it is a Gamma hyperedge; the scan therefore needs no further
    closures once Gamma is known.
    """
    if gamma_h is None:
        gamma_h = gamma(G)
    if delta_h is None:
        delta_h = delta(G)
    holds, witness = _scan(G, gamma_h, budget)
    exch, exch_witness = basis_exchange_check(gamma_h)
    uniform = delta_h.is_uniform()
    matroid = uniform and basis_exchange_check(delta_h)[0]
    return MgseReport(holds, witness, exch, exch_witness, uniform, matroid,
                      gamma_edges=len(gamma_h.hyperedges),
                      delta_edges=len(delta_h.hyperedges))


def mgse_fails_for(G: FiniteGroup, X, Y, i: int) -> bool:
    """Replay a witness directly: no y in Y makes ``X`` with ``x_i -> y`` generate."""
    X = list(X)
    for y in Y:
        cand = X[:i] + [y] + X[i + 1:]
        if subgroup_generated(G, cand).order == G.order:
            return False
    return True


def basis_exchange_check(H: GenHypergraph) -> tuple[bool, tuple | None]:
    """Exchange axiom on the hyperedges of ``H`` with the first failure.

    Failure witness is ``(A, B, a)``: no ``b`` in ``B - A`` makes
    ``A - {a} + {b}`` a hyperedge. Scan order: A, then B (colex), then a.
    """
    edges = H.hyperedges
    if not edges:
        raise InputError("exchange axiom needs at least one hyperedge")
    masks = [colex_key(e) for e in edges]
    # (A - a) -> bitmask of the b that complete it to a hyperedge
    completions: dict[int, int] = {}
    for e, me in zip(edges, masks):
        for v in e:
            key = me & ~(1 << v)
            completions[key] = completions.get(key, 0) | (1 << v)
    for A, ma in zip(edges, masks):
        rows = [(a, completions[ma & ~(1 << a)]) for a in A]
        for B, mb in zip(edges, masks):
            only_b = mb & ~ma
            for a, comp in rows:
                if not mb >> a & 1 and not comp & only_b:
                    return False, (A, B, a)
    return True, None


# ------------------------------------------------------------ classification

@dataclass
class StructureReport:
    applicable: bool
    predicted_mgse: bool | None
    decomposition: dict | None = None
    reasons: list[str] = field(default_factory=list)

    def export(self) -> dict:
        return {"applicable": self.applicable, "predicted_mgse": self.predicted_mgse,
                "decomposition": self.decomposition, "reasons": list(self.reasons)}


def _is_prime_power(n: int) -> bool:
    return n > 1 and len(prime_factors(n)) == 1


def _minimal_normal_in(L: SubgroupLattice, F: Subgroup) -> list[Subgroup]:
    normals = [H for H in L.normal_subgroups() if H.order > 1 and H <= F]
    return [H for H in normals if not any(K < H for K in normals)]


def _basis(G: FiniteGroup, N: Subgroup) -> list[int]:
    basis: list[int] = []
    span = G.trivial
    for v in N.indices():
        v = int(v)
        if v not in span:
            basis.append(v)
            span = subgroup_generated(G, basis)
        if span.order == N.order:
            break
    return basis


def _coordinates(G: FiniteGroup, basis: list[int], q: int) -> dict[tuple, int]:
    """Coefficient vector -> element for an elementary abelian q-group."""
    out = {}
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        x = 0
        for b, c in zip(basis, coeffs):
            for _ in range(c):
                x = int(G.mult[x, b])
        out[coeffs] = x
    return out


def h_isomorphic(G: FiniteGroup, N1: Subgroup, N2: Subgroup, h: int) -> bool:
    """Is there a group isomorphism N1 -> N2 commuting with conjugation by h?"""
    if N1.order != N2.order:
        return False
    q = prime_factors(N1.order)[0]
    b1 = _basis(G, N1)
    coords = _coordinates(G, b1, q)
    inv_h = int(G.inv[h])

    def conj(x):
        return int(G.mult[G.mult[inv_h, x], h])

    targets = [int(v) for v in N2.indices()]
    for images in itertools.product(targets, repeat=len(b1)):
        phi = {}
        for coeffs, x in coords.items():
            y = 0
            for img, c in zip(images, coeffs):
                for _ in range(c):
                    y = int(G.mult[y, img])
            phi[x] = y
        if len(set(phi.values())) != N2.order:
            continue
        if all(phi[conj(x)] == conj(phi[x]) for x in coords.values()):
            return True
    return False


def predict_mgse_structurally(G: FiniteGroup) -> StructureReport:
    """MGSE prediction from the structure of ``G/Frat(G)``.

    Nilpotent: MGSE iff G is a p-group. Otherwise MGSE iff
    ``G/Frat(G) = N^delta x| H`` with H of prime order p acting faithfully
    on the irreducible module N.
    """
    if G.is_cyclic():
        return StructureReport(False, None, reasons=["cyclic groups are excluded"])
    if not is_solvable_oracle(G):
        return StructureReport(False, None, reasons=["not solvable; classification does not apply"])
    if is_nilpotent_oracle(G):
        pgroup = _is_prime_power(G.order)
        return StructureReport(True, pgroup, reasons=[
            "nilpotent: MGSE iff p-group",
            f"|G| = {G.order} {'is' if pgroup else 'is not'} a prime power"])
    reasons = []
    L = all_subgroups(G)
    Phi = frattini(G, L)
    Qimg = quotient_group(G, Phi)
    Q = Qimg.quotient
    reasons.append(f"|Frat(G)| = {Phi.order}, |G/Frat(G)| = {Q.order}")
    F = fitting_subgroup(Q)
    if not subgroup_is_abelian(Q, F):
        return StructureReport(True, False, reasons=reasons + ["Fit(G/Frat) is not abelian"])
    index = Q.order // F.order
    if prime_factors(index) != [index]:
        return StructureReport(True, False, reasons=reasons + [
            f"|G/Frat : Fit| = {index} is not prime"])
    p = index
    fq = prime_factors(F.order)
    if len(fq) != 1:
        return StructureReport(True, False, reasons=reasons + [
            f"Fit(G/Frat) has order {F.order}, not a prime power"])
    q = fq[0]
    if q == p:
        return StructureReport(True, False, reasons=reasons + ["Fit has the same prime as the top"])
    if any(Q.element_order(int(v)) not in (1, q) for v in F.indices()):
        return StructureReport(True, False, reasons=reasons + ["Fit is not elementary abelian"])
    h = next(g for g in range(Q.order) if g not in F and Q.element_order(g) == p)
    QL = all_subgroups(Q)
    minimal = _minimal_normal_in(QL, F)
    orders = {N.order for N in minimal}
    if len(orders) != 1:
        return StructureReport(True, False, reasons=reasons + [
            f"minimal normal subgroups in Fit have orders {sorted(orders)}"])
    N0 = minimal[0]
    for N in minimal[1:]:
        if not h_isomorphic(Q, N0, N, h):
            return StructureReport(True, False, reasons=reasons + [
                "minimal normal subgroups are not all H-isomorphic"])
    if subgroup_join(Q, *minimal).mask != F.mask:
        return StructureReport(True, False, reasons=reasons + ["minimal normals do not span Fit"])
    for N in minimal:
        if all(int(Q.mult[h, v]) == int(Q.mult[v, h]) for v in N.indices()):
            return StructureReport(True, False, reasons=reasons + [
                f"a minimal normal subgroup of order {N.order} is centralized by H"])
    n_order = N0.order
    dlt = m = 0
    while n_order ** dlt < F.order:
        dlt += 1
    while q ** m < n_order:
        m += 1
    decomposition = {
        "p": p, "q": q, "m": m, "module_order": n_order,
        "delta": dlt, "generator": Q.label(h),
        "frattini_quotient_order": Q.order,
    }
    assert Q.order == n_order ** dlt * p
    reasons.append(f"G/Frat = N^{dlt} x| C{p}, |N| = {n_order}")
    return StructureReport(True, True, decomposition, reasons)


def subgroup_is_abelian(G: FiniteGroup, H: Subgroup) -> bool:
    gens = list(H.gens) if H.gens else [int(v) for v in H.indices()]
    return all(G.mult[a, b] == G.mult[b, a] for a in gens for b in gens)


# ------------------------------------------------------------ determinant test

def det_criterion_generates(q: int, p: int, delta_: int, tuple_) -> bool:
    """Generation test for ``delta+1`` elements of ``V^delta x| <x>``.

    Each entry is ``(vector, scalar)`` with the vector in GF(q)^delta and
    the scalar of order dividing p. The elements generate iff the matrix
    with first row ``scalar_i - 1`` and the vectors as the remaining rows is
    nonsingular over GF(q).
    """
    if (q - 1) % p:
        raise InputError(f"p = {p} does not divide q - 1 = {q - 1}")
    F = gf(q)
    if len(tuple_) != delta_ + 1:
        raise InputError(f"need {delta_ + 1} entries, got {len(tuple_)}")
    cols = []
    for vec, s in tuple_:
        vec = [int(v) for v in vec]
        if len(vec) != delta_ or not all(0 <= v < q for v in vec):
            raise InputError(f"malformed vector {vec}")
        if not 0 < s < q or (F.mult_order(s) not in (1, p)):
            raise InputError(f"scalar {s} does not have order dividing {p}")
        cols.append([F.sub(s, 1)] + vec)
    M = [[cols[j][i] for j in range(delta_ + 1)] for i in range(delta_ + 1)]
    return F.det(M) != 0


# ------------------------------------------------------------ unique maximal normal subgroup

@dataclass
class MaximalNormalReport:
    unique: bool
    maximal_normal: list[Subgroup]
    quotient_order: int | None
    quotient_cyclic: bool | None
    quotient_prime: bool | None


def unique_maximal_normal_check(G: FiniteGroup, L: SubgroupLattice | None = None) -> MaximalNormalReport:
    if L is None:
        L = all_subgroups(G)
    proper = [H for H in L.normal_subgroups() if H.order < G.order]
    maxes = [H for H in proper if not any(H < K for K in proper)]
    if len(maxes) != 1:
        return MaximalNormalReport(False, maxes, None, None, None)
    N = maxes[0]
    k = G.order // N.order
    cyclic = any(subgroup_join(G, N, g).order == G.order for g in range(G.order))
    return MaximalNormalReport(True, maxes, k, cyclic, prime_factors(k) == [k])


# ------------------------------------------------------------ abelianization

def abelianization_order(G: FiniteGroup) -> int:
    return G.order // derived_subgroup(G).order
