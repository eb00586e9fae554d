"""Finite permutation groups stored as element tables.

A :class:`FiniteGroup` holds every element explicitly, in BFS order from
the identity over the generator list, so element indices are reproducible.
Subgroups are bitmasks over those indices (plain Python ints), which makes
them hashable and cheap to intersect.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import CapExceeded, InputError, NotNormalError, PreconditionError
from .perm import Permutation

ORDER_CAP = 5000
DEGREE_CAP = 32


def mask_from_bools(flags) -> int:
    flags = np.asarray(flags, dtype=np.bool_)
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def mask_from_indices(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def mask_indices(mask: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")[:n])


@dataclass(frozen=True)
class Subgroup:
    mask: int
    order: int
    gens: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __contains__(self, idx: int) -> bool:
        return bool(self.mask >> int(idx) & 1)

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Subgroup) -> bool:
        return self.mask != other.mask and self <= other

    def indices(self) -> np.ndarray:
        return mask_indices(self.mask, self.mask.bit_length())

    def is_trivial(self) -> bool:
        return self.order == 1


class FiniteGroup:
    """Element table of a permutation group.

    ``elements[i]`` is the image array of element ``i``; element 0 is the
    identity and ``generators`` lists indices into the table.
    """

    def __init__(self, elements: np.ndarray, generators, name: str = "G"):
        self.elements = np.ascontiguousarray(elements, dtype=np.int32)
        self.generators = [int(g) for g in generators]
        self.name = name
        self._gen_cache: dict[int, Subgroup] = {}

    @property
    def order(self) -> int:
        return self.elements.shape[0]

    def __len__(self):
        return self.order

    @property
    def degree(self) -> int:
        return self.elements.shape[1]

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order}, degree={self.degree})"

    def perm(self, i: int) -> Permutation:
        return Permutation(tuple(self.elements[i]))

    def label(self, i: int) -> str:
        return self.perm(i).to_cycle_string()

    @cached_property
    def _lookup(self):
        # a set of points whose images already separate all elements
        n, deg = self.elements.shape
        base: list[int] = []
        keys = np.zeros(n, dtype=np.int64)
        radix = max(deg, 2)
        while len(np.unique(keys)) < n:
            best, best_count = None, -1
            for p in range(deg):
                if p in base:
                    continue
                cand = keys * radix + self.elements[:, p]
                cnt = len(np.unique(cand))
                if cnt > best_count:
                    best, best_count = p, cnt
            base.append(best)
            keys = keys * radix + self.elements[:, best]
            if len(base) * math.log2(radix) > 62:
                raise CapExceeded("element keys do not fit in 64 bits")
        order = np.argsort(keys, kind="stable")
        return np.array(base, dtype=np.int64), keys[order], order

    def _keys(self, images: np.ndarray) -> np.ndarray:
        base, _, _ = self._lookup
        radix = max(self.degree, 2)
        keys = np.zeros(images.shape[0], dtype=np.int64)
        for p in base:
            keys = keys * radix + images[:, p]
        return keys

    def indices_of(self, images: np.ndarray) -> np.ndarray:
        """Element indices for a stack of image arrays (assumed members)."""
        _, sorted_keys, order = self._lookup
        pos = np.searchsorted(sorted_keys, self._keys(images))
        return order[pos]

    def index_of(self, p: Permutation) -> int:
        imgs = np.asarray(p.images, dtype=np.int32)
        if imgs.shape[0] != self.degree:
            raise InputError("degree mismatch")
        idx = int(self.indices_of(imgs[None, :])[0])
        if not np.array_equal(self.elements[idx], imgs):
            raise InputError(f"{p} is not an element of {self.name}")
        return idx

    @cached_property
    def mult(self) -> np.ndarray:
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        E = self.elements
        for i in range(n):
            # row i: e_i then e_j, i.e. point p -> e_j[e_i[p]]
            table[i] = self.indices_of(E[:, E[i]])
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mult == 0)
        inv[rows] = cols
        return inv

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        done = cur == 0
        while not done.all():
            cur = self.mult[cur, np.arange(n)]
            k += 1
            newly = (cur == 0) & ~done
            orders[newly] = k
            done |= newly
        return orders

    def element_order(self, i: int) -> int:
        return int(self.element_orders[i])

    @cached_property
    def full(self) -> Subgroup:
        return Subgroup((1 << self.order) - 1, self.order, tuple(self.generators))

    @cached_property
    def trivial(self) -> Subgroup:
        return Subgroup(1, 1, ())

    def is_cyclic(self) -> bool:
        return bool((self.element_orders == self.order).any())

    def is_abelian(self) -> bool:
        m = self.mult
        gens = self.generators
        return all(m[a, b] == m[b, a] for a in gens for b in gens)

    def generates(self, seed) -> bool:
        return subgroup_generated(self, seed).order == self.order

    def subgroup_from_mask(self, mask: int, gens=()) -> Subgroup:
        return Subgroup(mask, mask.bit_count(), tuple(gens))


def close(generators, name: str = "G", order_cap: int = ORDER_CAP) -> FiniteGroup:
    """Close a list of permutations into a :class:`FiniteGroup` (BFS order)."""
    generators = list(generators)
    if not generators:
        raise InputError("need at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise InputError("generators have different degrees")
    gens = [g.images for g in generators]
    ident = tuple(range(degree))
    index = {ident: 0}
    table = [ident]
    head = 0
    while head < len(table):
        e = table[head]
        head += 1
        for g in gens:
            h = tuple(g[p] for p in e)
            if h not in index:
                if len(table) >= order_cap:
                    raise CapExceeded(f"group order exceeds cap {order_cap}")
                index[h] = len(table)
                table.append(h)
    elements = np.array(table, dtype=np.int32).reshape(len(table), degree)
    return FiniteGroup(elements, [index[g] for g in gens], name=name)


def subgroup_generated(G: FiniteGroup, seed) -> Subgroup:
    """``<seed>`` as a Subgroup; memoized per group on the seed set."""
    seed = sorted({int(s) for s in seed})
    key = mask_from_indices(seed)
    hit = G._gen_cache.get(key)
    if hit is not None:
        return hit
    flags = _kernels.closure(G.mult, np.array(seed, dtype=np.int64))
    mask = mask_from_bools(flags)
    H = Subgroup(mask, int(flags.sum()), tuple(seed))
    G._gen_cache[key] = H
    return H


def subgroup_join(G: FiniteGroup, *parts) -> Subgroup:
    """Subgroup generated by several subgroups and/or element indices."""
    seed = []
    for p in parts:
        if isinstance(p, Subgroup):
            seed.extend(p.gens if p.gens or p.order == 1 else p.indices())
        else:
            seed.append(int(p))
    return subgroup_generated(G, seed)


def conjugate_indices(G: FiniteGroup, idx, g: int) -> np.ndarray:
    """``g^-1 x g`` for each x in ``idx``."""
    return G.mult[G.mult[G.inv[g], np.asarray(idx)], g]


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    members = H.indices()
    for g in G.generators:
        conj = conjugate_indices(G, members, g)
        if mask_from_indices(conj) != H.mask:
            return False
    return True


def normal_closure(G: FiniteGroup, seed) -> Subgroup:
    gens = sorted({int(s) for s in seed})
    H = subgroup_generated(G, gens)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            for t in list(gens):
                c = int(conjugate_indices(G, [t], g)[0])
                if c not in H:
                    gens.append(c)
                    H = subgroup_generated(G, gens)
                    changed = True
    return H


def commutator(G: FiniteGroup, a: int, b: int) -> int:
    m, inv = G.mult, G.inv
    return int(m[m[inv[a], inv[b]], m[a, b]])


def derived_subgroup(G: FiniteGroup, H: Subgroup | None = None) -> Subgroup:
    """``[H, H]``; ``H`` defaults to ``G``."""
    if H is None:
        H = G.full
        gens = G.generators
    else:
        gens = list(H.gens) if H.gens else list(H.indices())
    comms = [commutator(G, a, b) for a, b in itertools.combinations(gens, 2)]
    # normal closure inside H
    K = subgroup_generated(G, comms)
    work = list(comms)
    changed = True
    while changed:
        changed = False
        for g in gens:
            for t in list(work):
                c = int(conjugate_indices(G, [t], g)[0])
                if c not in K:
                    work.append(c)
                    K = subgroup_generated(G, work)
                    changed = True
    return K


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    series = [G.full]
    while True:
        D = derived_subgroup(G, series[-1])
        if D.mask == series[-1].mask:
            return series
        series.append(D)


def is_solvable_oracle(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].is_trivial()


def center(G: FiniteGroup) -> Subgroup:
    m = G.mult
    ok = np.ones(G.order, dtype=np.bool_)
    for g in G.generators:
        ok &= m[:, g] == m[g, :]
    idx = np.flatnonzero(ok)
    return Subgroup(mask_from_indices(idx), len(idx), tuple(int(i) for i in idx))


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    series = [G.trivial]
    m, inv = G.mult, G.inv
    allx = np.arange(G.order)
    while True:
        Z = series[-1]
        zflags = np.zeros(G.order, dtype=np.bool_)
        zflags[Z.indices()] = True
        ok = np.ones(G.order, dtype=np.bool_)
        for g in G.generators:
            comm = m[m[inv[allx], inv[g]], m[allx, g]]
            ok &= zflags[comm]
        idx = np.flatnonzero(ok)
        nxt = Subgroup(mask_from_indices(idx), len(idx), tuple(int(i) for i in idx))
        if nxt.mask == Z.mask:
            return series
        series.append(nxt)


def is_nilpotent_oracle(G: FiniteGroup) -> bool:
    return upper_central_series(G)[-1].order == G.order


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    seen = np.zeros(G.order, dtype=np.bool_)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in G.generators:
                    c = int(conjugate_indices(G, [y], g)[0])
                    if c not in orbit:
                        orbit.add(c)
                        nxt.append(c)
            frontier = nxt
        cls = np.array(sorted(orbit), dtype=np.int64)
        seen[cls] = True
        classes.append(cls)
    return classes


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_pi_number(n: int, primes, complement: bool) -> bool:
    for q in prime_factors(n):
        if (q in primes) == complement:
            return False
    return True


def pi_core(G: FiniteGroup, primes, complement: bool = False) -> Subgroup:
    """Largest normal pi-subgroup (``O_pi``); ``complement`` gives ``O_pi'``.

    An element lies in the core iff its normal closure is a pi-group.
    """
    primes = set(primes)
    keep = []
    for cls in conjugacy_classes(G):
        x = int(cls[0])
        if not _is_pi_number(G.element_order(x), primes, complement):
            continue
        if _is_pi_number(normal_closure(G, [x]).order, primes, complement):
            keep.extend(int(c) for c in cls)
    return subgroup_generated(G, keep)


def p_core(G: FiniteGroup, p: int) -> Subgroup:
    return pi_core(G, [p])


def fitting_subgroup(G: FiniteGroup) -> Subgroup:
    cores = [p_core(G, p) for p in prime_factors(G.order)]
    return subgroup_join(G, *cores) if cores else G.trivial


@dataclass(frozen=True)
class GroupHomomorphismImage:
    quotient: FiniteGroup
    projection: np.ndarray      # element index of G -> element index of quotient
    kernel: Subgroup

    def preimage(self, K: Subgroup) -> Subgroup:
        flags = np.zeros(self.quotient.order, dtype=np.bool_)
        flags[K.indices()] = True
        idx = np.flatnonzero(flags[self.projection])
        return Subgroup(mask_from_indices(idx), len(idx))


def coset_labels(G: FiniteGroup, N: Subgroup) -> tuple[np.ndarray, list[int]]:
    """Label of the coset ``gN`` for each g, plus a representative per label."""
    labels = np.full(G.order, -1, dtype=np.int64)
    reps = []
    members = N.indices()
    for g in range(G.order):
        if labels[g] < 0:
            labels[G.mult[g, members]] = len(reps)
            reps.append(g)
    return labels, reps


def quotient_group(G: FiniteGroup, N: Subgroup) -> GroupHomomorphismImage:
    """``G/N`` acting on the cosets of ``N``, re-closed into BFS form."""
    if not is_normal(G, N):
        raise NotNormalError(f"subgroup of order {N.order} is not normal in {G.name}")
    labels, reps = coset_labels(G, N)
    reps_arr = np.array(reps, dtype=np.int64)

    def action(g):
        return Permutation(tuple(int(v) for v in labels[G.mult[reps_arr, g]]))

    k = len(reps)
    gens = [action(g) for g in G.generators] or [Permutation.identity(k)]
    Q = close(gens, name=f"{G.name}/N{N.order}", order_cap=max(ORDER_CAP, k))
    # coset c is the image of its representative
    images = np.array([[labels[G.mult[r, reps_arr[c]]] for r in reps_arr] for c in range(k)],
                      dtype=np.int32)
    # images[c] is the permutation of rep_c: coset r -> coset of (rep_r * rep_c)
    q_of_coset = Q.indices_of(images)
    projection = q_of_coset[labels]
    return GroupHomomorphismImage(Q, projection, N)


def rank(G: FiniteGroup) -> int:
    """Least size of a generating set (0 for the trivial group)."""
    if G.order == 1:
        return 0
    bound = int(math.log2(G.order))
    for k in range(1, bound + 1):
        hit = _kernels.first_generating_combination(G.mult, k)
        if hit[0] >= 0:
            return k
    raise AssertionError("no generating set within log2|G| elements")


def lift_generating_tuple(G: FiniteGroup, N: Subgroup, coset_tuple, r: int) -> list[int]:
    """Lift generators of ``G/N`` to generators of ``G`` inside their cosets.

    Pads ``coset_tuple`` with the identity to length ``r`` and searches
    ``N^r`` in lexicographic order for ``(u_1, ..., u_r)`` with
    ``<g_1 u_1, ..., g_r u_r> = G``.
    """
    coset_tuple = [int(c) for c in coset_tuple]
    if len(coset_tuple) > r:
        raise PreconditionError("coset tuple longer than r")
    if not is_normal(G, N):
        raise NotNormalError("N is not normal")
    padded = coset_tuple + [0] * (r - len(coset_tuple))
    if subgroup_join(G, N, *padded).order != G.order:
        raise PreconditionError("coset tuple does not generate G/N")
    d = rank(G)
    if r < d:
        raise PreconditionError(f"r = {r} is smaller than d(G) = {d}")
    members = [int(u) for u in N.indices()]
    for us in itertools.product(members, repeat=r):
        cand = [int(G.mult[g, u]) for g, u in zip(padded, us)]
        if G.generates(cand):
            return cand
    raise AssertionError("no lift found although r >= d(G)")


def is_p_solvable_oracle(G: FiniteGroup, p: int) -> bool:
    """Build the upper p-series ``1 <= O_p' <= O_p',p <= ...`` and see if it reaches G."""
    N = G.trivial
    while N.order < G.order:
        if N.is_trivial():
            Q, lift = G, None
        else:
            lift = quotient_group(G, N)
            Q = lift.quotient
        K = pi_core(Q, [p], complement=True)
        if K.is_trivial():
            K = pi_core(Q, [p])
        if K.is_trivial():
            return False
        N = K if lift is None else lift.preimage(K)
    return True
