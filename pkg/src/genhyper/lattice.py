"""Subgroup lattice, Frattini subgroup and the lattice Moebius function."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CapExceeded
from .group import FiniteGroup, Subgroup, is_normal, mask_from_bools

LATTICE_CAP = 400


@dataclass
class SubgroupLattice:
    group: FiniteGroup
    nodes: list[Subgroup]
    # contains[i, j]: nodes[i] is a proper subgroup of nodes[j]
    contains: np.ndarray
    maximal: np.ndarray
    normal: np.ndarray
    moebius: dict[int, int] | None = None

    def __len__(self):
        return len(self.nodes)

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def index_of(self, k: int) -> int:
        return self.group.order // self.nodes[k].order

    def find(self, H: Subgroup) -> int:
        return self._position[H.mask]

    @property
    def _position(self):
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = self.__dict__["_pos"] = {H.mask: k for k, H in enumerate(self.nodes)}
        return pos

    def normal_subgroups(self) -> list[Subgroup]:
        return [H for H, nrm in zip(self.nodes, self.normal) if nrm]


@dataclass
class EulerianSequence:
    a: dict[int, int]
    group_order: int

    def __getitem__(self, n: int) -> int:
        return self.a.get(n, 0)

    def as_list(self) -> list[int]:
        """``[a_1, ..., a_|G|]``."""
        return [self[n] for n in range(1, self.group_order + 1)]

    def support(self) -> list[int]:
        return sorted(n for n, v in self.a.items() if v)


def all_subgroups(G: FiniteGroup, cap: int = LATTICE_CAP) -> SubgroupLattice:
    """Every subgroup of ``G`` by cyclic extension.

    Start from the cyclic subgroups, then keep adjoining single elements to
    known subgroups until nothing new appears.
    """
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds lattice cap {cap}")
    mult = G.mult
    found: dict[int, Subgroup] = {}
    queue: list[Subgroup] = []

    def add(gens):
        flags = _kernels.closure(mult, np.array(gens, dtype=np.int64))
        mask = mask_from_bools(flags)
        if mask not in found:
            H = Subgroup(mask, int(flags.sum()), tuple(gens))
            found[mask] = H
            queue.append(H)
        return mask

    add([])
    for g in range(1, G.order):
        add([g])
    head = 0
    while head < len(queue):
        H = queue[head]
        head += 1
        if H.order == G.order:
            continue
        covered = H.mask
        for g in range(1, G.order):
            if covered >> g & 1:
                continue
            add(list(H.gens) + [g])
            # <H, gh> = <H, g> for every h in H
            covered |= _coset_mask(G, H, g)
    nodes = sorted(found.values(), key=lambda H: (H.order, H.mask))
    masks = [H.mask for H in nodes]
    k = len(nodes)
    contains = np.zeros((k, k), dtype=np.bool_)
    for i in range(k):
        mi = masks[i]
        for j in range(i + 1, k):
            if nodes[j].order > nodes[i].order and masks[j] & mi == mi:
                contains[i, j] = True
    top = k - 1
    maximal = np.zeros(k, dtype=np.bool_)
    for i in range(k - 1):
        # maximal: below G, nothing strictly between
        maximal[i] = not contains[i, :top].any()
    normal = np.array([is_normal(G, H) for H in nodes], dtype=np.bool_)
    return SubgroupLattice(G, nodes, contains, maximal, normal)


def _coset_mask(G: FiniteGroup, H: Subgroup, g: int) -> int:
    # left coset gH: <H, gh> = <H, g> for h in H
    idx = G.mult[g, H.indices()]
    m = 0
    for i in idx:
        m |= 1 << int(i)
    return m


def maximal_subgroups(L: SubgroupLattice) -> list[int]:
    return [k for k in range(len(L)) if L.maximal[k]]


def frattini(G: FiniteGroup, L: SubgroupLattice | None = None) -> Subgroup:
    if L is None:
        L = all_subgroups(G)
    maxes = maximal_subgroups(L)
    if not maxes:
        return G.full
    mask = G.full.mask
    for k in maxes:
        mask &= L.nodes[k].mask
    return L.nodes[L.find(Subgroup(mask, mask.bit_count()))]


def moebius_all(L: SubgroupLattice) -> dict[int, int]:
    """``mu(G) = 1`` and ``mu(H) = -sum(mu(K) for K > H)``, top down."""
    mu: dict[int, int] = {}
    k = len(L)
    for i in range(k - 1, -1, -1):
        if i == k - 1:
            mu[i] = 1
        else:
            above = np.flatnonzero(L.contains[i])
            mu[i] = -sum(mu[int(j)] for j in above)
    L.moebius = mu
    return mu


def a_sequence(L: SubgroupLattice) -> EulerianSequence:
    if L.moebius is None:
        moebius_all(L)
    a: dict[int, int] = defaultdict(int)
    for i, H in enumerate(L.nodes):
        a[L.group.order // H.order] += L.moebius[i]
    return EulerianSequence(dict(sorted(a.items())), L.group.order)


def lattice_export(L: SubgroupLattice) -> dict:
    if L.moebius is None:
        moebius_all(L)
    G = L.group
    nodes = []
    for i, H in enumerate(L.nodes):
        nodes.append({
            "id": i,
            "order": H.order,
            "index": G.order // H.order,
            "moebius": L.moebius[i],
            "maximal": bool(L.maximal[i]),
            "normal": bool(L.normal[i]),
            "generators": [G.label(g) for g in H.gens],
        })
    pairs = [[int(i), int(j)] for i, j in zip(*np.nonzero(L.contains))]
    return {"group": G.name, "order": G.order, "nodes": nodes, "inclusion": pairs}
