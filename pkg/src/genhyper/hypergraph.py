"""Generating hypergraphs Gamma(G), Delta(G) and the generating graph.

Hyperedges are sorted tuples of element indices. Lists of hyperedges are
kept in colexicographic order, which for sets of indices is the same as
ordering by the bitmask ``sum(2**i)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CapExceeded
from .group import FiniteGroup, mask_from_indices, rank, subgroup_generated

HYPERGRAPH_CAP = 200

__all__ = [
    "GenHypergraph", "GeneratingGraph", "EmptyHypergraphWarning", "rank",
    "minimal_generating_sets", "gamma", "delta", "is_connected_reduced",
    "generating_graph", "find_induced_P4", "colex_key",
]


class EmptyHypergraphWarning(UserWarning):
    pass


def colex_key(edge) -> int:
    return mask_from_indices(edge)


@dataclass
class GenHypergraph:
    kind: str                       # "gamma" or "delta"
    group: FiniteGroup
    rank: int
    hyperedges: list[tuple[int, ...]]
    isolated: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.hyperedges = sorted({tuple(sorted(e)) for e in self.hyperedges}, key=colex_key)
        covered = set()
        for e in self.hyperedges:
            covered.update(e)
        self.isolated = [v for v in range(self.group.order) if v not in covered]

    @property
    def vertices(self) -> range:
        return range(self.group.order)

    @property
    def cyclic_excluded(self) -> bool:
        return self.group.order > 1 and self.rank == 1

    def sizes(self) -> set[int]:
        return {len(e) for e in self.hyperedges}

    def is_uniform(self) -> bool:
        return len(self.sizes()) <= 1

    def edge_set(self) -> set[tuple[int, ...]]:
        return set(self.hyperedges)

    def export(self) -> dict:
        G = self.group
        return {
            "group": G.name,
            "kind": self.kind,
            "rank": self.rank,
            "vertices": [G.label(v) for v in self.vertices],
            "isolated": [G.label(v) for v in self.isolated],
            "hyperedges": [[G.label(v) for v in e] for e in self.hyperedges],
            "cyclic_excluded": self.cyclic_excluded,
        }


def _check_cap(G: FiniteGroup, cap: int):
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds hypergraph cap {cap}")


def minimal_generating_sets(G: FiniteGroup, cap: int = HYPERGRAPH_CAP) -> list[tuple[int, ...]]:
    """All minimal generating sets, in colex order.

    Depth-first over irredundant sets with increasing indices: a set whose
    element lies in the span of the others can never sit inside a minimal
    generating set, so such branches are cut.
    """
    _check_cap(G, cap)
    if G.order == 1:
        return [()]
    n = G.order
    bound = int(math.log2(n))
    found: list[tuple[int, ...]] = []

    def span(seed):
        return subgroup_generated(G, seed)

    def extend(current: list[int], current_span):
        start = current[-1] + 1 if current else 1
        for s in range(start, n):
            if s in current_span:
                continue
            cand = current + [s]
            ok = True
            for j in range(len(current)):
                rest = cand[:j] + cand[j + 1:]
                if cand[j] in span(rest):
                    ok = False
                    break
            if not ok:
                continue
            H = span(cand)
            if H.order == n:
                found.append(tuple(cand))
            elif len(cand) < bound:
                extend(cand, H)

    extend([], G.trivial)
    return sorted(found, key=colex_key)


def gamma(G: FiniteGroup, cap: int = HYPERGRAPH_CAP) -> GenHypergraph:
    _check_cap(G, cap)
    d = rank(G)
    if d == 0:
        return GenHypergraph("gamma", G, 0, [()])
    combos = _kernels.generating_combinations(G.mult, d)
    edges = [tuple(int(v) for v in row) for row in combos]
    return GenHypergraph("gamma", G, d, edges)


def delta(G: FiniteGroup, cap: int = HYPERGRAPH_CAP) -> GenHypergraph:
    edges = minimal_generating_sets(G, cap)
    return GenHypergraph("delta", G, rank(G), edges)


class DisjointSet:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def components(self) -> list[list]:
        groups: dict = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(sorted(g) for g in groups.values())


def reduced_components(H: GenHypergraph) -> list[list[int]]:
    """Connected components of the hypergraph with isolated vertices removed."""
    iso = set(H.isolated)
    ds = DisjointSet([v for v in H.vertices if v not in iso])
    for e in H.hyperedges:
        for a, b in zip(e, e[1:]):
            ds.union(a, b)
    return ds.components()


def is_connected_reduced(H: GenHypergraph) -> bool:
    if not any(H.hyperedges):
        warnings.warn(f"{H.kind} hypergraph of {H.group.name} has no nonempty hyperedges; "
                      "connectivity holds vacuously", EmptyHypergraphWarning, stacklevel=2)
        return True
    return len(reduced_components(H)) <= 1


@dataclass
class GeneratingGraph:
    group: FiniteGroup
    adjacency: np.ndarray

    @property
    def edges(self) -> list[tuple[int, int]]:
        a, b = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(x), int(y)) for x, y in zip(a, b)]

    def to_dot(self) -> str:
        G = self.group
        lines = [f'graph "{G.name}" {{']
        for v in range(G.order):
            lines.append(f'  {v} [label="{G.label(v)}"];')
        for x, y in self.edges:
            lines.append(f"  {x} -- {y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def generating_graph(G: FiniteGroup, cap: int = HYPERGRAPH_CAP) -> GeneratingGraph:
    _check_cap(G, cap)
    adj = np.zeros((G.order, G.order), dtype=np.bool_)
    if G.order > 1:
        pairs = _kernels.generating_combinations(G.mult, 2)
        adj[pairs[:, 0], pairs[:, 1]] = True
        adj[pairs[:, 1], pairs[:, 0]] = True
    return GeneratingGraph(G, adj)


def find_induced_P4(graph: GeneratingGraph):
    """First induced path ``a - b - c - d`` (scan order b, c, a, d) or None."""
    hit = _kernels.induced_p4(np.ascontiguousarray(graph.adjacency))
    if hit[0] < 0:
        return None
    return tuple(int(v) for v in hit)
