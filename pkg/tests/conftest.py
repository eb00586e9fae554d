import functools
import itertools

import pytest

from genhyper.catalog import build, corpus_entry, default_corpus, parse_construct
from genhyper.perm import compose


@functools.lru_cache(maxsize=None)
def corpus_group(name):
    return build(corpus_entry(name))


@functools.lru_cache(maxsize=None)
def construct(text):
    return build(parse_construct(text))


def corpus_names(include_lattice_only=True):
    return [s.name for s in default_corpus() if include_lattice_only or not s.lattice_only]


def naive_span(perms):
    """Closure of a set of Permutation objects by repeated products; no tables involved."""
    perms = list(perms)
    if not perms:
        return set()
    ident = type(perms[0]).identity(perms[0].degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in perms:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def naive_subgroups(G, max_gens=3):
    """All subgroups as frozensets of element indices, by closing small subsets."""
    elems = [G.perm(i) for i in range(G.order)]
    index = {p: i for i, p in enumerate(elems)}
    found = set()
    for k in range(max_gens + 1):
        for combo in itertools.combinations(range(G.order), k):
            span = naive_span([elems[i] for i in combo]) or {elems[0]}
            found.add(frozenset(index[p] for p in span))
    return found


@pytest.fixture
def F20():
    return corpus_group("F20")
