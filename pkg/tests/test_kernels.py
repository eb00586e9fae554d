import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genhyper import _kernels
from genhyper.hypergraph import gamma
from genhyper.mgse import _completion_table

from conftest import corpus_group

pytestmark = pytest.mark.skipif(_kernels.NUMBA is None, reason="numba not installed")

NP, NB = _kernels.NUMPY, _kernels.NUMBA


@pytest.mark.parametrize("name", ["S3", "Q8", "A4", "F20", "VX(3,2,2)"])
def test_combination_kernels_agree(name):
    mult = corpus_group(name).mult
    for k in (1, 2, 3):
        assert np.array_equal(NP["generating_combinations"](mult, k), NB["generating_combinations"](mult, k))
        assert np.array_equal(NP["first_generating_combination"](mult, k),
                              NB["first_generating_combination"](mult, k))


@pytest.mark.parametrize("name", ["S3", "D8", "A4"])
def test_tuple_count_agrees(name):
    mult = corpus_group(name).mult
    for t in (1, 2, 3):
        assert NP["count_generating_tuples"](mult, t) == NB["count_generating_tuples"](mult, t)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 19), max_size=4))
def test_closure_agrees(seed):
    mult = corpus_group("F20").mult
    s = np.array(seed, dtype=np.int64)
    assert np.array_equal(NP["closure"](mult, s), NB["closure"](mult, s))
    assert NP["generates"](mult, s) == NB["generates"](mult, s)


@pytest.mark.parametrize("name", ["F20", "S4", "D12", "A4", "C2^3"])
def test_exchange_failure_agrees(name):
    G = corpus_group(name)
    H = gamma(G)
    table = _completion_table(G, H.hyperedges)
    E = np.array(H.hyperedges, dtype=np.int64)
    assert tuple(NP["first_exchange_failure"](table, E)) == tuple(NB["first_exchange_failure"](table, E))


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 9).flatmap(lambda n: st.lists(st.booleans(), min_size=n * n, max_size=n * n)))
def test_induced_p4_agrees(bits):
    n = int(round(len(bits) ** 0.5))
    a = np.array(bits, dtype=np.bool_).reshape(n, n)
    adj = np.triu(a, 1)
    adj = adj | adj.T
    assert tuple(NP["induced_p4"](adj)) == tuple(NB["induced_p4"](adj))


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, GENHYPER_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import genhyper._kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
