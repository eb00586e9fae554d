"""Acceptance criteria 1-10, each at its stated (exact) tolerance.

Every test prints one ``PASS``/``FAIL`` line. Run ``pytest tests/test_acceptance.py -v``
or ``python tests/test_acceptance.py``.
"""
import itertools
import time

import pytest

from genhyper.catalog import default_corpus, vx_coordinates
from genhyper.dirichlet import (
    detect_p_solvable, detect_solvable, p_gen_bruteforce, p_gen_exact, probabilities,
    recover_a_from_P,
)
from genhyper.group import (
    derived_subgroup, is_nilpotent_oracle, is_p_solvable_oracle, is_solvable_oracle,
    prime_factors, quotient_group,
)
from genhyper.hypergraph import delta, gamma, is_connected_reduced
from genhyper.lattice import a_sequence, all_subgroups, frattini
from genhyper.mgse import (
    basis_exchange_check, det_criterion_generates, mgse_check, mgse_fails_for, mgse_holds,
    predict_mgse_structurally, unique_maximal_normal_check,
)
from genhyper.perm import parse_cycles

from conftest import corpus_group

NAMES = [s.name for s in default_corpus()]


def _line(n, ok, detail, started):
    return f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {detail} [{time.perf_counter() - started:.1f}s]"


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, started):
        with capsys.disabled():
            print("\n" + _line(n, ok, detail, started))
        assert ok, detail
    return emit


def _seq(G):
    return a_sequence(all_subgroups(G))


def criterion_1():
    bad = []
    checked = 0
    for name in NAMES:
        G = corpus_group(name)
        if G.is_cyclic():
            continue
        checked += 1
        D = delta(G)
        phi = {int(v) for v in frattini(G).indices()}
        if set(D.isolated) != phi or not is_connected_reduced(D):
            bad.append(name)
    return not bad, f"isolated(Delta) = Frat and Delta~ connected on {checked} non-cyclic groups; failures {bad}"


def criterion_2():
    bad, checked = [], []
    for name in NAMES:
        G = corpus_group(name)
        if G.order > 200:
            continue
        Gm = gamma(G)
        if Gm.rank >= 3:
            checked.append(name)
            if not is_connected_reduced(Gm):
                bad.append(name)
    ok = not bad and set(checked) >= {"C2^3", "VX(3,2,2)"}
    return ok, f"Gamma~ connected for d >= 3 groups {checked}; failures {bad}"


def criterion_3():
    bad, checked = [], 0
    for name in NAMES:
        G = corpus_group(name)
        if G.order > 60:
            continue
        checked += 1
        seq = _seq(G)
        for t in (1, 2, 3):
            if p_gen_exact(seq, t) != p_gen_bruteforce(G, t, cap=10**7):
                bad.append((name, t))
    return not bad, f"P_exact == P_bruteforce (exact rationals), t=1..3, {checked} groups of order <= 60; failures {bad}"


def criterion_4():
    bad, checked = [], 0
    for name in NAMES:
        G = corpus_group(name)
        if G.order > 24:
            continue
        checked += 1
        seq = _seq(G)
        P = probabilities(seq, range(1, G.order + 1))
        if recover_a_from_P(P, G.order).as_list() != seq.as_list():
            bad.append(name)
    return not bad, f"a_n recovered exactly from P(1..|G|) on {checked} groups of order <= 24; failures {bad}"


def criterion_5():
    bad = []
    for name in NAMES:
        G = corpus_group(name)
        seq = _seq(G)
        if detect_solvable(seq) != is_solvable_oracle(G):
            bad.append(name)
        for p in prime_factors(G.order):
            if detect_p_solvable(seq, p) != is_p_solvable_oracle(G, p):
                bad.append(f"{name}/p={p}")
    nonsolvable = [n for n in NAMES if not detect_solvable(_seq(corpus_group(n)))]
    ok = not bad and nonsolvable == ["A5", "S5"]
    return ok, f"detectors match oracles on {len(NAMES)} groups, detector-nonsolvable {nonsolvable}; failures {bad}"


POSITIVES = ["C2^2", "C2^3", "C4", "Q8", "D8", "C3^2", "S3", "D10", "A4", "VX(3,2,2)", "VX(4,3,1)"]
NEGATIVES = ["C2xC6", "D12", "S4", "F20"]


def criterion_6():
    bad = []
    compared = 0
    for name in NAMES:
        G = corpus_group(name)
        if G.is_cyclic() or not is_solvable_oracle(G):
            continue
        compared += 1
        pred = predict_mgse_structurally(G)
        holds = mgse_check(G).holds
        if not pred.applicable or pred.predicted_mgse != holds:
            bad.append(name)
    for name in POSITIVES:
        if not mgse_check(corpus_group(name)).holds:
            bad.append(f"{name} expected positive")
    for name in NEGATIVES:
        if mgse_check(corpus_group(name)).holds:
            bad.append(f"{name} expected negative")
    # the listed C4 is cyclic; the classifier declines it and the direct check above covers it
    return not bad, (f"mgse_check == structural prediction on {compared} non-cyclic solvable groups, "
                     f"{len(POSITIVES)} positives / {len(NEGATIVES)} negatives confirmed; failures {bad}")


def criterion_7():
    G = corpus_group("F20")
    Gm, D = gamma(G), delta(G)
    x = G.index_of(parse_cycles("(2,3,4,5)", 5))
    y = G.index_of(parse_cycles("(1,2,3,5,4)", 5))
    x2, xy = int(G.mult[x, x]), int(G.mult[x, y])
    A, B = [x2, xy], [x, y]
    rep = mgse_check(G)
    h1 = G.generates([x2, x])
    h2 = G.generates([x2, y])
    ok = (Gm.hyperedges == D.hyperedges and D.sizes() == {2} and not rep.holds
          and G.generates(A) and G.generates(B) and not h1 and not h2
          and mgse_fails_for(G, A, B, 1))
    return ok, (f"F20: Gamma = Delta ({len(D.hyperedges)} sets, all of size 2), mgse={rep.holds}, "
                f"<x^2,x> proper={not h1}, <x^2,y> proper={not h2}")


def criterion_8():
    bad = []
    for name in NAMES:
        G = corpus_group(name)
        Gm, D = gamma(G), delta(G)
        if mgse_check(G, gamma_h=Gm, delta_h=D).holds != basis_exchange_check(Gm)[0]:
            bad.append(f"{name}: mgse vs exchange(Gamma)")
        if basis_exchange_check(D)[0] and Gm.hyperedges != D.hyperedges:
            bad.append(f"{name}: exchange(Delta) but Gamma != Delta")
    return not bad, f"exchange coherence on all {len(NAMES)} corpus groups; failures {bad}"


def criterion_9():
    bad = []
    positives = []
    for name in NAMES:
        G = corpus_group(name)
        if G.order > 200 or not mgse_holds(G):
            continue
        positives.append(name)
        L = all_subgroups(G)
        for N in L.normal_subgroups():
            if N.order > 1 and not mgse_holds(quotient_group(G, N).quotient):
                bad.append(f"{name}/N{N.order}")
        if mgse_holds(quotient_group(G, frattini(G, L)).quotient) is not True:
            bad.append(f"{name}: G/Frat")
        # cyclic groups are outside the hypotheses (C6, C12 have MGSE but G/G' is not a p-group)
        if not G.is_cyclic() and len(prime_factors(G.order // derived_subgroup(G).order)) > 1:
            bad.append(f"{name}: G/G' not a p-group")
        if not is_nilpotent_oracle(G):
            um = unique_maximal_normal_check(G, L)
            if not (um.unique and um.quotient_cyclic and um.quotient_prime):
                bad.append(f"{name}: maximal normal subgroup")
    return not bad, f"closure properties on {len(positives)} MGSE-positive groups; failures {bad}"


def criterion_10():
    bad = []
    counts = {}
    for name, q, p, dl in (("VX(3,2,1)", 3, 2, 1), ("VX(3,2,2)", 3, 2, 2)):
        G = corpus_group(name)
        coords = [vx_coordinates(G, q, dl, i) for i in range(G.order)]
        n = 0
        for tup in itertools.product(range(G.order), repeat=dl + 1):
            n += 1
            if det_criterion_generates(q, p, dl, [coords[i] for i in tup]) != G.generates(tup):
                bad.append((name, tup))
        counts[name] = n
    return not bad, f"determinant test == closure on all tuples {counts}; mismatches {bad[:3]}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_acceptance(n, report):
    started = time.perf_counter()
    ok, detail = CRITERIA[n - 1]()
    report(n, ok, detail, started)


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, start=1):
        started = time.perf_counter()
        ok, detail = fn()
        failed += not ok
        print(_line(n, ok, detail, started))
    raise SystemExit(1 if failed else 0)
