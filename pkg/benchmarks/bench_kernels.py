"""Time every kernel on the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 3] [S4 F20 "VX(3,2,2)" ...]

Numba compile time is excluded: each kernel is called once before timing.
"""
import argparse
import time

import numpy as np

from genhyper import _kernels
from genhyper.catalog import build, corpus_entry
from genhyper.hypergraph import gamma, generating_graph
from genhyper.mgse import _completion_table


def cases(G):
    mult = G.mult
    H = gamma(G)
    table = _completion_table(G, H.hyperedges)
    edges = np.array(H.hyperedges, dtype=np.int64)
    adj = np.ascontiguousarray(generating_graph(G).adjacency)
    seed = np.array(G.generators[:1], dtype=np.int64)
    t = 2 if G.order > 12 else 3
    return [
        ("closure", (mult, seed)),
        ("generating_combinations", (mult, 2)),
        ("first_generating_combination", (mult, H.rank)),
        ("count_generating_tuples", (mult, t)),
        ("first_exchange_failure", (table, edges)),
        ("induced_p4", (adj,)),
    ]


def best_of(fn, args, repeat):
    fn(*args)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("groups", nargs="*", default=["S4", "F20", "VX(3,2,2)", "A5"])
    args = ap.parse_args()
    if _kernels.NUMBA is None:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'group':<10} {'kernel':<30} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for name in args.groups:
        G = build(corpus_entry(name))
        for kernel, kargs in cases(G):
            t_np = best_of(_kernels.NUMPY[kernel], kargs, args.repeat)
            t_nb = best_of(_kernels.NUMBA[kernel], kargs, args.repeat)
            print(f"{name:<10} {kernel:<30} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
