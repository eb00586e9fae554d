"""Command-line interface.

Exit codes: 0 success, 1 property violation, 2 input error, 3 cap/budget/timeout.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from fractions import Fraction

from . import _kernels
from .catalog import build, corpus_entry, default_corpus, load_corpus_file, load_group_file, parse_construct
from .corpus import COLUMNS, load_config, run_corpus
from .dirichlet import (
    detect_p_solvable, detect_solvable, p_gen_bruteforce, p_gen_exact,
    p_solvability_violations, recover_a_from_P, solvability_violations,
)
from .errors import InputError, LimitError
from .group import (
    center, derived_series, fitting_subgroup, is_nilpotent_oracle, is_p_solvable_oracle,
    is_solvable_oracle, prime_factors, rank,
)
from .hypergraph import delta, find_induced_P4, gamma, generating_graph, is_connected_reduced
from .lattice import a_sequence, all_subgroups, frattini, lattice_export
from .mgse import mgse_check, predict_mgse_structurally


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(data, fmt: str, out=None):
    """Print a dict (record) or a list of dicts (table)."""
    out = out or sys.stdout
    if fmt == "json":
        json.dump(data, out, indent=2, default=str)
        out.write("\n")
        return
    rows = data if isinstance(data, list) else None
    if fmt == "csv":
        buf = io.StringIO()
        if rows is None:
            w = csv.writer(buf)
            w.writerow(["key", "value"])
            for k, v in data.items():
                w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
        elif rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), extrasaction="ignore")
            w.writeheader()
            for r in rows:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                            for k, v in r.items()})
        out.write(buf.getvalue())
        return
    if rows is None:
        width = max((len(k) for k in data), default=0)
        for k, v in data.items():
            if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
                out.write(f"{k}:\n")
                for item in v:
                    out.write(f"  {item}\n")
            else:
                out.write(f"{k.ljust(width)}  {v}\n")
        return
    if not rows:
        return
    cols = list(rows[0])
    cells = [[("" if r.get(c) is None else str(r.get(c))) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    for row in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _load_group(args, config):
    sources = [s for s in (args.group, args.construct, args.name) if s]
    if len(sources) != 1:
        raise InputError("give exactly one of --group, --construct, --name")
    if args.group:
        spec = load_group_file(args.group)
    elif args.construct:
        spec = parse_construct(args.construct)
    else:
        spec = corpus_entry(args.name)
    return build(spec, order_cap=config["order_cap"], degree_cap=config["degree_cap"])


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_group_info(args, config):
    G = _load_group(args, config)
    orders = Counter(int(o) for o in G.element_orders)
    data = {
        "name": G.name,
        "order": G.order,
        "degree": G.degree,
        "generators": [G.label(g) for g in G.generators],
        "rank": rank(G),
        "cyclic": G.is_cyclic(),
        "abelian": G.is_abelian(),
        "nilpotent": is_nilpotent_oracle(G),
        "solvable": is_solvable_oracle(G),
        "derived_length": len(derived_series(G)) - 1,
        "center_order": center(G).order,
        "fitting_order": fitting_subgroup(G).order,
        "element_orders": dict(sorted(orders.items())),
        "backend": _kernels.BACKEND,
    }
    if G.order <= config["lattice_cap"]:
        data["frattini_order"] = frattini(G).order
    _emit(data, args.format)
    return 0


def cmd_lattice(args, config):
    G = _load_group(args, config)
    L = all_subgroups(G, cap=config["lattice_cap"])
    exp = lattice_export(L)
    if args.format == "json":
        _emit(exp, "json")
    else:
        rows = [{k: n[k] for k in ("id", "order", "index", "moebius", "maximal", "normal")}
                for n in exp["nodes"]]
        _emit(rows, args.format)
        if args.format == "text":
            seq = a_sequence(L)
            print("a_n:", ", ".join(f"a_{n}={seq[n]}" for n in seq.support()))
    return 0


def cmd_hypergraph(args, config):
    G = _load_group(args, config)
    cap = config["hypergraph_cap"]
    H = gamma(G, cap=cap) if args.kind == "gamma" else delta(G, cap=cap)
    exp = H.export()
    exp["connected_reduced"] = is_connected_reduced(H)
    if args.dot:
        graph = generating_graph(G, cap=cap)
        with open(args.dot, "w") as fh:
            fh.write(graph.to_dot())
        p4 = find_induced_P4(graph)
        exp["induced_P4"] = None if p4 is None else [G.label(v) for v in p4]
    if args.format == "json":
        _emit(exp, "json")
    elif args.format == "csv":
        _emit([{"hyperedge": " ".join(e)} for e in exp["hyperedges"]], "csv")
    else:
        summary = {k: v for k, v in exp.items() if k not in ("vertices", "hyperedges")}
        summary["hyperedge_count"] = len(exp["hyperedges"])
        _emit(summary, "text")
        for e in exp["hyperedges"]:
            print("  {" + ", ".join(e) + "}")
    return 0


def cmd_dirichlet(args, config):
    G = _load_group(args, config)
    L = all_subgroups(G, cap=config["lattice_cap"])
    seq = a_sequence(L)
    ts = _int_list(args.t)
    data = {
        "group": G.name,
        "order": G.order,
        "a": {str(n): seq[n] for n in seq.support()},
        "P": {str(t): _frac(p_gen_exact(seq, t)) for t in ts},
    }
    if args.bruteforce:
        data["P_bruteforce"] = {str(t): _frac(p_gen_bruteforce(G, t, cap=config["tuple_cap"]))
                                for t in ts}
    if args.recover:
        P = [p_gen_exact(seq, t) for t in range(1, G.order + 1)]
        rec = recover_a_from_P(P, G.order, cap=config["recover_cap"])
        data["a_recovered"] = {str(n): rec[n] for n in rec.support()}
        data["round_trip"] = rec.as_list() == seq.as_list()
    _emit(data, args.format)
    if args.recover and not data["round_trip"]:
        return 1
    if args.bruteforce and data["P_bruteforce"] != data["P"]:
        return 1
    return 0


def cmd_solvable(args, config):
    G = _load_group(args, config)
    seq = a_sequence(all_subgroups(G, cap=config["lattice_cap"]))
    primes = [args.p] if args.p else prime_factors(G.order)
    data = {"group": G.name, "order": G.order}
    status = 0
    if not args.p:
        det, oracle = detect_solvable(seq), is_solvable_oracle(G)
        data.update(solvable_detector=det, solvable_oracle=oracle,
                    violations=[list(v) for v in solvability_violations(seq)[:5]])
        status |= det != oracle
    for p in primes:
        det, oracle = detect_p_solvable(seq, p), is_p_solvable_oracle(G, p)
        data[f"{p}-solvable_detector"] = det
        data[f"{p}-solvable_oracle"] = oracle
        if not det:
            data[f"{p}-violations"] = [list(v) for v in p_solvability_violations(seq, p)[:5]]
        status |= det != oracle
    _emit(data, args.format)
    return int(status)


def cmd_mgse(args, config):
    G = _load_group(args, config)
    rep = mgse_check(G, budget=config["mgse_budget"])
    data = rep.export(G)
    if args.structure:
        data["structure"] = predict_mgse_structurally(G).export()
    if args.format == "text":
        flat = {k: v for k, v in data.items() if not isinstance(v, dict)}
        _emit(flat, "text")
        for key in ("witness", "exchange_witness"):
            if data.get(key):
                print(f"{key}: {data[key]}")
        if args.structure:
            for k, v in data["structure"].items():
                print(f"structure.{k}: {v}")
    else:
        _emit(data, args.format)
    return 0


def cmd_corpus_run(args, config):
    if args.suite == "default":
        specs = default_corpus()
    else:
        specs = load_corpus_file(args.suite)
    rows = run_corpus(specs, config, jobs=args.jobs)
    if args.format == "json":
        _emit([r.to_dict() for r in rows], "json")
    else:
        table = [{c: getattr(r, c) for c in COLUMNS} | {"violations": ",".join(r.violations)}
                 for r in rows]
        if args.format == "text":
            for t in table:
                t.pop("witness")
        _emit(table, args.format)
    bad = [r for r in rows if r.violations]
    skipped = [r for r in rows if r.status.startswith("skipped")]
    if bad:
        print(f"property violations in: {', '.join(r.name for r in bad)}", file=sys.stderr)
        return 1
    if skipped:
        print(f"skipped: {', '.join(r.name for r in skipped)}", file=sys.stderr)
        return 3
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--config", help="JSON file overriding caps and timeouts")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timeout", type=float, help="per-group timeout in seconds")
    common.add_argument("--seedless", action="store_true",
                        help="reserved; every computation is already deterministic")

    grp = argparse.ArgumentParser(add_help=False, parents=[common])
    src = grp.add_argument_group("group selection")
    src.add_argument("--group", help="group definition file (JSON)")
    src.add_argument("--construct", help="construction, e.g. dihedral:6 or semidirect_vx:3,2,2")
    src.add_argument("--name", help="name of a group in the default corpus")

    parser = argparse.ArgumentParser(
        prog="genhyper", description="Generating sets, subgroup lattices and exchange properties of small permutation groups.",
        epilog="exit codes: 0 ok, 1 property violation, 2 input error, 3 cap, budget or timeout")
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="group-level information")
    gsub = p_group.add_subparsers(dest="action", required=True)
    gsub.add_parser("info", parents=[grp]).set_defaults(func=cmd_group_info)

    sub.add_parser("lattice", parents=[grp], help="subgroup lattice with Moebius values") \
        .set_defaults(func=cmd_lattice)

    p = sub.add_parser("hypergraph", parents=[grp], help="Gamma(G) or Delta(G)")
    p.add_argument("--kind", choices=["gamma", "delta"], default="delta")
    p.add_argument("--dot", help="also write the generating graph in DOT format to this file")
    p.set_defaults(func=cmd_hypergraph)

    p = sub.add_parser("dirichlet", parents=[grp], help="a_n(G) and P_G(t)")
    p.add_argument("--t", default="1,2,3", help="comma-separated values of t")
    p.add_argument("--recover", action="store_true", help="solve for a_n from P(1..|G|)")
    p.add_argument("--bruteforce", action="store_true", help="also count generating tuples")
    p.set_defaults(func=cmd_dirichlet)

    p = sub.add_parser("solvable", parents=[grp], help="(p-)solvability from a_n(G)")
    p.add_argument("--p", type=int, help="test p-solvability for this prime only")
    p.set_defaults(func=cmd_solvable)

    p = sub.add_parser("mgse", parents=[grp], help="exchange properties of generating sets")
    p.add_argument("--structure", action="store_true", help="add the structural prediction")
    p.set_defaults(func=cmd_mgse)

    p_corpus = sub.add_parser("corpus", help="corpus runs")
    csub = p_corpus.add_subparsers(dest="action", required=True)
    p = csub.add_parser("run", parents=[common])
    p.add_argument("--suite", default="default", help="'default' or a corpus JSON file")
    p.set_defaults(func=cmd_corpus_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config, timeout=args.timeout)
        if args.command != "corpus":
            config["timeout"] = None
        return args.func(args, config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LimitError as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
