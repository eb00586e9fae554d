"""Per-group analysis rows and the corpus runner.

Each row carries the computed invariants plus a ``checks`` map from
property name to True / False / None (not applicable). Any False check is
a property violation and makes the run fail.
"""
from __future__ import annotations

import json
import signal
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from importlib import resources

from .catalog import GroupSpec, build
from .dirichlet import (
    detect_p_solvable, detect_solvable, p_gen_bruteforce, p_gen_exact, recover_a_from_P,
)
from .errors import BudgetExceeded, GroupError, LimitError
from .group import (
    FiniteGroup, derived_subgroup, is_nilpotent_oracle, is_p_solvable_oracle,
    is_solvable_oracle, prime_factors, quotient_group, rank, subgroup_generated,
)
from .hypergraph import delta, gamma, is_connected_reduced
from .lattice import a_sequence, all_subgroups, frattini
from .mgse import (
    basis_exchange_check, mgse_check, mgse_fails_for, mgse_holds,
    predict_mgse_structurally, unique_maximal_normal_check,
)


def load_config(path=None, **overrides) -> dict:
    text = resources.files("genhyper").joinpath("data/defaults.json").read_text()
    config = json.loads(text)
    if path is not None:
        with open(path) as fh:
            config.update(json.load(fh))
    config.update({k: v for k, v in overrides.items() if v is not None})
    return config


@dataclass
class CorpusReportRow:
    name: str
    order: int | None = None
    rank: int | None = None
    frattini_order: int | None = None
    cyclic: bool | None = None
    nilpotent: bool | None = None
    solvable_oracle: bool | None = None
    solvable_detector: bool | None = None
    delta_edges: int | None = None
    gamma_eq_delta: bool | None = None
    delta_connected: bool | None = None
    gamma_connected: bool | None = None
    mgse: bool | None = None
    matroid: bool | None = None
    predicted_mgse: bool | None = None
    witness: str | None = None
    status: str = "ok"
    checks: dict = field(default_factory=dict)

    @property
    def violations(self) -> list[str]:
        return [k for k, v in self.checks.items() if v is False]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["violations"] = self.violations
        return d


COLUMNS = ["name", "order", "rank", "frattini_order", "cyclic", "nilpotent",
           "solvable_oracle", "solvable_detector", "delta_edges", "gamma_eq_delta",
           "delta_connected", "gamma_connected", "mgse", "matroid", "predicted_mgse",
           "witness", "status"]


class _Timeout(BudgetExceeded):
    pass


@contextmanager
def _deadline(seconds):
    if not seconds or not hasattr(signal, "setitimer"):
        yield
        return

    def handler(signum, frame):
        raise _Timeout(f"timed out after {seconds} s")

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _witness_text(G: FiniteGroup, witness) -> str | None:
    if not witness:
        return None
    X, Y, i = witness
    fmt = lambda e: "{" + ", ".join(G.label(v) for v in e) + "}"  # noqa: E731
    return f"X={fmt(X)} Y={fmt(Y)} i={i}"


def analyze(spec: GroupSpec, config: dict | None = None) -> CorpusReportRow:
    config = config or load_config()
    row = CorpusReportRow(spec.name)
    try:
        with _deadline(config.get("timeout")):
            _fill_row(row, spec, config)
    except _Timeout as exc:
        row.status = f"skipped: {exc}"
    except LimitError as exc:
        row.status = f"skipped: {exc}"
    return row


def _fill_row(row: CorpusReportRow, spec: GroupSpec, config: dict):
    checks = row.checks
    G = build(spec, order_cap=config["order_cap"], degree_cap=config["degree_cap"])
    row.order = G.order
    row.cyclic = G.is_cyclic()
    row.nilpotent = is_nilpotent_oracle(G)
    row.solvable_oracle = is_solvable_oracle(G)

    L = all_subgroups(G, cap=config["lattice_cap"])
    Phi = frattini(G, L)
    row.frattini_order = Phi.order
    seq = a_sequence(L)
    row.solvable_detector = detect_solvable(seq)
    checks["solvable_detector"] = row.solvable_detector == row.solvable_oracle
    checks["p_solvable_detector"] = all(
        detect_p_solvable(seq, p) == is_p_solvable_oracle(G, p) for p in prime_factors(G.order))

    if G.order <= config["hall_max_order"]:
        checks["hall_identity"] = all(
            p_gen_exact(seq, t) == p_gen_bruteforce(G, t, cap=config["tuple_cap"])
            for t in config["hall_ts"])
    if G.order <= config["recover_max_order"]:
        P = [p_gen_exact(seq, t) for t in range(1, G.order + 1)]
        rec = recover_a_from_P(P, G.order, cap=config["recover_cap"])
        checks["round_trip"] = rec.as_list() == seq.as_list()

    if spec.lattice_only:
        row.status = "ok (lattice-only)"
        return

    row.rank = rank(G)
    cap = config["hypergraph_cap"]
    D = delta(G, cap=cap)
    Gm = gamma(G, cap=cap)
    row.delta_edges = len(D.hyperedges)
    row.gamma_eq_delta = Gm.hyperedges == D.hyperedges
    checks["gamma_subset_delta"] = set(Gm.hyperedges) <= set(D.hyperedges)
    checks["delta_minimality"] = all(
        G.generates(e) and all(not G.generates(e[:j] + e[j + 1:]) for j in range(len(e)))
        for e in D.hyperedges)
    if not row.cyclic:
        checks["frattini_identity"] = set(D.isolated) == {int(v) for v in Phi.indices()}
        row.delta_connected = is_connected_reduced(D)
        checks["delta_connected"] = row.delta_connected
    if row.rank >= 3:
        row.gamma_connected = is_connected_reduced(Gm)
        checks["gamma_connected"] = row.gamma_connected

    rep = mgse_check(G, budget=config["mgse_budget"], gamma_h=Gm, delta_h=D)
    row.mgse = rep.holds
    row.matroid = rep.matroid
    row.witness = _witness_text(G, rep.witness)
    checks["exchange_coherence"] = rep.holds == rep.exchange_holds
    if basis_exchange_check(D)[0]:
        checks["matroid_uniform"] = row.gamma_eq_delta
    if rep.witness:
        checks["witness_replays"] = mgse_fails_for(G, *rep.witness)

    if not row.cyclic and row.solvable_oracle:
        pred = predict_mgse_structurally(G)
        row.predicted_mgse = pred.predicted_mgse
        checks["classification"] = pred.predicted_mgse == rep.holds

    frat_q = quotient_group(G, Phi).quotient
    checks["frattini_reduction"] = mgse_holds(frat_q) == rep.holds
    if rep.holds:
        normals = [N for N in L.normal_subgroups() if N.order > 1]
        checks["quotient_closure"] = all(
            mgse_holds(quotient_group(G, N).quotient) for N in normals)
        if not row.cyclic:
            ab = G.order // derived_subgroup(G).order
            checks["abelianization_p_group"] = len(prime_factors(ab)) <= 1
        if not row.nilpotent:
            um = unique_maximal_normal_check(G, L)
            checks["unique_maximal_normal"] = bool(
                um.unique and um.quotient_cyclic and um.quotient_prime)


def _analyze_job(args):
    spec_dict, config = args
    return analyze(GroupSpec.from_dict(spec_dict), config).to_dict()


def run_corpus(specs, config: dict | None = None, jobs: int = 1) -> list[CorpusReportRow]:
    """Analyze every spec; rows come back in input order whatever ``jobs`` is."""
    config = config or load_config()
    specs = list(specs)
    if jobs <= 1:
        return [analyze(s, config) for s in specs]
    payload = [(s.to_dict(), config) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        dicts = list(pool.map(_analyze_job, payload))
    rows = []
    for d in dicts:
        d.pop("violations")
        rows.append(CorpusReportRow(**d))
    return rows
