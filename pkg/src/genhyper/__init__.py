"""Generating hypergraphs, subgroup lattices and exchange properties of finite permutation groups."""
from .catalog import GroupSpec, build, corpus_entry, default_corpus, parse_construct, semidirect_vx, vx_coordinates
from .corpus import CorpusReportRow, analyze, load_config, run_corpus
from .dirichlet import (
    detect_p_solvable, detect_solvable, p_gen_bruteforce, p_gen_exact, recover_a_from_P,
)
from .errors import (
    BudgetExceeded, CapExceeded, GroupError, InputError, LimitError, NotNormalError,
    ParseError, PreconditionError,
)
from .group import (
    FiniteGroup, Subgroup, close, derived_series, fitting_subgroup, is_normal,
    is_p_solvable_oracle, is_solvable_oracle, lift_generating_tuple, quotient_group, rank,
    subgroup_generated,
)
from .hypergraph import (
    GenHypergraph, delta, find_induced_P4, gamma, generating_graph, is_connected_reduced,
    minimal_generating_sets,
)
from .lattice import EulerianSequence, SubgroupLattice, a_sequence, all_subgroups, frattini
from .mgse import (
    basis_exchange_check, det_criterion_generates, mgse_check, predict_mgse_structurally,
    unique_maximal_normal_check,
)
from .perm import Permutation, compose, inverse, parse_cycles

__version__ = "0.1.0"
