"""Competition graphs of multipartite tournaments.

Decide which complete multipartite graphs ``K_{n_1,...,n_k}`` admit an
orientation whose competition graph is complete, build such orientations,
check the necessary conditions and refute the rest by exhaustive search.
"""

from .analysis import ConditionReport, Refutation, check_all, count_bound, dtilde_embedding, refute_by_counting
from .construct import ConstructionError, add_clone_vertex, lift, normalize_min_indegree, peel_low_indegree, split_part
from .core import (
    CompetitionGraph,
    Digraph,
    InvalidTournament,
    MultipartiteTournament,
    PartiteStructure,
    Violation,
    competition_graph,
    in_neighbors,
    is_complete_competition,
    out_neighbors,
    validate,
)
from .formats import FormatError, dumps, load, loads
from .oracle import OracleVerdict, exists_complete_orientation, minimal_total, synthesize_witness
from .search import SearchConfig, SearchOutcome, enumerate_all, exhaustive_search, oracle_crosscheck, refute_444
from .verify import verify_paper
from .witnesses import WitnessId, load_witness

__version__ = "0.1.0"
