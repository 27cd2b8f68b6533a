"""Online firefighting on trees, 1-almost trees, and cactus graphs.

A round begins with a batch of firefighters protecting vertices, then the
fire spreads one hop from every burning vertex.  The library provides the
game engine, online strategies with square-root competitive guarantees, an
exact offline solver, adversarial instance families, and randomized
property suites, all behind a deterministic CLI.
"""

from .algorithms import (
    AlgorithmError,
    AlgorithmKind,
    BreakDetail,
    Choice,
    CooldownState,
    NoEligibleBreakVertexError,
    NoEligibleCycleError,
    NotATreeError,
    ProtectEvent,
    RunResult,
    WrongGraphClassError,
    alg_a_round,
    alg_c_round,
    alg_e_round,
    greedy_tree_round,
    improved_break,
    run_algorithm,
)
from .engine import (
    GameError,
    GameNotFinishedError,
    GameState,
    Instance,
    InvalidScheduleError,
    NoFirefighterLeftError,
    ProtectionSchedule,
    Status,
    TraceEntry,
    VertexUnavailableError,
    new_game,
    profit_of_protections,
    replay,
)
from .fileformat import (
    FORMAT_VERSION,
    ParseError,
    UnknownVersionError,
    parse_instance,
    serialize_instance,
)
from .graph import (
    CactusDecomposition,
    DisconnectedError,
    EdgeNotOnCycleError,
    Graph,
    GraphClass,
    GraphError,
    InvalidTargetError,
    NotCactusError,
    NotRootCycleError,
    RootInSetError,
    Subgraph,
    VertexNotOnCycleError,
    break_subgraph,
    break_subgraph_edge,
    ceil_sqrt,
    count_safe,
    covered_set,
    dist,
    induced_subgraph,
    tolerance,
    tolerance_edge,
    validate_and_decompose,
    weight,
)
from .instances import (
    AdversaryReport,
    BadParamsError,
    alge_tight_witness_schedule,
    make_alge_tight,
    make_tadpole,
    random_cactus,
    random_one_almost_tree,
    random_sequence,
    random_tree,
    tadpole_adversary_run,
)
from .lemmas import SUITES, SuiteResult, UnknownSuiteError, run_suite
from .optimum import (
    DEFAULT_MAX_N,
    DEFAULT_NODE_BUDGET,
    GraphTooLargeError,
    OptError,
    OptResult,
    SearchBudgetExceededError,
    normalize_nonredundant,
    opt_upper_bound,
    solve_opt,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryReport",
    "AlgorithmError",
    "AlgorithmKind",
    "BadParamsError",
    "BreakDetail",
    "CactusDecomposition",
    "Choice",
    "CooldownState",
    "DEFAULT_MAX_N",
    "DEFAULT_NODE_BUDGET",
    "DisconnectedError",
    "EdgeNotOnCycleError",
    "FORMAT_VERSION",
    "GameError",
    "GameNotFinishedError",
    "GameState",
    "Graph",
    "GraphClass",
    "GraphError",
    "GraphTooLargeError",
    "Instance",
    "InvalidScheduleError",
    "InvalidTargetError",
    "NoEligibleBreakVertexError",
    "NoEligibleCycleError",
    "NoFirefighterLeftError",
    "NotATreeError",
    "NotCactusError",
    "NotRootCycleError",
    "OptError",
    "OptResult",
    "ParseError",
    "ProtectEvent",
    "ProtectionSchedule",
    "RootInSetError",
    "RunResult",
    "SUITES",
    "SearchBudgetExceededError",
    "Status",
    "Subgraph",
    "SuiteResult",
    "TraceEntry",
    "UnknownSuiteError",
    "UnknownVersionError",
    "VertexNotOnCycleError",
    "VertexUnavailableError",
    "WrongGraphClassError",
    "alg_a_round",
    "alg_c_round",
    "alg_e_round",
    "alge_tight_witness_schedule",
    "break_subgraph",
    "break_subgraph_edge",
    "ceil_sqrt",
    "count_safe",
    "covered_set",
    "dist",
    "greedy_tree_round",
    "improved_break",
    "induced_subgraph",
    "make_alge_tight",
    "make_tadpole",
    "new_game",
    "normalize_nonredundant",
    "opt_upper_bound",
    "parse_instance",
    "profit_of_protections",
    "random_cactus",
    "random_one_almost_tree",
    "random_sequence",
    "random_tree",
    "replay",
    "run_algorithm",
    "run_suite",
    "serialize_instance",
    "solve_opt",
    "tadpole_adversary_run",
    "tolerance",
    "tolerance_edge",
    "validate_and_decompose",
    "weight",
]
