"""Local search for makespan minimization with the k-swap neighborhood."""

from kswap.core import (
    Instance,
    InvalidInputError,
    LoadSummary,
    Schedule,
    SwapMove,
    apply_move,
    compute_loads,
    is_improving,
)
from kswap.derand import build_splitter, derandomized_search, mapping_schedule
from kswap.driver import OperatorKind, RunStats, local_search, lpt_schedule, phi
from kswap.generators import (
    adversarial_sequence,
    gen_ksum_reduction,
    gen_lowerbound,
    gen_uniform,
    iter_adversarial,
    omega,
)
from kswap.neighborhood import (
    SearchResult,
    gamma,
    mim_single_run,
    naive_search,
    randomized_search,
)
from kswap.oracle import oracle_improving, oracle_ksum

__version__ = "0.1.0"
