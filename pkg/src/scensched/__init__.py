"""Two-machine scheduling over explicit scenario sets (MinMax and MinSum)."""
from .core import (
    M1,
    M2,
    MINMAX,
    MINSUM,
    Assignment,
    CapExceeded,
    Instance,
    LoadPair,
    ParseError,
    PreconditionError,
    SchedError,
    eval_minmax,
    eval_minsum,
    parse_instance,
    read_instance,
    scenario_loads,
    serialize_instance,
)
from .estimators import (
    BruteForceScheduler,
    DerandomizedScheduler,
    MaxCutReduction,
    MaxCutScheduler,
    NaeSatReduction,
    NaeSatScheduler,
    PairsScheduler,
    RandomScheduler,
    UnitDPScheduler,
    VectorEmbedding,
    VectorListScheduler,
    check_instance,
)
from .oracle import Optimum, brute_force, exact_random_profile, unit_dp
from .pairs import solve_pairs

__version__ = "0.1.0"
