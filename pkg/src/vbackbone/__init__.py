"""Connected dominating set (virtual backbone) construction for unit-disk graphs."""

from .algorithms import (
    ALGORITHMS,
    CdsResult,
    NodeRole,
    connect_dominators,
    das_cds,
    greedy_dominating_set,
    mcds2,
    mmcds,
    prune_cds,
    run_algorithm,
    wuli_mcds1,
)
from .errors import (
    CannotConnectError,
    CdsError,
    ConfigError,
    GenerationFailedError,
    GraphFormatError,
    InvalidNodeError,
    OracleViolationError,
    PreconditionError,
    TooLargeError,
)
from .graph import Graph
from .topology import GenSpec, GeometricTopology, generate, to_graph
from .verify import check_cds, exact_min_cds, is_valid_cds, performance_ratio

__version__ = "0.1.0"
