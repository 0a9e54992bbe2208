"""Collatz path lengths at arbitrary precision, with the Mersenne catalog,
closed-form estimators, survey statistics, and checkpointed long runs.

Quick taste::

    >>> import collatzpath as cp
    >>> cp.path_length(7).d
    16
    >>> cp.path_length(cp.mersenne_number(2203)).d
    29821
    >>> round(cp.mersenne_heuristic(2203))
    29647
"""

from .catalog import (
    CATALOG_SIZE,
    RANK_45_EXPONENT_MISPRINT,
    CatalogEntry,
    catalog_entries,
    catalog_entry,
    is_prime,
    lucas_lehmer,
    mersenne_number,
    next_prime,
)
from .checkpoint import (
    CHECKPOINT_VERSION,
    Checkpoint,
    checkpoint_from_state,
    checkpoint_read,
    checkpoint_write,
    serialize_checkpoint,
)
from .engine import (
    DEFAULT_CYCLE_GUARD,
    IterationState,
    Natural,
    PathResult,
    advance,
    collatz_next,
    initial_state,
    odd_step_accelerated,
    path_length,
    raw_advance,
    trace,
)
from .errors import (
    ChecksumMismatch,
    CollatzPathError,
    CycleGuardExceeded,
    DegenerateFitError,
    DegenerateStatsError,
    DomainError,
    MalformedField,
    OriginMismatch,
    ParseError,
    RangeError,
    VersionUnsupported,
)
from .expressions import ExpressionKind, NumberExpression, parse_expression
from .heuristics import (
    C0,
    CONSTANTS,
    MERSENNE_SLOPE,
    FitResult,
    HeuristicConstants,
    fit_loglog,
    heuristic_path_length,
    mersenne_heuristic,
    verify_transit_lemma,
)
from .survey import (
    SET_C_SOURCE_RANKS,
    SET_D_FIT_RANKS,
    IndexSet,
    Provenance,
    RatioStats,
    ScanRecord,
    SetLabel,
    double_exponents,
    fit_line_indices,
    fixture_set_C,
    fixture_set_D,
    generate_set_A,
    generate_set_B,
    mersenne_set,
    ratio_stats,
    reference_pairs,
    scan_ratios,
)

__version__ = "0.1.0"

__all__ = [
    "C0",
    "CATALOG_SIZE",
    "CHECKPOINT_VERSION",
    "CONSTANTS",
    "DEFAULT_CYCLE_GUARD",
    "MERSENNE_SLOPE",
    "RANK_45_EXPONENT_MISPRINT",
    "SET_C_SOURCE_RANKS",
    "SET_D_FIT_RANKS",
    "CatalogEntry",
    "Checkpoint",
    "ChecksumMismatch",
    "CollatzPathError",
    "CycleGuardExceeded",
    "DegenerateFitError",
    "DegenerateStatsError",
    "DomainError",
    "ExpressionKind",
    "FitResult",
    "HeuristicConstants",
    "IndexSet",
    "IterationState",
    "MalformedField",
    "Natural",
    "NumberExpression",
    "OriginMismatch",
    "ParseError",
    "PathResult",
    "Provenance",
    "RangeError",
    "RatioStats",
    "ScanRecord",
    "SetLabel",
    "VersionUnsupported",
    "advance",
    "catalog_entries",
    "catalog_entry",
    "checkpoint_from_state",
    "checkpoint_read",
    "checkpoint_write",
    "collatz_next",
    "double_exponents",
    "fit_line_indices",
    "fit_loglog",
    "fixture_set_C",
    "fixture_set_D",
    "generate_set_A",
    "generate_set_B",
    "heuristic_path_length",
    "initial_state",
    "is_prime",
    "lucas_lehmer",
    "mersenne_heuristic",
    "mersenne_number",
    "mersenne_set",
    "next_prime",
    "odd_step_accelerated",
    "parse_expression",
    "path_length",
    "ratio_stats",
    "raw_advance",
    "reference_pairs",
    "scan_ratios",
    "serialize_checkpoint",
    "trace",
    "verify_transit_lemma",
]
