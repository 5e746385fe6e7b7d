"""Multi-pattern byte-string matching toolkit.

Serial Aho-Corasick matching, a failure-less trie engine run data-parallel
over a worker pool, workload generation, a noise-hardened benchmark harness
with serial/parallel crossover detection, and a calibrated dispatcher that
picks the engine per input size.
"""

from ._kernels import active_backend, use_backend
from .automaton import (
    AcAutomaton,
    FailurelessTrie,
    build_automaton,
    build_failure,
    build_output,
    build_trie,
)
from .bench import (
    CrossoverReport,
    CrossoverRow,
    ReplayClock,
    SweepPoint,
    SweepSeries,
    TimingSample,
    find_crossover,
    measure,
    parse_crossover_csv,
    parse_sweep_csv,
    sweep_pattern_counts,
    sweep_sizes,
    write_crossover_csv,
    write_sweep_csv,
)
from .dispatch import (
    Calibration,
    CalibrationError,
    EngineChoice,
    SweepParams,
    calibrate,
    dispatch_match,
    load_calibration,
    route,
    save_calibration,
)
from .engines import (
    EngineKind,
    MatchEvent,
    MatchSemantics,
    longest_per_start,
    match_parallel,
    match_serial,
    serialize_matches,
    walk_from,
)
from .patterns import (
    DuplicatePatternError,
    InvalidPatternError,
    PatternSet,
    PatternSetError,
    parse_pattern_file,
    read_pattern_file,
    write_pattern_file,
)
from .workload import ALPHABET, RNG_ALGORITHM, WorkloadSpec, gen_patterns, gen_text

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "AcAutomaton",
    "Calibration",
    "CalibrationError",
    "CrossoverReport",
    "CrossoverRow",
    "DuplicatePatternError",
    "EngineChoice",
    "EngineKind",
    "FailurelessTrie",
    "InvalidPatternError",
    "MatchEvent",
    "MatchSemantics",
    "PatternSet",
    "PatternSetError",
    "RNG_ALGORITHM",
    "ReplayClock",
    "SweepParams",
    "SweepPoint",
    "SweepSeries",
    "TimingSample",
    "WorkloadSpec",
    "active_backend",
    "build_automaton",
    "build_failure",
    "build_output",
    "build_trie",
    "calibrate",
    "dispatch_match",
    "find_crossover",
    "gen_patterns",
    "gen_text",
    "load_calibration",
    "longest_per_start",
    "match_parallel",
    "match_serial",
    "measure",
    "parse_crossover_csv",
    "parse_pattern_file",
    "parse_sweep_csv",
    "read_pattern_file",
    "route",
    "save_calibration",
    "serialize_matches",
    "sweep_pattern_counts",
    "sweep_sizes",
    "use_backend",
    "walk_from",
    "write_crossover_csv",
    "write_pattern_file",
    "write_sweep_csv",
]
