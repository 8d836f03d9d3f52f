"""Collective cloud-configuration optimization as a multi-armed bandit.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from micky._core import (
    CloudConfig,
    DataError,
    ExperimentReport,
    PerfMatrix,
    RunOutcome,
    SynthSpec,
    cost_curve,
    gen_matrix,
    knee_point,
    load_matrix,
    replicate,
    run_brute,
    run_cherrypick,
    run_micky,
    run_random_k,
    write_dataset,
)

__all__ = [
    "CloudConfig",
    "DataError",
    "ExperimentReport",
    "PerfMatrix",
    "RunOutcome",
    "SynthSpec",
    "cost_curve",
    "gen_matrix",
    "knee_point",
    "load_matrix",
    "replicate",
    "run_brute",
    "run_cherrypick",
    "run_micky",
    "run_random_k",
    "write_dataset",
]

__version__ = "0.1.0"
