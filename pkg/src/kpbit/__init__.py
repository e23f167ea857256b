"""K-state p-bit toolkit.

A K-state probabilistic bit keeps its state with probability
(1 + tanh(beta * phi)) / 2 and otherwise hops uniformly to one of the
other K-1 states. A graph of such bits, driven by antiferromagnetic
synaptic feedback, solves Max-K-Cut directly; this package also ships the
conventional one-hot reduction to two-state p-bits for comparison, an
exhaustive oracle for verification, and a behavioral model of VO2-based
two-state and multi-state p-bit circuits.
"""

from .engine import (
    ORDER_FIXED,
    ORDER_RANDOM,
    BetaSchedule,
    EngineConfig,
    ProbCurve,
    RunSummary,
    TrialResult,
    probcurve,
    run_trial,
    run_trials,
    summarize_trials,
    sweep,
    synaptic_input,
    update_node,
)
from .graphs import (
    Assignment,
    Graph,
    GraphParseError,
    cut_value,
    energy,
    generate_random_graph,
    load_graph,
    parse_graph,
    save_graph,
    serialize_graph,
)
from .oracle import (
    ChiSquareResult,
    InstanceTooLargeError,
    brute_force_max_k_cut,
    chi_square_uniform,
)
from .pbit import (
    RngStream,
    activation,
    retain_decision,
    retention_probability,
    sample_one_hot,
    two_state_update,
)
from .reduction import (
    REPAIR_FIRST_HOT,
    REPAIR_RANDOM,
    BaselineTrialResult,
    EncodingMap,
    IsingModel,
    ReducedProblem,
    decode,
    default_penalty_a,
    encode_assignment,
    encode_one_hot,
    ising_energy,
    matched_sweeps,
    reduce_problem,
    run_baseline_trials,
    run_two_state_trial,
)
from .vo2 import (
    INSULATING,
    METALLIC,
    CurrentBounds,
    CycleStats,
    DriveCurrentError,
    ModelInconsistencyError,
    MultiStateCell,
    SelectionResult,
    Vo2Device,
    current_bounds,
    resolve_selection,
    sample_trigger,
    sample_two_state,
    simulate_cycles,
    steady_state_currents,
    two_state_switch_probability,
)

__version__ = "0.1.0"
