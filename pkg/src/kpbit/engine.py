"""K-state p-bit dynamics for solving Max-K-Cut directly.

Each node of the graph is a K-state p-bit. One update computes the node's
synaptic input (how many neighbors disagree minus how many agree), keeps
the current state with probability (1 + tanh(beta * phi)) / 2, and
otherwise hops to one of the other K-1 states chosen uniformly. The
uniform hop selector plays the role of a single multi-state p-bit shared
across all nodes: updates are sequential, so only one node ever consults
it at a time, and a fresh sample per update is exactly the shared device.
The selector is consulted only when the retain decision fails, so most
updates cost one noise draw.

An "iteration" in traces is one full sweep, i.e. one update of every node.
By default each sweep visits the nodes in a fresh random permutation; a
fixed 0..n-1 order is available for debugging. Trials are independent
restarts on derived random streams and may run in parallel without
changing any result.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .graphs import Assignment, Graph
from .pbit import RngStream

ORDER_RANDOM = "sequential-random-permutation"
ORDER_FIXED = "sequential-fixed"
_ORDERS = (ORDER_RANDOM, ORDER_FIXED)

SCHEDULE_CONSTANT = "constant"
SCHEDULE_LINEAR = "linear"


@dataclass(frozen=True)
class BetaSchedule:
    """Inverse-temperature schedule over a fixed sweep budget.

    ``constant`` holds beta_start for the whole run; ``linear`` ramps from
    beta_start to beta_end inclusive, reaching beta_end on the last sweep.
    """

    kind: str
    beta_start: float
    beta_end: float

    def __post_init__(self):
        if self.kind not in (SCHEDULE_CONSTANT, SCHEDULE_LINEAR):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.beta_start < 0 or self.beta_end < 0:
            raise ValueError("beta must be non-negative")
        if self.kind == SCHEDULE_CONSTANT and self.beta_start != self.beta_end:
            raise ValueError("constant schedule requires beta_start == beta_end")

    @classmethod
    def constant(cls, beta: float) -> "BetaSchedule":
        return cls(SCHEDULE_CONSTANT, beta, beta)

    @classmethod
    def linear(cls, beta_start: float, beta_end: float) -> "BetaSchedule":
        return cls(SCHEDULE_LINEAR, beta_start, beta_end)

    def beta_at(self, sweep: int, total_sweeps: int) -> float:
        """beta for sweep index ``sweep`` (0-based) out of ``total_sweeps``."""
        if total_sweeps <= 1:
            return self.beta_start
        frac = sweep / (total_sweeps - 1)
        return self.beta_start + (self.beta_end - self.beta_start) * frac

    def values(self, total_sweeps: int) -> np.ndarray:
        return np.array(
            [self.beta_at(t, total_sweeps) for t in range(total_sweeps)], dtype=float
        )


@dataclass(frozen=True)
class EngineConfig:
    """Everything that determines a run besides the graph itself."""

    k: int
    sweeps: int
    trials: int
    schedule: BetaSchedule
    update_order: str = ORDER_RANDOM
    master_seed: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"state count must be >= 2, got {self.k}")
        if self.sweeps < 1:
            raise ValueError(f"sweep count must be >= 1, got {self.sweeps}")
        if self.trials < 1:
            raise ValueError(f"trial count must be >= 1, got {self.trials}")
        if self.update_order not in _ORDERS:
            raise ValueError(f"unknown update order {self.update_order!r}")
        if self.master_seed < 0:
            raise ValueError(f"master seed must be non-negative, got {self.master_seed}")


@dataclass(frozen=True)
class TrialResult:
    """Best-so-far outcome of one trial plus the per-sweep cut trace."""

    best_cut: int
    best_assignment: Assignment
    cut_trace: np.ndarray


@dataclass(frozen=True)
class RunSummary:
    """Distribution of best cuts over independent trials."""

    results: tuple
    best_cuts: np.ndarray
    histogram: dict
    mean: float
    max: int
    best_trial: int
    best_assignment: Assignment


def synaptic_input(g: Graph, a: Assignment, alpha: int) -> int:
    """Local field on node alpha: differing neighbors minus matching ones."""
    if not (0 <= alpha < g.n):
        raise IndexError(f"node {alpha} out of range for n={g.n}")
    nbrs = g.neighbor_arrays[alpha]
    same = int(np.count_nonzero(a.states[nbrs] == a.states[alpha]))
    return len(nbrs) - 2 * same


def _update_site(states, nbrs, alpha, k, beta, theta, rng) -> None:
    # One node update against pre-drawn noise theta; mutates states[alpha].
    s = states[alpha]
    phi = len(nbrs) - 2 * int(np.count_nonzero(states[nbrs] == s))
    if math.tanh(beta * phi) - theta >= 0.0:
        return
    j = int(rng.integer(k - 1))
    states[alpha] = j if j < s else j + 1


def update_node(
    g: Graph, a: Assignment, alpha: int, beta: float, rng: RngStream
) -> Assignment:
    """One stochastic update of node alpha; every other entry is untouched.

    Keeps the state with probability (1 + tanh(beta * phi)) / 2; otherwise
    moves to the j-th entry of the ascending list of the other k-1 labels,
    with j drawn uniformly. Consumes one noise draw, plus one selector draw
    only when the node actually switches.
    """
    if not (0 <= alpha < g.n):
        raise IndexError(f"node {alpha} out of range for n={g.n}")
    if a.n != g.n:
        raise ValueError(f"assignment covers {a.n} nodes, graph has {g.n}")
    states = a.states.copy()
    theta = rng.uniform_signed()
    _update_site(states, g.neighbor_arrays[alpha], alpha, a.k, beta, theta, rng)
    return Assignment(states, a.k)


def _sweep_inplace(states, g: Graph, k: int, beta: float, rng: RngStream, order: str):
    # Stream use per sweep: permutation (random order only), then per node
    # one noise draw plus a selector draw when it switches, exactly the
    # consumption of n update_node calls.
    visit = rng.permutation(g.n) if order == ORDER_RANDOM else range(g.n)
    nbr = g.neighbor_arrays
    for alpha in visit:
        _update_site(states, nbr[alpha], alpha, k, beta, rng.uniform_signed(), rng)


def sweep(
    g: Graph,
    a: Assignment,
    beta: float,
    rng: RngStream,
    order: str = ORDER_RANDOM,
) -> Assignment:
    """Update every node once, sequentially, and return the new assignment."""
    if a.n != g.n:
        raise ValueError(f"assignment covers {a.n} nodes, graph has {g.n}")
    if order not in _ORDERS:
        raise ValueError(f"unknown update order {order!r}")
    states = a.states.copy()
    _sweep_inplace(states, g, a.k, beta, rng, order)
    return Assignment(states, a.k)


def run_trial(g: Graph, cfg: EngineConfig, trial_index: int) -> TrialResult:
    """One restart: random initial states, cfg.sweeps sweeps, best-so-far.

    Uses the stream derived from (cfg.master_seed, trial_index); the cut is
    recorded after every sweep.
    """
    rng = RngStream.derive(cfg.master_seed, trial_index)
    states = np.asarray(rng.integer(cfg.k, size=g.n), dtype=np.int64)
    eu, ev = g.edge_arrays
    trace = np.empty(cfg.sweeps, dtype=np.int64)
    best_cut = -1
    best_states = states.copy()
    for t in range(cfg.sweeps):
        beta = cfg.schedule.beta_at(t, cfg.sweeps)
        _sweep_inplace(states, g, cfg.k, beta, rng, cfg.update_order)
        cut = int(np.count_nonzero(states[eu] != states[ev]))
        trace[t] = cut
        if cut > best_cut:
            best_cut = cut
            best_states = states.copy()
    return TrialResult(
        best_cut=best_cut,
        best_assignment=Assignment(best_states, cfg.k),
        cut_trace=trace,
    )


def summarize_trials(results) -> RunSummary:
    """Fold per-trial results into the distribution summary."""
    results = tuple(results)
    best_cuts = np.array([r.best_cut for r in results], dtype=np.int64)
    values, counts = np.unique(best_cuts, return_counts=True)
    histogram = {int(v): int(c) for v, c in zip(values, counts)}
    best_trial = int(best_cuts.argmax())
    return RunSummary(
        results=results,
        best_cuts=best_cuts,
        histogram=histogram,
        mean=float(best_cuts.mean()),
        max=int(best_cuts.max()),
        best_trial=best_trial,
        best_assignment=results[best_trial].best_assignment,
    )


def run_trials(g: Graph, cfg: EngineConfig, jobs: int = 1) -> RunSummary:
    """cfg.trials independent restarts, merged in trial-index order.

    ``jobs > 1`` runs trials in worker processes. Results are identical
    either way because each trial owns the stream derived from its index.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if jobs == 1 or cfg.trials == 1:
        results = [run_trial(g, cfg, i) for i in range(cfg.trials)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(partial(run_trial, g, cfg), range(cfg.trials)))
    return summarize_trials(results)


@dataclass(frozen=True)
class ProbCurve:
    """Single-node update statistics against a grid of synaptic inputs.

    ``p_alt_mc[i, j]`` is the observed frequency of landing in the j-th
    alternative state (ascending label order, start state excluded) at
    ``phi[i]``. The analytic columns are (1 + tanh(beta*phi)) / 2 for
    retention and (1 - tanh(beta*phi)) / (2 (k-1)) for each alternative.
    """

    k: int
    beta: float
    phi: np.ndarray
    p_retain_mc: np.ndarray
    p_alt_mc: np.ndarray
    p_retain_analytic: np.ndarray
    p_alt_analytic: np.ndarray


def probcurve(
    k: int,
    beta: float,
    phi_grid,
    samples: int,
    rng: RngStream,
    start_state: int = 0,
) -> ProbCurve:
    """Monte Carlo state-probability curves for one k-state p-bit.

    For each grid value the node starts in ``start_state`` and is updated
    once; frequencies over ``samples`` independent updates are returned
    together with the analytic curves.
    """
    if k < 2:
        raise ValueError(f"state count must be >= 2, got {k}")
    if samples < 1:
        raise ValueError(f"sample count must be >= 1, got {samples}")
    if not (0 <= start_state < k):
        raise ValueError(f"start state {start_state} out of range for k={k}")
    phi = np.asarray(list(phi_grid), dtype=float)
    others = np.array([s for s in range(k) if s != start_state])
    p_retain = np.empty(len(phi))
    p_alt = np.empty((len(phi), k - 1))
    for i, value in enumerate(phi):
        t = math.tanh(beta * value)
        thetas = rng.uniform_signed(size=samples)
        switched = int(np.count_nonzero(thetas > t))
        p_retain[i] = (samples - switched) / samples
        hops = rng.integer(k - 1, size=switched) if switched else np.empty(0, int)
        p_alt[i] = np.bincount(hops, minlength=k - 1) / samples
    tanh_curve = np.tanh(beta * phi)
    return ProbCurve(
        k=k,
        beta=beta,
        phi=phi,
        p_retain_mc=p_retain,
        p_alt_mc=p_alt,
        p_retain_analytic=0.5 * (1.0 + tanh_curve),
        p_alt_analytic=(1.0 - tanh_curve) / (2.0 * (k - 1)),
    )


# Which actual state each alternative column refers to, for table headers.
def alternative_states(k: int, start_state: int = 0) -> tuple[int, ...]:
    return tuple(s for s in range(k) if s != start_state)
