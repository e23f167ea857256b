"""One-hot reduction of Max-K-Cut to a two-state Ising problem.

This is the conventional route a direct K-state engine competes with:
every node becomes k spins (one per state), a penalty of weight A enforces
exactly one hot spin per node, and a weight-B term charges every edge
whose endpoints share a color. On feasible (one-hot) configurations the
Ising energy equals B * (m - cut) plus nothing, so minimizing it maximizes
the cut; the price is n*k spins instead of n p-bits.

Spin convention: x = (1 + s) / 2 with s in {-1, +1}, energy
E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from .engine import EngineConfig, RunSummary, ORDER_RANDOM, summarize_trials
from .graphs import Assignment, Graph, cut_value
from .pbit import RngStream

REPAIR_RANDOM = "random"
REPAIR_FIRST_HOT = "first-hot"
_REPAIRS = (REPAIR_RANDOM, REPAIR_FIRST_HOT)


@dataclass(frozen=True)
class IsingModel:
    """Symmetric coupling matrix, bias vector, and folded constant."""

    couplings: np.ndarray
    biases: np.ndarray
    offset: float

    def __post_init__(self):
        j = np.ascontiguousarray(self.couplings, dtype=float)
        h = np.ascontiguousarray(self.biases, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ValueError("couplings must be a square matrix")
        if h.shape != (j.shape[0],):
            raise ValueError("biases must match the coupling matrix size")
        if not np.array_equal(j, j.T):
            raise ValueError("couplings must be symmetric")
        if np.any(np.diag(j) != 0.0):
            raise ValueError("couplings must have a zero diagonal")
        j.setflags(write=False)
        h.setflags(write=False)
        object.__setattr__(self, "couplings", j)
        object.__setattr__(self, "biases", h)

    @property
    def n_spins(self) -> int:
        return len(self.biases)

    def to_json_dict(self) -> dict:
        """JSON-ready export: nonzero couplings as (i, j, value) triplets, i < j."""
        iu, iv = np.nonzero(np.triu(self.couplings, k=1))
        triplets = [
            [int(i), int(j), float(self.couplings[i, j])] for i, j in zip(iu, iv)
        ]
        return {
            "n_spins": self.n_spins,
            "couplings": triplets,
            "biases": [float(b) for b in self.biases],
            "offset": float(self.offset),
        }


@dataclass(frozen=True)
class EncodingMap:
    """Node-state to spin-index bijection plus the penalty weights used."""

    n_nodes: int
    k: int
    penalty_a: float
    penalty_b: float

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"state count must be >= 2, got {self.k}")
        if self.penalty_a <= 0 or self.penalty_b <= 0:
            raise ValueError("penalty weights must be positive")

    @property
    def n_spins(self) -> int:
        return self.n_nodes * self.k

    def spin_index(self, node: int, state: int) -> int:
        if not (0 <= node < self.n_nodes and 0 <= state < self.k):
            raise IndexError(f"(node={node}, state={state}) out of range")
        return node * self.k + state

    def to_json_dict(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "k": self.k,
            "penalty_a": float(self.penalty_a),
            "penalty_b": float(self.penalty_b),
            "spin_index": [
                [v * self.k + c for c in range(self.k)] for v in range(self.n_nodes)
            ],
        }


def default_penalty_a(g: Graph, penalty_b: float = 1.0) -> float:
    """Smallest integer one-hot weight that dominates the edge term.

    Repainting one spin changes the edge term by at most max_degree * B,
    so A = max_degree * B + 1 keeps every ground state feasible.
    """
    return g.max_degree * penalty_b + 1.0


def encode_one_hot(
    g: Graph, k: int, penalty_a: float, penalty_b: float
) -> tuple[IsingModel, EncodingMap]:
    """Build the n*k-spin Ising model for Max-K-Cut on g.

    Binary objective: A * sum_v (sum_c x_vc - 1)^2
                    + B * sum_{(u,v) in E} sum_c x_uc x_vc,
    mapped to spins via x = (1 + s) / 2 with every constant folded into the
    offset. Feasible configurations (exactly one hot state per node) have
    energy B * (m - cut).
    """
    emap = EncodingMap(n_nodes=g.n, k=k, penalty_a=penalty_a, penalty_b=penalty_b)
    ns = emap.n_spins
    # Binary quadratic coefficients Q (symmetric, zero diagonal) and linear L.
    q = np.zeros((ns, ns))
    for v in range(g.n):
        base = v * k
        for c1 in range(k):
            for c2 in range(c1 + 1, k):
                q[base + c1, base + c2] += 2.0 * penalty_a
                q[base + c2, base + c1] += 2.0 * penalty_a
    for u, v in g.edges:
        for c in range(k):
            i, j = u * k + c, v * k + c
            q[i, j] += penalty_b
            q[j, i] += penalty_b
    linear = np.full(ns, -penalty_a)
    const = penalty_a * g.n

    couplings = -q / 4.0
    biases = -(q.sum(axis=1) / 4.0 + linear / 2.0)
    offset = q.sum() / 8.0 + linear.sum() / 2.0 + const
    return IsingModel(couplings, biases, float(offset)), emap


def ising_energy(model: IsingModel, spins) -> float:
    """E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset."""
    s = np.asarray(spins, dtype=float)
    if s.shape != (model.n_spins,):
        raise ValueError(f"expected {model.n_spins} spins, got shape {s.shape}")
    return float(
        -0.5 * s @ (model.couplings @ s) - model.biases @ s + model.offset
    )


def decode(
    spins,
    emap: EncodingMap,
    repair: str = REPAIR_RANDOM,
    rng: RngStream | None = None,
) -> Assignment:
    """Map a spin vector back to node states, repairing one-hot violations.

    A node with exactly one hot spin gets that state. Otherwise ``random``
    draws a state uniformly from the stream; ``first-hot`` takes the lowest
    hot index and falls back to a uniform draw when every spin is cold.
    """
    if repair not in _REPAIRS:
        raise ValueError(f"unknown repair rule {repair!r}")
    s = np.asarray(spins)
    if s.shape != (emap.n_spins,):
        raise ValueError(f"expected {emap.n_spins} spins, got shape {s.shape}")
    k = emap.k
    states = np.empty(emap.n_nodes, dtype=np.int64)
    for v in range(emap.n_nodes):
        hot = np.flatnonzero(s[v * k : (v + 1) * k] > 0)
        if len(hot) == 1:
            states[v] = hot[0]
        elif repair == REPAIR_FIRST_HOT and len(hot) > 0:
            states[v] = hot[0]
        else:
            if rng is None:
                raise ValueError("repair needs an RngStream for this spin vector")
            states[v] = int(rng.integer(k))
    return Assignment(states, k)


def encode_assignment(a: Assignment, emap: EncodingMap) -> np.ndarray:
    """Feasible spin vector (+1 on the hot state, -1 elsewhere) for ``a``."""
    if a.n != emap.n_nodes or a.k != emap.k:
        raise ValueError("assignment does not match the encoding map")
    spins = np.full(emap.n_spins, -1, dtype=np.int64)
    for v, state in enumerate(a.states):
        spins[v * emap.k + int(state)] = 1
    return spins


@dataclass(frozen=True)
class ReducedProblem:
    """A graph together with its one-hot Ising encoding."""

    graph: Graph
    k: int
    model: IsingModel
    emap: EncodingMap

    def to_json_dict(self) -> dict:
        out = self.model.to_json_dict()
        out["map"] = self.emap.to_json_dict()
        return out


def reduce_problem(
    g: Graph,
    k: int,
    penalty_a: float | None = None,
    penalty_b: float = 1.0,
) -> ReducedProblem:
    """Encode g for the two-state baseline; A defaults to max_degree * B + 1."""
    if penalty_a is None:
        penalty_a = default_penalty_a(g, penalty_b)
    model, emap = encode_one_hot(g, k, penalty_a, penalty_b)
    return ReducedProblem(graph=g, k=k, model=model, emap=emap)


@dataclass(frozen=True)
class BaselineTrialResult:
    """Best decoded outcome of one two-state trial and its cut trace."""

    best_cut: int
    best_assignment: Assignment
    best_spins: np.ndarray
    cut_trace: np.ndarray


def run_two_state_trial(
    problem: ReducedProblem,
    cfg: EngineConfig,
    trial_index: int,
    repair: str = REPAIR_RANDOM,
) -> BaselineTrialResult:
    """One restart of the conventional two-state p-bit solver.

    Spins update sequentially with local field h_i + sum_j J_ij s_j; after
    each sweep the spin vector is decoded (with repair) and the cut of the
    repaired assignment recorded. cfg.k is ignored, spins are two-state.
    """
    model, emap, g = problem.model, problem.emap, problem.graph
    rng = RngStream.derive(cfg.master_seed, trial_index)
    ns = model.n_spins
    j_rows = model.couplings
    h = model.biases
    spins = (2 * np.asarray(rng.integer(2, size=ns), dtype=np.int64) - 1).astype(float)

    trace = np.empty(cfg.sweeps, dtype=np.int64)
    best_cut = -1
    best_assignment = None
    best_spins = spins.copy()
    for t in range(cfg.sweeps):
        beta = cfg.schedule.beta_at(t, cfg.sweeps)
        visit = rng.permutation(ns) if cfg.update_order == ORDER_RANDOM else range(ns)
        for i in visit:
            field = h[i] + j_rows[i] @ spins
            spins[i] = 1.0 if math.tanh(beta * field) - rng.uniform_signed() >= 0.0 else -1.0
        assignment = decode(spins, emap, repair, rng)
        cut = cut_value(g, assignment)
        trace[t] = cut
        if cut > best_cut:
            best_cut = cut
            best_assignment = assignment
            best_spins = spins.copy()
    return BaselineTrialResult(
        best_cut=best_cut,
        best_assignment=best_assignment,
        best_spins=best_spins.astype(np.int64),
        cut_trace=trace,
    )


def run_baseline_trials(
    problem: ReducedProblem,
    cfg: EngineConfig,
    repair: str = REPAIR_RANDOM,
    jobs: int = 1,
) -> RunSummary:
    """cfg.trials independent baseline restarts, merged in trial-index order."""
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    worker = partial(run_two_state_trial, problem, cfg, repair=repair)
    if jobs == 1 or cfg.trials == 1:
        results = [worker(i) for i in range(cfg.trials)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, range(cfg.trials)))
    return summarize_trials(results)


def matched_sweeps(direct_sweeps: int, n_nodes: int, n_spins: int) -> int:
    """Baseline sweep count with the same total node-update budget.

    One direct sweep costs n_nodes updates, one baseline sweep n_spins, so
    comparisons between the two solvers normalize total updates.
    """
    return max(1, (direct_sweeps * n_nodes) // n_spins)
