"""Ground truth for small instances: exhaustive Max-K-Cut and a chi-square check."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.stats import chi2

from .graphs import Assignment, Graph

ENUMERATION_LIMIT = 100_000_000
_CHUNK = 1 << 16


class InstanceTooLargeError(ValueError):
    """k**n exceeds the enumeration guard."""


def brute_force_max_k_cut(g: Graph, k: int) -> tuple[int, Assignment]:
    """Exact Max-K-Cut by enumeration; returns the lexicographically first optimum.

    Node 0 is pinned to state 0 (cut values are invariant under relabeling
    of states), so k**(n-1) assignments are scanned. Guarded by
    k**n <= 10**8.
    """
    if k < 1:
        raise ValueError(f"state count must be >= 1, got {k}")
    if k**g.n > ENUMERATION_LIMIT:
        raise InstanceTooLargeError(
            f"{k}**{g.n} assignments exceed the {ENUMERATION_LIMIT} guard"
        )
    if g.n == 0:
        return 0, Assignment(np.empty(0, dtype=np.int64), k)

    free = g.n - 1
    total = k**free
    eu, ev = g.edge_arrays
    # Node 1 is the most significant digit: enumeration order is
    # lexicographic in (s_1, ..., s_{n-1}).
    weights = k ** np.arange(free - 1, -1, -1, dtype=np.int64) if free else None
    best_cut = -1
    best_states = np.zeros(g.n, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        states = np.zeros((len(idx), g.n), dtype=np.int64)
        for d in range(free):
            states[:, d + 1] = (idx // weights[d]) % k
        cuts = np.zeros(len(idx), dtype=np.int64)
        for u, v in zip(eu, ev):
            cuts += states[:, u] != states[:, v]
        pick = int(cuts.argmax())
        if cuts[pick] > best_cut:
            best_cut = int(cuts[pick])
            best_states = states[pick].copy()
    return best_cut, Assignment(best_states, k)


class ChiSquareResult(NamedTuple):
    statistic: float
    dof: int
    critical: float
    passed: bool


def chi_square_uniform(counts, significance: float = 0.001) -> ChiSquareResult:
    """Pearson chi-square test of uniformity over the given bin counts.

    Passes when the statistic stays below the upper critical value at the
    given significance (default 0.001) with len(counts) - 1 degrees of
    freedom.
    """
    arr = np.asarray(counts, dtype=float)
    if arr.ndim != 1 or len(arr) < 2:
        raise ValueError("need at least two bins")
    if (arr < 0).any():
        raise ValueError("counts must be non-negative")
    total = arr.sum()
    if total <= 0:
        raise ValueError("counts must not all be zero")
    expected = total / len(arr)
    statistic = float(((arr - expected) ** 2 / expected).sum())
    dof = len(arr) - 1
    critical = float(chi2.ppf(1.0 - significance, dof))
    return ChiSquareResult(statistic, dof, critical, statistic < critical)
