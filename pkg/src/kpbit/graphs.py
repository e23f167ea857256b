"""Undirected simple graphs, DIMACS-style file I/O, and the Max-K-Cut objective.

The objective treats an edge as antiferromagnetic: endpoints in the same
set raise the energy by one, endpoints in different sets lower it by one.
Maximizing the cut is therefore the same as minimizing the energy, and the
two are tied by the exact integer identity ``energy = |E| - 2 * cut``.

File format (one graph per file):

* ``c ...``                 comment, ignored
* ``p edge <n> <m>``        exactly one header line, node and edge counts
* ``e <u> <v> [w]``         one line per edge, 1-based endpoints; a trailing
                            numeric weight token is accepted and ignored

Node ids are 1-based in files and 0-based everywhere in the API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable

import numpy as np

from .pbit import RngStream


class GraphParseError(ValueError):
    """Malformed graph file; carries the offending 1-based line number."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph on nodes 0..n-1.

    Edges are stored as (u, v) pairs with u < v, no self-loops, no
    duplicates. Safe to share across worker processes.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"node count must be >= 0, got {self.n}")
        seen: set[tuple[int, int]] = set()
        normalized = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise ValueError(f"duplicate edge ({pair[0]}, {pair[1]})")
            seen.add(pair)
            normalized.append(pair)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-node sorted neighbor lists."""
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in nbrs)

    @cached_property
    def neighbor_arrays(self) -> tuple[np.ndarray, ...]:
        """adjacency as int64 arrays, for vectorized state comparisons."""
        return tuple(np.asarray(ns, dtype=np.int64) for ns in self.adjacency)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays (u, v), each of length m."""
        if self.m == 0:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty.copy()
        arr = np.asarray(self.edges, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    @property
    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adjacency), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and frozenset(self.edges) == frozenset(other.edges)

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.edges)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class Assignment:
    """Per-node state labels in [0, k); the value object every solver trades in.

    Labels stand for k mutually orthogonal unit states, so the dot product
    of two node states is 1 when the labels match and 0 otherwise.
    """

    states: np.ndarray
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"state count must be >= 1, got {self.k}")
        arr = np.ascontiguousarray(self.states, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("states must be one-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.k):
            raise ValueError(f"state labels must lie in [0, {self.k})")
        arr.setflags(write=False)
        object.__setattr__(self, "states", arr)

    @property
    def n(self) -> int:
        return len(self.states)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.states, other.states)

    def __hash__(self) -> int:
        return hash((self.k, self.states.tobytes()))

    def __repr__(self) -> str:
        return f"Assignment(k={self.k}, states={self.states.tolist()})"


def parse_graph(source: str | IO[str] | Iterable[str]) -> Graph:
    """Parse a graph from a string or an iterable of lines.

    Raises :class:`GraphParseError` (with line number where possible) on a
    missing/duplicate header, malformed tokens, out-of-range endpoints,
    self-loops, duplicate edges, or an edge-count mismatch.
    """
    lines = source.splitlines() if isinstance(source, str) else source
    n = None
    m_declared = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate 'p' header", lineno)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise GraphParseError("header must be 'p edge <n> <m>'", lineno)
            try:
                n, m_declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise GraphParseError("non-integer counts in header", lineno) from None
            if n < 0 or m_declared < 0:
                raise GraphParseError("negative counts in header", lineno)
        elif tokens[0] == "e":
            if n is None:
                raise GraphParseError("edge line before 'p edge' header", lineno)
            if len(tokens) not in (3, 4):
                raise GraphParseError("edge line must be 'e <u> <v> [w]'", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
                if len(tokens) == 4:
                    float(tokens[3])  # weight column tolerated, ignored
            except ValueError:
                raise GraphParseError("non-numeric token on edge line", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"endpoint out of range [1, {n}]", lineno)
            if u == v:
                raise GraphParseError(f"self-loop at node {u}", lineno)
            pair = (u - 1, v - 1) if u < v else (v - 1, u - 1)
            if pair in seen:
                raise GraphParseError(f"duplicate edge {u} {v}", lineno)
            seen.add(pair)
            edges.append(pair)
        else:
            raise GraphParseError(f"unknown line type {tokens[0]!r}", lineno)

    if n is None:
        raise GraphParseError("missing 'p edge <n> <m>' header")
    if m_declared != len(edges):
        raise GraphParseError(
            f"header declares {m_declared} edges but file has {len(edges)}"
        )
    return Graph(n=n, edges=tuple(edges))


def serialize_graph(g: Graph) -> str:
    """Render a graph in the file format accepted by :func:`parse_graph`."""
    out = [f"p edge {g.n} {g.m}"]
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh)


def save_graph(g: Graph, path, header_comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header_comment is not None:
            fh.write(f"c {header_comment}\n")
        fh.write(serialize_graph(g))


def generate_random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) graph, deterministic for a fixed (n, p, seed).

    Each of the n(n-1)/2 node pairs is included independently with
    probability p; pairs are visited in row-major upper-triangle order.
    """
    if n < 0:
        raise ValueError(f"node count must be >= 0, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = RngStream(seed)
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.uniform01(size=len(iu)) < p
    edges = tuple((int(u), int(v)) for u, v in zip(iu[mask], iv[mask]))
    return Graph(n=n, edges=edges)


def _check_sizes(g: Graph, a: Assignment) -> None:
    if a.n != g.n:
        raise ValueError(f"assignment covers {a.n} nodes, graph has {g.n}")


def cut_value(g: Graph, a: Assignment) -> int:
    """Number of edges whose endpoints carry different states."""
    _check_sizes(g, a)
    u, v = g.edge_arrays
    return int(np.count_nonzero(a.states[u] != a.states[v]))


def energy(g: Graph, a: Assignment) -> int:
    """Antiferromagnetic energy: +1 per monochromatic edge, -1 per cut edge.

    Satisfies energy == m - 2 * cut_value exactly, so the minimum-energy
    assignment is the maximum cut.
    """
    _check_sizes(g, a)
    u, v = g.edge_arrays
    same = int(np.count_nonzero(a.states[u] == a.states[v]))
    return 2 * same - g.m
