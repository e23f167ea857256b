"""Stochastic primitives shared by every solver in this package.

A probabilistic bit (p-bit) holds one of its states and, on each update,
either keeps that state or hops to another one. The decision is driven by a
noisy tanh activation; the hop target is drawn uniformly from the remaining
states. All randomness flows through :class:`RngStream`, so any experiment
is reproducible from a single 64-bit master seed.
"""

from __future__ import annotations

import math

import numpy as np


class RngStream:
    """Deterministic pseudo-random stream, pinned to numpy's PCG64.

    Identical seeds reproduce identical draw sequences across runs and
    platforms. Independent streams for parallel work are derived with
    :meth:`derive`, which mixes ``(master_seed, stream_index)`` through
    ``numpy.random.SeedSequence(master_seed, spawn_key=(stream_index,))``.
    That mixing function is part of the reproducibility contract: results
    must not depend on how streams are scheduled, only on their indices.

    A stream is single-owner. Share work, not streams.
    """

    __slots__ = ("_gen",)

    def __init__(self, seed: int | np.random.SeedSequence):
        if isinstance(seed, np.random.SeedSequence):
            seq = seed
        else:
            if seed < 0:
                raise ValueError(f"seed must be non-negative, got {seed}")
            seq = np.random.SeedSequence(seed)
        self._gen = np.random.Generator(np.random.PCG64(seq))

    @classmethod
    def derive(cls, master_seed: int, stream_index: int) -> "RngStream":
        """Stream number ``stream_index`` of the family seeded by ``master_seed``."""
        if master_seed < 0:
            raise ValueError(f"master seed must be non-negative, got {master_seed}")
        seq = np.random.SeedSequence(master_seed, spawn_key=(int(stream_index),))
        return cls(seq)

    def uniform_signed(self, size=None):
        """Uniform real draw(s) on [-1, 1]."""
        return self._gen.uniform(-1.0, 1.0, size=size)

    def uniform01(self, size=None):
        """Uniform real draw(s) on [0, 1)."""
        return self._gen.random(size)

    def integer(self, m: int, size=None):
        """Uniform integer draw(s) on [0, m)."""
        if m < 1:
            raise ValueError(f"integer bound must be >= 1, got {m}")
        return self._gen.integers(0, m, size=size)

    def permutation(self, n: int) -> np.ndarray:
        """Uniformly random permutation of range(n)."""
        return self._gen.permutation(n)

    def normal(self, mean: float, sigma: float, size=None):
        """Gaussian draw(s) with the given mean and standard deviation."""
        return self._gen.normal(mean, sigma, size=size)


def activation(phi: float, beta: float, rng: RngStream) -> float:
    """Noisy activation tanh(beta * phi) - theta, theta uniform on [-1, 1].

    The sign of the result decides retain (+) versus switch (-). The value
    always lies in (-2, 2).
    """
    return math.tanh(beta * phi) - rng.uniform_signed()


def retention_probability(phi: float, beta: float) -> float:
    """Closed-form P(activation >= 0) = (1 + tanh(beta * phi)) / 2.

    This is the analytic oracle for :func:`retain_decision`: the activation
    is non-negative exactly when the uniform noise falls below tanh(beta*phi).
    """
    return 0.5 * (1.0 + math.tanh(beta * phi))


def retain_decision(phi: float, beta: float, rng: RngStream) -> bool:
    """One stochastic retain/switch decision; True means keep the state.

    Ties (activation exactly 0) count as retain, a fixed convention that
    keeps runs deterministic; the event has probability zero anyway.
    """
    return activation(phi, beta, rng) >= 0.0


def sample_one_hot(m: int, rng: RngStream) -> int:
    """Index of the hot entry in a uniformly random one-hot vector of length m."""
    if m < 1:
        raise ValueError(f"one-hot length must be >= 1, got {m}")
    return int(rng.integer(m))


def two_state_update(field: float, beta: float, rng: RngStream) -> int:
    """Classic two-state p-bit update: sgn(tanh(beta * field) - theta).

    Returns +1 with probability (1 + tanh(beta * field)) / 2, else -1.
    """
    return 1 if math.tanh(beta * field) - rng.uniform_signed() >= 0.0 else -1
