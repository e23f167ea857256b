"""Behavioral model of VO2-based p-bit circuits.

A VO2 device sits in a high-resistance insulating state until the current
through it exceeds a trigger level, then snaps to a low-resistance
metallic state; it falls back once the current drops below a hold level.
The trigger level varies from cycle to cycle, and that variation is the
randomness the circuits harvest.

Two circuits are modeled. The two-state p-bit is a single device whose
drive current sits near the trigger distribution, giving a tunable switch
probability. The multi-state p-bit is M parallel device+resistor branches
fed by one current source sized so that exactly one branch can sit in the
metallic state; which branch wins is uniform because the branch thresholds
are exchangeable. Selection is resolved event-wise (equal insulating
split, first trigger fires, resistive-divider steady state), with no
time-stepped transient.

All quantities are SI: amps, ohms, volts.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy.special import ndtr

from .pbit import RngStream

INSULATING = "insulating"
METALLIC = "metallic"

# Characteristic values for the simulated devices.
DEFAULT_R_INS = 20e3
DEFAULT_R_MET = 1e3
DEFAULT_I_TRIG = 30e-6
DEFAULT_I_HOLD = 50e-6
DEFAULT_SIGMA_TRIG = 1.5e-6  # 5% of the nominal trigger, configurable
DEFAULT_R_SERIES = 2e3


class DriveCurrentError(ValueError):
    """Source current outside the single-metallic-branch window."""


class ModelInconsistencyError(RuntimeError):
    """A resolved steady state violated its own validity conditions."""


@dataclass
class Vo2Device:
    """One VO2 device: resistances, threshold currents, and current state.

    Trigger currents are drawn per cycle from a Gaussian truncated at zero;
    the hold current is held at its nominal value (its observed variation
    is much smaller than the trigger's and is not modeled).
    """

    r_ins: float = DEFAULT_R_INS
    r_met: float = DEFAULT_R_MET
    i_trig_nominal: float = DEFAULT_I_TRIG
    i_hold_nominal: float = DEFAULT_I_HOLD
    sigma_trig: float = DEFAULT_SIGMA_TRIG
    state: str = INSULATING

    def __post_init__(self):
        if not (self.r_ins > self.r_met > 0):
            raise ValueError("need r_ins > r_met > 0")
        if self.i_trig_nominal <= 0 or self.i_hold_nominal <= 0:
            raise ValueError("threshold currents must be positive")
        if self.sigma_trig < 0:
            raise ValueError("sigma_trig must be >= 0")
        if self.state not in (INSULATING, METALLIC):
            raise ValueError(f"unknown device state {self.state!r}")

    @property
    def v_trig(self) -> float:
        """Trigger voltage equivalent, I_T * r_ins (derived, not stored)."""
        return self.i_trig_nominal * self.r_ins

    @property
    def v_hold(self) -> float:
        """Hold voltage equivalent, I_H * r_met (derived, not stored)."""
        return self.i_hold_nominal * self.r_met

    def nominal_tuple(self) -> tuple:
        return (
            self.r_ins,
            self.r_met,
            self.i_trig_nominal,
            self.i_hold_nominal,
            self.sigma_trig,
        )

    def to_dict(self) -> dict:
        return {
            "r_ins": self.r_ins,
            "r_met": self.r_met,
            "i_trig_nominal": self.i_trig_nominal,
            "i_hold_nominal": self.i_hold_nominal,
            "sigma_trig": self.sigma_trig,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Vo2Device":
        return cls(**{k: float(v) for k, v in d.items() if k != "state"})


@dataclass
class MultiStateCell:
    """M parallel VO2 branches, each in series with r_series, current-driven.

    Branch devices must be identical in parameters: the current window and
    the exact selection uniformity both assume interchangeable branches.
    """

    branches: list = field(default_factory=list)
    r_series: float = DEFAULT_R_SERIES
    i_source: float = 0.0

    def __post_init__(self):
        if len(self.branches) < 1:
            raise ValueError("need at least one branch")
        if self.r_series < 0:
            raise ValueError("series resistance must be >= 0")
        if self.i_source <= 0:
            raise ValueError("source current must be positive")
        ref = self.branches[0].nominal_tuple()
        if any(dev.nominal_tuple() != ref for dev in self.branches[1:]):
            raise ValueError("all branches must share identical device parameters")

    @property
    def m(self) -> int:
        return len(self.branches)

    @classmethod
    def uniform(
        cls,
        m: int,
        i_source: float,
        device: Vo2Device | None = None,
        r_series: float = DEFAULT_R_SERIES,
    ) -> "MultiStateCell":
        """Cell of m copies of ``device`` (defaults if omitted)."""
        template = device if device is not None else Vo2Device()
        branches = [replace(template, state=INSULATING) for _ in range(m)]
        return cls(branches=branches, r_series=r_series, i_source=i_source)

    def to_dict(self) -> dict:
        return {
            "branches": self.m,
            "device": self.branches[0].to_dict(),
            "r_series": self.r_series,
            "i_source": self.i_source,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MultiStateCell":
        return cls.uniform(
            m=int(d["branches"]),
            i_source=float(d["i_source"]),
            device=Vo2Device.from_dict(d["device"]),
            r_series=float(d["r_series"]),
        )


class CurrentBounds(NamedTuple):
    """Open interval of source currents sustaining exactly one metallic branch."""

    lower: float
    upper: float

    @property
    def feasible(self) -> bool:
        return self.lower < self.upper

    def contains(self, current: float) -> bool:
        return self.lower < current < self.upper


def current_bounds(cell: MultiStateCell) -> CurrentBounds:
    """Source-current window for the cell, from nominal trigger currents.

    Below M * I_T no branch is guaranteed to trigger; above
    ((M-1)(R_M+R) + (R_I+R)) / (R_M+R) * I_T a second branch would trigger
    even with one already metallic. Degenerate devices (r_ins == r_met)
    make the window empty.
    """
    dev = cell.branches[0]
    m = cell.m
    r = cell.r_series
    lower = m * dev.i_trig_nominal
    upper = (
        ((m - 1) * (dev.r_met + r) + (dev.r_ins + r))
        / (dev.r_met + r)
        * dev.i_trig_nominal
    )
    return CurrentBounds(lower, upper)


def sample_trigger(dev: Vo2Device, rng: RngStream) -> float:
    """One cycle's trigger current: Gaussian around nominal, redrawn if <= 0."""
    while True:
        value = float(rng.normal(dev.i_trig_nominal, dev.sigma_trig))
        if value > 0.0:
            return value


def steady_state_currents(cell: MultiStateCell, metallic_index: int) -> np.ndarray:
    """Branch currents with exactly one metallic branch, by current division."""
    if not (0 <= metallic_index < cell.m):
        raise IndexError(f"branch {metallic_index} out of range for M={cell.m}")
    dev = cell.branches[0]
    g_met = 1.0 / (dev.r_met + cell.r_series)
    g_ins = 1.0 / (dev.r_ins + cell.r_series)
    voltage = cell.i_source / (g_met + (cell.m - 1) * g_ins)
    currents = np.full(cell.m, voltage * g_ins)
    currents[metallic_index] = voltage * g_met
    return currents


@dataclass(frozen=True)
class SelectionResult:
    selected: int
    branch_currents: np.ndarray
    sampled_triggers: np.ndarray


def resolve_selection(cell: MultiStateCell, rng: RngStream) -> SelectionResult:
    """One selection cycle of the multi-state p-bit.

    All branches start insulating and split the source current equally;
    the branch with the smallest sampled trigger fires first and the
    steady state is recomputed by current division. The resolved state is
    validated: the metallic branch must carry at least the hold current
    and every insulating branch must stay below its own sampled trigger.
    """
    bounds = current_bounds(cell)
    if not bounds.feasible:
        raise DriveCurrentError(
            f"empty drive window: lower {bounds.lower:.6g} A >= upper "
            f"{bounds.upper:.6g} A"
        )
    if cell.i_source <= bounds.lower:
        raise DriveCurrentError(
            f"source current {cell.i_source:.6g} A would trigger no branch "
            f"(window {bounds.lower:.6g} A to {bounds.upper:.6g} A, open)"
        )
    if cell.i_source >= bounds.upper:
        raise DriveCurrentError(
            f"source current {cell.i_source:.6g} A would trigger more than one "
            f"branch (window {bounds.lower:.6g} A to {bounds.upper:.6g} A, open)"
        )

    triggers = np.array([sample_trigger(dev, rng) for dev in cell.branches])
    selected = int(np.argmin(triggers))  # ties resolve to the lowest index
    currents = steady_state_currents(cell, selected)

    dev = cell.branches[0]
    if currents[selected] < dev.i_hold_nominal:
        raise ModelInconsistencyError(
            f"metallic branch current {currents[selected]:.6g} A fell below the "
            f"hold current {dev.i_hold_nominal:.6g} A"
        )
    for b in range(cell.m):
        if b != selected and currents[b] >= triggers[b]:
            raise ModelInconsistencyError(
                f"insulating branch {b} current {currents[b]:.6g} A reached its "
                f"sampled trigger {triggers[b]:.6g} A"
            )
    return SelectionResult(
        selected=selected, branch_currents=currents, sampled_triggers=triggers
    )


@dataclass(frozen=True)
class CycleStats:
    """Outcome of repeated selection cycles, ready for histogramming."""

    counts: np.ndarray
    selections: np.ndarray
    triggers: np.ndarray


def simulate_cycles(cell: MultiStateCell, cycles: int, rng: RngStream) -> CycleStats:
    """``cycles`` independent selections; counts per branch plus raw samples."""
    if cycles < 1:
        raise ValueError(f"cycle count must be >= 1, got {cycles}")
    counts = np.zeros(cell.m, dtype=np.int64)
    selections = np.empty(cycles, dtype=np.int64)
    triggers = np.empty((cycles, cell.m))
    for c in range(cycles):
        result = resolve_selection(cell, rng)
        counts[result.selected] += 1
        selections[c] = result.selected
        triggers[c] = result.sampled_triggers
    return CycleStats(counts=counts, selections=selections, triggers=triggers)


def two_state_switch_probability(drive: float, dev: Vo2Device) -> float:
    """P(insulating -> metallic) at the given drive current.

    Probability that a zero-truncated Gaussian trigger sample falls below
    the drive level. With sigma_trig = 0 this is a step at the nominal
    trigger. The drive current abstracts the transistor load line.
    """
    if drive < 0:
        raise ValueError(f"drive current must be >= 0, got {drive}")
    if dev.sigma_trig == 0.0:
        return 1.0 if drive > dev.i_trig_nominal else 0.0
    z = (drive - dev.i_trig_nominal) / dev.sigma_trig
    z0 = (0.0 - dev.i_trig_nominal) / dev.sigma_trig
    tail = ndtr(z0)
    return float((ndtr(z) - tail) / (1.0 - tail))


def sample_two_state(drive: float, dev: Vo2Device, rng: RngStream) -> str:
    """One drive application; updates and returns the device state.

    A metallic device holds while drive >= hold current and otherwise
    relaxes to insulating. An insulating device triggers when this cycle's
    sampled trigger current falls below the drive, which happens with
    exactly :func:`two_state_switch_probability`.
    """
    if drive < 0:
        raise ValueError(f"drive current must be >= 0, got {drive}")
    if dev.state == METALLIC:
        new = METALLIC if drive >= dev.i_hold_nominal else INSULATING
    else:
        new = METALLIC if sample_trigger(dev, rng) < drive else INSULATING
    dev.state = new
    return new
