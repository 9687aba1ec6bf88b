"""Discrete-time leaky integrate-and-fire neurons.

All layers share one membrane update,

    u(t) = u(t-1) - (u(t-1) - u_reset) / tau_mb + r_mem * I(t) / tau_mb

with hard reset to ``u_reset`` on threshold crossing.  Non-spiking decode
neurons use an infinite threshold; their membrane potential is the analog
output of a network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class LifParams:
    """Parameters of one LIF layer.

    tau_syn is carried for completeness only: synapses are instantaneous,
    the weighted spike sum of the upstream layer forms the input current.
    """

    tau_mb: float
    u_reset: float = 0.0
    u_fire: float = math.inf
    r_mem: float = 1.0
    tau_syn: float = 0.0

    def __post_init__(self):
        if not self.tau_mb > 1.0:
            raise ValueError(f"tau_mb must exceed 1 (got {self.tau_mb})")
        if not (self.u_fire > self.u_reset):
            raise ValueError(
                f"u_fire ({self.u_fire}) must exceed u_reset ({self.u_reset})"
            )
        if not self.r_mem > 0.0:
            raise ValueError(f"r_mem must be positive (got {self.r_mem})")

    @property
    def spiking(self) -> bool:
        return math.isfinite(self.u_fire)


@dataclass
class LifLayerState:
    """Membrane potentials and last emitted spikes of one layer."""

    potentials: np.ndarray
    last_spikes: np.ndarray

    @classmethod
    def initial(cls, size: int, params: LifParams) -> "LifLayerState":
        return cls(
            potentials=np.full(size, params.u_reset, dtype=float),
            last_spikes=np.zeros(size, dtype=float),
        )


@dataclass(frozen=True)
class SurrogateConfig:
    """Scaled-sigmoid surrogate used in place of the step function's derivative."""

    nu: float = 5.0

    def __post_init__(self):
        if not self.nu > 0.0:
            raise ValueError(f"nu must be positive (got {self.nu})")


def heaviside(x: np.ndarray | float) -> np.ndarray | float:
    """Unit step, 1 at x >= 0."""
    return np.where(np.asarray(x) >= 0.0, 1.0, 0.0)


def sigmoid(x, nu: float = 1.0):
    return 1.0 / (1.0 + np.exp(-nu * np.asarray(x, dtype=float)))


def surrogate_sigmoid(x: float, cfg: SurrogateConfig) -> tuple[float, float]:
    """Spike nonlinearity value and its surrogate derivative at ``x``.

    Forward is the step function; the reported gradient is sigma'(x) for
    sigma(x) = 1 / (1 + exp(-nu x)).
    """
    if not np.isfinite(x):
        raise ValueError(f"surrogate input must be finite (got {x})")
    s = sigmoid(x, cfg.nu)
    return float(heaviside(x)), float(cfg.nu * s * (1.0 - s))


def lif_step(
    state: LifLayerState, input_current: np.ndarray, params: LifParams
) -> tuple[LifLayerState, np.ndarray]:
    """Advance one layer a single step and return (new state, spikes).

    Spiking layers emit 1 and reset to u_reset wherever the updated
    potential reaches u_fire; non-spiking layers never emit nor reset.
    """
    current = np.asarray(input_current, dtype=float)
    if current.shape != state.potentials.shape:
        raise ValueError(
            f"input shape {current.shape} does not match layer {state.potentials.shape}"
        )
    if not np.all(np.isfinite(current)):
        bad = np.flatnonzero(~np.isfinite(current))
        raise ValueError(f"non-finite input current at indices {bad.tolist()}")

    u = state.potentials
    u_new = u - (u - params.u_reset) / params.tau_mb + params.r_mem * current / params.tau_mb
    if params.spiking:
        spikes = (u_new >= params.u_fire).astype(float)
        u_new = np.where(spikes > 0.0, params.u_reset, u_new)
    else:
        spikes = np.zeros_like(u_new)
    return LifLayerState(potentials=u_new, last_spikes=spikes), spikes
