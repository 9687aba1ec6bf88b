"""Spiking-neuron engine: LIF layers, windowed execution, surrogate BPTT."""

from .neurons import (
    LifLayerState,
    LifParams,
    SurrogateConfig,
    heaviside,
    lif_step,
    sigmoid,
    surrogate_sigmoid,
)
from .network import DenseSynapses, LayerSpec, Network, WindowTape, backprop_window, run_window
from .optim import SgdMomentum
from .rng import CounterRng

__all__ = [
    "LifParams",
    "LifLayerState",
    "SurrogateConfig",
    "heaviside",
    "sigmoid",
    "surrogate_sigmoid",
    "lif_step",
    "LayerSpec",
    "DenseSynapses",
    "Network",
    "WindowTape",
    "run_window",
    "backprop_window",
    "SgdMomentum",
    "CounterRng",
]
